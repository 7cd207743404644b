#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mpsched/rng.hpp"
#include "mpsched/schedule.hpp"
#include "mpsched/taskgraph.hpp"

namespace mpsched {

struct GaConfig {
    int population_size = 20;
    int max_iterations = 500;
    double crossover_rate = 0.8;
    double mutation_rate = 0.1;
    /// Stop early once the best makespan has not improved for this many
    /// consecutive generations.
    int convergence_window = 50;
    std::uint64_t seed = 0;
};

inline void ensure_valid(const GaConfig& cfg) {
    if (cfg.population_size < 2) {
        throw std::invalid_argument("GaConfig: population_size must be >= 2");
    }
    if (cfg.max_iterations < 1) {
        throw std::invalid_argument("GaConfig: max_iterations must be >= 1");
    }
    if (cfg.crossover_rate < 0.0 || cfg.crossover_rate > 1.0 ||
        cfg.mutation_rate < 0.0 || cfg.mutation_rate > 1.0) {
        throw std::invalid_argument("GaConfig: rates must lie in [0, 1]");
    }
    if (cfg.convergence_window < 1) {
        throw std::invalid_argument("GaConfig: convergence_window must be >= 1");
    }
}

struct GenerationStats {
    Duration best_makespan = 0;
    double mean_makespan = 0.0;
    Duration cmax = 0;
};

struct GaResult {
    Chromosome best;
    Duration best_makespan = 0;
    int generations_run = 0;
    /// Entry 0 describes the initial population; one entry per generation after.
    std::vector<GenerationStats> history;
};

/// Running maximum of all finishing times observed in a run. Converts a
/// finishing time into a strictly positive selection weight: the smallest
/// finishing time in a generation always gets the largest weight, and the
/// worst schedule observed so far still keeps weight 1.
struct FitnessLedger {
    Duration cmax = 0;

    void observe(Duration ft) { cmax = std::max(cmax, ft); }

    Duration fitness(Duration ft) const {
        if (ft > cmax) {
            throw std::logic_error("fitness queried for an unobserved finishing time");
        }
        return cmax - ft + 1;
    }
};

/// Builds `size` random valid chromosomes. Per individual: walk the height
/// levels in ascending order, shuffle the level's tasks, then append each
/// task to a uniformly random processor list. Every output is complete,
/// duplicate-free and height-ascending by construction.
inline std::vector<Chromosome> init_population(const TaskGraph& g,
                                               const HeightMap& heights, int m,
                                               int size, Rng& rng) {
    if (m < 1) throw std::invalid_argument("processor count must be >= 1");
    if (size < 1) throw std::invalid_argument("population size must be >= 1");
    const auto levels = height_levels(heights);
    std::vector<Chromosome> pop;
    pop.reserve(static_cast<std::size_t>(size));
    for (int s = 0; s < size; ++s) {
        Chromosome c;
        c.procs.resize(static_cast<std::size_t>(m));
        for (const auto& level : levels) {
            std::vector<TaskId> tasks = level;
            rng.shuffle(tasks);
            for (TaskId t : tasks) {
                const auto p = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(m)));
                c.procs[p].push_back(t);
            }
        }
        pop.push_back(std::move(c));
    }
    return pop;
}

/// Roulette-wheel selection with replacement; the pool has the population's
/// size. Weights are integral, so selection probabilities are exactly
/// proportional to fitness.
inline std::vector<Chromosome> roulette_select(const std::vector<Chromosome>& pop,
                                               const std::vector<Duration>& fitness,
                                               Rng& rng) {
    if (pop.empty() || pop.size() != fitness.size()) {
        throw std::invalid_argument("roulette_select: population/fitness size mismatch");
    }
    std::vector<Duration> cumulative(fitness.size());
    Duration total = 0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        if (fitness[i] <= 0) {
            throw std::invalid_argument("roulette_select: fitness values must be > 0");
        }
        total += fitness[i];
        cumulative[i] = total;
    }
    std::vector<Chromosome> pool;
    pool.reserve(pop.size());
    for (std::size_t k = 0; k < pop.size(); ++k) {
        const auto u = static_cast<Duration>(rng.below(static_cast<std::uint64_t>(total)));
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        pool.push_back(pop[static_cast<std::size_t>(it - cumulative.begin())]);
    }
    return pool;
}

/// Single-cut crossover at a height boundary. A cut height c is drawn
/// uniformly from {0..H-1}; child one keeps parent a's placement of every
/// task with height <= c and adopts parent b's placement of the rest
/// (per-processor concatenation, preserving each parent's internal order);
/// child two is symmetric. Children are valid whenever the parents are.
/// When H = 0 there is no cut site and the parents return unchanged without
/// consuming a draw.
inline std::pair<Chromosome, Chromosome> crossover(const Chromosome& a,
                                                   const Chromosome& b,
                                                   const HeightMap& heights,
                                                   Rng& rng) {
    if (a.proc_count() != b.proc_count()) {
        throw std::invalid_argument("crossover: parents use different processor counts");
    }
    const int max_h = heights.max_height;
    if (max_h == 0) return {a, b};
    const int cut = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_h)));
    const auto make_child = [&](const Chromosome& top, const Chromosome& bottom) {
        Chromosome child;
        child.procs.resize(top.procs.size());
        for (std::size_t p = 0; p < top.procs.size(); ++p) {
            auto& list = child.procs[p];
            for (TaskId t : top.procs[p]) {
                if (heights.height[static_cast<std::size_t>(t)] <= cut) list.push_back(t);
            }
            for (TaskId t : bottom.procs[p]) {
                if (heights.height[static_cast<std::size_t>(t)] > cut) list.push_back(t);
            }
        }
        return child;
    };
    return {make_child(a, b), make_child(b, a)};
}

/// Swaps the positions of two distinct tasks of equal height. The level is
/// drawn uniformly among levels holding at least two tasks, then the pair is
/// drawn uniformly within it. Identity (no draws) when every level is a
/// singleton.
inline Chromosome mutate(Chromosome c, const HeightMap& heights, Rng& rng) {
    std::vector<std::vector<std::pair<int, std::size_t>>> positions(
        static_cast<std::size_t>(heights.max_height) + 1);
    for (int p = 0; p < c.proc_count(); ++p) {
        const auto& list = c.procs[static_cast<std::size_t>(p)];
        for (std::size_t i = 0; i < list.size(); ++i) {
            const int h = heights.height[static_cast<std::size_t>(list[i])];
            positions[static_cast<std::size_t>(h)].emplace_back(p, i);
        }
    }
    std::vector<int> eligible;
    for (std::size_t h = 0; h < positions.size(); ++h) {
        if (positions[h].size() >= 2) eligible.push_back(static_cast<int>(h));
    }
    if (eligible.empty()) return c;
    const int level =
        eligible[static_cast<std::size_t>(rng.below(eligible.size()))];
    const auto& slots = positions[static_cast<std::size_t>(level)];
    const auto k = static_cast<std::uint64_t>(slots.size());
    const auto first = static_cast<std::size_t>(rng.below(k));
    auto second = static_cast<std::size_t>(rng.below(k - 1));
    if (second >= first) ++second;
    const auto [pa, ia] = slots[first];
    const auto [pb, ib] = slots[second];
    std::swap(c.procs[static_cast<std::size_t>(pa)][ia],
              c.procs[static_cast<std::size_t>(pb)][ib]);
    return c;
}

/// Optional per-generation observer, invoked with the population after
/// elitist replacement. Used by tests; has no effect on the run.
using GaObserver = std::function<void(int generation, const std::vector<Chromosome>&)>;

/// Generation loop: evaluate, update the running cmax, fitness, roulette
/// reproduction, crossover on consecutive pairs of the shuffled pool,
/// mutation, then elitist replacement of the worst individual by the best
/// string seen so far. Stops at max_iterations or once the best makespan has
/// been flat for convergence_window generations.
///
/// The single RNG stream is consumed in a fixed order: population init, then
/// per generation selection draws, pairing shuffle, per-pair crossover
/// decisions and cuts, and per-individual mutation decisions and picks.
/// Evaluation consumes no randomness, so results are bit-reproducible for a
/// fixed (graph, m, config).
///
/// `seed_individual`, when given, replaces the first random individual and
/// must be a valid chromosome for (g, m).
inline GaResult run_ga(const TaskGraph& g, int m, const GaConfig& cfg,
                       const Chromosome* seed_individual = nullptr,
                       const GaObserver* observer = nullptr) {
    ensure_valid(cfg);
    if (m < 1) throw std::invalid_argument("processor count must be >= 1");
    const HeightMap heights = compute_heights(g);
    const int size = cfg.population_size;

    Rng rng(cfg.seed);
    std::vector<Chromosome> pop = init_population(g, heights, m, size, rng);
    if (seed_individual != nullptr) {
        const auto violations = validate_chromosome(g, heights, *seed_individual);
        if (!violations.empty()) {
            throw std::invalid_argument("seed individual: " + join_violations(violations));
        }
        if (seed_individual->proc_count() != m) {
            throw std::invalid_argument("seed individual: wrong processor count");
        }
        pop[0] = *seed_individual;
    }

    FitnessLedger ledger;
    std::vector<Duration> fts(static_cast<std::size_t>(size));
    const auto evaluate_all = [&]() {
        for (int i = 0; i < size; ++i) {
            fts[static_cast<std::size_t>(i)] =
                evaluate(g, heights, pop[static_cast<std::size_t>(i)]).makespan;
            ledger.observe(fts[static_cast<std::size_t>(i)]);
        }
    };
    const auto argmin_ft = [&]() {
        return static_cast<std::size_t>(
            std::min_element(fts.begin(), fts.end()) - fts.begin());
    };

    evaluate_all();
    std::size_t best_idx = argmin_ft();
    Chromosome best = pop[best_idx];
    Duration best_ft = fts[best_idx];

    GaResult result;
    const auto record = [&]() {
        double sum = 0.0;
        for (Duration ft : fts) sum += static_cast<double>(ft);
        result.history.push_back(GenerationStats{
            best_ft, sum / static_cast<double>(size), ledger.cmax});
    };
    record();

    int stale = 0;
    for (int gen = 1; gen <= cfg.max_iterations; ++gen) {
        if (stale >= cfg.convergence_window) break;

        std::vector<Duration> fitness(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) {
            fitness[static_cast<std::size_t>(i)] =
                ledger.fitness(fts[static_cast<std::size_t>(i)]);
        }
        std::vector<Chromosome> pool = roulette_select(pop, fitness, rng);
        rng.shuffle(pool);
        for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
            if (rng.bernoulli(cfg.crossover_rate)) {
                auto children = crossover(pool[i], pool[i + 1], heights, rng);
                pool[i] = std::move(children.first);
                pool[i + 1] = std::move(children.second);
            }
        }
        for (auto& individual : pool) {
            if (rng.bernoulli(cfg.mutation_rate)) {
                individual = mutate(std::move(individual), heights, rng);
            }
        }
        pop = std::move(pool);
        evaluate_all();

        // Elitism: the best string seen so far replaces the current worst
        // (ties for worst broken by lowest index).
        const auto worst_idx = static_cast<std::size_t>(
            std::max_element(fts.begin(), fts.end()) - fts.begin());
        pop[worst_idx] = best;
        fts[worst_idx] = best_ft;

        const std::size_t gen_best = argmin_ft();
        if (fts[gen_best] < best_ft) {
            best = pop[gen_best];
            best_ft = fts[gen_best];
            stale = 0;
        } else {
            ++stale;
        }
        result.generations_run = gen;
        record();
        if (observer != nullptr && *observer) (*observer)(gen, pop);
    }

    result.best = std::move(best);
    result.best_makespan = best_ft;
    return result;
}

/// Per-generation history as CSV (generation,best_ft,mean_ft,cmax).
inline std::string history_csv(const GaResult& result) {
    std::ostringstream out;
    out << "generation,best_ft,mean_ft,cmax\n";
    for (std::size_t i = 0; i < result.history.size(); ++i) {
        const auto& s = result.history[i];
        out << i << ',' << s.best_makespan << ',' << s.mean_makespan << ','
            << s.cmax << '\n';
    }
    return out.str();
}

} // namespace mpsched
