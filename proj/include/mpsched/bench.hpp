#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mpsched/baseline.hpp"
#include "mpsched/ga.hpp"
#include "mpsched/rng.hpp"
#include "mpsched/taskgraph.hpp"

namespace mpsched {

/// One benchmark run: a single algorithm applied to a single instance.
struct RunReport {
    std::string instance_id;
    int n = 0;
    int m = 0;
    std::string algo;
    std::string policy;
    Duration makespan = 0;
    Duration lower_bound = 0;
    int generations = 0; // 0 for non-iterative algorithms
    long long wall_ms = 0;
    std::uint64_t seed = 0;
};

struct BenchSpec {
    std::vector<int> sizes;
    std::vector<int> procs;
    int reps = 10;
    std::uint64_t master_seed = 0;
    GaConfig ga;                // per-instance seed is derived, not taken from here
    PriorityPolicy lsh_policy;  // ditto for the tie-break seed
    GenSpec gen;                // n and seed are set per instance
};

inline void ensure_valid(const BenchSpec& spec) {
    if (spec.sizes.empty()) throw std::invalid_argument("bench: no sizes given");
    if (spec.procs.empty()) throw std::invalid_argument("bench: no processor counts given");
    for (int n : spec.sizes) {
        if (n < 1) throw std::invalid_argument("bench: sizes must be >= 1");
    }
    for (int m : spec.procs) {
        if (m < 1) throw std::invalid_argument("bench: processor counts must be >= 1");
    }
    if (spec.reps < 1) throw std::invalid_argument("bench: reps must be >= 1");
}

inline std::string ga_policy_summary(const GaConfig& cfg) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "pop=%d;iters=%d;cx=%g;mut=%g;window=%d",
                  cfg.population_size, cfg.max_iterations, cfg.crossover_rate,
                  cfg.mutation_rate, cfg.convergence_window);
    return buf;
}

namespace detail {

inline long long elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace detail

/// Runs LSH and the GA on the same generated instance for every
/// (size, procs, rep) combination, two rows per instance, in a fixed order.
/// The instance seed is derived from (master_seed, n, m, rep) alone, so
/// extending the size or processor lists never changes existing rows.
inline std::vector<RunReport> run_bench(const BenchSpec& spec) {
    ensure_valid(spec);
    ensure_valid(spec.ga);
    std::vector<RunReport> rows;
    rows.reserve(spec.sizes.size() * spec.procs.size() *
                 static_cast<std::size_t>(spec.reps) * 2);
    for (int n : spec.sizes) {
        for (int m : spec.procs) {
            for (int rep = 0; rep < spec.reps; ++rep) {
                const std::uint64_t instance_seed = derive_seed(
                    spec.master_seed,
                    {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m),
                     static_cast<std::uint64_t>(rep)});
                GenSpec gen = spec.gen;
                gen.n = n;
                gen.seed = instance_seed;
                const TaskGraph g = generate_random(gen);
                const Duration lb = makespan_lower_bound(g, m);
                const std::string id = "n" + std::to_string(n) + "_m" +
                                       std::to_string(m) + "_r" + std::to_string(rep);

                RunReport lsh;
                lsh.instance_id = id;
                lsh.n = n;
                lsh.m = m;
                lsh.algo = "lsh";
                lsh.policy = to_string(spec.lsh_policy.kind);
                lsh.lower_bound = lb;
                lsh.seed = instance_seed;
                {
                    PriorityPolicy policy = spec.lsh_policy;
                    policy.tie_break_seed = derive_seed(instance_seed, {2});
                    const auto t0 = std::chrono::steady_clock::now();
                    lsh.makespan = list_schedule(g, m, policy).makespan;
                    lsh.wall_ms = detail::elapsed_ms(t0);
                }
                rows.push_back(std::move(lsh));

                RunReport ga;
                ga.instance_id = id;
                ga.n = n;
                ga.m = m;
                ga.algo = "ga";
                ga.policy = ga_policy_summary(spec.ga);
                ga.lower_bound = lb;
                ga.seed = instance_seed;
                {
                    GaConfig cfg = spec.ga;
                    cfg.seed = derive_seed(instance_seed, {1});
                    const auto t0 = std::chrono::steady_clock::now();
                    const GaResult result = run_ga(g, m, cfg);
                    ga.wall_ms = detail::elapsed_ms(t0);
                    ga.makespan = result.best_makespan;
                    ga.generations = result.generations_run;
                }
                rows.push_back(std::move(ga));
            }
        }
    }
    return rows;
}

inline std::string csv_header() {
    return "instance_id,n,m,algo,policy,makespan,lower_bound,generations,wall_ms,seed";
}

inline std::string csv_row(const RunReport& r) {
    std::ostringstream out;
    out << r.instance_id << ',' << r.n << ',' << r.m << ',' << r.algo << ','
        << r.policy << ',' << r.makespan << ',' << r.lower_bound << ','
        << r.generations << ',' << r.wall_ms << ',' << r.seed;
    return out.str();
}

inline std::string bench_csv(const std::vector<RunReport>& rows) {
    std::ostringstream out;
    out << csv_header() << '\n';
    for (const auto& r : rows) out << csv_row(r) << '\n';
    return out.str();
}

/// Mean makespans per (n, m) for each algorithm, one line per combination.
inline std::string summary_table(const std::vector<RunReport>& rows) {
    struct Acc {
        double lsh_sum = 0, ga_sum = 0;
        int lsh_count = 0, ga_count = 0;
    };
    std::map<std::pair<int, int>, Acc> by_case;
    for (const auto& r : rows) {
        Acc& acc = by_case[{r.n, r.m}];
        if (r.algo == "lsh") {
            acc.lsh_sum += static_cast<double>(r.makespan);
            ++acc.lsh_count;
        } else if (r.algo == "ga") {
            acc.ga_sum += static_cast<double>(r.makespan);
            ++acc.ga_count;
        }
    }
    std::ostringstream out;
    out << "   n   m    mean_lsh     mean_ga   ga/lsh\n";
    char buf[96];
    for (const auto& [key, acc] : by_case) {
        const double lsh = acc.lsh_count > 0 ? acc.lsh_sum / acc.lsh_count : 0.0;
        const double ga = acc.ga_count > 0 ? acc.ga_sum / acc.ga_count : 0.0;
        const double ratio = lsh > 0.0 ? ga / lsh : 0.0;
        std::snprintf(buf, sizeof(buf), "%4d %3d %11.2f %11.2f %8.3f\n", key.first,
                      key.second, lsh, ga, ratio);
        out << buf;
    }
    return out.str();
}

} // namespace mpsched
