#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mpsched/rng.hpp"
#include "mpsched/schedule.hpp"
#include "mpsched/taskgraph.hpp"

namespace mpsched {

// ---------------------------------------------------------------------------
// List-scheduling heuristic (LSH)
// ---------------------------------------------------------------------------

enum class PriorityKind { bottom_level, height_descending, random };

struct PriorityPolicy {
    PriorityKind kind = PriorityKind::bottom_level;
    std::uint64_t tie_break_seed = 0;
};

inline std::string to_string(PriorityKind kind) {
    switch (kind) {
        case PriorityKind::bottom_level: return "bottom_level";
        case PriorityKind::height_descending: return "height_descending";
        case PriorityKind::random: return "random";
    }
    throw std::invalid_argument("unknown priority kind");
}

inline PriorityKind priority_kind_from_string(const std::string& name) {
    if (name == "bottom_level") return PriorityKind::bottom_level;
    if (name == "height_descending") return PriorityKind::height_descending;
    if (name == "random") return PriorityKind::random;
    throw std::invalid_argument("unknown priority policy: " + name);
}

/// Longest path (by execution time, inclusive) from each task to any sink.
/// The maximum over all tasks equals the critical path length.
inline std::vector<Duration> bottom_level(const TaskGraph& g) {
    ensure_valid(g);
    const auto order = detail::topological_order(g);
    std::vector<Duration> bl(static_cast<std::size_t>(g.task_count()), 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const TaskId t = *it;
        Duration deepest = 0;
        for (TaskId s : g.successors(t)) {
            deepest = std::max(deepest, bl[static_cast<std::size_t>(s)]);
        }
        bl[static_cast<std::size_t>(t)] = g.exec_time(t) + deepest;
    }
    return bl;
}

/// Greedy event-driven list scheduling: whenever a processor is free, the
/// highest-priority READY task (all predecessors finished) is dispatched to
/// it. Work-conserving — no processor idles while a ready task exists. Ties
/// in priority are broken by a seeded random draw among the tied tasks (in
/// ascending task-id order), so runs are deterministic for a fixed policy.
inline GanttChart list_schedule(const TaskGraph& g, int m,
                                const PriorityPolicy& policy = {}) {
    ensure_valid(g);
    if (m < 1) throw std::invalid_argument("processor count must be >= 1");
    const int n = g.task_count();

    std::vector<Duration> priority(static_cast<std::size_t>(n), 0);
    switch (policy.kind) {
        case PriorityKind::bottom_level: {
            priority = bottom_level(g);
            break;
        }
        case PriorityKind::height_descending: {
            const HeightMap hm = compute_heights(g);
            for (int t = 0; t < n; ++t) {
                priority[static_cast<std::size_t>(t)] = hm.height[static_cast<std::size_t>(t)];
            }
            break;
        }
        case PriorityKind::random:
            // All priorities equal: every dispatch decision is a tie-break.
            break;
    }

    Rng rng(policy.tie_break_seed);
    std::vector<int> unfinished_preds(static_cast<std::size_t>(n), 0);
    std::vector<Duration> ready_at(static_cast<std::size_t>(n), 0);
    for (int t = 0; t < n; ++t) {
        unfinished_preds[static_cast<std::size_t>(t)] =
            static_cast<int>(g.predecessors(t).size());
    }

    GanttChart chart;
    chart.tasks.resize(static_cast<std::size_t>(n));
    std::vector<Duration> proc_free(static_cast<std::size_t>(m), 0);
    std::vector<bool> scheduled(static_cast<std::size_t>(n), false);
    std::vector<TaskId> ready;
    for (int t = 0; t < n; ++t) {
        if (unfinished_preds[static_cast<std::size_t>(t)] == 0) ready.push_back(t);
    }

    Duration now = 0;
    int remaining = n;
    while (remaining > 0) {
        // Dispatch onto every processor free at the current time.
        bool dispatched = true;
        while (dispatched) {
            dispatched = false;
            int proc = -1;
            for (int p = 0; p < m; ++p) {
                if (proc_free[static_cast<std::size_t>(p)] <= now) { proc = p; break; }
            }
            if (proc < 0 || ready.empty()) break;

            // Highest priority among ready tasks; tied candidates collected
            // in ascending id order and drawn from uniformly.
            std::sort(ready.begin(), ready.end());
            Duration top = std::numeric_limits<Duration>::min();
            for (TaskId t : ready) {
                top = std::max(top, priority[static_cast<std::size_t>(t)]);
            }
            std::vector<TaskId> tied;
            for (TaskId t : ready) {
                if (priority[static_cast<std::size_t>(t)] == top) tied.push_back(t);
            }
            const TaskId chosen =
                tied.size() == 1
                    ? tied.front()
                    : tied[static_cast<std::size_t>(rng.below(tied.size()))];
            ready.erase(std::find(ready.begin(), ready.end(), chosen));

            const Duration start = now;
            const Duration finish = start + g.exec_time(chosen);
            chart.tasks[static_cast<std::size_t>(chosen)] = TaskPlacement{proc, start, finish};
            proc_free[static_cast<std::size_t>(proc)] = finish;
            scheduled[static_cast<std::size_t>(chosen)] = true;
            --remaining;
            dispatched = true;

            for (TaskId s : g.successors(chosen)) {
                ready_at[static_cast<std::size_t>(s)] =
                    std::max(ready_at[static_cast<std::size_t>(s)], finish);
                if (--unfinished_preds[static_cast<std::size_t>(s)] == 0 &&
                    ready_at[static_cast<std::size_t>(s)] <= now) {
                    ready.push_back(s);
                }
            }
        }
        if (remaining == 0) break;

        // Advance to the next event: the earliest running-task finish, which
        // is also the earliest moment new tasks can become ready.
        Duration next = std::numeric_limits<Duration>::max();
        for (int p = 0; p < m; ++p) {
            const Duration f = proc_free[static_cast<std::size_t>(p)];
            if (f > now) next = std::min(next, f);
        }
        if (next == std::numeric_limits<Duration>::max()) {
            throw std::logic_error("list_schedule stalled with tasks remaining");
        }
        now = next;
        for (int t = 0; t < n; ++t) {
            if (!scheduled[static_cast<std::size_t>(t)] &&
                unfinished_preds[static_cast<std::size_t>(t)] == 0 &&
                ready_at[static_cast<std::size_t>(t)] <= now &&
                std::find(ready.begin(), ready.end(), t) == ready.end()) {
                ready.push_back(t);
            }
        }
    }

    chart.makespan = 0;
    for (const auto& tp : chart.tasks) chart.makespan = std::max(chart.makespan, tp.finish);
    return chart;
}

// ---------------------------------------------------------------------------
// Exhaustive optimal oracle
// ---------------------------------------------------------------------------

/// Raised when the branch-and-bound search exceeds its node budget.
class BudgetExceeded : public std::runtime_error {
  public:
    explicit BudgetExceeded(std::uint64_t budget)
        : std::runtime_error("brute_force_optimal: node budget of " +
                             std::to_string(budget) + " exceeded") {}
};

struct BruteForceResult {
    Duration makespan = 0;
    Chromosome witness;
    GanttChart chart;
    std::uint64_t nodes_explored = 0;
};

namespace detail {

struct BruteForceSearch {
    const TaskGraph& g;
    const HeightMap heights;
    const std::vector<std::vector<TaskId>> levels;
    const std::vector<Duration> bl;
    const int m;
    const std::uint64_t budget;

    std::vector<Duration> finish;     // per-task finish time (placed tasks)
    std::vector<Duration> proc_free;  // per-processor current finish
    Chromosome current;
    Duration work_remaining = 0;
    std::uint64_t nodes = 0;

    Duration best_makespan = std::numeric_limits<Duration>::max();
    Chromosome best;

    BruteForceSearch(const TaskGraph& graph, int procs, std::uint64_t node_budget)
        : g(graph),
          heights(compute_heights(graph)),
          levels(height_levels(heights)),
          bl(bottom_level(graph)),
          m(procs),
          budget(node_budget),
          finish(static_cast<std::size_t>(graph.task_count()), 0),
          proc_free(static_cast<std::size_t>(procs), 0),
          work_remaining(graph.total_exec_time()) {
        current.procs.resize(static_cast<std::size_t>(procs));
    }

    Duration node_bound(Duration inherited) const {
        Duration busiest = 0;
        Duration total_free = 0;
        for (Duration f : proc_free) {
            busiest = std::max(busiest, f);
            total_free += f;
        }
        const Duration mean_ceiling =
            (total_free + work_remaining + m - 1) / m;
        return std::max({inherited, busiest, mean_ceiling});
    }

    void record_leaf() {
        Duration makespan = 0;
        for (Duration f : proc_free) makespan = std::max(makespan, f);
        if (makespan < best_makespan) {
            best_makespan = makespan;
            best = current;
        }
    }

    /// Explores every placement of the remaining tasks of level `li` onto
    /// processors `p..m-1` (earlier processors are closed for this level),
    /// then recurses into the next level. `pending` holds the level's
    /// unplaced tasks; `inherited` is the subtree lower bound so far.
    void explore(std::size_t li, int p, std::vector<TaskId>& pending,
                 Duration inherited) {
        if (node_bound(inherited) >= best_makespan) return;
        if (pending.empty()) {
            const std::size_t next = li + 1;
            if (next >= levels.size()) {
                record_leaf();
                return;
            }
            std::vector<TaskId> next_pending = levels[next];
            explore(next, 0, next_pending, inherited);
            return;
        }
        // Close processor p for this level and move on — only possible while
        // another processor remains to take the pending tasks.
        if (p + 1 < m) explore(li, p + 1, pending, inherited);

        // Or append one of the pending tasks to processor p. A task may open
        // a previously empty processor only if it is the lowest-indexed empty
        // one; any other choice is a relabeling of that placement.
        if (current.procs[static_cast<std::size_t>(p)].empty()) {
            for (int q = 0; q < p; ++q) {
                if (current.procs[static_cast<std::size_t>(q)].empty()) return;
            }
        }
        for (std::size_t i = 0; i < pending.size(); ++i) {
            const TaskId t = pending[i];
            if (++nodes > budget) throw BudgetExceeded(budget);

            Duration ready = 0;
            for (TaskId u : g.predecessors(t)) {
                ready = std::max(ready, finish[static_cast<std::size_t>(u)]);
            }
            const Duration start = std::max(proc_free[static_cast<std::size_t>(p)], ready);
            const Duration done = start + g.exec_time(t);
            const Duration child_bound =
                std::max(inherited, start + bl[static_cast<std::size_t>(t)]);

            const Duration saved_free = proc_free[static_cast<std::size_t>(p)];
            finish[static_cast<std::size_t>(t)] = done;
            proc_free[static_cast<std::size_t>(p)] = done;
            work_remaining -= g.exec_time(t);
            current.procs[static_cast<std::size_t>(p)].push_back(t);
            pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));

            explore(li, p, pending, child_bound);

            pending.insert(pending.begin() + static_cast<std::ptrdiff_t>(i), t);
            current.procs[static_cast<std::size_t>(p)].pop_back();
            work_remaining += g.exec_time(t);
            proc_free[static_cast<std::size_t>(p)] = saved_free;
            finish[static_cast<std::size_t>(t)] = 0;
        }
    }
};

} // namespace detail

/// Minimum makespan over every valid chromosome, found by exhaustive
/// branch-and-bound over height-ordered placements. Exact within the node
/// budget; throws BudgetExceeded beyond it. Intended for small instances
/// (roughly n <= 10, m <= 3). The search is warm-started from the
/// height-normalized list-scheduling solution, so the witness is always a
/// valid chromosome.
inline BruteForceResult brute_force_optimal(const TaskGraph& g, int m,
                                            std::uint64_t budget = 20'000'000) {
    ensure_valid(g);
    if (m < 1) throw std::invalid_argument("processor count must be >= 1");

    detail::BruteForceSearch search(g, m, budget);

    const GanttChart warm = list_schedule(g, m, PriorityPolicy{});
    const Chromosome warm_chrom =
        height_normalized(to_chromosome(warm, m), search.heights);
    search.best = warm_chrom;
    search.best_makespan = evaluate(g, search.heights, warm_chrom).makespan;

    if (g.task_count() > 0) {
        std::vector<TaskId> pending = search.levels.front();
        search.explore(0, 0, pending, 0);
    }

    BruteForceResult result;
    result.makespan = search.best_makespan;
    result.witness = std::move(search.best);
    result.chart = evaluate(g, search.heights, result.witness);
    result.nodes_explored = search.nodes;
    return result;
}

} // namespace mpsched
