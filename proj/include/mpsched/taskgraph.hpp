#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mpsched/rng.hpp"

namespace mpsched {

using TaskId = int;
using Duration = long long;
using EdgeList = std::vector<std::pair<TaskId, TaskId>>;

/// Immutable precedence graph: dense task ids 0..n-1, a positive integer
/// execution time per task, and directed edges (u, v) meaning u must finish
/// before v may start.
///
/// Construction never throws; structural problems (bad endpoints, cycles,
/// non-positive times) are reported by validate(). Edges are kept in
/// lexicographic order, which is also the canonical serialization order.
class TaskGraph {
public:
    TaskGraph() = default;

    TaskGraph(std::vector<int> exec_times, EdgeList edges)
        : exec_times_(std::move(exec_times)), edges_(std::move(edges)) {
        std::sort(edges_.begin(), edges_.end());
        const int n = task_count();
        preds_.resize(exec_times_.size());
        succs_.resize(exec_times_.size());
        for (const auto& [u, v] : edges_) {
            // Adjacency only for well-formed endpoints; validate() reports the rest.
            if (u >= 0 && u < n && v >= 0 && v < n && u != v) {
                succs_[u].push_back(v);
                preds_[v].push_back(u);
            }
        }
    }

    int task_count() const { return static_cast<int>(exec_times_.size()); }
    int exec_time(TaskId t) const { return exec_times_[static_cast<std::size_t>(t)]; }
    const std::vector<int>& exec_times() const { return exec_times_; }
    const EdgeList& edges() const { return edges_; }
    const std::vector<TaskId>& predecessors(TaskId t) const {
        return preds_[static_cast<std::size_t>(t)];
    }
    const std::vector<TaskId>& successors(TaskId t) const {
        return succs_[static_cast<std::size_t>(t)];
    }

    Duration total_exec_time() const {
        return std::accumulate(exec_times_.begin(), exec_times_.end(), Duration{0});
    }

    friend bool operator==(const TaskGraph& a, const TaskGraph& b) {
        return a.exec_times_ == b.exec_times_ && a.edges_ == b.edges_;
    }

private:
    std::vector<int> exec_times_;
    EdgeList edges_;
    std::vector<std::vector<TaskId>> preds_;
    std::vector<std::vector<TaskId>> succs_;
};

namespace detail {

inline std::string edge_str(TaskId u, TaskId v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

// Kahn topological order over the well-formed edges. Returns the visited
// order; size < n means the leftover tasks sit on at least one cycle.
inline std::vector<TaskId> topological_order(const TaskGraph& g) {
    const int n = g.task_count();
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (TaskId t = 0; t < n; ++t) {
        indeg[static_cast<std::size_t>(t)] =
            static_cast<int>(g.predecessors(t).size());
    }
    std::vector<TaskId> queue;
    queue.reserve(static_cast<std::size_t>(n));
    for (TaskId t = 0; t < n; ++t) {
        if (indeg[static_cast<std::size_t>(t)] == 0) queue.push_back(t);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const TaskId u = queue[head];
        for (TaskId v : g.successors(u)) {
            if (--indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
        }
    }
    return queue;
}

} // namespace detail

/// Checks every TaskGraph invariant and returns all violations found
/// (empty result means the graph is valid). Violations are human-readable
/// one-liners; a cycle is reported with an explicit witness walk.
inline std::vector<std::string> validate(const TaskGraph& g) {
    std::vector<std::string> out;
    const int n = g.task_count();
    if (n < 1) {
        out.push_back("graph has no tasks (task count must be >= 1)");
        return out;
    }
    for (TaskId t = 0; t < n; ++t) {
        if (g.exec_time(t) < 1) {
            out.push_back("exec_time(" + std::to_string(t) + ") = " +
                          std::to_string(g.exec_time(t)) + " (must be >= 1)");
        }
    }
    const EdgeList& es = g.edges();
    for (std::size_t i = 0; i < es.size(); ++i) {
        const auto [u, v] = es[i];
        if (u < 0 || u >= n || v < 0 || v >= n) {
            out.push_back("edge " + detail::edge_str(u, v) +
                          " has an endpoint outside 0.." + std::to_string(n - 1));
        } else if (u == v) {
            out.push_back("edge " + detail::edge_str(u, v) + " is a self-edge");
        } else if (i > 0 && es[i] == es[i - 1]) {
            out.push_back("duplicate edge " + detail::edge_str(u, v));
        }
    }
    const std::vector<TaskId> order = detail::topological_order(g);
    if (static_cast<int>(order.size()) < n) {
        std::vector<char> on_cycle_set(static_cast<std::size_t>(n), 1);
        for (TaskId t : order) on_cycle_set[static_cast<std::size_t>(t)] = 0;
        // Walk predecessors inside the leftover set until a task repeats,
        // then unwind the loop in edge direction.
        TaskId start = 0;
        while (!on_cycle_set[static_cast<std::size_t>(start)]) ++start;
        std::vector<TaskId> walk;
        std::vector<int> pos(static_cast<std::size_t>(n), -1);
        TaskId cur = start;
        while (pos[static_cast<std::size_t>(cur)] < 0) {
            pos[static_cast<std::size_t>(cur)] = static_cast<int>(walk.size());
            walk.push_back(cur);
            for (TaskId p : g.predecessors(cur)) {
                if (on_cycle_set[static_cast<std::size_t>(p)]) {
                    cur = p;
                    break;
                }
            }
        }
        std::string msg = "cycle:";
        const int first = pos[static_cast<std::size_t>(cur)];
        for (int i = static_cast<int>(walk.size()) - 1; i >= first; --i) {
            msg += " " + std::to_string(walk[static_cast<std::size_t>(i)]) + " ->";
        }
        msg += " " + std::to_string(cur);
        out.push_back(msg);
    }
    return out;
}

inline std::string join_violations(const std::vector<std::string>& violations) {
    std::string s;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i > 0) s += "; ";
        s += violations[i];
    }
    return s;
}

/// Throws std::invalid_argument listing every violation if g is not valid.
inline void ensure_valid(const TaskGraph& g) {
    const auto violations = validate(g);
    if (!violations.empty()) {
        throw std::invalid_argument("invalid task graph: " + join_violations(violations));
    }
}

/// Per-task level index: 0 for tasks without predecessors, otherwise
/// 1 + the maximum height among predecessors. Tasks of equal height are
/// never related by precedence.
struct HeightMap {
    std::vector<int> height;
    int max_height = 0;
};

inline HeightMap compute_heights(const TaskGraph& g) {
    ensure_valid(g);
    const int n = g.task_count();
    HeightMap hm;
    hm.height.assign(static_cast<std::size_t>(n), 0);
    for (TaskId u : detail::topological_order(g)) {
        for (TaskId v : g.successors(u)) {
            hm.height[static_cast<std::size_t>(v)] =
                std::max(hm.height[static_cast<std::size_t>(v)],
                         hm.height[static_cast<std::size_t>(u)] + 1);
        }
    }
    hm.max_height = *std::max_element(hm.height.begin(), hm.height.end());
    return hm;
}

/// Tasks grouped by height, level 0 first; ids ascend within a level.
inline std::vector<std::vector<TaskId>> height_levels(const HeightMap& hm) {
    std::vector<std::vector<TaskId>> levels(static_cast<std::size_t>(hm.max_height) + 1);
    for (std::size_t t = 0; t < hm.height.size(); ++t) {
        levels[static_cast<std::size_t>(hm.height[t])].push_back(static_cast<TaskId>(t));
    }
    return levels;
}

/// Largest path sum of execution times through the graph, endpoints included.
/// A lower bound on the makespan of every schedule.
inline Duration critical_path_length(const TaskGraph& g) {
    ensure_valid(g);
    const int n = g.task_count();
    std::vector<Duration> longest(static_cast<std::size_t>(n), 0);
    Duration best = 0;
    for (TaskId u : detail::topological_order(g)) {
        Duration in = 0;
        for (TaskId p : g.predecessors(u)) {
            in = std::max(in, longest[static_cast<std::size_t>(p)]);
        }
        longest[static_cast<std::size_t>(u)] = in + g.exec_time(u);
        best = std::max(best, longest[static_cast<std::size_t>(u)]);
    }
    return best;
}

/// max(critical path, ceil(total work / m)) — no schedule on m processors
/// can finish earlier.
inline Duration makespan_lower_bound(const TaskGraph& g, int m) {
    if (m < 1) throw std::invalid_argument("processor count must be >= 1");
    const Duration work = g.total_exec_time();
    return std::max(critical_path_length(g), (work + m - 1) / m);
}

/// Parameters for the layered random instance generator.
struct GenSpec {
    int n = 8;
    int succ_min = 3;
    int succ_max = 6;
    int et_min = 1;
    int et_max = 25;
    std::uint64_t seed = 0;
};

inline void ensure_valid(const GenSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("GenSpec: n must be >= 1");
    if (spec.succ_min < 1 || spec.succ_min > spec.succ_max) {
        throw std::invalid_argument("GenSpec: need 1 <= succ_min <= succ_max");
    }
    if (spec.et_min < 1 || spec.et_min > spec.et_max) {
        throw std::invalid_argument("GenSpec: need 1 <= et_min <= et_max");
    }
}

/// Random DAG: execution times uniform in [et_min, et_max]; each task i
/// draws a successor count k uniform in [succ_min, succ_max] and receives
/// min(k, n-1-i) distinct successors drawn uniformly from the tasks with a
/// larger index. Directing every edge toward larger indices guarantees
/// acyclicity; duplicate successor draws are rejected and redrawn so the
/// edge set stays a set.
///
/// Draw order (fixed): all execution times in id order, then per task in id
/// order the successor count followed by its successor draws.
inline TaskGraph generate_random(const GenSpec& spec) {
    ensure_valid(spec);
    Rng rng(spec.seed);
    const int n = spec.n;
    std::vector<int> exec(static_cast<std::size_t>(n));
    for (auto& et : exec) {
        et = spec.et_min +
             static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.et_max - spec.et_min) + 1));
    }
    EdgeList edges;
    for (TaskId i = 0; i < n; ++i) {
        const int k = spec.succ_min +
                      static_cast<int>(rng.below(
                          static_cast<std::uint64_t>(spec.succ_max - spec.succ_min) + 1));
        const int candidates = n - 1 - i;
        const int take = std::min(k, candidates);
        if (take <= 0) continue;
        std::vector<char> used(static_cast<std::size_t>(candidates), 0);
        int got = 0;
        while (got < take) {
            const int off = static_cast<int>(rng.below(static_cast<std::uint64_t>(candidates)));
            if (!used[static_cast<std::size_t>(off)]) {
                used[static_cast<std::size_t>(off)] = 1;
                edges.emplace_back(i, i + 1 + off);
                ++got;
            }
        }
    }
    return TaskGraph(std::move(exec), std::move(edges));
}

} // namespace mpsched
