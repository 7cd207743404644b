#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpsched/taskgraph.hpp"

namespace mpsched {

/// One schedule encoding: an ordered task list per processor. A chromosome
/// is valid for a graph when the lists partition the task set and each list
/// is non-decreasing in task height.
struct Chromosome {
    std::vector<std::vector<TaskId>> procs;

    int proc_count() const { return static_cast<int>(procs.size()); }

    friend bool operator==(const Chromosome& a, const Chromosome& b) {
        return a.procs == b.procs;
    }
};

struct TaskPlacement {
    int proc = -1;
    Duration start = 0;
    Duration finish = 0;
};

/// Fully evaluated schedule: per-task placement plus the makespan (finishing
/// time of the last task).
struct GanttChart {
    std::vector<TaskPlacement> tasks; // indexed by task id
    Duration makespan = 0;
};

/// Checks completeness, uniqueness and the per-list height ordering.
/// Returns every violation found; empty means valid.
inline std::vector<std::string> validate_chromosome(const TaskGraph& g,
                                                    const HeightMap& heights,
                                                    const Chromosome& c) {
    std::vector<std::string> out;
    const int n = g.task_count();
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (int p = 0; p < c.proc_count(); ++p) {
        const auto& list = c.procs[static_cast<std::size_t>(p)];
        for (std::size_t i = 0; i < list.size(); ++i) {
            const TaskId t = list[i];
            if (t < 0 || t >= n) {
                out.push_back("processor " + std::to_string(p) + ": task id " +
                              std::to_string(t) + " out of range 0.." +
                              std::to_string(n - 1));
                continue;
            }
            ++count[static_cast<std::size_t>(t)];
            if (i > 0) {
                const TaskId prev = list[i - 1];
                if (prev >= 0 && prev < n &&
                    heights.height[static_cast<std::size_t>(prev)] >
                        heights.height[static_cast<std::size_t>(t)]) {
                    out.push_back("processor " + std::to_string(p) + ": task " +
                                  std::to_string(prev) + " (height " +
                                  std::to_string(heights.height[static_cast<std::size_t>(prev)]) +
                                  ") precedes task " + std::to_string(t) + " (height " +
                                  std::to_string(heights.height[static_cast<std::size_t>(t)]) +
                                  ")");
                }
            }
        }
    }
    for (TaskId t = 0; t < n; ++t) {
        if (count[static_cast<std::size_t>(t)] == 0) {
            out.push_back("task " + std::to_string(t) + " missing from schedule");
        } else if (count[static_cast<std::size_t>(t)] > 1) {
            out.push_back("task " + std::to_string(t) + " appears " +
                          std::to_string(count[static_cast<std::size_t>(t)]) + " times");
        }
    }
    return out;
}

/// Deterministic list execution: each processor runs its list strictly in
/// order; a task starts at max(time its processor frees, latest predecessor
/// finish), and a processor idles while its head task is not yet runnable.
/// Terminates for every height-ordered chromosome: among the current list
/// heads, one of minimal height always has all predecessors finished.
inline GanttChart evaluate(const TaskGraph& g, const HeightMap& heights,
                           const Chromosome& c) {
    const auto violations = validate_chromosome(g, heights, c);
    if (!violations.empty()) {
        throw std::invalid_argument("invalid chromosome: " + join_violations(violations));
    }
    const int n = g.task_count();
    const int m = c.proc_count();
    GanttChart chart;
    chart.tasks.assign(static_cast<std::size_t>(n), TaskPlacement{});
    std::vector<std::size_t> head(static_cast<std::size_t>(m), 0);
    std::vector<Duration> free_at(static_cast<std::size_t>(m), 0);
    std::vector<Duration> finish(static_cast<std::size_t>(n), -1);
    int remaining = n;
    while (remaining > 0) {
        bool progress = false;
        for (int p = 0; p < m; ++p) {
            const auto& list = c.procs[static_cast<std::size_t>(p)];
            while (head[static_cast<std::size_t>(p)] < list.size()) {
                const TaskId t = list[head[static_cast<std::size_t>(p)]];
                Duration ready = 0;
                bool runnable = true;
                for (TaskId u : g.predecessors(t)) {
                    if (finish[static_cast<std::size_t>(u)] < 0) {
                        runnable = false;
                        break;
                    }
                    ready = std::max(ready, finish[static_cast<std::size_t>(u)]);
                }
                if (!runnable) break;
                const Duration start = std::max(free_at[static_cast<std::size_t>(p)], ready);
                const Duration end = start + g.exec_time(t);
                chart.tasks[static_cast<std::size_t>(t)] = TaskPlacement{p, start, end};
                finish[static_cast<std::size_t>(t)] = end;
                free_at[static_cast<std::size_t>(p)] = end;
                ++head[static_cast<std::size_t>(p)];
                --remaining;
                progress = true;
            }
        }
        if (!progress) {
            throw std::logic_error("schedule deadlock: no runnable list head");
        }
    }
    chart.makespan = *std::max_element(finish.begin(), finish.end());
    return chart;
}

inline GanttChart evaluate(const TaskGraph& g, const Chromosome& c) {
    return evaluate(g, compute_heights(g), c);
}

/// Per-processor lists of a chart in start-time order.
inline Chromosome to_chromosome(const GanttChart& chart, int m) {
    Chromosome c;
    c.procs.resize(static_cast<std::size_t>(m));
    std::vector<std::vector<std::pair<Duration, TaskId>>> by_proc(
        static_cast<std::size_t>(m));
    for (std::size_t t = 0; t < chart.tasks.size(); ++t) {
        const auto& pl = chart.tasks[t];
        by_proc[static_cast<std::size_t>(pl.proc)].emplace_back(pl.start,
                                                                static_cast<TaskId>(t));
    }
    for (int p = 0; p < m; ++p) {
        auto& v = by_proc[static_cast<std::size_t>(p)];
        std::sort(v.begin(), v.end());
        for (const auto& [start, t] : v) {
            c.procs[static_cast<std::size_t>(p)].push_back(t);
        }
    }
    return c;
}

/// Stable-sorts each processor list by height, keeping the relative order of
/// equal-height tasks. Turns any complete assignment into a valid chromosome.
inline Chromosome height_normalized(Chromosome c, const HeightMap& heights) {
    for (auto& list : c.procs) {
        std::stable_sort(list.begin(), list.end(), [&](TaskId a, TaskId b) {
            return heights.height[static_cast<std::size_t>(a)] <
                   heights.height[static_cast<std::size_t>(b)];
        });
    }
    return c;
}

} // namespace mpsched
