#pragma once

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpsched/schedule.hpp"
#include "mpsched/taskgraph.hpp"

namespace mpsched {

namespace detail {

inline int digits(long long v) {
    int d = 1;
    while (v >= 10) { v /= 10; ++d; }
    return d;
}

/// proc → time-unit → occupying task id, or -1 when idle.
inline std::vector<std::vector<TaskId>> occupancy(const GanttChart& chart, int m) {
    if (m < 1) throw std::invalid_argument("processor count must be >= 1");
    std::vector<std::vector<TaskId>> grid(
        static_cast<std::size_t>(m),
        std::vector<TaskId>(static_cast<std::size_t>(chart.makespan), -1));
    for (std::size_t t = 0; t < chart.tasks.size(); ++t) {
        const auto& tp = chart.tasks[t];
        if (tp.proc < 0 || tp.proc >= m) {
            throw std::invalid_argument("schedule uses processor " +
                                        std::to_string(tp.proc) +
                                        " outside 0.." + std::to_string(m - 1));
        }
        for (Duration u = tp.start; u < tp.finish; ++u) {
            auto& cell = grid[static_cast<std::size_t>(tp.proc)][static_cast<std::size_t>(u)];
            if (cell != -1) {
                throw std::invalid_argument("schedule overlaps tasks " +
                                            std::to_string(cell) + " and " +
                                            std::to_string(t) + " on processor " +
                                            std::to_string(tp.proc));
            }
            cell = static_cast<TaskId>(t);
        }
    }
    return grid;
}

} // namespace detail

/// Text Gantt chart: one row per processor, one fixed-width cell per time
/// unit. A cell holds the id of the task running in that unit, or "." when
/// the processor is idle. Cells are single-space separated after the "Pk |"
/// prefix, so rows split cleanly on whitespace.
inline std::string render_text(const GanttChart& chart, int m) {
    const auto grid = detail::occupancy(chart, m);
    int width = 1;
    if (!chart.tasks.empty()) {
        width = detail::digits(static_cast<long long>(chart.tasks.size()) - 1);
    }
    std::ostringstream out;
    out << "makespan " << chart.makespan << "\n";
    for (int p = 0; p < m; ++p) {
        out << 'P' << p << " |";
        for (Duration u = 0; u < chart.makespan; ++u) {
            const TaskId id = grid[static_cast<std::size_t>(p)][static_cast<std::size_t>(u)];
            const std::string cell = id < 0 ? "." : std::to_string(id);
            out << ' ' << std::string(static_cast<std::size_t>(width) - cell.size(), ' ')
                << cell;
        }
        out << '\n';
    }
    return out.str();
}

/// SVG Gantt chart: one horizontal bar per task positioned by (start,
/// finish), one lane per processor. Self-contained, fixed scale.
inline std::string render_svg(const GanttChart& chart, int m) {
    detail::occupancy(chart, m); // reuse its structural checks
    constexpr int unit_px = 24;
    constexpr int lane_px = 32;
    constexpr int pad = 40;
    static const char* const palette[] = {"#4e79a7", "#f28e2b", "#59a14f",
                                          "#e15759", "#b07aa1", "#76b7b2",
                                          "#edc948", "#9c755f"};
    constexpr std::size_t palette_size = sizeof(palette) / sizeof(palette[0]);

    const long long width = pad * 2 + chart.makespan * unit_px;
    const long long height = pad * 2 + static_cast<long long>(m) * lane_px;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (int p = 0; p < m; ++p) {
        const long long y = pad + static_cast<long long>(p) * lane_px;
        out << "  <text x=\"8\" y=\"" << y + lane_px / 2 + 4 << "\">P" << p << "</text>\n";
        out << "  <line x1=\"" << pad << "\" y1=\"" << y + lane_px << "\" x2=\""
            << pad + chart.makespan * unit_px << "\" y2=\"" << y + lane_px
            << "\" stroke=\"#ccc\"/>\n";
    }
    for (std::size_t t = 0; t < chart.tasks.size(); ++t) {
        const auto& tp = chart.tasks[t];
        const long long x = pad + tp.start * unit_px;
        const long long y = pad + static_cast<long long>(tp.proc) * lane_px + 3;
        const long long w = (tp.finish - tp.start) * unit_px;
        out << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w
            << "\" height=\"" << lane_px - 6 << "\" fill=\"" << palette[t % palette_size]
            << "\" stroke=\"#333\"/>\n";
        out << "  <text x=\"" << x + w / 2 << "\" y=\"" << y + (lane_px - 6) / 2 + 4
            << "\" text-anchor=\"middle\">" << t << "</text>\n";
    }
    out << "  <text x=\"" << pad << "\" y=\"" << pad - 12 << "\">makespan "
        << chart.makespan << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace mpsched
