#pragma once

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mpsched/schedule.hpp"
#include "mpsched/taskgraph.hpp"

namespace mpsched {

/// Malformed input file: syntax errors, unknown fields, or content that
/// violates a structural invariant. The message carries the offending
/// field or byte position.
class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline nlohmann::ordered_json parse_json(const std::string& bytes,
                                         const std::string& what) {
    try {
        return nlohmann::ordered_json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

inline void reject_unknown_fields(const nlohmann::ordered_json& obj,
                                  std::initializer_list<const char*> known,
                                  const std::string& where) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (item.key() == k) { ok = true; break; }
        }
        if (!ok) throw ParseError(where + ": unknown field \"" + item.key() + "\"");
    }
}

inline long long require_int(const nlohmann::ordered_json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
    return v.get<long long>();
}

} // namespace detail

// ---------------------------------------------------------------------------
// Graph files: {"tasks":[{"id":0,"et":3}, ...],"edges":[[u,v], ...]}
// ---------------------------------------------------------------------------

/// Canonical serialization: tasks ascending by id, edges in lexicographic
/// order, compact JSON, no trailing newline. parse_graph of the result
/// reproduces the graph exactly.
inline std::string serialize_graph(const TaskGraph& g) {
    nlohmann::ordered_json doc;
    doc["tasks"] = nlohmann::ordered_json::array();
    for (int t = 0; t < g.task_count(); ++t) {
        nlohmann::ordered_json task;
        task["id"] = t;
        task["et"] = g.exec_time(t);
        doc["tasks"].push_back(std::move(task));
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& [u, v] : g.edges()) {
        doc["edges"].push_back(nlohmann::ordered_json::array({u, v}));
    }
    return doc.dump();
}

/// Parses and validates a graph file. Task ids must be exactly 0..n-1 (any
/// order); edges may appear in any order and are stored canonically.
inline TaskGraph parse_graph(const std::string& bytes) {
    const auto doc = detail::parse_json(bytes, "graph file");
    if (!doc.is_object()) throw ParseError("graph file: top level must be an object");
    detail::reject_unknown_fields(doc, {"tasks", "edges"}, "graph file");
    if (!doc.contains("tasks") || !doc["tasks"].is_array()) {
        throw ParseError("graph file: missing \"tasks\" array");
    }
    if (!doc.contains("edges") || !doc["edges"].is_array()) {
        throw ParseError("graph file: missing \"edges\" array");
    }

    const auto& tasks = doc["tasks"];
    std::vector<int> et(tasks.size(), 0);
    std::vector<bool> seen(tasks.size(), false);
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const std::string where = "tasks[" + std::to_string(i) + "]";
        const auto& task = tasks[i];
        if (!task.is_object()) throw ParseError(where + ": expected an object");
        detail::reject_unknown_fields(task, {"id", "et"}, where);
        if (!task.contains("id") || !task.contains("et")) {
            throw ParseError(where + ": requires \"id\" and \"et\"");
        }
        const long long id = detail::require_int(task["id"], where + ".id");
        if (id < 0 || id >= static_cast<long long>(tasks.size())) {
            throw ParseError(where + ".id: " + std::to_string(id) +
                             " outside 0.." + std::to_string(tasks.size() - 1));
        }
        if (seen[static_cast<std::size_t>(id)]) {
            throw ParseError(where + ".id: duplicate id " + std::to_string(id));
        }
        seen[static_cast<std::size_t>(id)] = true;
        const long long raw_et = detail::require_int(task["et"], where + ".et");
        if (raw_et < std::numeric_limits<int>::min() ||
            raw_et > std::numeric_limits<int>::max()) {
            throw ParseError(where + ".et: " + std::to_string(raw_et) + " out of range");
        }
        et[static_cast<std::size_t>(id)] = static_cast<int>(raw_et);
    }

    EdgeList edges;
    const auto& raw_edges = doc["edges"];
    for (std::size_t i = 0; i < raw_edges.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        const auto& e = raw_edges[i];
        if (!e.is_array() || e.size() != 2) {
            throw ParseError(where + ": expected a [from, to] pair");
        }
        edges.emplace_back(static_cast<TaskId>(detail::require_int(e[0], where + "[0]")),
                           static_cast<TaskId>(detail::require_int(e[1], where + "[1]")));
    }

    TaskGraph g(std::move(et), std::move(edges));
    const auto violations = validate(g);
    if (!violations.empty()) {
        throw ParseError("graph file: " + join_violations(violations));
    }
    return g;
}

// ---------------------------------------------------------------------------
// Schedule files: {"procs":[[task-id, ...], ...]}
// ---------------------------------------------------------------------------

/// Compact JSON, list index = processor index, no trailing newline.
inline std::string serialize_chromosome(const Chromosome& c) {
    nlohmann::ordered_json doc;
    doc["procs"] = nlohmann::ordered_json::array();
    for (const auto& list : c.procs) {
        doc["procs"].push_back(list);
    }
    return doc.dump();
}

/// Parses a schedule file structurally; does not check it against a graph.
inline Chromosome parse_chromosome(const std::string& bytes) {
    const auto doc = detail::parse_json(bytes, "schedule file");
    if (!doc.is_object()) throw ParseError("schedule file: top level must be an object");
    detail::reject_unknown_fields(doc, {"procs"}, "schedule file");
    if (!doc.contains("procs") || !doc["procs"].is_array()) {
        throw ParseError("schedule file: missing \"procs\" array");
    }
    Chromosome c;
    const auto& procs = doc["procs"];
    for (std::size_t p = 0; p < procs.size(); ++p) {
        const std::string where = "procs[" + std::to_string(p) + "]";
        if (!procs[p].is_array()) throw ParseError(where + ": expected an array");
        std::vector<TaskId> list;
        for (std::size_t i = 0; i < procs[p].size(); ++i) {
            list.push_back(static_cast<TaskId>(detail::require_int(
                procs[p][i], where + "[" + std::to_string(i) + "]")));
        }
        c.procs.push_back(std::move(list));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline TaskGraph load_graph(const std::string& path) {
    return parse_graph(read_file(path));
}

inline void save_graph(const std::string& path, const TaskGraph& g) {
    write_file(path, serialize_graph(g));
}

/// Loads a schedule file and checks it against the graph it schedules
/// (completeness, uniqueness, height order).
inline Chromosome load_chromosome(const std::string& path, const TaskGraph& g) {
    Chromosome c = parse_chromosome(read_file(path));
    const auto violations = validate_chromosome(g, compute_heights(g), c);
    if (!violations.empty()) {
        throw ParseError("schedule file: " + join_violations(violations));
    }
    return c;
}

inline void save_chromosome(const std::string& path, const Chromosome& c) {
    write_file(path, serialize_chromosome(c));
}

} // namespace mpsched
