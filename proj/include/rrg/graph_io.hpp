#pragma once

#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "rrg/graph.hpp"

namespace rrg {

// Edge-list text format: first line "n d", then one line "u v" per edge,
// 0-based, u < v, sorted lexicographically.
inline std::string to_edge_list_text(const RegularGraph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.degree() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

inline RegularGraph from_edge_list_text(const std::string& text) {
    std::istringstream in(text);
    int n, d;
    if (!(in >> n >> d)) throw input_error("edge list: missing header line \"n d\"");
    std::vector<Edge> edges;
    int u, v;
    while (in >> u >> v) {
        if (u >= v) throw input_error("edge list: edges must satisfy u < v");
        edges.emplace_back(u, v);
    }
    if (!in.eof()) throw input_error("edge list: trailing garbage");
    if (!std::is_sorted(edges.begin(), edges.end()))
        throw input_error("edge list: edges must be sorted lexicographically");
    return RegularGraph(n, d, edges);
}

inline nlohmann::json to_json(const RegularGraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return {{"n", g.vertex_count()}, {"d", g.degree()}, {"edges", edges}};
}

inline RegularGraph graph_from_json(const nlohmann::json& j) {
    if (!j.contains("n") || !j.contains("d") || !j.contains("edges"))
        throw input_error("graph json: expected fields n, d, edges");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw input_error("graph json: each edge must be a pair");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return RegularGraph(j.at("n").get<int>(), j.at("d").get<int>(), edges);
}

} // namespace rrg
