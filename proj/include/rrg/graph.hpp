#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rrg/error.hpp"

namespace rrg {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>; // normalized u <= v; u < v when simple

// Sorted set of distinct vertex ids. Construction sorts and rejects
// duplicates; membership is binary search.
class VertexSet {
public:
    VertexSet() = default;

    explicit VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
        std::sort(ids_.begin(), ids_.end());
        if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
            throw input_error("VertexSet: duplicate vertex id");
        if (!ids_.empty() && ids_.front() < 0)
            throw input_error("VertexSet: negative vertex id");
    }

    VertexSet(std::initializer_list<Vertex> ids)
        : VertexSet(std::vector<Vertex>(ids)) {}

    static VertexSet full(int n) {
        std::vector<Vertex> v(n);
        for (int i = 0; i < n; ++i) v[i] = i;
        return VertexSet(std::move(v));
    }

    bool contains(Vertex v) const {
        return std::binary_search(ids_.begin(), ids_.end(), v);
    }

    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    Vertex max_id() const { return ids_.empty() ? -1 : ids_.back(); }

    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }
    const std::vector<Vertex>& ids() const { return ids_; }

    bool operator==(const VertexSet&) const = default;

private:
    std::vector<Vertex> ids_;
};

// Simple d-regular graph on [0, n). Adjacency is stored as sorted neighbor
// lists; construction validates regularity, simplicity and symmetry.
class RegularGraph {
public:
    RegularGraph(int n, int d, const std::vector<Edge>& edge_list) : n_(n), d_(d) {
        if (n < 0 || d < 0) throw input_error("RegularGraph: n and d must be non-negative");
        if (static_cast<long long>(n) * d % 2 != 0)
            throw input_error("RegularGraph: n*d must be even");
        adj_.assign(n, {});
        for (auto [u, v] : edge_list) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw input_error("RegularGraph: vertex id out of range");
            if (u == v) throw input_error("RegularGraph: loop not allowed");
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (Vertex v = 0; v < n; ++v) {
            auto& nb = adj_[v];
            std::sort(nb.begin(), nb.end());
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
                throw input_error("RegularGraph: parallel edge not allowed");
            if (static_cast<int>(nb.size()) != d)
                throw input_error("RegularGraph: vertex " + std::to_string(v) +
                                  " has degree " + std::to_string(nb.size()) +
                                  ", expected " + std::to_string(d));
        }
    }

    int vertex_count() const { return n_; }
    int degree() const { return d_; }
    long long edge_count() const { return static_cast<long long>(n_) * d_ / 2; }

    const std::vector<Vertex>& neighbors(Vertex v) const {
        check_vertex(v);
        return adj_[v];
    }

    bool has_edge(Vertex u, Vertex v) const {
        check_vertex(u);
        check_vertex(v);
        return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
    }

    // Edges as (u, v) with u < v, sorted lexicographically.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(static_cast<std::size_t>(edge_count()));
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    bool operator==(const RegularGraph& other) const {
        return n_ == other.n_ && d_ == other.d_ && adj_ == other.adj_;
    }

private:
    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_) throw input_error("vertex id out of range");
    }

    int n_, d_;
    std::vector<std::vector<Vertex>> adj_;
};

// d-regular multigraph: loops (v,v) and parallel edges permitted, a loop
// contributes 2 to its endpoint's degree.
struct MultiGraph {
    int n = 0;
    int d = 0;
    std::vector<Edge> edges; // normalized u <= v, sorted lexicographically

    static MultiGraph from_edges(int n, int d, std::vector<Edge> edge_list) {
        MultiGraph m;
        m.n = n;
        m.d = d;
        std::vector<int> deg(n, 0);
        for (auto& [u, v] : edge_list) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw input_error("MultiGraph: vertex id out of range");
            if (u > v) std::swap(u, v);
            deg[u] += (u == v) ? 2 : 1;
            if (u != v) deg[v] += 1;
        }
        for (int v = 0; v < n; ++v)
            if (deg[v] != d)
                throw input_error("MultiGraph: vertex " + std::to_string(v) +
                                  " has degree " + std::to_string(deg[v]) +
                                  ", expected " + std::to_string(d));
        std::sort(edge_list.begin(), edge_list.end());
        m.edges = std::move(edge_list);
        return m;
    }
};

// Partial vertex coloring. Color ids are positive; 0 means unassigned.
class Coloring {
public:
    Coloring() = default;
    Coloring(int n, int palette) : color_(n, 0), palette_(palette) {}

    int size() const { return static_cast<int>(color_.size()); }
    int palette() const { return palette_; }
    void set_palette(int t) { palette_ = t; }

    bool assigned(Vertex v) const { return color_.at(v) != 0; }
    int color_of(Vertex v) const { return color_.at(v); }

    void assign(Vertex v, int color) {
        if (color <= 0) throw input_error("Coloring: color ids are positive");
        color_.at(v) = color;
    }

    void clear(Vertex v) { color_.at(v) = 0; }

    int max_color_used() const {
        int m = 0;
        for (int c : color_) m = std::max(m, c);
        return m;
    }

    std::size_t assigned_count() const {
        std::size_t k = 0;
        for (int c : color_) k += (c != 0);
        return k;
    }

    // Proper on its domain: no edge with both endpoints assigned equal.
    bool proper_on(const RegularGraph& g) const {
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            if (!assigned(u)) continue;
            for (Vertex v : g.neighbors(u))
                if (v > u && assigned(v) && color_of(v) == color_of(u)) return false;
        }
        return true;
    }

    bool operator==(const Coloring&) const = default;

private:
    std::vector<int> color_;
    int palette_ = 0;
};

namespace detail {
inline void check_subset(const VertexSet& u, int n, const char* who) {
    if (!u.empty() && u.max_id() >= n)
        throw input_error(std::string(who) + ": vertex id out of range");
}
} // namespace detail

// e(U): edges with both endpoints in U.
inline long long edges_within(const RegularGraph& g, const VertexSet& u) {
    detail::check_subset(u, g.vertex_count(), "edges_within");
    long long twice = 0;
    for (Vertex v : u)
        for (Vertex w : g.neighbors(v)) twice += u.contains(w);
    return twice / 2;
}

// e(U, W): edges {x,y} with one endpoint in U and the other in W; an edge
// with both endpoints in U cap W is counted once.
inline long long edges_between(const RegularGraph& g, const VertexSet& u,
                               const VertexSet& w) {
    detail::check_subset(u, g.vertex_count(), "edges_between");
    detail::check_subset(w, g.vertex_count(), "edges_between");
    long long count = 0;
    for (Vertex x = 0; x < g.vertex_count(); ++x)
        for (Vertex y : g.neighbors(x)) {
            if (y <= x) continue;
            if ((u.contains(x) && w.contains(y)) || (u.contains(y) && w.contains(x)))
                ++count;
        }
    return count;
}

// Number of triangles through v = e(N(v)).
inline long long triangles_at(const RegularGraph& g, Vertex v) {
    return edges_within(g, VertexSet(g.neighbors(v)));
}

// Paths u-a-b-w with all four vertices distinct.
inline long long paths3_count(const RegularGraph& g, Vertex u, Vertex w) {
    if (u == w) throw input_error("paths3_count: endpoints must be distinct");
    long long count = 0;
    for (Vertex a : g.neighbors(u)) {
        if (a == w) continue;
        for (Vertex b : g.neighbors(a)) {
            if (b == u || b == w) continue;
            if (g.has_edge(b, w)) ++count;
        }
    }
    return count;
}

struct DegeneracyResult {
    std::vector<Vertex> order; // removal order
    int degeneracy = 0;        // max degree at removal time
};

namespace detail {
// Peeling on an induced subgraph given by `active`; ties by lowest id.
inline DegeneracyResult degeneracy_peel(const RegularGraph& g,
                                        std::vector<char> active) {
    const int n = g.vertex_count();
    const int maxd = g.degree();
    std::vector<int> deg(n, 0);
    int remaining = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (!active[v]) continue;
        ++remaining;
        for (Vertex w : g.neighbors(v)) deg[v] += active[w];
    }
    // Ordered buckets so the lowest id in the lowest bucket goes first.
    std::vector<std::set<Vertex>> bucket(maxd + 1);
    for (Vertex v = 0; v < n; ++v)
        if (active[v]) bucket[deg[v]].insert(v);
    DegeneracyResult res;
    res.order.reserve(remaining);
    while (remaining > 0) {
        int k = 0;
        while (bucket[k].empty()) ++k;
        Vertex v = *bucket[k].begin();
        bucket[k].erase(bucket[k].begin());
        active[v] = 0;
        --remaining;
        res.degeneracy = std::max(res.degeneracy, k);
        res.order.push_back(v);
        for (Vertex w : g.neighbors(v))
            if (active[w]) {
                bucket[deg[w]].erase(w);
                bucket[--deg[w]].insert(w);
            }
    }
    return res;
}
} // namespace detail

// Repeatedly remove a minimum-degree vertex (ties: lowest id). Returns the
// removal order and the degeneracy d* = max removal-time degree.
inline DegeneracyResult degeneracy_order(const RegularGraph& g) {
    return detail::degeneracy_peel(g, std::vector<char>(g.vertex_count(), 1));
}

// Same, restricted to the subgraph induced by `sub`.
inline DegeneracyResult degeneracy_order_induced(const RegularGraph& g,
                                                 const VertexSet& sub) {
    detail::check_subset(sub, g.vertex_count(), "degeneracy_order_induced");
    std::vector<char> active(g.vertex_count(), 0);
    for (Vertex v : sub) active[v] = 1;
    return detail::degeneracy_peel(g, std::move(active));
}

} // namespace rrg
