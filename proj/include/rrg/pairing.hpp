#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rrg/error.hpp"
#include "rrg/graph.hpp"
#include "rrg/rng.hpp"

namespace rrg {

// Perfect matching on the dn elements [0, dn), stored as an involution
// (element -> partner, no fixed points). Element e lives in cell e / d.
class Pairing {
public:
    // Builds from a permutation of [0, dn); consecutive entries are paired.
    static Pairing from_shuffled(int n, int d, const std::vector<int>& elems) {
        Pairing p(n, d);
        for (std::size_t i = 0; i + 1 < elems.size(); i += 2) {
            p.partner_[elems[i]] = elems[i + 1];
            p.partner_[elems[i + 1]] = elems[i];
        }
        return p;
    }

    static Pairing from_pairs(int n, int d,
                              const std::vector<std::pair<int, int>>& pairs) {
        Pairing p(n, d);
        std::vector<char> seen(static_cast<std::size_t>(n) * d, 0);
        for (auto [a, b] : pairs) {
            if (a < 0 || b < 0 || a >= n * d || b >= n * d || a == b || seen[a] || seen[b])
                throw input_error("Pairing: not a perfect matching");
            seen[a] = seen[b] = 1;
            p.partner_[a] = b;
            p.partner_[b] = a;
        }
        if (static_cast<int>(pairs.size()) * 2 != n * d)
            throw input_error("Pairing: wrong number of pairs");
        return p;
    }

    int n() const { return n_; }
    int d() const { return d_; }
    int element_count() const { return n_ * d_; }

    int partner(int e) const { return partner_.at(e); }
    int cell(int e) const { return e / d_; }

    // Unordered pairs [a, b] with a < b, sorted by a.
    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(partner_.size() / 2);
        for (int e = 0; e < static_cast<int>(partner_.size()); ++e)
            if (e < partner_[e]) out.emplace_back(e, partner_[e]);
        return out;
    }

    bool operator==(const Pairing&) const = default;

private:
    Pairing(int n, int d) : n_(n), d_(d), partner_(static_cast<std::size_t>(n) * d, -1) {
        if (n < 0 || d < 0 || static_cast<long long>(n) * d % 2 != 0)
            throw input_error("Pairing: dn must be even and non-negative");
    }

    int n_, d_;
    std::vector<int> partner_;
};

struct SampleStats {
    long long attempts = 0;
    bool accepted = false;
    std::chrono::nanoseconds elapsed{0};
};

// Uniform pairing: seeded uniform shuffle of the element array, consecutive
// entries paired.
inline Pairing random_pairing(int n, int d, std::uint64_t seed) {
    if (n < 0 || d < 0 || static_cast<long long>(n) * d % 2 != 0)
        throw input_error("random_pairing: dn must be even");
    std::vector<int> elems(static_cast<std::size_t>(n) * d);
    for (int i = 0; i < n * d; ++i) elems[i] = i;
    Rng rng(seed);
    rng.shuffle(elems);
    return Pairing::from_shuffled(n, d, elems);
}

// G(P): one edge {cell(a), cell(b)} per pair; loops and parallel edges kept.
inline MultiGraph project_multigraph(const Pairing& p) {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(p.element_count()) / 2);
    for (auto [a, b] : p.pairs()) edges.emplace_back(p.cell(a), p.cell(b));
    return MultiGraph::from_edges(p.n(), p.d(), std::move(edges));
}

// True iff no loops and no parallel edges.
inline bool is_simple(const MultiGraph& m) {
    for (std::size_t i = 0; i < m.edges.size(); ++i) {
        if (m.edges[i].first == m.edges[i].second) return false;
        if (i > 0 && m.edges[i] == m.edges[i - 1]) return false;
    }
    return true;
}

inline RegularGraph to_regular_graph(const MultiGraph& m) {
    return RegularGraph(m.n, m.d, m.edges);
}

// exp((1-d^2)/4 - d^3/(12n)); the O(d^2/n) correction is dropped.
inline double prob_simple(int d, long long n) {
    if (d < 1) throw input_error("prob_simple: d >= 1 required");
    if (n < 1) throw input_error("prob_simple: n >= 1 required");
    double dd = static_cast<double>(d);
    return std::exp((1.0 - dd * dd) / 4.0 -
                    dd * dd * dd / (12.0 * static_cast<double>(n)));
}

// Default rejection budget: ceil(20 / prob_simple), capped at 1e6.
inline long long default_max_attempts(int n, int d) {
    if (d <= 1) return 1; // matchings and empty graphs are always simple
    double p = prob_simple(d, n);
    double a = std::ceil(20.0 / p);
    return a > 1e6 ? 1000000LL : static_cast<long long>(a);
}

// Rejection sampler for the uniform simple d-regular graph: fresh pairings
// until the projection is simple. Attempt i uses seed trial_seed(seed, i).
inline std::pair<RegularGraph, SampleStats>
sample_simple(int n, int d, std::uint64_t seed, long long max_attempts) {
    if (max_attempts < 1) throw input_error("sample_simple: max_attempts >= 1");
    if (static_cast<long long>(n) * d % 2 != 0)
        throw input_error("sample_simple: dn must be even");
    SampleStats stats;
    auto start = std::chrono::steady_clock::now();
    for (long long attempt = 0; attempt < max_attempts; ++attempt) {
        ++stats.attempts;
        Pairing p = random_pairing(n, d, trial_seed(seed, static_cast<std::uint64_t>(attempt)));
        MultiGraph m = project_multigraph(p);
        if (is_simple(m)) {
            stats.accepted = true;
            stats.elapsed = std::chrono::steady_clock::now() - start;
            return {to_regular_graph(m), stats};
        }
    }
    throw sampling_error(stats.attempts);
}

inline std::pair<RegularGraph, SampleStats>
sample_simple(int n, int d, std::uint64_t seed) {
    return sample_simple(n, d, seed, default_max_attempts(n, d));
}

// P' = P minus {{e_a, e_a^P}, {e_b, e_b^P}} plus {{e_a, e_b}, {e_a^P, e_b^P}}.
inline Pairing pairing_switch(const Pairing& p, int e_a, int e_b) {
    if (e_a < 0 || e_a >= p.element_count() || e_b < 0 || e_b >= p.element_count())
        throw input_error("pairing_switch: element out of range");
    int pa = p.partner(e_a);
    int pb = p.partner(e_b);
    if (e_b == e_a || e_b == pa)
        throw input_error("pairing_switch: elements must come from distinct pairs");
    auto pairs = p.pairs();
    for (auto& pr : pairs) {
        auto [x, y] = pr;
        if (x == e_a || y == e_a) pr = {std::min(e_a, e_b), std::max(e_a, e_b)};
        else if (x == e_b || y == e_b) pr = {std::min(pa, pb), std::max(pa, pb)};
    }
    return Pairing::from_pairs(p.n(), p.d(), pairs);
}

// {a,x},{b,y} -> {a,b},{x,y} on a simple regular graph.
inline RegularGraph two_switch(const RegularGraph& g, Vertex a, Vertex x,
                               Vertex b, Vertex y) {
    Vertex vs[4] = {a, x, b, y};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (vs[i] == vs[j])
                throw input_error("two_switch: a, x, b, y must be pairwise distinct");
    if (!g.has_edge(a, x)) throw input_error("two_switch: {a,x} must be an edge");
    if (!g.has_edge(b, y)) throw input_error("two_switch: {b,y} must be an edge");
    if (g.has_edge(a, b)) throw input_error("two_switch: {a,b} must be a non-edge");
    if (g.has_edge(x, y)) throw input_error("two_switch: {x,y} must be a non-edge");
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) {
        if ((u == std::min(a, x) && v == std::max(a, x)) ||
            (u == std::min(b, y) && v == std::max(b, y)))
            continue;
        edges.emplace_back(u, v);
    }
    edges.emplace_back(std::min(a, b), std::max(a, b));
    edges.emplace_back(std::min(x, y), std::max(x, y));
    return RegularGraph(g.vertex_count(), g.degree(), edges);
}

// Debug serialization: JSON array of [a, b], a < b, sorted.
inline nlohmann::json to_json(const Pairing& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto [a, b] : p.pairs()) arr.push_back({a, b});
    return arr;
}

} // namespace rrg
