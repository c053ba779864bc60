#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rrg/error.hpp"
#include "rrg/graph.hpp"
#include "rrg/rng.hpp"
#include "rrg/spectral.hpp"

// Deciders for the five structural properties that a typical random
// d-regular graph satisfies, plus the expander-mixing validation oracle.

namespace rrg {

enum class PropertyStatus { holds, violated, inconclusive };

inline std::string to_string(PropertyStatus s) {
    switch (s) {
        case PropertyStatus::holds: return "holds";
        case PropertyStatus::violated: return "violated";
        default: return "inconclusive";
    }
}

struct PropertyRecord {
    int id = 0;
    PropertyStatus status = PropertyStatus::inconclusive;
    std::optional<VertexSet> witness;                    // violating subset
    std::optional<std::pair<Vertex, Vertex>> witness_pair; // violating pair
    std::string checked_scope;
    std::map<std::string, double> parameters;

    bool holds() const { return status == PropertyStatus::holds; }
};

struct GammaConfig {
    int property1_coeff = 5;            // "spans less than coeff*u edges"
    long long property1_u_max = -1;     // -1: ceil(sqrt(n d^3))
    int property1_search_cap = 12;      // exhaustive subset-size cap
    double property2_flag = 3.0;        // flag lambda/sqrt(d) above this
    int property3_coeff = 5;            // "less than coeff*u^2*d/n edges"
    int subset_samples = 10000;         // sampled-family size per size step
    int exhaustive_n_limit = 20;        // full subset enumeration below this
    int triangle_limit = 4;
    int paths3_limit = 4;
    double spectral_tolerance = 1e-10;
    std::uint64_t seed = 0;
};

struct MixingResult {
    double max_violation = 0.0; // max over U of |e(U) - C(u,2)d/n| - lambda*u
    VertexSet worst;
};

namespace detail {

inline VertexSet set_from_mask(std::uint32_t mask, int n) {
    std::vector<Vertex> v;
    for (int i = 0; i < n; ++i)
        if (mask >> i & 1) v.push_back(i);
    return VertexSet(std::move(v));
}

// Random u-subset of [0, n).
inline VertexSet random_subset(int n, int u, Rng& rng) {
    return VertexSet(rng.sample_without_replacement(n, u));
}

// Geometric size ladder from lo to hi inclusive.
inline std::vector<int> geometric_sizes(int lo, int hi, double ratio = 1.3) {
    std::vector<int> sizes;
    for (double x = lo; x < hi; x *= ratio) {
        int s = static_cast<int>(std::ceil(x));
        if (sizes.empty() || s > sizes.back()) sizes.push_back(s);
    }
    if (sizes.empty() || sizes.back() != hi) sizes.push_back(hi);
    return sizes;
}

} // namespace detail

// Validation oracle for the mixing inequality |e(U) - C(u,2)d/n| <= lambda*u
// over a supplied family of subsets. A positive max_violation signals an
// implementation bug, not a graph property.
inline MixingResult mixing_check(const RegularGraph& g, double lambda,
                                 const std::vector<VertexSet>& subsets) {
    const double dn = static_cast<double>(g.degree()) / g.vertex_count();
    MixingResult res;
    res.max_violation = -std::numeric_limits<double>::infinity();
    for (const auto& u : subsets) {
        const double usz = static_cast<double>(u.size());
        const double expected = usz * (usz - 1) / 2.0 * dn;
        const double dev = std::abs(static_cast<double>(edges_within(g, u)) - expected);
        const double v = dev - lambda * usz;
        if (v > res.max_violation) {
            res.max_violation = v;
            res.worst = u;
        }
    }
    return res;
}

// Same check over every one of the 2^n subsets; n <= 25 enforced.
inline MixingResult mixing_check_exhaustive(const RegularGraph& g, double lambda) {
    const int n = g.vertex_count();
    if (n > 25) throw scope_error("mixing_check_exhaustive: n <= 25 required");
    const auto edges = g.edges();
    std::vector<std::uint32_t> edge_mask(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i)
        edge_mask[i] = (1u << edges[i].first) | (1u << edges[i].second);
    const double dn = static_cast<double>(g.degree()) / n;
    MixingResult res;
    res.max_violation = -std::numeric_limits<double>::infinity();
    std::uint32_t worst_mask = 0;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        int e = 0;
        for (std::uint32_t em : edge_mask) e += (mask & em) == em;
        const double usz = std::popcount(static_cast<std::uint32_t>(mask));
        const double v = std::abs(e - usz * (usz - 1) / 2.0 * dn) - lambda * usz;
        if (v > res.max_violation) {
            res.max_violation = v;
            worst_mask = static_cast<std::uint32_t>(mask);
        }
    }
    res.worst = detail::set_from_mask(worst_mask, n);
    return res;
}

// Property 1: no vertex set of size u <= u_max spans >= coeff*u edges.
// Strategy: degeneracy certificate, then greedy-peeling counterexample hunt,
// then bounded exhaustive search.
inline PropertyRecord check_property1(const RegularGraph& g, long long u_max,
                                      int coeff = 5, int search_cap = 12) {
    PropertyRecord rec;
    rec.id = 1;
    rec.parameters = {{"coeff", double(coeff)}, {"u_max", double(u_max)}};
    const int n = g.vertex_count();
    u_max = std::min<long long>(u_max, n);
    if (u_max < 1) {
        rec.status = PropertyStatus::holds;
        rec.checked_scope = "empty scope (u_max < 1)";
        return rec;
    }

    // Global certificate: degeneracy D implies e(S) <= D|S| for every S.
    auto degen = degeneracy_order(g);
    if (degen.degeneracy <= coeff - 1) {
        rec.status = PropertyStatus::holds;
        rec.checked_scope = "certificate: degeneracy " +
                            std::to_string(degen.degeneracy) + " <= " +
                            std::to_string(coeff - 1) + ", all u";
        rec.parameters["degeneracy"] = degen.degeneracy;
        return rec;
    }

    // Counterexample hunt: peeling suffixes are the densest cores.
    {
        std::vector<char> in(n, 1);
        long long edges_left = g.edge_count();
        // remove in peel order; suffix i..n-1 has edges_left edges
        for (std::size_t i = 0; i < degen.order.size(); ++i) {
            long long size = n - static_cast<long long>(i);
            if (size <= u_max && edges_left >= static_cast<long long>(coeff) * size) {
                std::vector<Vertex> rest(degen.order.begin() + i, degen.order.end());
                rec.status = PropertyStatus::violated;
                rec.witness = VertexSet(std::move(rest));
                rec.checked_scope = "peeling suffix";
                return rec;
            }
            Vertex v = degen.order[i];
            in[v] = 0;
            for (Vertex w : g.neighbors(v)) edges_left -= in[w];
        }
    }

    // Exhaustive branch-and-bound over subsets of size <= cap.
    const int cap = static_cast<int>(std::min<long long>(u_max, search_cap));
    const int d = g.degree();
    long long budget = 20'000'000;
    std::vector<Vertex> stack;
    std::vector<int> inside(n, 0);
    std::optional<VertexSet> found;
    auto dfs = [&](auto&& self, Vertex next, long long e) -> bool {
        if (budget-- <= 0) return false;
        const int s = static_cast<int>(stack.size());
        if (s >= 1 && e >= static_cast<long long>(coeff) * s) {
            found = VertexSet(stack);
            return true;
        }
        if (s == cap || next >= n) return true;
        // best case: every further vertex adds d edges
        bool can_violate = false;
        for (int s2 = s + 1; s2 <= cap; ++s2)
            if (e + static_cast<long long>(s2 - s) * d >=
                static_cast<long long>(coeff) * s2) {
                can_violate = true;
                break;
            }
        if (!can_violate) return true;
        for (Vertex v = next; v < n; ++v) {
            long long gain = 0;
            for (Vertex w : g.neighbors(v)) gain += inside[w];
            stack.push_back(v);
            inside[v] = 1;
            bool ok = self(self, v + 1, e + gain);
            inside[v] = 0;
            stack.pop_back();
            if (!ok || found) return ok;
        }
        return true;
    };
    bool complete = dfs(dfs, 0, 0);
    if (found) {
        rec.status = PropertyStatus::violated;
        rec.witness = *found;
        rec.checked_scope = "exhaustive search, u <= " + std::to_string(cap);
        return rec;
    }
    if (complete && u_max <= cap) {
        rec.status = PropertyStatus::holds;
        rec.checked_scope = "exhaustive search, u <= " + std::to_string(cap);
        return rec;
    }
    rec.status = PropertyStatus::inconclusive;
    rec.checked_scope = complete
        ? "exhaustive only up to u = " + std::to_string(cap) +
              ", u_max = " + std::to_string(u_max) + " out of reach"
        : "search budget exhausted";
    return rec;
}

// Property 2: e(U) <= C(u,2)d/n + lambda*u on the tested family, with the
// graph's own lambda standing in for the O(u sqrt(d)) constant. Reports
// lambda/sqrt(d) as the effective constant.
inline PropertyRecord check_property2(const RegularGraph& g, const GammaConfig& cfg,
                                      const SpectralSummary& spectral) {
    PropertyRecord rec;
    rec.id = 2;
    const int n = g.vertex_count();
    const int d = g.degree();
    const double lambda = spectral.lambda + spectral.residual;
    rec.parameters["lambda"] = spectral.lambda;
    if (d > 0) {
        const double eff = spectral.lambda / std::sqrt(static_cast<double>(d));
        rec.parameters["lambda_over_sqrt_d"] = eff;
        rec.parameters["flagged"] = eff > cfg.property2_flag ? 1.0 : 0.0;
    }
    const double dn = static_cast<double>(d) / n;
    auto upper_violation = [&](const VertexSet& u) {
        const double usz = static_cast<double>(u.size());
        return static_cast<double>(edges_within(g, u)) -
               (usz * (usz - 1) / 2.0 * dn + lambda * usz);
    };
    if (n <= cfg.exhaustive_n_limit) {
        const auto edges = g.edges();
        std::vector<std::uint32_t> edge_mask(edges.size());
        for (std::size_t i = 0; i < edges.size(); ++i)
            edge_mask[i] = (1u << edges[i].first) | (1u << edges[i].second);
        rec.status = PropertyStatus::holds;
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
            int e = 0;
            for (std::uint32_t em : edge_mask) e += (mask & em) == em;
            const double usz = std::popcount(static_cast<std::uint32_t>(mask));
            if (e > usz * (usz - 1) / 2.0 * dn + lambda * usz) {
                rec.status = PropertyStatus::violated;
                rec.witness = detail::set_from_mask(static_cast<std::uint32_t>(mask), n);
                break;
            }
        }
        rec.checked_scope = "exhaustive subsets (n <= " +
                            std::to_string(cfg.exhaustive_n_limit) + ")";
        return rec;
    }
    Rng rng(splitmix64(cfg.seed ^ 0x70726f7032ULL));
    rec.status = PropertyStatus::holds;
    for (int size : detail::geometric_sizes(2, n)) {
        for (int rep = 0; rep < cfg.subset_samples; ++rep) {
            VertexSet u = detail::random_subset(n, size, rng);
            if (upper_violation(u) > 0) {
                rec.status = PropertyStatus::violated;
                rec.witness = u;
                break;
            }
        }
        if (rec.status == PropertyStatus::violated) break;
    }
    rec.checked_scope = "sampled subsets, " + std::to_string(cfg.subset_samples) +
                        " per size, geometric sizes 2.." + std::to_string(n);
    return rec;
}

// Property 3: every subset of u >= ceil(n ln n / d) vertices spans fewer
// than coeff*u^2*d/n edges. Vacuous when the cutoff exceeds n.
inline PropertyRecord check_property3(const RegularGraph& g, const GammaConfig& cfg) {
    PropertyRecord rec;
    rec.id = 3;
    rec.parameters = {{"coeff", double(cfg.property3_coeff)}};
    const int n = g.vertex_count();
    const int d = g.degree();
    if (d == 0 || n <= 1) {
        rec.status = PropertyStatus::holds;
        rec.checked_scope = "degenerate graph, vacuous";
        return rec;
    }
    const long long cutoff =
        static_cast<long long>(std::ceil(n * std::log(static_cast<double>(n)) / d));
    rec.parameters["cutoff"] = static_cast<double>(cutoff);
    if (cutoff > n) {
        rec.status = PropertyStatus::holds;
        rec.checked_scope = "vacuous: cutoff " + std::to_string(cutoff) + " > n";
        return rec;
    }
    const double coeff = cfg.property3_coeff;
    auto threshold = [&](double u) { return coeff * u * u * d / n; };
    rec.status = PropertyStatus::holds;
    Rng rng(splitmix64(cfg.seed ^ 0x70726f7033ULL));
    for (int size : detail::geometric_sizes(static_cast<int>(cutoff), n)) {
        if (size == n) { // single subset, exhaustive
            if (static_cast<double>(g.edge_count()) >= threshold(n)) {
                rec.status = PropertyStatus::violated;
                rec.witness = VertexSet::full(n);
            }
            continue;
        }
        for (int rep = 0; rep < cfg.subset_samples; ++rep) {
            VertexSet u = detail::random_subset(n, size, rng);
            if (static_cast<double>(edges_within(g, u)) >= threshold(size)) {
                rec.status = PropertyStatus::violated;
                rec.witness = u;
                break;
            }
        }
        if (rec.status == PropertyStatus::violated) break;
    }
    rec.checked_scope = "sampled subsets, sizes " + std::to_string(cutoff) +
                        ".." + std::to_string(n) + ", exhaustive at u = n";
    return rec;
}

// Property 4: every vertex lies on at most `triangle_limit` triangles.
inline PropertyRecord check_property4(const RegularGraph& g, int triangle_limit = 4) {
    PropertyRecord rec;
    rec.id = 4;
    rec.parameters = {{"limit", double(triangle_limit)}};
    rec.status = PropertyStatus::holds;
    long long worst = -1;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        long long tr = triangles_at(g, v);
        if (tr > worst) {
            worst = tr;
            if (tr > triangle_limit) {
                rec.status = PropertyStatus::violated;
                rec.witness = VertexSet{v};
            }
        }
    }
    rec.parameters["max_triangles"] = static_cast<double>(std::max(worst, 0LL));
    rec.checked_scope = "exhaustive over vertices";
    return rec;
}

// Property 5: at most `paths3_limit` paths of length three between any two
// distinct vertices.
inline PropertyRecord check_property5(const RegularGraph& g, int paths3_limit = 4) {
    PropertyRecord rec;
    rec.id = 5;
    rec.parameters = {{"limit", double(paths3_limit)}};
    rec.status = PropertyStatus::holds;
    long long worst = 0;
    const int n = g.vertex_count();
    for (Vertex u = 0; u < n && rec.status == PropertyStatus::holds; ++u)
        for (Vertex w = u + 1; w < n; ++w) {
            long long p = paths3_count(g, u, w);
            worst = std::max(worst, p);
            if (p > paths3_limit) {
                rec.status = PropertyStatus::violated;
                rec.witness_pair = {u, w};
                break;
            }
        }
    rec.parameters["max_paths3"] = static_cast<double>(worst);
    rec.checked_scope = "exhaustive over vertex pairs";
    return rec;
}

struct GammaReport {
    int n = 0, d = 0;
    std::vector<PropertyRecord> properties; // ids 1..5
    PropertyStatus aggregate = PropertyStatus::inconclusive;
    double lambda = 0.0;

    bool all_hold() const { return aggregate == PropertyStatus::holds; }
};

// Runs all five property checks with the configured scopes and constants.
inline GammaReport gamma_report(const RegularGraph& g, const GammaConfig& cfg = {}) {
    GammaReport rep;
    rep.n = g.vertex_count();
    rep.d = g.degree();
    SpectralSummary spectral = spectral_lambda(g, cfg.spectral_tolerance);
    rep.lambda = spectral.lambda;
    long long u_max = cfg.property1_u_max;
    if (u_max < 0)
        u_max = static_cast<long long>(std::ceil(
            std::sqrt(static_cast<double>(g.vertex_count()) * g.degree() *
                      g.degree() * g.degree())));
    rep.properties.push_back(
        check_property1(g, u_max, cfg.property1_coeff, cfg.property1_search_cap));
    rep.properties.push_back(check_property2(g, cfg, spectral));
    rep.properties.push_back(check_property3(g, cfg));
    rep.properties.push_back(check_property4(g, cfg.triangle_limit));
    rep.properties.push_back(check_property5(g, cfg.paths3_limit));
    rep.aggregate = PropertyStatus::holds;
    for (const auto& p : rep.properties) {
        if (p.status == PropertyStatus::violated) {
            rep.aggregate = PropertyStatus::violated;
            break;
        }
        if (p.status == PropertyStatus::inconclusive)
            rep.aggregate = PropertyStatus::inconclusive;
    }
    return rep;
}

inline nlohmann::json to_json(const PropertyRecord& rec) {
    nlohmann::json j;
    j["id"] = rec.id;
    j["status"] = to_string(rec.status);
    j["checked_scope"] = rec.checked_scope;
    j["parameters"] = rec.parameters;
    if (rec.witness) j["witness"] = rec.witness->ids();
    else if (rec.witness_pair)
        j["witness"] = {rec.witness_pair->first, rec.witness_pair->second};
    else j["witness"] = nullptr;
    return j;
}

inline PropertyStatus status_from_string(const std::string& s) {
    if (s == "holds") return PropertyStatus::holds;
    if (s == "violated") return PropertyStatus::violated;
    if (s == "inconclusive") return PropertyStatus::inconclusive;
    throw input_error("unknown property status: " + s);
}

inline PropertyRecord property_record_from_json(const nlohmann::json& j) {
    PropertyRecord rec;
    rec.id = j.at("id").get<int>();
    rec.status = status_from_string(j.at("status").get<std::string>());
    rec.checked_scope = j.at("checked_scope").get<std::string>();
    rec.parameters = j.at("parameters").get<std::map<std::string, double>>();
    if (!j.at("witness").is_null()) {
        auto ids = j.at("witness").get<std::vector<int>>();
        if (rec.id == 5 && ids.size() == 2) rec.witness_pair = {ids[0], ids[1]};
        else rec.witness = VertexSet(ids);
    }
    return rec;
}

inline nlohmann::json to_json(const GammaReport& rep) {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : rep.properties) props.push_back(to_json(p));
    return {{"schema", 1},          {"n", rep.n},
            {"d", rep.d},           {"lambda", rep.lambda},
            {"properties", props},  {"aggregate", to_string(rep.aggregate)}};
}

inline GammaReport gamma_report_from_json(const nlohmann::json& j) {
    GammaReport rep;
    rep.n = j.at("n").get<int>();
    rep.d = j.at("d").get<int>();
    rep.lambda = j.at("lambda").get<double>();
    for (const auto& p : j.at("properties"))
        rep.properties.push_back(property_record_from_json(p));
    rep.aggregate = status_from_string(j.at("aggregate").get<std::string>());
    return rep;
}

} // namespace rrg
