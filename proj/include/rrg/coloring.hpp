#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "rrg/error.hpp"
#include "rrg/graph.hpp"

namespace rrg {

// Per-vertex color lists; entry v is the list for vertex v. Color ids are
// positive and lists may differ in size.
using ColorLists = std::vector<std::vector<int>>;

// First-fit along the given vertex order. Uses at most max-degree+1 colors.
inline Coloring greedy_coloring(const RegularGraph& g,
                                const std::vector<Vertex>& order) {
    const int n = g.vertex_count();
    {
        std::vector<char> seen(n, 0);
        if (static_cast<int>(order.size()) != n)
            throw input_error("greedy_coloring: order must be a permutation");
        for (Vertex v : order) {
            if (v < 0 || v >= n || seen[v])
                throw input_error("greedy_coloring: order must be a permutation");
            seen[v] = 1;
        }
    }
    Coloring col(n, g.degree() + 1);
    std::vector<char> used(g.degree() + 2, 0);
    for (Vertex v : order) {
        for (Vertex w : g.neighbors(v))
            if (col.assigned(w)) used[col.color_of(w)] = 1;
        int c = 1;
        while (used[c]) ++c;
        col.assign(v, c);
        for (Vertex w : g.neighbors(v))
            if (col.assigned(w)) used[col.color_of(w)] = 0;
    }
    col.set_palette(col.max_color_used());
    return col;
}

enum class Decision { yes, no, unknown };

struct KColorResult {
    Decision decision = Decision::unknown;
    std::optional<Coloring> certificate;
    long long expansions = 0;
};

inline constexpr long long kDefaultColorBudget = 50'000'000;

namespace detail {

// Greedy clique grown from each start vertex, on the active subgraph.
inline std::vector<Vertex> greedy_clique(const RegularGraph& g,
                                         const std::vector<char>& active) {
    std::vector<Vertex> best;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (!active[s]) continue;
        std::vector<Vertex> clique{s};
        for (Vertex v : g.neighbors(s)) {
            if (!active[v]) continue;
            bool adj_all = true;
            for (Vertex c : clique)
                if (c != s && !g.has_edge(v, c)) {
                    adj_all = false;
                    break;
                }
            if (adj_all) clique.push_back(v);
        }
        if (clique.size() > best.size()) best = clique;
    }
    return best;
}

// DSATUR-ordered backtracking. Exhaustive unless the expansion budget runs
// out. Tie-breaking: highest saturation, then highest active degree, then
// lowest id. Completeness-preserving reductions: a greedy clique is
// pre-colored and each vertex may open at most one fresh color.
class DsaturSolver {
public:
    DsaturSolver(const RegularGraph& g, std::vector<char> active, int k,
                 long long budget)
        : g_(g), active_(std::move(active)), k_(k), budget_(budget) {
        if (k_ < 1) throw input_error("k_colorable: k >= 1 required");
        if (k_ > 60) throw scope_error("k_colorable: k <= 60 supported");
        const int n = g.vertex_count();
        color_.assign(n, 0);
        sat_mask_.assign(n, 0);
        neighbor_count_.assign(static_cast<std::size_t>(n) * k_, 0);
        adeg_.assign(n, 0);
        for (Vertex v = 0; v < n; ++v) {
            if (!active_[v]) continue;
            ++active_count_;
            for (Vertex w : g_.neighbors(v)) adeg_[v] += active_[w];
        }
    }

    KColorResult solve() {
        KColorResult res;
        auto clique = greedy_clique(g_, active_);
        if (static_cast<int>(clique.size()) > k_) {
            res.decision = Decision::no; // clique certificate
            return res;
        }
        int assigned = 0;
        for (Vertex v : clique) {
            place(v, ++max_used_);
            ++assigned;
        }
        const bool complete = dfs(assigned);
        res.expansions = expansions_;
        if (found_) {
            Coloring col(g_.vertex_count(), k_);
            for (Vertex v = 0; v < g_.vertex_count(); ++v)
                if (active_[v]) col.assign(v, solution_[v]);
            res.decision = Decision::yes;
            res.certificate = std::move(col);
        } else {
            res.decision = complete ? Decision::no : Decision::unknown;
        }
        return res;
    }

private:
    bool dfs(int assigned) {
        if (assigned == active_count_) {
            found_ = true;
            solution_ = color_;
            return true;
        }
        const Vertex v = pick();
        const int limit = std::min(k_, max_used_ + 1);
        for (int c = 1; c <= limit; ++c) {
            if (sat_mask_[v] >> (c - 1) & 1) continue;
            if (expansions_++ >= budget_) return false;
            const int prev_max = max_used_;
            place(v, c);
            max_used_ = std::max(max_used_, c);
            const bool complete = dfs(assigned + 1);
            unplace(v, c);
            max_used_ = prev_max;
            if (found_) return true;
            if (!complete) return false;
        }
        return true;
    }

    Vertex pick() const {
        Vertex best = -1;
        int best_sat = -1, best_deg = -1;
        for (Vertex v = 0; v < g_.vertex_count(); ++v) {
            if (!active_[v] || color_[v]) continue;
            const int sat = std::popcount(sat_mask_[v]);
            if (sat > best_sat || (sat == best_sat && adeg_[v] > best_deg)) {
                best = v;
                best_sat = sat;
                best_deg = adeg_[v];
            }
        }
        return best;
    }

    void place(Vertex v, int c) {
        color_[v] = c;
        for (Vertex w : g_.neighbors(v)) {
            if (!active_[w]) continue;
            if (++neighbor_count_[static_cast<std::size_t>(w) * k_ + c - 1] == 1)
                sat_mask_[w] |= 1ull << (c - 1);
        }
    }

    void unplace(Vertex v, int c) {
        color_[v] = 0;
        for (Vertex w : g_.neighbors(v)) {
            if (!active_[w]) continue;
            if (--neighbor_count_[static_cast<std::size_t>(w) * k_ + c - 1] == 0)
                sat_mask_[w] &= ~(1ull << (c - 1));
        }
    }

    const RegularGraph& g_;
    std::vector<char> active_;
    int k_;
    long long budget_;
    long long expansions_ = 0;
    int active_count_ = 0;
    int max_used_ = 0;
    bool found_ = false;
    std::vector<int> color_;
    std::vector<std::uint64_t> sat_mask_;
    std::vector<int> neighbor_count_;
    std::vector<int> adeg_;
    std::vector<int> solution_;
};

} // namespace detail

// Decides k-colorability of the subgraph induced by `active`. `yes` carries
// a proper coloring of the active vertices, `no` is exhaustive, `unknown`
// reports budget exhaustion.
inline KColorResult k_colorable_induced(const RegularGraph& g,
                                        const std::vector<char>& active, int k,
                                        long long budget = kDefaultColorBudget) {
    return detail::DsaturSolver(g, active, k, budget).solve();
}

inline KColorResult k_colorable(const RegularGraph& g, int k,
                                long long budget = kDefaultColorBudget) {
    return k_colorable_induced(g, std::vector<char>(g.vertex_count(), 1), k, budget);
}

struct ChromaticResult {
    std::optional<int> chi;
    std::optional<Coloring> certificate;
    int clique_lower_bound = 0;
    int greedy_upper_bound = 0;
};

// Least k admitting a proper k-coloring: clique lower bound, then iterated
// k_colorable decisions upward. `chi` is empty if a needed decision ran out
// of budget.
inline ChromaticResult chromatic_number(const RegularGraph& g,
                                        long long budget = kDefaultColorBudget) {
    ChromaticResult res;
    const int n = g.vertex_count();
    if (n == 0) {
        res.chi = 0;
        res.certificate = Coloring(0, 0);
        return res;
    }
    auto clique = detail::greedy_clique(g, std::vector<char>(n, 1));
    res.clique_lower_bound = std::max<int>(1, static_cast<int>(clique.size()));
    auto degen = degeneracy_order(g);
    std::vector<Vertex> reverse_peel(degen.order.rbegin(), degen.order.rend());
    Coloring greedy = greedy_coloring(g, reverse_peel);
    res.greedy_upper_bound = greedy.max_color_used();
    if (res.greedy_upper_bound == res.clique_lower_bound) {
        res.chi = res.greedy_upper_bound;
        res.certificate = std::move(greedy);
        return res;
    }
    for (int k = res.clique_lower_bound; k < res.greedy_upper_bound; ++k) {
        KColorResult dec = k_colorable(g, k, budget);
        if (dec.decision == Decision::yes) {
            res.chi = k;
            res.certificate = std::move(dec.certificate);
            return res;
        }
        if (dec.decision == Decision::unknown) return res; // chi stays empty
    }
    res.chi = res.greedy_upper_bound;
    res.certificate = std::move(greedy);
    return res;
}

// Colors vertices in reverse degeneracy order, each from its own list,
// avoiding already-colored neighbors. Succeeds whenever every list has at
// least degeneracy+1 colors; otherwise may return absence.
inline std::optional<Coloring> list_coloring_greedy(const RegularGraph& g,
                                                    const ColorLists& lists) {
    if (static_cast<int>(lists.size()) != g.vertex_count())
        throw input_error("list_coloring_greedy: one list per vertex required");
    auto degen = degeneracy_order(g);
    int palette = 0;
    for (const auto& list : lists)
        for (int c : list) {
            if (c <= 0) throw input_error("list_coloring_greedy: colors are positive");
            palette = std::max(palette, c);
        }
    Coloring col(g.vertex_count(), palette);
    for (auto it = degen.order.rbegin(); it != degen.order.rend(); ++it) {
        const Vertex v = *it;
        int chosen = 0;
        for (int c : lists[v]) {
            bool clash = false;
            for (Vertex w : g.neighbors(v))
                if (col.assigned(w) && col.color_of(w) == c) {
                    clash = true;
                    break;
                }
            if (!clash) {
                chosen = c;
                break;
            }
        }
        if (chosen == 0) return std::nullopt;
        col.assign(v, chosen);
    }
    return col;
}

// Induced-subgraph variant used by the coloring-extension pipeline: colors
// only the vertices of `sub`, treating colors of already-assigned outside
// vertices in `base` as fixed constraints.
inline std::optional<Coloring> list_coloring_greedy_induced(
    const RegularGraph& g, const VertexSet& sub, const ColorLists& lists,
    const Coloring& base) {
    auto degen = degeneracy_order_induced(g, sub);
    Coloring col = base;
    for (auto it = degen.order.rbegin(); it != degen.order.rend(); ++it) {
        const Vertex v = *it;
        int chosen = 0;
        for (int c : lists[v]) {
            if (c <= 0) throw input_error("list colors are positive");
            bool clash = false;
            for (Vertex w : g.neighbors(v))
                if (col.assigned(w) && col.color_of(w) == c) {
                    clash = true;
                    break;
                }
            if (!clash) {
                chosen = c;
                break;
            }
        }
        if (chosen == 0) return std::nullopt;
        col.assign(v, chosen);
    }
    return col;
}

} // namespace rrg
