#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rrg/coloring.hpp"
#include "rrg/error.hpp"
#include "rrg/graph.hpp"
#include "rrg/rng.hpp"

// Constructive pipeline that turns a proper t-coloring of g minus a small
// buffer set into a proper (t+1)-coloring of all of g: grow the buffer to
// bounded in-degree, build the copy graph over buffer neighborhoods, order
// its blocks cut-last, pick per-block color lists at random, recolor the
// selected classes with the fresh color, then list-color the buffer.

namespace rrg {

struct ExtensionParams {
    int neighbor_threshold = 50; // grow U while some outside vertex has >= this many U-neighbors
    int list_size = 14;          // |J_i|
    int prune_floor = 10;        // require |I_i| >= this after pruning
    double availability_floor = 0.5; // fail when available < floor * t
    int retries = 20;            // random attempts in choose_lists

    void validate() const {
        if (neighbor_threshold < 1 || list_size < 1 || prune_floor < 1 || retries < 1)
            throw input_error("ExtensionParams: parameters must be positive");
        if (availability_floor <= 0 || availability_floor > 1)
            throw input_error("ExtensionParams: availability_floor in (0, 1]");
        if (list_size < prune_floor)
            throw input_error("ExtensionParams: list_size >= prune_floor required");
    }
};

struct ExtensionInstance {
    RegularGraph g;
    VertexSet u0;
    Coloring base; // proper t-coloring of g[V \ u0]; unassigned exactly on u0
    int palette_t = 0;
    ExtensionParams params;

    void validate() const {
        params.validate();
        detail::check_subset(u0, g.vertex_count(), "ExtensionInstance");
        if (palette_t < 1) throw input_error("ExtensionInstance: t >= 1 required");
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            if (u0.contains(v)) {
                if (base.assigned(v))
                    throw input_error("ExtensionInstance: buffer vertices must be uncolored");
            } else {
                if (!base.assigned(v))
                    throw input_error("ExtensionInstance: base coloring must cover V \\ U0");
                if (base.color_of(v) > palette_t)
                    throw input_error("ExtensionInstance: base coloring exceeds palette t");
            }
        }
        if (!base.proper_on(g))
            throw input_error("ExtensionInstance: base coloring is not proper");
    }
};

// Grows U from u0 until no outside vertex has >= threshold neighbors in U.
// Candidates join lowest id first.
inline VertexSet grow_buffer_set(const RegularGraph& g, const VertexSet& u0,
                                 int threshold) {
    if (threshold < 1) throw input_error("grow_buffer_set: threshold >= 1");
    detail::check_subset(u0, g.vertex_count(), "grow_buffer_set");
    const int n = g.vertex_count();
    std::vector<char> in(n, 0);
    std::vector<int> count(n, 0); // neighbors in U
    for (Vertex v : u0) in[v] = 1;
    for (Vertex v : u0)
        for (Vertex w : g.neighbors(v)) ++count[w];
    std::set<Vertex> pending;
    for (Vertex v = 0; v < n; ++v)
        if (!in[v] && count[v] >= threshold) pending.insert(v);
    while (!pending.empty()) {
        Vertex v = *pending.begin();
        pending.erase(pending.begin());
        in[v] = 1;
        for (Vertex w : g.neighbors(v)) {
            ++count[w];
            if (!in[w] && count[w] >= threshold) pending.insert(w);
        }
    }
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n; ++v)
        if (in[v]) out.push_back(v);
    return VertexSet(std::move(out));
}

// Auxiliary graph over the buffer neighborhoods: one block W_i per buffer
// vertex u_i, one node per colored neighbor x of u_i (copies are made only
// for neighbors outside U, which are the vertices carrying base colors),
// and edges between all copies of x and y for every edge {x,y} spanned by
// the out-of-buffer neighborhood of U.
struct CopyGraph {
    struct Node {
        Vertex original; // x
        int block;       // i
        int color;       // f'(x,i) = f(x)
    };

    std::vector<Vertex> buffer;           // u_1..u_k, ascending
    std::vector<std::vector<int>> blocks; // node ids per block
    std::vector<Node> nodes;
    std::vector<std::pair<int, int>> edges; // node-id pairs, first < second
    int palette_t = 0;

    int block_count() const { return static_cast<int>(blocks.size()); }
};

inline CopyGraph build_copy_graph(const RegularGraph& g, const VertexSet& u_buffer,
                                  const Coloring& f) {
    detail::check_subset(u_buffer, g.vertex_count(), "build_copy_graph");
    CopyGraph h;
    h.buffer.assign(u_buffer.begin(), u_buffer.end());
    h.palette_t = f.palette();
    h.blocks.resize(h.buffer.size());
    std::vector<std::vector<int>> copies_of(g.vertex_count());
    for (int i = 0; i < static_cast<int>(h.buffer.size()); ++i) {
        for (Vertex x : g.neighbors(h.buffer[i])) {
            if (u_buffer.contains(x)) continue;
            if (!f.assigned(x))
                throw input_error("build_copy_graph: neighbor " + std::to_string(x) +
                                  " carries no color");
            const int id = static_cast<int>(h.nodes.size());
            h.nodes.push_back({x, i, f.color_of(x)});
            h.blocks[i].push_back(id);
            copies_of[x].push_back(id);
        }
    }
    for (auto [x, y] : g.edges()) {
        if (copies_of[x].empty() || copies_of[y].empty()) continue;
        for (int a : copies_of[x])
            for (int b : copies_of[y])
                h.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(h.edges.begin(), h.edges.end());
    return h;
}

// Cut-last greedy ordering: repeatedly extract the block with the fewest
// edges to the remaining blocks and place it last. Guarantees that block
// sigma(i) sends at most 2 e(union of first i blocks) / i edges backwards.
inline std::vector<int> order_blocks(const CopyGraph& h) {
    const int k = h.block_count();
    std::vector<std::vector<long long>> between(k, std::vector<long long>(k, 0));
    for (auto [a, b] : h.edges) {
        const int ba = h.nodes[a].block, bb = h.nodes[b].block;
        if (ba != bb) {
            ++between[ba][bb];
            ++between[bb][ba];
        }
    }
    std::vector<long long> cut(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) cut[i] += between[i][j];
    std::vector<char> placed(k, 0);
    std::vector<int> order(k, -1);
    for (int pos = k - 1; pos >= 0; --pos) {
        int pick = -1;
        for (int i = 0; i < k; ++i) {
            if (placed[i]) continue;
            if (pick < 0 || cut[i] < cut[pick]) pick = i;
        }
        placed[pick] = 1;
        order[pos] = pick;
        for (int i = 0; i < k; ++i)
            if (!placed[i]) cut[i] -= between[i][pick];
    }
    return order;
}

struct ChooseListsDiagnostics {
    int attempts = 0;

    struct Failure {
        int attempt;
        int block;        // block id where the attempt died
        int availability; // available colors at that point (-1 if pruning failed)
        std::string reason;
    };
    std::vector<Failure> failures;
};

// Sequentially picks J_i (size list_size, uniform over the available colors)
// for each block in the given order, then prunes one color per internal
// edge (the lower color id of the edge's endpoint classes). Succeeds when
// every pruned list keeps at least prune_floor colors. A color is available
// for a block when its class has no copy-graph edge into a class chosen
// (J_{i'}) for an earlier block.
inline std::optional<std::vector<std::vector<int>>> choose_lists(
    const CopyGraph& h, const std::vector<int>& order, int t,
    const ExtensionParams& params, std::uint64_t rng_seed,
    ChooseListsDiagnostics* diag = nullptr) {
    if (t < params.list_size)
        throw input_error("choose_lists: t >= list_size required");
    const int k = h.block_count();
    std::vector<int> pos(k, -1);
    for (int idx = 0; idx < k; ++idx) pos[order[idx]] = idx;

    // adjacency of the copy graph, once
    std::vector<std::vector<int>> adj(h.nodes.size());
    for (auto [a, b] : h.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }

    ChooseListsDiagnostics local;
    ChooseListsDiagnostics& dg = diag ? *diag : local;
    const int need_avail =
        std::max<int>(params.list_size,
                      static_cast<int>(std::ceil(params.availability_floor * t)));

    for (int attempt = 0; attempt < params.retries; ++attempt) {
        ++dg.attempts;
        Rng rng(trial_seed(rng_seed, static_cast<std::uint64_t>(attempt)));
        std::vector<std::set<int>> chosen_j(k); // J per block id
        bool failed = false;
        for (int idx = 0; idx < k && !failed; ++idx) {
            const int b = order[idx];
            std::vector<char> unavailable(t + 1, 0);
            for (int node : h.blocks[b]) {
                const int c = h.nodes[node].color;
                if (c > t) continue; // base color outside palette cannot be picked anyway
                if (unavailable[c]) continue;
                for (int other : adj[node]) {
                    const int ob = h.nodes[other].block;
                    if (ob == b || pos[ob] >= idx) continue;
                    if (chosen_j[ob].count(h.nodes[other].color)) {
                        unavailable[c] = 1;
                        break;
                    }
                }
            }
            std::vector<int> available;
            for (int c = 1; c <= t; ++c)
                if (!unavailable[c]) available.push_back(c);
            if (static_cast<int>(available.size()) < need_avail) {
                dg.failures.push_back({attempt, b, static_cast<int>(available.size()),
                                       "availability below floor"});
                failed = true;
                break;
            }
            for (int i : rng.sample_without_replacement(
                     static_cast<int>(available.size()), params.list_size))
                chosen_j[b].insert(available[i]);
        }
        if (failed) continue;

        // prune: one color per internal edge, lower endpoint class first
        std::vector<std::vector<int>> lists(k);
        for (int b = 0; b < k && !failed; ++b) {
            std::set<int> pruned = chosen_j[b];
            for (auto [na, nb] : h.edges) {
                if (h.nodes[na].block != b || h.nodes[nb].block != b) continue;
                const int c1 = h.nodes[na].color, c2 = h.nodes[nb].color;
                if (pruned.count(c1) && pruned.count(c2))
                    pruned.erase(std::min(c1, c2));
            }
            if (static_cast<int>(pruned.size()) < params.prune_floor) {
                dg.failures.push_back({attempt, b, -1, "pruned below prune_floor"});
                failed = true;
                break;
            }
            lists[b].assign(pruned.begin(), pruned.end());
        }
        if (failed) continue;

        // selected classes must be independent in the copy graph
        auto selected = [&](int node) {
            const auto& l = lists[h.nodes[node].block];
            return std::binary_search(l.begin(), l.end(), h.nodes[node].color);
        };
        for (auto [na, nb] : h.edges)
            if (selected(na) && selected(nb))
                throw std::logic_error("choose_lists: selected classes not independent");
        return lists;
    }
    return std::nullopt;
}

struct ExtensionOutcome {
    std::optional<Coloring> coloring;
    std::string failed_stage; // empty on success
    VertexSet buffer;
    int buffer_degeneracy = -1;
    std::vector<Vertex> recolored; // vertices moved to color t+1
    ChooseListsDiagnostics diagnostics;

    bool success() const { return coloring.has_value(); }
};

inline constexpr int kBufferDegeneracyCap = 9;

// Full pipeline. Stage failures come back as absence with the stage name;
// malformed instances throw input_error.
inline ExtensionOutcome extend_coloring(const ExtensionInstance& inst,
                                        std::uint64_t rng_seed) {
    inst.validate();
    const RegularGraph& g = inst.g;
    const int t = inst.palette_t;
    ExtensionOutcome out;

    out.buffer = grow_buffer_set(g, inst.u0, inst.params.neighbor_threshold);
    if (out.buffer.empty()) { // nothing to do, the base coloring covers g
        out.coloring = inst.base;
        return out;
    }

    auto degen = degeneracy_order_induced(g, out.buffer);
    out.buffer_degeneracy = degen.degeneracy;
    if (degen.degeneracy > kBufferDegeneracyCap) {
        out.failed_stage = "buffer-degeneracy";
        return out;
    }

    CopyGraph h = build_copy_graph(g, out.buffer, inst.base);
    std::vector<int> order = order_blocks(h);
    auto lists = choose_lists(h, order, t, inst.params, rng_seed, &out.diagnostics);
    if (!lists) {
        out.failed_stage = "choose-lists";
        return out;
    }

    // recolor the union of selected classes with the fresh color t+1
    Coloring work = inst.base;
    work.set_palette(t + 1);
    std::vector<char> moved(g.vertex_count(), 0);
    for (int b = 0; b < h.block_count(); ++b)
        for (int node : h.blocks[b]) {
            const Vertex x = h.nodes[node].original;
            if (moved[x]) continue;
            if (std::binary_search((*lists)[b].begin(), (*lists)[b].end(),
                                   h.nodes[node].color)) {
                moved[x] = 1;
                work.assign(x, t + 1);
                out.recolored.push_back(x);
            }
        }

    // list-color the buffer from the pruned lists
    ColorLists per_vertex(g.vertex_count());
    for (int b = 0; b < h.block_count(); ++b) per_vertex[h.buffer[b]] = (*lists)[b];
    auto final_col = list_coloring_greedy_induced(g, out.buffer, per_vertex, work);
    if (!final_col) {
        out.failed_stage = "list-coloring";
        return out;
    }
    final_col->set_palette(t + 1);
    if (!final_col->proper_on(g))
        throw std::logic_error("extend_coloring: pipeline produced improper coloring");
    out.coloring = std::move(*final_col);
    return out;
}

} // namespace rrg
