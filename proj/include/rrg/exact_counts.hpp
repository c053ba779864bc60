#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "rrg/bigint.hpp"
#include "rrg/error.hpp"
#include "rrg/pairing.hpp"

// Exact evaluation of the closed-form counts, expectations, ratios and
// probability bounds for the number of pairs X_{T_I} spanned by a fixed
// index set I (|I| = t) in a random pairing, and the switching-based bounds
// on edge counts in the uniform regular graph model. All count arithmetic
// is exact; only the exp/ln bound evaluators use floating point.

namespace rrg {

// E[X_{T_I}] = C(dt,2) / (dn-1).
inline BigRat expected_internal_pairs(int n, int d, int t) {
    if (t < 0 || t > n) throw input_error("expected_internal_pairs: 0 <= t <= n");
    long long m = static_cast<long long>(d) * n;
    if (m < 2) throw input_error("expected_internal_pairs: dn >= 2 required");
    return BigRat(binomial(static_cast<long long>(d) * t, 2), m - 1);
}

// E[X_{T_I,T_J}] = d^2 s t / (dn-1) for disjoint I, J.
inline BigRat expected_cross_pairs(int n, int d, int s, int t) {
    if (s < 0 || t < 0 || s + t > n)
        throw input_error("expected_cross_pairs: need s + t <= n (disjoint sets)");
    long long m = static_cast<long long>(d) * n;
    if (m < 2) throw input_error("expected_cross_pairs: dn >= 2 required");
    return BigRat(BigInt(d) * d * s * t, m - 1);
}

// Valid range of k for X_{T_I}: max{0, dt - dn/2} <= k <= dt/2.
inline long long k_min(int n, int d, int t) {
    return std::max(0LL, static_cast<long long>(d) * t - static_cast<long long>(d) * n / 2);
}

inline long long k_max(int /*n*/, int d, int t) {
    return static_cast<long long>(d) * t / 2;
}

// E[X_{T_I,T_J} | X_{T_I} = i] = ds(dt - 2i) / (dn - dt).
inline BigRat conditional_cross_expectation(int n, int d, int s, int t, long long i) {
    if (s < 0 || t < 0 || s + t > n)
        throw input_error("conditional_cross_expectation: need s + t <= n");
    if (i < k_min(n, d, t) || i > k_max(n, d, t))
        throw input_error("conditional_cross_expectation: i out of range");
    long long dn = static_cast<long long>(d) * n;
    long long dt = static_cast<long long>(d) * t;
    if (dn == dt) return BigRat(0); // T_I is everything, no outside elements
    return BigRat(BigInt(d) * s * (dt - 2 * i), dn - dt);
}

// |C_{T_I,k}|: choose 2k elements of T_I and pair them up, pair the rest of
// T_I outside, then pair the remaining outside elements.
inline BigInt class_size(int n, int d, int t, long long k) {
    if (t < 0 || t > n || static_cast<long long>(d) * n % 2 != 0)
        throw input_error("class_size: invalid parameters");
    if (k < k_min(n, d, t) || k > k_max(n, d, t)) return 0; // empty class
    long long dn = static_cast<long long>(d) * n;
    long long dt = static_cast<long long>(d) * t;
    BigInt v = binomial(dt, 2 * k);
    v *= double_factorial_matchings(2 * k);
    v *= binomial(dn - dt, dt - 2 * k);
    v *= factorial(dt - 2 * k);
    v *= double_factorial_matchings(dn - 2 * dt + 2 * k);
    return v;
}

// Table of class sizes over the valid k range, memoized per (n, d, t).
struct ClassSizeTable {
    int n = 0, d = 0, t = 0;
    long long k_lo = 0, k_hi = -1;
    std::vector<BigInt> sizes; // sizes[k - k_lo]

    const BigInt& at(long long k) const { return sizes.at(static_cast<std::size_t>(k - k_lo)); }
};

inline const ClassSizeTable& class_size_table(int n, int d, int t) {
    static std::map<std::tuple<int, int, int>, ClassSizeTable> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(n, d, t);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    ClassSizeTable tab;
    tab.n = n;
    tab.d = d;
    tab.t = t;
    tab.k_lo = k_min(n, d, t);
    tab.k_hi = k_max(n, d, t);
    for (long long k = tab.k_lo; k <= tab.k_hi; ++k)
        tab.sizes.push_back(class_size(n, d, t, k));
    return cache.emplace(key, std::move(tab)).first->second;
}

// f(k) = |C_{T_I,k+1}| / |C_{T_I,k}| from the exact class sizes. This is the
// ground truth; see ratio_f_as_printed for the published closed form, which
// disagrees with the exact quotient on small cases.
inline BigRat ratio_f(int n, int d, int t, long long k) {
    BigInt denom = class_size(n, d, t, k);
    if (denom == 0) throw undefined_ratio_error("ratio_f: class size at k is zero");
    return BigRat(class_size(n, d, t, k + 1), denom);
}

// The closed form as published: (1/4) (1/(k+1)) (dt-2k)(dt-2k+1) / (dn/2-dt+k+1).
inline BigRat ratio_f_as_printed(int n, int d, int t, long long k) {
    long long dn = static_cast<long long>(d) * n;
    long long dt = static_cast<long long>(d) * t;
    return BigRat(BigInt(dt - 2 * k) * (dt - 2 * k + 1),
                  BigInt(4) * (k + 1) * (dn / 2 - dt + k + 1));
}

// k maximizing |C_{T_I,k}| (ties: smaller k). Lands in {floor E, ceil E}.
inline long long mode_location(int n, int d, int t) {
    const ClassSizeTable& tab = class_size_table(n, d, t);
    if (tab.k_hi < tab.k_lo) throw input_error("mode_location: empty k range");
    long long best = tab.k_lo;
    for (long long k = tab.k_lo + 1; k <= tab.k_hi; ++k)
        if (tab.at(k) > tab.at(best)) best = k;
    return best;
}

// Exact P[|X_{T_I} - E| >= delta] from the class sizes.
inline BigRat exact_internal_tail(int n, int d, int t, const BigRat& delta) {
    const ClassSizeTable& tab = class_size_table(n, d, t);
    BigRat e = expected_internal_pairs(n, d, t);
    BigInt num = 0;
    for (long long k = tab.k_lo; k <= tab.k_hi; ++k) {
        BigRat dev = BigRat(k) - e;
        if (dev < 0) dev = -dev;
        if (dev >= delta) num += tab.at(k);
    }
    return BigRat(num, count_pairings(n, d));
}

enum class TailVariant { a, b };

struct BoundValue {
    double value = 0.0;
    std::string formula_id;
    std::map<std::string, double> params;
};

// Tail bounds on |X_{T_I} - E| in the pairing model, E = C(dt,2)/(dn-1):
//   (a) (dt/2) exp(-D^2 / (4E + 2D + 4))            for any D > 0
//   (b) (dt/2) exp(-(D/2) ln((2E + D + 2)/(2E + 2))) for D > E
inline BoundValue tail_bound_internal(int n, int d, int t, double delta,
                                      TailVariant variant) {
    if (delta <= 0) throw input_error("tail_bound_internal: delta > 0 required");
    double e = to_double(expected_internal_pairs(n, d, t));
    double pre = static_cast<double>(d) * t / 2.0;
    BoundValue out;
    out.params = {{"n", double(n)}, {"d", double(d)}, {"t", double(t)}, {"delta", delta}};
    if (variant == TailVariant::a) {
        out.formula_id = "internal-tail-a";
        out.value = pre * std::exp(-delta * delta / (4 * e + 2 * delta + 4));
    } else {
        if (delta <= e)
            throw input_error("tail_bound_internal: variant b requires delta > E");
        out.formula_id = "internal-tail-b";
        out.value = pre * std::exp(-(delta / 2) * std::log((2 * e + delta + 2) / (2 * e + 2)));
    }
    return out;
}

// Switching bound on |C_i| / |C_{i-1}| for e(U), |U| = u:
// (1/i) C(u,2) (d/n) (1 + (2u+4d)/n).
inline BigRat switch_ratio_bound(int n, int d, int u, long long i) {
    if (i < 1) throw input_error("switch_ratio_bound: i >= 1 required");
    return BigRat(binomial(u, 2) * d * (n + 2 * u + 4 * d),
                  BigInt(i) * n * n);
}

// The derivation divides by dn/2 - ud - 2d^2 and needs it to exceed ud + 2d^2.
inline bool switch_ratio_precondition(int n, int d, int u) {
    long long lhs = static_cast<long long>(d) * n / 2 -
                    static_cast<long long>(u) * d - 2LL * d * d;
    long long rhs = static_cast<long long>(u) * d + 2LL * d * d;
    return lhs > rhs && rhs > 0;
}

// Two-set switching bound |E_i| / |E_{i-1}| < 2uwd/(in).
inline BigRat cross_ratio_bound(int n, int d, int u, int w, long long i) {
    if (i < 1) throw input_error("cross_ratio_bound: i >= 1 required");
    return BigRat(BigInt(2) * u * w * d, BigInt(i) * n);
}

// Stated for w <= u <= n/10.
inline bool cross_ratio_validity(int n, int u, int w) {
    return w <= u && 10LL * u <= n;
}

// Upper-tail bounds on e(U) in the uniform regular graph, E = C(u,2) d/n:
//   (a) (du/2) exp(-D^2 / (4E + 2D))
//   (b) (du/2) exp(-(D/2) ln(1 + D/(2E)))
// The e^{o(D)} factor of the source bound is dropped.
inline BoundValue deviation_bound_graph(int n, int d, int u, double delta,
                                        TailVariant variant) {
    double e = to_double(BigRat(binomial(u, 2) * d, n));
    if (delta < e)
        throw input_error("deviation_bound_graph: delta >= C(u,2)d/n required");
    double pre = static_cast<double>(d) * u / 2.0;
    BoundValue out;
    out.params = {{"n", double(n)}, {"d", double(d)}, {"u", double(u)}, {"delta", delta}};
    if (variant == TailVariant::a) {
        out.formula_id = "graph-tail-a";
        out.value = pre * std::exp(-delta * delta / (4 * e + 2 * delta));
    } else {
        out.formula_id = "graph-tail-b";
        out.value = (e == 0.0 && delta > 0.0)
                        ? 0.0
                        : pre * std::exp(-(delta / 2) * std::log1p(delta / (2 * e)));
    }
    return out;
}

// Azuma bound for pairing-model Lipschitz variables: exp(-lambda^2/(dnc^2)).
inline double azuma_tail(int n, int d, double c, double lambda) {
    if (lambda <= 0 || c <= 0) throw input_error("azuma_tail: lambda > 0 and c > 0");
    return std::exp(-lambda * lambda / (static_cast<double>(d) * n * c * c));
}

// Conditioned-on-Simple variant: azuma_tail / P[Simple].
inline double azuma_tail_graph(int n, int d, double c, double lambda) {
    return azuma_tail(n, d, c, lambda) / prob_simple(d, n);
}

// Two-point band for the chromatic number of the random d-regular graph:
// center d/(2 ln d) + 8d lnln d / ln^2 d, half-width 8d lnln d / ln^2 d.
inline std::pair<double, double> chi_band(int d) {
    if (d < 16)
        throw scope_error("chi_band: undefined for d < 16 (needs lnln d > 0)");
    double ld = std::log(static_cast<double>(d));
    double low = d / (2 * ld);
    double width = 8.0 * d * std::log(ld) / (ld * ld);
    return {low, low + 2 * width};
}

// Explicit bound 2*lambda*sqrt(n) on the minimal deletion set that leaves a
// tau-colorable graph, with lambda = 2 sqrt(d ln(1/(eps P[Simple]))).
inline double buffer_bound(int n, int d, double epsilon) {
    if (epsilon <= 0 || epsilon >= 1)
        throw input_error("buffer_bound: 0 < epsilon < 1 required");
    double lambda = 2.0 * std::sqrt(d * std::log(1.0 / (epsilon * prob_simple(d, n))));
    return 2.0 * lambda * std::sqrt(static_cast<double>(n));
}

} // namespace rrg
