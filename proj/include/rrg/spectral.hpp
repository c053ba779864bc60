#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "rrg/error.hpp"
#include "rrg/graph.hpp"

namespace rrg {

struct SpectralSummary {
    double lambda = 0.0;  // max(|lambda_2|, |lambda_n|)
    double lambda1 = 0.0; // top eigenvalue, reported as a self-check (= d)
    int iterations = 0;
    double residual = 0.0;
};

namespace detail {

// y = A x via adjacency lists.
inline void adj_mul(const RegularGraph& g, const std::vector<double>& x,
                    std::vector<double>& y) {
    const int n = g.vertex_count();
    for (Vertex v = 0; v < n; ++v) {
        double s = 0.0;
        for (Vertex w : g.neighbors(v)) s += x[w];
        y[v] = s;
    }
}

inline void deflate_ones(std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    for (double& v : x) v -= mean;
}

inline double norm(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

// Power iteration for the top eigenvalue of shift*I + sign*A restricted to
// the complement of the all-ones eigenvector. The shifted operator is PSD
// there, so the Rayleigh quotient converges monotonically in value.
struct PowerResult {
    double eigenvalue = 0.0; // of shift*I + sign*A
    int iterations = 0;
    double residual = 0.0;
};

inline PowerResult power_iterate_shifted(const RegularGraph& g, double shift,
                                         double sign, double tolerance,
                                         int max_iterations) {
    const int n = g.vertex_count();
    std::vector<double> x(n), y(n);
    // Deterministic start spread across coordinates.
    for (int i = 0; i < n; ++i) x[i] = 1.0 + 0.37 * std::sin(0.7 * (i + 1));
    deflate_ones(x);
    double nx = norm(x);
    for (double& v : x) v /= nx;
    double theta = 0.0;
    PowerResult out;
    for (int it = 1; it <= max_iterations; ++it) {
        adj_mul(g, x, y);
        for (int i = 0; i < n; ++i) y[i] = shift * x[i] + sign * y[i];
        deflate_ones(y);
        double ny = norm(y);
        if (ny == 0.0) { // x was in the kernel; eigenvalue 0 on this subspace
            out.eigenvalue = 0.0;
            out.iterations = it;
            out.residual = 0.0;
            return out;
        }
        double new_theta = 0.0;
        for (int i = 0; i < n; ++i) new_theta += x[i] * y[i];
        for (int i = 0; i < n; ++i) x[i] = y[i] / ny;
        // residual ||Bx - theta x|| with x the previous normalized iterate
        double converged = std::abs(new_theta - theta);
        theta = new_theta;
        if (it > 1 && converged < tolerance * std::max(1.0, std::abs(theta))) {
            adj_mul(g, x, y);
            for (int i = 0; i < n; ++i) y[i] = shift * x[i] + sign * y[i];
            deflate_ones(y);
            double resid = 0.0;
            double rayleigh = 0.0;
            for (int i = 0; i < n; ++i) rayleigh += x[i] * y[i];
            for (int i = 0; i < n; ++i) {
                double r = y[i] - rayleigh * x[i];
                resid += r * r;
            }
            out.eigenvalue = rayleigh;
            out.iterations = it;
            out.residual = std::sqrt(resid);
            return out;
        }
    }
    throw numerical_error("power iteration did not converge", std::abs(theta));
}

} // namespace detail

constexpr int kDenseEigenLimit = 2000;

// lambda = max(|lambda_2|, |lambda_n|) of the adjacency matrix. Dense
// symmetric eigensolve up to kDenseEigenLimit vertices; above that, power
// iteration on d*I + A (captures lambda_2) and d*I - A (captures lambda_n),
// both deflated against the all-ones eigenvector.
inline SpectralSummary spectral_lambda(const RegularGraph& g, double tolerance = 1e-10) {
    if (tolerance <= 0) throw input_error("spectral_lambda: tolerance > 0");
    const int n = g.vertex_count();
    SpectralSummary out;
    if (n <= 1) {
        out.lambda1 = 0.0;
        return out;
    }
    if (n <= kDenseEigenLimit) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (Vertex v = 0; v < n; ++v)
            for (Vertex w : g.neighbors(v)) a(v, w) = 1.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw numerical_error("dense eigensolve failed", 0.0);
        const auto& ev = solver.eigenvalues(); // ascending
        out.lambda1 = ev(n - 1);
        out.lambda = std::max(std::abs(ev(n - 2)), std::abs(ev(0)));
        out.residual = 1e-12 * std::max(1.0, static_cast<double>(g.degree()));
        return out;
    }
    const double d = g.degree();
    auto hi = detail::power_iterate_shifted(g, d, +1.0, tolerance, 200000);
    auto lo = detail::power_iterate_shifted(g, d, -1.0, tolerance, 200000);
    double lambda2 = hi.eigenvalue - d;  // top of A on the deflated space
    double lambda_n = d - lo.eigenvalue; // bottom of A on the deflated space
    out.lambda = std::max(std::abs(lambda2), std::abs(lambda_n));
    out.lambda1 = d; // exact for a d-regular graph
    out.iterations = hi.iterations + lo.iterations;
    out.residual = std::max(hi.residual, lo.residual);
    return out;
}

} // namespace rrg
