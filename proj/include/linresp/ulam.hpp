#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "grid.hpp"
#include "map.hpp"

namespace linresp {

/// Row-stochastic Ulam discretization of the transfer operator:
/// entry (i,j) = Leb(cell_i ∩ f^{-1}(cell_j)) / Leb(cell_i), stored sparse
/// by row (each cell's image covers at most ~Lambda_hat+2 cells per branch).
class UlamOperator {
public:
    int N = 0;
    double a = 0.0, b = 1.0;
    std::vector<int> row_start;   // size N+1
    std::vector<int> col;         // column indices
    std::vector<double> val;      // transition proportions

    double h() const { return (b - a) / N; }

    /// Left action pi <- pi P on a mass (row) vector.
    std::vector<double> apply_left(const std::vector<double>& pi) const {
        std::vector<double> out(static_cast<std::size_t>(N), 0.0);
        for (int i = 0; i < N; ++i) {
            double m = pi[static_cast<std::size_t>(i)];
            if (m == 0.0) continue;
            for (int s = row_start[static_cast<std::size_t>(i)];
                 s < row_start[static_cast<std::size_t>(i) + 1]; ++s)
                out[static_cast<std::size_t>(col[static_cast<std::size_t>(s)])] +=
                    m * val[static_cast<std::size_t>(s)];
        }
        return out;
    }

    double row_sum(int i) const {
        double s = 0.0;
        for (int k = row_start[static_cast<std::size_t>(i)];
             k < row_start[static_cast<std::size_t>(i) + 1]; ++k)
            s += val[static_cast<std::size_t>(k)];
        return s;
    }
};

/// Assemble the Ulam matrix via exact inverse-branch interval intersections:
/// each monotone piece of a cell maps to an interval; its overlap with every
/// output cell is pulled back through the corresponding inverse branch.
inline UlamOperator ulam_matrix(const UnimodalMap& f, int N) {
    if (N < 2) throw OutOfDomain("ulam_matrix: N >= 2 required");
    UlamOperator op;
    op.N = N;
    op.a = f.a();
    op.b = f.b();
    const double h = op.h();
    const double c1 = f.critical_value();
    op.row_start.assign(static_cast<std::size_t>(N) + 1, 0);
    std::vector<std::pair<int, double>> row;
    auto node = [&](int j) { return f.a() + j * h; };
    for (int i = 0; i < N; ++i) {
        row.clear();
        double xl = node(i), xr = node(i + 1);
        // split at the critical point
        struct Piece { double u, v; int sign; };
        std::vector<Piece> pieces;
        if (xr <= f.c())
            pieces.push_back({xl, xr, +1});
        else if (xl >= f.c())
            pieces.push_back({xl, xr, -1});
        else {
            pieces.push_back({xl, f.c(), +1});
            pieces.push_back({f.c(), xr, -1});
        }
        for (const auto& pc : pieces) {
            double fu = f.eval(pc.u), fv = f.eval(pc.v);
            double ylo = std::min(fu, fv), yhi = std::max(fu, fv);
            ylo = std::clamp(ylo, f.a(), c1);
            yhi = std::clamp(yhi, f.a(), c1);
            if (yhi - ylo <= 0.0) continue;
            int jlo = std::clamp(static_cast<int>(std::floor((ylo - f.a()) / h)), 0, N - 1);
            int jhi = std::clamp(static_cast<int>(std::floor((yhi - f.a()) / h - 1e-12)), 0, N - 1);
            double xprev = -1.0;
            for (int j = jlo; j <= jhi; ++j) {
                double alo = std::max(ylo, node(j));
                double ahi = std::min(yhi, node(j + 1));
                if (ahi <= alo) continue;
                double plo = (xprev >= 0.0 && j > jlo)
                                 ? xprev
                                 : std::clamp(f.inverse_branch(alo, pc.sign), pc.u, pc.v);
                double phi_ = std::clamp(f.inverse_branch(ahi, pc.sign), pc.u, pc.v);
                xprev = phi_;
                double len = std::abs(phi_ - plo);
                if (len > 0.0) row.emplace_back(j, len / h);
            }
        }
        std::sort(row.begin(), row.end());
        // merge duplicates and normalize the row exactly to 1
        double sum = 0.0;
        for (auto& [j, w] : row) sum += w;
        op.row_start[static_cast<std::size_t>(i) + 1] = op.row_start[static_cast<std::size_t>(i)];
        if (sum <= 0.0) { // cell maps outside [a, c1]: cannot happen for valid maps
            op.col.push_back(i);
            op.val.push_back(1.0);
            ++op.row_start[static_cast<std::size_t>(i) + 1];
            continue;
        }
        int prev = -1;
        for (auto& [j, w] : row) {
            if (j == prev) {
                op.val.back() += w / sum;
            } else {
                op.col.push_back(j);
                op.val.push_back(w / sum);
                ++op.row_start[static_cast<std::size_t>(i) + 1];
                prev = j;
            }
        }
    }
    return op;
}

struct InvariantDensityResult {
    GridFunction density;          // node values, normalized to integral 1
    std::vector<double> masses;    // fixed cell-mass vector, sums to 1
    double residual = 0.0;         // ||pi P - pi||_1 at termination
    int iterations = 0;
};

/// Left fixed vector by power iteration from the uniform start, converted to
/// a density by cell-averaging onto nodes and renormalized so the trapezoid
/// integral is exactly 1.
inline InvariantDensityResult invariant_density(const UlamOperator& op, double tol = 1e-12,
                                                int max_iter = 20000) {
    std::vector<double> pi(static_cast<std::size_t>(op.N), 1.0 / op.N);
    double res = 0.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        std::vector<double> next = op.apply_left(pi);
        res = 0.0;
        for (std::size_t i = 0; i < pi.size(); ++i) res += std::abs(next[i] - pi[i]);
        pi.swap(next);
        if (res <= tol) break;
    }
    if (res > tol)
        throw NoConvergence("invariant_density: power iteration residual " +
                            std::to_string(res) + " after " + std::to_string(max_iter) +
                            " iterations (non-mixing example?)");
    double total = std::accumulate(pi.begin(), pi.end(), 0.0);
    for (double& m : pi) m /= total;
    GridFunction g(op.a, op.b, op.N);
    const double h = op.h();
    g[0] = pi.front() / h;
    g[op.N] = pi.back() / h;
    for (int i = 1; i < op.N; ++i)
        g[i] = 0.5 * (pi[static_cast<std::size_t>(i) - 1] + pi[static_cast<std::size_t>(i)]) / h;
    double integral = g.integral();
    if (integral > 0.0) g *= 1.0 / integral;
    InvariantDensityResult out;
    out.density = std::move(g);
    out.masses = std::move(pi);
    out.residual = res;
    out.iterations = it + 1;
    return out;
}

struct SpectralGapEstimate {
    double tau_hat = 1.0; // modulus of the second-largest eigenvalue
    int iterations = 0;
};

/// Power iteration on the complement of the fixed vector (vectors with zero
/// sum are invariant under the left action). Returns the stabilized decay
/// ratio; values near 1 flag a non-mixing or badly conditioned operator.
inline SpectralGapEstimate spectral_gap_estimate(const UlamOperator& op, int iters = 400) {
    std::vector<double> w(static_cast<std::size_t>(op.N));
    // deterministic pseudo-random start with zero sum
    double s = 0.0;
    for (int i = 0; i < op.N; ++i) {
        double v = std::sin(12.9898 * (i + 1)) * 43758.5453;
        v -= std::floor(v);
        w[static_cast<std::size_t>(i)] = v - 0.5;
        s += w[static_cast<std::size_t>(i)];
    }
    for (double& v : w) v -= s / op.N;
    auto norm1 = [](const std::vector<double>& x) {
        double n = 0.0;
        for (double v : x) n += std::abs(v);
        return n;
    };
    double n0 = norm1(w);
    for (double& v : w) v /= n0;
    SpectralGapEstimate est;
    est.iterations = iters;
    const int tail = 50;
    double log_acc = 0.0;
    int acc_count = 0;
    for (int k = 0; k < iters; ++k) {
        std::vector<double> next = op.apply_left(w);
        double mean = std::accumulate(next.begin(), next.end(), 0.0) / op.N;
        for (double& v : next) v -= mean;
        double n = norm1(next);
        if (n == 0.0) { est.tau_hat = 0.0; return est; }
        if (k >= iters - tail) {
            log_acc += std::log(n);
            ++acc_count;
        }
        for (double& v : next) v /= n;
        w.swap(next);
    }
    est.tau_hat = std::exp(log_acc / acc_count);
    return est;
}

} // namespace linresp
