#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "grid.hpp"
#include "map.hpp"
#include "orbit.hpp"

namespace linresp {

/// Heaviside-type step used throughout: H_u(x) = -1 below u, 0 above u,
/// and -1/2 at u itself. `side` shifts the evaluation point infinitesimally:
/// -1 evaluates at x-, +1 at x+.
inline double step_value(double x, double u, int side = 0) {
    if (side < 0) return x <= u ? -1.0 : 0.0;
    if (side > 0) return x < u ? -1.0 : 0.0;
    if (x < u) return -1.0;
    if (x > u) return 0.0;
    return -0.5;
}

/// Element of the jump space: a continuous piecewise-linear regular part
/// plus jump heights anchored at postcritical points. The represented
/// function is Gamma(phi) = regular + sum_k jumps[k] * H_{anchors[k]}.
/// Anchors are indexed from 1 in the paper; here jumps[k] sits at anchors[k]
/// with 0-based k corresponding to the paper's k+1.
struct JumpFunction {
    GridFunction regular;
    std::vector<double> jumps;
    std::vector<double> anchors;
    double eta = 0.05;

    JumpFunction() = default;
    JumpFunction(GridFunction reg, std::vector<double> j, std::vector<double> anc,
                 double eta_ = 0.05)
        : regular(std::move(reg)), jumps(std::move(j)), anchors(std::move(anc)), eta(eta_) {
        if (jumps.size() != anchors.size())
            throw LengthMismatch("JumpFunction: jumps/anchors size mismatch");
    }

    static JumpFunction zero(double a, double b, int N, std::vector<double> anc,
                             double eta_ = 0.05) {
        return JumpFunction(GridFunction(a, b, N),
                            std::vector<double>(anc.size(), 0.0), std::move(anc), eta_);
    }

    int K() const { return static_cast<int>(jumps.size()); }

    double saltus_value(double x, int side = 0) const {
        double s = 0.0;
        for (std::size_t k = 0; k < jumps.size(); ++k)
            s += jumps[k] * step_value(x, anchors[k], side);
        return s;
    }

    /// Pointwise value of Gamma(phi); `side` gives one-sided limits at anchors.
    double value(double x, int side = 0) const {
        return regular.value(x) + saltus_value(x, side);
    }

    /// ||phi_sal||_eta = sup_k (1+eta)^k |u_k| with the paper's 1-based k.
    double jump_norm() const {
        double m = 0.0, w = 1.0;
        for (double u : jumps) {
            w *= (1.0 + eta);
            m = std::max(m, w * std::abs(u));
        }
        return m;
    }

    double b0_norm() const { return regular.variation() + jump_norm(); }

    /// Gamma(phi) should vanish left of a; the defect is the violation of the
    /// compatibility regular(a) = sum_k u_k.
    double compat_defect() const {
        double s = 0.0;
        for (double u : jumps) s += u;
        return regular.values().front() - s;
    }

    JumpFunction& operator+=(const JumpFunction& o) { return zip(o, +1.0); }
    JumpFunction& operator-=(const JumpFunction& o) { return zip(o, -1.0); }
    JumpFunction& operator*=(double s) {
        regular *= s;
        for (double& u : jumps) u *= s;
        return *this;
    }
    friend JumpFunction operator+(JumpFunction l, const JumpFunction& r) { return l += r; }
    friend JumpFunction operator-(JumpFunction l, const JumpFunction& r) { return l -= r; }
    friend JumpFunction operator*(double s, JumpFunction g) { return g *= s; }

private:
    JumpFunction& zip(const JumpFunction& o, double sgn) {
        require_same_anchors(*this, o);
        if (sgn > 0) regular += o.regular; else regular -= o.regular;
        for (std::size_t k = 0; k < jumps.size(); ++k) jumps[k] += sgn * o.jumps[k];
        return *this;
    }

public:
    static void require_same_anchors(const JumpFunction& x, const JumpFunction& y) {
        if (x.jumps.size() != y.jumps.size())
            throw AnchorMismatch("jump vectors have different lengths");
        for (std::size_t k = 0; k < x.anchors.size(); ++k)
            if (std::abs(x.anchors[k] - y.anchors[k]) > 1e-12 * (x.regular.b() - x.regular.a()))
                throw AnchorMismatch("anchor locations differ");
    }
};

/// Relocation isometry G: identical regular part and jump heights, anchors
/// replaced. Preserves the jump-space norm exactly.
inline JumpFunction relocate_jumps(const JumpFunction& phi, std::vector<double> target_anchors) {
    if (target_anchors.size() != phi.jumps.size())
        throw LengthMismatch("relocate_jumps: target anchor count differs");
    JumpFunction out = phi;
    out.anchors = std::move(target_anchors);
    return out;
}

/// Product of a continuous function with a jump-space element: jumps pick up
/// the factor g(c_k); the regular part absorbs the rest pointwise.
inline JumpFunction multiply(const std::function<double(double)>& g, const JumpFunction& phi) {
    JumpFunction out = phi;
    for (std::size_t k = 0; k < out.jumps.size(); ++k) out.jumps[k] *= g(out.anchors[k]);
    for (int i = 0; i <= out.regular.cells(); ++i) {
        double x = out.regular.node(i);
        out.regular[i] = g(x) * phi.value(x) - out.saltus_value(x);
    }
    return out;
}

/// Weighted sum of Dirac atoms plus an optional absolutely continuous part.
struct AtomicMeasure {
    std::vector<std::pair<double, double>> atoms; // (location, weight)
    GridFunction density;                          // optional; empty => none
    bool has_density = false;

    double pair_with(const std::function<double(double)>& test) const {
        double s = 0.0;
        for (const auto& [loc, w] : atoms) s += w * test(loc);
        if (has_density)
            s += integrate(density.a(), density.b(), density.cells(),
                           [&](double x) { return density.value(x) * test(x); });
        return s;
    }
};

/// integral over [a, upto] of a callable, trapezoid on the grid with an exact
/// split of the final partial cell.
inline double integrate_prefix(double a, double b, int N,
                               const std::function<double(double)>& fn, double upto) {
    if (upto <= a) return 0.0;
    upto = std::min(upto, b);
    double h = (b - a) / N;
    int full = std::min(static_cast<int>(std::floor((upto - a) / h)), N);
    double s = 0.0;
    double prev = fn(a);
    for (int i = 1; i <= full; ++i) {
        double cur = fn(a + i * h);
        s += 0.5 * (prev + cur) * h;
        prev = cur;
    }
    double xl = a + full * h;
    if (upto > xl) s += 0.5 * (prev + fn(upto)) * (upto - xl);
    return s;
}

/// <Gamma(phi), test> = int Gamma(phi)(x) test(x) dx with jump anchors handled
/// exactly: int H_u * test = -int_a^u test.
inline double pair(const JumpFunction& phi, const std::function<double(double)>& test) {
    const auto& g = phi.regular;
    double s = integrate(g.a(), g.b(), g.cells(),
                         [&](double x) { return g.value(x) * test(x); });
    for (std::size_t k = 0; k < phi.jumps.size(); ++k)
        s -= phi.jumps[k] * integrate_prefix(g.a(), g.b(), g.cells(), test, phi.anchors[k]);
    return s;
}

inline double pair(const AtomicMeasure& mu, const std::function<double(double)>& test) {
    return mu.pair_with(test);
}

/// Section-7 style envelope maps between finite jump vectors on a finite
/// postcritical orbit and their infinite decaying expansions. `multipliers[j]`
/// is (f^{n1})'(c_{n0+j}); compress . expand = identity.
inline std::vector<double> expand_jumps(const std::vector<double>& w, int n0, int n1,
                                        const std::vector<double>& multipliers, int length) {
    if (n0 < 1 || n1 < 1) throw OutOfDomain("expand_jumps: n0,n1 >= 1 required");
    if (static_cast<int>(w.size()) != n0 + n1 - 1)
        throw LengthMismatch("expand_jumps: expected n0+n1-1 entries");
    if (static_cast<int>(multipliers.size()) != n1)
        throw LengthMismatch("expand_jumps: expected n1 multipliers");
    for (double mu : multipliers)
        if (std::abs(mu) <= 1.0)
            throw NonExpandingMultiplier("cycle multiplier must exceed 1 in modulus");
    std::vector<double> v(static_cast<std::size_t>(length), 0.0);
    for (int l = 1; l <= std::min(n0 - 1, length); ++l)
        v[static_cast<std::size_t>(l - 1)] = w[static_cast<std::size_t>(l - 1)];
    for (int j = 0; j < n1; ++j) {
        double mu = multipliers[static_cast<std::size_t>(j)];
        double scale = 1.0 - 1.0 / mu;
        double decay = 1.0;
        for (int l = 0;; ++l) {
            int idx = n0 + j + l * n1; // 1-based position
            if (idx > length) break;
            v[static_cast<std::size_t>(idx - 1)] =
                w[static_cast<std::size_t>(n0 + j - 1)] * decay * scale;
            decay /= mu;
        }
    }
    return v;
}

inline std::vector<double> compress_jumps(const std::vector<double>& v, int n0, int n1) {
    if (n0 < 1 || n1 < 1) throw OutOfDomain("compress_jumps: n0,n1 >= 1 required");
    std::vector<double> w(static_cast<std::size_t>(n0 + n1 - 1), 0.0);
    for (int l = 1; l <= std::min<int>(n0 - 1, static_cast<int>(v.size())); ++l)
        w[static_cast<std::size_t>(l - 1)] = v[static_cast<std::size_t>(l - 1)];
    for (int idx = n0; idx <= static_cast<int>(v.size()); ++idx) {
        int j = (idx - n0) % n1;
        w[static_cast<std::size_t>(n0 + j - 1)] += v[static_cast<std::size_t>(idx - 1)];
    }
    return w;
}

/// Weak norms from the main-theorem proof: for finite j,
/// |phi|_{weak,j} = ||phi_reg||_L1/2 + max over the preimage tree of |phi_reg|/2
/// + |phi_sal|_eta; j < 0 selects the L-infinity variant (j = infinity).
inline double weak_norm(const JumpFunction& phi, int j, const UnimodalMap& f) {
    double sal = phi.jump_norm();
    if (j < 0) return phi.regular.sup_norm() + sal;
    std::vector<double> level{f.c()};
    double best = std::abs(phi.regular.value(f.c()));
    for (int l = 1; l <= j; ++l) {
        std::vector<double> next;
        next.reserve(level.size() * 2);
        for (double y : level) {
            if (y > f.critical_value() + f.domain_tol()) continue;
            for (int sgn : {+1, -1}) {
                double x = f.inverse_branch(std::min(y, f.critical_value()), sgn);
                next.push_back(x);
                best = std::max(best, std::abs(phi.regular.value(x)));
            }
        }
        level = std::move(next);
    }
    return 0.5 * phi.regular.l1_norm() + 0.5 * best + sal;
}

} // namespace linresp
