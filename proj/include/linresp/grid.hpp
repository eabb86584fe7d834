#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "errors.hpp"

namespace linresp {

/// Piecewise-linear function on a uniform grid over [a,b] with N cells and
/// N+1 nodes. When used as the regular part of a jump-space element it is
/// extended by its left boundary value below a and by zero above b.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(double a, double b, int N)
        : a_(a), b_(b), N_(N), values_(static_cast<std::size_t>(N) + 1, 0.0) {
        if (N < 1) throw OutOfDomain("GridFunction: N >= 1 required");
        if (!(b > a)) throw OutOfDomain("GridFunction: b > a required");
    }

    static GridFunction sample(double a, double b, int N,
                               const std::function<double(double)>& fn) {
        GridFunction g(a, b, N);
        for (int i = 0; i <= N; ++i) g.values_[static_cast<std::size_t>(i)] = fn(g.node(i));
        return g;
    }

    double a() const { return a_; }
    double b() const { return b_; }
    int cells() const { return N_; }
    double h() const { return (b_ - a_) / N_; }
    double node(int i) const { return a_ + (b_ - a_) * i / N_; }
    double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    bool same_grid(const GridFunction& o) const {
        return N_ == o.N_ && a_ == o.a_ && b_ == o.b_;
    }

    /// Piecewise-linear interpolation with the regular-part extension rule.
    double value(double x) const {
        if (x <= a_) return values_.front();
        if (x >= b_) return (x == b_) ? values_.back() : 0.0;
        double s = (x - a_) / h();
        int i = std::min(static_cast<int>(s), N_ - 1);
        double t = s - i;
        return values_[static_cast<std::size_t>(i)] * (1.0 - t) +
               values_[static_cast<std::size_t>(i) + 1] * t;
    }

    /// Total variation of the piecewise-linear interpolant (exact: the
    /// interpolant is monotone within each cell).
    double variation() const {
        double v = 0.0;
        for (int i = 0; i < N_; ++i)
            v += std::abs(values_[static_cast<std::size_t>(i) + 1] -
                          values_[static_cast<std::size_t>(i)]);
        return v;
    }

    double sup_norm() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Trapezoid integral of the interpolant over [a,b].
    double integral() const {
        double s = 0.5 * (values_.front() + values_.back());
        for (int i = 1; i < N_; ++i) s += values_[static_cast<std::size_t>(i)];
        return s * h();
    }

    double l1_norm() const {
        // trapezoid of |values|; exact up to sign changes within a cell
        double s = 0.5 * (std::abs(values_.front()) + std::abs(values_.back()));
        for (int i = 1; i < N_; ++i) s += std::abs(values_[static_cast<std::size_t>(i)]);
        return s * h();
    }

    double cell_slope(int i) const {
        return (values_[static_cast<std::size_t>(i) + 1] - values_[static_cast<std::size_t>(i)]) / h();
    }

    GridFunction& operator+=(const GridFunction& o) { return zip(o, +1.0); }
    GridFunction& operator-=(const GridFunction& o) { return zip(o, -1.0); }
    GridFunction& operator*=(double s) {
        for (double& v : values_) v *= s;
        return *this;
    }
    friend GridFunction operator+(GridFunction l, const GridFunction& r) { return l += r; }
    friend GridFunction operator-(GridFunction l, const GridFunction& r) { return l -= r; }
    friend GridFunction operator*(double s, GridFunction g) { return g *= s; }

private:
    GridFunction& zip(const GridFunction& o, double sgn) {
        if (!same_grid(o)) throw LengthMismatch("GridFunction arithmetic on different grids");
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += sgn * o.values_[i];
        return *this;
    }

    double a_ = 0.0, b_ = 1.0;
    int N_ = 0;
    std::vector<double> values_;
};

/// Trapezoid rule for a callable on the grid of `g`-like resolution.
inline double integrate(double a, double b, int N, const std::function<double(double)>& fn) {
    double h = (b - a) / N;
    double s = 0.5 * (fn(a) + fn(b));
    for (int i = 1; i < N; ++i) s += fn(a + i * h);
    return s * h;
}

} // namespace linresp
