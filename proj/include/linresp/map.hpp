#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace linresp {

enum class Side { Left, Right, Auto };

/// One monotone branch of a piecewise expanding map. Evaluation supports
/// derivative orders 0..3. A closed-form inverse may be attached; otherwise
/// callers fall back to bracketed root finding. `poly` is non-empty when the
/// branch is a polynomial (coefficients ascending), which lets expansion
/// constants be computed without sampling margins.
struct Branch {
    std::function<double(double, int)> eval;
    std::function<double(double)> inverse; // optional
    std::vector<double> poly;              // optional, ascending coefficients

    double operator()(double x, int order = 0) const { return eval(x, order); }
    bool has_inverse() const { return static_cast<bool>(inverse); }
    bool is_polynomial() const { return !poly.empty(); }
    bool is_linear() const {
        return is_polynomial() &&
               std::all_of(poly.begin() + std::min<std::size_t>(2, poly.size()), poly.end(),
                           [](double v) { return v == 0.0; });
    }
};

inline double eval_poly(const std::vector<double>& coef, double x, int order) {
    // differentiate the coefficient array `order` times, then Horner
    if (order < 0 || order > 3) throw OutOfDomain("polynomial derivative order must be 0..3");
    std::vector<double> c = coef;
    for (int d = 0; d < order; ++d) {
        if (c.size() <= 1) return 0.0;
        for (std::size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * static_cast<double>(i);
        c.pop_back();
    }
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

inline Branch polynomial_branch(std::vector<double> coef) {
    Branch br;
    br.poly = coef;
    br.eval = [coef = std::move(coef)](double x, int order) { return eval_poly(coef, x, order); };
    return br;
}

/// Certified one-step surrogates for the asymptotic expansion rates:
/// lambda_hat = 1/inf|f'| (an upper bound for the contraction of inverse
/// branches) and Lambda_hat = sup|f'|.
struct ExpansionConstants {
    double lambda_hat = 0.0; // in (0,1)
    double Lambda_hat = 0.0; // > 1
};

/// Piecewise expanding unimodal map on [a,b]: increasing left branch on
/// [a,c], decreasing right branch on [c,b], f(a)=f(b)=a, inf|f'| > 1.
/// Immutable after construction; all member functions are const and pure.
class UnimodalMap {
public:
    UnimodalMap(double a, double b, double c, Branch left, Branch right,
                std::string name = "")
        : a_(a), b_(b), c_(c), left_(std::move(left)), right_(std::move(right)),
          name_(std::move(name)) {
        validate();
        constants_ = compute_expansion_constants();
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    const std::string& name() const { return name_; }
    const Branch& left_branch() const { return left_; }
    const Branch& right_branch() const { return right_; }
    double width() const { return b_ - a_; }
    double critical_value() const { return left_(c_, 0); }

    double domain_tol() const { return 1e-9 * width(); }

    /// f and its one-sided derivatives. At x=c with order>=1 the side must
    /// be given; order 0 at c is unambiguous by continuity.
    double eval(double x, int order = 0, Side side = Side::Auto) const {
        if (x < a_ - domain_tol() || x > b_ + domain_tol())
            throw OutOfDomain("eval: x outside [a,b]");
        if (side == Side::Auto) {
            if (x == c_ && order >= 1)
                throw AmbiguousSide("eval: order>=1 at x=c requires an explicit side");
            side = (x <= c_) ? Side::Left : Side::Right;
        }
        return (side == Side::Left) ? left_(x, order) : right_(x, order);
    }
    double operator()(double x) const { return eval(x, 0); }

    /// One-sided derivative limit at the critical point; side is -1 (left) or +1 (right).
    double deriv_at_c(int side, int order = 1) const {
        return side < 0 ? left_(c_, order) : right_(c_, order);
    }

    /// Inverse branch: sign=+1 gives the preimage in [a,c], sign=-1 in [c,b].
    /// Bisection bracket then Newton polish, 60-iteration cap.
    double inverse_branch(double y, int sign) const {
        const double c1 = critical_value();
        const double tol_y = 1e-11 * width();
        if (y > c1 + tol_y)
            throw AboveCriticalValue("inverse_branch: y above f(c)");
        if (y < a_ - tol_y)
            throw OutOfDomain("inverse_branch: y below f(a)");
        y = std::clamp(y, a_, c1);
        const Branch& br = sign > 0 ? left_ : right_;
        double lo = sign > 0 ? a_ : c_;
        double hi = sign > 0 ? c_ : b_;
        if (br.has_inverse()) {
            double x = std::clamp(br.inverse(y), lo, hi);
            // one polish step guards against loose custom inverses
            double d = br(x, 1);
            if (d != 0.0) x = std::clamp(x - (br(x, 0) - y) / d, lo, hi);
            return x;
        }
        return monotone_solve(br, lo, hi, y);
    }

    const ExpansionConstants& expansion_constants() const { return constants_; }

private:
    void validate() const {
        if (!(a_ < c_ && c_ < b_)) throw InvalidMap("need a < c < b");
        const double tol = 1e-9 * std::max(1.0, width());
        if (std::abs(left_(a_, 0) - a_) > tol) throw InvalidMap("f(a) != a");
        if (std::abs(right_(b_, 0) - a_) > tol) throw InvalidMap("f(b) != a");
        if (std::abs(left_(c_, 0) - right_(c_, 0)) > tol)
            throw InvalidMap("branches disagree at c");
        if (left_(c_, 0) > b_ + tol) throw InvalidMap("f(c) > b: map does not preserve [a,b]");
        const int M = 512;
        for (int i = 0; i <= M; ++i) {
            double xl = a_ + (c_ - a_) * i / M;
            double xr = c_ + (b_ - c_) * i / M;
            if (left_(xl, 1) <= 1.0)
                throw NotExpanding("left branch has f' <= 1 at x=" + std::to_string(xl));
            if (right_(xr, 1) >= -1.0)
                throw NotExpanding("right branch has f' >= -1 at x=" + std::to_string(xr));
        }
    }

    ExpansionConstants compute_expansion_constants() const {
        auto scan = [](const Branch& br, double lo, double hi) {
            double dmin = std::abs(br(lo, 1)), dmax = dmin;
            const int M = 2048;
            for (int i = 1; i <= M; ++i) {
                double d = std::abs(br(lo + (hi - lo) * i / M, 1));
                dmin = std::min(dmin, d);
                dmax = std::max(dmax, d);
            }
            return std::pair<double, double>(dmin, dmax);
        };
        auto [lmin, lmax] = scan(left_, a_, c_);
        auto [rmin, rmax] = scan(right_, c_, b_);
        double inf = std::min(lmin, rmin), sup = std::max(lmax, rmax);
        // sampling margin: exact for (piecewise-)linear branches
        double margin = (left_.is_linear() && right_.is_linear()) ? 1.0 : 1.01;
        if (inf / margin <= 1.0) throw NotExpanding("inf|f'| <= 1");
        ExpansionConstants ec;
        ec.lambda_hat = std::min(margin / inf, 0.999999);
        ec.Lambda_hat = sup * margin;
        return ec;
    }

    double monotone_solve(const Branch& br, double lo, double hi, double y) const {
        double flo = br(lo, 0), fhi = br(hi, 0);
        bool increasing = fhi > flo;
        const double target_tol = 1e-13 * std::max(1.0, width());
        int iter = 0;
        // bisect until the bracket is tight enough to hand over to Newton
        while (hi - lo > 1e-4 * width() && iter < 40) {
            double mid = 0.5 * (lo + hi);
            double fm = br(mid, 0);
            if ((fm < y) == increasing) lo = mid; else hi = mid;
            ++iter;
        }
        double x = 0.5 * (lo + hi);
        while (iter < 60) {
            double fx = br(x, 0);
            if (std::abs(fx - y) <= target_tol) return x;
            double d = br(x, 1);
            if (d == 0.0) break;
            double step = (fx - y) / d;
            double xn = x - step;
            if (xn < lo || xn > hi) { // fall back to bisection inside the bracket
                double fm = br(0.5 * (lo + hi), 0);
                if ((fm < y) == increasing) lo = 0.5 * (lo + hi); else hi = 0.5 * (lo + hi);
                xn = 0.5 * (lo + hi);
            } else {
                if ((fx < y) == increasing) lo = x; else hi = x;
            }
            x = xn;
            ++iter;
        }
        if (std::abs(br(x, 0) - y) > 1e4 * target_tol)
            throw NoConvergence("inverse_branch: root solve exceeded iteration cap");
        return x;
    }

    double a_, b_, c_;
    Branch left_, right_;
    std::string name_;
    ExpansionConstants constants_;
};

// ---------------------------------------------------------------------------
// Built-in families
// ---------------------------------------------------------------------------

/// Symmetric tent: f(x) = s*min(x, 1-x) on [0,1], slope s in (1,2].
inline UnimodalMap tent_map(double s) {
    if (!(s > 1.0 && s <= 2.0)) throw InvalidMap("tent slope must be in (1,2]");
    Branch left = polynomial_branch({0.0, s});
    Branch right = polynomial_branch({s, -s});
    left.inverse = [s](double y) { return y / s; };
    right.inverse = [s](double y) { return 1.0 - y / s; };
    return UnimodalMap(0.0, 1.0, 0.5, std::move(left), std::move(right),
                       "tent(" + std::to_string(s) + ")");
}

/// Skew tent on [0,1] with left slope sp and right slope sm (both > 1);
/// the critical point c = sm/(sp+sm) is forced by continuity and f(b)=0.
inline UnimodalMap skew_tent_map(double sp, double sm) {
    if (!(sp > 1.0 && sm > 1.0)) throw InvalidMap("skew tent slopes must exceed 1");
    double c = sm / (sp + sm);
    Branch left = polynomial_branch({0.0, sp});
    Branch right = polynomial_branch({sm, -sm});
    left.inverse = [sp](double y) { return y / sp; };
    right.inverse = [sm](double y) { return 1.0 - y / sm; };
    return UnimodalMap(0.0, 1.0, c, std::move(left), std::move(right), "skew_tent");
}

/// Map with polynomial branches of degree <= 3 given by ascending coefficients.
inline UnimodalMap polynomial_map(double a, double b, double c,
                                  std::vector<double> left_coef,
                                  std::vector<double> right_coef,
                                  std::string name = "poly") {
    return UnimodalMap(a, b, c, polynomial_branch(std::move(left_coef)),
                       polynomial_branch(std::move(right_coef)), std::move(name));
}

/// Appendix-style itinerary separation bound theta^n + delta/(1-theta).
inline double itinerary_distance_bound(double theta, double delta, int n) {
    if (!(theta > 0.0 && theta < 1.0)) throw OutOfDomain("theta must lie in (0,1)");
    return std::pow(theta, n) + delta / (1.0 - theta);
}

} // namespace linresp
