#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "map.hpp"

namespace linresp {

/// Forward orbit of the critical point with cumulative derivatives
/// cum_derivs[k] = (f^k)'(c_1) = prod_{j=1..k} f'(c_j), cum_derivs[0] = 1.
/// If the orbit returns to c exactly (within the exact-hit tolerance) the
/// derivative products stop there; requesting them beyond the hit throws.
struct CriticalOrbit {
    std::vector<double> points;     // c_k for k = 0..K
    std::vector<double> cum_derivs; // (f^k)'(c_1), k = 0..(K-1) or up to a hit
    int K = 0;
    bool hit_critical = false;
    int hit_index = -1; // smallest k >= 1 with c_k == c (exact hit)

    double point(int k) const { return points.at(static_cast<std::size_t>(k)); }

    double cum(int k) const {
        if (k >= static_cast<int>(cum_derivs.size()))
            throw OrbitHitsCritical("cumulative derivative requested beyond an exact critical hit at k=" +
                                    std::to_string(hit_index));
        return cum_derivs[static_cast<std::size_t>(k)];
    }
};

inline CriticalOrbit critical_orbit(const UnimodalMap& f, int K) {
    if (K < 1) throw OutOfDomain("critical_orbit: K >= 1 required");
    const double exact_tol = 1e-12 * f.width();
    CriticalOrbit orb;
    orb.K = K;
    orb.points.reserve(static_cast<std::size_t>(K) + 1);
    orb.points.push_back(f.c());
    for (int k = 0; k < K; ++k) {
        double x = orb.points.back();
        double fx = (std::abs(x - f.c()) < exact_tol) ? f.critical_value()
                                                      : f.eval(std::clamp(x, f.a(), f.b()));
        orb.points.push_back(std::clamp(fx, f.a(), f.b()));
    }
    orb.cum_derivs.push_back(1.0);
    for (int k = 1; k < K; ++k) {
        double ck = orb.points[static_cast<std::size_t>(k)];
        if (std::abs(ck - f.c()) < exact_tol) {
            orb.hit_critical = true;
            orb.hit_index = k;
            break;
        }
        double d = f.eval(ck, 1, ck < f.c() ? Side::Left : Side::Right);
        orb.cum_derivs.push_back(orb.cum_derivs.back() * d);
    }
    return orb;
}

constexpr int kInfiniteMarker = -1;

/// Classification of the postcritical orbit. N_f = n0+n1-1 when finite;
/// M_f = n1 only in the periodic case.
struct OrbitClass {
    enum class Kind { Periodic, Preperiodic, NoPeriodDetected };
    Kind kind = Kind::NoPeriodDetected;
    int n0 = kInfiniteMarker;
    int n1 = kInfiniteMarker;
    int horizon = 0;

    bool finite_Nf() const { return kind != Kind::NoPeriodDetected; }
    int N_f() const {
        if (kind == Kind::Periodic) return n1;
        if (kind == Kind::Preperiodic) return n0 + n1 - 1;
        return kInfiniteMarker;
    }
    bool finite_Mf() const { return kind == Kind::Periodic; }
    int M_f() const { return kind == Kind::Periodic ? n1 : kInfiniteMarker; }
};

/// Detect the minimal recurrence (n0, n1) with |c_{n0+n1} - c_{n0}| < tol.
/// Bucketed scan: O(K) for horizon-sized orbits.
inline OrbitClass classify_orbit(const CriticalOrbit& orbit, double tol) {
    if (tol <= 0.0) throw OutOfDomain("classify_orbit: tol > 0 required");
    OrbitClass oc;
    oc.horizon = orbit.K;
    std::unordered_map<std::int64_t, std::vector<int>> buckets;
    auto key = [tol](double x) { return static_cast<std::int64_t>(std::floor(x / tol)); };
    for (int l = 0; l <= orbit.K; ++l) {
        double cl = orbit.points[static_cast<std::size_t>(l)];
        std::int64_t k0 = key(cl);
        int best = -1;
        for (std::int64_t dk = -1; dk <= 1; ++dk) {
            auto it = buckets.find(k0 + dk);
            if (it == buckets.end()) continue;
            for (int j : it->second)
                if (std::abs(orbit.points[static_cast<std::size_t>(j)] - cl) < tol)
                    if (best < 0 || j < best) best = j;
        }
        if (best >= 0) {
            if (best == 0) {
                oc.kind = OrbitClass::Kind::Periodic;
                oc.n0 = 1; // paper's convention for periodic c
                oc.n1 = l;
            } else {
                oc.kind = OrbitClass::Kind::Preperiodic;
                oc.n0 = best;
                oc.n1 = l - best;
            }
            return oc;
        }
        buckets[k0].push_back(l);
    }
    return oc;
}

struct GoodnessReport {
    bool good = false;
    bool periodic = false;
    double period_product = 0.0; // inf over one-sided choices of |(f^{n1})'| along the cycle
};

/// A map is good when c is not periodic, or the derivative product along the
/// period exceeds 2 (one-sided infimum at c).
inline GoodnessReport is_good(const UnimodalMap& f, const CriticalOrbit& orbit,
                              const OrbitClass& oc) {
    GoodnessReport rep;
    if (oc.kind != OrbitClass::Kind::Periodic) {
        rep.good = true;
        return rep;
    }
    rep.periodic = true;
    double prod = std::min(std::abs(f.deriv_at_c(-1)), std::abs(f.deriv_at_c(+1)));
    for (int k = 1; k < oc.n1; ++k) {
        double ck = orbit.point(k);
        prod *= std::abs(f.eval(ck, 1, ck < f.c() ? Side::Left : Side::Right));
    }
    rep.period_product = prod;
    rep.good = prod > 2.0;
    return rep;
}

/// Signs of the orbit of x relative to c for n steps: -1 below, +1 above, 0 hit.
inline std::vector<int> itinerary_signs(const UnimodalMap& f, double x, int n) {
    std::vector<int> signs;
    signs.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        signs.push_back(x < f.c() ? -1 : (x > f.c() ? +1 : 0));
        x = std::clamp(f.eval(std::clamp(x, f.a(), f.b())), f.a(), f.b());
    }
    return signs;
}

} // namespace linresp
