#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "jump.hpp"
#include "map.hpp"
#include "orbit.hpp"

namespace linresp {

/// Anchor count for jump vectors: the full finite orbit when the postcritical
/// orbit closes up, otherwise enough terms for the geometric jump decay to
/// fall below 1e-12.
inline int default_anchor_count(const UnimodalMap& f, const OrbitClass& oc) {
    if (oc.finite_Nf()) return oc.N_f();
    double lam = f.expansion_constants().lambda_hat;
    return static_cast<int>(std::ceil(12.0 * std::log(10.0) / -std::log(lam))) + 1;
}

/// Precomputed node pullbacks, branch weights and anchor transport data for
/// the operator actions on a fixed grid. Building the table costs two inverse
/// branch solves per node; each operator application is then a few flops per
/// node plus the jump bookkeeping.
class TransferTable {
public:
    TransferTable(const UnimodalMap& f, const CriticalOrbit& orbit, const OrbitClass& oc,
                  int K_anchors, int N_grid)
        : f_(f), oc_(oc), N_(N_grid) {
        if (oc.finite_Nf() && K_anchors != oc.N_f())
            throw AnchorMismatch("finite postcritical orbit requires K = N_f anchors");
        if (K_anchors >= static_cast<int>(orbit.points.size()))
            throw OutOfDomain("TransferTable: orbit shorter than anchor count");
        c1_ = f.critical_value();
        p_ = 1.0 / std::abs(f.deriv_at_c(-1));
        q_ = 1.0 / std::abs(f.deriv_at_c(+1));
        const double exact_tol = 1e-12 * f.width();
        anchors_.reserve(static_cast<std::size_t>(K_anchors));
        fp_.reserve(static_cast<std::size_t>(K_anchors));
        for (int k = 1; k <= K_anchors; ++k) {
            double ck = orbit.point(k);
            anchors_.push_back(ck);
            if (std::abs(ck - f.c()) < exact_tol)
                fp_.push_back(std::numeric_limits<double>::quiet_NaN()); // never used
            else
                fp_.push_back(f.eval(ck, 1, ck < f.c() ? Side::Left : Side::Right));
        }
        a_ = f.a();
        b_ = f.b();
        const double h = (b_ - a_) / N_;
        chi_.resize(static_cast<std::size_t>(N_) + 1);
        psi_p_.assign(static_cast<std::size_t>(N_) + 1, 0.0);
        psi_m_.assign(static_cast<std::size_t>(N_) + 1, 0.0);
        wp_.assign(static_cast<std::size_t>(N_) + 1, 0.0);
        wm_.assign(static_cast<std::size_t>(N_) + 1, 0.0);
        side_p_.assign(static_cast<std::size_t>(N_) + 1, 0);
        side_m_.assign(static_cast<std::size_t>(N_) + 1, 0);
        for (int i = 0; i <= N_; ++i) {
            double x = a_ + i * h;
            double chi = x < c1_ ? 1.0 : (x > c1_ ? 0.0 : 0.5);
            chi_[static_cast<std::size_t>(i)] = chi;
            if (chi == 0.0) continue;
            double y = std::min(x, c1_);
            double xp = f.inverse_branch(y, +1);
            double xm = f.inverse_branch(y, -1);
            psi_p_[static_cast<std::size_t>(i)] = xp;
            psi_m_[static_cast<std::size_t>(i)] = xm;
            bool p_at_c = std::abs(xp - f.c()) < exact_tol;
            bool m_at_c = std::abs(xm - f.c()) < exact_tol;
            side_p_[static_cast<std::size_t>(i)] = p_at_c ? -1 : 0;
            side_m_[static_cast<std::size_t>(i)] = m_at_c ? +1 : 0;
            wp_[static_cast<std::size_t>(i)] =
                1.0 / std::abs(p_at_c ? f.deriv_at_c(-1) : f.eval(xp, 1, Side::Left));
            wm_[static_cast<std::size_t>(i)] =
                1.0 / std::abs(m_at_c ? f.deriv_at_c(+1) : f.eval(xm, 1, Side::Right));
        }
    }

    const UnimodalMap& map() const { return f_; }
    const OrbitClass& orbit_class() const { return oc_; }
    const std::vector<double>& anchors() const { return anchors_; }
    int K() const { return static_cast<int>(anchors_.size()); }
    int grid_cells() const { return N_; }
    double p() const { return p_; }
    double q() const { return q_; }
    double anchor_deriv(int k) const { return fp_[static_cast<std::size_t>(k)]; }

    JumpFunction zero_element(double eta = 0.05) const {
        return JumpFunction::zero(a_, b_, N_, anchors_, eta);
    }

    void require_compatible(const JumpFunction& phi) const {
        if (!phi.regular.same_grid(GridFunction(a_, b_, N_)))
            throw AnchorMismatch("jump function grid does not match transfer table");
        if (static_cast<int>(phi.jumps.size()) != K())
            throw AnchorMismatch("jump vector length does not match transfer table");
        for (int k = 0; k < K(); ++k)
            if (std::abs(phi.anchors[static_cast<std::size_t>(k)] -
                         anchors_[static_cast<std::size_t>(k)]) > 1e-12 * (b_ - a_))
                throw AnchorMismatch("jump anchors do not match transfer table");
    }

    /// Transport of the jump vector under L1 (weight 1/f'(c_{k-1})) or L0
    /// (weight 1), including the closure term when the orbit is preperiodic.
    /// The new first jump is the chi-cutoff at c_1 and is supplied by the caller.
    std::vector<double> transport_jumps(const std::vector<double>& u, bool weighted,
                                        double first) const {
        std::vector<double> w(u.size(), 0.0);
        if (!w.empty()) w[0] = first;
        for (std::size_t k = 1; k < u.size(); ++k)
            w[k] = weighted ? u[k - 1] / fp_[k - 1] : u[k - 1];
        if (oc_.kind == OrbitClass::Kind::Preperiodic && !u.empty() &&
            static_cast<int>(u.size()) == oc_.N_f()) {
            std::size_t last = u.size() - 1;
            double t = weighted ? u[last] / fp_[last] : u[last];
            w[static_cast<std::size_t>(oc_.n0 - 1)] += t;
        }
        return w;
    }

    enum class Operator { Weighted, Signed }; // L1 (Perron-Frobenius) vs L0

    JumpFunction apply(Operator op, const JumpFunction& phi) const {
        require_compatible(phi);
        const double at_minus = phi.value(f_.c(), -1);
        const double at_plus = phi.value(f_.c(), +1);
        double first;
        bool weighted = (op == Operator::Weighted);
        if (weighted)
            first = -(p_ * at_minus + q_ * at_plus);
        else
            first = at_plus - at_minus;
        JumpFunction out = phi;
        out.jumps = transport_jumps(phi.jumps, weighted, first);
        const double h = (b_ - a_) / N_;
        for (int i = 0; i <= N_; ++i) {
            std::size_t si = static_cast<std::size_t>(i);
            double chi = chi_[si];
            double val = 0.0;
            if (chi != 0.0) {
                double vp = phi.value(psi_p_[si], side_p_[si]);
                double vm = phi.value(psi_m_[si], side_m_[si]);
                val = weighted ? chi * (wp_[si] * vp + wm_[si] * vm)
                               : chi * (vp - vm);
            }
            double x = a_ + i * h;
            double sal = 0.0;
            for (std::size_t k = 0; k < out.jumps.size(); ++k)
                sal += out.jumps[k] * step_value(x, anchors_[k]);
            out.regular[i] = val - sal;
        }
        return out;
    }

private:
    UnimodalMap f_;
    OrbitClass oc_;
    int N_;
    double a_ = 0, b_ = 1, c1_ = 0, p_ = 0, q_ = 0;
    std::vector<double> anchors_, fp_;
    std::vector<double> chi_, psi_p_, psi_m_, wp_, wm_;
    std::vector<int> side_p_, side_m_;
};

/// Perron-Frobenius action on the jump space, per the saltus transport rules
/// and the pointwise pullback of the regular part.
inline JumpFunction apply_L1(const TransferTable& table, const JumpFunction& phi) {
    return table.apply(TransferTable::Operator::Weighted, phi);
}

/// Unweighted signed operator: difference of branch pullbacks with the same
/// jump bookkeeping (transport weight 1; the cutoff jump at c_1 is the
/// difference of one-sided values at c).
inline JumpFunction apply_L0(const TransferTable& table, const JumpFunction& phi) {
    return table.apply(TransferTable::Operator::Signed, phi);
}

} // namespace linresp
