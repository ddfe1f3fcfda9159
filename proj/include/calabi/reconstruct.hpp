#pragma once

// Legendre-transform reconstruction s(tau), F(tau), f(s) from a momentum
// profile, the pointwise residual of the reduced equation, and the global
// consistency identities (alpha0 integral identity, volume constant).
//
// s(tau) = int_1^tau dt/phi(t) and F(tau) = int_1^tau s dt, gauge-fixed by
// s(1) = F(1) = 0. Both integrals are accumulated per grid panel with the
// certified Taylor-model quadrature; every node carries interval enclosures
// whose widths are checked against the requested tolerance. s diverges
// logarithmically at tau = 0, 2, so reconstruction runs on [eps, 2-eps];
// the endpoint behaviour itself is certified exactly in the profile module.

#include "calabi/profile.hpp"
#include "calabi/quadrature.hpp"
#include "calabi/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace calabi {

struct ReconstructionNode {
    Rational tau;
    Interval s, F, f;  // f = s*tau - F
};

struct Reconstruction {
    std::vector<ReconstructionNode> nodes;
    Rational eps, tol;
};

namespace detail {

inline unsigned quadrature_bits(const Rational& tol) {
    unsigned bits = 192;
    while (bits < 2048 && Rational(Int(1), Int(1) << bits) > tol / 4096) bits += 64;
    return bits;
}

inline LogPoly to_logpoly(const LaurentPoly<Log3Linear>& p, const Log3Linear& log_coeff,
                          unsigned bits) {
    Rational w(Int(1), Int(1) << (bits / 2));
    LogPoly lp;
    lp.poly = to_interval_poly(p, w);
    lp.log_coeff = log_coeff.is_zero() ? Interval(Rational(0)) : log_coeff.eval(w);
    return lp;
}

}  // namespace detail

inline Reconstruction reconstruct(const MomentumProfile& p, const Rational& eps,
                                  const Rational& tol, int n_nodes = 512) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("reconstruct: need 0 < eps < 1");
    if (!(tol > 0)) throw std::invalid_argument("reconstruct: need tol > 0");
    if (n_nodes < 2) throw std::invalid_argument("reconstruct: need at least 2 nodes");

    unsigned bits = detail::quadrature_bits(tol);
    // 1/phi = Q/N as a function of u = 1 + tau
    RationalIntegrand integrand(detail::to_logpoly(p.q.shape, Log3Linear(), bits),
                                detail::to_logpoly(p.N_poly, p.N_log, bits), 8, bits);
    // u-domain panels live in [1+eps, 3-eps]
    Rational total_len = 2 - 2 * eps;
    Rational rate = tol / (8 * total_len);

    Reconstruction rec;
    rec.eps = eps;
    rec.tol = tol;
    rec.nodes.resize(static_cast<size_t>(n_nodes));
    std::vector<Rational> tau(static_cast<size_t>(n_nodes));
    Rational step = total_len / (n_nodes - 1);
    for (int i = 0; i < n_nodes; ++i) tau[static_cast<size_t>(i)] = eps + step * i;

    // forward chain from the anchor tau = 1 (u = 2)
    Interval s(Rational(0)), F(Rational(0));
    Rational prev_u(2);
    for (int i = 0; i < n_nodes; ++i) {
        if (tau[static_cast<size_t>(i)] <= 1) continue;
        Rational u = 1 + tau[static_cast<size_t>(i)];
        PanelResult pr = integrand.integrate(prev_u, u, rate);
        F += s * (u - prev_u) + pr.wfwd;
        s += pr.ds;
        rec.nodes[static_cast<size_t>(i)] = {tau[static_cast<size_t>(i)], s, F, Interval()};
        prev_u = u;
    }
    // backward chain
    s = Interval(Rational(0));
    F = Interval(Rational(0));
    prev_u = Rational(2);
    for (int i = n_nodes - 1; i >= 0; --i) {
        Rational t = tau[static_cast<size_t>(i)];
        if (t > 1) continue;
        Rational u = 1 + t;
        if (u == prev_u) {
            rec.nodes[static_cast<size_t>(i)] = {t, s, F, Interval()};
            continue;
        }
        PanelResult pr = integrand.integrate(u, prev_u, rate);
        Interval s_here = s - pr.ds;
        F = F - s_here * (prev_u - u) - pr.wfwd;
        s = s_here;
        rec.nodes[static_cast<size_t>(i)] = {t, s, F, Interval()};
        prev_u = u;
    }

    for (auto& n : rec.nodes) {
        if (n.s.width() > tol || n.F.width() > tol)
            throw QuadratureError("reconstruct: node enclosure exceeds tol; raise tol or eps");
        n.f = n.s * n.tau - n.F;
    }
    return rec;
}

/// Max over the grid of |rho(tau)/rho(1) - 1| with
/// rho = e^{s(1-tau)+F} / (phi Q); the reduced equation makes rho constant,
/// so this measures quadrature error only.
inline double pde_residual(const Reconstruction& rec, const MomentumProfile& p) {
    double phi1 = p.phi_double(Rational(1));
    double q1 = to_double(p.Q_interval(Rational(2), pow10_neg(17)).mid());
    double rho1 = 1.0 / (phi1 * q1);  // s(1) = F(1) = 0
    double worst = 0;
    for (const auto& n : rec.nodes) {
        double sv = to_double(n.s.mid()), Fv = to_double(n.F.mid());
        double x = sv * (1.0 - to_double(n.tau)) + Fv;
        double phi = p.phi_double(n.tau);
        double q = to_double(p.Q_interval(1 + n.tau, pow10_neg(17)).mid());
        double rho = std::exp(x) / (phi * q);
        worst = std::max(worst, std::fabs(rho / rho1 - 1.0));
    }
    return worst;
}

// --- global consistency identities --------------------------------------------

/// alpha0 = 2 (2pi)^{k+1} int_0^2 Q dtau, the cross-formula identity tying
/// C~_k, R_k, C_k and the constraint together.
struct Alpha0Identity {
    bool exact_ok = false;
    Interval alpha0;         // certified enclosure of alpha0
    Interval integral_side;  // certified enclosure of 2 (2pi)^{k+1} int Q
};

inline Alpha0Identity alpha0_identity(const ProfilePoly& q, const ScaledConstant& ratio) {
    const Scenario& s = q.scen;
    ScaledConstant alpha0 = ratio.scaled_by(s.alpha1);

    Log3Linear shape_int = integrate_0_2(q.shape);
    ScaledConstant rhs;
    rhs.base = PiGraded(Log3Linear(Rational(2)), static_cast<int>(s.k) + 1) * q.prefactor *
               PiGraded(shape_int);
    rhs.ratio = q.b;
    rhs.ratio_pow = q.times_bsq ? 2 : 0;

    Alpha0Identity out;
    bool family_match = alpha0.ratio_pow == rhs.ratio_pow &&
                        (!q.times_bsq || (alpha0.ratio.num == rhs.ratio.num &&
                                          alpha0.ratio.den == rhs.ratio.den));
    out.exact_ok = family_match && alpha0.base == rhs.base;
    Rational w = pow10_neg(21);
    out.alpha0 = alpha0.eval(w);
    out.integral_side = rhs.eval(w);
    return out;
}

inline Alpha0Identity alpha0_identity(const Scenario& s) {
    ScaledConstant ratio = coupling_ratio(s);
    return alpha0_identity(build_Q(s, ratio), ratio);
}

/// C_k via two independent routes: the printed closed form
/// k! (3^{k+1}-1) (2pi)^{k+1} against the volume integral route.
inline bool volume_identity(long k) {
    PiGraded closed(Log3Linear(factorial(k) * three_pow_minus_1(k + 1)), static_cast<int>(k) + 1);
    return closed == volume_constant(k);
}

// --- CSV emission --------------------------------------------------------------

/// Columns: tau, phi, s, F, f, rho, rho_rel_dev. One row per grid node.
inline std::string reconstruction_csv(const Reconstruction& rec, const MomentumProfile& p) {
    std::string out = "tau,phi,s,F,f,rho,rho_rel_dev\n";
    double phi1 = p.phi_double(Rational(1));
    double q1 = to_double(p.Q_interval(Rational(2), pow10_neg(17)).mid());
    double rho1 = 1.0 / (phi1 * q1);
    char buf[256];
    for (const auto& n : rec.nodes) {
        double tv = to_double(n.tau);
        double sv = to_double(n.s.mid()), Fv = to_double(n.F.mid());
        double fv = to_double(n.f.mid());
        double phi = p.phi_double(n.tau);
        double q = to_double(p.Q_interval(1 + n.tau, pow10_neg(17)).mid());
        double rho = std::exp(sv * (1.0 - tv) + Fv) / (phi * q);
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", tv, phi,
                      sv, Fv, fv, rho, std::fabs(rho / rho1 - 1.0));
        out += buf;
    }
    return out;
}

}  // namespace calabi
