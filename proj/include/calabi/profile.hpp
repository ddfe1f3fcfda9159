#pragma once

// The reduced polynomial Q (G_k / D_k / P_k), the momentum profile
// phi = N/Q with N(tau) = int_0^tau (1-t) Q(t) dt, the obstruction integral,
// exact boundary certification and the solvable/no-solution verdict.
//
// Q is stored factored: Q = prefactor * [b_k^2] * shape, with `shape` an
// exact Laurent polynomial (Log3Linear coefficients) and the prefactor a
// positive PiGraded. phi is invariant under positive scaling of Q, so every
// profile computation runs on `shape`; the prefactor only matters for
// reporting and the alpha0 integral identity.
//
// For the General k=1 twist, (1-t)Q has a u^{-1} term and N picks up an
// exact logarithmic part N_log * ln(u); it is carried explicitly.

#include "calabi/enclosure.hpp"
#include "calabi/laurent.hpp"
#include "calabi/scenario.hpp"
#include "calabi/sign.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace calabi {

struct PoleInDomain : std::domain_error {
    SignCertificate certificate;
    explicit PoleInDomain(SignCertificate c)
        : std::domain_error("build_profile: Q changes sign on [0,2]; witness bracket u in [" +
                            to_display_string(c.witness_lo) + ", " +
                            to_display_string(c.witness_hi) + "]"),
          certificate(std::move(c)) {}
};

struct ProfilePoly {
    Scenario scen;
    LaurentPoly<Log3Linear> shape;  // exact; full Q = prefactor * [b^2] * shape
    PiGraded prefactor;             // positive
    bool times_bsq = false;
    Log3Ratio b;                    // set when times_bsq

    ProfilePoly scaled(const Rational& c) const {
        if (c <= 0) throw std::invalid_argument("ProfilePoly::scaled: need c > 0");
        ProfilePoly r = *this;
        r.prefactor = r.prefactor * c;
        return r;
    }
};

/// Builds Q for a scenario at a given alpha0/alpha1 ratio. The ratio must be
/// of the scenario's own family shape: exact PiGraded for Even/Odd, a
/// b_k^2-multiple for General (as produced by coupling_ratio, possibly
/// rescaled). That keeps every shape coefficient exact.
inline ProfilePoly build_Q(const Scenario& s, const ScaledConstant& ratio) {
    s.validate();
    const long k = s.k;
    detail::FiberCoeff low = detail::low_coeff(s);
    AbBasis stat = detail::high_coeff_static_parts(s);
    // alpha1 (k+1)! / (2 C_k): maps alpha0/alpha1 to the u^k coefficient
    PiGraded ratio_to_high =
        PiGraded(Log3Linear(s.alpha1 * factorial(k + 1) / 2)) / volume_constant(k);

    PiGraded high;  // u^k coefficient, divided by b^2 in the General case
    if (s.kind == AnsatzCase::General) {
        if (ratio.ratio_pow != 2)
            throw std::invalid_argument("build_Q: General case needs a b^2-family ratio");
        if (!stat.asq.is_zero())
            throw std::logic_error("build_Q: a_k^2 terms failed to cancel");
        high = ratio.base * ratio_to_high + stat.bsq;
    } else {
        high = ratio.exact_value() * ratio_to_high + stat.one;
    }

    PiGraded high_over_low = high / low.scalar;
    if (high_over_low.two_pi_pow != 0)
        throw std::invalid_argument("build_Q: ratio has the wrong (2pi) grade for this k");

    ProfilePoly q;
    q.scen = s;
    q.prefactor = low.scalar;
    q.times_bsq = low.times_bsq;
    if (low.times_bsq) q.b = ak_bk(k, s.m1, s.m2).second;
    q.shape.set(static_cast<int>(k) - 2, Log3Linear(Rational(1)));
    q.shape.add_term(static_cast<int>(k), high_over_low.coeff);
    return q;
}

/// Exact obstruction integral int_0^2 (1-t) Q dt, split as
/// value = prefactor * [b^2] * shape_integral. Zero iff phi(2) = 0, and the
/// zero test needs only the exact shape part (the prefix is positive).
struct ObstructionResult {
    Log3Linear shape_integral;
    ScaledConstant value;

    bool is_zero() const { return shape_integral.is_zero(); }
    int sign() const { return shape_integral.sign(); }
};

inline ObstructionResult obstruction_integral(const ProfilePoly& q) {
    ObstructionResult r;
    r.shape_integral = weighted_integral_0_2(q.shape);
    r.value.base = q.prefactor * PiGraded(r.shape_integral);
    r.value.ratio = q.b;
    r.value.ratio_pow = q.times_bsq ? 2 : 0;
    return r;
}

struct MomentumProfile {
    ProfilePoly q;
    LaurentPoly<Log3Linear> N_poly;  // polynomial part of N in u
    Log3Linear N_log;                // coefficient of ln(u); rational in scope
    SignCertificate q_certificate;

    /// N(u) exactly, at u = 1 or u = 3 (where ln(u) stays in the module).
    Log3Linear N_exact_at_ends(const Rational& u) const {
        Log3Linear poly = N_poly.is_zero() ? Log3Linear() : N_poly.eval(u);
        if (u == 1) return poly;
        if (u == 3) {
            if (!N_log.is_rational())
                throw std::domain_error("MomentumProfile: irrational log coefficient");
            return poly + Log3Linear(Rational(0), N_log.rational_value());
        }
        throw std::domain_error("N_exact_at_ends: only u = 1 and u = 3 are exact here");
    }

    bool has_log_term() const { return !N_log.is_zero(); }

    /// True when the shape (hence N and Q) has purely rational coefficients
    /// and no log part, so phi(tau) is an exact rational for rational tau.
    bool phi_is_rational() const { return all_rational(q.shape) && N_log.is_zero(); }

    Rational phi_exact(const Rational& tau) const {
        if (!phi_is_rational())
            throw std::domain_error("phi_exact: profile has irrational parts; use phi_interval");
        Rational u = 1 + tau;
        LaurentPoly<Rational> n = to_rational_poly(N_poly), d = to_rational_poly(q.shape);
        Rational den = d.eval(u);
        if (den == 0) throw std::domain_error("phi_exact: Q vanishes at evaluation point");
        return (n.is_zero() ? Rational(0) : n.eval(u)) / den;
    }

    Interval N_interval(const Rational& u, const Rational& coeff_width) const {
        Interval v = N_poly.is_zero() ? Interval(Rational(0))
                                      : eval_on(to_interval_poly(N_poly, coeff_width),
                                                Interval(u, u));
        if (!N_log.is_zero())
            v += N_log.eval(coeff_width) * ln_rational_enclosure(u, coeff_width);
        return v;
    }
    Interval Q_interval(const Rational& u, const Rational& coeff_width) const {
        return eval_on(to_interval_poly(q.shape, coeff_width), Interval(u, u));
    }

    Interval phi_interval(const Rational& tau, const Rational& width_bound) const {
        Rational u = 1 + tau;
        Rational w = width_bound / 16;
        for (;;) {
            Interval n = N_interval(u, w), d = Q_interval(u, w);
            if (!d.contains_zero()) {
                Interval r = n / d;
                if (r.width() <= width_bound) return r;
            }
            w /= 4096;
        }
    }

    double phi_double(const Rational& tau) const {
        if (tau == 0 || tau == 2) return 0.0;
        if (phi_is_rational()) return to_double(phi_exact(tau));
        return to_double(phi_interval(tau, pow10_neg(17)).mid());
    }
};

/// Builds the profile phi = N/Q; requires Q sign-definite on the domain.
inline MomentumProfile build_profile(const ProfilePoly& q) {
    MomentumProfile p;
    p.q = q;
    p.q_certificate = sign_on_domain(q.shape);
    if (p.q_certificate.verdict == SignCertificate::Verdict::SignChange)
        throw PoleInDomain(p.q_certificate);

    // N = antiderivative of (2-u) * shape, anchored so N(0) = 0 (u = 1)
    LaurentPoly<Log3Linear> integrand = q.shape.scaled(Rational(2)) - q.shape.shifted(1);
    auto anti = antiderivative_with_log(integrand);
    p.N_poly = anti.poly;
    p.N_log = anti.log_coeff;
    if (!p.N_poly.is_zero())
        p.N_poly.add_term(0, Log3Linear() - p.N_poly.eval(Rational(1)));
    return p;
}

/// Profile built directly from a raw Q polynomial (scale-invariance checks,
/// ad-hoc inputs). The prefactor is taken as 1.
inline MomentumProfile build_profile_from_poly(const LaurentPoly<Log3Linear>& Q,
                                               const Scenario& tag) {
    ProfilePoly q;
    q.scen = tag;
    q.shape = Q;
    q.prefactor = PiGraded(Rational(1));
    return build_profile(q);
}

// --- boundary conditions -----------------------------------------------------

struct BoundaryEntry {
    std::string name;
    bool pass = false;
    std::string residue;  // "0" on pass; exact description otherwise
};

struct BoundaryReport {
    // order: phi(0)=0, phi'(0)=1, phi(2)=0, phi'(2)=-1
    std::vector<BoundaryEntry> entries;
    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
};

/// All four checks are exact. With phi = N/Q and N(end) the exact endpoint
/// value, phi'(end) - (+1|-1) = -N(end) Q'(end) / Q(end)^2, so the derivative
/// checks reduce to exact zero tests of N(end) and Q'(end); no limits are
/// taken (Q(end) != 0 is certified by the sign certificate).
inline BoundaryReport boundary_check(const MomentumProfile& p) {
    BoundaryReport rep;
    Log3Linear n1 = p.N_exact_at_ends(Rational(1));
    Log3Linear n3 = p.N_exact_at_ends(Rational(3));
    Log3Linear q1 = p.q.shape.eval(Rational(1));
    Log3Linear q3 = p.q.shape.eval(Rational(3));
    LaurentPoly<Log3Linear> dq = p.q.shape.derivative();
    Log3Linear dq1 = dq.is_zero() ? Log3Linear() : dq.eval(Rational(1));
    Log3Linear dq3 = dq.is_zero() ? Log3Linear() : dq.eval(Rational(3));

    auto ratio_str = [](const Log3Linear& num, const Log3Linear& den) {
        return "(" + num.str() + ")/(" + den.str() + ")";
    };

    rep.entries.push_back({"phi(0) = 0", n1.is_zero() && q1.sign() != 0,
                           n1.is_zero() ? "0" : ratio_str(n1, q1)});
    // phi'(0) - 1 = -N(1) Q'(1) / Q(1)^2
    bool d0 = (n1.is_zero() || dq1.is_zero()) && q1.sign() != 0;
    rep.entries.push_back({"phi'(0) = 1", d0, d0 ? "0" : "-" + ratio_str(n1, q1) + "*Q'/Q"});
    rep.entries.push_back({"phi(2) = 0", n3.is_zero() && q3.sign() != 0,
                           n3.is_zero() ? "0" : ratio_str(n3, q3)});
    bool d2 = (n3.is_zero() || dq3.is_zero()) && q3.sign() != 0;
    rep.entries.push_back({"phi'(2) = -1", d2, d2 ? "0" : "-" + ratio_str(n3, q3) + "*Q'/Q"});
    return rep;
}

// --- solvability --------------------------------------------------------------

struct SolvabilityReport {
    enum class Verdict { Solvable, NoSolution };

    Scenario scen;
    Verdict verdict = Verdict::NoSolution;
    /// The constraint ratio alpha0/alpha1 (Solvable), or the pseudo-constraint
    /// that kills the obstruction before positivity fails (NoSolution).
    ScaledConstant coupling;
    SignCertificate positivity;
    std::optional<BoundaryReport> boundary;
    std::optional<MomentumProfile> profile;

    bool solvable() const { return verdict == Verdict::Solvable; }
};

/// Computes the constraint, builds Q at it and certifies the sign of Q.
/// The verdicts of the five solvable families and all the k >= 5 failures
/// come out of the certificate, not out of a table.
inline SolvabilityReport solvability(const Scenario& s) {
    SolvabilityReport rep;
    rep.scen = s;
    rep.coupling = coupling_ratio(s);
    ProfilePoly q = build_Q(s, rep.coupling);
    rep.positivity = sign_on_domain(q.shape);
    if (rep.positivity.verdict == SignCertificate::Verdict::SignChange) {
        rep.verdict = SolvabilityReport::Verdict::NoSolution;
        return rep;
    }
    if (rep.positivity.verdict == SignCertificate::Verdict::NegativeOnDomain)
        throw std::logic_error("solvability: negative-definite Q at the constraint");
    rep.verdict = SolvabilityReport::Verdict::Solvable;
    rep.profile = build_profile(q);
    rep.boundary = boundary_check(*rep.profile);
    return rep;
}

}  // namespace calabi
