#pragma once

// The three ansatz cases on X_k = P(L + O) over (P^1)^k and their
// topological constants. Everything is derived from the reduced integrals,
// not transcribed: C_k from the volume integral, C~_k from the curvature
// density integral, and the coupling ratio alpha0/alpha1 from the phi(2)=0
// obstruction.
//
// Case-1 (General) constants contain a_k^2 and b_k^2, which are squares of
// Log3Linear ratios and so leave the Q + Q*ln3 module. They are kept in a
// {1, a^2, b^2} coefficient basis with exact PiGraded entries; the squares
// are only materialized as certified intervals. The exact basis bookkeeping
// is what lets the a^2 terms cancel identically in the constraint.

#include "calabi/interval.hpp"
#include "calabi/laurent.hpp"
#include "calabi/log3.hpp"
#include "calabi/pi_graded.hpp"
#include "calabi/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace calabi {

struct ScenarioError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class AnsatzCase { General, EvenAlternating, OddWeighted };

inline std::string case_name(AnsatzCase c) {
    switch (c) {
        case AnsatzCase::General: return "general";
        case AnsatzCase::EvenAlternating: return "even";
        case AnsatzCase::OddWeighted: return "odd";
    }
    return "?";
}

struct Scenario {
    AnsatzCase kind = AnsatzCase::EvenAlternating;
    long k = 2;
    Int m1 = 0, m2 = 0;       // twisting integers, General only
    Rational alpha1{1};       // > 0

    static Scenario general(long k, Int m1, Int m2, Rational alpha1 = Rational(1)) {
        Scenario s{AnsatzCase::General, k, std::move(m1), std::move(m2), std::move(alpha1)};
        s.validate();
        return s;
    }
    static Scenario even(long k, Rational alpha1 = Rational(1)) {
        Scenario s{AnsatzCase::EvenAlternating, k, 0, 0, std::move(alpha1)};
        s.validate();
        return s;
    }
    static Scenario odd(long k, Rational alpha1 = Rational(1)) {
        Scenario s{AnsatzCase::OddWeighted, k, 0, 0, std::move(alpha1)};
        s.validate();
        return s;
    }

    void validate() const {
        if (alpha1 <= 0) throw ScenarioError("scenario: alpha1 must be > 0");
        switch (kind) {
            case AnsatzCase::General:
                if (k < 1) throw ScenarioError("scenario: general case needs k >= 1");
                if (m1 == 0 && m2 == 0)
                    throw ScenarioError("scenario: (m1,m2) = (0,0) is excluded");
                break;
            case AnsatzCase::EvenAlternating:
                if (k < 2 || k % 2 != 0)
                    throw ScenarioError("scenario: even case needs even k >= 2");
                break;
            case AnsatzCase::OddWeighted:
                if (k < 3 || k % 2 != 1)
                    throw ScenarioError("scenario: odd case needs odd k >= 3");
                break;
        }
    }

    std::string name() const {
        std::string n = case_name(kind) + " k=" + std::to_string(k);
        if (kind == AnsatzCase::General)
            n += " (m1=" + m1.str() + ", m2=" + m2.str() + ")";
        return n;
    }
};

/// A ratio of two Log3Linear values, e.g. a_k = (m1 + k m2 ln3)/(2 + 3k ln3).
/// Kept symbolic; numeric use goes through certified enclosures.
struct Log3Ratio {
    Log3Linear num;
    Log3Linear den;

    bool is_zero() const { return num.is_zero(); }

    Interval eval(const Rational& width_bound) const {
        Rational w = width_bound / 4;
        for (;;) {
            Interval n = num.eval(w), d = den.eval(w);
            if (!d.contains_zero()) {
                Interval r = n / d;
                if (r.width() <= width_bound) return r;
            }
            w /= 4096;
        }
    }

    std::string str() const { return "(" + num.str() + ")/(" + den.str() + ")"; }
};

/// base * ratio^ratio_pow; ratio_pow = 0 means an exact PiGraded value.
struct ScaledConstant {
    PiGraded base;
    Log3Ratio ratio;
    int ratio_pow = 0;

    bool exact() const { return ratio_pow == 0; }
    const PiGraded& exact_value() const {
        if (!exact()) throw std::domain_error("ScaledConstant: value is not an exact PiGraded");
        return base;
    }

    Interval eval(const Rational& width_bound) const {
        if (ratio_pow == 0) return base.eval(width_bound);
        Rational w = width_bound / 4;
        for (;;) {
            Interval r = base.eval(w) * ratio.eval(w).pow(ratio_pow);
            if (r.width() <= width_bound) return r;
            w /= 4096;
        }
    }

    ScaledConstant scaled_by(const Rational& c) const {
        return {base * c, ratio, ratio_pow};
    }

    std::string str() const {
        if (ratio_pow == 0) return base.str();
        std::string r = ratio.str() + (ratio_pow == 1 ? "" : "^" + std::to_string(ratio_pow));
        return base.str() + " * " + r;
    }
};

/// Value of the form one + asq * a_k^2 + bsq * b_k^2 with exact coefficients.
struct AbBasis {
    PiGraded one, asq, bsq;

    friend AbBasis operator+(const AbBasis& x, const AbBasis& y) {
        return {x.one + y.one, x.asq + y.asq, x.bsq + y.bsq};
    }
    friend AbBasis operator-(const AbBasis& x, const AbBasis& y) {
        return {x.one - y.one, x.asq - y.asq, x.bsq - y.bsq};
    }
    bool pure() const { return asq.is_zero() && bsq.is_zero(); }

    Interval eval(const Log3Ratio& a, const Log3Ratio& b, const Rational& width_bound) const {
        Rational w = width_bound / 8;
        for (;;) {
            Interval r = one.eval(w) + asq.eval(w) * a.eval(w).pow(2) +
                         bsq.eval(w) * b.eval(w).pow(2);
            if (r.width() <= width_bound) return r;
            w /= 4096;
        }
    }
};

inline Rational factorial(long n) {
    Rational r(1);
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Rational three_pow_minus_1(long e) {
    return Rational(pow_int(Int(3), static_cast<unsigned>(e)) - 1);
}

/// C_k = (k+1)!(2pi)^{k+1}(3^{k+1}-1)/(k+1) = k!(3^{k+1}-1)(2pi)^{k+1},
/// computed from the fiberwise volume integral (the phi factor cancels
/// against d tau / phi, so the value is profile independent).
inline PiGraded volume_constant(long k) {
    if (k < 1) throw ScenarioError("volume_constant: k >= 1 required");
    Rational integral = integral_u_pow(static_cast<int>(k)).rational_value();  // (3^{k+1}-1)/(k+1)
    return PiGraded(Log3Linear(factorial(k + 1) * integral), static_cast<int>(k) + 1);
}

/// a_k = (m1 + k m2 ln3)/(2 + 3k ln3), b_k = (2 m2 - 3 m1)/(2 + 3k ln3).
inline std::pair<Log3Ratio, Log3Ratio> ak_bk(long k, const Int& m1, const Int& m2) {
    if (m1 == 0 && m2 == 0) throw ScenarioError("ak_bk: (m1,m2) = (0,0) is excluded");
    Log3Linear den(Rational(2), Rational(3 * k));
    Log3Ratio a{Log3Linear(Rational(m1), Rational(m2 * k)), den};
    Log3Ratio b{Log3Linear(Rational(2 * m2 - 3 * m1), Rational(0)), den};
    return {a, b};
}

/// C~_k in the {1, a^2, b^2} basis, from the reduced curvature density:
/// C~_k = -alpha1 (2/(k-1)!) int F^2 w^{k-1} / int vol_w, where the density
/// integral reduces to weighted u-moments I_m on [1,3].
inline AbBasis c_tilde_parts(const Scenario& s) {
    s.validate();
    const long k = s.k;
    // common prefactor 2 alpha1 (k+1) / ((k-1)! (3^{k+1}-1)) * (2pi)^{-2}
    PiGraded pref(Log3Linear(Rational(2) * s.alpha1 * Rational(k + 1) /
                             (factorial(k - 1) * three_pow_minus_1(k + 1))),
                  -2);
    Log3Linear Ik = integral_u_pow(static_cast<int>(k));
    Log3Linear Ikm2 = integral_u_pow(static_cast<int>(k) - 2);
    switch (s.kind) {
        case AnsatzCase::EvenAlternating: {
            // density (k+1)! u^k - k! u^{k-2}
            Log3Linear d = factorial(k + 1) * Ik - factorial(k) * Ikm2;
            return {pref * PiGraded(d), PiGraded(), PiGraded()};
        }
        case AnsatzCase::OddWeighted: {
            // density (k+1)! u^k - k(k-1)(k-1)! u^{k-2}
            Log3Linear d = factorial(k + 1) * Ik -
                           Rational(k * (k - 1)) * factorial(k - 1) * Ikm2;
            return {pref * PiGraded(d), PiGraded(), PiGraded()};
        }
        case AnsatzCase::General: {
            // density (k+1)! (a^2 u^k - b^2 u^{k-2})
            return {PiGraded(), pref * PiGraded(factorial(k + 1) * Ik),
                    pref * PiGraded(Log3Linear() - factorial(k + 1) * Ikm2)};
        }
    }
    throw std::logic_error("c_tilde_parts: unreachable");
}

/// lambda: (k+1)/(2pi) for the Even/Odd twists, (k+1) a_k/(2pi) for General.
inline ScaledConstant lambda_constant(const Scenario& s) {
    s.validate();
    PiGraded base(Log3Linear(Rational(s.k + 1)), -1);
    if (s.kind != AnsatzCase::General) return {base, Log3Ratio{}, 0};
    auto [a, b] = ak_bk(s.k, s.m1, s.m2);
    return {base, a, 1};
}

namespace detail {

/// u^k fiber coefficient of the reduced polynomial before the constraint:
/// ratio-dependent part excluded. Returned in the {1,a^2,b^2} basis.
inline AbBasis high_coeff_static_parts(const Scenario& s) {
    const long k = s.k;
    PiGraded minus_2a1kk1(Log3Linear(Rational(-2) * s.alpha1 * Rational(k * (k + 1))), -2);
    AbBasis ct = c_tilde_parts(s);
    if (s.kind == AnsatzCase::General)
        return AbBasis{PiGraded(), minus_2a1kk1, PiGraded()} + ct;  // w = a_k^2
    return AbBasis{minus_2a1kk1, PiGraded(), PiGraded()} + ct;      // w = 1
}

/// Low-order (u^{k-2}) coefficient; times_bsq marks the General-case b_k^2.
struct FiberCoeff {
    PiGraded scalar;
    bool times_bsq = false;
};

inline FiberCoeff low_coeff(const Scenario& s) {
    const long k = s.k;
    switch (s.kind) {
        case AnsatzCase::EvenAlternating:
            return {PiGraded(Log3Linear(Rational(2) * s.alpha1 * Rational(k)), -2), false};
        case AnsatzCase::OddWeighted:
            return {PiGraded(Log3Linear(Rational(2) * s.alpha1 * Rational(k * (k - 1))), -2),
                    false};
        case AnsatzCase::General:
            return {PiGraded(Log3Linear(Rational(2) * s.alpha1 * Rational((k + 1) * k)), -2),
                    true};
    }
    throw std::logic_error("low_coeff: unreachable");
}

}  // namespace detail

/// alpha0/alpha1 required by the obstruction integral int_0^2 (1-t)Q dt = 0,
/// solved for the ratio (never transcribed from the closed forms).
/// Even/Odd yield an exact PiGraded; General yields w_k * b_k^2 with w_k an
/// exact PiGraded, because the a_k^2 contributions cancel identically.
inline ScaledConstant coupling_ratio(const Scenario& s) {
    s.validate();
    const long k = s.k;
    Log3Linear Rk = compute_R(k);
    detail::FiberCoeff low = detail::low_coeff(s);
    AbBasis stat = detail::high_coeff_static_parts(s);
    // constraint: ratio * alpha1 (k+1)!/(2 C_k) + stat = -R_k * low
    PiGraded to_ratio =
        volume_constant(k) * Rational(2) / (s.alpha1 * factorial(k + 1));  // 2C_k/(a1 (k+1)!)

    if (s.kind != AnsatzCase::General) {
        if (!stat.pure())
            throw std::logic_error("coupling_ratio: unexpected a^2/b^2 parts in Even/Odd case");
        PiGraded ratio = (PiGraded() - (PiGraded(Rk) * low.scalar) - stat.one) * to_ratio;
        return {ratio, Log3Ratio{}, 0};
    }

    auto [a, b] = ak_bk(k, s.m1, s.m2);
    if (b.is_zero())
        throw ScenarioError(
            "coupling_ratio: b_k = 0 (2 m2 = 3 m1) forces alpha0 = 0, excluded by alpha0 > 0");
    if (!stat.one.is_zero())
        throw std::logic_error("coupling_ratio: unexpected basis-1 part in General case");
    if (!stat.asq.is_zero())
        throw std::logic_error("coupling_ratio: a_k^2 terms failed to cancel");
    PiGraded w = (PiGraded() - (PiGraded(Rk) * low.scalar) - stat.bsq) * to_ratio;
    return {w, b, 2};
}

/// Everything the reports print for one scenario.
struct ConstantSet {
    PiGraded C_k;
    Log3Linear R_k;
    ScaledConstant lambda;
    AbBasis c_tilde;
    ScaledConstant coupling;                            // alpha0/alpha1
    std::optional<std::pair<Log3Ratio, Log3Ratio>> ab;  // General only
};

inline ConstantSet constant_set(const Scenario& s) {
    s.validate();
    ConstantSet c;
    c.C_k = volume_constant(s.k);
    c.R_k = compute_R(s.k);
    c.lambda = lambda_constant(s);
    c.c_tilde = c_tilde_parts(s);
    c.coupling = coupling_ratio(s);
    if (s.kind == AnsatzCase::General) c.ab = ak_bk(s.k, s.m1, s.m2);
    return c;
}

}  // namespace calabi
