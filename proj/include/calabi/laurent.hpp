#pragma once

// Sparse Laurent polynomials in u = 1 + tau on the momentum interval
// tau in [0,2], i.e. u in [1,3]. Coefficients are uniformly Rational,
// Log3Linear or Interval per instance. The carriers built from the reduced
// equations keep exponents >= -1; derived objects (derivatives) may dip
// lower, the container allows it.

#include "calabi/interval.hpp"
#include "calabi/log3.hpp"
#include "calabi/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace calabi {

inline bool scalar_is_zero(const Rational& c) { return c == 0; }
inline bool scalar_is_zero(const Log3Linear& c) { return c.is_zero(); }
inline bool scalar_is_zero(const Interval& c) { return c.lo == 0 && c.hi == 0; }

template <class C>
struct LaurentPoly {
    // exponent -> coefficient; zero coefficients are never stored
    std::map<int, C> terms;

    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly monomial(int e, C c) {
        LaurentPoly p;
        p.set(e, std::move(c));
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    int min_exp() const {
        if (is_zero()) throw std::domain_error("LaurentPoly: zero polynomial has no exponents");
        return terms.begin()->first;
    }
    int max_exp() const {
        if (is_zero()) throw std::domain_error("LaurentPoly: zero polynomial has no exponents");
        return terms.rbegin()->first;
    }

    void set(int e, C c) {
        if (scalar_is_zero(c)) terms.erase(e); else terms[e] = std::move(c);
    }
    void add_term(int e, const C& c) {
        auto it = terms.find(e);
        if (it == terms.end()) { set(e, c); return; }
        it->second += c;
        if (scalar_is_zero(it->second)) terms.erase(it);
    }
    C coeff(int e) const {
        auto it = terms.find(e);
        return it == terms.end() ? C(Rational(0)) : it->second;
    }

    friend LaurentPoly operator+(const LaurentPoly& x, const LaurentPoly& y) {
        LaurentPoly r = x;
        for (const auto& [e, c] : y.terms) r.add_term(e, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& x, const LaurentPoly& y) {
        LaurentPoly r = x;
        for (const auto& [e, c] : y.terms) r.add_term(e, -c);
        return r;
    }

    template <class S>
    LaurentPoly scaled(const S& s) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms) r.set(e, c * s);
        return r;
    }

    LaurentPoly shifted(int de) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms) r.set(e + de, c);
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
        LaurentPoly r;
        for (const auto& [ex, cx] : x.terms)
            for (const auto& [ey, cy] : y.terms) r.add_term(ex + ey, cx * cy);
        return r;
    }

    LaurentPoly derivative() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms)
            if (e != 0) r.set(e - 1, c * Rational(e));
        return r;
    }

    /// Exact evaluation at rational u != 0.
    C eval(const Rational& u) const {
        C acc{Rational(0)};
        for (const auto& [e, c] : terms) acc += c * pow_rat(u, e);
        return acc;
    }

    friend bool operator==(const LaurentPoly& x, const LaurentPoly& y) {
        return x.terms == y.terms;
    }

    std::string str() const;
};

/// Interval evaluation over a box u (requires 0 not in u for negative exps).
inline Interval eval_on(const LaurentPoly<Interval>& p, const Interval& u) {
    Interval acc(Rational(0));
    for (const auto& [e, c] : p.terms) acc += c * u.pow(e);
    return acc;
}

inline LaurentPoly<Interval> to_interval_poly(const LaurentPoly<Log3Linear>& p,
                                              const Rational& coeff_width) {
    LaurentPoly<Interval> r;
    for (const auto& [e, c] : p.terms) r.set(e, c.eval(coeff_width));
    return r;
}

inline LaurentPoly<Interval> to_interval_poly(const LaurentPoly<Rational>& p) {
    LaurentPoly<Interval> r;
    for (const auto& [e, c] : p.terms) r.set(e, Interval(c));
    return r;
}

inline LaurentPoly<Log3Linear> to_log3_poly(const LaurentPoly<Rational>& p) {
    LaurentPoly<Log3Linear> r;
    for (const auto& [e, c] : p.terms) r.set(e, Log3Linear(c));
    return r;
}

/// True when every coefficient has b == 0; such a poly can be demoted.
inline bool all_rational(const LaurentPoly<Log3Linear>& p) {
    for (const auto& [e, c] : p.terms)
        if (!c.is_rational()) return false;
    return true;
}

inline LaurentPoly<Rational> to_rational_poly(const LaurentPoly<Log3Linear>& p) {
    LaurentPoly<Rational> r;
    for (const auto& [e, c] : p.terms) r.set(e, c.rational_value());
    return r;
}

/// Antiderivative of a Laurent polynomial: the u^{-1} term integrates to a
/// logarithm, returned separately as log_coeff * ln(u).
template <class C>
struct AntiderivativeParts {
    LaurentPoly<C> poly;
    C log_coeff{Rational(0)};
};

template <class C>
AntiderivativeParts<C> antiderivative_with_log(const LaurentPoly<C>& p) {
    AntiderivativeParts<C> out;
    for (const auto& [e, c] : p.terms) {
        if (e == -1) out.log_coeff = c;
        else out.poly.set(e + 1, c / Rational(e + 1));
    }
    return out;
}

// --- weighted moment integrals ---------------------------------------------

/// I_m = integral of u^m over u in [1,3]; ln3 when m = -1. m >= -1 only.
inline Log3Linear integral_u_pow(int m) {
    if (m < -1) throw std::domain_error("integral_u_pow: exponent below -1 unsupported");
    if (m == -1) return Log3Linear::ln3();
    return Log3Linear(Rational(pow_int(Int(3), static_cast<unsigned>(m + 1)) - 1, m + 1));
}

/// A_m = integral over [0,2] of (1-t)(1+t)^m dt = 2 I_m - I_{m+1}.
/// Pure rational for m >= 0; A_{-1} = 2 ln3 - 2.
inline Log3Linear moment_integral(int m) {
    if (m < -1) throw std::domain_error("moment_integral: exponent below -1 unsupported");
    return Rational(2) * integral_u_pow(m) - integral_u_pow(m + 1);
}

/// integral over [0,2] of p(1+t) dt = sum c_e I_e.
inline Log3Linear integrate_0_2(const LaurentPoly<Log3Linear>& p) {
    Log3Linear acc;
    for (const auto& [e, c] : p.terms) acc += c * integral_u_pow(e);
    return acc;
}
inline Log3Linear integrate_0_2(const LaurentPoly<Rational>& p) {
    return integrate_0_2(to_log3_poly(p));
}

/// integral over [0,2] of (1-t) p(1+t) dt = sum c_e A_e.
inline Log3Linear weighted_integral_0_2(const LaurentPoly<Log3Linear>& p) {
    Log3Linear acc;
    for (const auto& [e, c] : p.terms) acc += c * moment_integral(e);
    return acc;
}
inline Log3Linear weighted_integral_0_2(const LaurentPoly<Rational>& p) {
    return weighted_integral_0_2(to_log3_poly(p));
}

/// Closed form of A_k for k >= 1:
/// 3^{k+1}(1-k)/((k+1)(k+2)) - (k+3)/((k+1)(k+2)).
inline Rational a_closed_form(long k) {
    if (k < 1) throw std::domain_error("a_closed_form: requires k >= 1");
    Int p3 = pow_int(Int(3), static_cast<unsigned>(k + 1));
    Int den = Int(k + 1) * (k + 2);
    return Rational(p3 * (1 - k) - (k + 3), den);
}

/// R_k = A_{k-2} / A_k; rational for k >= 2, has an ln3 part only for k = 1.
inline Log3Linear compute_R(long k) {
    if (k < 1) throw std::domain_error("compute_R: requires k >= 1");
    Log3Linear numer = moment_integral(static_cast<int>(k) - 2);
    Rational denom = moment_integral(static_cast<int>(k)).rational_value();
    return numer / denom;  // A_k != 0 for k >= 1
}

struct RkBounds {
    bool upper_ok = false;  // A_k - A_{k-2} < 0  (gives R_k < 1)
    bool lower_ok = false;  // A_k - 9 A_{k-2} > 0 (gives R_k > 1/9)
};

/// Exact big-integer verification of the two inequalities behind
/// 1 > R_k > 1/9 for k >= 5 (both A's are negative there).
inline RkBounds rk_bounds(long k) {
    if (k < 5) throw std::domain_error("rk_bounds: requires k >= 5");
    Rational ak = a_closed_form(k), akm2 = a_closed_form(k - 2);
    if (ak >= 0 || akm2 >= 0) return {};  // hypothesis of the bound fails
    RkBounds r;
    r.upper_ok = ak - akm2 < 0;
    r.lower_ok = ak - 9 * akm2 > 0;
    return r;
}

/// Coefficients in the tau basis (u = 1 + tau expanded); needs min_exp >= 0.
template <class C>
std::vector<C> to_tau_basis(const LaurentPoly<C>& p) {
    if (p.is_zero()) return {};
    if (p.min_exp() < 0)
        throw std::domain_error("to_tau_basis: negative exponents have no tau-polynomial form");
    int d = p.max_exp();
    std::vector<C> out(static_cast<size_t>(d) + 1, C(Rational(0)));
    for (const auto& [e, c] : p.terms) {
        Int binom = 1;
        for (int j = 0; j <= e; ++j) {
            out[static_cast<size_t>(j)] += c * Rational(binom);
            binom = binom * (e - j) / (j + 1);
        }
    }
    return out;
}

template <class C>
std::string LaurentPoly<C>::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms) {
        if (!out.empty()) out += " + ";
        std::string cs;
        if constexpr (std::is_same_v<C, Rational>) cs = to_display_string(c);
        else cs = c.str();
        out += "(" + cs + ")";
        if (e != 0) out += "*u^" + std::to_string(e);
    }
    return out;
}

}  // namespace calabi
