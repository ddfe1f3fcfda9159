#pragma once

// Certified quadrature for rational functions g = num/den of u, where num and
// den are Laurent polynomials plus an optional c*ln(u) term (the shape of the
// profile data: 1/phi = Q/N).
//
// Per panel [a,b]: Taylor coefficients of g at the rational midpoint are
// computed by exact recentering and power-series division. The Lagrange
// remainder is bounded rigorously by repeating the series division with the
// *whole panel* as the center: interval arithmetic then encloses the (J+1)-st
// Taylor coefficient g^{(J+1)}(xi)/(J+1)! for every xi in the panel. Panels
// whose remainder misses their error budget are bisected; exceeding the depth
// cap reports QuadratureError instead of silently degrading.
//
// The inner arithmetic runs on fixed-point dyadic intervals (integer
// mantissas at scale 2^-S with outward rounding). Rational arithmetic would
// re-normalize through a gcd on every operation; the dyadic core keeps every
// step to a handful of integer multiplications.

#include "calabi/enclosure.hpp"
#include "calabi/interval.hpp"
#include "calabi/laurent.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace calabi {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// p(u) + log_coeff * ln(u)
struct LogPoly {
    LaurentPoly<Interval> poly;
    Interval log_coeff;

    bool has_log() const { return !scalar_is_zero(log_coeff); }
};

namespace fixp {

/// [lo, hi] * 2^-S with integer mantissas; S is carried by the engine.
struct FI {
    Int lo, hi;
};

inline FI from_rational(const Rational& q, unsigned S) {
    Int scaled_num = num(q) << S;
    return {floor_div(scaled_num, den(q)), ceil_div(scaled_num, den(q))};
}

inline FI from_interval(const Interval& v, unsigned S) {
    return {floor_div(num(v.lo) << S, den(v.lo)), ceil_div(num(v.hi) << S, den(v.hi))};
}

inline Interval to_interval(const FI& v, unsigned S) {
    Int scale = Int(1) << S;
    return Interval(Rational(v.lo, scale), Rational(v.hi, scale));
}

inline FI fi_zero() { return {Int(0), Int(0)}; }
inline bool contains_zero(const FI& v) { return v.lo <= 0 && 0 <= v.hi; }
/// max(|lo|, |hi|) as an exact Rational.
inline Rational mag(const FI& v, unsigned S) {
    Int m = std::max(v.lo < 0 ? Int(-v.lo) : v.lo, v.hi < 0 ? Int(-v.hi) : v.hi);
    return Rational(m, Int(1) << S);
}

inline FI add(const FI& a, const FI& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline FI sub(const FI& a, const FI& b) { return {a.lo - b.hi, a.hi - b.lo}; }

inline FI mul(const FI& a, const FI& b, unsigned S) {
    Int p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    Int scale = Int(1) << S;
    Int lo = std::min(std::min(p1, p2), std::min(p3, p4));
    Int hi = std::max(std::max(p1, p2), std::max(p3, p4));
    return {floor_div(lo, scale), ceil_div(hi, scale)};
}

/// a / b with 0 outside b.
inline FI div(const FI& a, const FI& b, unsigned S) {
    if (contains_zero(b)) throw std::domain_error("fixp::div: divisor contains zero");
    Int n1 = a.lo << S, n2 = a.hi << S;
    Int q1f = floor_div(n1, b.lo), q2f = floor_div(n1, b.hi);
    Int q3f = floor_div(n2, b.lo), q4f = floor_div(n2, b.hi);
    Int lo = std::min(std::min(q1f, q2f), std::min(q3f, q4f));
    Int q1c = ceil_div(n1, b.lo), q2c = ceil_div(n1, b.hi);
    Int q3c = ceil_div(n2, b.lo), q4c = ceil_div(n2, b.hi);
    Int hi = std::max(std::max(q1c, q2c), std::max(q3c, q4c));
    return {lo, hi};
}

/// a * c for exact rational c.
inline FI scale(const FI& a, const Rational& c, unsigned S) {
    (void)S;
    if (c >= 0) return {floor_div(a.lo * num(c), den(c)), ceil_div(a.hi * num(c), den(c))};
    return {floor_div(a.hi * num(c), den(c)), ceil_div(a.lo * num(c), den(c))};
}

}  // namespace fixp

namespace detail {

/// ln over an interval argument (ln is increasing).
inline Interval ln_on(const Interval& x, unsigned bits) {
    Rational w(Int(1), Int(1) << bits);
    Interval lo = ln_rational_enclosure(x.lo, w);
    Interval hi = ln_rational_enclosure(x.hi, w);
    return Interval(lo.lo, hi.hi);
}

/// Taylor coefficients of p about u = center (a point or a whole panel),
/// orders 0..J. Generalized binomials handle negative exponents; the center
/// always lies inside [1,3], away from 0.
inline std::vector<fixp::FI> taylor_coeffs(const LogPoly& p, const Interval& center, int J,
                                           unsigned S) {
    std::vector<fixp::FI> out(static_cast<size_t>(J) + 1, fixp::fi_zero());
    for (const auto& [e, c] : p.poly.terms) {
        fixp::FI cf = fixp::from_interval(c, S);
        Rational binom(1);
        Interval cpow = center.pow(e);          // exact rational endpoints
        Interval cinv = center.pow(-1);
        for (int j = 0; j <= J; ++j) {
            if (e >= 0 && j > e) break;
            fixp::FI term = fixp::mul(cf, fixp::from_interval(cpow * binom, S), S);
            out[static_cast<size_t>(j)] = fixp::add(out[static_cast<size_t>(j)], term);
            binom = binom * Rational(e - j) / Rational(j + 1);
            cpow = cpow * cinv;
        }
    }
    if (p.has_log()) {
        fixp::FI lc = fixp::from_interval(p.log_coeff, S);
        out[0] = fixp::add(out[0],
                           fixp::mul(lc, fixp::from_interval(ln_on(center, S), S), S));
        Interval cpow = center.pow(-1);
        Interval cinv = cpow;
        Rational sign(1);
        for (int j = 1; j <= J; ++j) {
            // d^j/du^j ln(u) / j! = (-1)^{j+1} / (j u^j)
            Interval w = cpow * (sign / j);
            out[static_cast<size_t>(j)] =
                fixp::add(out[static_cast<size_t>(j)],
                          fixp::mul(lc, fixp::from_interval(w, S), S));
            cpow = cpow * cinv;
            sign = -sign;
        }
    }
    return out;
}

/// Power-series quotient num/den to order J; den[0] must exclude zero.
inline std::optional<std::vector<fixp::FI>> series_divide(const std::vector<fixp::FI>& num,
                                                          const std::vector<fixp::FI>& den,
                                                          int J, unsigned S) {
    if (fixp::contains_zero(den[0])) return std::nullopt;
    std::vector<fixp::FI> q(static_cast<size_t>(J) + 1, fixp::fi_zero());
    for (int n = 0; n <= J; ++n) {
        fixp::FI acc = n < static_cast<int>(num.size()) ? num[static_cast<size_t>(n)]
                                                        : fixp::fi_zero();
        for (int i = 1; i <= n && i < static_cast<int>(den.size()); ++i)
            acc = fixp::sub(acc, fixp::mul(den[static_cast<size_t>(i)],
                                           q[static_cast<size_t>(n - i)], S));
        q[static_cast<size_t>(n)] = fixp::div(acc, den[0], S);
    }
    return q;
}

}  // namespace detail

/// ds   = int_a^b g                      (certified)
/// wfwd = int_a^b g(x) (b - x) dx        (certified; the F-update weight)
struct PanelResult {
    Interval ds, wfwd;
};

class RationalIntegrand {
  public:
    RationalIntegrand(LogPoly num, LogPoly den, int order = 8, unsigned bits = 192)
        : num_(std::move(num)), den_(std::move(den)), order_(order), bits_(bits) {}

    /// One certified panel, or std::nullopt when the remainder misses the
    /// budget (the caller bisects).
    std::optional<PanelResult> try_panel(const Rational& a, const Rational& b,
                                         const Rational& budget) const {
        const int J = order_;
        const unsigned S = bits_;
        Interval panel(a, b);
        auto denP = detail::taylor_coeffs(den_, panel, J + 1, S);
        auto numP = detail::taylor_coeffs(num_, panel, J + 1, S);
        auto qP = detail::series_divide(numP, denP, J + 1, S);
        if (!qP) return std::nullopt;
        Rational h = (b - a) / 2;
        Rational hpow = pow_rat(h, J + 2);
        // |g - P_J| <= T |u-m|^{J+1} on the panel
        Rational T = fixp::mag((*qP)[static_cast<size_t>(J) + 1], S);
        Rational rem_ds = T * 2 * hpow / (J + 2);
        if (rem_ds > budget) return std::nullopt;

        Rational m = (a + b) / 2;
        auto denM = detail::taylor_coeffs(den_, Interval(m, m), J, S);
        auto numM = detail::taylor_coeffs(num_, Interval(m, m), J, S);
        auto c = detail::series_divide(numM, denM, J, S);
        if (!c) return std::nullopt;

        // int_{-h}^{h} delta^j d delta and int_{-h}^{h} delta^{j+1} d delta
        fixp::FI ds = fixp::fi_zero(), wfwd = fixp::fi_zero();
        Rational hj = h;  // h^{j+1}
        for (int j = 0; j <= J; ++j) {
            Rational mom = (j % 2 == 0) ? 2 * hj / (j + 1) : Rational(0);
            Rational mom2 = (j % 2 == 1) ? 2 * hj * h / (j + 2) : Rational(0);
            const fixp::FI& cj = (*c)[static_cast<size_t>(j)];
            ds = fixp::add(ds, fixp::scale(cj, mom, S));
            wfwd = fixp::add(wfwd, fixp::scale(cj, h * mom - mom2, S));
            hj *= h;
        }
        Interval ds_iv = fixp::to_interval(ds, S) + Interval(-rem_ds, rem_ds);
        Rational rem_w = T * 2 * h * 2 * hpow / (J + 2);
        Interval wfwd_iv = fixp::to_interval(wfwd, S) + Interval(-rem_w, rem_w);
        return PanelResult{ds_iv, wfwd_iv};
    }

    /// Certified integral data over [a,b] with |remainder| <= rate*(b-a),
    /// by adaptive bisection. Both the recursion depth and the total panel
    /// count are capped; either limit means the tolerance is unreachable for
    /// this interval (eps too small) and raises QuadratureError.
    PanelResult integrate(const Rational& a, const Rational& b, const Rational& rate) const {
        int panels = max_panels_;
        return integrate_impl(a, b, rate, 0, panels);
    }

  private:
    PanelResult integrate_impl(const Rational& a, const Rational& b, const Rational& rate,
                               int depth, int& panel_budget) const {
        if (a == b) return {Interval(Rational(0)), Interval(Rational(0))};
        if (depth >= max_depth_ || --panel_budget < 0)
            throw QuadratureError(
                "certified quadrature failed on [" + to_display_string(a) + ", " +
                to_display_string(b) +
                "]: subdivision limit hit; eps is too small for the requested tolerance");
        auto r = try_panel(a, b, rate * (b - a));
        if (r) return *r;
        Rational m = (a + b) / 2;
        PanelResult L = integrate_impl(a, m, rate, depth + 1, panel_budget);
        PanelResult R = integrate_impl(m, b, rate, depth + 1, panel_budget);
        // w_fwd(a,b) = w_fwd(a,m) + (b-m) ds(a,m) + w_fwd(m,b)
        return {L.ds + R.ds, L.wfwd + L.ds * (b - m) + R.wfwd};
    }

    LogPoly num_, den_;
    int order_;
    unsigned bits_;
    static constexpr int max_depth_ = 48;
    static constexpr int max_panels_ = 2000;
};

}  // namespace calabi
