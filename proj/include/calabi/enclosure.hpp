#pragma once

// Certified enclosures of ln3, pi and ln(x) for rational x, built from
// classical fast-converging series with explicit remainder bounds. No
// floating point anywhere: the enclosures are exact rational brackets and
// are deterministic for a given width bound.

#include "calabi/interval.hpp"
#include "calabi/rational.hpp"

#include <stdexcept>

namespace calabi {

/// ln3 = 2 atanh(1/2) = sum_{j>=0} (1/4)^j / (2j+1).
/// Tail after j=J is below (4/3) * (1/4)^{J+1} / (2J+3).
/// Successive brackets are intersected, so enclosure(w') is contained in
/// enclosure(w) whenever w' <= w (monotone refinement).
inline Interval ln3_enclosure(const Rational& width_bound) {
    if (width_bound <= 0) throw std::invalid_argument("ln3_enclosure: width bound must be > 0");
    Rational partial(0);
    Rational quarter_pow(1);  // (1/4)^j
    Rational lo(0), hi(2);    // ln3 is certainly in (0,2)
    for (int j = 0;; ++j) {
        partial += quarter_pow / (2 * j + 1);
        quarter_pow /= 4;
        Rational tail = Rational(4, 3) * quarter_pow / (2 * j + 3);
        lo = std::max(lo, partial);
        hi = std::min(hi, partial + tail);
        if (hi - lo <= width_bound) return Interval(lo, hi);
    }
}

namespace detail {

/// Bracket of atan(1/x) for integer x >= 2 from the alternating series:
/// consecutive partial sums enclose the value.
inline Interval atan_inv_bracket(long x, const Rational& term_bound) {
    Rational xsq(Int(x) * x);
    Rational term(1, x);
    Rational s(0);
    Interval out(Rational(0), Rational(1));
    for (int j = 0;; ++j) {
        Rational prev = s;
        if (j % 2 == 0) s += term / (2 * j + 1); else s -= term / (2 * j + 1);
        Interval bracket = j % 2 == 0 ? Interval(prev, s) : Interval(s, prev);
        out = intersect(out, bracket);
        term /= xsq;
        if (term / (2 * j + 3) <= term_bound) return out;
    }
}

}  // namespace detail

/// Machin: pi = 16 atan(1/5) - 4 atan(1/239). Monotone-nested like ln3.
inline Interval pi_enclosure(const Rational& width_bound) {
    if (width_bound <= 0) throw std::invalid_argument("pi_enclosure: width bound must be > 0");
    Rational tb = width_bound / 64;
    for (;;) {
        Interval a5 = detail::atan_inv_bracket(5, tb);
        Interval a239 = detail::atan_inv_bracket(239, tb);
        Interval pi = a5 * Rational(16) - a239 * Rational(4);
        if (pi.width() <= width_bound) return pi;
        tb /= 16;
    }
}

inline Interval two_pi_enclosure(const Rational& width_bound) {
    return pi_enclosure(width_bound / 2) * Rational(2);
}

/// (2pi)^p for integer p of either sign.
inline Interval two_pi_pow_enclosure(int p, const Rational& width_bound) {
    if (p == 0) return Interval(Rational(1));
    Rational w = width_bound;
    for (;;) {
        Interval r = two_pi_enclosure(w).pow(p);
        if (r.width() <= width_bound) return r;
        w /= 16;
    }
}

/// ln(x) for rational x > 0. Reduces x into [1,3) by powers of 3, then uses
/// ln(y) = 2 atanh(z), z = (y-1)/(y+1) in [0,1/2), with geometric tail bound.
inline Interval ln_rational_enclosure(const Rational& x, const Rational& width_bound) {
    if (x <= 0) throw std::domain_error("ln_rational_enclosure: argument must be > 0");
    if (width_bound <= 0) throw std::invalid_argument("ln_rational_enclosure: width bound must be > 0");
    if (x < 1) return -ln_rational_enclosure(Rational(1) / x, width_bound);
    long k3 = 0;
    Rational y = x;
    while (y >= 3) { y /= 3; ++k3; }
    // ln(x) = k3*ln3 + ln(y), y in [1,3)
    Interval acc(Rational(0));
    if (k3 > 0) acc = ln3_enclosure(width_bound / (2 * k3)) * Rational(k3);
    if (y == 1) return acc;
    Rational z = (y - 1) / (y + 1);
    Rational zsq = z * z;
    Rational budget = k3 > 0 ? width_bound / 2 : width_bound;
    Rational term = 2 * z;  // 2 z^{2j+1}
    Rational s(0);
    for (int j = 0;; ++j) {
        s += term / (2 * j + 1);
        term *= zsq;
        Rational tail = term / ((2 * j + 3) * (1 - zsq));
        if (tail <= budget) return acc + Interval(s, s + tail);
    }
}

}  // namespace calabi
