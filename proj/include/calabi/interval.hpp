#pragma once

// Closed intervals with exact rational endpoints. Every operation returns an
// enclosure of the pointwise result, so a value carried through any chain of
// these operations stays inside its interval. Endpoint arithmetic is exact;
// outward rounding happens only on explicit compress() calls.

#include "calabi/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace calabi {

struct Interval {
    Rational lo, hi;

    Interval() : lo(0), hi(0) {}
    explicit Interval(const Rational& v) : lo(v), hi(v) {}
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
    }

    static Interval point(const Rational& v) { return Interval(v); }

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    /// max(|lo|, |hi|)
    Rational mag() const { return std::max(abs_rat(lo), abs_rat(hi)); }

    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool strictly_positive() const { return lo > 0; }
    bool strictly_negative() const { return hi < 0; }

    Interval operator-() const { return Interval(-hi, -lo); }

    friend Interval operator+(const Interval& x, const Interval& y) {
        return Interval(x.lo + y.lo, x.hi + y.hi);
    }
    friend Interval operator-(const Interval& x, const Interval& y) {
        return Interval(x.lo - y.hi, x.hi - y.lo);
    }
    friend Interval operator*(const Interval& x, const Interval& y) {
        Rational a = x.lo * y.lo, b = x.lo * y.hi, c = x.hi * y.lo, d = x.hi * y.hi;
        return Interval(std::min(std::min(a, b), std::min(c, d)),
                        std::max(std::max(a, b), std::max(c, d)));
    }
    friend Interval operator/(const Interval& x, const Interval& y) {
        if (y.contains_zero()) throw std::domain_error("Interval division by interval containing 0");
        return x * Interval(Rational(1) / y.hi, Rational(1) / y.lo);
    }

    friend Interval operator+(const Interval& x, const Rational& c) { return x + Interval(c); }
    friend Interval operator-(const Interval& x, const Rational& c) { return x - Interval(c); }
    friend Interval operator*(const Interval& x, const Rational& c) {
        return c >= 0 ? Interval(x.lo * c, x.hi * c) : Interval(x.hi * c, x.lo * c);
    }
    friend Interval operator*(const Rational& c, const Interval& x) { return x * c; }
    friend Interval operator/(const Interval& x, const Rational& c) {
        if (c == 0) throw std::domain_error("Interval division by zero");
        return x * (Rational(1) / c);
    }

    Interval& operator+=(const Interval& o) { *this = *this + o; return *this; }
    Interval& operator-=(const Interval& o) { *this = *this - o; return *this; }
    Interval& operator*=(const Interval& o) { *this = *this * o; return *this; }

    friend bool operator==(const Interval& x, const Interval& y) {
        return x.lo == y.lo && x.hi == y.hi;
    }

    Interval pow(int e) const {
        if (e == 0) return Interval(Rational(1));
        if (e < 0) return Interval(Rational(1)) / pow(-e);
        Rational a = pow_rat(lo, e), b = pow_rat(hi, e);
        if (e % 2 == 1) return Interval(a, b);
        // even power: minimum is 0 if the interval straddles it
        if (contains_zero()) return Interval(Rational(0), std::max(a, b));
        return Interval(std::min(a, b), std::max(a, b));
    }

    /// Intersection; inputs must overlap.
    friend Interval intersect(const Interval& x, const Interval& y) {
        Rational l = std::max(x.lo, y.lo), h = std::min(x.hi, y.hi);
        if (l > h) throw std::domain_error("intersect: disjoint intervals");
        return Interval(l, h);
    }

    friend Interval hull(const Interval& x, const Interval& y) {
        return Interval(std::min(x.lo, y.lo), std::max(x.hi, y.hi));
    }

    /// Outward rounding to dyadic endpoints with `bits` fractional bits.
    /// Keeps denominators bounded (power of two) so long derivations stay fast.
    Interval compress(unsigned bits) const {
        Int scale = Int(1) << bits;
        Rational l(floor_div(num(lo) * scale, den(lo)), scale);
        Rational h(ceil_div(num(hi) * scale, den(hi)), scale);
        return Interval(l, h);
    }

    std::string str(int digits = 12) const {
        return "[" + decimal_string(lo, digits) + ", " + decimal_string(hi, digits) + "]";
    }
};

inline Interval abs(const Interval& x) {
    if (x.lo >= 0) return x;
    if (x.hi <= 0) return -x;
    return Interval(Rational(0), x.mag());
}

}  // namespace calabi
