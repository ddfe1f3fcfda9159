#pragma once

// The module Q + Q*ln3: values a + b*ln3 with rational a, b. Since 1 and ln3
// are linearly independent over Q, equality is decided componentwise and the
// sign of a nonzero element is decidable by refining an ln3 enclosure.
//
// Products of two elements that both have b != 0 would leave the module
// (a ln3^2 term appears); they are rejected as a domain error. Quantities that
// genuinely need such products live in Interval space instead.

#include "calabi/enclosure.hpp"
#include "calabi/interval.hpp"
#include "calabi/rational.hpp"

#include <stdexcept>
#include <string>

namespace calabi {

struct Log3Linear {
    Rational a;  // rational part
    Rational b;  // coefficient of ln3

    Log3Linear() : a(0), b(0) {}
    Log3Linear(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}
    /*implicit*/ Log3Linear(const Rational& r) : a(r), b(0) {}
    /*implicit*/ Log3Linear(int v) : a(v), b(0) {}

    static Log3Linear ln3() { return Log3Linear(Rational(0), Rational(1)); }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    /// The rational value; only valid when b == 0.
    const Rational& rational_value() const {
        if (b != 0) throw std::domain_error("Log3Linear: value is irrational (b != 0)");
        return a;
    }

    friend Log3Linear operator+(const Log3Linear& x, const Log3Linear& y) {
        return Log3Linear(x.a + y.a, x.b + y.b);
    }
    friend Log3Linear operator-(const Log3Linear& x, const Log3Linear& y) {
        return Log3Linear(x.a - y.a, x.b - y.b);
    }
    Log3Linear operator-() const { return Log3Linear(-a, -b); }

    friend Log3Linear operator*(const Log3Linear& x, const Log3Linear& y) {
        if (x.b != 0 && y.b != 0)
            throw std::domain_error("Log3Linear: product of two irrational elements leaves Q + Q*ln3");
        if (y.b == 0) return Log3Linear(x.a * y.a, x.b * y.a);
        return Log3Linear(x.a * y.a, x.a * y.b);
    }
    friend Log3Linear operator*(const Log3Linear& x, const Rational& c) {
        return Log3Linear(x.a * c, x.b * c);
    }
    friend Log3Linear operator*(const Rational& c, const Log3Linear& x) { return x * c; }

    friend Log3Linear operator/(const Log3Linear& x, const Rational& c) {
        if (c == 0) throw std::domain_error("Log3Linear: division by zero");
        return Log3Linear(x.a / c, x.b / c);
    }

    Log3Linear& operator+=(const Log3Linear& o) { a += o.a; b += o.b; return *this; }
    Log3Linear& operator-=(const Log3Linear& o) { a -= o.a; b -= o.b; return *this; }

    friend bool operator==(const Log3Linear& x, const Log3Linear& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const Log3Linear& x, const Log3Linear& y) { return !(x == y); }

    Interval eval(const Rational& width_bound) const {
        if (b == 0) return Interval(a);
        Rational w = width_bound / (2 * abs_rat(b));
        return Interval(a) + ln3_enclosure(w) * b;
    }

    /// Exact sign: -1, 0, +1. For b != 0 refines the ln3 enclosure until the
    /// comparison resolves (always does, since ln3 is irrational).
    int sign() const {
        if (b == 0) return sign_of(a);
        if (a == 0) return sign_of(b);
        Rational w = pow10_neg(15);
        for (;;) {
            Interval v = eval(w);
            if (v.strictly_positive()) return 1;
            if (v.strictly_negative()) return -1;
            w *= pow10_neg(15);
        }
    }

    std::string str() const {
        if (b == 0) return to_display_string(a);
        std::string lt = (b == 1) ? "ln3" : (b == -1 ? "-ln3" : to_display_string(b) + "*ln3");
        if (a == 0) return lt;
        return to_display_string(a) + (b > 0 ? " + " : " - ") +
               (abs_rat(b) == 1 ? "ln3" : to_display_string(abs_rat(b)) + "*ln3");
    }
};

}  // namespace calabi
