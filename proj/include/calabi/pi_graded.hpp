#pragma once

// Scalars of the form (a + b*ln3) * (2pi)^p. Powers are graded by (2pi),
// matching how every topological constant here is naturally written, so
// equality against closed forms is a componentwise check. Addition requires
// equal grades; multiplication adds them. Zero is normalized to grade 0.

#include "calabi/enclosure.hpp"
#include "calabi/interval.hpp"
#include "calabi/log3.hpp"

#include <stdexcept>
#include <string>

namespace calabi {

struct PiGraded {
    Log3Linear coeff;
    int two_pi_pow = 0;

    PiGraded() = default;
    PiGraded(Log3Linear c, int p) : coeff(std::move(c)), two_pi_pow(p) { normalize(); }
    /*implicit*/ PiGraded(const Log3Linear& c) : coeff(c), two_pi_pow(0) {}
    /*implicit*/ PiGraded(const Rational& r) : coeff(r), two_pi_pow(0) {}
    /*implicit*/ PiGraded(int v) : coeff(v), two_pi_pow(0) {}

    void normalize() {
        if (coeff.is_zero()) two_pi_pow = 0;
    }

    bool is_zero() const { return coeff.is_zero(); }

    friend PiGraded operator+(const PiGraded& x, const PiGraded& y) {
        if (x.is_zero()) return y;
        if (y.is_zero()) return x;
        if (x.two_pi_pow != y.two_pi_pow)
            throw std::domain_error("PiGraded: addition across different (2pi) powers");
        return PiGraded(x.coeff + y.coeff, x.two_pi_pow);
    }
    friend PiGraded operator-(const PiGraded& x, const PiGraded& y) { return x + (-y); }
    PiGraded operator-() const { return PiGraded(-coeff, two_pi_pow); }

    friend PiGraded operator*(const PiGraded& x, const PiGraded& y) {
        return PiGraded(x.coeff * y.coeff, x.two_pi_pow + y.two_pi_pow);
    }
    friend PiGraded operator*(const PiGraded& x, const Rational& c) {
        return PiGraded(x.coeff * c, x.two_pi_pow);
    }
    friend PiGraded operator*(const Rational& c, const PiGraded& x) { return x * c; }

    friend PiGraded operator/(const PiGraded& x, const Rational& c) {
        return PiGraded(x.coeff / c, x.two_pi_pow);
    }
    /// Division by a PiGraded with rational coefficient (grade subtracts).
    friend PiGraded operator/(const PiGraded& x, const PiGraded& y) {
        if (!y.coeff.is_rational())
            throw std::domain_error("PiGraded: division by irrational coefficient");
        return PiGraded(x.coeff / y.coeff.rational_value(), x.two_pi_pow - y.two_pi_pow);
    }

    friend bool operator==(const PiGraded& x, const PiGraded& y) {
        return x.two_pi_pow == y.two_pi_pow && x.coeff == y.coeff;
    }
    friend bool operator!=(const PiGraded& x, const PiGraded& y) { return !(x == y); }

    int sign() const { return coeff.sign(); }  // (2pi)^p > 0

    Interval eval(const Rational& width_bound) const {
        if (is_zero()) return Interval(Rational(0));
        if (two_pi_pow == 0) return coeff.eval(width_bound);
        Rational w = width_bound / 4;
        for (;;) {
            Interval c = coeff.eval(w);
            Interval p = two_pi_pow_enclosure(two_pi_pow, w);
            Interval r = c * p;
            if (r.width() <= width_bound) return r;
            w /= 4096;
        }
    }

    std::string str() const {
        std::string c = coeff.is_rational() ? to_display_string(coeff.rational_value())
                                            : "(" + coeff.str() + ")";
        if (two_pi_pow == 0) return c;
        if (two_pi_pow == 1) return c + "*(2pi)";
        return c + "*(2pi)^" + std::to_string(two_pi_pow);
    }
};

}  // namespace calabi
