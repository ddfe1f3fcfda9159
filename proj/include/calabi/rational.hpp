#pragma once

// Exact rational scalars. All arithmetic in this library that claims to be
// exact is carried by boost::multiprecision::cpp_rational (arbitrary
// precision, always normalized: lowest terms, positive denominator).

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace calabi {

// et_off: plain value semantics (no expression templates), so results mix
// freely with std::min/max and templated code.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign_of(const Rational& q) { return q.sign(); }

inline Int pow_int(const Int& base, unsigned e) {
    return boost::multiprecision::pow(base, e);
}

/// n/d as a Rational; accepts negative d (the underlying type does not).
inline Rational make_rat(Int n, Int d) {
    if (d == 0) throw std::domain_error("make_rat: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    return Rational(n, d);
}

/// base^e for integer e (negative allowed; base must be nonzero then).
inline Rational pow_rat(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (e > 0)
        return Rational(pow_int(num(base), static_cast<unsigned>(e)),
                        pow_int(den(base), static_cast<unsigned>(e)));
    if (base == 0) throw std::domain_error("pow_rat: zero base with negative exponent");
    return make_rat(pow_int(den(base), static_cast<unsigned>(-e)),
                    pow_int(num(base), static_cast<unsigned>(-e)));
}

inline Rational abs_rat(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// 10^-e as a Rational, the usual way width bounds are specified.
inline Rational pow10_neg(int e) {
    if (e < 0) throw std::invalid_argument("pow10_neg: negative exponent");
    return Rational(Int(1), pow_int(Int(10), static_cast<unsigned>(e)));
}

/// floor(a/b) with b > 0 (integer division rounding toward -inf).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && a < 0) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && a > 0) ++q;
    return q;
}

/// Canonical "p/q" form (always includes the denominator).
inline std::string to_frac_string(const Rational& q) {
    return num(q).str() + "/" + den(q).str();
}

/// Compact display form: "p" when the denominator is 1, else "p/q".
inline std::string to_display_string(const Rational& q) {
    if (den(q) == 1) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return make_rat(n, d);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument(std::string("parse_rational: bad input '") + s + "'");
    }
}

/// Fixed-point decimal rendering (round half away handled by truncation after
/// adding half an ulp; for display only, never used in certified paths).
inline std::string decimal_string(const Rational& q, int digits) {
    if (digits < 0) digits = 0;
    const bool neg = q < 0;
    Rational a = abs_rat(q);
    Int scale = pow_int(Int(10), static_cast<unsigned>(digits));
    Int scaled = (num(a) * scale * 2 + den(a)) / (den(a) * 2);  // rounded
    Int ip = scaled / scale, fp = scaled % scale;
    std::string out = (neg && scaled != 0 ? "-" : "") + ip.str();
    if (digits > 0) {
        std::string f = fp.str();
        out += "." + std::string(static_cast<size_t>(digits) - f.size(), '0') + f;
    }
    return out;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace calabi
