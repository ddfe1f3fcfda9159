#pragma once

// Sign certification of Laurent polynomials on u in [1,3] (tau in [0,2]).
//
// Exact (rational) coefficients: Sturm-sequence root counting. Negative
// exponents are first cleared by multiplying with u^j, which is positive on
// the domain and so preserves signs. A SignChange certificate carries a
// rational bracket [lo,hi] with exactly evaluated opposite signs.
//
// Interval coefficients: adaptive bisection with certified interval
// evaluation; a precision ladder (ln3 width 1e-10 -> 1e-30 -> 1e-60) is tried
// for Log3Linear coefficients before giving up with UndecidableSign.

#include "calabi/interval.hpp"
#include "calabi/laurent.hpp"
#include "calabi/log3.hpp"
#include "calabi/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace calabi {

struct SignCertificate {
    enum class Verdict { PositiveOnDomain, NegativeOnDomain, SignChange };
    enum class Method { Sturm, IntervalSubdivision };

    Verdict verdict;
    Method method;
    // SignChange only: 1 < lo < hi < 3 with p(lo), p(hi) of certified opposite signs
    Rational witness_lo{0}, witness_hi{0};

    bool definite() const { return verdict != Verdict::SignChange; }
    bool positive() const { return verdict == Verdict::PositiveOnDomain; }
};

struct UndecidableSign : std::runtime_error {
    int depth;
    explicit UndecidableSign(int d)
        : std::runtime_error("sign undecidable at subdivision depth " + std::to_string(d) +
                             "; raise coefficient precision"),
          depth(d) {}
};

namespace detail {

// ---- dense rational polynomials, ascending coefficients --------------------

using RatPoly = std::vector<Rational>;

inline void rp_trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int rp_degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Rational rp_eval(const RatPoly& p, const Rational& x) {
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline RatPoly rp_derivative(const RatPoly& p) {
    RatPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
    rp_trim(d);
    return d;
}

/// Euclidean remainder of a by b (b nonzero).
inline RatPoly rp_rem(RatPoly a, const RatPoly& b) {
    rp_trim(a);
    while (rp_degree(a) >= rp_degree(b) && !a.empty()) {
        Rational f = a.back() / b.back();
        int shift = rp_degree(a) - rp_degree(b);
        for (size_t i = 0; i < b.size(); ++i)
            a[static_cast<size_t>(shift) + i] -= f * b[i];
        a.pop_back();
        rp_trim(a);
    }
    return a;
}

/// Exact quotient a / b when b divides a.
inline RatPoly rp_divexact(RatPoly a, const RatPoly& b) {
    rp_trim(a);
    RatPoly q(a.size(), Rational(0));
    while (rp_degree(a) >= rp_degree(b) && !a.empty()) {
        Rational f = a.back() / b.back();
        int shift = rp_degree(a) - rp_degree(b);
        q[static_cast<size_t>(shift)] = f;
        for (size_t i = 0; i < b.size(); ++i)
            a[static_cast<size_t>(shift) + i] -= f * b[i];
        rp_trim(a);
    }
    rp_trim(q);
    return q;
}

inline RatPoly rp_gcd(RatPoly a, RatPoly b) {
    rp_trim(a);
    rp_trim(b);
    while (!b.empty()) {
        RatPoly r = rp_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;  // monic
    }
    return a;
}

inline RatPoly rp_squarefree(const RatPoly& p) {
    RatPoly d = rp_derivative(p);
    if (d.empty()) return p;  // constant
    RatPoly g = rp_gcd(p, d);
    if (rp_degree(g) < 1) return p;
    return rp_divexact(p, g);
}

inline std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    chain.push_back(p);
    RatPoly d = rp_derivative(p);
    if (d.empty()) return chain;
    chain.push_back(d);
    for (;;) {
        RatPoly r = rp_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sign_variations(const std::vector<RatPoly>& chain, const Rational& x) {
    int v = 0, prev = 0;
    for (const auto& q : chain) {
        int s = sign_of(rp_eval(q, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

/// Distinct roots of square-free q in the open interval (a,b);
/// requires q(a) != 0 and q(b) != 0.
inline int roots_in(const std::vector<RatPoly>& chain, const Rational& a, const Rational& b) {
    return sign_variations(chain, a) - sign_variations(chain, b);
}

/// Tightens [lo,hi] (with p of opposite exact signs at the ends) to width
/// <= target by bisection on exact signs.
inline void refine_bracket(const RatPoly& p, Rational& lo, Rational& hi, const Rational& target) {
    int slo = sign_of(rp_eval(p, lo));
    while (hi - lo > target) {
        Rational m = (lo + hi) / 2;
        int sm = sign_of(rp_eval(p, m));
        if (sm == 0) {
            // rational root hit: nudge both ends inside the current bracket
            Rational d = (hi - lo) / 4;
            if (sign_of(rp_eval(p, m - d)) == slo) lo = m - d; else hi = m - d;
            continue;
        }
        if (sm == slo) lo = m; else hi = m;
    }
}

}  // namespace detail

/// Sturm-based certification for exact rational coefficients.
inline SignCertificate sign_on_domain(const LaurentPoly<Rational>& p) {
    if (p.is_zero())
        throw std::invalid_argument("sign_on_domain: polynomial is identically zero");

    const Rational a(1), b(3);
    int j = p.min_exp() < 0 ? -p.min_exp() : 0;
    detail::RatPoly P(static_cast<size_t>(p.max_exp() + j) + 1, Rational(0));
    for (const auto& [e, c] : p.terms) P[static_cast<size_t>(e + j)] = c;
    detail::rp_trim(P);

    int sa = sign_of(detail::rp_eval(P, a));
    int sb = sign_of(detail::rp_eval(P, b));
    if (sa == 0 || sb == 0)
        throw std::domain_error("sign_on_domain: zero at a domain endpoint (degenerate input)");

    SignCertificate cert;
    cert.method = SignCertificate::Method::Sturm;
    if (sa != sb) {
        Rational lo = a, hi = b;
        detail::refine_bracket(P, lo, hi, Rational(1, 1024));
        cert.verdict = SignCertificate::Verdict::SignChange;
        cert.witness_lo = lo;
        cert.witness_hi = hi;
        return cert;
    }

    detail::RatPoly q = detail::rp_squarefree(P);
    auto chain = detail::sturm_chain(q);
    int nroots = detail::roots_in(chain, a, b);
    if (nroots == 0) {
        cert.verdict = sa > 0 ? SignCertificate::Verdict::PositiveOnDomain
                              : SignCertificate::Verdict::NegativeOnDomain;
        return cert;
    }

    // Same sign at both ends but roots inside: isolate each distinct root.
    // An isolating segment whose endpoints carry opposite signs exhibits a
    // crossing; equal signs mean an even-multiplicity touch with no crossing.
    // Segment endpoints are always non-roots by construction.
    auto found_crossing = [&](Rational lo, Rational hi) {
        cert.verdict = SignCertificate::Verdict::SignChange;
        cert.witness_lo = std::move(lo);
        cert.witness_hi = std::move(hi);
        detail::refine_bracket(P, cert.witness_lo, cert.witness_hi, Rational(1, 1024));
        return cert;
    };
    struct Seg { Rational a, b; int n; };
    std::vector<Seg> stack{{a, b, nroots}};
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.n == 0) continue;
        if (s.n == 1) {
            if (sign_of(detail::rp_eval(P, s.a)) != sign_of(detail::rp_eval(P, s.b)))
                return found_crossing(s.a, s.b);
            continue;
        }
        Rational m = (s.a + s.b) / 2;
        if (detail::rp_eval(q, m) == 0) {
            // exact rational root at m: cut out an isolating neighbourhood
            Rational d = (s.b - s.a) / 4;
            while (detail::roots_in(chain, m - d, m + d) != 1 ||
                   detail::rp_eval(q, m - d) == 0 || detail::rp_eval(q, m + d) == 0)
                d /= 2;
            if (sign_of(detail::rp_eval(P, m - d)) != sign_of(detail::rp_eval(P, m + d)))
                return found_crossing(m - d, m + d);
            stack.push_back({s.a, m - d, detail::roots_in(chain, s.a, m - d)});
            stack.push_back({m + d, s.b, detail::roots_in(chain, m + d, s.b)});
            continue;
        }
        int left = detail::roots_in(chain, s.a, m);
        if (left > 0) stack.push_back({s.a, m, left});
        if (s.n - left > 0) stack.push_back({m, s.b, s.n - left});
    }

    // Roots exist but every one is an even-multiplicity touch: the polynomial
    // is semi-definite, which none of the in-scope carriers produce.
    throw std::domain_error(
        "sign_on_domain: polynomial touches zero on [1,3] without changing sign");
}

namespace detail {

inline std::optional<int> certain_sign(const Interval& v) {
    if (v.strictly_positive()) return 1;
    if (v.strictly_negative()) return -1;
    return std::nullopt;
}

/// One subdivision pass over [1,3] for interval coefficients.
inline std::optional<SignCertificate> interval_sign_pass(const LaurentPoly<Interval>& p,
                                                         int depth_limit) {
    struct Box { Rational a, b; int depth; };
    std::vector<Box> work{{Rational(1), Rational(3), 0}};
    bool saw_pos_box = false, saw_neg_box = false, exhausted = false;
    std::optional<Rational> pos_pt, neg_pt;

    auto note_point = [&](const Rational& x) {
        auto s = certain_sign(eval_on(p, Interval(x, x)));
        if (s == 1 && !pos_pt) pos_pt = x;
        if (s == -1 && !neg_pt) neg_pt = x;
    };
    note_point(Rational(1));
    note_point(Rational(3));

    while (!work.empty()) {
        Box box = work.back();
        work.pop_back();
        Interval range = eval_on(p, Interval(box.a, box.b));
        if (range.strictly_positive()) { saw_pos_box = true; continue; }
        if (range.strictly_negative()) { saw_neg_box = true; continue; }
        if (box.depth >= depth_limit) { exhausted = true; continue; }
        Rational m = (box.a + box.b) / 2;
        note_point(m);
        work.push_back({box.a, m, box.depth + 1});
        work.push_back({m, box.b, box.depth + 1});
        if (pos_pt && neg_pt) break;
    }

    SignCertificate cert;
    cert.method = SignCertificate::Method::IntervalSubdivision;
    if (pos_pt && neg_pt) {
        Rational lo = std::min(*pos_pt, *neg_pt), hi = std::max(*pos_pt, *neg_pt);
        // shrink the bracket where point signs stay certified
        for (int i = 0; i < 40 && hi - lo > Rational(1, 1024); ++i) {
            Rational m = (lo + hi) / 2;
            auto s = certain_sign(eval_on(p, Interval(m, m)));
            if (!s) break;
            auto slo = certain_sign(eval_on(p, Interval(lo, lo)));
            if (s == slo) lo = m; else hi = m;
        }
        cert.verdict = SignCertificate::Verdict::SignChange;
        cert.witness_lo = lo;
        cert.witness_hi = hi;
        return cert;
    }
    if (exhausted) return std::nullopt;
    if (saw_pos_box && !saw_neg_box) {
        cert.verdict = SignCertificate::Verdict::PositiveOnDomain;
        return cert;
    }
    if (saw_neg_box && !saw_pos_box) {
        cert.verdict = SignCertificate::Verdict::NegativeOnDomain;
        return cert;
    }
    return std::nullopt;
}

}  // namespace detail

/// Certification for interval coefficients at fixed precision.
inline SignCertificate sign_on_domain(const LaurentPoly<Interval>& p, int depth_limit = 24) {
    if (p.is_zero())
        throw std::invalid_argument("sign_on_domain: polynomial is identically zero");
    auto r = detail::interval_sign_pass(p, depth_limit);
    if (!r) throw UndecidableSign(depth_limit);
    return *r;
}

/// Certification for Log3Linear coefficients: exact Sturm when every
/// coefficient is rational, otherwise the interval ladder.
inline SignCertificate sign_on_domain(const LaurentPoly<Log3Linear>& p, int depth_limit = 24) {
    if (p.is_zero())
        throw std::invalid_argument("sign_on_domain: polynomial is identically zero");
    if (all_rational(p)) return sign_on_domain(to_rational_poly(p));
    for (int width_exp : {10, 30, 60}) {
        auto r = detail::interval_sign_pass(to_interval_poly(p, pow10_neg(width_exp)), depth_limit);
        if (r) return *r;
    }
    throw UndecidableSign(depth_limit);
}

}  // namespace calabi
