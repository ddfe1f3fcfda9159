#pragma once

// The acceptance suite: twelve named checks, each with its tolerances pinned
// in code. Shared between the `verify` CLI subcommand and the acceptance test
// binary, which prints one pass/fail line per criterion.

#include "calabi/profile.hpp"
#include "calabi/reconstruct.hpp"
#include "calabi/scenario.hpp"
#include "calabi/sign.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace calabi {

struct CheckResult {
    std::string id;
    bool pass = false;
    std::string detail;
    double ms = 0;
};

namespace acceptance {

namespace detail {

struct Checker {
    bool ok = true;
    std::ostringstream msg;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            msg << (msg.tellp() > 0 ? "; " : "") << "FAILED: " << what;
        }
    }
};

inline PiGraded pg(const Rational& c, int pow) { return PiGraded(Log3Linear(c), pow); }

inline std::vector<Scenario> solvable_scenarios() {
    return {Scenario::general(1, 0, 1), Scenario::general(2, 0, 1), Scenario::general(3, 0, 1),
            Scenario::general(4, 0, 1), Scenario::even(2), Scenario::even(4), Scenario::odd(3)};
}

// 1. R-table exactness
inline void check_r_table(Checker& c) {
    c.expect(compute_R(1) == Log3Linear(Rational(3), Rational(-3)), "R_1 == -3(ln3 - 1)");
    Interval r1 = compute_R(1).eval(pow10_neg(10));
    // -3(ln3 - 1) = -0.2958368660...
    c.expect(r1.contains(parse_rational("-29583686600432907419/100000000000000000000")),
             "R_1 enclosure around -0.29584");
    c.expect(compute_R(2) == Log3Linear(Rational(0)), "R_2 == 0");
    c.expect(compute_R(3) == Log3Linear(Rational(5, 63)), "R_3 == 5/63");
    c.expect(compute_R(4) == Log3Linear(Rational(5, 46)), "R_4 == 5/46");
}

// 2. Lemma bounds for k = 5..200 and the 1/9 limit at k = 1000
inline void check_lemma_bounds(Checker& c) {
    for (long k = 5; k <= 200; ++k) {
        RkBounds b = rk_bounds(k);
        if (!b.upper_ok || !b.lower_ok) {
            c.expect(false, "bounds at k=" + std::to_string(k));
            return;
        }
    }
    Rational r1000 = compute_R(1000).rational_value();
    c.expect(abs_rat(r1000 - Rational(1, 9)) < Rational(1, 1000), "|R_1000 - 1/9| < 1e-3");
}

// 3. A_k closed form == definition for k = 1..30
inline void check_a_closed_form(Checker& c) {
    for (long k = 1; k <= 30; ++k)
        if (Log3Linear(a_closed_form(k)) != moment_integral(static_cast<int>(k))) {
            c.expect(false, "A_k mismatch at k=" + std::to_string(k));
            return;
        }
}

// 4. Volume constants C_1..C_4
inline void check_volume_constants(Checker& c) {
    c.expect(volume_constant(1) == pg(Rational(8), 2), "C_1 == 8(2pi)^2");
    c.expect(volume_constant(2) == pg(Rational(52), 3), "C_2 == 52(2pi)^3");
    c.expect(volume_constant(3) == pg(Rational(480), 4), "C_3 == 480(2pi)^4");
    c.expect(volume_constant(4) == pg(Rational(5808), 5), "C_4 == 5808(2pi)^5");
}

// 5. C~ constants: integral oracle equals the printed closed forms
inline void check_ctilde(Checker& c) {
    AbBasis e2 = c_tilde_parts(Scenario::even(2));
    c.expect(e2.one == pg(Rational(144, 13), -2) &&
                 e2.one == pg(Rational(12) * (Rational(1) - Rational(1, 13)), -2),
             "C~_2 == (144/13)(2pi)^-2 == 12(1 - 1/13)(2pi)^-2");
    AbBasis o3 = c_tilde_parts(Scenario::odd(3));
    c.expect(o3.one == pg(Rational(108, 5), -2) &&
                 o3.one == pg(Rational(24) * (Rational(1) - Rational(1, 10)), -2),
             "C~_3 == (108/5)(2pi)^-2 == 24(1 - 1/10)(2pi)^-2");
    AbBasis e4 = c_tilde_parts(Scenario::even(4));
    c.expect(e4.one == pg(Rational(14000, 363), -2) &&
                 e4.one == pg(Rational(40) * (Rational(1) - Rational(13, 363)), -2),
             "C~_4 == (14000/363)(2pi)^-2 == 40(1 - 13/363)(2pi)^-2");
}

// 6. Coupling constraints, derived from phi(2)=0 then matched to print
inline void check_coupling(Checker& c) {
    c.expect(coupling_ratio(Scenario::even(2)).exact_value() == pg(Rational(16), 1),
             "even k=2: alpha0/alpha1 == 16(2pi) == 32pi");
    c.expect(coupling_ratio(Scenario::odd(3)).exact_value() == pg(Rational(1216, 21), 2),
             "odd k=3: alpha0/alpha1 == (1216/21)(2pi)^2");
    c.expect(coupling_ratio(Scenario::even(4)).exact_value() == pg(Rational(3760, 69), 3),
             "even k=4: alpha0/alpha1 == (3760/69)(2pi)^3");

    ScaledConstant g1 = coupling_ratio(Scenario::general(1, 0, 1));
    c.expect(g1.ratio_pow == 2 && g1.base == PiGraded(Log3Linear(Rational(-96), Rational(104)), 0),
             "general k=1: factor == 8(13 ln3 - 12)");
    Interval iv = g1.eval(pow10_neg(7));
    c.expect(iv.width() < pow10_neg(6), "general k=1 enclosure width < 1e-6");
    Interval fine = g1.eval(pow10_neg(7) * pow10_neg(4));  // 4x the digits
    c.expect(iv.contains(fine.mid()), "enclosure contains the 4x-precision value");
    c.expect(iv.mid() > Rational(26030, 10000) && iv.mid() < Rational(26045, 10000),
             "value is around 2.6038");
}

// 7. Even k=2 profile == tau - tau^2/2 exactly
inline void check_profile_closed_form(Checker& c) {
    MomentumProfile p =
        build_profile(build_Q(Scenario::even(2), coupling_ratio(Scenario::even(2))));
    LaurentPoly<Log3Linear> one;
    one.set(0, Log3Linear(Rational(1)));
    c.expect(p.q.shape == one, "Q shape is the constant 1");
    auto tc = to_tau_basis(to_rational_poly(p.N_poly));
    c.expect(tc == std::vector<Rational>{Rational(0), Rational(1), Rational(-1, 2)},
             "phi tau-coefficients == [0, 1, -1/2]");
}

// 8. Boundary suite for the five solvable families
inline void check_boundary(Checker& c) {
    for (const Scenario& s : solvable_scenarios()) {
        MomentumProfile p = build_profile(build_Q(s, coupling_ratio(s)));
        BoundaryReport rep = boundary_check(p);
        for (const auto& e : rep.entries)
            if (!e.pass) {
                c.expect(false, s.name() + ": " + e.name);
                return;
            }
    }
}

// 9. No-solution certificates with witness brackets inside (1,3)
inline void check_no_solution(Checker& c) {
    std::vector<Scenario> failing = {Scenario::general(5, 0, 1), Scenario::general(6, 0, 1),
                                     Scenario::general(7, 0, 1), Scenario::general(8, 0, 1),
                                     Scenario::even(6),          Scenario::even(8),
                                     Scenario::odd(5),           Scenario::odd(7)};
    for (const Scenario& s : failing) {
        SolvabilityReport r = solvability(s);
        if (r.solvable() || r.positivity.verdict != SignCertificate::Verdict::SignChange ||
            !(r.positivity.witness_lo > 1) || !(r.positivity.witness_hi < 3)) {
            c.expect(false, s.name() + ": expected certified sign change in (1,3)");
            return;
        }
        if (s.k == 5) {
            bool contains_root =
                r.positivity.witness_lo * r.positivity.witness_lo < Rational(3655, 441) &&
                r.positivity.witness_hi * r.positivity.witness_hi > Rational(3655, 441);
            c.expect(contains_root, s.name() + ": witness contains sqrt(3655/441)");
        }
    }
}

// 10. alpha0 integral identity across every solvable scenario
inline void check_alpha0_identity(Checker& c) {
    std::vector<Scenario> scenarios = solvable_scenarios();
    scenarios.push_back(Scenario::general(2, 1, 0));
    scenarios.push_back(Scenario::general(3, 1, 1, Rational(7, 3)));
    scenarios.push_back(Scenario::even(4, Rational(2, 5)));
    for (const Scenario& s : scenarios) {
        Alpha0Identity id = alpha0_identity(s);
        if (!id.exact_ok || id.alpha0.width() > pow10_neg(20) ||
            id.integral_side.width() > pow10_neg(20)) {
            c.expect(false, s.name() + ": identity failed");
            return;
        }
    }
}

// 11. Reconstruction residual on 512-node grids, tol 1e-12, eps 1e-2
inline void check_reconstruction(Checker& c) {
    const Rational eps(1, 100), tol = pow10_neg(12);
    for (const Scenario& s : {Scenario::even(2), Scenario::odd(3), Scenario::even(4)}) {
        MomentumProfile p = build_profile(build_Q(s, coupling_ratio(s)));
        Reconstruction rec = reconstruct(p, eps, tol, 512);
        double res = pde_residual(rec, p);
        if (!(res < 1e-8)) {
            std::ostringstream os;
            os << s.name() << ": residual " << res << " >= 1e-8";
            c.expect(false, os.str());
            return;
        }
        if (s.kind == AnsatzCase::EvenAlternating && s.k == 2) {
            for (const auto& n : rec.nodes) {
                double tau = to_double(n.tau);
                double oracle = std::log(tau / (2.0 - tau));
                if (!(std::fabs(to_double(n.s.mid()) - oracle) < 1e-8)) {
                    c.expect(false, "even k=2: s(tau) vs ln(tau/(2-tau))");
                    return;
                }
            }
        }
    }
}

// 12. Property suite: scale invariance, obstruction on/off constraint,
// Sturm vs dense sampling on 100 random polynomials
inline void check_properties(Checker& c) {
    // (a) profile scale invariance under Q -> cQ
    Scenario tag = Scenario::odd(3);
    LaurentPoly<Log3Linear> Q = build_Q(tag, coupling_ratio(tag)).shape;
    MomentumProfile base = build_profile_from_poly(Q, tag);
    for (const Rational& sc : {Rational(3, 7), Rational(5)}) {
        MomentumProfile other = build_profile_from_poly(Q.scaled(Log3Linear(sc)), tag);
        for (const Rational& tau : {Rational(1, 5), Rational(1), Rational(9, 5)})
            if (other.phi_exact(tau) != base.phi_exact(tau)) {
                c.expect(false, "scale invariance of phi");
                return;
            }
    }

    // (b) obstruction integral: exactly zero at the constraint, nonzero off it
    for (const Scenario& s : solvable_scenarios()) {
        if (!obstruction_integral(build_Q(s, coupling_ratio(s))).is_zero()) {
            c.expect(false, s.name() + ": obstruction nonzero at constraint");
            return;
        }
    }
    for (const Scenario& s : {Scenario::even(2), Scenario::odd(3), Scenario::general(1, 0, 1)}) {
        ObstructionResult r =
            obstruction_integral(build_Q(s, coupling_ratio(s).scaled_by(Rational(11, 10))));
        if (r.is_zero()) {
            c.expect(false, s.name() + ": obstruction zero at 1.1x constraint");
            return;
        }
    }

    // (c) Sturm verdicts vs dense double sampling, 100 random polynomials
    std::mt19937_64 rng(20250811);
    std::uniform_int_distribution<int> coef(-10, 10);
    std::uniform_int_distribution<int> deg(1, 8);
    std::uniform_int_distribution<int> denm(1, 9);
    int done = 0;
    while (done < 100) {
        LaurentPoly<Rational> p;
        int d = deg(rng);
        for (int e = 0; e <= d; ++e) {
            int cf = coef(rng);
            if (cf != 0) p.set(e, Rational(cf, denm(rng)));
        }
        if (p.is_zero()) continue;
        SignCertificate cert;
        try {
            cert = sign_on_domain(p);
        } catch (const std::domain_error&) {
            continue;  // degenerate draw
        }
        ++done;
        const int n = 1000001;
        std::vector<double> dense;
        dense.reserve(p.terms.size());
        std::vector<int> exps;
        for (const auto& [e, cf] : p.terms) {
            dense.push_back(to_double(cf));
            exps.push_back(e);
        }
        bool crossing = false;
        double prev = 0;
        double minv = 1e300, maxv = -1e300;
        int prev_i = 0;
        for (int i = 0; i < n; ++i) {
            double x = 1.0 + 2.0 * i / (n - 1);
            double v = 0;
            for (size_t t = 0; t < dense.size(); ++t) v += dense[t] * std::pow(x, exps[t]);
            minv = std::min(minv, v);
            maxv = std::max(maxv, v);
            if (i > 0 && prev * v < 0 && !crossing) {
                Rational step(2, n - 1);
                Rational xa = Rational(1) + step * prev_i, xb = Rational(1) + step * i;
                if (sign_of(p.eval(xa)) * sign_of(p.eval(xb)) < 0) crossing = true;
            }
            prev = v;
            prev_i = i;
        }
        bool agree;
        if (cert.verdict == SignCertificate::Verdict::SignChange)
            agree = crossing &&
                    sign_of(p.eval(cert.witness_lo)) * sign_of(p.eval(cert.witness_hi)) == -1;
        else if (cert.verdict == SignCertificate::Verdict::PositiveOnDomain)
            agree = !crossing && minv > 0;
        else
            agree = !crossing && maxv < 0;
        if (!agree) {
            c.expect(false, "Sturm vs sampling disagreement on " + p.str());
            return;
        }
    }
}

}  // namespace detail

struct Criterion {
    std::string id;
    std::string summary;
    std::function<void(detail::Checker&)> run;
};

inline const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> cs = {
        {"r-table", "R_1..R_4 exact values", detail::check_r_table},
        {"lemma-bounds", "1 > R_k > 1/9 for k=5..200, limit 1/9", detail::check_lemma_bounds},
        {"a-closed-form", "A_k closed form == integral, k=1..30", detail::check_a_closed_form},
        {"volume-constants", "C_1..C_4 exact", detail::check_volume_constants},
        {"ctilde-constants", "C~ integral oracle == printed forms", detail::check_ctilde},
        {"coupling-constraints", "alpha0/alpha1 derived == printed", detail::check_coupling},
        {"profile-closed-form", "even k=2 phi == tau - tau^2/2", detail::check_profile_closed_form},
        {"boundary-suite", "four exact boundary conditions, five families", detail::check_boundary},
        {"no-solution-certificates", "k >= 5 sign-change witnesses", detail::check_no_solution},
        {"alpha0-identity", "alpha0 == 2(2pi)^{k+1} int Q", detail::check_alpha0_identity},
        {"reconstruction-residual", "rho constant to 1e-8 on 512 nodes", detail::check_reconstruction},
        {"property-suite", "scaling, obstruction, Sturm vs sampling", detail::check_properties},
    };
    return cs;
}

inline CheckResult run_one(const Criterion& cr) {
    CheckResult res;
    res.id = cr.id;
    auto t0 = std::chrono::steady_clock::now();
    detail::Checker ck;
    try {
        cr.run(ck);
        res.pass = ck.ok;
        res.detail = ck.ok ? cr.summary : ck.msg.str();
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail = std::string("exception: ") + e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    res.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return res;
}

/// Runs the checks with the given ids (case-insensitive); empty = all.
inline std::vector<CheckResult> run(const std::vector<std::string>& ids = {}) {
    auto matches = [&](const std::string& id) {
        if (ids.empty()) return true;
        for (const auto& want : ids) {
            std::string w = want;
            for (auto& ch : w) ch = static_cast<char>(std::tolower(ch));
            if (w == id) return true;
        }
        return false;
    };
    std::vector<CheckResult> out;
    for (const auto& cr : criteria())
        if (matches(cr.id)) out.push_back(run_one(cr));
    return out;
}

}  // namespace acceptance
}  // namespace calabi
