#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "calabi/profile.hpp"

using namespace calabi;

namespace {

PiGraded pg(const Rational& c, int pow) { return PiGraded(Log3Linear(c), pow); }

LaurentPoly<Log3Linear> expected_shape(long k, const Log3Linear& Rk) {
    // u^{k-2} (1 - R_k u^2), the factored constraint form
    LaurentPoly<Log3Linear> p;
    p.set(static_cast<int>(k) - 2, Log3Linear(Rational(1)));
    p.set(static_cast<int>(k), Log3Linear() - Rk);
    return p;
}

// Independent termwise-antiderivative oracle for N(tau) of a rational shape.
Rational oracle_N(const LaurentPoly<Rational>& shape, const Rational& tau) {
    Rational acc(0);
    Rational u = 1 + tau;
    for (const auto& [e, c] : shape.terms) {
        // int_1^u (2 v^e - v^{e+1}) dv, e >= 0 here
        acc += c * (Rational(2) * (pow_rat(u, e + 1) - 1) / (e + 1) -
                    (pow_rat(u, e + 2) - 1) / (e + 2));
    }
    return acc;
}

const std::vector<Scenario> solvable_five = {
    Scenario::general(1, 0, 1), Scenario::general(2, 0, 1), Scenario::general(3, 0, 1),
    Scenario::general(4, 0, 1), Scenario::even(2),          Scenario::even(4),
    Scenario::odd(3)};

}  // namespace

TEST_CASE("build_Q at the constraint reproduces the factored paper forms") {
    // Even k=2: Q is the constant 4 alpha1/(2pi)^2 (u^2 coefficient vanishes)
    ProfilePoly e2 = build_Q(Scenario::even(2), coupling_ratio(Scenario::even(2)));
    LaurentPoly<Log3Linear> one;
    one.set(0, Log3Linear(Rational(1)));
    CHECK(e2.shape == one);
    CHECK(e2.prefactor == pg(Rational(4), -2));
    CHECK_FALSE(e2.times_bsq);

    // Odd k=3: (12 alpha1/(2pi)^2) u (1 - (5/63) u^2)
    ProfilePoly o3 = build_Q(Scenario::odd(3), coupling_ratio(Scenario::odd(3)));
    CHECK(o3.shape == expected_shape(3, Log3Linear(Rational(5, 63))));
    CHECK(o3.prefactor == pg(Rational(12), -2));

    // Even k=4
    ProfilePoly e4 = build_Q(Scenario::even(4), coupling_ratio(Scenario::even(4)));
    CHECK(e4.shape == expected_shape(4, Log3Linear(Rational(5, 46))));
    CHECK(e4.prefactor == pg(Rational(8), -2));

    // General k=1..4: 2 alpha1 b^2 (k+1)k/(2pi)^2 u^{k-2} (1 - R_k u^2)
    for (long k = 1; k <= 4; ++k) {
        Scenario s = Scenario::general(k, 0, 1);
        ProfilePoly g = build_Q(s, coupling_ratio(s));
        CHECK(g.shape == expected_shape(k, compute_R(k)));
        CHECK(g.prefactor == pg(Rational(2 * (k + 1) * k), -2));
        CHECK(g.times_bsq);
    }

    // alpha1 only scales the prefactor, never the shape
    Scenario e2a(Scenario::even(2, Rational(7, 5)));
    ProfilePoly e2s = build_Q(e2a, coupling_ratio(e2a));
    CHECK(e2s.shape == one);
    CHECK(e2s.prefactor == pg(Rational(28, 5), -2));
}

TEST_CASE("obstruction integral vanishes exactly at the constraint") {
    for (const Scenario& s : solvable_five) {
        ObstructionResult r = obstruction_integral(build_Q(s, coupling_ratio(s)));
        CHECK(r.is_zero());
    }
    // also for the pseudo-constraints of unsolvable scenarios
    for (const Scenario& s : {Scenario::general(5, 0, 1), Scenario::even(6), Scenario::odd(5)})
        CHECK(obstruction_integral(build_Q(s, coupling_ratio(s))).is_zero());
    // constant Q integrates (1-t) against a constant: zero by symmetry
    LaurentPoly<Rational> c = LaurentPoly<Rational>::monomial(0, Rational(9, 4));
    CHECK(weighted_integral_0_2(c) == Log3Linear(Rational(0)));
}

TEST_CASE("obstruction integral off the constraint: exact nonzero value") {
    Scenario s = Scenario::even(2);
    ScaledConstant ratio = coupling_ratio(s);
    ProfilePoly q = build_Q(s, ratio.scaled_by(Rational(11, 10)));
    // u^2 coefficient of the shape turns positive, A_2 = -8/3 weights it
    Log3Linear c2 = q.shape.coeff(2);
    CHECK(c2.sign() == 1);
    ObstructionResult r = obstruction_integral(q);
    CHECK_FALSE(r.is_zero());
    CHECK(r.sign() == -1);
    CHECK(r.shape_integral == c2 * Rational(-8, 3));  // c2 A_2 + 1 * A_0

    // the same perturbation for the General twist
    Scenario g = Scenario::general(1, 0, 1);
    ObstructionResult rg =
        obstruction_integral(build_Q(g, coupling_ratio(g).scaled_by(Rational(11, 10))));
    CHECK_FALSE(rg.is_zero());
}

TEST_CASE("profile closed form: Even k=2 gives phi = tau - tau^2/2") {
    MomentumProfile p = build_profile(build_Q(Scenario::even(2), coupling_ratio(Scenario::even(2))));
    CHECK(p.phi_is_rational());
    auto tau_coeffs = to_tau_basis(to_rational_poly(p.N_poly));
    CHECK(tau_coeffs ==
          std::vector<Rational>{Rational(0), Rational(1), Rational(-1, 2)});
    CHECK(p.phi_exact(Rational(1, 2)) == Rational(3, 8));
    CHECK(p.phi_exact(Rational(1)) == Rational(1, 2));
    CHECK(p.phi_exact(Rational(2)) == Rational(0));
}

TEST_CASE("profiles match the independent antiderivative oracle") {
    // Odd k=3: phi(1) = 71/172, phi(1/2) = 15/46
    MomentumProfile o3 = build_profile(build_Q(Scenario::odd(3), coupling_ratio(Scenario::odd(3))));
    CHECK(o3.phi_exact(Rational(1)) == Rational(71, 172));
    CHECK(o3.phi_exact(Rational(1, 2)) == Rational(15, 46));
    LaurentPoly<Rational> shape = to_rational_poly(o3.q.shape);
    for (const Rational& tau : {Rational(1, 7), Rational(2, 3), Rational(5, 4)})
        CHECK(o3.phi_exact(tau) == oracle_N(shape, tau) / shape.eval(1 + tau));

    // Even k=4 spot values against the oracle
    MomentumProfile e4 = build_profile(build_Q(Scenario::even(4), coupling_ratio(Scenario::even(4))));
    LaurentPoly<Rational> shape4 = to_rational_poly(e4.q.shape);
    for (const Rational& tau : {Rational(1, 3), Rational(1), Rational(9, 5)})
        CHECK(e4.phi_exact(tau) == oracle_N(shape4, tau) / shape4.eval(1 + tau));
}

TEST_CASE("General k=1 carries an exact log term in N") {
    Scenario s = Scenario::general(1, 0, 1);
    MomentumProfile p = build_profile(build_Q(s, coupling_ratio(s)));
    CHECK(p.has_log_term());
    CHECK(p.N_log == Log3Linear(Rational(2)));
    CHECK_FALSE(p.phi_is_rational());
    CHECK_THROWS_AS(p.phi_exact(Rational(1)), std::domain_error);

    // phi(1) = (2 ln2 + 2 ln3 - 3) / (1/2 - 2 R_1), via certified intervals
    Interval v = p.phi_interval(Rational(1), pow10_neg(20));
    CHECK(v.width() <= pow10_neg(20));
    CHECK(v.contains(parse_rational(
        "534517705562491328703158895526/1000000000000000000000000000000")));

    // N(3) is exactly zero even with the log part: 2 ln3 - 2 + 2 R_1 / 3 = 0
    CHECK(p.N_exact_at_ends(Rational(3)).is_zero());
}

TEST_CASE("build_profile is invariant under positive scaling of Q") {
    Scenario tag = Scenario::odd(3);
    LaurentPoly<Log3Linear> Q = build_Q(tag, coupling_ratio(tag)).shape;
    MomentumProfile base = build_profile_from_poly(Q, tag);
    for (const Rational& c : {Rational(3, 7), Rational(5)}) {
        MomentumProfile scaled = build_profile_from_poly(Q.scaled(Log3Linear(c)), tag);
        for (const Rational& tau : {Rational(1, 7), Rational(1, 2), Rational(1), Rational(7, 4)})
            CHECK(scaled.phi_exact(tau) == base.phi_exact(tau));
    }
}

TEST_CASE("build_profile rejects sign-changing Q with a pole witness") {
    Scenario s = Scenario::general(5, 0, 1);
    ProfilePoly q = build_Q(s, coupling_ratio(s));
    CHECK_THROWS_AS(build_profile(q), PoleInDomain);
    try {
        build_profile(q);
    } catch (const PoleInDomain& e) {
        CHECK(e.certificate.verdict == SignCertificate::Verdict::SignChange);
        // witness bracket contains sqrt(3655/441)
        CHECK(e.certificate.witness_lo * e.certificate.witness_lo < Rational(3655, 441));
        CHECK(e.certificate.witness_hi * e.certificate.witness_hi > Rational(3655, 441));
    }
}

TEST_CASE("boundary suite: all four conditions pass exactly for the five families") {
    for (const Scenario& s : solvable_five) {
        MomentumProfile p = build_profile(build_Q(s, coupling_ratio(s)));
        BoundaryReport rep = boundary_check(p);
        REQUIRE(rep.entries.size() == 4);
        for (const auto& e : rep.entries) {
            INFO(s.name() << ": " << e.name);
            CHECK(e.pass);
        }
    }
}

TEST_CASE("boundary suite: perturbed ratio fails phi(2)=0 with exact residue") {
    Scenario s = Scenario::even(2);
    ProfilePoly q = build_Q(s, coupling_ratio(s).scaled_by(Rational(11, 10)));
    MomentumProfile p = build_profile(q);  // Q stays positive, profile exists
    BoundaryReport rep = boundary_check(p);
    CHECK(rep.entries[0].pass);        // phi(0) = 0
    CHECK(rep.entries[1].pass);        // phi'(0) = 1
    CHECK_FALSE(rep.entries[2].pass);  // phi(2) != 0
    CHECK_FALSE(rep.entries[3].pass);  // hence phi'(2) != -1
    CHECK(rep.entries[2].residue != "0");
    CHECK_FALSE(rep.all_pass());
}

TEST_CASE("solvability verdicts reproduce the five theorems and the failures") {
    SolvabilityReport o3 = solvability(Scenario::odd(3));
    CHECK(o3.solvable());
    CHECK(o3.coupling.exact_value() == pg(Rational(1216, 21), 2));
    CHECK(o3.boundary->all_pass());
    CHECK(o3.positivity.positive());

    for (const Scenario& s : solvable_five) {
        SolvabilityReport r = solvability(s);
        INFO(s.name());
        CHECK(r.solvable());
        CHECK(r.boundary->all_pass());
        CHECK(obstruction_integral(r.profile->q).is_zero());
    }

    for (const Scenario& s :
         {Scenario::general(5, 0, 1), Scenario::general(6, 1, 0), Scenario::general(7, 2, 1),
          Scenario::general(8, 0, 1), Scenario::even(6), Scenario::even(8), Scenario::odd(5),
          Scenario::odd(7)}) {
        SolvabilityReport r = solvability(s);
        INFO(s.name());
        CHECK_FALSE(r.solvable());
        CHECK(r.positivity.verdict == SignCertificate::Verdict::SignChange);
        CHECK(r.positivity.witness_lo > 1);
        CHECK(r.positivity.witness_hi < 3);
        CHECK(!r.profile.has_value());
        // pseudo-constraint is still derived and reported
        CHECK(r.coupling.base.sign() != 0);
    }

    // the k=5 witness brackets contain sqrt(3655/441) for both twists
    for (const Scenario& s : {Scenario::general(5, 0, 1), Scenario::odd(5)}) {
        SolvabilityReport r = solvability(s);
        CHECK(r.positivity.witness_lo * r.positivity.witness_lo < Rational(3655, 441));
        CHECK(r.positivity.witness_hi * r.positivity.witness_hi > Rational(3655, 441));
    }
}

TEST_CASE("interior positivity: phi > 0 at 1000 rational sample points") {
    for (const Scenario& s : solvable_five) {
        MomentumProfile p = build_profile(build_Q(s, coupling_ratio(s)));
        const int n = (p.phi_is_rational() ? 1000 : 100);
        for (int i = 1; i <= n; ++i) {
            Rational tau(2 * i, n + 1);
            if (p.phi_is_rational()) {
                if (!(p.phi_exact(tau) > 0)) {
                    INFO(s.name() << " tau=" << to_display_string(tau));
                    CHECK(p.phi_exact(tau) > 0);
                }
            } else {
                Interval v = p.phi_interval(tau, pow10_neg(12));
                if (!v.strictly_positive()) {
                    INFO(s.name() << " tau=" << to_display_string(tau));
                    CHECK(v.strictly_positive());
                }
            }
        }
        CHECK(true);  // all sampled values positive
    }
}

TEST_CASE("certificate methods: exact Sturm vs interval ladder") {
    SolvabilityReport e2 = solvability(Scenario::even(2));
    CHECK(e2.positivity.method == SignCertificate::Method::Sturm);
    SolvabilityReport g1 = solvability(Scenario::general(1, 0, 1));
    CHECK(g1.solvable());
    CHECK(g1.positivity.method == SignCertificate::Method::IntervalSubdivision);
}
