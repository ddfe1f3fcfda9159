#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "calabi/scenario.hpp"

using namespace calabi;

namespace {
PiGraded pg(const Rational& c, int pow) { return PiGraded(Log3Linear(c), pow); }

bool encloses(const Interval& iv, const std::string& frac) {
    return iv.contains(parse_rational(frac));
}
}  // namespace

TEST_CASE("scenario validation") {
    CHECK_NOTHROW(Scenario::even(2));
    CHECK_NOTHROW(Scenario::odd(3));
    CHECK_NOTHROW(Scenario::general(1, 0, 1));
    CHECK_THROWS_AS(Scenario::even(3), ScenarioError);       // parity violation
    CHECK_THROWS_AS(Scenario::odd(4), ScenarioError);
    CHECK_THROWS_AS(Scenario::odd(1), ScenarioError);
    CHECK_THROWS_AS(Scenario::general(1, 0, 0), ScenarioError);
    CHECK_THROWS_AS(Scenario::even(2, Rational(0)), ScenarioError);
    CHECK_THROWS_AS(Scenario::even(2, Rational(-1)), ScenarioError);
}

TEST_CASE("volume constants C_k") {
    CHECK(volume_constant(1) == pg(Rational(8), 2));
    CHECK(volume_constant(2) == pg(Rational(52), 3));
    CHECK(volume_constant(3) == pg(Rational(480), 4));
    CHECK(volume_constant(4) == pg(Rational(5808), 5));
    // coefficient stays rational at every grade k+1
    for (long k = 1; k <= 12; ++k) {
        PiGraded c = volume_constant(k);
        CHECK(c.two_pi_pow == k + 1);
        CHECK(c.coeff.is_rational());
        CHECK(c.coeff.sign() == 1);
    }
}

TEST_CASE("lambda") {
    CHECK(lambda_constant(Scenario::even(2)).exact_value() == pg(Rational(3), -1));
    CHECK(lambda_constant(Scenario::odd(3)).exact_value() == pg(Rational(4), -1));

    ScaledConstant l = lambda_constant(Scenario::general(1, 0, 1));
    CHECK(l.ratio_pow == 1);
    Interval iv = l.eval(pow10_neg(12));
    CHECK(iv.width() <= pow10_neg(12));
    CHECK(encloses(iv, "660328407793092161557234/10000000000000000000000000"));
}

TEST_CASE("a_k and b_k") {
    // (m1,m2) = (2,3), k=1: numerator 2 + 3 ln3 equals the denominator, so
    // a = 1 exactly; b has numerator 2*3 - 3*2 = 0.
    auto [a, b] = ak_bk(1, 2, 3);
    CHECK(a.num == a.den);
    CHECK(b.is_zero());

    auto [a01, b01] = ak_bk(1, 0, 1);
    CHECK(a01.num == Log3Linear(Rational(0), Rational(1)));
    CHECK(a01.den == Log3Linear(Rational(2), Rational(3)));
    CHECK(encloses(a01.eval(pow10_neg(12)),
                   "2074482874879423508981264/10000000000000000000000000"));
    CHECK(encloses(b01.eval(pow10_neg(12)),
                   "3776551375361729473056207/10000000000000000000000000"));

    auto [a10, b10] = ak_bk(2, 1, 0);
    CHECK(a10.num == Log3Linear(Rational(1)));
    CHECK(a10.den == Log3Linear(Rational(2), Rational(6)));
    CHECK(encloses(a10.eval(pow10_neg(12)),
                   "1163917568557632773595093/10000000000000000000000000"));
    CHECK(encloses(b10.eval(pow10_neg(12)),
                   "-3491752705672898320785280/10000000000000000000000000"));

    CHECK_THROWS_AS(ak_bk(1, 0, 0), ScenarioError);
}

TEST_CASE("a_k, b_k scale linearly in (m1, m2)") {
    for (long k : {1L, 2L, 3L, 4L}) {
        auto [a, b] = ak_bk(k, 3, -2);
        auto [ac, bc] = ak_bk(k, 5 * 3, 5 * -2);
        CHECK(ac.num == Rational(5) * a.num);
        CHECK(bc.num == Rational(5) * b.num);
        CHECK(ac.den == a.den);
        CHECK(bc.den == b.den);
    }
}

TEST_CASE("C~ for the Even/Odd twists: integral oracle equals printed form") {
    // Even k=2: 12 alpha1/(2pi)^2 (1 - 1/13) = (144/13) alpha1 (2pi)^{-2}
    AbBasis e2 = c_tilde_parts(Scenario::even(2));
    CHECK(e2.pure());
    CHECK(e2.one == pg(Rational(144, 13), -2));
    CHECK(e2.one == pg(Rational(12) * (Rational(1) - Rational(1, 13)), -2));

    // Odd k=3: 24 alpha1/(2pi)^2 (1 - 1/10) = (108/5) alpha1 (2pi)^{-2}
    AbBasis o3 = c_tilde_parts(Scenario::odd(3));
    CHECK(o3.one == pg(Rational(108, 5), -2));
    CHECK(o3.one == pg(Rational(24) * (Rational(1) - Rational(1, 10)), -2));

    // Even k=4: 40 alpha1/(2pi)^2 (1 - 13/363); density integral is
    // int_0^2 (120 u^4 - 24 u^2) d tau = 5600
    LaurentPoly<Rational> density;
    density.set(4, Rational(120));
    density.set(2, Rational(-24));
    CHECK(integrate_0_2(density) == Log3Linear(Rational(5600)));
    AbBasis e4 = c_tilde_parts(Scenario::even(4));
    CHECK(e4.one == pg(Rational(14000, 363), -2));
    CHECK(e4.one == pg(Rational(40) * (Rational(1) - Rational(13, 363)), -2));

    // alpha1 scales C~ linearly
    AbBasis e2s = c_tilde_parts(Scenario::even(2, Rational(7, 3)));
    CHECK(e2s.one == pg(Rational(144, 13) * Rational(7, 3), -2));
}

TEST_CASE("C~ for the General twist matches the printed k=1 closed form") {
    // printed: C~_1 = alpha1/(2pi)^2 (4 a^2 - b^2 ln3); the general integral
    // form evaluated at k=1 must reproduce it exactly.
    AbBasis g1 = c_tilde_parts(Scenario::general(1, 0, 1));
    CHECK(g1.one.is_zero());
    CHECK(g1.asq == pg(Rational(4), -2));
    CHECK(g1.bsq == PiGraded(Log3Linear(Rational(0), Rational(-1)), -2));

    // k >= 2 general form: 2 alpha1 (k+1)^2 k /((2pi)^2 (3^{k+1}-1)) *
    //   (a^2 (3^{k+1}-1)/(k+1) - b^2 (3^{k-1}-1)/(k-1))
    AbBasis g3 = c_tilde_parts(Scenario::general(3, 0, 1));
    Rational pref = Rational(2 * 16 * 3) / Rational(80);
    CHECK(g3.asq == pg(pref * Rational(80, 4), -2));
    CHECK(g3.bsq == pg(-pref * Rational(8, 2), -2));
}

TEST_CASE("coupling ratio alpha0/alpha1, derived from the obstruction") {
    // Even k=2: 32 pi = 16 (2pi)
    CHECK(coupling_ratio(Scenario::even(2)).exact_value() == pg(Rational(16), 1));
    // Odd k=3: (1216/21)(2pi)^2
    CHECK(coupling_ratio(Scenario::odd(3)).exact_value() == pg(Rational(1216, 21), 2));
    // Even k=4: (3760/69)(2pi)^3
    CHECK(coupling_ratio(Scenario::even(4)).exact_value() == pg(Rational(3760, 69), 3));

    // independent of alpha1
    CHECK(coupling_ratio(Scenario::even(4, Rational(9, 7))).exact_value() ==
          pg(Rational(3760, 69), 3));

    // General k=1: 8 b^2 (13 ln3 - 12), i.e. w_1 = 104 ln3 - 96 times b^2
    ScaledConstant g1 = coupling_ratio(Scenario::general(1, 0, 1));
    CHECK(g1.ratio_pow == 2);
    CHECK(g1.base == PiGraded(Log3Linear(Rational(-96), Rational(104)), 0));
    Interval iv = g1.eval(pow10_neg(10));
    CHECK(iv.width() <= pow10_neg(10));
    CHECK(encloses(iv, "2603686921806994448514509110919/1000000000000000000000000000000"));

    // General k=2,3,4 exact symbolic factors
    CHECK(coupling_ratio(Scenario::general(2, 0, 1)).base == pg(Rational(48), 1));
    CHECK(coupling_ratio(Scenario::general(3, 0, 1)).base == pg(Rational(2432, 21), 2));
    CHECK(coupling_ratio(Scenario::general(4, 0, 1)).base == pg(Rational(18800, 69), 3));

    // the exact factor does not depend on (m1,m2); only b^2 does
    CHECK(coupling_ratio(Scenario::general(3, 2, -1)).base == pg(Rational(2432, 21), 2));

    // solvable range: ratio is positive
    for (const Scenario& s : {Scenario::even(2), Scenario::even(4), Scenario::odd(3),
                              Scenario::general(1, 0, 1), Scenario::general(4, 1, 1)})
        CHECK(coupling_ratio(s).base.sign() == 1);

    // degenerate General input: b = 0 would force alpha0 = 0
    CHECK_THROWS_AS(coupling_ratio(Scenario::general(1, 2, 3)), ScenarioError);
}

TEST_CASE("constant_set bundles the report values") {
    ConstantSet c = constant_set(Scenario::general(1, 0, 1));
    CHECK(c.C_k == pg(Rational(8), 2));
    CHECK(c.R_k == Log3Linear(Rational(3), Rational(-3)));
    CHECK(c.ab.has_value());
    CHECK(c.coupling.ratio_pow == 2);
    ConstantSet e = constant_set(Scenario::even(2));
    CHECK(!e.ab.has_value());
    CHECK(e.coupling.exact());
}
