#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "calabi/reconstruct.hpp"

#include <cmath>
#include <random>

using namespace calabi;

namespace {

MomentumProfile profile_of(const Scenario& s) {
    return build_profile(build_Q(s, coupling_ratio(s)));
}

const Rational kEps(1, 100);
const Rational kTolUnit = pow10_neg(10);  // unit tests; acceptance runs 1e-12

}  // namespace

TEST_CASE("reconstruction: Even k=2 matches the closed form s = ln(tau/(2-tau))") {
    MomentumProfile p = profile_of(Scenario::even(2));
    Reconstruction rec = reconstruct(p, kEps, kTolUnit, 129);
    REQUIRE(rec.nodes.size() == 129);

    for (const auto& n : rec.nodes) {
        CHECK(n.s.width() <= kTolUnit);
        CHECK(n.F.width() <= kTolUnit);
        double tau = to_double(n.tau);
        double oracle = std::log(tau / (2.0 - tau));  // from phi = tau(2-tau)/2
        CHECK(std::fabs(to_double(n.s.mid()) - oracle) < 1e-8);
    }

    // gauge anchor: s and F vanish at tau = 1 (a grid node of the odd count)
    const auto& mid = rec.nodes[64];
    CHECK(mid.tau == Rational(1));
    CHECK(mid.s.contains(Rational(0)));
    CHECK(mid.s.mag() <= kTolUnit);
    CHECK(mid.F.mag() <= kTolUnit);
}

TEST_CASE("reconstruction: s is strictly increasing (ds/dtau = 1/phi > 0)") {
    MomentumProfile p = profile_of(Scenario::odd(3));
    Reconstruction rec = reconstruct(p, kEps, kTolUnit, 65);
    for (size_t i = 1; i < rec.nodes.size(); ++i)
        CHECK(rec.nodes[i].s.lo > rec.nodes[i - 1].s.hi);
}

TEST_CASE("pde residual: rho is constant up to quadrature error") {
    for (const Scenario& s : {Scenario::even(2), Scenario::odd(3), Scenario::even(4)}) {
        MomentumProfile p = profile_of(s);
        Reconstruction rec = reconstruct(p, kEps, kTolUnit, 129);
        double res = pde_residual(rec, p);
        INFO(s.name());
        CHECK(res < 1e-8);
    }
}

TEST_CASE("pde residual is invariant under scaling Q") {
    Scenario tag = Scenario::odd(3);
    LaurentPoly<Log3Linear> Q = build_Q(tag, coupling_ratio(tag)).shape;
    MomentumProfile a = build_profile_from_poly(Q, tag);
    MomentumProfile b = build_profile_from_poly(Q.scaled(Log3Linear(Rational(7, 2))), tag);
    Reconstruction ra = reconstruct(a, kEps, kTolUnit, 65);
    Reconstruction rb = reconstruct(b, kEps, kTolUnit, 65);
    CHECK(std::fabs(pde_residual(ra, a) - pde_residual(rb, b)) < 1e-13);
}

TEST_CASE("f-convexity: finite differences of f against s reproduce phi") {
    MomentumProfile p = profile_of(Scenario::even(2));
    Reconstruction rec = reconstruct(p, kEps, kTolUnit, 129);
    int checked = 0;
    for (size_t i = 1; i + 1 < rec.nodes.size(); ++i) {
        const auto& a = rec.nodes[i - 1];
        const auto& m = rec.nodes[i];
        const auto& b = rec.nodes[i + 1];
        if (m.tau < Rational(3, 10) || m.tau > Rational(17, 10)) continue;
        double s0 = to_double(a.s.mid()), s1 = to_double(m.s.mid()), s2 = to_double(b.s.mid());
        double f0 = to_double(a.f.mid()), f1 = to_double(m.f.mid()), f2 = to_double(b.f.mid());
        double fd = 2.0 * ((f2 - f1) / (s2 - s1) - (f1 - f0) / (s1 - s0)) / (s2 - s0);
        double phi = p.phi_double(m.tau);
        CHECK(std::fabs(fd - phi) < 1e-3);
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("alpha0 integral identity holds exactly for every solvable scenario") {
    const std::vector<Scenario> scenarios = {
        Scenario::even(2), Scenario::even(4), Scenario::odd(3),
        Scenario::general(1, 0, 1), Scenario::general(2, 0, 1), Scenario::general(3, 0, 1),
        Scenario::general(4, 0, 1), Scenario::general(1, 1, 1), Scenario::general(2, 1, 0),
        Scenario::even(2, Rational(7, 3)), Scenario::general(3, 2, -1, Rational(5, 2))};
    for (const Scenario& s : scenarios) {
        Alpha0Identity id = alpha0_identity(s);
        INFO(s.name());
        CHECK(id.exact_ok);
        CHECK(id.alpha0.width() <= pow10_neg(20));
        CHECK(id.integral_side.width() <= pow10_neg(20));
        // the two certified enclosures overlap (they enclose the same number)
        CHECK_FALSE(id.alpha0.hi < id.integral_side.lo);
        CHECK_FALSE(id.integral_side.hi < id.alpha0.lo);
    }

    // numeric spot checks: alpha0 = 32 pi for Even k=2 with alpha1 = 1,
    // alpha0 = 8 b_1^2 (13 ln3 - 12) for General k=1 (0,1)
    Alpha0Identity e2 = alpha0_identity(Scenario::even(2));
    CHECK(e2.alpha0.contains(parse_rational(
        "1005309649148733836308045883/10000000000000000000000000")));
    Alpha0Identity g1 = alpha0_identity(Scenario::general(1, 0, 1));
    CHECK(g1.integral_side.contains(parse_rational(
        "2603686921806994448514509110919/1000000000000000000000000000000")));
}

TEST_CASE("volume identity: closed form equals the integral route") {
    for (long k = 1; k <= 8; ++k) CHECK(volume_identity(k));
}

TEST_CASE("certified quadrature encloses exact weighted integrals") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> coef(-12, 12);
    std::uniform_int_distribution<int> denm(1, 7);
    for (int trial = 0; trial < 20; ++trial) {
        LaurentPoly<Rational> poly;
        for (int e = -1; e <= 4; ++e) {
            int c = coef(rng);
            if (c != 0) poly.set(e, Rational(c, denm(rng)));
        }
        if (poly.is_zero()) continue;
        Log3Linear exact = integrate_0_2(poly);

        LogPoly num{to_interval_poly(poly), Interval(Rational(0))};
        LogPoly one{LaurentPoly<Interval>::monomial(0, Interval(Rational(1))),
                    Interval(Rational(0))};
        RationalIntegrand g(num, one);
        Interval got = g.integrate(Rational(1), Rational(3), pow10_neg(13)).ds;
        Interval want = exact.eval(pow10_neg(30));
        CHECK(got.width() <= pow10_neg(12));
        CHECK_FALSE(got.hi < want.lo);
        CHECK_FALSE(want.hi < got.lo);
    }
}

TEST_CASE("quadrature reports failure when eps is too small for tol") {
    MomentumProfile p = profile_of(Scenario::even(2));
    CHECK_THROWS_AS(reconstruct(p, pow10_neg(15), pow10_neg(24), 65), QuadratureError);
}

TEST_CASE("reconstruct validates its inputs") {
    MomentumProfile p = profile_of(Scenario::even(2));
    CHECK_THROWS_AS(reconstruct(p, Rational(0), kTolUnit, 10), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct(p, Rational(2), kTolUnit, 10), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct(p, kEps, Rational(0), 10), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct(p, kEps, kTolUnit, 1), std::invalid_argument);
}

TEST_CASE("reconstruction CSV has the mandatory header and one row per node") {
    MomentumProfile p = profile_of(Scenario::even(2));
    Reconstruction rec = reconstruct(p, kEps, kTolUnit, 33);
    std::string csv = reconstruction_csv(rec, p);
    CHECK(csv.rfind("tau,phi,s,F,f,rho,rho_rel_dev\n", 0) == 0);
    size_t rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == 34);  // header + 33 nodes
}
