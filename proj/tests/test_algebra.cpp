#include "doctest.h"

#include "gml/curve.hpp"
#include "gml/dual.hpp"
#include "gml/identity.hpp"
#include "gml/linalg.hpp"
#include "gml/multiquad.hpp"
#include "gml/poly.hpp"
#include "gml/projective.hpp"

using namespace gml;

TEST_CASE("rationals normalize") {
    Rational q = rat(6, -4);
    CHECK(q == rat(-3, 2));
    CHECK(rational_to_string(q) == "-3/2");
    CHECK(rational_from_string("6/-4") == rat(-3, 2));
    CHECK(rational_from_string("-1.25") == rat(-5, 4));
    CHECK_THROWS_AS(rational_from_string("1/0"), Error);
    CHECK_THROWS_AS(rational_from_string("abc"), Error);
}

TEST_CASE("normalize_projective") {
    ProjPoint<Rational> p{2, 4, 0, 6};
    auto n = normalize_projective(p);
    CHECK(n == ProjPoint<Rational>{1, 2, 0, 3});
    CHECK(normalize_projective(ProjPoint<Rational>{0, 3, 0, 0}) == ProjPoint<Rational>{0, 1, 0, 0});
    CHECK(normalize_projective(n) == n);
    try {
        normalize_projective(ProjPoint<Rational>{0, 0, 0, 0});
        FAIL("expected AllZero");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::AllZero);
    }
    CHECK(proj_equal(p, n));
    CHECK_FALSE(proj_equal(p, ProjPoint<Rational>{1, 2, 0, 4}));
}

TEST_CASE("identity_test") {
    using Fn = std::function<Rational(const std::vector<Rational>&)>;
    Fn f = [](const auto& v) { return Rational(v[0] * v[0] - 1); };
    Fn g = [](const auto& v) { return Rational((v[0] - 1) * (v[0] + 1)); };
    Fn h = [](const auto& v) { return v[0]; };
    Fn sq = [](const auto& v) { return Rational(v[0] * v[0]); };
    CHECK(identity_test<Rational>(1, f, g, 10));
    CHECK(identity_test<Rational>(1, g, f, 10));
    CHECK_FALSE(identity_test<Rational>(1, sq, h, 10));
    Fn pole = [](const auto&) -> Rational { raise(Errc::DivisionByZero, "always"); };
    try {
        identity_test<Rational>(1, pole, pole, 1);
        FAIL("expected DegenerateDomain");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DegenerateDomain);
    }
}

TEST_CASE("solve_quadratic") {
    auto r = solve_quadratic(Rational(1), Rational(0), Rational(-4));
    CHECK(r.roots[0] == MultiQuad(2));
    CHECK(r.roots[1] == MultiQuad(-2));
    auto d = solve_quadratic(Rational(1), Rational(-2), Rational(1));
    CHECK(d.roots[0] == MultiQuad(1));
    CHECK(d.roots[1] == MultiQuad(1));
    auto irr = solve_quadratic(Rational(1), Rational(0), Rational(-2));
    for (auto& x : irr.roots) CHECK((x * x - MultiQuad(2)).zero());
    CHECK(std::abs(irr.roots[0].to_complex() - std::sqrt(2.0)) < 1e-14);
    auto lin = solve_quadratic(Rational(0), Rational(2), Rational(-4));
    CHECK(lin.linear);
    CHECK(lin.roots[0] == MultiQuad(2));
    auto c = solve_quadratic(Complex(1), Complex(0), Complex(1));
    for (auto& x : c.roots) CHECK(std::abs(x * x + 1.0) < 1e-12);
}

TEST_CASE("multiquad arithmetic") {
    auto sys = std::make_shared<RadicalSystem>(RadicalSystem{{2, 3, 5}, {1, -1, 1}});
    auto a = MultiQuad::radical(sys, 0), b = MultiQuad::radical(sys, 1), c = MultiQuad::radical(sys, 2);
    CHECK(a * a == MultiQuad(2));
    CHECK(b * b == MultiQuad(3));
    MultiQuad x = MultiQuad(1) + a + b * c + a * b * c * MultiQuad(rat(1, 3));
    MultiQuad y = x * x.inverse();
    CHECK(y == MultiQuad(1));
    CHECK(std::abs(b.to_complex() + std::sqrt(3.0)) < 1e-14);
    CHECK(std::abs(x.to_complex() * x.inverse().to_complex() - 1.0) < 1e-12);
}

TEST_CASE("poly and ratfunc") {
    using P = Poly<Rational>;
    P p = P::linear_root(2) * P::linear_root(2) * P::linear_root(3);
    CHECK(p.order_at(2) == 2);
    CHECK(p(Rational(4)) == Rational(4));
    RatFunc<Rational> f(P(Rational(1)), P::linear_root(2) * P::linear_root(3));
    CHECK(f.residue(2) == Rational(-1));
    CHECK(f.residue(3) == Rational(1));
    CHECK(f.laurent_coeff(2, 0) == Rational(-1));
    auto [q, rem] = p.divmod(P::linear_root(3));
    CHECK(rem.zero());
    CHECK(q == P::linear_root(2) * P::linear_root(2));
}

TEST_CASE("linalg") {
    Matrix<Rational> m(2, 3, {1, 2, 3, 2, 4, 6});
    auto ns = nullspace(m);
    CHECK(ns.size() == 2);
    for (auto& v : ns) CHECK((m * v) == Vec<Rational>{0, 0});
    Matrix<Rational> a(2, 2, {1, 2, 3, 4});
    CHECK(determinant(a) == Rational(-2));
    auto x = solve(a, Vec<Rational>{5, 6});
    CHECK(x == Vec<Rational>{-4, rat(9, 2)});
    CHECK(inverse(a) * a == Matrix<Rational>::identity(2) - Matrix<Rational>(2, 2));
}

TEST_CASE("dual numbers") {
    auto x = Dual<Rational>::variable(3, 0, 2), y = Dual<Rational>::variable(5, 1, 2);
    auto f = x * x * y / (x + y);
    CHECK(f.value() == rat(45, 8));
    // d/dx = (2xy(x+y) - x^2 y)/(x+y)^2
    CHECK(f.d(0) == rat(2 * 3 * 5 * 8 - 9 * 5, 64));
    CHECK(f.d(1) == rat(9 * 8 - 9 * 5, 64));
}

TEST_CASE("curve basics") {
    CurveParams c(2, 3, 5);
    CHECK(c.sigma1() == 10);
    CHECK(c.sigma2() == 31);
    CHECK(c.sigma3() == 30);
    CurveParams perm(5, 2, 3);
    CHECK(sigma_invariants(perm) == sigma_invariants(c));
    CHECK(f_eval(c, Rational(4)) == Rational(-24));
    CHECK(f_eval(c, Rational(1)) == 0);
    CHECK_THROWS_AS(CurveParams(2, 3, 3), Error);
    CHECK_THROWS_AS(CurveParams(0, 3, 4), Error);
    auto w = weierstrass_points(c);
    REQUIRE(w.size() == 6);
    CHECK(w[2].x == 2);
    CHECK(w[5].infinite);
    for (auto& p : w) CHECK(involution(p) == p);
    auto p = CurvePointT<Complex>::affine(c.cast<Complex>(), Complex(4), std::sqrt(Complex(-24)));
    CHECK(involution(involution(p)) == p);
    CHECK_FALSE(involution(p) == p);
    CHECK_THROWS_AS(CurvePoint::affine(c, Rational(4), Rational(1)), Error);
    using Fn = std::function<Rational(const std::vector<Rational>&)>;
    Fn lhs = [&](const auto& v) { return Rational(v[0] * v[0] * v[0] - 10 * v[0] * v[0] + 31 * v[0] - 30); };
    Fn rhs = [&](const auto& v) { return Rational((v[0] - 2) * (v[0] - 3) * (v[0] - 5)); };
    CHECK(identity_test<Rational>(1, lhs, rhs, 5));
}
