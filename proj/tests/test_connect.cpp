#include "doctest.h"

#include <random>

#include "gml/connect.hpp"

using namespace gml;

namespace {

const CurveParams kFix(2, 3, 5);
using MQ = MultiQuad;
using M2 = Mat2<Rational>;
using Cubic = std::array<Rational, 4>;

const Rational kHalf = rat(1, 2);

bool eigenvalues_are(const M2& m, const Rational& a, const Rational& b) {
    return m.trace() == a + b && m.det() == a * b;
}

ExponentScheme random_scheme(RationalSampler& smp) {
    auto k = smp.next(5);
    Rational rho = smp.next();
    Rational kinf = 1 - 2 * rho - k[0] - k[1] - k[2] - k[3] - k[4];
    return {k[0], k[1], k[2], k[3], k[4], kinf, rho};
}

Cubic cubic_of(const Poly<Rational>& p) { return {p.coeff(0), p.coeff(1), p.coeff(2), p.coeff(3)}; }

Poly<Rational> lin(const Rational& a) { return Poly<Rational>::linear_root(a); }

struct ExactTyurin {
    TyurinCoordT<MQ> tc;
};

TyurinCoordT<MQ> exact_tyurin(const Rational& x1, const Rational& x2, const Rational& l) {
    auto sys = std::make_shared<RadicalSystem>(RadicalSystem{{kFix.f_eval(x1), kFix.f_eval(x2)}, {1, -1}});
    auto c = kFix.cast<MQ>();
    return {CurvePointT<MQ>::affine(c, MQ(x1), MQ::radical(sys, 0)),
            CurvePointT<MQ>::affine(c, MQ(x2), MQ::radical(sys, 1)), P1Point<MQ>::finite(MQ(l))};
}

std::array<Complex, 5> complex_point(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    auto c = kFix.cast<Complex>();
    Complex l(0.6 + 0.2 * g(rng), 0.3 + 0.2 * g(rng));
    Complex x1(1.5 + g(rng), 0.5 + g(rng)), x2(-0.7 + g(rng), 1.2 + g(rng));
    return {l, x1, std::sqrt(c.f_eval(x1)), x2, std::sqrt(c.f_eval(x2))};
}

} // namespace

TEST_CASE("exponent schemes") {
    auto h = ExponentScheme::half();
    CHECK(h.defect() == 0);
    CHECK(h.rho == -1);
    ExponentScheme bad{1, 1, 1, 1, 1, 1, 1};
    CHECK_THROWS_AS(bad.validate(), Error);
    auto k = ExponentScheme::with_kappas({rat(1, 3), 1, 2, 3, 4, 5});
    CHECK(k.defect() == 0);
}

TEST_CASE("universal connection") {
    auto u0 = universal_connection(kFix, ExponentScheme::half(), {7, 11, 13}, {0, 0, 0});
    CHECK(u0.residues[0] == M2{0, 0, -1, kHalf});
    CHECK(u0.degree == -1);
    CHECK(u0.fuchs_defect() == 0);

    RationalSampler smp(5, 40);
    for (int trial = 0; trial < 5; ++trial) {
        auto k = random_scheme(smp);
        auto zc = smp.next(6);
        std::array<Rational, 3> z{zc[0], zc[1], zc[2]}, c{zc[3], zc[4], zc[5]};
        auto u = universal_connection(kFix, k, z, c);
        std::array<Rational, 5> kap{k.k0, k.k1, k.kr, k.ks, k.kt};
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(eigenvalues_are(u.residues[i], 0, kap[i]));
            CHECK(parabolic_eigenvalue(u, i) == kap[i]);
        }
        CHECK(eigenvalues_are(u.residue_inf, k.rho, k.kinf + k.rho));
        CHECK(parabolic_eigenvalue(u, kInfPole) == k.kinf + k.rho);
        CHECK(u.fuchs_defect() == 0);
        auto dirs = zero_eigendirections(k, z, c);
        for (std::size_t i = 0; i < 5; ++i) {
            auto v = u.residues[i].apply(dirs[i]);
            CHECK(v[0] == 0);
            CHECK(v[1] == 0);
        }
        // the printed form z_i - kappa_i / c_i is not in the kernel
        auto w = u.residues[2].apply({z[0] - k.kr / c[0], 1});
        CHECK_FALSE((w[0] == 0 && w[1] == 0));
    }
}

TEST_CASE("canonical connection") {
    auto c0 = canonical_connection<Rational>(kFix, 7, 11, 13, {0, 0, 0});
    CHECK(c0.residue_inf == M2{0, 0, -1, kHalf});
    CHECK(c0.degree == -3);

    RationalSampler smp(9);
    auto x = smp.next(6);
    std::array<Rational, 3> cc{x[3], x[4], x[5]};
    auto sys = canonical_connection(kFix, x[0], x[1], x[2], cc);
    Rational corner = -1 - cc[0] * (x[0] - 2) - cc[1] * (x[1] - 3) - cc[2] * (x[2] - 5);
    CHECK(sys.residue_inf == M2{0, 0, corner, kHalf});
    for (std::size_t i = 0; i < 5; ++i) CHECK(eigenvalues_are(sys.residues[i], 0, kHalf));
    CHECK(sys.fuchs_defect() == 0);

    // universal family at kappa = 1/2 tensored with (O(-1), single pole at infinity)
    auto u = universal_connection(kFix, ExponentScheme::half(), {x[0], x[1], x[2]}, cc);
    auto tw = twist_rank1(u, {{"inf", Rational(1)}});
    for (std::size_t i = 0; i < 5; ++i) CHECK(tw.residues[i] == sys.residues[i]);
    CHECK(tw.residue_inf == sys.residue_inf);
    CHECK(tw.degree == sys.degree);
    CHECK(sys.matrix(Rational(7)) == tw.matrix(Rational(7)));
}

TEST_CASE("elementary transformations") {
    RationalSampler smp(12);
    auto x = smp.next(6);
    auto sys = canonical_connection(kFix, x[0], x[1], x[2], {x[3], x[4], x[5]});
    auto p = *sys.parabolics[2];  // the 1/2-direction at r
    CHECK(parabolic_eigenvalue(sys, 2) == kHalf);

    auto minus = elementary_transform(sys, "r", p, -1);
    CHECK(eigenvalues_are(minus.residues[2], kHalf, 1));
    CHECK(parabolic_eigenvalue(minus, 2) == 1);
    CHECK(minus.degree == -4);
    CHECK(minus.fuchs_defect() == 0);
    for (std::size_t i : {0, 1, 3, 4}) CHECK(eigenvalues_are(minus.residues[i], 0, kHalf));
    CHECK(minus.residue_inf == sys.residue_inf);

    auto plus = elementary_transform(sys, "r", p, +1);
    CHECK(eigenvalues_are(plus.residues[2], -kHalf, 0));
    CHECK(plus.degree == -2);

    auto back = elementary_transform(minus, "r", *minus.parabolics[2], +1);
    CHECK(eigenvalues_are(back.residues[2], 0, kHalf));
    CHECK(back.degree == sys.degree);
    auto back2 = elementary_transform(plus, "r", *plus.parabolics[2], -1);
    CHECK(eigenvalues_are(back2.residues[2], 0, kHalf));
    CHECK(back2.degree == sys.degree);

    // along the 0-direction instead
    Dir2<Rational> z0{x[1] * 0 + 1, 1};
    auto at1 = elementary_transform(sys, "1", *sys.parabolics[1], +1);
    CHECK(eigenvalues_are(at1.residues[1], -kHalf, 0));
    CHECK_THROWS_AS(elementary_transform(sys, "0", z0, +1), Error);

    // at infinity, in the frame at infinity
    auto inf = elementary_transform(sys, "inf", *sys.parabolic_inf, +1);
    CHECK(eigenvalues_are(inf.residue_inf, -kHalf, 0));
    CHECK(inf.degree == -2);
    for (std::size_t i = 0; i < 5; ++i) CHECK(inf.residues[i] == sys.residues[i]);
    auto infb = elementary_transform(inf, "inf", *inf.parabolic_inf, -1);
    CHECK(eigenvalues_are(infb.residue_inf, 0, kHalf));
    CHECK(infb.degree == -3);
    CHECK_THROWS_AS(elementary_transform(sys, "q", p, 1), Error);
}

TEST_CASE("rank one twists") {
    RationalSampler smp(14);
    auto x = smp.next(6);
    auto sys = canonical_connection(kFix, x[0], x[1], x[2], {x[3], x[4], x[5]});
    std::vector<std::pair<std::string, Rational>> dlog{{"0", 1}, {"r", 2}, {"inf", -3}}, inv{{"0", -1}, {"r", -2}, {"inf", 3}};
    auto t = twist_rank1(sys, dlog);
    CHECK(t.residues[0].trace() == sys.residues[0].trace() + 2);
    auto back = twist_rank1(t, inv);
    for (std::size_t i = 0; i < 5; ++i) CHECK(back.residues[i] == sys.residues[i]);
    CHECK(back.residue_inf == sys.residue_inf);
    CHECK(back.degree == sys.degree);

    std::vector<std::pair<std::string, Rational>> root;
    for (const auto& w : weierstrass_divisor()) root.emplace_back(w, kHalf);
    auto r = twist_rank1(sys, root);
    for (std::size_t i = 0; i < 5; ++i) CHECK(eigenvalues_are(r.residues[i], kHalf, 1));
    CHECK(eigenvalues_are(r.residue_inf, kHalf, 1));
    CHECK(r.degree == sys.degree - 6);
    CHECK_THROWS_AS(twist_rank1(sys, {{"0", kHalf}}), Error);
}

TEST_CASE("galois symmetry") {
    RationalSampler smp(15);
    auto x = smp.next(6);
    auto sys = canonical_connection(kFix, x[0], x[1], x[2], {x[3], x[4], x[5]});
    auto g = galois_symmetry(sys, weierstrass_divisor());
    CHECK(g.degree == -3);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(eigenvalues_are(g.residues[i], 0, kHalf));
        CHECK(parabolic_eigenvalue(g, i) == kHalf);
    }
    CHECK(eigenvalues_are(g.residue_inf, 0, kHalf));
    auto gg = galois_symmetry(g, weierstrass_divisor());
    for (std::size_t i = 0; i < 5; ++i) CHECK(eigenvalues_are(gg.residues[i], 0, kHalf));
    CHECK(gg.fuchs_defect() == 0);

    auto pair = galois_symmetry(sys, {"0", "1"});
    CHECK(pair.degree == -3);
    CHECK(eigenvalues_are(pair.residues[0], 0, kHalf));
    CHECK_THROWS_AS(galois_symmetry(sys, {"0", "1", "r"}), Error);
}

TEST_CASE("apparent map") {
    auto c0 = canonical_connection<Rational>(kFix, 7, 11, 13, {0, 0, 0});
    auto a0 = apparent_cubic(c0);
    CHECK_FALSE(a0.identically_zero);
    CHECK(a0.coeffs == cubic_of(lin(2) * lin(3) * lin(5)));

    Rational R = 7, S = 11, T = 13;
    auto ar = apparent_map(kFix, R, S, T, Rational(0), {1, 0, 0});
    CHECK(ar == cubic_of(Poly<Rational>(std::vector<Rational>{-2 * (R - 1), R - 2}) * lin(3) * lin(5)));
    // hyperplane (R - r) b3 - (sigma1 R - r(1+s+t)) b2 + (sigma2 R - r(s+t+st)) b1 - sigma3 (R - 1) b0
    CHECK(ar[3] == R - 2);
    CHECK(ar[2] == -(10 * R - 2 * 9));
    CHECK(ar[1] == 31 * R - 2 * 23);
    CHECK(ar[0] == -30 * (R - 1));

    // linear in (lambda, c)
    RationalSampler smp(16);
    auto v = smp.next(8);
    auto lhs = apparent_map(kFix, R, S, T, v[0], {v[1], v[2], v[3]});
    auto p = apparent_map(kFix, R, S, T, v[4], {v[5], v[6], v[7]});
    auto sum = apparent_map(kFix, R, S, T, v[0] + v[4], {v[1] + v[5], v[2] + v[6], v[3] + v[7]});
    for (std::size_t k = 0; k < 4; ++k) CHECK(sum[k] == lhs[k] + p[k]);

    for (int trial = 0; trial < 5; ++trial) {
        auto z = smp.next(3);
        auto b = apparent_bertram(kFix, z[0], z[1], z[2]);
        auto ref = rst_to_bertram(kFix, {P1Point<Rational>::finite(z[0]), P1Point<Rational>::finite(z[1]),
                                         P1Point<Rational>::finite(z[2])});
        CHECK(proj_equal(b, ref));
    }
    FuchsianSystem empty = canonical_connection<Rational>(kFix, 7, 11, 13, {0, 0, 0});
    for (auto& Rm : empty.residues) Rm.c = 0;
    CHECK(apparent_cubic(empty).identically_zero);
}

TEST_CASE("tyurin constraints and the two symmetric connections") {
    RationalSampler smp(18, 30);
    int checked = 0;
    while (checked < 10) {
        auto v = smp.next(3);
        if (v[0] == v[1] || kFix.f_eval(v[0]) == 0 || kFix.f_eval(v[1]) == 0) continue;
        if (v[2] * v[2] == 1 || v[2] == 0) continue;
        auto tc = exact_tyurin(v[0], v[1], v[2]);
        auto [plus, minus] = nabla_pm(kFix, tc);
        for (const auto& r : tyurin_constraints(kFix, tc, plus)) CHECK(is_zero(r));
        for (const auto& r : tyurin_constraints(kFix, tc, minus)) CHECK(is_zero(r));
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(plus.A[k] == plus.C[k]);
            CHECK(minus.A[k] == -minus.C[k]);
        }
        MQ l = MQ(v[2]), one(1);
        CHECK(plus.b == (l * l + one) / (l * l - one) * MQ(v[0] - v[1]));

        auto sec = lagrangian_section(kFix, tc);
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(sec.A[k] == (plus.A[k] + minus.A[k]) / MQ(2));
            CHECK(sec.C[k] == (plus.C[k] + minus.C[k]) / MQ(2));
        }
        CHECK(sec.b == (plus.b + minus.b) / MQ(2));
        CHECK(sec.b == (l * l * l * l + one) / (l * l * l * l - one) * MQ(v[0] - v[1]));
        // the section itself solves the affine system
        for (const auto& r : tyurin_constraints(kFix, tc, sec)) CHECK(is_zero(r));

        TyurinConnectionT<MQ> zero{{MQ(0), MQ(0), MQ(0), MQ(0)}, {MQ(0), MQ(0), MQ(0), MQ(0)}, MQ(0), tc};
        auto rz = tyurin_constraints(kFix, tc, zero);
        CHECK(rz[0] == MQ(0));
        CHECK(rz[2] == -tc.p1.y * (tc.p2.x - tc.p1.x));
        CHECK(rz[3] == -tc.p2.y * (tc.p1.x - tc.p2.x));
        CHECK(rz[5] == MQ(0));
        ++checked;
    }
    auto tc = exact_tyurin(7, 11, 1);
    CHECK_THROWS_AS(lagrangian_section(kFix, tc), Error);
    auto same = exact_tyurin(7, 7, 3);
    CHECK_THROWS_AS(nabla_pm(kFix, same), Error);
}

TEST_CASE("the section is lagrangian") {
    // exact: forward-mode derivative over the radical extension
    RationalSampler smp(19, 30);
    for (int trial = 0; trial < 5; ++trial) {
        auto v = smp.next(6);
        if (v[0] == v[1] || v[2] * v[2] == 1) continue;
        auto tc = exact_tyurin(v[0], v[1], v[2]);
        std::array<MQ, 5> pt{tc.lambda.value(), tc.p1.x, tc.p1.y, tc.p2.x, tc.p2.y};
        auto cm = kFix.cast<MQ>();
        auto tan = curve_tangent(cm, pt, MQ(v[3]), MQ(v[4]), MQ(v[5]));
        CHECK(is_zero(eta_pullback(cm, pt, tan)));
        std::array<MQ, 5> off = tan;
        off[2] = off[2] + MQ(1);
        CHECK_FALSE(is_zero(eta_pullback(cm, pt, off)));
    }

    // numeric: central differences
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g(0.0, 1.0);
    auto cc = kFix.cast<Complex>();
    auto pt = complex_point(rng);
    for (int trial = 0; trial < 20; ++trial) {
        auto tan = curve_tangent(cc, pt, Complex(g(rng), g(rng)), Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
        CHECK(std::abs(lagrangian_pullback_check(cc, pt, tan)) < 1e-6);
    }
    CHECK(std::abs(lagrangian_pullback_check(cc, pt, {0.0, 0.0, 0.0, 0.0, 0.0})) < 1e-12);
    std::array<Complex, 5> bad{Complex(0.3, 0.1), Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0)};
    CHECK(std::abs(lagrangian_pullback_check(cc, pt, bad)) > 1e-3);
}
