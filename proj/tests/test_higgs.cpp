#include "doctest.h"

#include "gml/higgs.hpp"

using namespace gml;

namespace {

const CurveParams kFix(2, 3, 5);
using HV = HitchinValueT<Rational>;
using HC = HiggsCoordT<Rational>;
using Fn = std::function<HV(const std::vector<Rational>&)>;

bool nilpotent(const Mat2<Rational>& m) { return m.trace() == 0 && m.det() == 0; }

HC coord(const std::vector<Rational>& x) { return {x[0], x[1], x[2], x[3], x[4], x[5]}; }

// oracle value at the RST preimage of a point given in another chart
HV oracle_from(Chart chart, const std::vector<Rational>& x) {
    auto back = covector_transport(kFix, chart, Chart::RST, {x[0], x[1], x[2]}, {x[3], x[4], x[5]});
    return hitchin_from_det(kFix, HC{back.point[0], back.point[1], back.point[2], back.covector[0], back.covector[1],
                                     back.covector[2]});
}

} // namespace

TEST_CASE("higgs basis residues") {
    Rational R = 7, S = 11, T = 13;
    auto th = higgs_basis(kFix, R, S, T);
    CHECK(th[0].residue_at(Rational(0)).c == 1 - R);
    CHECK(th[0].residue_at(Rational(0)).a == 0);
    auto at_r = th[0].residue_at(Rational(2));
    CHECK(at_r.det() == 0);
    CHECK(at_r.trace() == 0);
    std::array<Rational, 3> pts{2, 3, 5};
    for (std::size_t i = 0; i < 3; ++i) {
        for (const auto& p : kFix.roots()) CHECK(nilpotent(th[i].residue_at(p)));
        CHECK(nilpotent(th[i].residue_at_infinity()));
        // as a section of Omega(W): multiply by F(x)
        Poly<Rational> e21;
        REQUIRE((th[i].entry(1, 0) * RatFunc<Rational>(kFix.quintic())).as_polynomial(e21));
        for (std::size_t j = 0; j < 3; ++j) {
            if (j == i) continue;
            CHECK(e21(pts[j]) == 0);
        }
        CHECK(e21(pts[i]) != 0);
    }
    RationalSampler smp(21);
    for (int k = 0; k < 5; ++k) {
        auto x = smp.next(6);
        auto field = higgs_field(kFix, coord(x));
        for (const auto& p : kFix.roots()) CHECK(nilpotent(field.residue_at(p)));
        CHECK(nilpotent(field.residue_at_infinity()));
    }
}

TEST_CASE("hitchin map: determinant oracle against the RST table") {
    CHECK(hitchin_from_det(kFix, HC{7, 11, 13, 0, 0, 0}) == HV{0, 0, 0});
    CHECK(hitchin_rst(kFix, HC{7, 11, 13, 0, 0, 0}) == HV{0, 0, 0});
    HC p{7, 11, 13, 1, 0, 0};
    CHECK(hitchin_from_det(kFix, p) == hitchin_rst(kFix, p));
    CHECK(hitchin_rst(kFix, p) == HV{-3150, 1680, -210});

    Fn oracle = [](const std::vector<Rational>& x) { return hitchin_from_det(kFix, coord(x)); };
    Fn table = [](const std::vector<Rational>& x) { return hitchin_rst(kFix, coord(x)); };
    CHECK(identity_test<HV>(6, oracle, table, 20));

    RationalSampler smp(8);
    auto x = smp.next(6);
    Rational mu = rat(-5, 3);
    auto a = hitchin_from_det(kFix, coord(x));
    auto b = hitchin_from_det(kFix, HC{x[0], x[1], x[2], mu * x[3], mu * x[4], mu * x[5]});
    CHECK(b == HV{mu * mu * a.h0, mu * mu * a.h1, mu * mu * a.h2});

    // h2 is minus the product of two forms linear in c
    const Rational &R = x[0], &S = x[1], &T = x[2], &cr = x[3], &cs = x[4], &ct = x[5];
    Rational f1 = cr * (R - 1) * R + cs * (S - 1) * S + ct * (T - 1) * T;
    Rational f2 = cr * (R - 2) + cs * (S - 3) + ct * (T - 5);
    CHECK(a.h2 == -f1 * f2);
}

TEST_CASE("covector transport") {
    RationalSampler smp(31);
    auto x = smp.next(6);
    std::array<Rational, 3> z{x[0], x[1], x[2]}, c{x[3], x[4], x[5]};
    auto there = covector_transport(kFix, Chart::RST, Chart::Bertram, z, c);
    auto back = covector_transport(kFix, Chart::Bertram, Chart::RST, there.point, there.covector);
    CHECK(back.point == z);
    CHECK(back.covector == c);
    auto zero = covector_transport(kFix, Chart::RST, Chart::NR, z, {0, 0, 0});
    CHECK(zero.covector == std::array<Rational, 3>{0, 0, 0});
    CHECK_THROWS_AS(covector_transport(kFix, Chart::NR, Chart::RST, z, c), Error);
    CHECK(parse_chart("bertram") == Chart::Bertram);
    CHECK(chart_name(Chart::NR) == "nr");
}

TEST_CASE("hitchin map in Bertram coordinates") {
    Fn table = [](const std::vector<Rational>& x) {
        return hitchin_bertram(kFix, {1, x[0], x[1], x[2]}, {x[3], x[4], x[5]});
    };
    Fn oracle = [](const std::vector<Rational>& x) { return oracle_from(Chart::Bertram, x); };
    CHECK(identity_test<HV>(6, table, oracle, 20));
    CHECK(hitchin_bertram(kFix, {1, 2, 3, 4}, {0, 0, 0}) == HV{0, 0, 0});
    CHECK(hitchin_bertram(kFix, {1, 2, 3, 4}, {5, 6, 0}).h2 == 0);
    // projective invariance
    CHECK(hitchin_bertram(kFix, {2, 4, 6, 8}, {5, 6, 7}) == hitchin_bertram(kFix, {1, 2, 3, 4}, {5, 6, 7}));
    CHECK_THROWS_AS(hitchin_bertram(kFix, {0, 1, 2, 3}, {1, 1, 1}), Error);
}

TEST_CASE("hitchin map in NR coordinates") {
    // covectors pushed through the 2:1 map off the Kummer surface
    Fn viaRST = [](const std::vector<Rational>& x) {
        auto cn = covector_transport(kFix, Chart::RST, Chart::NR, {x[0], x[1], x[2]}, {x[3], x[4], x[5]});
        return hitchin_nr(kFix, {cn.point[0], cn.point[1], cn.point[2], 1}, cn.covector);
    };
    Fn oracle = [](const std::vector<Rational>& x) { return hitchin_from_det(kFix, coord(x)); };
    CHECK(identity_test<HV>(6, viaRST, oracle, 20));
    CHECK(hitchin_nr(kFix, {1, 2, 3, 4}, {0, 0, 0}) == HV{0, 0, 0});
    CHECK_THROWS_AS(hitchin_nr(kFix, {1, 2, 3, 0}, {1, 1, 1}), Error);
    // the two RST preimages of one NR point carry the same Hitchin values
    RationalSampler smp(4);
    auto x = smp.next(6);
    auto cn = covector_transport(kFix, Chart::RST, Chart::NR, {x[0], x[1], x[2]}, {x[3], x[4], x[5]});
    auto g = rst_galois(kFix, RSTCoordT<Rational>{P1Point<Rational>::finite(x[0]), P1Point<Rational>::finite(x[1]),
                                                   P1Point<Rational>::finite(x[2])});
    std::array<Rational, 3> zg{g[0].value(), g[1].value(), g[2].value()};
    auto cd = kFix.cast<Dual<Rational>>();
    auto phi = [&](const std::array<Dual<Rational>, 3>& p) { return chart_map(cd, Chart::RST, Chart::NR, p); };
    auto J = jacobian<Rational>(phi, zg);
    auto cg = J.transpose() * Vec<Rational>{cn.covector[0], cn.covector[1], cn.covector[2]};
    CHECK(hitchin_from_det(kFix, HC{zg[0], zg[1], zg[2], cg[0], cg[1], cg[2]}) == hitchin_from_det(kFix, coord(x)));
}

TEST_CASE("hitchin map in symmetric coordinates") {
    using MQ = MultiQuad;
    auto cm = kFix.cast<MQ>();
    RationalSampler smp(3, 50);
    int agree = 0;
    for (int mask = 0; mask < 16; ++mask) {
        std::array<int, 4> sg{};
        for (int i = 0; i < 4; ++i) sg[std::size_t(i)] = (mask >> i & 1) ? -1 : 1;
        auto h = hudson_forms(kFix, sg);
        auto x = smp.next(6);
        auto hn = hitchin_nr(kFix, {x[0], x[1], x[2], 1}, {x[3], x[4], x[5]});
        std::array<MQ, 3> v{x[0], x[1], x[2]}, mu{x[3], x[4], x[5]};
        auto tm = lift_matrix(h.t_map);
        auto phi = [&](const std::array<Dual<MQ>, 3>& p) { return nr_to_sym_affine(tm, p); };
        auto ta = nr_to_sym_affine(h.t_map, v);
        auto eta = push_covector<MQ>(phi, v, mu);
        auto hs = hitchin_sym(cm, {ta[0], ta[1], ta[2], MQ(1)}, eta);
        if (hs == HitchinValueT<MQ>{MQ(hn.h0), MQ(hn.h1), MQ(hn.h2)}) ++agree;
    }
    CHECK(agree == 16);
    std::vector<MQ> t{1, 2, 3, 4};
    CHECK(hitchin_sym(cm, t, {MQ(0), MQ(0), MQ(0)}) == HitchinValueT<MQ>{MQ(0), MQ(0), MQ(0)});
}

TEST_CASE("hitchin hamiltonians poisson-commute") {
    RationalSampler smp(17);
    const HamiltonianTag tags[3] = {HamiltonianTag::H0, HamiltonianTag::H1, HamiltonianTag::H2};
    for (int k = 0; k < 3; ++k) {
        auto p = coord(smp.next(6));
        for (auto f : tags)
            for (auto g : tags) CHECK(poisson_bracket(kFix, f, g, p) == 0);
    }
    // a non-commuting pair for contrast: {h0, R} style check through a perturbed table
    auto p = coord(smp.next(6));
    auto cd = kFix.cast<Dual<Rational>>();
    HiggsCoordT<Dual<Rational>> pd{Dual<Rational>::variable(p.R, 0, 6),  Dual<Rational>::variable(p.S, 1, 6),
                                   Dual<Rational>::variable(p.T, 2, 6),  Dual<Rational>::variable(p.cr, 3, 6),
                                   Dual<Rational>::variable(p.cs, 4, 6), Dual<Rational>::variable(p.ct, 5, 6)};
    auto h = hitchin_rst(cd, pd);
    Rational bracket_with_R = h.h0.d(3);
    CHECK(bracket_with_R != 0);
    CHECK(parse_hamiltonian("h2") == HamiltonianTag::H2);
    CHECK_THROWS_AS(parse_hamiltonian("h3"), Error);
}

TEST_CASE("van Geemen-Previato hamiltonians") {
    HV h{1, 1, 1};
    auto H = vgp_hamiltonians(kFix, h);
    CHECK(H[5] == 0);
    CHECK(H[0] == Rational(4) / 30);
    CHECK(H[1] == rat(-31, 30));
    RationalSampler smp(2);
    auto x = smp.next(3);
    HV g{x[0], x[1], x[2]};
    auto G = vgp_hamiltonians(kFix, g);
    CHECK(G[0] == 4 * x[0] / kFix.sigma3());
    CHECK(G[5] == 0);
}
