#include "doctest.h"

#include <algorithm>
#include <random>

#include "gml/monodromy.hpp"

using namespace gml;

namespace {

const CurveParams kFix(2, 3, 5);

FuchsianSystem fixture_system() {
    return canonical_connection<Rational>(kFix, rat(5, 2), 4, rat(9, 2), {rat(1, 3), rat(-1, 2), rat(1, 4)});
}

const MonodromyRep& fixture_rep() {
    static const MonodromyRep rep = full_rep(to_complex(fixture_system()));
    return rep;
}

CMat2 diag(Complex a) { return {a, 0.0, 0.0, 1.0 / a}; }

CMat2 random_matrix(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    return {{g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}};
}

Complex odd_trace(const MonodromyRep& r) { return (r.M[0] * r.M[1] * r.M[2]).trace(); }

FuchsianSystemT<Complex> triangular_system() {
    FuchsianSystemT<Complex> s;
    s.poles = {0.0, 1.0, 2.0, 3.0, 5.0};
    s.labels = {"0", "1", "r", "s", "t"};
    std::array<Complex, 5> b{1.0, -2.0, 0.5, 3.0, -1.0};
    for (std::size_t k = 0; k < 5; ++k) s.residues.push_back({0.0, b[k], 0.0, 0.5});
    s.parabolics.resize(5);
    return s;
}

} // namespace

TEST_CASE("transport along paths") {
    auto sys = to_complex(fixture_system());
    FuchsianSystemT<Complex> zero = sys;
    for (auto& R : zero.residues) R = CMat2::zero();
    zero.poly.clear();

    Path p = Path::polyline({{0.5, -1.0}, {1.5, -0.7}, {2.5, 0.5}, {4.0, 0.4}});
    CHECK(max_abs_diff(transport(zero, p), CMat2::identity()) < 1e-14);

    auto fwd = transport(sys, p);
    auto back = transport(sys, p.reversed());
    CHECK(max_abs_diff(back * fwd, CMat2::identity()) < 1e-10);

    // concatenation composes in reverse order
    Path q = Path::polyline({{4.0, 0.4}, {4.2, -1.0}, {1.0, -2.0}});
    auto both = transport(sys, p.then(q));
    CHECK(max_abs_diff(both, transport(sys, q) * fwd) < 1e-10);

    TransportOptions loose, tight;
    loose.rel_tol = 2e-11;
    tight.rel_tol = 1e-11;
    CHECK(max_abs_diff(transport(sys, p, loose), transport(sys, p, tight)) < 10 * loose.rel_tol);

    auto det = transport_detailed(sys, p);
    CHECK(det.det_drift < 1e-10);
    CHECK(std::abs(det.matrix.det() - std::exp(det.log_det)) < 1e-9);

    Path through = Path::polyline({{0.5, -1.0}, {2.0, 0.0}, {2.5, 1.0}});
    CHECK_THROWS_AS(transport(sys, through), Error);
    Path close = Path::polyline({{0.5, -1.0}, {2.0, -0.01}, {2.5, -1.0}});
    CHECK_THROWS_AS(transport(sys, close, {}, 0.1), Error);
    CHECK_NOTHROW(transport(sys, close));
}

TEST_CASE("default loops") {
    auto sys = to_complex(fixture_system());
    auto loops = default_loops(sys);
    REQUIRE(loops.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(loops[i].target == kRepLabels[i]);
        CHECK(loops[i].basepoint.real() == 0.0);
        CHECK(loops[i].basepoint.imag() < 0.0);
        CHECK(loops[i].path.clearance(sys.poles) >= loops[i].clearance);
        CHECK(std::abs(loops[i].path.pieces.front().start() - loops[i].basepoint) < 1e-15);
        CHECK(std::abs(loops[i].path.pieces.back().end() - loops[i].basepoint) < 1e-15);
    }
    CHECK(loops[2].radius == doctest::Approx(0.25));
}

TEST_CASE("full monodromy of the canonical family") {
    const auto& rep = fixture_rep();
    for (const auto& M : rep.M) {
        CHECK(std::abs(M.trace()) < 1e-8);
        CHECK(std::abs(M.det() + 1.0) < 1e-12);
        CHECK(max_abs_diff(M * M, CMat2::identity()) < 1e-8);
    }
    CHECK(rep.product_residual() < 1e-8);
    auto serial = full_rep_serial(to_complex(fixture_system()), default_loops(to_complex(fixture_system())));
    CHECK(max_distance(serial, rep) < 1e-13);
    CHECK_FALSE(common_eigenvector(rep).has_value());

    auto tri = full_rep(triangular_system());
    CHECK(tri.product_residual() < 1e-8);
    auto v = common_eigenvector(tri);
    REQUIRE(v.has_value());
    CHECK(std::abs((*v)[1]) < 1e-8);

    std::vector<LoopSpec> wrong = default_loops(to_complex(fixture_system()));
    std::swap(wrong[0], wrong[1]);
    CHECK_THROWS_AS(full_rep(to_complex(fixture_system()), wrong), Error);
}

TEST_CASE("genus two lift") {
    const auto& rep = fixture_rep();
    auto g = genus2_lift(rep);
    CHECK(g.relation_residual() < 1e-8);
    CHECK(g.det_residual() < 1e-8);
    CHECK(std::abs(g.A1.det() - rep.M[0].det() * rep.M[1].det()) < 1e-12);

    // diagonal conjugates of diag(1,-1) with a common conjugator
    std::mt19937_64 rng(42);
    CMat2 P = random_matrix(rng);
    MonodromyRep ab;
    for (std::size_t i = 0; i < 6; ++i) ab.M[i] = P * CMat2{1.0, 0.0, 0.0, -1.0} * P.inverse();
    auto ga = genus2_lift(ab);
    CHECK(max_abs_diff(commutator(ga.A1, ga.B1), CMat2::identity()) < 1e-12);
    CHECK(max_abs_diff(commutator(ga.A2, ga.B2), CMat2::identity()) < 1e-12);

    MonodromyRep bad = rep;
    bad.M[3] = bad.M[2];
    CHECK_THROWS_AS(genus2_lift(bad), Error);
}

TEST_CASE("descent to the orbifold") {
    const auto& rep = fixture_rep();
    auto g = genus2_lift(rep);
    auto back = descend_rep(g, rep.M[1]);
    CHECK(max_distance(back, rep) < 1e-8);

    auto fit = involution_matrix(g);
    CHECK(fit.residual < 1e-8);
    auto plus = descend_rep(g, fit.M), minus = descend_rep(g, -fit.M);
    CHECK(max_distance(genus2_lift(plus), g) < 1e-8);
    CHECK(max_distance(genus2_lift(minus), g) < 1e-8);
    // the two preimages differ: an odd word changes sign
    CHECK(std::abs(odd_trace(plus) + odd_trace(minus)) < 1e-8);
    CHECK(std::abs(odd_trace(plus)) > 1e-3);

    // diagonal representation: M and -M are conjugate by diag(1,-1)
    Genus2Rep dg{diag(2.0), diag({0.5, 1.0}), diag(3.0), diag({-1.5, 0.25})};
    CMat2 anti{0.0, 1.0, 1.0, 0.0};
    auto d1 = descend_rep(dg, anti), d2 = descend_rep(dg, -anti);
    CHECK(max_distance(conjugate(d1, CMat2{1.0, 0.0, 0.0, -1.0}), d2) < 1e-12);
    CHECK(max_distance(genus2_lift(d1), dg) < 1e-12);

    CHECK_THROWS_AS(descend_rep(g, CMat2{1.0, 1.0, 0.0, 2.0}), Error);
    CHECK_THROWS_AS(descend_rep(g, CMat2{1.0, 0.0, 0.0, -1.0}), Error);
}

TEST_CASE("sign twists") {
    const auto& rep = fixture_rep();
    auto g = genus2_lift(rep);
    for (const auto& row : sign_table()) {
        auto tw = sign_twist(rep, row.m_signs);
        CHECK(max_distance(sign_twist(tw, row.m_signs), rep) == 0.0);
        auto s = lift_signs(row.m_signs);
        CHECK(max_distance(genus2_lift(tw), sign_twist(g, s)) < 1e-12);
    }
    // the lifted sign column of the tabulated rows, as computed from A1 = M0 M1, ...
    const auto& t = sign_table();
    CHECK(lift_signs(t[0].m_signs) == std::array<int, 4>{1, -1, 1, 1});
    CHECK(lift_signs(t[1].m_signs) == std::array<int, 4>{-1, 1, 1, 1});
    CHECK(lift_signs(t[2].m_signs) == std::array<int, 4>{1, 1, 1, -1});
    CHECK(lift_signs(t[3].m_signs) == std::array<int, 4>{1, 1, -1, 1});
    CHECK(lift_signs(t[4].m_signs) == t[4].printed_lift_signs);
    // printed pairs are exchanged: rows 1 <-> 2 and 3 <-> 4
    CHECK(lift_signs(t[0].m_signs) == t[1].printed_lift_signs);
    CHECK(lift_signs(t[2].m_signs) == t[3].printed_lift_signs);

    // the generators span all 32 even sign changes
    std::vector<SignCharacter> group;
    for (int mask = 0; mask < 32; ++mask) {
        SignCharacter s{1, 1, 1, 1, 1, 1};
        for (int k = 0; k < 5; ++k)
            if (mask >> k & 1) s = compose(s, t[std::size_t(k)].m_signs);
        CHECK_NOTHROW(validate_character(s));
        group.push_back(s);
    }
    std::sort(group.begin(), group.end());
    CHECK(std::unique(group.begin(), group.end()) == group.end());

    CHECK(max_distance(trace_coordinates(sign_twist(rep, t[4].m_signs)), trace_coordinates(rep)) < 1e-12);
    CHECK_THROWS_AS(sign_twist(rep, SignCharacter{-1, 1, 1, 1, 1, 1}), Error);
    CHECK_THROWS_AS(sign_twist(rep, SignCharacter{2, 1, 1, 1, 1, 2}), Error);
}

TEST_CASE("trace coordinates") {
    const auto& rep = fixture_rep();
    auto tc = trace_coordinates(rep);
    CHECK(tc.size() == 16);
    std::mt19937_64 rng(42);
    auto P = random_matrix(rng);
    CHECK(max_distance(trace_coordinates(conjugate(rep, P)), tc) < 1e-10);

    // abelian family from a diagonal lift
    Complex a = {1.3, 0.4}, b = {0.7, -0.2}, c = 2.5, d = {-0.6, 0.9};
    auto ab = descend_rep(Genus2Rep{diag(a), diag(b), diag(c), diag(d)}, CMat2{0.0, 1.0, 1.0, 0.0});
    auto ta = trace_coordinates(ab);
    CHECK(std::abs(ta[0] - (a + 1.0 / a)) < 1e-12);   // M0 M1 = A1
    CHECK(std::abs(ta[10] - (a + 1.0 / a)) < 1e-12);
    CHECK(std::abs(ta[11] - (b + 1.0 / b)) < 1e-12);
    CHECK(std::abs(ta[12] - (c + 1.0 / c)) < 1e-12);
    CHECK(std::abs(ta[13] - (d + 1.0 / d)) < 1e-12);
    CHECK(std::abs(ta[14] - (a * b + 1.0 / (a * b))) < 1e-12);
    CHECK(std::abs(ta[15] - (c * d + 1.0 / (c * d))) < 1e-12);

    TransportOptions other;
    other.rel_tol = 1e-10;
    auto tc2 = trace_coordinates(full_rep(to_complex(fixture_system()), other));
    CHECK(max_distance(tc, tc2) < 1e-7);
}

TEST_CASE("monodromy of transformed connections") {
    auto sys = fixture_system();
    const auto& rep = fixture_rep();
    auto tc = trace_coordinates(rep);

    auto g = galois_symmetry(sys, weierstrass_divisor());
    auto rg = full_rep(to_complex(g));
    CHECK(rg.product_residual() < 1e-8);
    CHECK(max_distance(trace_coordinates(rg), tc) < 1e-7);
    CHECK(std::abs(odd_trace(rg) + odd_trace(rep)) < 1e-7);

    auto minus = elementary_transform(sys, "r", *sys.parabolics[2], -1);
    auto pm = elementary_transform(minus, "r", *minus.parabolics[2], +1);
    for (const auto* s : {&minus, &pm}) {
        auto r = full_rep(to_complex(*s));
        CHECK(max_distance(trace_coordinates(r), tc) < 1e-8);
        CHECK(std::abs(odd_trace(r) - odd_trace(rep)) < 1e-8);
    }
    auto inf = elementary_transform(sys, "inf", *sys.parabolic_inf, +1);
    CHECK(max_distance(trace_coordinates(full_rep(to_complex(inf))), tc) < 1e-8);
}
