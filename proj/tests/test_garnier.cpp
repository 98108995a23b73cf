#include "doctest.h"

#include <random>

#include "gml/garnier.hpp"
#include "gml/monodromy.hpp"

using namespace gml;

namespace {

const CurveParams kFix(2, 3, 5);

ExponentScheme generic_scheme() {
    return ExponentScheme::with_kappas({rat(1, 3), rat(1, 5), rat(-1, 7), rat(2, 9), rat(-1, 4), rat(1, 6)});
}

ExponentSchemeT<Complex> to_complex(const ExponentScheme& k) {
    auto c = [](const Rational& x) { return gml::to_complex(x); };
    return {c(k.k0), c(k.k1), c(k.kr), c(k.ks), c(k.kt), c(k.kinf), c(k.rho)};
}

DarbouxCoord fixture_point() {
    return {{rat(1, 2), rat(7, 3), rat(-4, 5)}, {rat(2, 7), rat(-1, 3), rat(5, 4)}};
}

DarbouxCoord random_point(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n(-40, 40), d(1, 9);
    DarbouxCoord out;
    do {
        for (std::size_t k = 0; k < 3; ++k) {
            out.q[k] = rat(n(rng), d(rng));
            out.p[k] = rat(n(rng), d(rng));
        }
    } while (is_zero(out.delta()));
    return out;
}

GarnierStateT<Complex> flow_start() {
    DarbouxCoordT<Complex> d{{Complex(0.6, 0.3), Complex(2.4, -0.5), Complex(4.1, 0.7)},
                             {Complex(0.2, -0.1), Complex(-0.3, 0.2), Complex(0.15, 0.05)}};
    return {kFix.cast<Complex>(), d, to_complex(generic_scheme())};
}

std::vector<Complex> invariants(const GarnierStateT<Complex>& s) {
    return trace_coordinates(full_rep(darboux_connection(s)));
}

double coord_distance(const DarbouxCoordT<Complex>& a, const DarbouxCoordT<Complex>& b) {
    double out = 0.0;
    for (std::size_t k = 0; k < 3; ++k) out = std::max({out, std::abs(a.q[k] - b.q[k]), std::abs(a.p[k] - b.p[k])});
    return out;
}

} // namespace

TEST_CASE("darboux to zc") {
    auto k = generic_scheme();
    auto d = fixture_point();
    auto zc = darboux_to_zc(kFix, k, d);

    SUBCASE("permutation invariance") {
        for (const auto& e : darboux_orbit(d)) {
            auto w = darboux_to_zc(kFix, k, e);
            for (std::size_t i = 0; i < 3; ++i) {
                CHECK(w.z[i] == zc.z[i]);
                CHECK(w.c[i] == zc.c[i]);
            }
        }
        CHECK(darboux_orbit(d).size() == 6);
    }

    SUBCASE("the cubic vanishes at q and the momenta come back") {
        auto cubic = darboux_cubic(kFix, k, zc.z, zc.c);
        for (const auto& q : d.q) CHECK(is_zero(cubic(q)));
        CHECK(cubic.coeff(3) == darboux_leading(k, kFix, zc.z, zc.c));
        auto p = darboux_momenta(kFix, k, zc.z, zc.c, d.q);
        for (std::size_t m = 0; m < 3; ++m) CHECK(p[m] == d.p[m]);
    }

    SUBCASE("exact round trip") {
        auto sol = zc_to_darboux(kFix, k, zc.z, zc.c);
        CHECK(sol.orbit_size == 6);
        CHECK_FALSE(sol.multiple_root);
        CHECK(sol.coord == detail::sorted(d));
        std::mt19937_64 rng(11);
        for (int n = 0; n < 10; ++n) {
            auto e = random_point(rng);
            try {
                auto w = darboux_to_zc(kFix, k, e);
                CHECK(zc_to_darboux(kFix, k, w.z, w.c).coord == detail::sorted(e));
            } catch (const Error& err) {
                CHECK(err.code() == Errc::DenominatorZero);
            }
        }
    }

    SUBCASE("vanishing momenta") {
        DarbouxCoord z0{d.q, {}};
        auto w = darboux_to_zc(kFix, k, z0);
        std::array<Rational, 3> P{kFix.r, kFix.s, kFix.t};
        for (std::size_t i = 0; i < 3; ++i) {
            Rational prod = 1;
            for (const auto& q : d.q) prod *= q - P[i];
            CHECK(w.c[i] == -k.rho * prod / detail::pole_weight(kFix, i));
        }
    }

    SUBCASE("critical locus") {
        auto e = d;
        e.q[1] = e.q[0];
        CHECK_THROWS_AS(darboux_to_zc(kFix, k, e), Error);
        try {
            darboux_to_zc(kFix, k, e);
        } catch (const Error& err) {
            CHECK(err.code() == Errc::CriticalLocus);
        }
    }

    SUBCASE("complex mode agrees") {
        auto kc = to_complex(k);
        DarbouxCoordT<Complex> dc;
        for (std::size_t m = 0; m < 3; ++m) {
            dc.q[m] = gml::to_complex(d.q[m]);
            dc.p[m] = gml::to_complex(d.p[m]);
        }
        auto w = darboux_to_zc(kFix.cast<Complex>(), kc, dc);
        auto sol = zc_to_darboux(kFix.cast<Complex>(), kc, w.z, w.c);
        auto ref = detail::sorted(d);
        for (std::size_t m = 0; m < 3; ++m) {
            CHECK(std::abs(sol.coord.q[m] - gml::to_complex(ref.q[m])) < 1e-10);
            CHECK(std::abs(sol.coord.p[m] - gml::to_complex(ref.p[m])) < 1e-9);
        }
    }
}

TEST_CASE("gunning configuration") {
    auto k = switched_scheme<Rational>();
    std::array<Rational, 3> c0{};
    std::array<Rational, 3> z{rat(3, 2), rat(-2, 5), rat(7, 3)};
    auto sol = zc_to_darboux(kFix, k, z, c0);
    CHECK(sol.coord.q == std::array<Rational, 3>{kFix.r, kFix.s, kFix.t});

    // the momenta there, and back to z with c = 0
    std::array<Rational, 3> P{kFix.r, kFix.s, kFix.t};
    auto back = darboux_to_zc(kFix, k, sol.coord);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.c[i] == 0);
        CHECK(back.z[i] == z[i]);
        CHECK(z[i] == P[i] * (2 * (P[i] - 1) * sol.coord.p[i] + 1));
    }

    SUBCASE("leading coefficient zero") {
        std::array<Rational, 3> cz{1, 0, 0};
        std::array<Rational, 3> zz{kFix.r + k.rho, 0, 0};
        CHECK_THROWS_AS(zc_to_darboux(kFix, k, zz, cz), Error);
    }
}

TEST_CASE("garnier hamiltonian") {
    auto k = generic_scheme();
    auto d = fixture_point();
    std::array<Rational, 3> P{kFix.r, kFix.s, kFix.t};

    SUBCASE("tail at p = 0") {
        for (std::size_t i = 0; i < 3; ++i) {
            Rational tail = k.rho * (k.rho + k.kinf);
            for (const auto& q : d.q) tail *= q - P[i];
            CHECK(garnier_hamiltonian(kFix, k, d.q, std::array<Rational, 3>{}, i) ==
                  tail / detail::pole_weight(kFix, i));
        }
    }

    SUBCASE("regression values") {
        GarnierState s{kFix, d, k};
        std::array<Rational, 3> H;
        for (std::size_t i = 0; i < 3; ++i) H[i] = garnier_hamiltonian(s, i);
        CHECK(H[0] == Rational("527884154869/182918736000"));
        CHECK(H[1] == Rational("8421448225711/1536517382400"));
        CHECK(H[2] == Rational("-9198897085601/2134051920000"));
    }

    SUBCASE("quadratic in p") {
        std::array<Rational, 3> dir{rat(1, 3), rat(-2, 1), rat(3, 5)};
        for (std::size_t i = 0; i < 3; ++i) {
            auto at = [&](Rational l) {
                std::array<Rational, 3> p;
                for (std::size_t m = 0; m < 3; ++m) p[m] = d.p[m] + l * dir[m];
                return garnier_hamiltonian(kFix, k, d.q, p, i);
            };
            // third finite difference vanishes, second does not
            Rational h0 = at(0), h1 = at(1), h2 = at(2), h3 = at(3);
            CHECK(h3 - 3 * h2 + 3 * h1 - h0 == 0);
            CHECK(h2 - 2 * h1 + h0 != 0);
        }
    }

    SUBCASE("finite differences") {
        auto kc = to_complex(k);
        auto cc = kFix.cast<Complex>();
        DarbouxCoordT<Complex> dc;
        for (std::size_t m = 0; m < 3; ++m) {
            dc.q[m] = gml::to_complex(d.q[m]) + Complex(0.0, 0.1);
            dc.p[m] = gml::to_complex(d.p[m]);
        }
        auto f = isomonodromy_field(cc, kc, dc);
        const double h = 1e-5;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t m = 0; m < 3; ++m) {
                auto shift = [&](std::array<Complex, 3> v, double e) {
                    v[m] += e;
                    return v;
                };
                Complex dp = (garnier_hamiltonian(cc, kc, dc.q, shift(dc.p, h), i) -
                              garnier_hamiltonian(cc, kc, dc.q, shift(dc.p, -h), i)) /
                             (2 * h);
                Complex dq = (garnier_hamiltonian(cc, kc, shift(dc.q, h), dc.p, i) -
                              garnier_hamiltonian(cc, kc, shift(dc.q, -h), dc.p, i)) /
                             (2 * h);
                CHECK(std::abs(f.dq[i][m] - dp) < 1e-7 * std::max(1.0, std::abs(dp)));
                CHECK(std::abs(f.dp[i][m] + dq) < 1e-7 * std::max(1.0, std::abs(dq)));
            }
    }

    SUBCASE("invalid index") {
        CHECK_THROWS_AS(garnier_hamiltonian(kFix, k, d.q, d.p, 3), Error);
    }
}

TEST_CASE("transversality") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> n(-30, 30), den(1, 7);
    std::vector<CurveParams> triples{kFix, {rat(3, 2), rat(-1, 3), 7}, {-2, rat(1, 2), 4},
                                     {rat(5, 3), rat(7, 2), rat(-5, 4)}, {11, 13, rat(1, 7)}};
    for (const auto& c : triples) {
        for (int rep = 0; rep < 4; ++rep) {
            std::array<Rational, 3> p{};
            if (rep > 0)
                for (auto& x : p) x = rat(n(rng), den(rng));
            auto T = transversality_matrix(c, p);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t m = 0; m < 3; ++m) CHECK(T.matrix(i, m) == (i == m ? rat(1, 2) : Rational(0)));
            CHECK(T.det == rat(1, 8));
        }
    }
}

TEST_CASE("symplectic check") {
    auto k = generic_scheme();
    std::mt19937_64 rng(3);
    int done = 0;
    while (done < 20) {
        auto d = random_point(rng);
        try {
            CHECK(symplectic_check(kFix, k, d) == 0);
            ++done;
        } catch (const Error& e) {
            CHECK(e.code() == Errc::DenominatorZero);
        }
    }
    auto d = fixture_point();
    for (const auto& e : darboux_orbit(d)) CHECK(symplectic_check(kFix, k, e) == 0);
    auto bad = d;
    bad.q[2] = bad.q[0];
    CHECK_THROWS_AS(symplectic_check(kFix, k, bad), Error);

    auto kc = to_complex(k);
    DarbouxCoordT<Complex> dc{{Complex(0.3, 0.2), Complex(1.7, -0.4), Complex(-2.0, 1.1)},
                              {Complex(0.5, 0.5), Complex(-1.0, 0.0), Complex(0.2, -0.7)}};
    CHECK(std::abs(symplectic_check(kFix.cast<Complex>(), kc, dc)) < 1e-11);
}

TEST_CASE("garnier flow") {
    auto s = flow_start();
    std::array<Complex, 3> a{2.0, 3.0, 5.0}, b{2.05, 3.0, 5.0};

    SUBCASE("zero-length path") {
        auto out = flow(s, {a});
        CHECK(coord_distance(out.state.coord, s.coord) == 0.0);
        CHECK(flow(s, {}).steps == 0);
    }

    SUBCASE("reversible") {
        auto fwd = flow(s, {a, b});
        CHECK(fwd.state.params.r == Complex(2.05));
        auto back = flow(fwd.state, {b, a});
        CHECK(coord_distance(back.state.coord, s.coord) < 1e-7);
    }

    SUBCASE("path must start at the state") {
        CHECK_THROWS_AS(flow(s, {b, a}), Error);
    }

    SUBCASE("isomonodromy") {
        auto before = invariants(s);
        auto after = invariants(flow(s, {a, b}).state);
        CHECK(max_distance(before, after) < 1e-5);

        // the flow genuinely moves the invariants when the Hamiltonian is dropped
        GarnierStateT<Complex> frozen{CurveParamsT<Complex>(b[0], b[1], b[2]), s.coord, s.scheme};
        CHECK(max_distance(before, invariants(frozen)) > 1e-3);

        std::array<Complex, 3> c{2.0, 3.0, 5.1}, d{2.0, 2.9, 4.95};
        auto after2 = invariants(flow(s, {a, c, d}).state);
        CHECK(max_distance(before, after2) < 1e-5);
    }

    SUBCASE("flows commute") {
        std::array<Complex, 3> rs{2.05, 3.05, 5.0}, r{2.05, 3.0, 5.0}, sx{2.0, 3.05, 5.0};
        auto one = flow(s, {a, r, rs}).state;
        auto two = flow(s, {a, sx, rs}).state;
        CHECK(max_distance(invariants(one), invariants(two)) < 1e-5);
        CHECK(coord_distance(one.coord, two.coord) < 1e-7);
    }

    SUBCASE("singularity") {
        auto t = s;
        t.coord.q = {Complex(0.6, 0.0), Complex(0.6 + 1e-12, 0.0), Complex(4.1, 0.7)};
        CHECK_THROWS_AS(flow(t, {a, b}), Error);
    }
}
