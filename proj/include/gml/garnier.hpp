#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "gml/connect.hpp"
#include "gml/dual.hpp"
#include "gml/linalg.hpp"

namespace gml {

template <class F>
struct DarbouxCoordT {
    std::array<F, 3> q, p;

    F delta() const { return (q[0] - q[1]) * (q[1] - q[2]) * (q[2] - q[0]); }
    friend bool operator==(const DarbouxCoordT& a, const DarbouxCoordT& b) {
        for (std::size_t k = 0; k < 3; ++k)
            if (!is_zero(F(a.q[k] - b.q[k])) || !is_zero(F(a.p[k] - b.p[k]))) return false;
        return true;
    }
};

template <class F>
struct GarnierStateT {
    CurveParamsT<F> params;
    DarbouxCoordT<F> coord;
    ExponentSchemeT<F> scheme;
};

template <class F>
struct ZCPointT {
    std::array<F, 3> z, c;
};

template <class F>
struct DarbouxSolutionT {
    DarbouxCoordT<F> coord;  // sorted representative of the permutation orbit
    int orbit_size = 6;
    bool multiple_root = false;
};

// kappas (1/2, 1/2, -1/2, -1/2, -1/2, 1/2) at (0, 1, r, s, t, inf), rho = 1/2
template <class F>
ExponentSchemeT<F> switched_scheme() {
    F h = from_rational<F>(rat(1, 2));
    return {h, h, -h, -h, -h, h, h};
}

namespace detail {

template <class F>
std::array<F, 3> rst(const CurveParamsT<F>& c) {
    return {c.r, c.s, c.t};
}

// i (i - 1) prod_{j != i} (i - j)
template <class F>
F pole_weight(const CurveParamsT<F>& c, std::size_t i) {
    auto P = rst(c);
    F out = P[i] * (P[i] - from_int<F>(1));
    for (std::size_t j = 0; j < 3; ++j)
        if (j != i) out *= P[i] - P[j];
    return out;
}

template <class F, class G>
G darboux_lambda(const CurveParamsT<F>& c, const F& rho, const DarbouxCoordT<G>& d, int replaced) {
    auto P = rst(c);
    G out = lift_to<G>(rho);
    for (std::size_t k = 0; k < 3; ++k) {
        G num = d.p[k];
        for (std::size_t a = 0; a < 3; ++a)
            num *= d.q[k] - (int(a) == replaced ? from_int<G>(1) : lift_to<G>(P[a]));
        G den = from_int<G>(1);
        for (std::size_t l = 0; l < 3; ++l)
            if (l != k) den *= d.q[k] - d.q[l];
        out += num / den;
    }
    return out;
}

template <class F>
bool scalar_less(const F& a, const F& b) {
    if constexpr (std::is_same_v<F, Complex>) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    } else {
        return a < b;
    }
}

} // namespace detail

template <class F, class G>
ZCPointT<G> darboux_to_zc(const CurveParamsT<F>& c, const ExponentSchemeT<F>& k, const DarbouxCoordT<G>& d) {
    if (is_zero(d.delta())) raise(Errc::CriticalLocus, "q1, q2, q3 are not distinct");
    G L = detail::darboux_lambda(c, k.rho, d, -1);
    if (is_zero(L)) raise(Errc::DenominatorZero, "Lambda vanishes");
    auto P = detail::rst(c);
    ZCPointT<G> out;
    for (std::size_t i = 0; i < 3; ++i) {
        G Q = from_int<G>(1);
        for (std::size_t l = 0; l < 3; ++l) Q *= d.q[l] - lift_to<G>(P[i]);
        out.c[i] = -Q * L / lift_to<G>(detail::pole_weight(c, i));
        out.z[i] = lift_to<G>(P[i]) * detail::darboux_lambda(c, k.rho, d, int(i)) / L;
    }
    return out;
}

template <class F>
ZCPointT<F> darboux_to_zc(const GarnierStateT<F>& s) {
    return darboux_to_zc(s.params, s.scheme, s.coord);
}

// x(x-1)(x-r)(x-s)(x-t) times the (2,1) entry of the universal family: a cubic
// with roots q1, q2, q3 and leading coefficient -rho + sum c_i (z_i - i).
template <class F>
Poly<F> darboux_cubic(const CurveParamsT<F>& c, const ExponentSchemeT<F>& k, const std::array<F, 3>& z,
                      const std::array<F, 3>& cc) {
    auto P = detail::rst(c);
    Poly<F> out(-k.rho);
    for (const auto& a : P) out *= Poly<F>::linear_root(a);
    for (std::size_t i = 0; i < 3; ++i) {
        Poly<F> term(std::vector<F>{-P[i] * (z[i] - from_int<F>(1)), z[i] - P[i]});
        for (std::size_t j = 0; j < 3; ++j)
            if (j != i) term *= Poly<F>::linear_root(P[j]);
        out += Poly<F>(cc[i]) * term;
    }
    return out;
}

template <class F>
F darboux_leading(const ExponentSchemeT<F>& k, const CurveParamsT<F>& c, const std::array<F, 3>& z,
                  const std::array<F, 3>& cc) {
    auto P = detail::rst(c);
    F out = -k.rho;
    for (std::size_t i = 0; i < 3; ++i) out += cc[i] * (z[i] - P[i]);
    return out;
}

// Eigenvalue of e1 at x = q_k.  Terms c_i z_i / (q_k - i) with q_k within
// `threshold` of the pole i are replaced by the regular form obtained from the cubic.
template <class F>
std::array<F, 3> darboux_momenta(const CurveParamsT<F>& c, const ExponentSchemeT<F>& k, const std::array<F, 3>& z,
                                 const std::array<F, 3>& cc, const std::array<F, 3>& q, double threshold = 1e-6) {
    auto P = detail::rst(c);
    F one = from_int<F>(1);
    F lead = darboux_leading(k, c, z, cc);
    std::array<F, 3> out;
    for (std::size_t m = 0; m < 3; ++m) {
        if (is_zero(F(q[m] - one))) raise(Errc::DenominatorZero, "q_k = 1");
        F v = -k.rho / (q[m] - one);
        for (std::size_t i = 0; i < 3; ++i) {
            v += cc[i] * z[i] / (q[m] - one);
            bool close = is_exact_v<F> ? is_zero(F(q[m] - P[i]))
                                       : magnitude(F(q[m] - P[i])) <= threshold * std::max(1.0, magnitude(P[i]));
            if (close) {
                F prod = one;
                for (std::size_t l = 0; l < 3; ++l)
                    if (l != m) prod *= q[l] - P[i];
                v -= z[i] * lead * prod / detail::pole_weight(c, i);
            } else {
                v -= cc[i] * z[i] / (q[m] - P[i]);
            }
        }
        out[m] = v;
    }
    return out;
}

namespace detail {

template <class F>
DarbouxCoordT<F> sorted(const DarbouxCoordT<F>& d) {
    std::array<std::size_t, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (!is_zero(F(d.q[a] - d.q[b]))) return scalar_less(d.q[a], d.q[b]);
        return scalar_less(d.p[a], d.p[b]);
    });
    DarbouxCoordT<F> out;
    for (std::size_t k = 0; k < 3; ++k) {
        out.q[k] = d.q[idx[k]];
        out.p[k] = d.p[idx[k]];
    }
    return out;
}

std::array<Complex, 3> cubic_roots(const std::array<Complex, 4>& coeffs);
std::array<Rational, 3> rational_cubic_roots(const Poly<Rational>& p);

template <class F>
std::array<F, 3> roots_of(const Poly<F>& p) {
    if constexpr (std::is_same_v<F, Complex>) {
        return cubic_roots({p.coeff(0), p.coeff(1), p.coeff(2), p.coeff(3)});
    } else {
        return rational_cubic_roots(p);
    }
}

} // namespace detail

// In exact mode the cubic must split over Q.
template <class F>
DarbouxSolutionT<F> zc_to_darboux(const CurveParamsT<F>& c, const ExponentSchemeT<F>& k, const std::array<F, 3>& z,
                                  const std::array<F, 3>& cc, double threshold = 1e-6) {
    k.validate();
    if (near_zero(darboux_leading(k, c, z, cc), 1.0, 1e-14))
        raise(Errc::LeadingCoefficientZero, "the Darboux cubic drops degree");
    auto cubic = darboux_cubic(c, k, z, cc);
    auto q = detail::roots_of(cubic);
    DarbouxSolutionT<F> out;
    out.coord = detail::sorted(DarbouxCoordT<F>{q, darboux_momenta(c, k, z, cc, q, threshold)});
    const auto& qs = out.coord.q;
    auto same = [&](const F& a, const F& b) {
        if constexpr (is_exact_v<F>) return is_zero(F(a - b));
        else return magnitude(F(a - b)) <= 1e-7 * std::max(1.0, magnitude(a));
    };
    int pairs = int(same(qs[0], qs[1])) + int(same(qs[1], qs[2])) + int(same(qs[0], qs[2]));
    out.multiple_root = pairs > 0;
    out.orbit_size = pairs == 0 ? 6 : (pairs == 1 ? 3 : 1);
    return out;
}

template <class F>
std::vector<DarbouxCoordT<F>> darboux_orbit(const DarbouxCoordT<F>& d) {
    std::vector<DarbouxCoordT<F>> out;
    std::array<std::size_t, 3> idx{0, 1, 2};
    do {
        DarbouxCoordT<F> e;
        for (std::size_t k = 0; k < 3; ++k) {
            e.q[k] = d.q[idx[k]];
            e.p[k] = d.p[idx[k]];
        }
        if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

namespace detail {

template <class F>
struct HamiltonianPolys {
    Poly<F> Fq, FG;
    std::array<Poly<F>, 3> Fi;  // F / (x - i)
};

template <class F>
HamiltonianPolys<F> hamiltonian_polys(const CurveParamsT<F>& c, const ExponentSchemeT<F>& k) {
    HamiltonianPolys<F> h;
    h.Fq = c.quintic();
    auto roots = c.roots();
    std::array<F, 5> kap{k.k0, k.k1, k.kr, k.ks, k.kt};
    for (std::size_t j = 0; j < 5; ++j) h.FG += Poly<F>(kap[j]) * h.Fq.deflate(roots[j]).first;
    for (std::size_t i = 0; i < 3; ++i) h.Fi[i] = h.Fq.deflate(roots[2 + i]).first;
    return h;
}

} // namespace detail

// H_i for i = 0, 1, 2 standing for r, s, t.  F(q)(p^2 - G(q) p + p/(q - i)) is
// evaluated as F p^2 - (F G) p + (F/(x - i)) p, which is regular at the poles.
template <class F, class G>
G garnier_hamiltonian(const CurveParamsT<F>& c, const ExponentSchemeT<F>& k, const std::array<G, 3>& q,
                      const std::array<G, 3>& p, std::size_t i) {
    if (i > 2) raise(Errc::InvalidLabel, "Hamiltonian index must be r, s or t");
    auto P = detail::rst(c);
    auto h = detail::hamiltonian_polys(c, k);
    G pole = lift_to<G>(P[i]);
    G out = from_int<G>(0);
    for (std::size_t l = 0; l < 3; ++l) {
        G num = from_int<G>(1), den = from_int<G>(1);
        for (std::size_t m = 0; m < 3; ++m) {
            if (m == l) continue;
            num *= q[m] - pole;
            den *= q[m] - q[l];
        }
        if (is_zero(den)) raise(Errc::DenominatorZero, "coincident q");
        G body = h.Fq(q[l]) * p[l] * p[l] - h.FG(q[l]) * p[l] + h.Fi[i](q[l]) * p[l];
        out += num / den * body;
    }
    G tail = lift_to<G>(k.rho * (k.rho + k.kinf));
    for (std::size_t l = 0; l < 3; ++l) tail *= q[l] - pole;
    out += tail;
    F w = detail::pole_weight(c, i);
    return out / lift_to<G>(w);
}

template <class F>
F garnier_hamiltonian(const GarnierStateT<F>& s, std::size_t i) {
    return garnier_hamiltonian(s.params, s.scheme, s.coord.q, s.coord.p, i);
}

template <class F>
struct IsomonodromyFieldT {
    // dq[i][k] = dH_i/dp_k, dp[i][k] = -dH_i/dq_k
    std::array<std::array<F, 3>, 3> dq, dp;
};

template <class F>
IsomonodromyFieldT<F> isomonodromy_field(const CurveParamsT<F>& c, const ExponentSchemeT<F>& k,
                                         const DarbouxCoordT<F>& d) {
    using D = Dual<F>;
    std::array<D, 3> q, p;
    for (std::size_t m = 0; m < 3; ++m) {
        q[m] = D::variable(d.q[m], m, 6);
        p[m] = D::variable(d.p[m], 3 + m, 6);
    }
    IsomonodromyFieldT<F> out;
    for (std::size_t i = 0; i < 3; ++i) {
        D H = garnier_hamiltonian(c, k, q, p, i);
        for (std::size_t m = 0; m < 3; ++m) {
            out.dq[i][m] = H.d(3 + m);
            out.dp[i][m] = -H.d(m);
        }
    }
    return out;
}

template <class F>
IsomonodromyFieldT<F> isomonodromy_field(const GarnierStateT<F>& s) {
    return isomonodromy_field(s.params, s.scheme, s.coord);
}

template <class F>
struct TransversalityT {
    Matrix<F> matrix;  // (dH_i/dp_k) - I at q = (r, s, t)
    F det;
};

template <class F>
TransversalityT<F> transversality_matrix(const CurveParamsT<F>& c, const std::array<F, 3>& p = {}) {
    auto k = switched_scheme<F>();
    auto f = isomonodromy_field(c, k, DarbouxCoordT<F>{detail::rst(c), p});
    TransversalityT<F> out{Matrix<F>(3, 3), from_int<F>(0)};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t m = 0; m < 3; ++m) out.matrix(i, m) = f.dq[i][m] - (i == m ? from_int<F>(1) : from_int<F>(0));
    out.det = determinant(out.matrix);
    return out;
}

// J^T Omega J - Omega for the Jacobian J of (q, p) -> (z, c); the largest entry
template <class F>
F symplectic_check(const CurveParamsT<F>& c, const ExponentSchemeT<F>& k, const DarbouxCoordT<F>& d) {
    using D = Dual<F>;
    DarbouxCoordT<D> v;
    for (std::size_t m = 0; m < 3; ++m) {
        v.q[m] = D::variable(d.q[m], m, 6);
        v.p[m] = D::variable(d.p[m], 3 + m, 6);
    }
    auto zc = darboux_to_zc(c, k, v);
    std::array<D, 6> out{zc.z[0], zc.z[1], zc.z[2], zc.c[0], zc.c[1], zc.c[2]};
    auto omega = [](std::size_t a, std::size_t b) {
        if (a < 3 && b == a + 3) return 1;
        if (b < 3 && a == b + 3) return -1;
        return 0;
    };
    F worst = from_int<F>(0);
    double worst_mag = -1.0;
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            F s = from_int<F>(-omega(a, b));
            for (std::size_t u = 0; u < 6; ++u)
                for (std::size_t w = 0; w < 6; ++w) {
                    int o = omega(u, w);
                    if (o != 0) s += from_int<F>(o) * out[u].d(a) * out[w].d(b);
                }
            if (magnitude(s) > worst_mag) {
                worst_mag = magnitude(s);
                worst = s;
                if constexpr (is_exact_v<F>) {
                    if (s < 0) worst = -s;
                }
            }
        }
    return worst;
}

using DarbouxCoord = DarbouxCoordT<Rational>;
using GarnierState = GarnierStateT<Rational>;

struct FlowOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double min_step = 1e-12;
    double delta_floor = 1e-9;  // relative size of Delta treated as the polar locus
};

struct FlowResult {
    GarnierStateT<Complex> state;
    std::size_t steps = 0;
};

// Integral curve of sum_i (d i / d tau) V_i along a polyline in (r, s, t).
FlowResult flow(const GarnierStateT<Complex>& start, const std::vector<std::array<Complex, 3>>& path,
                const FlowOptions& opt = {});

// the universal family at a Darboux point
FuchsianSystemT<Complex> darboux_connection(const GarnierStateT<Complex>& s);

} // namespace gml
