#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gml/curve.hpp"
#include "gml/identity.hpp"
#include "gml/linalg.hpp"
#include "gml/multiquad.hpp"
#include "gml/projective.hpp"
#include "gml/torsion.hpp"

namespace gml {

// A point of P^1 as (n : d); d = 0 is infinity.
template <class F>
struct P1Point {
    F n, d;

    static P1Point finite(const F& v) { return {v, from_int<F>(1)}; }
    static P1Point infinity() { return {from_int<F>(1), from_int<F>(0)}; }
    bool is_infinite() const { return is_zero(d); }
    F value() const {
        if (is_infinite()) raise(Errc::AffineChartViolation, "point at infinity has no affine value");
        return n / d;
    }
    friend bool operator==(const P1Point& a, const P1Point& b) { return is_zero(F(a.n * b.d - a.d * b.n)); }
};

template <class F>
using RSTCoordT = std::array<P1Point<F>, 3>;
template <class F>
using NRCoordT = ProjPoint<F>;
template <class F>
using BertramCoordT = ProjPoint<F>;

template <class F>
struct TyurinCoordT {
    CurvePointT<F> p1, p2;
    P1Point<F> lambda;
};

template <class F>
struct TyurinQuotCoordT {
    F s, p;
    P1Point<F> lambda;  // (lambda^2 + 1/lambda^2) y1 y2
};

// Roots of quadratics over Q live in a quadratic extension.
template <class F>
struct RootField {
    using type = F;
};
template <>
struct RootField<Rational> {
    using type = MultiQuad;
};

template <class F>
bool rst_equal(const RSTCoordT<F>& a, const RSTCoordT<F>& b) {
    for (int i = 0; i < 3; ++i)
        if (!(a[std::size_t(i)] == b[std::size_t(i)])) return false;
    return true;
}

// Multihomogeneous forms on P^1 x P^1 x P^1.
template <class F>
struct HomTerm {
    F c;
    std::array<int, 3> e;
};

template <class F>
F eval_hom(const std::vector<HomTerm<F>>& terms, const std::array<int, 3>& deg, const RSTCoordT<F>& x) {
    F sum = from_int<F>(0);
    for (const auto& t : terms) {
        F m = t.c;
        for (std::size_t i = 0; i < 3; ++i) {
            for (int k = 0; k < t.e[i]; ++k) m = m * x[i].n;
            for (int k = t.e[i]; k < deg[i]; ++k) m = m * x[i].d;
        }
        sum += m;
    }
    return sum;
}

// ---------------------------------------------------------------- Kummer

template <class F>
struct ThetaValues {
    F sum, prod, diag;
};

template <class F>
F diag_closed_form(const CurveParamsT<F>& c, const F& x1, const F& y1, const F& x2, const F& y2) {
    F dx = x1 - x2;
    if (is_zero(dx)) raise(Errc::DivisionByZero, "closed form requires x1 != x2");
    F s1 = c.sigma1(), s2 = c.sigma2(), s3 = c.sigma3(), one = from_int<F>(1), two = from_int<F>(2);
    F S = x1 + x2, P = x1 * x2;
    F num = -two * y1 * y2 - two * (one + s1) * P * P - (s2 + s3) * (x1 * x1 + x2 * x2) + S * (P * P + (s1 + s2) * P + s3);
    return num / (dx * dx);
}

template <class F>
ThetaValues<F> theta_functions(const CurveParamsT<F>& c, const CurvePointT<F>& p1, const CurvePointT<F>& p2) {
    if (p1.infinite || p2.infinite) raise(Errc::AffineChartViolation, "theta functions need affine points");
    F one = from_int<F>(1);
    F S = p1.x + p2.x, P = p1.x * p2.x;
    F slope;
    if (!is_zero(F(p2.x - p1.x))) {
        slope = (p2.y - p1.y) / (p2.x - p1.x);
    } else if (!is_zero(F(p1.y + p2.y))) {
        // diagonal: tangent slope F'(x) / 2y
        slope = c.quintic().derivative()(p1.x) / (from_int<F>(2) * p1.y);
    } else {
        raise(Errc::PoleOnAntidiagonal, "Diag has a pole on the anti-diagonal");
    }
    F s1 = c.sigma1(), s2 = c.sigma2();
    F diag = slope * slope - S * S * S + (one + s1) * S * S + P * S - (s1 + s2) * S;
    return {S, P, diag};
}

template <class F>
NRCoordT<F> kummer_embed(const CurveParamsT<F>& c, const CurvePointT<F>& p1, const CurvePointT<F>& p2) {
    if (p1.infinite && p2.infinite) raise(Errc::Antidiagonal, "both points at infinity: trivial bundle");
    if (p1.infinite || p2.infinite) {
        const F& x = p1.infinite ? p2.x : p1.x;
        return normalize_projective(NRCoordT<F>{x * x, -x, from_int<F>(1), from_int<F>(0)});
    }
    if (is_zero(F(p1.x - p2.x)) && is_zero(F(p1.y + p2.y)))
        raise(Errc::Antidiagonal, "P2 = iota(P1) gives the trivial bundle (1:0:0:0)");
    auto th = theta_functions(c, p1, p2);
    return normalize_projective(NRCoordT<F>{-th.diag, th.prod, -th.sum, from_int<F>(1)});
}

template <class F>
F kummer_quartic(const CurveParamsT<F>& c, const NRCoordT<F>& v) {
    const F &v0 = v[0], &v1 = v[1], &v2 = v[2], &v3 = v[3];
    F s1 = c.sigma1(), s2 = c.sigma2(), s3 = c.sigma3();
    F two = from_int<F>(2), four = from_int<F>(4);
    F q = v0 * v2 - v1 * v1;
    F c1 = (s1 + s2) * v1 + (s2 + s3) * v2;
    F k1 = c1 * q + two * (v0 + s1 * v1) * (v0 + v1) * v1 + two * (s2 * v1 + s3 * v2) * (v1 + v2) * v1;
    F k2 = -two * s3 * q + ((s1 + s2) * (s1 + s2) * v1 + (s2 + s3) * (s2 + s3) * v2) * (v1 + v2) -
           (s1 + s3) * (s1 + s3) * v1 * v2 + four * ((s2 + s3) * v0 - s3 * v2) * v1;
    F k3 = -two * s3 * ((s1 + s2) * v1 - (s2 + s3) * v2);
    return q * q - two * k1 * v3 + k2 * v3 * v3 + k3 * v3 * v3 * v3 + s3 * s3 * v3 * v3 * v3 * v3;
}

// Tabulated node E_tau.
template <class F>
NRCoordT<F> singular_point(const CurveParamsT<F>& c, const TwoTorsion& tau) {
    F zero = from_int<F>(0), one = from_int<F>(1);
    if (tau.is_zero()) return {one, zero, zero, zero};
    auto pr = tau.pair();
    auto roots = c.roots();
    if (pr[1] == kInf) {
        const F& a = roots[std::size_t(pr[0])];
        return normalize_projective(NRCoordT<F>{a * a, -a, one, zero});
    }
    int i = pr[0], j = pr[1];
    std::array<F, 3> rst{c.r, c.s, c.t};
    auto others = [&](int k) {
        std::array<F, 2> o;
        int n = 0;
        for (int m = 2; m < 5; ++m)
            if (m != k) o[std::size_t(n++)] = rst[std::size_t(m - 2)];
        return o;
    };
    NRCoordT<F> v;
    if (i == 0 && j == 1) {
        v = {c.sigma2(), zero, -one, one};
    } else if (i == 0) {
        F a = roots[std::size_t(j)];
        auto o = others(j);
        v = {a * (o[0] * o[1] + o[0] + o[1]), zero, -a, one};
    } else if (i == 1) {
        F a = roots[std::size_t(j)];
        auto o = others(j);
        v = {(one + a) * o[0] * o[1], a, -one - a, one};
    } else {
        F a = roots[std::size_t(i)], b = roots[std::size_t(j)];
        F k = c.sigma1() - a - b;
        v = {(a + b) * k, a * b, -a - b, one};
    }
    return normalize_projective(v);
}

template <class F>
std::vector<NRCoordT<F>> singular_points(const CurveParamsT<F>& c) {
    std::vector<NRCoordT<F>> out;
    for (const auto& tau : TwoTorsion::all()) out.push_back(singular_point(c, tau));
    return out;
}

// Plane through the prescribed six nodes, first nonzero coefficient 1.
template <class F>
std::array<F, 4> gunning_plane(const CurveParamsT<F>& c, const ThetaChar& theta) {
    auto taus = theta.nodes();
    Matrix<F> m(taus.size(), 4);
    for (std::size_t k = 0; k < taus.size(); ++k) {
        auto v = singular_point(c, taus[k]);
        for (std::size_t j = 0; j < 4; ++j) m(k, j) = v[j];
    }
    auto ns = nullspace(m);
    if (ns.size() != 1) raise(Errc::DegenerateNodes, "the six nodes do not span a plane");
    auto n = normalize_projective(ns[0]);
    return {n[0], n[1], n[2], n[3]};
}

// Projective-linear matrix of tensoring by O(tau), solved from the node permutation.
template <class F>
Matrix<F> twist_matrix(const CurveParamsT<F>& c, const TwoTorsion& tau) {
    const auto& all = TwoTorsion::all();
    std::vector<NRCoordT<F>> nodes;
    for (const auto& a : all) nodes.push_back(singular_point(c, a));
    Matrix<F> sys(all.size() * 6, 16);
    std::size_t row = 0;
    for (std::size_t a = 0; a < all.size(); ++a) {
        const auto& src = nodes[a];
        const auto& dst = nodes[std::size_t((tau + all[a]).index())];
        for (std::size_t p = 0; p < 4; ++p)
            for (std::size_t q = p + 1; q < 4; ++q, ++row) {
                // (M src)_p dst_q - (M src)_q dst_p = 0
                for (std::size_t k = 0; k < 4; ++k) {
                    sys(row, 4 * p + k) += src[k] * dst[q];
                    sys(row, 4 * q + k) -= src[k] * dst[p];
                }
            }
    }
    auto ns = nullspace(sys);
    if (ns.size() != 1) raise(Errc::DegenerateNodes, "node permutation does not determine a unique matrix");
    auto v = normalize_projective(ns[0]);
    return Matrix<F>(4, 4, v);
}

template <class F>
NRCoordT<F> twist_action(const CurveParamsT<F>& c, const TwoTorsion& tau, const NRCoordT<F>& v) {
    return normalize_projective(twist_matrix(c, tau) * v);
}

// Displayed matrices for the two tabulated generators.
template <class F>
Matrix<F> twist_matrix_w0_winf(const CurveParamsT<F>& c) {
    F z = from_int<F>(0), o = from_int<F>(1), s2 = c.sigma2(), s3 = c.sigma3();
    return Matrix<F>(4, 4, {z, s2 + s3, s3, z, z, z, z, s3, o, z, z, -(s2 + s3), z, o, z, z});
}

template <class F>
Matrix<F> twist_matrix_w1_winf(const CurveParamsT<F>& c) {
    F z = from_int<F>(0), o = from_int<F>(1), s1 = c.sigma1(), s2 = c.sigma2(), s3 = c.sigma3();
    return Matrix<F>(4, 4, {o, s1 + s3, s2, z, -o, -o, z, s2, o, z, -o, -(s1 + s3), z, o, o, o});
}

// ---------------------------------------------------------------- Hudson forms

// Symmetric coordinates with formal radicals alpha = sqrt(sigma3), beta = sqrt((r-1)(s-1)(t-1)),
// gamma = sqrt(r(r-1)(r-s)(r-t)), delta = sqrt(s(s-1)(s-r)(s-t)).
struct HudsonForms {
    std::shared_ptr<const RadicalSystem> sys;
    Matrix<MultiQuad> u_map;  // v -> u
    Matrix<MultiQuad> t_map;  // v -> t
    Rational A, B, C, D;

    MultiQuad alpha() const { return MultiQuad::radical(sys, 0); }
    MultiQuad beta() const { return MultiQuad::radical(sys, 1); }
    MultiQuad gamma() const { return MultiQuad::radical(sys, 2); }
    MultiQuad delta() const { return MultiQuad::radical(sys, 3); }

    std::vector<MultiQuad> u_coords(const std::vector<MultiQuad>& v) const { return u_map * v; }
    std::vector<MultiQuad> t_coords(const std::vector<MultiQuad>& v) const { return t_map * v; }
    MultiQuad u_quartic(const std::vector<MultiQuad>& u, const CurveParams& c) const;
    MultiQuad t_quartic(const std::vector<MultiQuad>& t) const;
    Rational relation() const { return 4 - A * A - B * B - C * C + A * B * C + D * D; }
};

// signs: choices for alpha, beta, gamma, delta; extra radicands are appended after them.
HudsonForms hudson_forms(const CurveParams& c, const std::array<int, 4>& signs,
                         const std::vector<Rational>& extra = {});

// Coefficients (A, B, C, D) of the t-quartic, rational in (r, s, t).
template <class F>
std::array<F, 4> hudson_coefficients(const CurveParamsT<F>& c) {
    const F &r = c.r, &s = c.s, &t = c.t;
    F one = from_int<F>(1), two = from_int<F>(2), four = from_int<F>(4);
    F A = -two * (s * (t - one) + (t - s)) / (t * (s - one));
    F B = -two * (r + (r - t)) / t;
    F C = two * ((r - one) + (r - s)) / (s - one);
    F D = -four * (r * (s - t) + (r - s)) / (t * (s - one));
    return {A, B, C, D};
}

// Signed permutation of the t-coordinates for the five generators tau = [w_i] - [w_inf].
std::array<std::pair<int, int>, 4> hudson_translation(int i);

// ---------------------------------------------------------------- RST chart

template <class F>
struct RSTForms {
    std::array<std::vector<HomTerm<F>>, 4> v;
    std::vector<HomTerm<F>> kummer_lift;
    std::vector<HomTerm<F>> lambda_num, lambda_den;
    std::array<std::vector<HomTerm<F>>, 3> tilde_num, tilde_den;
    std::array<std::vector<HomTerm<F>>, 4> bertram;
};

template <class F>
RSTForms<F> rst_forms(const CurveParamsT<F>& c) {
    const F &r = c.r, &s = c.s, &t = c.t;
    F one = from_int<F>(1);
    using E = std::array<int, 3>;
    const E R{1, 0, 0}, S{0, 1, 0}, T{0, 0, 1}, RS{1, 1, 0}, RT{1, 0, 1}, ST{0, 1, 1}, K{0, 0, 0};
    RSTForms<F> f;
    F r2 = r * r, s2 = s * s, t2 = t * t;
    f.v[0] = {{s2 * t2 * (r2 - one) * (s - t), R},     {-r2 * t2 * (s2 - one) * (r - t), S},
              {s2 * r2 * (t2 - one) * (r - s), T},     {t2 * (t - one) * (r2 - s2), RS},
              {-s2 * (s - one) * (r2 - t2), RT},       {r2 * (r - one) * (s2 - t2), ST}};
    F rst = r * s * t;
    f.v[1] = {{rst * (r - one) * (s - t), R},  {-rst * (s - one) * (r - t), S}, {rst * (t - one) * (r - s), T},
              {rst * (t - one) * (r - s), RS}, {-rst * (s - one) * (r - t), RT}, {rst * (r - one) * (s - t), ST}};
    f.v[2] = {{-s * t * (r2 - one) * (s - t), R}, {r * t * (s2 - one) * (r - t), S},
              {-r * s * (t2 - one) * (r - s), T}, {-t * (t - one) * (r2 - s2), RS},
              {s * (s - one) * (r2 - t2), RT},    {-r * (r - one) * (s2 - t2), ST}};
    f.v[3] = {{s * t * (r - one) * (s - t), R}, {-r * t * (s - one) * (r - t), S}, {s * r * (t - one) * (r - s), T},
              {t * (t - one) * (r - s), RS},    {-s * (s - one) * (r - t), RT},    {r * (r - one) * (s - t), ST}};
    f.kummer_lift = {{s - t, {2, 1, 1}},           {t - r, {1, 2, 1}},           {r - s, {1, 1, 2}},
                     {t * (r - one), {1, 2, 0}},   {-t * (s - one), {2, 1, 0}},  {r * (s - one), {0, 1, 2}},
                     {-r * (t - one), {0, 2, 1}},  {s * (t - one), {2, 0, 1}},   {-s * (r - one), {1, 0, 2}},
                     {-t * (r - s), RS},           {-r * (s - t), ST},           {-s * (t - r), RT}};
    f.lambda_num = {{t * (r - s), RS}, {-s * (r - t), RT}, {r * (s - t), ST}};
    f.lambda_den = {{s - t, R}, {-(r - t), S}, {r - s, T}};
    f.tilde_num[0] = {{s - t, K}, {t - one, S}, {-(s - one), T}};
    f.tilde_den[0] = {{-t * (s - one), S}, {s * (t - one), T}, {s - t, ST}};
    f.tilde_num[1] = {{r - t, K}, {t - one, R}, {-(r - one), T}};
    f.tilde_den[1] = {{-t * (r - one), R}, {r * (t - one), T}, {r - t, RT}};
    f.tilde_num[2] = {{r - s, K}, {s - one, R}, {-(r - one), S}};
    f.tilde_den[2] = {{-s * (r - one), R}, {r * (s - one), S}, {r - s, RS}};
    std::array<F, 3> pt{r, s, t};
    const std::array<E, 3> var{R, S, T};
    for (std::size_t i = 0; i < 3; ++i) {
        const F& a = pt[i];
        const F& b = pt[(i + 1) % 3];
        const F& d = pt[(i + 2) % 3];
        F den = (a - one) * (a - b) * (a - d);
        f.bertram[0].push_back({one / (a * den), var[i]});
        f.bertram[0].push_back({-one / den, K});
        f.bertram[1].push_back({one / den, var[i]});
        f.bertram[1].push_back({-a / den, K});
        f.bertram[2].push_back({a / den, var[i]});
        f.bertram[2].push_back({-a * a / den, K});
        f.bertram[3].push_back({a * a / den, var[i]});
    }
    f.bertram[3].push_back({-one / ((r - one) * (s - one) * (t - one)), K});
    return f;
}

template <class F>
NRCoordT<F> rst_to_nr(const CurveParamsT<F>& c, const RSTCoordT<F>& x) {
    auto f = rst_forms(c);
    NRCoordT<F> v(4);
    for (std::size_t i = 0; i < 4; ++i) v[i] = eval_hom(f.v[i], {1, 1, 1}, x);
    for (const auto& vi : v)
        if (!is_zero(vi)) return normalize_projective(v);
    raise(Errc::Indeterminate, "RST point is an indeterminacy point of the classifying map");
}

template <class F>
F rst_kummer_lift(const CurveParamsT<F>& c, const RSTCoordT<F>& x) {
    return eval_hom(rst_forms(c).kummer_lift, {2, 2, 2}, x);
}

template <class F>
RSTCoordT<F> rst_galois(const CurveParamsT<F>& c, const RSTCoordT<F>& x) {
    auto f = rst_forms(c);
    F ln = eval_hom(f.lambda_num, {1, 1, 1}, x), ld = eval_hom(f.lambda_den, {1, 1, 1}, x);
    const std::array<std::array<int, 3>, 3> deg{{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}};
    RSTCoordT<F> out;
    for (std::size_t i = 0; i < 3; ++i) {
        F n = ln * eval_hom(f.tilde_num[i], deg[i], x);
        F d = ld * eval_hom(f.tilde_den[i], deg[i], x);
        if (is_zero(n) && is_zero(d)) raise(Errc::Indeterminate, "Galois involution indeterminate at this point");
        out[i] = {n, d};
    }
    return out;
}

template <class F>
BertramCoordT<F> rst_to_bertram(const CurveParamsT<F>& c, const RSTCoordT<F>& x) {
    auto f = rst_forms(c);
    BertramCoordT<F> b(4);
    for (std::size_t i = 0; i < 4; ++i) b[i] = eval_hom(f.bertram[i], {1, 1, 1}, x);
    for (const auto& bi : b)
        if (!is_zero(bi)) return normalize_projective(b);
    raise(Errc::Indeterminate, "Bertram image vanishes");
}

template <class F>
RSTCoordT<F> bertram_to_rst(const CurveParamsT<F>& c, const BertramCoordT<F>& b) {
    const F &r = c.r, &s = c.s, &t = c.t;
    F one = from_int<F>(1);
    F den = b[3] - c.sigma1() * b[2] + c.sigma2() * b[1] - c.sigma3() * b[0];
    if (is_zero(den)) raise(Errc::Indeterminate, "b3 - sigma1 b2 + sigma2 b1 - sigma3 b0 vanishes");
    auto num = [&](const F& a, const F& p, const F& q) {
        return a * (b[3] - (p + q + one) * b[2] + (p * q + p + q) * b[1] - p * q * b[0]);
    };
    return {P1Point<F>{num(r, s, t), den}, P1Point<F>{num(s, r, t), den}, P1Point<F>{num(t, r, s), den}};
}

template <class F>
NRCoordT<F> bertram_to_nr(const CurveParamsT<F>& c, const BertramCoordT<F>& b) {
    F one = from_int<F>(1);
    F s1 = c.sigma1(), s2 = c.sigma2(), s3 = c.sigma3();
    NRCoordT<F> v{b[2] * b[3] - (one + s1) * b[2] * b[2] + (s1 + s2) * b[1] * b[2] - (s2 + s3) * b[0] * b[2] +
                      s3 * b[0] * b[1],
                  b[2] * b[2] - b[1] * b[3], b[0] * b[3] - b[1] * b[2], b[1] * b[1] - b[0] * b[2]};
    for (const auto& vi : v)
        if (!is_zero(vi)) return normalize_projective(v);
    raise(Errc::Indeterminate, "all four quadrics vanish");
}

template <class F>
F weddle_quartic(const CurveParamsT<F>& c, const BertramCoordT<F>& b) {
    const F &b0 = b[0], &b1 = b[1], &b2 = b[2], &b3 = b[3];
    F one = from_int<F>(1), two = from_int<F>(2);
    F s1 = c.sigma1(), s2 = c.sigma2(), s3 = c.sigma3();
    return (-b0 * b2 * b3 * b3 + b1 * b1 * b3 * b3 + b1 * b2 * b2 * b3 - b2 * b2 * b2 * b2) +
           (one + s1) * (b0 * b2 * b2 * b3 - two * b1 * b1 * b2 * b3 + b1 * b2 * b2 * b2) +
           (s1 + s2) * (-b0 * b2 * b2 * b2 + b1 * b1 * b1 * b3) +
           (s2 + s3) * (-b0 * b1 * b1 * b3 + two * b0 * b1 * b2 * b2 - b1 * b1 * b1 * b2) +
           s3 * (b0 * b0 * b1 * b3 - b0 * b0 * b2 * b2 - b0 * b1 * b1 * b2 + b1 * b1 * b1 * b1);
}

template <class F>
struct RSTPreimages {
    std::array<RSTCoordT<typename RootField<F>::type>, 2> points;
    bool on_kummer = false;
};

template <class F>
RSTPreimages<F> nr_to_rst(const CurveParamsT<F>& c, const NRCoordT<F>& v) {
    using G = typename RootField<F>::type;
    const F &r = c.r, &s = c.s, &t = c.t;
    const F &v0 = v[0], &v1 = v[1], &v2 = v[2], &v3 = v[3];
    F one = from_int<F>(1), two = from_int<F>(2);
    F s2 = c.sigma2();
    F rsp = r + s + r * s;
    F w = v0 + v1 - s2 * v3;
    F yt = v0 + t * v1 - t * rsp * v3;
    F a = (v1 + v2 * t + v3 * t * t) * w;
    F b = -(one + t) * (v0 * v2 + v1 * v1 + t * v1 * v3) - two * (v0 * v1 + t * v0 * v3 + t * v1 * v2) +
          s2 * (t * v1 + v2 + t * v3) * v3 + rsp * (v1 + t * t * v2 + t * t * v3) * v3;
    F cc = (v1 + v2 + v3) * yt;
    F qa = a, qb = b * t, qc = cc * t * t;
    if (is_zero(qa) && is_zero(qb) && is_zero(qc))
        raise(Errc::DegenerateDenominator, "quadratic for T vanishes identically");
    RSTPreimages<F> out;
    F disc = qb * qb - from_int<F>(4) * qa * qc;
    out.on_kummer = near_zero(disc, magnitude(qb * qb) + magnitude(qa * qc), 1e-10);
    std::array<P1Point<G>, 2> Ts;
    if (is_zero(qa) && is_zero(qb)) {
        // c t^2 = 0 only at T = infinity, twice
        Ts = {P1Point<G>::infinity(), P1Point<G>::infinity()};
    } else {
        auto roots = solve_quadratic(qa, qb, qc);
        Ts[0] = P1Point<G>::finite(roots.roots[0]);
        Ts[1] = roots.linear ? P1Point<G>::infinity() : P1Point<G>::finite(roots.roots[1]);
    }
    auto L = [](const F& x) { return lift_to<G>(x); };
    F xr = v0 + r * v1 - r * (s + t + s * t) * v3;
    F xs = v0 + s * v1 - s * (r + t + r * t) * v3;
    for (std::size_t k = 0; k < 2; ++k) {
        const auto& T = Ts[k];
        auto coord = [&](const F& a0, const F& xa) {
            G n = L(a0 * (t - one) * xa) * T.n;
            G d = L(t * (a0 - one) * yt) * T.d - L((a0 - t) * w) * T.n;
            if (is_zero(n) && is_zero(d)) raise(Errc::DegenerateDenominator, "R or S formula is 0/0");
            return P1Point<G>{n, d};
        };
        out.points[k] = {coord(r, xr), coord(s, xs), T};
    }
    return out;
}

// ---------------------------------------------------------------- Tyurin chart

template <class F>
TyurinQuotCoordT<F> tyurin_quotient(const CurveParamsT<F>&, const TyurinCoordT<F>& tc) {
    if (tc.p1.infinite || tc.p2.infinite) raise(Errc::AffineChartViolation, "Tyurin points must be affine");
    const auto& l = tc.lambda;
    if (is_zero(l.n) || is_zero(l.d)) raise(Errc::LambdaDegenerate, "lambda must avoid 0 and infinity");
    F lam = l.n / l.d;
    F l2 = lam * lam;
    F bold = (l2 + from_int<F>(1) / l2) * tc.p1.y * tc.p2.y;
    return {tc.p1.x + tc.p2.x, tc.p1.x * tc.p2.x, P1Point<F>::finite(bold)};
}

template <class F>
NRCoordT<F> tyurin_to_nr(const CurveParamsT<F>& c, const TyurinQuotCoordT<F>& q) {
    F one = from_int<F>(1), two = from_int<F>(2), four = from_int<F>(4);
    F s1 = c.sigma1(), s2 = c.sigma2(), s3 = c.sigma3();
    const F &S = q.s, &P = q.p;
    F disc = S * S - four * P;
    if (is_zero(disc)) raise(Errc::DiscriminantZero, "s^2 = 4p (x1 = x2)");
    F rest = -S * P * P + two * (one + s1) * P * P - (s1 + s2) * S * P + (s2 + s3) * (S * S - two * P) - s3 * S;
    const auto& L = q.lambda;
    NRCoordT<F> v{L.n + L.d * rest, L.d * P * disc, -L.d * S * disc, L.d * disc};
    return normalize_projective(v);
}

template <class F>
BertramCoordT<F> tyurin_to_bertram(const CurveParamsT<F>&, const TyurinCoordT<F>& tc) {
    if (tc.p1.infinite || tc.p2.infinite) raise(Errc::AffineChartViolation, "Tyurin points must be affine");
    // lambda * (lambda y2 x1^k - y1 x2^k / lambda), homogeneous in lambda
    F a = tc.lambda.n * tc.lambda.n * tc.p2.y, b = tc.lambda.d * tc.lambda.d * tc.p1.y;
    BertramCoordT<F> out(4);
    F p1 = from_int<F>(1), p2 = from_int<F>(1);
    for (std::size_t k = 0; k < 4; ++k) {
        out[k] = a * p1 - b * p2;
        p1 = p1 * tc.p1.x;
        p2 = p2 * tc.p2.x;
    }
    for (const auto& x : out)
        if (!is_zero(x)) return normalize_projective(out);
    raise(Errc::AllZero, "degenerate Tyurin configuration");
}

template <class F>
struct GeiserResult {
    BertramCoordT<F> b;
    bool on_weddle = false;
};

template <class F>
GeiserResult<F> geiser_involution(const CurveParamsT<F>& c, const BertramCoordT<F>& b) {
    F w = weddle_quartic(c, b);
    double scale = 0.0;
    for (const auto& x : b) scale = std::max(scale, magnitude(x));
    if (near_zero(w, std::pow(scale, 4.0), 1e-10)) return {normalize_projective(b), true};
    auto rst = bertram_to_rst(c, b);
    return {rst_to_bertram(c, rst_galois(c, rst)), false};
}

} // namespace gml
