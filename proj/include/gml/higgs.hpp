#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "gml/charts.hpp"
#include "gml/dual.hpp"
#include "gml/linalg.hpp"
#include "gml/poly.hpp"

namespace gml {

template <class F>
struct HiggsCoordT {
    F R, S, T, cr, cs, ct;

    std::array<F, 3> z() const { return {R, S, T}; }
    std::array<F, 3> c() const { return {cr, cs, ct}; }
};

template <class F>
struct HitchinValueT {
    F h0, h1, h2;

    template <class G>
    G operator()(const G& x) const {
        return lift_to<G>(h2) * x * x + lift_to<G>(h1) * x + lift_to<G>(h0);
    }
    friend bool operator==(const HitchinValueT& a, const HitchinValueT& b) {
        return is_zero(F(a.h0 - b.h0)) && is_zero(F(a.h1 - b.h1)) && is_zero(F(a.h2 - b.h2));
    }
};

// Logarithmic sl2-valued 1-form sum_p Res_p dx/(x - p); entries are the dx-coefficients.
template <class F>
struct HiggsField {
    std::vector<F> poles;
    std::vector<Mat2<F>> residues;

    // entry (i, j) as a rational function over the common denominator prod (x - p)
    RatFunc<F> entry(int i, int j) const {
        Poly<F> den(from_int<F>(1)), num;
        for (const auto& p : poles) den *= Poly<F>::linear_root(p);
        for (std::size_t k = 0; k < poles.size(); ++k) {
            Poly<F> rest(from_int<F>(1));
            for (std::size_t m = 0; m < poles.size(); ++m)
                if (m != k) rest *= Poly<F>::linear_root(poles[m]);
            const auto& R = residues[k];
            F e = i == 0 ? (j == 0 ? R.a : R.b) : (j == 0 ? R.c : R.d);
            num += Poly<F>(e) * rest;
        }
        return RatFunc<F>(num, den);
    }
    Mat2<F> residue_at(const F& p) const {
        Mat2<F> out = Mat2<F>::zero();
        for (std::size_t k = 0; k < poles.size(); ++k)
            if (is_zero(F(poles[k] - p))) out = out + residues[k];
        return out;
    }
    // residue at infinity of the dx-form
    Mat2<F> residue_at_infinity() const {
        Mat2<F> out = Mat2<F>::zero();
        for (const auto& R : residues) out = out - R;
        return out;
    }
    Mat2<F> value(const F& x) const {
        Mat2<F> out = Mat2<F>::zero();
        for (std::size_t k = 0; k < poles.size(); ++k) out = out + (from_int<F>(1) / (x - poles[k])) * residues[k];
        return out;
    }
    HiggsField& operator+=(const HiggsField& o) {
        for (std::size_t k = 0; k < o.poles.size(); ++k) add_residue(o.poles[k], o.residues[k]);
        return *this;
    }
    friend HiggsField operator*(const F& s, HiggsField h) {
        for (auto& R : h.residues) R = s * R;
        return h;
    }
    void add_residue(const F& p, const Mat2<F>& R) {
        for (std::size_t k = 0; k < poles.size(); ++k)
            if (is_zero(F(poles[k] - p))) {
                residues[k] = residues[k] + R;
                return;
            }
        poles.push_back(p);
        residues.push_back(R);
    }
};

// Theta_r, Theta_s, Theta_t on O(-1) + O(-2).
template <class F>
std::array<HiggsField<F>, 3> higgs_basis(const CurveParamsT<F>& c, const F& R, const F& S, const F& T) {
    F zero = from_int<F>(0), one = from_int<F>(1);
    std::array<F, 3> pts{c.r, c.s, c.t}, z{R, S, T};
    std::array<HiggsField<F>, 3> out;
    for (std::size_t i = 0; i < 3; ++i) {
        const F& zi = z[i];
        out[i].add_residue(zero, {zero, zero, one - zi, zero});
        out[i].add_residue(one, {zi, -zi, zi, -zi});
        out[i].add_residue(pts[i], {-zi, zi * zi, -one, zi});
    }
    return out;
}

template <class F>
HiggsField<F> higgs_field(const CurveParamsT<F>& c, const HiggsCoordT<F>& hc) {
    auto th = higgs_basis(c, hc.R, hc.S, hc.T);
    HiggsField<F> out;
    auto cc = hc.c();
    for (std::size_t i = 0; i < 3; ++i) out += cc[i] * th[i];
    return out;
}

// det(Theta) * F(x) must be a polynomial of degree at most 2.
template <class F>
HitchinValueT<F> hitchin_from_field(const CurveParamsT<F>& c, const HiggsField<F>& th) {
    auto det = th.entry(0, 0) * th.entry(1, 1) - th.entry(0, 1) * th.entry(1, 0);
    Poly<F> h;
    if (!(det * RatFunc<F>(c.quintic())).as_polynomial(h) || h.degree() > 2)
        raise(Errc::NotQuadratic, "det * F(x) is not a polynomial of degree <= 2");
    return {h.coeff(0), h.coeff(1), h.coeff(2)};
}

template <class F>
HitchinValueT<F> hitchin_from_det(const CurveParamsT<F>& c, const HiggsCoordT<F>& hc) {
    return hitchin_from_field(c, higgs_field(c, hc));
}

// Normalized as det(Theta) * F(x), the opposite overall sign to the displayed table.
template <class F>
HitchinValueT<F> hitchin_rst(const CurveParamsT<F>& c, const HiggsCoordT<F>& hc) {
    const F &r = c.r, &s = c.s, &t = c.t;
    const F &R = hc.R, &S = hc.S, &T = hc.T, &cr = hc.cr, &cs = hc.cs, &ct = hc.ct;
    F one = from_int<F>(1);
    F h0 = (cr * (R - one) + cs * (S - one) + ct * (T - one)) *
           (cr * s * t * (R - r) * R + cs * r * t * (S - s) * S + ct * r * s * (T - t) * T);
    F h1 = cr * (cr * (s + t) * (r + one) + cs * s * (t + one) + ct * t * (s + one)) * R * R -
           cr * cr * (t + s) * R * R * R +
           cs * (cs * (r + t) * (s + one) + cr * r * (t + one) + ct * t * (r + one)) * S * S -
           cs * cs * (t + r) * S * S * S +
           ct * (ct * (r + s) * (t + one) + cr * r * (s + one) + cs * s * (r + one)) * T * T -
           ct * ct * (r + s) * T * T * T -
           cr * cs * (t * (R - one + S - one) + r * (S - s) + s * (R - r)) * R * S -
           cr * ct * (s * (R - one + T - one) + r * (T - t) + t * (R - r)) * R * T -
           cs * ct * (r * (S - one + T - one) + s * (T - t) + t * (S - s)) * S * T -
           (ct * t * (r + s) + cr * r * (s + t) + cs * s * (r + t)) * (cr * R + cs * S + ct * T);
    F h2 = (cr * (R - one) * R + cs * (S - one) * S + ct * (T - one) * T) *
           (cr * (R - r) + cs * (S - s) + ct * (T - t));
    return {-h0, -h1, -h2};
}

// Covector lambda on the affine chart (b1/b0, b2/b0, b3/b0).
template <class F>
HitchinValueT<F> hitchin_bertram(const CurveParamsT<F>& c, const BertramCoordT<F>& b, const std::array<F, 3>& lam) {
    const F &b0 = b[0], &b1 = b[1], &b2 = b[2], &b3 = b[3];
    if (is_zero(b0)) raise(Errc::AffineChartViolation, "b0 = 0 lies outside the affine chart");
    const F &l1 = lam[0], &l2 = lam[1], &l3 = lam[2];
    F s1 = c.sigma1(), s2 = c.sigma2(), s3 = c.sigma3(), two = from_int<F>(2), three = from_int<F>(3);
    F b10 = b1 - b0, b21 = b2 - b1, b32 = b3 - b2, b20 = b2 - b0;
    F b0_2 = b0 * b0, b0_3 = b0_2 * b0, b0_4 = b0_3 * b0;

    F br3 = l1 * b0 * b10 + l2 * (b0 * b21 + b1 * b10) + l3 * (b0 * b32 + b1 * b21 + b2 * b10);
    F br2 = l1 * b1 * b10 + l2 * (b2 * b10 + b1 * b21) + l3 * (b1 * b32 + b2 * b21 + b3 * b10);
    F br1 = l1 * b1 * b1 * b10 + l2 * b2 * (b1 * b10 + b0 * b21) + l3 * (b0 * b2 * b32 + b0 * b3 * b21 + b1 * b3 * b10);
    F br0 = l1 * (b1 * b1 * b21 + b2 * (b1 * b1 - b0 * b2)) + l2 * b2 * (b1 * b21 + b2 * b10) +
            l3 * b3 * (b0 * b32 + b1 * b21 + b2 * b10);
    F h0 = (l1 * b1 + l2 * b2 + l3 * b3) / b0_4 * (-b0 * s3 * br3 + b0 * s2 * br2 - s1 * br1 + br0);

    F k3 = l2 * l2 * b0 * (b21 * b21 - b2 * b20) + l3 * l3 * (-b0 * b2 * (two * b3 - b2) - b1 * b3 * (b1 - two * b0)) -
           l1 * l2 * b0 * b1 * b10 - l1 * l3 * b1 * b1 * b10 +
           l2 * l3 * (two * b0 * b1 * b2 + b2 * b0 * (b0 - two * b2) - b0 * b3 * (two * b1 - b0) - b2 * b10 * b10);
    F k2 = l2 * l2 * b2 * (b10 * b10 + b0 * b20) + l3 * l3 * b3 * (b0 * (b3 - two * b2) + b1 * (two * b2 - b1)) +
           l1 * l2 * b1 * b1 * b10 + l1 * l3 * (b1 * b1 * (two * b2 - b1) - b0 * b2 * b2) +
           l2 * l3 * (b1 * b1 * b32 + two * b2 * b2 * b10 + two * b0 * b3 * b21);
    F k1 = l2 * l2 * b2 * (b21 * b21 - b2 * b20) + l3 * l3 * b3 * (-b2 * (b2 - two * b1) - b3 * (two * b1 - b0)) +
           l1 * l2 * (b0 * b2 * b2 - b1 * b1 * (two * b2 - b1)) +
           l1 * l3 * (b0 * b2 * (two * b3 - b2) - b1 * (b21 * b21 + b1 * (two * b3 - b1))) +
           l2 * l3 * (b3 * (b1 * b1 - two * b2 * (two * b1 - b0)) - b2 * b2 * (b2 - two * b1));
    F k0 = l1 * l1 * (b1 * b1 * (b1 * b1 - two * b0 * b2) + b0_2 * b2 * b2) + l2 * l2 * b2 * b2 * (b10 * b10 + b0 * b20) +
           l3 * l3 * b3 * (-b0 * (b2 * b2 + two * b1 * b3) + b3 * (b1 * b1 + two * b0 * b2)) +
           l1 * l2 * b2 * (two * b1 * b1 - b0 * b2) * b10 +
           l1 * l3 * (-b0 * b1 * b2 * b2 + two * b1 * b1 * b3 * b10 - b0_2 * b3 * (b3 - two * b2)) +
           l2 * l3 * (b0 * b2 * b2 * (three * b3 - b2) + two * b1 * b2 * b3 * (b1 - two * b0));
    F h1 = (b0 * s3 * k3 + b0 * s2 * k2 + b0 * s1 * k1 + k0) / b0_4;

    F m3 = -l1 * b0 * b1 * b10 - b0 * l2 * (b1 * b21 + b2 * b10) - l3 * b0 * (b1 * b32 + b2 * b21 + b3 * b10);
    F m2 = l1 * b1 * b1 * b10 + l2 * b2 * (b1 * b10 + b0 * b21) + l3 * (b0 * b2 * b32 + b0 * b3 * b21 + b1 * b3 * b10);
    F m1 = l1 * (b1 * b1 * b21 + b2 * (b1 * b1 - b0 * b2)) + l2 * b2 * (b2 * b10 + b1 * b21) +
           l3 * b3 * (b0 * b32 + b1 * b21 + b2 * b10);
    F m0 = l1 * ((b1 * b1 - b0 * b2) * (two * b3 - b2) + b1 * b2 * b21) +
           l2 * (b2 * b2 * (b2 - two * b1) + b3 * (two * b1 * b2 - b0 * b3)) +
           l3 * (b3 * b3 * (two * b1 - b0) + b2 * b3 * (b2 - two * b1));
    F h2 = l3 / b0_3 * (s3 * m3 + s2 * m2 - s1 * m1 + m0);
    return {-h0, -h1, -h2};
}

// Covector mu on the affine chart (v0/v3, v1/v3, v2/v3).
template <class F>
HitchinValueT<F> hitchin_nr(const CurveParamsT<F>& c, const NRCoordT<F>& v, const std::array<F, 3>& mu) {
    const F &v0 = v[0], &v1 = v[1], &v2 = v[2], &v3 = v[3];
    if (is_zero(v3)) raise(Errc::AffineChartViolation, "v3 = 0 lies outside the affine chart");
    const F &m0 = mu[0], &m1 = mu[1], &m2 = mu[2];
    F one = from_int<F>(1), two = from_int<F>(2), three = from_int<F>(3), four = from_int<F>(4);
    F s1 = c.sigma1(), s2 = c.sigma2(), s3 = c.sigma3();
    F s12 = s1 + s2, s23 = s2 + s3, s123 = s1 + s2 + s3, e1 = one + s1;
    F v3_2 = v3 * v3, v3_3 = v3_2 * v3;

    F h0 = m0 * m0 * (v0 * v0 * v0 - (two * s23 * v0 + s3 * v1 - (s12 * s3 + s23 * s23) * v3) * v0 * v3 +
                      s3 * (s23 * v1 + s3 * v2 + (s3 - s123 * s2) * v3) * v3_2) +
           v1 * m1 * m1 * (v0 * v1 + s3 * v2 * v3) +
           v1 * m2 * m2 * (v0 * v3 + v1 * v2 + e1 * v1 * v3 - s23 * v3_2) +
           m0 * m1 * (two * (v0 - s23 * v3) * v0 * v1 +
                      (v0 * v2 - (v1 - s12 * v3) * v1 - (s23 * v2 + s3 * v3) * v3) * s3 * v3) +
           m0 * m2 * (v0 * v0 * v2 + v0 * v1 * v1 + s23 * (s23 * v2 + s3 * v3) * v3_2 -
                      (s12 * v1 + two * s23 * v2 + s3 * v3) * v0 * v3 -
                      (s23 * v1 + two * s3 * v2 + (s1 * s3 - s123 * s2 + two * s3) * v3) * v1 * v3) +
           v1 * m1 * m2 * (v0 * v2 + v1 * v1 - (s12 * v1 + s23 * v2 - s3 * v3) * v3);

    F q = s123 * s2 - (s1 + two) * s3;
    F h1 = m0 * m0 * (two * v0 * v0 * v1 - two * s23 * v0 * v1 * v3 + s3 * v0 * v2 * v3 - s3 * v1 * v1 * v3 +
                      s12 * s3 * v1 * v3_2 - s3 * s23 * v2 * v3_2 - s3 * s3 * v3_3) +
           v1 * m1 * m1 * (v0 * v2 + v1 * v1 - s12 * v1 * v3 - s23 * v2 * v3 + s3 * v3_2) +
           m2 * m2 * (v0 * v2 * v3 - v1 * v1 * v3 + two * v1 * v2 * v2 + two * e1 * v1 * v2 * v3 + s12 * v1 * v3_2 -
                      s23 * v2 * v3_2 - s3 * v3_3) +
           m0 * m1 * (v0 * v0 * v2 + (three * v0 - s23 * v3) * v1 * v1 + (q * v1 + s23 * s23 * v2 + s23 * s3 * v3) * v3_2 -
                      (s12 * v1 + two * s23 * v2 + s3 * v3) * v0 * v3) +
           m0 * m2 * (v0 * (two * v0 * v3 + four * v1 * v2 + four * e1 * v1 * v3 + s12 * v2 * v3 - two * s23 * v3_2) +
                      s12 * (v1 - s12 * v3) * v1 * v3 + two * s3 * v2 * v2 * v3 - q * v2 * v3_2 + s12 * s3 * v3_3) +
           m1 * m2 * (v0 * v2 * v2 + three * v1 * v1 * v2 + two * (e1 * v1 - s23 * v3) * v1 * v3 -
                      (s12 * v1 + s23 * v2 + s3 * v3) * v2 * v3);

    F h2 = v1 * m0 * m0 * (v0 * v1 + s3 * v2 * v3) + v1 * m1 * m1 * (v0 * v3 + v1 * v2 + e1 * v1 * v3 - s23 * v3_2) +
           m2 * m2 * (v0 * v3_2 - v1 * v2 * v3 + s12 * v2 * v3_2 + e1 * v2 * v2 * v3 + v2 * v2 * v2) +
           v1 * m0 * m1 * (v0 * v2 + v1 * v1 - s12 * v1 * v3 - s23 * v2 * v3 + s3 * v3_2) +
           m0 * m2 * (-two * v0 * v1 * v3 + v0 * v2 * v2 + v1 * v1 * v2 - s12 * v1 * v2 * v3 - s23 * v2 * v2 * v3 -
                      s3 * v2 * v3_2) +
           m1 * m2 * (v0 * v2 * v3 - v1 * v1 * v3 + two * v1 * v2 * v2 + two * e1 * v1 * v2 * v3 + s12 * v1 * v3_2 -
                      s23 * v2 * v3_2 - s3 * v3_3);
    return {h0 / v3_3, h1 / v3_3, h2 / v3_3};
}

// Covector eta on the affine chart (t0/t3, t1/t3, t2/t3) of the symmetric coordinates.
template <class F>
HitchinValueT<F> hitchin_sym(const CurveParamsT<F>& c, const std::vector<F>& tc, const std::array<F, 3>& eta) {
    const F &t0 = tc[0], &t1 = tc[1], &t2 = tc[2], &t3 = tc[3];
    if (is_zero(t3)) raise(Errc::AffineChartViolation, "t3 = 0 lies outside the affine chart");
    const F &e0 = eta[0], &e1 = eta[1], &e2 = eta[2];
    const F &r = c.r, &s = c.s, &t = c.t;
    F four = from_int<F>(4);
    F t3_2 = t3 * t3, den = four * t3_2 * t3_2;
    F et = e0 * t0 + e1 * t1 + e2 * t2;
    auto sq = [](const F& x) { return x * x; };

    F h0 = r * s * t * sq(e0 * (t0 * t0 - t3_2) + e1 * (t0 * t1 + t2 * t3) + e2 * (t0 * t2 + t1 * t3)) -
           s * t * sq(e0 * (t0 * t1 - t2 * t3) + e1 * (t1 * t1 + t3_2) + e2 * (t0 * t3 + t1 * t2)) +
           four * r * s * sq(e0 * t0 + e1 * t1) * t3_2 -
           r * t * sq(e0 * (t0 * t0 + t3_2) + e1 * (t0 * t1 + t2 * t3) + e2 * (t0 * t2 - t1 * t3));
    F h1 = t * (t0 * t0 + t1 * t1 + t2 * t2 + t3_2) * ((e0 * e0 + e1 * e1 + e2 * e2) * t3_2 + et * et) +
           s * t * (t0 * t0 - t1 * t1 + t2 * t2 - t3_2) * ((e0 * e0 - e1 * e1 + e2 * e2) * t3_2 - et * et) +
           four * r * (t0 * t2 - t1 * t3) * t3 * (e0 * e2 * t3 + et * e1) +
           four * s * r * (t0 * t2 + t1 * t3) * t3 * (e0 * e2 * t3 - et * e1) +
           four * s * (t0 * t3 + t1 * t2) * t3 * (e1 * e2 * t3 - et * e0) +
           four * r * t * (t0 * t1 + t2 * t3) * t3 * (e0 * e1 * t3 - et * e2);
    F h2 = s * sq(e0 * (t0 * t2 + t1 * t3) + e1 * (t0 * t3 + t1 * t2) + e2 * (t2 * t2 - t3_2)) -
           sq(e0 * (t0 * t2 - t1 * t3) + e1 * (t0 * t3 + t1 * t2) + e2 * (t2 * t2 + t3_2)) -
           t * sq(e0 * (t0 * t1 + t2 * t3) - e2 * (t0 * t3 - t1 * t2) + e1 * (t1 * t1 + t3_2)) +
           four * r * sq(e1 * t1 + e2 * t2) * t3_2;
    return {h0 / den, h1 / den, h2 / den};
}

// ---------------------------------------------------------------- covectors

enum class Chart { RST, Bertram, NR };

Chart parse_chart(const std::string& name);
std::string chart_name(Chart c);

// Affine coordinates of each chart: (R, S, T), (b1/b0, b2/b0, b3/b0), (v0/v3, v1/v3, v2/v3).
template <class F>
std::array<F, 3> chart_map(const CurveParamsT<F>& c, Chart from, Chart to, const std::array<F, 3>& x) {
    F one = from_int<F>(1);
    auto affine = [](const ProjPoint<F>& p, std::size_t skip) {
        if (is_zero(p[skip])) raise(Errc::AffineChartViolation, "image leaves the affine chart");
        std::array<F, 3> out;
        std::size_t k = 0;
        for (std::size_t i = 0; i < 4; ++i)
            if (i != skip) out[k++] = p[i] / p[skip];
        return out;
    };
    if (from == to) return x;
    RSTCoordT<F> rst{P1Point<F>::finite(x[0]), P1Point<F>::finite(x[1]), P1Point<F>::finite(x[2])};
    BertramCoordT<F> b{one, x[0], x[1], x[2]};
    if (from == Chart::RST && to == Chart::Bertram) return affine(rst_to_bertram(c, rst), 0);
    if (from == Chart::RST && to == Chart::NR) return affine(rst_to_nr(c, rst), 3);
    if (from == Chart::Bertram && to == Chart::NR) return affine(bertram_to_nr(c, b), 3);
    if (from == Chart::Bertram && to == Chart::RST) {
        auto p = bertram_to_rst(c, b);
        return {p[0].value(), p[1].value(), p[2].value()};
    }
    raise(Errc::InvalidParams, "no single-valued chart map in this direction (NR to RST is 2:1)");
}

template <class F>
struct CotangentPoint {
    std::array<F, 3> point;
    std::array<F, 3> covector;
};

// Exact Jacobian of a map R^3 -> R^3 by forward-mode differentiation.
template <class F, class Map>
Matrix<F> jacobian(Map&& phi, const std::array<F, 3>& x) {
    std::array<Dual<F>, 3> xd;
    for (std::size_t i = 0; i < 3; ++i) xd[i] = Dual<F>::variable(x[i], i, 3);
    auto y = phi(xd);
    Matrix<F> J(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) J(i, j) = y[i].d(j);
    return J;
}

// Push a covector through a local diffeomorphism y = phi(x): xi_x = J^T xi_y.
template <class F, class Map>
std::array<F, 3> push_covector(Map&& phi, const std::array<F, 3>& x, const std::array<F, 3>& xi) {
    auto J = jacobian<F>(phi, x);
    auto sol = solve(J.transpose(), Vec<F>{xi[0], xi[1], xi[2]});
    return {sol[0], sol[1], sol[2]};
}

template <class F>
CotangentPoint<F> covector_transport(const CurveParamsT<F>& c, Chart from, Chart to, const std::array<F, 3>& x,
                                     const std::array<F, 3>& xi) {
    auto cd = c.template cast<Dual<F>>();
    auto phi = [&](const std::array<Dual<F>, 3>& p) { return chart_map(cd, from, to, p); };
    return {chart_map(c, from, to, x), push_covector<F>(phi, x, xi)};
}

// Affine symmetric coordinates from affine NR coordinates.
template <class F>
std::array<F, 3> nr_to_sym_affine(const Matrix<F>& t_map, const std::array<F, 3>& v) {
    auto t = t_map * Vec<F>{v[0], v[1], v[2], from_int<F>(1)};
    if (is_zero(t[3])) raise(Errc::AffineChartViolation, "t3 = 0 lies outside the affine chart");
    return {t[0] / t[3], t[1] / t[3], t[2] / t[3]};
}

template <class F>
Matrix<Dual<F>> lift_matrix(const Matrix<F>& m) {
    Matrix<Dual<F>> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Dual<F>(m(i, j));
    return out;
}

// Affine NR point and covector carried to the symmetric chart of the given Hudson forms.
CotangentPoint<MultiQuad> nr_to_sym_covector(const HudsonForms& h, const std::array<Rational, 3>& v,
                                             const std::array<Rational, 3>& mu);

// ---------------------------------------------------------------- Poisson structure

enum class HamiltonianTag { H0, H1, H2 };

HamiltonianTag parse_hamiltonian(const std::string& name);

// sum_i (df/dc_i dg/dz_i - df/dz_i dg/dc_i) in the chart (R, S, T, c_r, c_s, c_t)
template <class F>
F poisson_bracket(const CurveParamsT<F>& c, HamiltonianTag f, HamiltonianTag g, const HiggsCoordT<F>& p) {
    auto cd = c.template cast<Dual<F>>();
    std::array<F, 6> x{p.R, p.S, p.T, p.cr, p.cs, p.ct};
    HiggsCoordT<Dual<F>> pd;
    Dual<F>* slots[6] = {&pd.R, &pd.S, &pd.T, &pd.cr, &pd.cs, &pd.ct};
    for (std::size_t i = 0; i < 6; ++i) *slots[i] = Dual<F>::variable(x[i], i, 6);
    auto h = hitchin_rst(cd, pd);
    auto pick = [&](HamiltonianTag tag) -> const Dual<F>& {
        return tag == HamiltonianTag::H0 ? h.h0 : tag == HamiltonianTag::H1 ? h.h1 : h.h2;
    };
    const auto &df = pick(f), &dg = pick(g);
    F sum = from_int<F>(0);
    for (std::size_t i = 0; i < 3; ++i) sum += df.d(i + 3) * dg.d(i) - df.d(i) * dg.d(i + 3);
    return sum;
}

// van Geemen-Previato Hamiltonians H1..H6 from h(x) = h2 x^2 + h1 x + h0.
template <class F>
std::array<F, 6> vgp_hamiltonians(const CurveParamsT<F>& c, const HitchinValueT<F>& h) {
    const F &r = c.r, &s = c.s, &t = c.t;
    F one = from_int<F>(1), four = from_int<F>(4);
    return {four * h(from_int<F>(0)) / (r * s * t),
            -four * h(t) / (t * (t - one) * (t - r) * (t - s)),
            four * h(one) / ((r - one) * (s - one) * (t - one)),
            four * h(s) / (s * (s - one) * (s - r) * (s - t)),
            four * h(r) / (r * (r - one) * (r - s) * (r - t)),
            from_int<F>(0)};
}

} // namespace gml
