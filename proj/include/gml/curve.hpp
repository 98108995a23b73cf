#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gml/poly.hpp"
#include "gml/scalar.hpp"

namespace gml {

// The curve y^2 = x(x-1)(x-r)(x-s)(x-t).
template <class F>
struct CurveParamsT {
    F r, s, t;

    CurveParamsT(F r_, F s_, F t_) : r(std::move(r_)), s(std::move(s_)), t(std::move(t_)) { validate(); }

    void validate() const {
        const F zero = from_int<F>(0), one = from_int<F>(1);
        auto bad = [](const F& a, const F& b) { return near_zero(F(a - b), 1.0, 1e-14); };
        for (const F* p : {&r, &s, &t})
            if (bad(*p, zero) || bad(*p, one)) raise(Errc::InvalidParams, "r, s, t must avoid 0 and 1");
        if (bad(r, s) || bad(r, t) || bad(s, t)) raise(Errc::InvalidParams, "r, s, t must be pairwise distinct");
    }

    F sigma1() const { return r + s + t; }
    F sigma2() const { return r * s + s * t + t * r; }
    F sigma3() const { return r * s * t; }

    // finite branch points 0, 1, r, s, t
    std::array<F, 5> roots() const { return {from_int<F>(0), from_int<F>(1), r, s, t}; }

    Poly<F> quintic() const {
        Poly<F> p(from_int<F>(1));
        for (const auto& a : roots()) p *= Poly<F>::linear_root(a);
        return p;
    }

    template <class G>
    G f_eval(const G& x) const {
        G one = from_int<G>(1);
        return x * (x - one) * (x - lift<G>(r)) * (x - lift<G>(s)) * (x - lift<G>(t));
    }

    template <class G>
    CurveParamsT<G> cast() const {
        return CurveParamsT<G>(lift<G>(r), lift<G>(s), lift<G>(t));
    }

    template <class G = F>
    static G lift(const F& v) {
        if constexpr (std::is_same_v<G, F>) return v;
        else if constexpr (std::is_same_v<F, Rational>) return from_rational<G>(v);
        else return G(v);
    }
};

using CurveParams = CurveParamsT<Rational>;

template <class F>
std::array<F, 3> sigma_invariants(const CurveParamsT<F>& p) {
    return {p.sigma1(), p.sigma2(), p.sigma3()};
}

template <class F>
F f_eval(const CurveParamsT<F>& p, const F& x) {
    return p.f_eval(x);
}

// Affine point or the unique point at infinity.
template <class F>
struct CurvePointT {
    bool infinite = false;
    F x{}, y{};

    static CurvePointT at_infinity() {
        CurvePointT p;
        p.infinite = true;
        p.x = from_int<F>(0);
        p.y = from_int<F>(0);
        return p;
    }
    static CurvePointT unchecked(F x, F y) {
        CurvePointT p;
        p.x = std::move(x);
        p.y = std::move(y);
        return p;
    }
    template <class P>
    static CurvePointT affine(const CurveParamsT<P>& params, F x, F y) {
        F res = y * y - params.f_eval(x);
        double scale = std::max(1.0, magnitude(F(y * y)));
        if (!near_zero(res, scale, 1e-10)) raise(Errc::NotOnCurve, "point does not satisfy y^2 = F(x)");
        return unchecked(std::move(x), std::move(y));
    }

    friend bool operator==(const CurvePointT& a, const CurvePointT& b) {
        if (a.infinite || b.infinite) return a.infinite == b.infinite;
        return is_zero(F(a.x - b.x)) && is_zero(F(a.y - b.y));
    }
};

using CurvePoint = CurvePointT<Rational>;

template <class F>
CurvePointT<F> involution(const CurvePointT<F>& p) {
    if (p.infinite) return p;
    return CurvePointT<F>::unchecked(p.x, -p.y);
}

// w_0, w_1, w_r, w_s, w_t, w_inf
template <class F>
std::vector<CurvePointT<F>> weierstrass_points(const CurveParamsT<F>& p) {
    std::vector<CurvePointT<F>> out;
    for (const auto& a : p.roots()) out.push_back(CurvePointT<F>::unchecked(a, from_int<F>(0)));
    out.push_back(CurvePointT<F>::at_infinity());
    return out;
}

} // namespace gml
