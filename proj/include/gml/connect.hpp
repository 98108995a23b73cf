#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gml/higgs.hpp"

namespace gml {

template <class F>
using Dir2 = std::array<F, 2>;

// Local exponents; kappa_0 + ... + kappa_inf + 2 rho = 1.
template <class F>
struct ExponentSchemeT {
    F k0, k1, kr, ks, kt, kinf, rho;

    F defect() const { return k0 + k1 + kr + ks + kt + kinf + from_int<F>(2) * rho - from_int<F>(1); }
    void validate() const {
        if (!near_zero(defect())) raise(Errc::InvalidParams, "exponents must satisfy sum(kappa) + 2 rho = 1");
    }
    // kappa = 1/2 at every Weierstrass point, rho = -1
    static ExponentSchemeT half() {
        F h = from_rational<F>(rat(1, 2));
        return {h, h, h, h, h, h, from_int<F>(-1)};
    }
    // rho from the kappas
    static ExponentSchemeT with_kappas(const std::array<F, 6>& k) {
        F rho = (from_int<F>(1) - k[0] - k[1] - k[2] - k[3] - k[4] - k[5]) / from_int<F>(2);
        return {k[0], k[1], k[2], k[3], k[4], k[5], rho};
    }
    std::array<F, 3> kappa_rst() const { return {kr, ks, kt}; }
};

inline constexpr std::size_t kInfPole = std::size_t(-1);

// d + A(x) dx on a rank-2 bundle over P^1.  In the affine frame
// A(x) = sum_k residues[k] / (x - poles[k]) + sum_j poly[j] x^j; the frame at
// infinity is (affine frame) * transition(x).  Residue at infinity is taken in
// u = 1/x in that frame.
template <class F>
struct FuchsianSystemT {
    std::vector<F> poles;
    std::vector<std::string> labels;
    std::vector<Mat2<F>> residues;
    std::vector<Mat2<F>> poly;
    std::vector<std::optional<Dir2<F>>> parabolics;
    Mat2<RatFunc<F>> transition{RatFunc<F>(from_int<F>(1)), RatFunc<F>(), RatFunc<F>(), RatFunc<F>(from_int<F>(1))};
    Mat2<F> residue_inf = Mat2<F>::zero();
    std::optional<Dir2<F>> parabolic_inf;
    int degree = 0;

    std::size_t index(const std::string& label) const {
        if (label == "inf" || label == "winf") return kInfPole;
        std::string l = (label.size() == 2 && label[0] == 'w') ? label.substr(1) : label;
        for (std::size_t k = 0; k < labels.size(); ++k)
            if (labels[k] == l) return k;
        raise(Errc::InvalidLabel, "unknown pole label: " + label);
    }
    const Mat2<F>& residue(std::size_t i) const { return i == kInfPole ? residue_inf : residues.at(i); }
    const std::optional<Dir2<F>>& parabolic(std::size_t i) const {
        return i == kInfPole ? parabolic_inf : parabolics.at(i);
    }
    std::string label(std::size_t i) const { return i == kInfPole ? "inf" : labels.at(i); }

    template <class G>
    Mat2<G> matrix(const G& x) const {
        Mat2<G> out = Mat2<G>::zero();
        for (std::size_t k = 0; k < poles.size(); ++k) {
            G w = from_int<G>(1) / (x - lift_to<G>(poles[k]));
            const auto& R = residues[k];
            out.a += w * lift_to<G>(R.a);
            out.b += w * lift_to<G>(R.b);
            out.c += w * lift_to<G>(R.c);
            out.d += w * lift_to<G>(R.d);
        }
        G xp = from_int<G>(1);
        for (const auto& P : poly) {
            out.a += xp * lift_to<G>(P.a);
            out.b += xp * lift_to<G>(P.b);
            out.c += xp * lift_to<G>(P.c);
            out.d += xp * lift_to<G>(P.d);
            xp = xp * x;
        }
        return out;
    }

    // deg(E) + sum of residue traces
    F fuchs_defect() const {
        F s = from_int<F>(degree) + residue_inf.trace();
        for (const auto& R : residues) s += R.trace();
        return s;
    }

    template <class G>
    FuchsianSystemT<G> cast() const {
        FuchsianSystemT<G> out;
        auto m = [](const Mat2<F>& M) {
            return Mat2<G>{lift_to<G>(M.a), lift_to<G>(M.b), lift_to<G>(M.c), lift_to<G>(M.d)};
        };
        auto v = [](const std::optional<Dir2<F>>& d) -> std::optional<Dir2<G>> {
            if (!d) return std::nullopt;
            return Dir2<G>{lift_to<G>((*d)[0]), lift_to<G>((*d)[1])};
        };
        for (const auto& p : poles) out.poles.push_back(lift_to<G>(p));
        out.labels = labels;
        for (const auto& R : residues) out.residues.push_back(m(R));
        for (const auto& P : poly) out.poly.push_back(m(P));
        for (const auto& d : parabolics) out.parabolics.push_back(v(d));
        const auto& H = transition;
        out.transition = {H.a.template cast<G>(), H.b.template cast<G>(), H.c.template cast<G>(),
                          H.d.template cast<G>()};
        out.residue_inf = m(residue_inf);
        out.parabolic_inf = v(parabolic_inf);
        out.degree = degree;
        return out;
    }
};

namespace detail {

template <class F>
F& entry(Mat2<F>& m, int i, int j) {
    return i == 0 ? (j == 0 ? m.a : m.b) : (j == 0 ? m.c : m.d);
}

template <class F>
Mat2<F> conj(const Mat2<F>& Qi, const Mat2<F>& M, const Mat2<F>& Q) {
    return Qi * M * Q;
}

template <class F>
double mat_scale(const Mat2<F>& M) {
    return std::max({1.0, magnitude(M.a), magnitude(M.b), magnitude(M.c), magnitude(M.d)});
}

// eigenvalue carried by d, or nullopt if d is not an eigenvector of M
template <class F>
std::optional<F> eigenvalue_of(const Mat2<F>& M, const Dir2<F>& d) {
    auto md = M.apply(d);
    double scale = mat_scale(M) * std::max({1.0, magnitude(d[0]), magnitude(d[1])});
    scale *= scale;
    if (near_zero(F(md[0] * d[1] - md[1] * d[0]), scale, 1e-9)) {
        if (magnitude(d[0]) >= magnitude(d[1])) return md[0] / d[0];
        return md[1] / d[1];
    }
    return std::nullopt;
}

template <class F>
Mat2<F> basis_from(const Dir2<F>& d) {
    F zero = from_int<F>(0), one = from_int<F>(1);
    if (is_zero(d[0]) && is_zero(d[1])) raise(Errc::NotEigendirection, "zero direction");
    if (magnitude(d[0]) >= magnitude(d[1])) return {d[0], zero, d[1], one};
    return {d[0], one, d[1], zero};
}

template <class F>
RatFunc<F> x_power(int m) {
    Poly<F> p(from_int<F>(1));
    for (int k = 0; k < std::abs(m); ++k) p *= Poly<F>::x();
    return m >= 0 ? RatFunc<F>(p) : RatFunc<F>(Poly<F>(from_int<F>(1)), p);
}

template <class F>
Mat2<RatFunc<F>> const_mat(const Mat2<F>& M) {
    return {RatFunc<F>(M.a), RatFunc<F>(M.b), RatFunc<F>(M.c), RatFunc<F>(M.d)};
}

// -lim x f(x); f must vanish at infinity
template <class F>
F minus_limit_x_times(const Poly<F>& n, const Poly<F>& d) {
    int dd = d.degree();
    double scale = 0.0;
    for (const auto& c : n.coeffs()) scale = std::max(scale, magnitude(c));
    for (int k = n.degree(); k >= dd; --k)
        if (!near_zero(n.coeff(k), scale, 1e-9))
            raise(Errc::Degenerate, "connection is not logarithmic at infinity in the declared frame");
    return -n.coeff(dd - 1) / d.leading();
}

template <class F>
RatFunc<F> affine_entry(const FuchsianSystemT<F>& sys, int i, int j) {
    Poly<F> den(from_int<F>(1)), num;
    for (const auto& p : sys.poles) den *= Poly<F>::linear_root(p);
    for (std::size_t k = 0; k < sys.poles.size(); ++k) {
        Poly<F> rest(from_int<F>(1));
        for (std::size_t m = 0; m < sys.poles.size(); ++m)
            if (m != k) rest *= Poly<F>::linear_root(sys.poles[m]);
        Mat2<F> R = sys.residues[k];
        num += Poly<F>(entry(R, i, j)) * rest;
    }
    std::vector<F> pc;
    for (auto P : sys.poly) pc.push_back(entry(P, i, j));
    num += Poly<F>(pc) * den;
    return RatFunc<F>(num, den);
}

template <class F>
Mat2<F> residue_at_infinity(const FuchsianSystemT<F>& sys) {
    const auto& H = sys.transition;
    Mat2<RatFunc<F>> A{affine_entry(sys, 0, 0), affine_entry(sys, 0, 1), affine_entry(sys, 1, 0),
                       affine_entry(sys, 1, 1)};
    Mat2<RatFunc<F>> dH{H.a.derivative(), H.b.derivative(), H.c.derivative(), H.d.derivative()};
    Mat2<RatFunc<F>> adj{H.d, -H.b, -H.c, H.a};
    RatFunc<F> det = H.a * H.d - H.b * H.c;
    if (det.zero()) raise(Errc::Degenerate, "singular transition at infinity");
    auto M = adj * (A * H + dH);
    auto res = [&](const RatFunc<F>& f) {
        if (f.zero()) return from_int<F>(0);
        return minus_limit_x_times(f.num() * det.den(), f.den() * det.num());
    };
    return {res(M.a), res(M.b), res(M.c), res(M.d)};
}

template <class F>
void refresh(FuchsianSystemT<F>& sys) {
    sys.residue_inf = residue_at_infinity(sys);
    for (std::size_t k = 0; k < sys.poles.size(); ++k)
        if (sys.parabolics[k] && !eigenvalue_of(sys.residues[k], *sys.parabolics[k]))
            raise(Errc::NotEigendirection, "parabolic at " + sys.labels[k] + " is not a residue eigendirection");
    if (sys.parabolic_inf && !eigenvalue_of(sys.residue_inf, *sys.parabolic_inf))
        raise(Errc::NotEigendirection, "parabolic at infinity is not a residue eigendirection");
    if (!near_zero(sys.fuchs_defect(), 1.0, 1e-9)) raise(Errc::IncompatibleDegree, "Fuchs relation violated");
}

template <class F>
std::size_t ensure_pole(FuchsianSystemT<F>& sys, const F& p, const std::string& label) {
    for (std::size_t k = 0; k < sys.poles.size(); ++k)
        if (is_zero(F(sys.poles[k] - p))) return k;
    sys.poles.push_back(p);
    sys.labels.push_back(label);
    sys.residues.push_back(Mat2<F>::zero());
    sys.parabolics.push_back(std::nullopt);
    return sys.poles.size() - 1;
}

template <class F>
void add_residues(FuchsianSystemT<F>& sys, const HiggsField<F>& h, const F& scale) {
    for (std::size_t k = 0; k < h.poles.size(); ++k) {
        std::size_t i = ensure_pole(sys, h.poles[k], "x" + std::to_string(sys.poles.size()));
        sys.residues[i] = sys.residues[i] + scale * h.residues[k];
    }
}

template <class F>
FuchsianSystemT<F> skeleton(const CurveParamsT<F>& c) {
    FuchsianSystemT<F> sys;
    auto roots = c.roots();
    const char* names[5] = {"0", "1", "r", "s", "t"};
    for (std::size_t k = 0; k < 5; ++k) {
        sys.poles.push_back(roots[k]);
        sys.labels.push_back(names[k]);
        sys.residues.push_back(Mat2<F>::zero());
        sys.parabolics.push_back(std::nullopt);
    }
    return sys;
}

} // namespace detail

// Residue eigenvalue carried by the declared parabolic at a pole.
template <class F>
F parabolic_eigenvalue(const FuchsianSystemT<F>& sys, std::size_t i) {
    const auto& d = sys.parabolic(i);
    if (!d) raise(Errc::NotEigendirection, "no parabolic declared at " + sys.label(i));
    auto l = detail::eigenvalue_of(sys.residue(i), *d);
    if (!l) raise(Errc::NotEigendirection, "parabolic at " + sys.label(i) + " is not an eigendirection");
    return *l;
}

// Universal family on O + O(-1) with Riemann scheme (0, kappa_i) at finite
// poles and (rho, kappa_inf + rho) at infinity.
template <class F>
FuchsianSystemT<F> universal_connection(const CurveParamsT<F>& c, const ExponentSchemeT<F>& k,
                                        const std::array<F, 3>& z, const std::array<F, 3>& cc) {
    k.validate();
    F zero = from_int<F>(0), one = from_int<F>(1);
    auto sys = detail::skeleton(c);
    auto kap = k.kappa_rst();
    sys.residues[0] = {zero, zero, k.rho, k.k0};
    sys.residues[1] = {-k.rho, k.rho + k.k1, -k.rho, k.rho + k.k1};
    for (std::size_t i = 0; i < 3; ++i) sys.residues[2 + i] = {zero, z[i] * kap[i], zero, kap[i]};
    auto th = higgs_basis(c, z[0], z[1], z[2]);
    for (std::size_t i = 0; i < 3; ++i) detail::add_residues(sys, th[i], cc[i]);
    sys.parabolics[0] = Dir2<F>{zero, one};
    sys.parabolics[1] = Dir2<F>{one, one};
    for (std::size_t i = 0; i < 3; ++i) sys.parabolics[2 + i] = Dir2<F>{z[i], one};
    sys.transition = {RatFunc<F>(one), RatFunc<F>(), RatFunc<F>(), detail::x_power<F>(-1)};
    sys.parabolic_inf = Dir2<F>{zero, one};
    sys.degree = -1;
    detail::refresh(sys);
    return sys;
}

// The connection d + (displayed nabla_0) + sum c_i Theta_i on O(-1) + O(-2);
// the frame at infinity is diag(x, x^2) Y.
template <class F>
FuchsianSystemT<F> canonical_connection(const CurveParamsT<F>& c, const F& R, const F& S, const F& T,
                                        const std::array<F, 3>& cc) {
    F zero = from_int<F>(0), one = from_int<F>(1), half = from_rational<F>(rat(1, 2));
    auto sys = detail::skeleton(c);
    std::array<F, 3> z{R, S, T};
    sys.residues[0] = {zero, zero, -one, half};
    sys.residues[1] = {one, -half, one, -half};
    for (std::size_t i = 0; i < 3; ++i) sys.residues[2 + i] = {zero, half * z[i], zero, half};
    auto th = higgs_basis(c, R, S, T);
    for (std::size_t i = 0; i < 3; ++i) detail::add_residues(sys, th[i], cc[i]);
    sys.parabolics[0] = Dir2<F>{zero, one};
    sys.parabolics[1] = Dir2<F>{one, one};
    for (std::size_t i = 0; i < 3; ++i) sys.parabolics[2 + i] = Dir2<F>{z[i], one};
    sys.transition = {detail::x_power<F>(-1), RatFunc<F>(), RatFunc<F>(), detail::x_power<F>(-2)};
    sys.parabolic_inf = Dir2<F>{zero, one};
    sys.degree = -3;
    detail::refresh(sys);
    return sys;
}

// The 0-eigendirections of the universal family at the finite poles.
template <class F>
std::array<Dir2<F>, 5> zero_eigendirections(const ExponentSchemeT<F>& k, const std::array<F, 3>& z,
                                            const std::array<F, 3>& cc) {
    F one = from_int<F>(1);
    F s0 = k.rho, s1 = k.rho;
    for (std::size_t i = 0; i < 3; ++i) {
        s0 += cc[i] * (one - z[i]);
        s1 -= cc[i] * z[i];
    }
    auto kap = k.kappa_rst();
    std::array<Dir2<F>, 5> out;
    out[0] = {-k.k0 / s0, one};
    out[1] = {one + k.k1 / s1, one};
    for (std::size_t i = 0; i < 3; ++i) out[2 + i] = {z[i] + kap[i] / cc[i], one};
    return out;
}

template <class F>
FuchsianSystemT<F> elementary_transform(const FuchsianSystemT<F>& in, std::size_t i, const Dir2<F>& dir, int sign) {
    if (sign != 1 && sign != -1) raise(Errc::InvalidParams, "sign must be +1 or -1");
    auto lam = detail::eigenvalue_of(in.residue(i), dir);
    if (!lam) raise(Errc::NotEigendirection, "direction is not a residue eigendirection at " + in.label(i));
    F zero = from_int<F>(0), one = from_int<F>(1);
    Mat2<F> Q = detail::basis_from(dir);
    Mat2<F> Qi = Q.inverse();
    FuchsianSystemT<F> sys = in;
    if (i == kInfPole) {
        Mat2<RatFunc<F>> D = sign > 0 ? Mat2<RatFunc<F>>{detail::x_power<F>(1), RatFunc<F>(), RatFunc<F>(), one}
                                      : Mat2<RatFunc<F>>{one, RatFunc<F>(), RatFunc<F>(), detail::x_power<F>(-1)};
        sys.transition = sys.transition * detail::const_mat(Q) * D;
        sys.parabolic_inf = Dir2<F>{zero, one};
    } else {
        const F x0 = sys.poles[i];
        for (auto& R : sys.residues) R = detail::conj(Qi, R, Q);
        for (auto& P : sys.poly) P = detail::conj(Qi, P, Q);
        std::size_t n = sys.poles.size();
        // (1,2) entry times (x - x0)
        F constant = zero;
        for (std::size_t k = 0; k < n; ++k) {
            F cb = sys.residues[k].b;
            constant += cb;
            sys.residues[k].b = cb * (sys.poles[k] - x0);
        }
        std::vector<F> pb;
        for (const auto& P : sys.poly) pb.push_back(P.b);
        std::vector<F> nb(pb.size() + 1, zero);
        for (std::size_t j = 0; j < pb.size(); ++j) {
            nb[j + 1] += pb[j];
            nb[j] -= x0 * pb[j];
        }
        nb[0] += constant;
        // (2,1) entry divided by (x - x0)
        F at_x0 = zero;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            F cc = sys.residues[k].c;
            F w = cc / (sys.poles[k] - x0);
            sys.residues[k].c = w;
            at_x0 -= w;
        }
        std::vector<F> pc;
        for (const auto& P : sys.poly) pc.push_back(P.c);
        std::vector<F> nc;
        if (!pc.empty()) {
            auto [q, v] = Poly<F>(pc).deflate(x0);
            nc = q.coeffs();
            at_x0 += v;
        }
        sys.residues[i].c = at_x0;
        if (sign > 0)
            sys.residues[i].a -= one;
        else
            sys.residues[i].d += one;
        std::size_t len = std::max({sys.poly.size(), nb.size(), nc.size()});
        sys.poly.resize(len, Mat2<F>::zero());
        for (std::size_t j = 0; j < len; ++j) {
            sys.poly[j].b = j < nb.size() ? nb[j] : zero;
            sys.poly[j].c = j < nc.size() ? nc[j] : zero;
        }
        while (!sys.poly.empty() && is_zero(sys.poly.back().a) && is_zero(sys.poly.back().b) &&
               is_zero(sys.poly.back().c) && is_zero(sys.poly.back().d))
            sys.poly.pop_back();
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) {
                sys.parabolics[k] = Dir2<F>{zero, one};
            } else if (sys.parabolics[k]) {
                auto w = Qi.apply(*sys.parabolics[k]);
                sys.parabolics[k] = Dir2<F>{w[0] * (sys.poles[k] - x0), w[1]};
            }
        }
        Poly<F> lin = Poly<F>::linear_root(x0);
        Mat2<RatFunc<F>> Dinv = sign > 0 ? Mat2<RatFunc<F>>{RatFunc<F>(lin), RatFunc<F>(), RatFunc<F>(), one}
                                         : Mat2<RatFunc<F>>{one, RatFunc<F>(), RatFunc<F>(), RatFunc<F>(Poly<F>(one), lin)};
        sys.transition = Dinv * detail::const_mat(Qi) * sys.transition;
    }
    sys.degree += sign;
    detail::refresh(sys);
    return sys;
}

template <class F>
FuchsianSystemT<F> elementary_transform(const FuchsianSystemT<F>& in, const std::string& pole, const Dir2<F>& dir,
                                        int sign) {
    return elementary_transform(in, in.index(pole), dir, sign);
}

// Tensor with the rank-1 logarithmic connection having the given residues.
template <class F>
FuchsianSystemT<F> twist_rank1(const FuchsianSystemT<F>& in, const std::vector<std::pair<std::string, F>>& data) {
    FuchsianSystemT<F> sys = in;
    F zero = from_int<F>(0), total = zero, at_inf = zero;
    for (const auto& [label, a] : data) {
        std::size_t i = sys.index(label);
        if (i == kInfPole) {
            at_inf += a;
        } else {
            sys.residues[i] = sys.residues[i] + a * Mat2<F>::identity();
            total += a;
        }
    }
    // frame at infinity of the line bundle is x^m times the affine frame
    F mf = -at_inf - total;
    long m = 0;
    if constexpr (std::is_same_v<F, Rational>) {
        if (denominator(mf) != 1) raise(Errc::IncompatibleDegree, "rank-1 residues do not sum to an integer");
        m = numerator(mf).template convert_to<long>();
    } else {
        double re = to_complex(mf).real();
        m = std::lround(re);
        if (!near_zero(F(mf - from_int<F>(m)), 1.0, 1e-9))
            raise(Errc::IncompatibleDegree, "rank-1 residues do not sum to an integer");
    }
    auto xm = detail::x_power<F>(int(m));
    auto& H = sys.transition;
    H = {H.a * xm, H.b * xm, H.c * xm, H.d * xm};
    sys.degree += 2 * int(m);
    detail::refresh(sys);
    return sys;
}

// sqrt(dlog D) (x) elm_D^+ along the declared 1/2-parabolics.
template <class F>
FuchsianSystemT<F> galois_symmetry(const FuchsianSystemT<F>& in, const std::vector<std::string>& D) {
    if (D.size() % 2 != 0) raise(Errc::OddDivisor, "the divisor must have even degree");
    F half = from_rational<F>(rat(1, 2));
    FuchsianSystemT<F> sys = in;
    std::vector<std::pair<std::string, F>> twist;
    for (const auto& label : D) {
        std::size_t i = sys.index(label);
        F l = parabolic_eigenvalue(sys, i);
        if (!near_zero(F(l - half))) raise(Errc::NotEigendirection, "parabolic at " + label + " is not a 1/2-direction");
        sys = elementary_transform(sys, i, *sys.parabolic(i), +1);
        twist.emplace_back(label, half);
    }
    return twist_rank1(sys, twist);
}

inline std::vector<std::string> weierstrass_divisor() {
    return {"0", "1", "r", "s", "t", "inf"};
}

// Apparent map: the (2,1) entry times prod (x - p), a section of O(3).
template <class F>
struct ApparentCubic {
    std::array<F, 4> coeffs;  // coefficient of x^k
    bool identically_zero = false;
};

template <class F>
ApparentCubic<F> apparent_cubic(const FuchsianSystemT<F>& sys) {
    Poly<F> den(from_int<F>(1)), num;
    for (const auto& p : sys.poles) den *= Poly<F>::linear_root(p);
    for (std::size_t k = 0; k < sys.poles.size(); ++k) {
        Poly<F> rest(from_int<F>(1));
        for (std::size_t m = 0; m < sys.poles.size(); ++m)
            if (m != k) rest *= Poly<F>::linear_root(sys.poles[m]);
        num += Poly<F>(sys.residues[k].c) * rest;
    }
    std::vector<F> pc;
    for (const auto& P : sys.poly) pc.push_back(P.c);
    num += Poly<F>(pc) * den;
    if (num.degree() > 3) raise(Errc::Degenerate, "apparent map has degree above 3");
    ApparentCubic<F> out{{num.coeff(0), num.coeff(1), num.coeff(2), num.coeff(3)}, num.zero()};
    return out;
}

// Apparent cubic of lambda nabla_0 + sum c_i Theta_i; linear in (lambda, c).
template <class F>
std::array<F, 4> apparent_map(const CurveParamsT<F>& c, const F& R, const F& S, const F& T, const F& lambda,
                              const std::array<F, 3>& cc) {
    F zero = from_int<F>(0);
    auto base = apparent_cubic(canonical_connection(c, R, S, T, {zero, zero, zero})).coeffs;
    std::array<F, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) out[k] = lambda * base[k];
    auto th = higgs_basis(c, R, S, T);
    for (std::size_t i = 0; i < 3; ++i) {
        FuchsianSystemT<F> h = detail::skeleton(c);
        detail::add_residues(h, th[i], from_int<F>(1));
        auto a = apparent_cubic(h).coeffs;
        for (std::size_t k = 0; k < 4; ++k) out[k] += cc[i] * a[k];
    }
    return out;
}

// b with sum b_k [x^k] phi = 0 for the three Higgs cubics.
template <class F>
BertramCoordT<F> apparent_bertram(const CurveParamsT<F>& c, const F& R, const F& S, const F& T) {
    Matrix<F> m(3, 4);
    F zero = from_int<F>(0), one = from_int<F>(1);
    for (std::size_t i = 0; i < 3; ++i) {
        std::array<F, 3> e{zero, zero, zero};
        e[i] = one;
        auto a = apparent_map(c, R, S, T, zero, e);
        for (std::size_t k = 0; k < 4; ++k) m(i, k) = a[k];
    }
    auto ns = nullspace(m);
    if (ns.size() != 1) raise(Errc::Indeterminate, "Higgs hyperplane is degenerate");
    return normalize_projective(BertramCoordT<F>(ns[0].begin(), ns[0].end()));
}

// d + [[alpha, beta], [gamma, delta]] on O(-K) + O(-K) over X, with
// -gamma = A dx / ((x-x1)(x-x2) y), alpha - delta = b dx / ((x-x1)(x-x2)),
// beta = C dx / ((x-x1)(x-x2) y).
template <class F>
struct TyurinConnectionT {
    std::array<F, 4> A, C;  // coefficient of x^k
    F b;
    TyurinCoordT<F> base;
};

namespace detail {

template <class F>
F cubic_eval(const std::array<F, 4>& p, const F& x) {
    return ((p[3] * x + p[2]) * x + p[1]) * x + p[0];
}
template <class F>
F cubic_deriv(const std::array<F, 4>& p, const F& x) {
    return (from_int<F>(3) * p[3] * x + from_int<F>(2) * p[2]) * x + p[1];
}

// helpers on coefficient arrays (degree <= 3)
template <class F>
std::array<F, 4> times_linear(const std::array<F, 4>& p, const F& a) {
    std::array<F, 4> out;
    out[0] = -a * p[0];
    for (std::size_t k = 1; k < 4; ++k) out[k] = p[k - 1] - a * p[k];
    return out;
}
template <class F>
std::array<F, 4> axpy(const F& s, const std::array<F, 4>& p, const std::array<F, 4>& q) {
    std::array<F, 4> out;
    for (std::size_t k = 0; k < 4; ++k) out[k] = s * p[k] + q[k];
    return out;
}
template <class F>
std::array<F, 4> lin(const F& c0, const F& c1) {
    F z = from_int<F>(0);
    return {c0, c1, z, z};
}

template <class F>
struct TyurinData {
    F l, x1, y1, x2, y2;
    F f1, f2;  // F'(x_i) / F(x_i)
};

template <class P, class F>
TyurinData<F> tyurin_data(const CurveParamsT<P>& c, const TyurinCoordT<F>& tc) {
    if (tc.p1.infinite || tc.p2.infinite) raise(Errc::AffineChartViolation, "Tyurin points must be affine");
    if (tc.lambda.is_infinite() || is_zero(tc.lambda.n))
        raise(Errc::DegenerateConfiguration, "lambda must avoid 0 and infinity");
    TyurinData<F> d{tc.lambda.value(), tc.p1.x, tc.p1.y, tc.p2.x, tc.p2.y, F(), F()};
    if (is_zero(F(d.x1 - d.x2))) raise(Errc::DegenerateConfiguration, "x1 = x2");
    F l4 = d.l * d.l * d.l * d.l;
    if (is_zero(F(l4 - from_int<F>(1)))) raise(Errc::DegenerateConfiguration, "lambda^4 = 1");
    auto fp = c.quintic().derivative();
    F F1 = c.f_eval(d.x1), F2 = c.f_eval(d.x2);
    if (is_zero(F1) || is_zero(F2)) raise(Errc::DegenerateConfiguration, "Tyurin point at a Weierstrass point");
    d.f1 = fp(d.x1) / F1;
    d.f2 = fp(d.x2) / F2;
    return d;
}

// The two closed forms with A = +-C; s = +1 or -1.
template <class F>
std::array<F, 4> nabla_sign_cubic(const TyurinData<F>& d, int s) {
    F zero = from_int<F>(0), one = from_int<F>(1), two = from_int<F>(2);
    F sg = from_int<F>(s);
    const F &l = d.l, &x1 = d.x1, &x2 = d.x2, &y1 = d.y1, &y2 = d.y2;
    F D = x1 - x2;
    F k = l / ((l * l - sg) * two * D * D);
    F ys = y1 - sg * y2;
    std::array<F, 4> p{F(-from_int<F>(6) * x1 * x2 * (x2 * y1 - sg * x1 * y2) +
                         two * (x2 * x2 * x2 * y1 - sg * x1 * x1 * x1 * y2)),
                       from_int<F>(12) * x1 * x2 * ys, -from_int<F>(6) * (x1 + x2) * ys, from_int<F>(4) * ys};
    // (x - x1)(x - x2)(y1 f1 (x - x2) + s y2 f2 (x - x1))
    auto inner = axpy(y1 * d.f1, lin(-x2, one), axpy(sg * y2 * d.f2, lin(-x1, one), lin(zero, zero)));
    auto q = times_linear(times_linear(inner, x1), x2);
    p = axpy(-D, q, p);
    for (auto& v : p) v = k * v;
    return p;
}

// Coefficients of A0 and C0 in the averaged section.
template <class F>
std::pair<std::array<F, 4>, std::array<F, 4>> section_cubics(const TyurinData<F>& d) {
    F one = from_int<F>(1), two = from_int<F>(2), zero = from_int<F>(0);
    const F &l = d.l, &x1 = d.x1, &x2 = d.x2, &y1 = d.y1, &y2 = d.y2;
    F l2 = l * l;
    F D = x1 - x2;
    F k = l / (l2 * l2 - one);
    auto q = times_linear(lin(-x1, one), x2);  // (x - x1)(x - x2)
    auto xq = times_linear(q, zero);
    auto mid = axpy(-(x1 + x2), q, axpy(two, xq, lin(zero, zero)));  // (2x - x1 - x2) q
    auto build = [&](const F& u2, const F& u1, const F& g1, const F& g2) {
        // u2 (x - x1) - u1 (x - x2) + (u1 - u2)(2x - x1 - x2) q / D^2 - (g1 (x - x2) + g2 (x - x1)) q / (2D)
        auto out = axpy(u2, lin(-x1, one), axpy(-u1, lin(-x2, one), lin(zero, zero)));
        out = axpy((u1 - u2) / (D * D), mid, out);
        auto g = axpy(g1, lin(-x2, one), axpy(g2, lin(-x1, one), lin(zero, zero)));
        auto gq = times_linear(times_linear(g, x1), x2);
        out = axpy(-one / (two * D), gq, out);
        for (auto& v : out) v = k * v;
        return out;
    };
    auto A0 = build(y2, l2 * y1, l2 * y1 * d.f1, y2 * d.f2);
    auto C0 = build(l2 * y2, y1, y1 * d.f1, l2 * y2 * d.f2);
    return {A0, C0};
}

} // namespace detail

// Residuals of the six affine conditions (parabolic, eigenvalue, apparent).
template <class P, class F>
std::array<F, 6> tyurin_constraints(const CurveParamsT<P>& c, const TyurinCoordT<F>& tc,
                                    const TyurinConnectionT<F>& conn) {
    if (tc.p1.infinite || tc.p2.infinite) raise(Errc::AffineChartViolation, "Tyurin points must be affine");
    if (tc.lambda.is_infinite() || is_zero(tc.lambda.n))
        raise(Errc::DegenerateConfiguration, "lambda must avoid 0 and infinity");
    F l = tc.lambda.value(), li = from_int<F>(1) / l, two = from_int<F>(2);
    const F &x1 = tc.p1.x, &y1 = tc.p1.y, &x2 = tc.p2.x, &y2 = tc.p2.y;
    const auto &A = conn.A, &C = conn.C;
    const F& b = conn.b;
    auto fp = c.quintic().derivative();
    using detail::cubic_deriv;
    using detail::cubic_eval;
    return {l * cubic_eval(A, x1) + b * y1 + li * cubic_eval(C, x1),
            li * cubic_eval(A, x2) + b * y2 + l * cubic_eval(C, x2),
            two * l * cubic_eval(A, x1) + b * y1 - y1 * (x2 - x1),
            two * li * cubic_eval(A, x2) + b * y2 - y2 * (x1 - x2),
            two * y1 * (l * cubic_deriv(A, x1) + li * cubic_deriv(C, x1)) + b * fp(x1),
            two * y2 * (li * cubic_deriv(A, x2) + l * cubic_deriv(C, x2)) + b * fp(x2)};
}

template <class P, class F>
std::pair<TyurinConnectionT<F>, TyurinConnectionT<F>> nabla_pm(const CurveParamsT<P>& c, const TyurinCoordT<F>& tc) {
    auto d = detail::tyurin_data(c, tc);
    F one = from_int<F>(1), l2 = d.l * d.l;
    if (is_zero(F(l2 + one))) raise(Errc::DegenerateConfiguration, "lambda^2 = -1");
    auto ap = detail::nabla_sign_cubic(d, 1);
    auto am = detail::nabla_sign_cubic(d, -1);
    std::array<F, 4> cm;
    for (std::size_t k = 0; k < 4; ++k) cm[k] = -am[k];
    F D = d.x1 - d.x2;
    TyurinConnectionT<F> plus{ap, ap, (l2 + one) / (l2 - one) * D, tc};
    TyurinConnectionT<F> minus{am, cm, (l2 - one) / (l2 + one) * D, tc};
    return {plus, minus};
}

template <class P, class F>
TyurinConnectionT<F> lagrangian_section(const CurveParamsT<P>& c, const TyurinCoordT<F>& tc) {
    auto d = detail::tyurin_data(c, tc);
    F one = from_int<F>(1), l4 = d.l * d.l * d.l * d.l;
    auto [A0, C0] = detail::section_cubics(d);
    return {A0, C0, (l4 + one) / (l4 - one) * (d.x1 - d.x2), tc};
}

// eta = sum a_k db_k / sum a_k b_k with a = coefficients of A0 and
// b_k = lambda x1^k y2 - x2^k y1 / lambda.  Along curve tangents eta pulls back
// to (1/2) dlog(F(x1) F(x2) (lambda^4 - 1) / lambda^2); the returned value is
// eta(v) minus that exact term.
template <class F>
F eta_pullback(const CurveParamsT<F>& c, const std::array<F, 5>& point, const std::array<F, 5>& tangent) {
    using D = Dual<F>;
    std::array<D, 5> v;
    for (std::size_t i = 0; i < 5; ++i) v[i] = D(point[i]) + D::variable(from_int<F>(0), 0, 1) * D(tangent[i]);
    auto cd = c.template cast<D>();
    const D &l = v[0], &x1 = v[1], &y1 = v[2], &x2 = v[3], &y2 = v[4];
    TyurinCoordT<D> tc{CurvePointT<D>::unchecked(x1, y1), CurvePointT<D>::unchecked(x2, y2), P1Point<D>::finite(l)};
    auto d = detail::tyurin_data(cd, tc);
    auto a = detail::section_cubics(d).first;
    D num = D(from_int<F>(0)), den = D(from_int<F>(0));
    D px1 = D(from_int<F>(1)), px2 = D(from_int<F>(1));
    for (std::size_t k = 0; k < 4; ++k) {
        D bk = l * px1 * y2 - px2 * y1 / l;
        num += a[k].value() * bk.d(0);
        den += a[k].value() * bk.value();
        px1 = px1 * x1;
        px2 = px2 * x2;
    }
    D one = D(from_int<F>(1));
    D g = cd.f_eval(x1) * cd.f_eval(x2) * (l * l * l * l - one) / (l * l);
    return num.value() / den.value() - g.d(0) / (from_int<F>(2) * g.value());
}

// Same quantity by central differences in complex arithmetic (step h).
Complex lagrangian_pullback_check(const CurveParamsT<Complex>& c, const std::array<Complex, 5>& point,
                                  const std::array<Complex, 5>& tangent, double h = 1e-5);

// Tangent to X x X x P^1 at the point: dy_i = F'(x_i) dx_i / (2 y_i).
template <class F>
std::array<F, 5> curve_tangent(const CurveParamsT<F>& c, const std::array<F, 5>& point, const F& dl, const F& dx1,
                               const F& dx2) {
    auto fp = c.quintic().derivative();
    F two = from_int<F>(2);
    return {dl, dx1, fp(point[1]) * dx1 / (two * point[2]), dx2, fp(point[3]) * dx2 / (two * point[4])};
}

using ExponentScheme = ExponentSchemeT<Rational>;
using FuchsianSystem = FuchsianSystemT<Rational>;
using TyurinConnection = TyurinConnectionT<Complex>;

} // namespace gml
