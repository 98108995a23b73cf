#include "gml/charts.hpp"

namespace gml {

HudsonForms hudson_forms(const CurveParams& c, const std::array<int, 4>& signs, const std::vector<Rational>& extra) {
    const Rational &r = c.r, &s = c.s, &t = c.t;
    auto sys = std::make_shared<RadicalSystem>();
    sys->radicands = {c.sigma3(), (r - 1) * (s - 1) * (t - 1), r * (r - 1) * (r - s) * (r - t),
                      s * (s - 1) * (s - r) * (s - t)};
    sys->signs = {signs[0], signs[1], signs[2], signs[3]};
    for (const auto& e : extra) {
        sys->radicands.push_back(e);
        sys->signs.push_back(1);
    }
    if (sys->radicands.size() > std::size_t(MultiQuad::kMax)) raise(Errc::InvalidParams, "too many radicals");
    for (int sg : signs)
        if (sg != 1 && sg != -1) raise(Errc::InvalidParams, "root choices must be +1 or -1");

    HudsonForms h;
    h.sys = sys;
    MultiQuad al = h.alpha(), be = h.beta(), ga = h.gamma(), de = h.delta();
    MultiQuad z(0), o(1), s2(c.sigma2());
    h.u_map = Matrix<MultiQuad>(4, 4, {o, o, z, -s2, z, be, z, z, z, al, al, al, z, z, z, al * be});
    auto Q = [](const Rational& q) { return MultiQuad(q); };
    MultiQuad a = Q(r * s * t * (r - s)) * be + Q(t) * ga * de - Q(r * t * (r - 1)) * de - Q(s * t) * be * ga;
    MultiQuad b = Q(-s * t * (s - 1)) * ga + Q(r * t) * be * de;
    MultiQuad cc = Q(t * (r - s)) * al * be - Q(t * (r - 1)) * al * de;
    MultiQuad d = Q(-t * (r - 1) * (s - 1) * (r - s)) * al + Q(t * (s - 1)) * al * ga;
    Matrix<MultiQuad> m(4, 4, {a, b, cc, d, -b, a, d, -cc, cc, d, a, b, d, -cc, -b, a});
    h.t_map = m * h.u_map;
    auto abcd = hudson_coefficients(c);
    h.A = abcd[0];
    h.B = abcd[1];
    h.C = abcd[2];
    h.D = abcd[3];
    return h;
}

MultiQuad HudsonForms::u_quartic(const std::vector<MultiQuad>& u, const CurveParams& c) const {
    const MultiQuad &u0 = u[0], &u1 = u[1], &u2 = u[2], &u3 = u[3];
    MultiQuad al = alpha(), be = beta(), two(2);
    MultiQuad k = MultiQuad(c.sigma1() + c.sigma2() - 2 * c.sigma3() - 2);
    return (u0 * u0 * u3 * u3 + u1 * u1 * u2 * u2) + be * be * (u0 * u0 * u2 * u2 + u1 * u1 * u3 * u3) +
           al * al * (u0 * u0 * u1 * u1 + u2 * u2 * u3 * u3) -
           two * be * (u0 * u2 - u1 * u3) * (u0 * u3 + u1 * u2) -
           two * al * (u0 * u3 - u1 * u2) * (u0 * u1 - u2 * u3) -
           two * al * be * (u0 * u1 + u2 * u3) * (u0 * u2 + u1 * u3) - two * k * u0 * u1 * u2 * u3;
}

MultiQuad HudsonForms::t_quartic(const std::vector<MultiQuad>& t) const {
    auto sq = [](const MultiQuad& x) { return x * x; };
    const MultiQuad &t0 = t[0], &t1 = t[1], &t2 = t[2], &t3 = t[3];
    return (sq(sq(t0)) + sq(sq(t1)) + sq(sq(t2)) + sq(sq(t3))) + MultiQuad(2 * D) * t0 * t1 * t2 * t3 +
           MultiQuad(A) * (sq(t0) * sq(t3) + sq(t1) * sq(t2)) + MultiQuad(B) * (sq(t1) * sq(t3) + sq(t0) * sq(t2)) +
           MultiQuad(C) * (sq(t2) * sq(t3) + sq(t0) * sq(t1));
}

std::array<std::pair<int, int>, 4> hudson_translation(int i) {
    switch (i) {
    case 0: return {{{2, 1}, {3, 1}, {0, 1}, {1, 1}}};
    case 1: return {{{1, 1}, {0, -1}, {3, -1}, {2, 1}}};
    case 2: return {{{0, 1}, {1, -1}, {2, -1}, {3, 1}}};
    case 3: return {{{1, 1}, {0, 1}, {3, -1}, {2, -1}}};
    case 4: return {{{2, 1}, {3, 1}, {0, -1}, {1, -1}}};
    default: raise(Errc::InvalidLabel, "translation table covers [w_i] - [w_inf] for finite i");
    }
}

} // namespace gml
