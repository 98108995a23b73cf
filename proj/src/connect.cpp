#include "gml/connect.hpp"

#include <cmath>

namespace gml {

namespace {

struct EtaParts {
    std::array<Complex, 4> a, b;
    Complex g;
};

EtaParts eta_parts(const CurveParamsT<Complex>& c, const std::array<Complex, 5>& v) {
    const Complex &l = v[0], &x1 = v[1], &y1 = v[2], &x2 = v[3], &y2 = v[4];
    TyurinCoordT<Complex> tc{CurvePointT<Complex>::unchecked(x1, y1), CurvePointT<Complex>::unchecked(x2, y2),
                             P1Point<Complex>::finite(l)};
    auto d = detail::tyurin_data(c, tc);
    EtaParts out;
    out.a = detail::section_cubics(d).first;
    Complex p1 = 1.0, p2 = 1.0;
    for (std::size_t k = 0; k < 4; ++k) {
        out.b[k] = l * p1 * y2 - p2 * y1 / l;
        p1 *= x1;
        p2 *= x2;
    }
    out.g = c.f_eval(x1) * c.f_eval(x2) * (l * l * l * l - 1.0) / (l * l);
    return out;
}

} // namespace

Complex lagrangian_pullback_check(const CurveParamsT<Complex>& c, const std::array<Complex, 5>& point,
                                  const std::array<Complex, 5>& tangent, double h) {
    std::array<Complex, 5> vp, vm;
    for (std::size_t i = 0; i < 5; ++i) {
        vp[i] = point[i] + h * tangent[i];
        vm[i] = point[i] - h * tangent[i];
    }
    auto e0 = eta_parts(c, point), ep = eta_parts(c, vp), em = eta_parts(c, vm);
    Complex num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        num += e0.a[k] * (ep.b[k] - em.b[k]) / (2.0 * h);
        den += e0.a[k] * e0.b[k];
    }
    if (std::abs(den) == 0.0) raise(Errc::DegenerateConfiguration, "a . b vanishes");
    Complex dlog = std::log(ep.g / em.g) / (2.0 * h);
    return num / den - 0.5 * dlog;
}

} // namespace gml
