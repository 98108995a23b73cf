#include "gml/identity.hpp"

#include <boost/multiprecision/integer.hpp>

namespace gml {

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    Integer n = numerator(q), d = denominator(q);
    Integer rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return Rational(rn, rd);
}

QuadraticRoots<MultiQuad> solve_quadratic(const Rational& a, const Rational& b, const Rational& c) {
    QuadraticRoots<MultiQuad> out;
    if (a.is_zero()) {
        if (b.is_zero()) raise(Errc::Degenerate, "quadratic with a = b = 0");
        out.linear = true;
        out.roots[0] = MultiQuad(Rational(-c / b));
        out.roots[1] = MultiQuad(0);
        return out;
    }
    Rational disc = b * b - 4 * a * c;
    Rational half = 1 / (2 * a);
    if (auto r = rational_sqrt(disc)) {
        out.roots[0] = MultiQuad(Rational((-b + *r) * half));
        out.roots[1] = MultiQuad(Rational((-b - *r) * half));
        return out;
    }
    auto sys = std::make_shared<RadicalSystem>(RadicalSystem{{disc}, {1}});
    MultiQuad root = MultiQuad::radical(sys, 0);
    MultiQuad base = MultiQuad(Rational(-b * half));
    out.roots[0] = base + root * MultiQuad(half);
    out.roots[1] = base - root * MultiQuad(half);
    return out;
}

QuadraticRoots<Complex> solve_quadratic(const Complex& a, const Complex& b, const Complex& c) {
    QuadraticRoots<Complex> out;
    double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale == 0.0) raise(Errc::Degenerate, "zero quadratic");
    if (std::abs(a) <= 1e-14 * scale) {
        if (std::abs(b) <= 1e-14 * scale) raise(Errc::Degenerate, "quadratic with a = b = 0");
        out.linear = true;
        out.roots[0] = -c / b;
        out.roots[1] = 0.0;
        return out;
    }
    Complex sq = std::sqrt(b * b - 4.0 * a * c);
    // avoid cancellation
    Complex q = (std::real(std::conj(b) * sq) >= 0.0) ? -0.5 * (b + sq) : -0.5 * (b - sq);
    if (std::abs(q) == 0.0) {
        out.roots[0] = out.roots[1] = 0.0;
        return out;
    }
    out.roots[0] = q / a;
    out.roots[1] = c / q;
    return out;
}

} // namespace gml
