#include "gml/garnier.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

namespace gml {

namespace detail {

std::array<Complex, 3> cubic_roots(const std::array<Complex, 4>& a) {
    if (std::abs(a[3]) == 0.0) raise(Errc::LeadingCoefficientZero, "cubic has vanishing leading coefficient");
    Eigen::Matrix3cd C = Eigen::Matrix3cd::Zero();
    C(1, 0) = 1.0;
    C(2, 1) = 1.0;
    for (int k = 0; k < 3; ++k) C(k, 2) = -a[std::size_t(k)] / a[3];
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(C, false);
    std::array<Complex, 3> out;
    for (int k = 0; k < 3; ++k) {
        Complex x = es.eigenvalues()(k);
        for (int it = 0; it < 3; ++it) {
            Complex f = ((a[3] * x + a[2]) * x + a[1]) * x + a[0];
            Complex df = (3.0 * a[3] * x + 2.0 * a[2]) * x + a[1];
            if (std::abs(df) < 1e-300) break;
            x -= f / df;
        }
        out[std::size_t(k)] = x;
    }
    return out;
}

namespace {

// best rational approximation with denominator at most max_den
Rational approximate(double x, long max_den) {
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        if (std::abs(fl) > 9e15) break;
        long a = long(fl);
        long h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (v - fl < 1e-15) break;
        v = 1.0 / (v - fl);
    }
    return rat(h1, k1);
}

} // namespace

std::array<Rational, 3> rational_cubic_roots(const Poly<Rational>& p) {
    if (p.degree() != 3) raise(Errc::LeadingCoefficientZero, "cubic has vanishing leading coefficient");
    std::array<Complex, 4> a;
    for (int k = 0; k < 4; ++k) a[std::size_t(k)] = to_complex(p.coeff(k));
    auto approx = cubic_roots(a);
    std::vector<Rational> found;
    Poly<Rational> rest = p;
    for (const auto& z : approx) {
        if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) continue;
        for (long den : {1000L, 1000000L, 1000000000L}) {
            Rational cand = approximate(z.real(), den);
            bool hit = false;
            while (rest.degree() > 0 && is_zero(rest(cand))) {
                rest = rest.deflate(cand).first;
                found.push_back(cand);
                hit = true;
            }
            if (hit) break;
        }
    }
    if (found.size() != 3) raise(Errc::Degenerate, "the Darboux cubic does not split over Q");
    return {found[0], found[1], found[2]};
}

} // namespace detail

FuchsianSystemT<Complex> darboux_connection(const GarnierStateT<Complex>& s) {
    auto zc = darboux_to_zc(s);
    return universal_connection(s.params, s.scheme, zc.z, zc.c);
}

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 12>;

DarbouxCoordT<Complex> unpack(const State& y) {
    DarbouxCoordT<Complex> d;
    for (std::size_t k = 0; k < 3; ++k) {
        d.q[k] = {y[2 * k], y[2 * k + 1]};
        d.p[k] = {y[6 + 2 * k], y[6 + 2 * k + 1]};
    }
    return d;
}

State pack(const DarbouxCoordT<Complex>& d) {
    State y{};
    for (std::size_t k = 0; k < 3; ++k) {
        y[2 * k] = d.q[k].real();
        y[2 * k + 1] = d.q[k].imag();
        y[6 + 2 * k] = d.p[k].real();
        y[6 + 2 * k + 1] = d.p[k].imag();
    }
    return y;
}

std::string where(const std::array<Complex, 3>& P) {
    auto f = [](Complex z) { return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")"; };
    return "r=" + f(P[0]) + " s=" + f(P[1]) + " t=" + f(P[2]);
}

} // namespace

FlowResult flow(const GarnierStateT<Complex>& start, const std::vector<std::array<Complex, 3>>& path,
                const FlowOptions& opt) {
    FlowResult out{start, 0};
    if (path.empty()) return out;
    std::array<Complex, 3> here{start.params.r, start.params.s, start.params.t};
    double gap = 0.0;
    for (std::size_t i = 0; i < 3; ++i) gap = std::max(gap, std::abs(here[i] - path[0][i]));
    if (gap > 1e-12)
        raise(Errc::InvalidParams, "the path must start at the curve parameters of the state");
    State y = pack(start.coord);
    const auto& k = start.scheme;
    auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_fehlberg78<State>());
    for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
        const auto a = path[seg], b = path[seg + 1];
        std::array<Complex, 3> delta{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
        auto params_at = [&](double t) {
            return std::array<Complex, 3>{a[0] + t * delta[0], a[1] + t * delta[1], a[2] + t * delta[2]};
        };
        auto rhs = [&](const State& s, State& ds, double t) {
            auto P = params_at(t);
            CurveParamsT<Complex> c(P[0], P[1], P[2]);
            auto f = isomonodromy_field(c, k, unpack(s));
            for (std::size_t m = 0; m < 3; ++m) {
                Complex dq = 0.0, dp = 0.0;
                for (std::size_t i = 0; i < 3; ++i) {
                    dq += delta[i] * f.dq[i][m];
                    dp += delta[i] * f.dp[i][m];
                }
                ds[2 * m] = dq.real();
                ds[2 * m + 1] = dq.imag();
                ds[6 + 2 * m] = dp.real();
                ds[6 + 2 * m + 1] = dp.imag();
            }
        };
        auto check = [&](double t) {
            auto d = unpack(y);
            double scale = 1.0;
            for (const auto& q : d.q) scale = std::max(scale, std::abs(q));
            if (std::abs(d.delta()) < opt.delta_floor * scale * scale * scale)
                raise(Errc::SingularityHit, "trajectory reached q_k = q_l at " + where(params_at(t)));
        };
        double t = 0.0, dt = 1.0 / 16;
        while (1.0 - t > 1e-15) {
            if (t + dt > 1.0) dt = 1.0 - t;
            try {
                if (stepper.try_step(rhs, y, t, dt) == odeint::success) {
                    ++out.steps;
                    for (double v : y)
                        if (!std::isfinite(v)) raise(Errc::SingularityHit, "flow diverged at " + where(params_at(t)));
                    check(t);
                } else if (dt < opt.min_step) {
                    raise(Errc::StepUnderflow, "flow step size underflow at " + where(params_at(t)));
                }
            } catch (const Error& e) {
                if (e.code() == Errc::InvalidParams)
                    raise(Errc::SingularityHit, "path leaves the parameter space at " + where(params_at(t)));
                if (e.code() == Errc::DenominatorZero)
                    raise(Errc::SingularityHit, "trajectory reached the polar locus at " + where(params_at(t)));
                throw;
            }
        }
    }
    const auto& end = path.back();
    out.state = GarnierStateT<Complex>{CurveParamsT<Complex>(end[0], end[1], end[2]), unpack(y), k};
    return out;
}

} // namespace gml
