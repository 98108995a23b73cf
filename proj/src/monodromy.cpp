#include "gml/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

namespace gml {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 10>;

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

double seg_distance(Complex a, Complex b, Complex q) {
    Complex d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(q - a);
    double s = std::clamp(((q - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(q - (a + s * d));
}

double mat_norm(const CMat2& m) { return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)}); }

CMat2 scaled(const Complex& s, const CMat2& m) { return s * m; }

std::vector<Complex> finite_poles(const FuchsianSystemT<Complex>& sys) { return sys.poles; }

} // namespace

Complex PathPiece::point(double s) const {
    if (kind == Segment) return a + s * (b - a);
    double th = th0 + s * (th1 - th0);
    return a + radius * Complex(std::cos(th), std::sin(th));
}

Complex PathPiece::velocity(double s) const {
    if (kind == Segment) return b - a;
    double th = th0 + s * (th1 - th0);
    return kI * radius * Complex(std::cos(th), std::sin(th)) * (th1 - th0);
}

PathPiece PathPiece::reversed() const {
    if (kind == Segment) return segment(b, a);
    return arc(a, radius, th1, th0);
}

double PathPiece::distance_to(Complex q) const {
    if (kind == Segment) return seg_distance(a, b, q);
    double lo = std::min(th0, th1), hi = std::max(th0, th1);
    double best = std::min(std::abs(q - start()), std::abs(q - end()));
    if (hi - lo >= 2 * kPi) return std::abs(std::abs(q - a) - radius);
    double phi = std::arg(q - a);
    for (int k = -3; k <= 3; ++k) {
        double p = phi + 2 * kPi * k;
        if (p >= lo && p <= hi) best = std::min(best, std::abs(std::abs(q - a) - radius));
    }
    return best;
}

Path Path::polyline(const std::vector<Complex>& v) {
    Path p;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) p.pieces.push_back(PathPiece::segment(v[i], v[i + 1]));
    return p;
}

Path Path::reversed() const {
    Path p;
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) p.pieces.push_back(it->reversed());
    return p;
}

Path Path::then(const Path& next) const {
    Path p = *this;
    p.pieces.insert(p.pieces.end(), next.pieces.begin(), next.pieces.end());
    return p;
}

double Path::clearance(const std::vector<Complex>& poles) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& piece : pieces)
        for (const auto& q : poles) best = std::min(best, piece.distance_to(q));
    return best;
}

TransportResult transport_detailed(const FuchsianSystemT<Complex>& sys, const Path& path, const TransportOptions& opt,
                                   double clearance) {
    if (clearance > 0.0 && path.clearance(finite_poles(sys)) < clearance)
        raise(Errc::PoleTooClose, "path passes within the declared clearance of a pole");
    for (const auto& q : sys.poles)
        if (path.clearance({q}) < 1e-12) raise(Errc::PoleTooClose, "path meets a pole");

    State y{1, 0, 0, 0, 0, 0, 1, 0, 0, 0};
    TransportResult out;
    auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_fehlberg78<State>());
    for (const auto& piece : path.pieces) {
        auto rhs = [&](const State& s, State& ds, double t) {
            Complex x = piece.point(t), v = piece.velocity(t);
            CMat2 A = sys.matrix(x);
            CMat2 Y{{s[0], s[1]}, {s[2], s[3]}, {s[4], s[5]}, {s[6], s[7]}};
            CMat2 D = scaled(-v, A * Y);
            Complex tr = -v * A.trace();
            ds = {D.a.real(), D.a.imag(), D.b.real(), D.b.imag(), D.c.real(), D.c.imag(),
                  D.d.real(), D.d.imag(), tr.real(), tr.imag()};
        };
        double t = 0.0, dt = 1.0 / 64;
        while (1.0 - t > 1e-15) {
            if (t + dt > 1.0) dt = 1.0 - t;
            if (stepper.try_step(rhs, y, t, dt) == odeint::success) {
                if (++out.steps > opt.max_steps) raise(Errc::StepUnderflow, "transport exceeded the step budget");
                for (double v : y)
                    if (!std::isfinite(v)) raise(Errc::StepUnderflow, "transport solution overflowed");
            } else if (dt < opt.min_step) {
                raise(Errc::StepUnderflow, "transport step size underflow");
            }
        }
    }
    out.matrix = {{y[0], y[1]}, {y[2], y[3]}, {y[4], y[5]}, {y[6], y[7]}};
    out.log_det = {y[8], y[9]};
    Complex expect = std::exp(out.log_det);
    double size = mat_norm(out.matrix);
    out.det_drift = std::abs(out.matrix.det() - expect) / std::max({1.0, std::abs(expect), size * size});
    if (out.det_drift > opt.det_tol) raise(Errc::RelationViolated, "transport determinant drift");
    return out;
}

CMat2 transport(const FuchsianSystemT<Complex>& sys, const Path& path, const TransportOptions& opt, double clearance) {
    return transport_detailed(sys, path, opt, clearance).matrix;
}

std::vector<LoopSpec> default_loops(const FuchsianSystemT<Complex>& sys) {
    const auto& poles = sys.poles;
    if (poles.size() < 2) raise(Errc::InvalidParams, "need at least two finite poles");
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poles.size(); ++i)
        for (std::size_t j = i + 1; j < poles.size(); ++j) gap = std::min(gap, std::abs(poles[i] - poles[j]));
    if (gap == 0.0) raise(Errc::PoleTooClose, "coincident poles");
    double rho = gap / 4;
    double lo = poles[0].real(), hi = lo, lowest = poles[0].imag();
    for (const auto& p : poles) {
        lo = std::min(lo, p.real());
        hi = std::max(hi, p.real());
        lowest = std::min(lowest, p.imag());
    }
    double H = std::max(0.0, -lowest) + 1.0 + (hi - lo) / 2;
    Complex base(0.0, -H);
    double declared = rho / 2;

    std::vector<LoopSpec> out;
    for (const char* lab : kRepLabels) {
        LoopSpec L;
        L.target = lab;
        L.basepoint = base;
        L.clearance = declared;
        if (std::string(lab) == "inf") {
            L.center = Complex((lo + hi) / 2, 0.0);
            double far = std::abs(base - L.center);
            for (const auto& p : poles) far = std::max(far, std::abs(p - L.center));
            L.radius = far + 1.0 + (hi - lo) / 2;
            Complex foot = L.center - kI * L.radius;
            Path in = Path::polyline({base, foot});
            Path circle{{PathPiece::arc(L.center, L.radius, -kPi / 2, -5 * kPi / 2)}};
            L.path = in.then(circle).then(in.reversed());
        } else {
            Complex p = poles.at(sys.index(lab));
            L.center = p;
            L.radius = rho;
            Path in = Path::polyline({base, p - kI * rho});
            Path circle{{PathPiece::arc(p, rho, -kPi / 2, 3 * kPi / 2)}};
            L.path = in.then(circle).then(in.reversed());
        }
        if (L.path.clearance(poles) < declared * (1 - 1e-12))
            raise(Errc::PoleTooClose, std::string("default loop around ") + lab + " violates its clearance");
        out.push_back(std::move(L));
    }
    return out;
}

namespace {

Complex enclosed_trace(const FuchsianSystemT<Complex>& sys, const LoopSpec& L) {
    if (L.target == "inf") {
        Complex s = 0.0;
        for (const auto& R : sys.residues) s += R.trace();
        return -s;
    }
    return sys.residues.at(sys.index(L.target)).trace();
}

CMat2 loop_matrix(const FuchsianSystemT<Complex>& sys, const LoopSpec& L, const TransportOptions& opt) {
    auto r = transport_detailed(sys, L.path, opt, L.clearance);
    // exact determinant from the residue theorem
    Complex want = std::exp(-2.0 * kPi * kI * enclosed_trace(sys, L));
    Complex f = std::sqrt(want / r.matrix.det());
    if (std::abs(f - 1.0) > std::abs(f + 1.0)) f = -f;
    return f * r.matrix;
}

void check_loops(const std::vector<LoopSpec>& loops) {
    if (loops.size() != 6) raise(Errc::InvalidParams, "six loops expected");
    for (std::size_t i = 0; i < 6; ++i)
        if (loops[i].target != kRepLabels[i]) raise(Errc::InvalidLabel, "loops must be ordered 0, 1, r, s, t, inf");
}

} // namespace

MonodromyRep full_rep(const FuchsianSystemT<Complex>& sys, const std::vector<LoopSpec>& loops,
                      const TransportOptions& opt) {
    check_loops(loops);
    MonodromyRep rep;
    rep.basepoint = loops[0].basepoint;
    std::array<std::exception_ptr, 6> errors;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < 6; ++i) {
        try {
            rep.M[std::size_t(i)] = loop_matrix(sys, loops[std::size_t(i)], opt);
        } catch (...) {
            errors[std::size_t(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rep;
}

MonodromyRep full_rep_serial(const FuchsianSystemT<Complex>& sys, const std::vector<LoopSpec>& loops,
                             const TransportOptions& opt) {
    check_loops(loops);
    MonodromyRep rep;
    rep.basepoint = loops[0].basepoint;
    for (std::size_t i = 0; i < 6; ++i) rep.M[i] = loop_matrix(sys, loops[i], opt);
    return rep;
}

MonodromyRep full_rep(const FuchsianSystemT<Complex>& sys, const TransportOptions& opt) {
    return full_rep(sys, default_loops(sys), opt);
}

CMat2 MonodromyRep::product() const {
    CMat2 p = CMat2::identity();
    for (const auto& m : M) p = p * m;
    return p;
}

double MonodromyRep::product_residual() const { return max_abs_diff(product(), CMat2::identity()); }

CMat2 commutator(const CMat2& a, const CMat2& b) { return a * b * a.inverse() * b.inverse(); }

CMat2 Genus2Rep::relation() const { return commutator(A1, B1) * commutator(A2, B2); }

double Genus2Rep::relation_residual() const { return max_abs_diff(relation(), CMat2::identity()); }

double Genus2Rep::det_residual() const {
    return std::max({std::abs(A1.det() - 1.0), std::abs(B1.det() - 1.0), std::abs(A2.det() - 1.0),
                     std::abs(B2.det() - 1.0)});
}

Genus2Rep genus2_lift(const MonodromyRep& rep, double tol) {
    double res = rep.product_residual();
    if (res > tol * std::max(1.0, mat_norm(rep.product())))
        raise(Errc::RelationViolated, "monodromy fails its product relation");
    const auto& M = rep.M;
    return {M[0] * M[1], M[2] * M[1], M[3] * M[4], M[5] * M[4]};
}

namespace {

std::array<CMat2, 4> involution_targets(const Genus2Rep& g) {
    CMat2 C = g.B1.inverse() * g.A1.inverse() * g.B2 * g.A2;
    CMat2 Ci = C.inverse();
    return {g.A1.inverse(), g.B1.inverse(), C * g.A2.inverse() * Ci, C * g.B2.inverse() * Ci};
}

CMat2 normalize_involution(const CMat2& M) {
    CMat2 sq = M * M;
    Complex m = (sq.a + sq.d) / 2.0;
    if (std::abs(m) == 0.0) raise(Errc::NotInvolutionCompatible, "M^2 vanishes");
    return (1.0 / std::sqrt(m)) * M;
}

} // namespace

double involution_residual(const Genus2Rep& g, const CMat2& M) {
    auto tg = involution_targets(g);
    std::array<CMat2, 4> src{g.A1, g.B1, g.A2, g.B2};
    double scale = std::max(1.0, mat_norm(M));
    double r = 0.0;
    for (std::size_t k = 0; k < 4; ++k) r = std::max(r, max_abs_diff(src[k] * M, M * tg[k]) / scale);
    return r;
}

InvolutionFit involution_matrix(const Genus2Rep& g) {
    auto tg = involution_targets(g);
    std::array<CMat2, 4> src{g.A1, g.B1, g.A2, g.B2};
    // X M - M Y = 0 is linear in the entries (m00, m01, m10, m11)
    Eigen::MatrixXcd L(16, 4);
    L.setZero();
    for (std::size_t k = 0; k < 4; ++k) {
        const auto& X = src[k];
        const auto& Y = tg[k];
        Complex x[2][2] = {{X.a, X.b}, {X.c, X.d}}, y[2][2] = {{Y.a, Y.b}, {Y.c, Y.d}};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                int row = int(4 * k) + 2 * i + j;
                for (int l = 0; l < 2; ++l) {
                    L(row, 2 * l + j) += x[i][l];
                    L(row, 2 * i + l) -= y[l][j];
                }
            }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(L, Eigen::ComputeFullV);
    Eigen::VectorXcd v = svd.matrixV().col(3);
    CMat2 M{v(0), v(1), v(2), v(3)};
    if (std::abs(M.trace()) > 1e-6 * mat_norm(M)) {
        // diagonal representations: the null space is two-dimensional, pick its traceless member
        Eigen::VectorXcd w = svd.matrixV().col(2);
        CMat2 N{w(0), w(1), w(2), w(3)};
        Complex tn = N.trace();
        if (std::abs(tn) > 0.0) M = M - (M.trace() / tn) * N;
    }
    M = normalize_involution(M);
    return {M, involution_residual(g, M)};
}

MonodromyRep descend_rep(const Genus2Rep& g, const CMat2& M0, double tol) {
    CMat2 sq = M0 * M0;
    Complex m = (sq.a + sq.d) / 2.0;
    double scale = std::max(1.0, std::abs(m));
    if (std::abs(sq.b) > tol * scale || std::abs(sq.c) > tol * scale || std::abs(sq.a - sq.d) > tol * scale)
        raise(Errc::NotInvolutionCompatible, "M^2 is not scalar");
    CMat2 M = normalize_involution(M0);
    if (involution_residual(g, M) > tol * std::max(1.0, mat_norm(g.A1) * mat_norm(g.B2)))
        raise(Errc::NotInvolutionCompatible, "M does not conjugate the representation to its involution image");
    const auto &A1 = g.A1, &B1 = g.B1, &A2 = g.A2, &B2 = g.B2;
    MonodromyRep rep;
    rep.M = {A1 * M, M, B1 * M, B2.inverse() * A1 * B1 * M, A1 * B1 * M * A2 * B2, A1 * B1 * M * A2};
    return rep;
}

const std::array<SignRow, 5>& sign_table() {
    static const std::array<SignRow, 5> rows{{
        {"O([w0]-[w1])", {-1, -1, 1, 1, 1, 1}, {-1, 1, 1, 1}},
        {"O([w1]-[wr])", {1, -1, -1, 1, 1, 1}, {1, -1, 1, 1}},
        {"O([ws]-[wt])", {1, 1, 1, -1, -1, 1}, {1, 1, -1, 1}},
        {"O([wt]-[winf])", {1, 1, 1, 1, -1, -1}, {1, 1, 1, -1}},
        {"O", {-1, -1, -1, -1, -1, -1}, {1, 1, 1, 1}},
    }};
    return rows;
}

void validate_character(const SignCharacter& s) {
    int prod = 1;
    for (int x : s) {
        if (x != 1 && x != -1) raise(Errc::InvalidCharacter, "signs must be +1 or -1");
        prod *= x;
    }
    if (prod != 1) raise(Errc::InvalidCharacter, "an odd number of sign changes");
}

std::array<int, 4> lift_signs(const SignCharacter& s) {
    validate_character(s);
    return {s[0] * s[1], s[2] * s[1], s[3] * s[4], s[5] * s[4]};
}

SignCharacter compose(const SignCharacter& a, const SignCharacter& b) {
    SignCharacter out;
    for (std::size_t i = 0; i < 6; ++i) out[i] = a[i] * b[i];
    return out;
}

MonodromyRep sign_twist(const MonodromyRep& rep, const SignCharacter& s) {
    validate_character(s);
    MonodromyRep out = rep;
    for (std::size_t i = 0; i < 6; ++i) out.M[i] = Complex(s[i]) * rep.M[i];
    return out;
}

Genus2Rep sign_twist(const Genus2Rep& g, const std::array<int, 4>& s) {
    for (int x : s)
        if (x != 1 && x != -1) raise(Errc::InvalidCharacter, "signs must be +1 or -1");
    return {Complex(s[0]) * g.A1, Complex(s[1]) * g.B1, Complex(s[2]) * g.A2, Complex(s[3]) * g.B2};
}

std::vector<Complex> trace_coordinates(const MonodromyRep& rep) {
    std::vector<Complex> out;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) out.push_back((rep.M[i] * rep.M[j]).trace());
    const auto& M = rep.M;
    CMat2 A1 = M[0] * M[1], B1 = M[2] * M[1], A2 = M[3] * M[4], B2 = M[5] * M[4];
    for (const auto& X : {A1, B1, A2, B2, A1 * B1, A2 * B2}) out.push_back(X.trace());
    return out;
}

double max_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

double max_distance(const MonodromyRep& a, const MonodromyRep& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < 6; ++i) d = std::max(d, max_abs_diff(a.M[i], b.M[i]));
    return d;
}

double max_distance(const Genus2Rep& a, const Genus2Rep& b) {
    return std::max({max_abs_diff(a.A1, b.A1), max_abs_diff(a.B1, b.B1), max_abs_diff(a.A2, b.A2),
                     max_abs_diff(a.B2, b.B2)});
}

std::optional<std::array<Complex, 2>> common_eigenvector(const MonodromyRep& rep, double tol) {
    auto eigvecs = [](const CMat2& m) {
        std::vector<std::array<Complex, 2>> out;
        Complex tr = m.trace(), disc = std::sqrt(tr * tr - 4.0 * m.det());
        for (Complex lam : {(tr + disc) / 2.0, (tr - disc) / 2.0}) {
            std::array<Complex, 2> v1{m.b, lam - m.a}, v2{lam - m.d, m.c};
            auto& v = std::norm(v1[0]) + std::norm(v1[1]) >= std::norm(v2[0]) + std::norm(v2[1]) ? v1 : v2;
            double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
            if (n == 0.0) {
                out.push_back({1.0, 0.0});
                out.push_back({0.0, 1.0});
            } else {
                out.push_back({v[0] / n, v[1] / n});
            }
        }
        return out;
    };
    auto misalignment = [](const CMat2& m, const std::array<Complex, 2>& v) {
        auto w = m.apply(v);
        double nw = std::sqrt(std::norm(w[0]) + std::norm(w[1]));
        if (nw == 0.0) return 0.0;
        return std::abs(w[0] * v[1] - w[1] * v[0]) / nw;
    };
    for (const auto& v : eigvecs(rep.M[0])) {
        double worst = 0.0;
        for (const auto& m : rep.M) worst = std::max(worst, misalignment(m, v));
        if (worst < tol) return v;
    }
    return std::nullopt;
}

MonodromyRep conjugate(const MonodromyRep& rep, const CMat2& P) {
    MonodromyRep out = rep;
    CMat2 Pi = P.inverse();
    for (auto& m : out.M) m = Pi * m * P;
    return out;
}

} // namespace gml
