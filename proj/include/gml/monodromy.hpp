#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gml/connect.hpp"

namespace gml {

using CMat2 = Mat2<Complex>;

// A straight segment a -> b, or an arc of the circle |x - a| = radius swept
// from angle th0 to th1 (counterclockwise when th1 > th0).
struct PathPiece {
    enum Kind { Segment, Arc } kind = Segment;
    Complex a, b;
    double radius = 0.0, th0 = 0.0, th1 = 0.0;

    static PathPiece segment(Complex from, Complex to) { return {Segment, from, to, 0.0, 0.0, 0.0}; }
    static PathPiece arc(Complex center, double r, double from, double to) { return {Arc, center, {}, r, from, to}; }

    Complex point(double s) const;
    Complex velocity(double s) const;
    Complex start() const { return point(0.0); }
    Complex end() const { return point(1.0); }
    PathPiece reversed() const;
    double distance_to(Complex q) const;
};

struct Path {
    std::vector<PathPiece> pieces;

    static Path polyline(const std::vector<Complex>& vertices);
    Path reversed() const;
    Path then(const Path& next) const;
    double clearance(const std::vector<Complex>& poles) const;
};

struct LoopSpec {
    std::string target;
    Complex basepoint;
    Complex center;
    double radius = 0.0;
    double clearance = 0.0;
    Path path;
};

struct TransportOptions {
    double rel_tol = 1e-11;
    double abs_tol = 1e-13;
    double min_step = 1e-13;
    double det_tol = 1e-7;
    std::size_t max_steps = 2000000;
};

struct TransportResult {
    CMat2 matrix;
    Complex log_det;  // -integral of tr A dx along the path
    double det_drift = 0.0;
    std::size_t steps = 0;
};

// Transfer matrix of dY/dx = -A(x) Y from the start of the path to its end.
// Concatenation is anti-multiplicative: T(p then q) = T(q) T(p).
TransportResult transport_detailed(const FuchsianSystemT<Complex>& sys, const Path& path,
                                   const TransportOptions& opt = {}, double clearance = 0.0);
CMat2 transport(const FuchsianSystemT<Complex>& sys, const Path& path, const TransportOptions& opt = {},
                double clearance = 0.0);

inline constexpr std::array<const char*, 6> kRepLabels{"0", "1", "r", "s", "t", "inf"};

// Basepoint -iH below the finite poles; loops around 0, 1, r, s, t
// counterclockwise in that order, then a clockwise circle enclosing all of them.
std::vector<LoopSpec> default_loops(const FuchsianSystemT<Complex>& sys);

struct MonodromyRep {
    std::array<CMat2, 6> M;
    Complex basepoint;

    CMat2 product() const;
    double product_residual() const;
};

// loops run under OpenMP; full_rep_serial is the single-threaded reference
MonodromyRep full_rep(const FuchsianSystemT<Complex>& sys, const std::vector<LoopSpec>& loops,
                      const TransportOptions& opt = {});
MonodromyRep full_rep_serial(const FuchsianSystemT<Complex>& sys, const std::vector<LoopSpec>& loops,
                             const TransportOptions& opt = {});
MonodromyRep full_rep(const FuchsianSystemT<Complex>& sys, const TransportOptions& opt = {});

template <class F>
FuchsianSystemT<Complex> to_complex(const FuchsianSystemT<F>& sys) {
    return sys.template cast<Complex>();
}

struct Genus2Rep {
    CMat2 A1, B1, A2, B2;

    CMat2 relation() const;  // [A1,B1][A2,B2]
    double relation_residual() const;
    double det_residual() const;
};

CMat2 commutator(const CMat2& a, const CMat2& b);

Genus2Rep genus2_lift(const MonodromyRep& rep, double tol = 1e-8);

struct InvolutionFit {
    CMat2 M;
    double residual = 0.0;
};

// M with M^-1 A1 M = A1^-1, M^-1 B1 M = B1^-1, M^-1 A2 M = C A2^-1 C^-1,
// M^-1 B2 M = C B2^-1 C^-1 where C = B1^-1 A1^-1 B2 A2; normalized to M^2 = I.
double involution_residual(const Genus2Rep& g, const CMat2& M);
InvolutionFit involution_matrix(const Genus2Rep& g);

MonodromyRep descend_rep(const Genus2Rep& g, const CMat2& M, double tol = 1e-8);

using SignCharacter = std::array<int, 6>;

struct SignRow {
    std::string name;
    SignCharacter m_signs;
    std::array<int, 4> printed_lift_signs;
};

// generators of the 32-element group of even sign changes, as tabulated
const std::array<SignRow, 5>& sign_table();
void validate_character(const SignCharacter& s);
std::array<int, 4> lift_signs(const SignCharacter& s);
SignCharacter compose(const SignCharacter& a, const SignCharacter& b);
MonodromyRep sign_twist(const MonodromyRep& rep, const SignCharacter& s);
Genus2Rep sign_twist(const Genus2Rep& g, const std::array<int, 4>& s);

// traces of M_i M_j (i < j, finite poles), then A1, B1, A2, B2, A1 B1, A2 B2
std::vector<Complex> trace_coordinates(const MonodromyRep& rep);
double max_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);
double max_distance(const MonodromyRep& a, const MonodromyRep& b);
double max_distance(const Genus2Rep& a, const Genus2Rep& b);

// a vector fixed projectively by every M_i, if one exists
std::optional<std::array<Complex, 2>> common_eigenvector(const MonodromyRep& rep, double tol = 1e-7);

MonodromyRep conjugate(const MonodromyRep& rep, const CMat2& P);

} // namespace gml
