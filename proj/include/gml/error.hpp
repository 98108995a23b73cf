#pragma once

#include <stdexcept>
#include <string>

namespace gml {

enum class Errc {
    AllZero,
    DegenerateDomain,
    Degenerate,
    DivisionByZero,
    InvalidParams,
    NotOnCurve,
    PoleOnAntidiagonal,
    Antidiagonal,
    DegenerateNodes,
    Indeterminate,
    OnKummer,
    DegenerateDenominator,
    OnWeddle,
    LambdaDegenerate,
    DiscriminantZero,
    NotQuadratic,
    SingularJacobian,
    AffineChartViolation,
    NotEigendirection,
    IncompatibleDegree,
    OddDivisor,
    IdenticallyZero,
    DegenerateConfiguration,
    PoleTooClose,
    StepUnderflow,
    RelationViolated,
    NotInvolutionCompatible,
    InvalidCharacter,
    CriticalLocus,
    LeadingCoefficientZero,
    DenominatorZero,
    SingularityHit,
    InvalidLabel,
    ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace gml
