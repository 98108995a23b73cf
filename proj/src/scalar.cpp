#include "gml/scalar.hpp"

#include <cctype>
#include <sstream>

namespace gml {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::AllZero: return "AllZero";
    case Errc::DegenerateDomain: return "DegenerateDomain";
    case Errc::Degenerate: return "Degenerate";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::NotOnCurve: return "NotOnCurve";
    case Errc::PoleOnAntidiagonal: return "PoleOnAntidiagonal";
    case Errc::Antidiagonal: return "Antidiagonal";
    case Errc::DegenerateNodes: return "DegenerateNodes";
    case Errc::Indeterminate: return "Indeterminate";
    case Errc::OnKummer: return "OnKummer";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::OnWeddle: return "OnWeddle";
    case Errc::LambdaDegenerate: return "LambdaDegenerate";
    case Errc::DiscriminantZero: return "DiscriminantZero";
    case Errc::NotQuadratic: return "NotQuadratic";
    case Errc::SingularJacobian: return "SingularJacobian";
    case Errc::AffineChartViolation: return "AffineChartViolation";
    case Errc::NotEigendirection: return "NotEigendirection";
    case Errc::IncompatibleDegree: return "IncompatibleDegree";
    case Errc::OddDivisor: return "OddDivisor";
    case Errc::IdenticallyZero: return "IdenticallyZero";
    case Errc::DegenerateConfiguration: return "DegenerateConfiguration";
    case Errc::PoleTooClose: return "PoleTooClose";
    case Errc::StepUnderflow: return "StepUnderflow";
    case Errc::RelationViolated: return "RelationViolated";
    case Errc::NotInvolutionCompatible: return "NotInvolutionCompatible";
    case Errc::InvalidCharacter: return "InvalidCharacter";
    case Errc::CriticalLocus: return "CriticalLocus";
    case Errc::LeadingCoefficientZero: return "LeadingCoefficientZero";
    case Errc::DenominatorZero: return "DenominatorZero";
    case Errc::SingularityHit: return "SingularityHit";
    case Errc::InvalidLabel: return "InvalidLabel";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

std::string rational_to_string(const Rational& q) {
    return q.str();
}

namespace {

bool all_digits(const std::string& s, std::size_t from) {
    if (from >= s.size()) return false;
    for (std::size_t i = from; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Integer parse_integer(const std::string& s) {
    std::size_t from = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (!all_digits(s, from)) raise(Errc::ParseError, "not an integer: '" + s + "'");
    Integer v(s[0] == '+' ? s.substr(1) : s);
    return v;
}

} // namespace

// Accepts "p", "p/q" and finite decimals such as "-1.25".
Rational rational_from_string(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) raise(Errc::ParseError, "empty rational");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Integer p = parse_integer(s.substr(0, slash));
        Integer q = parse_integer(s.substr(slash + 1));
        if (q == 0) raise(Errc::DivisionByZero, "zero denominator in '" + raw + "'");
        return Rational(p, q);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        bool neg = s[0] == '-';
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        std::string digits = (ip == "-" || ip == "+" || ip.empty()) ? std::string("0") : ip;
        if (!fp.empty() && !all_digits(fp, 0)) raise(Errc::ParseError, "bad decimal '" + raw + "'");
        Integer whole = parse_integer(digits);
        Integer frac = fp.empty() ? Integer(0) : Integer(fp);
        Integer den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        Rational mag = Rational(abs(whole)) + Rational(frac, den);
        return neg ? Rational(-mag) : mag;
    }
    return Rational(parse_integer(s));
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) raise(Errc::ParseError, "non-finite value");
    return Rational(x);
}

std::string Scalar::to_string() const {
    if (is_exact()) return rational_to_string(rational());
    std::ostringstream os;
    os.precision(17);
    Complex z = complex();
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

} // namespace gml
