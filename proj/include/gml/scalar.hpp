#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <complex>
#include <string>
#include <type_traits>
#include <variant>

#include "gml/error.hpp"

namespace gml {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Complex = std::complex<double>;

// n/d; the two-argument gmp_rational constructor mishandles negative denominators.
inline Rational rat(long n, long d) {
    return Rational(Integer(n), Integer(d));
}

// Per-type hooks used by the generic formula code.  Every scalar type F used
// with the templates must provide is_zero, from_rational<F> and to_complex.

inline bool is_zero(const Rational& q) { return q.is_zero(); }
inline bool is_zero(const Complex& z) { return z.real() == 0.0 && z.imag() == 0.0; }

inline Complex to_complex(const Rational& q) { return Complex(q.convert_to<double>(), 0.0); }
inline Complex to_complex(const Complex& z) { return z; }

template <class F>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational from_rational(const Rational& q) { return q; }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static Complex from_rational(const Rational& q) { return to_complex(q); }
};

template <class F>
F from_rational(const Rational& q) {
    return ScalarTraits<F>::from_rational(q);
}

template <class F>
F from_int(long v) {
    return from_rational<F>(Rational(v));
}

// Coefficient embedding F -> G (identity, Q -> G, or a converting constructor).
template <class G, class F>
G lift_to(const F& v) {
    if constexpr (std::is_same_v<G, F>) {
        return v;
    } else if constexpr (std::is_same_v<F, Rational>) {
        return ScalarTraits<G>::from_rational(v);
    } else {
        return G(v);
    }
}

template <class F>
constexpr bool is_exact_v = ScalarTraits<F>::exact;

// Magnitude used for pivoting and float-mode zero tests.
inline double magnitude(const Rational& q) { return std::abs(q.convert_to<double>()); }
inline double magnitude(const Complex& z) { return std::abs(z); }

// Zero test that is exact for exact types and relative for floating types.
template <class F>
bool near_zero(const F& x, double scale = 1.0, double tol = 1e-12) {
    if constexpr (is_exact_v<F>) {
        (void)scale;
        (void)tol;
        return is_zero(x);
    } else {
        return magnitude(x) <= tol * (scale > 1.0 ? scale : 1.0);
    }
}

template <class F>
F checked_div(const F& a, const F& b) {
    if (is_zero(b)) raise(Errc::DivisionByZero, "division by zero");
    return a / b;
}

std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);
Rational rational_from_double(double x);

// Tagged scalar for I/O: an exact rational or a complex double.
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(const Rational& q) : v_(q) {}
    Scalar(const Complex& z) : v_(z) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            raise(Errc::DivisionByZero, "non-finite complex scalar");
    }
    Scalar(long v) : v_(Rational(v)) {}

    bool is_exact() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rational() const { return std::get<Rational>(v_); }
    Complex complex() const {
        if (is_exact()) return to_complex(rational());
        return std::get<Complex>(v_);
    }
    template <class F>
    F as() const {
        if constexpr (std::is_same_v<F, Rational>) {
            if (!is_exact()) raise(Errc::ParseError, "exact value required");
            return rational();
        } else {
            return complex();
        }
    }
    std::string to_string() const;

private:
    std::variant<Rational, Complex> v_;
};

} // namespace gml
