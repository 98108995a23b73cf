#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "gml/multiquad.hpp"
#include "gml/scalar.hpp"

namespace gml {

// Random rationals with numerator and denominator drawn from [-bound, bound].
class RationalSampler {
public:
    explicit RationalSampler(std::uint64_t seed = 42, long bound = 10000) : rng_(seed), dist_(-bound, bound) {}

    Rational next() {
        long n = dist_(rng_);
        long d = 0;
        while (d == 0) d = dist_(rng_);
        return rat(n, d);
    }
    std::vector<Rational> next(std::size_t count) {
        std::vector<Rational> v;
        v.reserve(count);
        for (std::size_t i = 0; i < count; ++i) v.push_back(next());
        return v;
    }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::uniform_int_distribution<long> dist_;
};

inline constexpr int kRetryBudget = 100;

// Draw a point at which `eval` succeeds, resampling when it hits a pole.
template <class Fn>
auto sample_valid(RationalSampler& s, std::size_t nvars, Fn&& eval) {
    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        auto pt = s.next(nvars);
        try {
            return eval(pt);
        } catch (const Error& e) {
            if (e.code() != Errc::DivisionByZero && e.code() != Errc::DenominatorZero &&
                e.code() != Errc::Degenerate && e.code() != Errc::DegenerateDenominator &&
                e.code() != Errc::SingularJacobian && e.code() != Errc::Indeterminate)
                throw;
        }
    }
    raise(Errc::DegenerateDomain, "no sample point avoids the denominators");
}

// Evaluation-based identity test over random rational points.
template <class T>
bool identity_test(std::size_t nvars, const std::function<T(const std::vector<Rational>&)>& f,
                   const std::function<T(const std::vector<Rational>&)>& g, int trials, std::uint64_t seed = 42) {
    if (trials < 1) raise(Errc::InvalidParams, "trials must be positive");
    RationalSampler s(seed);
    for (int k = 0; k < trials; ++k) {
        bool same = sample_valid(s, nvars, [&](const std::vector<Rational>& pt) { return f(pt) == g(pt); });
        if (!same) return false;
    }
    return true;
}

// Roots of a T^2 + b T + c = 0.
template <class R>
struct QuadraticRoots {
    bool linear = false;  // a == 0: roots[0] is the finite root, the other is at infinity
    R roots[2];
};

QuadraticRoots<MultiQuad> solve_quadratic(const Rational& a, const Rational& b, const Rational& c);
QuadraticRoots<Complex> solve_quadratic(const Complex& a, const Complex& b, const Complex& c);

// Exact square root of a nonnegative rational, if it exists.
std::optional<Rational> rational_sqrt(const Rational& q);

} // namespace gml
