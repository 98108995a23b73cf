#pragma once

#include <array>
#include <memory>
#include <vector>

#include "gml/scalar.hpp"

namespace gml {

// Formal radicals sqrt(d_0), ..., sqrt(d_{k-1}) with k <= 5, with chosen signs.
struct RadicalSystem {
    std::vector<Rational> radicands;
    std::vector<int> signs;
};

// Element of Q[e_0..e_4]/(e_i^2 - d_i): one rational per subset of radicals.
// The sign choice of sqrt(d_i) is applied when the generator is built, so all
// arithmetic is sign-agnostic and identities proven here hold for every branch.
class MultiQuad {
public:
    static constexpr int kMax = 5;
    using Coeffs = std::array<Rational, 1 << kMax>;

    MultiQuad() = default;
    MultiQuad(long c) { c_[0] = c; }
    MultiQuad(const Rational& c) { c_[0] = c; }
    MultiQuad(std::shared_ptr<const RadicalSystem> sys, const Coeffs& c) : sys_(std::move(sys)), c_(c) {}

    // sqrt(d_i) times its sign choice
    static MultiQuad radical(const std::shared_ptr<const RadicalSystem>& sys, int i) {
        Coeffs c;
        c[std::size_t(1) << i] = Rational(sys->signs[std::size_t(i)]);
        return MultiQuad(sys, c);
    }

    const Coeffs& coeffs() const { return c_; }
    const std::shared_ptr<const RadicalSystem>& system() const { return sys_; }
    bool is_rational() const {
        for (std::size_t m = 1; m < c_.size(); ++m)
            if (!c_[m].is_zero()) return false;
        return true;
    }
    const Rational& rational_part() const { return c_[0]; }
    bool zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    MultiQuad operator-() const {
        MultiQuad r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }
    MultiQuad& operator+=(const MultiQuad& o) {
        adopt(o);
        for (std::size_t m = 0; m < c_.size(); ++m) c_[m] += o.c_[m];
        return *this;
    }
    MultiQuad& operator-=(const MultiQuad& o) {
        adopt(o);
        for (std::size_t m = 0; m < c_.size(); ++m) c_[m] -= o.c_[m];
        return *this;
    }
    MultiQuad& operator*=(const MultiQuad& o);
    MultiQuad& operator/=(const MultiQuad& o) { return *this *= o.inverse(); }

    friend MultiQuad operator+(MultiQuad a, const MultiQuad& b) { return a += b; }
    friend MultiQuad operator-(MultiQuad a, const MultiQuad& b) { return a -= b; }
    friend MultiQuad operator*(MultiQuad a, const MultiQuad& b) { return a *= b; }
    friend MultiQuad operator/(MultiQuad a, const MultiQuad& b) { return a /= b; }
    friend bool operator==(const MultiQuad& a, const MultiQuad& b) { return (a - b).zero(); }

    // Flip the sign of radical i.
    MultiQuad conjugate(int i) const;
    MultiQuad inverse() const;
    Complex to_complex() const;

private:
    void adopt(const MultiQuad& o) {
        if (!sys_) sys_ = o.sys_;
    }

    std::shared_ptr<const RadicalSystem> sys_;
    Coeffs c_{};
};

inline bool is_zero(const MultiQuad& x) { return x.zero(); }
inline double magnitude(const MultiQuad& x) { return std::abs(x.to_complex()); }
inline Complex to_complex(const MultiQuad& x) { return x.to_complex(); }

template <>
struct ScalarTraits<MultiQuad> {
    static constexpr bool exact = true;
    static MultiQuad from_rational(const Rational& q) { return MultiQuad(q); }
};

} // namespace gml
