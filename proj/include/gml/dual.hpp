#pragma once

#include <vector>

#include "gml/scalar.hpp"

namespace gml {

// Forward-mode dual number with a dense gradient; an empty gradient is a constant.
template <class F>
class Dual {
public:
    Dual() : v_(from_int<F>(0)) {}
    Dual(long c) : v_(from_int<F>(c)) {}
    Dual(const F& v) : v_(v) {}
    Dual(const F& v, std::vector<F> g) : v_(v), g_(std::move(g)) {}

    static Dual variable(const F& v, std::size_t index, std::size_t n) {
        std::vector<F> g(n, from_int<F>(0));
        g[index] = from_int<F>(1);
        return Dual(v, std::move(g));
    }

    const F& value() const { return v_; }
    F d(std::size_t i) const { return i < g_.size() ? g_[i] : from_int<F>(0); }
    std::size_t size() const { return g_.size(); }

    Dual operator-() const {
        Dual r(-v_);
        r.g_.reserve(g_.size());
        for (const auto& x : g_) r.g_.push_back(-x);
        return r;
    }
    Dual& operator+=(const Dual& o) {
        v_ += o.v_;
        combine(o, from_int<F>(1));
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        v_ -= o.v_;
        combine(o, from_int<F>(-1));
        return *this;
    }
    Dual& operator*=(const Dual& o) {
        std::size_t n = std::max(g_.size(), o.g_.size());
        std::vector<F> g(n, from_int<F>(0));
        for (std::size_t i = 0; i < n; ++i) g[i] = d(i) * o.v_ + v_ * o.d(i);
        v_ *= o.v_;
        g_ = std::move(g);
        return *this;
    }
    Dual& operator/=(const Dual& o) {
        if (is_zero(o.v_)) raise(Errc::DivisionByZero, "division by zero");
        F inv = from_int<F>(1) / o.v_;
        F q = v_ * inv;
        std::size_t n = std::max(g_.size(), o.g_.size());
        std::vector<F> g(n, from_int<F>(0));
        for (std::size_t i = 0; i < n; ++i) g[i] = (d(i) - q * o.d(i)) * inv;
        v_ = q;
        g_ = std::move(g);
        return *this;
    }
    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend Dual operator/(Dual a, const Dual& b) { return a /= b; }

private:
    void combine(const Dual& o, const F& sign) {
        if (o.g_.size() > g_.size()) g_.resize(o.g_.size(), from_int<F>(0));
        for (std::size_t i = 0; i < o.g_.size(); ++i) g_[i] += sign * o.g_[i];
    }

    F v_;
    std::vector<F> g_;
};

template <class F>
bool is_zero(const Dual<F>& x) {
    return is_zero(x.value());
}

template <class F>
struct ScalarTraits<Dual<F>> {
    static constexpr bool exact = ScalarTraits<F>::exact;
    static Dual<F> from_rational(const Rational& q) { return Dual<F>(gml::from_rational<F>(q)); }
};

template <class F>
double magnitude(const Dual<F>& x) {
    return magnitude(x.value());
}

} // namespace gml
