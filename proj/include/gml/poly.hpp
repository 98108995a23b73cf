#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gml/scalar.hpp"

namespace gml {

// Dense univariate polynomial, coefficients from degree 0 upward.
template <class F>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<F> c) : c_(std::move(c)) { trim(); }
    Poly(const F& c) : c_{c} { trim(); }

    static Poly x() { return Poly(std::vector<F>{from_int<F>(0), from_int<F>(1)}); }
    // (x - a)
    static Poly linear_root(const F& a) { return Poly(std::vector<F>{-a, from_int<F>(1)}); }

    int degree() const { return c_.empty() ? -1 : int(c_.size()) - 1; }
    bool zero() const { return c_.empty(); }
    const std::vector<F>& coeffs() const { return c_; }
    F coeff(int k) const { return (k >= 0 && k < int(c_.size())) ? c_[std::size_t(k)] : from_int<F>(0); }
    F leading() const { return c_.empty() ? from_int<F>(0) : c_.back(); }

    template <class G>
    G operator()(const G& x) const {
        G acc = from_int<G>(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + lift<G>(*it);
        return acc;
    }

    Poly derivative() const {
        std::vector<F> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * from_int<F>(long(k)));
        return Poly(std::move(d));
    }

    Poly operator-() const {
        Poly r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), from_int<F>(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) { return *this += -o; }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.zero() || b.zero()) return Poly();
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, from_int<F>(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend bool operator==(const Poly& a, const Poly& b) { return (a - b).zero(); }

    // Euclidean division; exact for field coefficients.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.zero()) raise(Errc::DivisionByZero, "polynomial division by zero");
        std::vector<F> rem = c_;
        int dn = d.degree();
        int n = degree();
        if (n < dn) return {Poly(), *this};
        std::vector<F> q(std::size_t(n - dn + 1), from_int<F>(0));
        F lead = d.leading();
        for (int k = n; k >= dn; --k) {
            F f = rem[std::size_t(k)] / lead;
            q[std::size_t(k - dn)] = f;
            for (int j = 0; j <= dn; ++j) rem[std::size_t(k - dn + j)] -= f * d.c_[std::size_t(j)];
            rem[std::size_t(k)] = from_int<F>(0);
        }
        rem.resize(std::size_t(dn));
        return {Poly(std::move(q)), Poly(std::move(rem))};
    }

    // Quotient by (x - a) together with the value at a.
    std::pair<Poly, F> deflate(const F& a) const {
        if (c_.empty()) return {Poly(), from_int<F>(0)};
        std::vector<F> q(c_.size() - 1, from_int<F>(0));
        F acc = from_int<F>(0);
        for (std::size_t k = c_.size(); k-- > 0;) {
            acc = acc * a + c_[k];
            if (k > 0) q[k - 1] = acc;
        }
        return {Poly(std::move(q)), acc};
    }

    // Order of vanishing at a (exact zero tests); -1 for the zero polynomial.
    int order_at(const F& a) const {
        if (zero()) return -1;
        int ord = 0;
        Poly p = *this;
        while (true) {
            auto [q, v] = p.deflate(a);
            if (!is_zero(v)) return ord;
            ++ord;
            p = q;
        }
    }

    // Coefficients of p(1/u) * u^n for n >= degree.
    Poly reversed(int n) const {
        std::vector<F> r(std::size_t(n + 1), from_int<F>(0));
        for (std::size_t k = 0; k < c_.size(); ++k) r[std::size_t(n) - k] = c_[k];
        return Poly(std::move(r));
    }

    template <class G>
    Poly<G> cast() const {
        std::vector<G> r;
        for (const auto& x : c_) r.push_back(lift<G>(x));
        return Poly<G>(std::move(r));
    }

private:
    template <class G>
    static G lift(const F& v) {
        if constexpr (std::is_same_v<G, F>) {
            return v;
        } else if constexpr (std::is_same_v<F, Rational>) {
            return from_rational<G>(v);
        } else {
            return G(v);
        }
    }

    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }

    std::vector<F> c_;
};

// Quotient of polynomials; not reduced to lowest terms.
template <class F>
class RatFunc {
public:
    RatFunc() : num_(), den_(from_int<F>(1)) {}
    RatFunc(const Poly<F>& n) : num_(n), den_(from_int<F>(1)) {}
    RatFunc(const F& c) : num_(c), den_(from_int<F>(1)) {}
    RatFunc(const Poly<F>& n, const Poly<F>& d) : num_(n), den_(d) {
        if (den_.zero()) raise(Errc::DivisionByZero, "rational function with zero denominator");
    }

    static RatFunc simple_pole(const F& a) { return RatFunc(Poly<F>(from_int<F>(1)), Poly<F>::linear_root(a)); }

    const Poly<F>& num() const { return num_; }
    const Poly<F>& den() const { return den_; }
    bool zero() const { return num_.zero(); }

    template <class G>
    G operator()(const G& x) const {
        G d = den_(x);
        if (is_zero(d)) raise(Errc::DivisionByZero, "rational function evaluated at a pole");
        return num_(x) / d;
    }

    RatFunc operator-() const { return RatFunc(-num_, den_); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.zero()) raise(Errc::DivisionByZero, "division by zero rational function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    RatFunc derivative() const {
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    // Order at x = a (negative for poles).
    int order_at(const F& a) const {
        if (zero()) return 1 << 20;
        return num_.order_at(a) - den_.order_at(a);
    }

    // Coefficient of (x - a)^k in the Laurent expansion, for k >= order_at(a).
    F laurent_coeff(const F& a, int k) const {
        // strip common (x-a) factors, then expand by repeated differentiation-free deflation
        Poly<F> n = num_, d = den_;
        int on = 0, od = 0;
        while (!n.zero()) {
            auto [q, v] = n.deflate(a);
            if (!is_zero(v)) break;
            n = q;
            ++on;
        }
        while (true) {
            auto [q, v] = d.deflate(a);
            if (!is_zero(v)) break;
            d = q;
            ++od;
        }
        int ord = on - od;
        if (n.zero() || k < ord) return from_int<F>(0);
        // Taylor coefficients of n/d at a up to index k - ord
        int m = k - ord;
        std::vector<F> nt = taylor(n, a, m), dt = taylor(d, a, m);
        std::vector<F> qt(std::size_t(m + 1), from_int<F>(0));
        for (int i = 0; i <= m; ++i) {
            F acc = nt[std::size_t(i)];
            for (int j = 1; j <= i; ++j) acc -= dt[std::size_t(j)] * qt[std::size_t(i - j)];
            qt[std::size_t(i)] = acc / dt[0];
        }
        return qt[std::size_t(m)];
    }

    F residue(const F& a) const { return laurent_coeff(a, -1); }

    // Substitute x = 1/u: returns g(u) = f(1/u).
    RatFunc at_inverse() const {
        int n = std::max(num_.degree(), den_.degree());
        if (n < 0) n = 0;
        return RatFunc(num_.reversed(n), den_.reversed(n));
    }

    // Exact polynomial if the denominator divides the numerator.
    bool as_polynomial(Poly<F>& out) const {
        auto [q, r] = num_.divmod(den_);
        if (!r.zero()) return false;
        out = q;
        return true;
    }

    template <class G>
    RatFunc<G> cast() const {
        return RatFunc<G>(num_.template cast<G>(), den_.template cast<G>());
    }

private:
    static std::vector<F> taylor(const Poly<F>& p, const F& a, int m) {
        std::vector<F> out;
        Poly<F> cur = p;
        for (int i = 0; i <= m; ++i) {
            auto [q, v] = cur.deflate(a);
            out.push_back(v);
            cur = q;
        }
        return out;
    }

    Poly<F> num_;
    Poly<F> den_;
};

} // namespace gml
