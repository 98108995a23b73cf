#pragma once

#include <array>
#include <vector>

#include "gml/scalar.hpp"

namespace gml {

template <class F>
using Vec = std::vector<F>;

// Row-major dense matrix.
template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, from_int<F>(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<F> data) : r_(rows), c_(cols), a_(std::move(data)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = from_int<F>(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    F& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k)
                for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += a(i, k) * b(k, j);
        return m;
    }
    friend Vec<F> operator*(const Matrix& a, const Vec<F>& v) {
        Vec<F> out(a.r_, from_int<F>(0));
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) out[i] += a(i, k) * v[k];
        return out;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix m = a;
        for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= b.a_[i];
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) return false;
        for (std::size_t i = 0; i < a.a_.size(); ++i)
            if (!is_zero(F(a.a_[i] - b.a_[i]))) return false;
        return true;
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<F> a_;
};

namespace detail {

template <class F>
std::size_t choose_pivot(const Matrix<F>& m, std::size_t col, std::size_t from, double scale) {
    std::size_t best = m.rows();
    double bestmag = 0.0;
    for (std::size_t i = from; i < m.rows(); ++i) {
        if (near_zero(m(i, col), scale)) continue;
        if constexpr (is_exact_v<F>) {
            return i;
        } else {
            double mg = magnitude(m(i, col));
            if (mg > bestmag) {
                bestmag = mg;
                best = i;
            }
        }
    }
    return best;
}

template <class F>
double max_magnitude(const Matrix<F>& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s = std::max(s, magnitude(m(i, j)));
    return s;
}

} // namespace detail

// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m) {
    std::vector<std::size_t> pivots;
    double scale = detail::max_magnitude(m);
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = detail::choose_pivot(m, col, row, scale);
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        F inv = from_int<F>(1) / m(row, col);
        for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || is_zero(m(i, col))) continue;
            F f = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// Basis of the right null space.
template <class F>
std::vector<Vec<F>> nullspace(Matrix<F> m) {
    auto piv = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<Vec<F>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_piv[free]) continue;
        Vec<F> v(m.cols(), from_int<F>(0));
        v[free] = from_int<F>(1);
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
std::size_t rank(Matrix<F> m) {
    return rref(m).size();
}

template <class F>
F determinant(Matrix<F> m) {
    std::size_t n = m.rows();
    F det = from_int<F>(1);
    double scale = detail::max_magnitude(m);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = detail::choose_pivot(m, col, col, scale);
        if (p == n) return from_int<F>(0);
        if (p != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
            det = -det;
        }
        det = det * m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (is_zero(m(i, col))) continue;
            F f = m(i, col) / m(col, col);
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

// Solve A x = b for square nonsingular A.
template <class F>
Vec<F> solve(const Matrix<F>& a, const Vec<F>& b) {
    std::size_t n = a.rows();
    Matrix<F> aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv.back() >= n) raise(Errc::SingularJacobian, "singular linear system");
    Vec<F> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
    return x;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& a) {
    std::size_t n = a.rows();
    Matrix<F> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = from_int<F>(1);
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] >= n) raise(Errc::SingularJacobian, "singular matrix");
    Matrix<F> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

// 2x2 matrix stored as (a b; c d).
template <class F>
struct Mat2 {
    F a, b, c, d;

    static Mat2 identity() { return {from_int<F>(1), from_int<F>(0), from_int<F>(0), from_int<F>(1)}; }
    static Mat2 zero() { return {from_int<F>(0), from_int<F>(0), from_int<F>(0), from_int<F>(0)}; }

    F trace() const { return a + d; }
    F det() const { return a * d - b * c; }
    Mat2 inverse() const {
        F dt = det();
        if (is_zero(dt)) raise(Errc::SingularJacobian, "singular 2x2 matrix");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    friend Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator*(const F& s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
    std::array<F, 2> apply(const std::array<F, 2>& v) const { return {a * v[0] + b * v[1], c * v[0] + d * v[1]}; }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return is_zero(F(x.a - y.a)) && is_zero(F(x.b - y.b)) && is_zero(F(x.c - y.c)) && is_zero(F(x.d - y.d));
    }

    template <class G>
    Mat2<G> map(G (*f)(const F&)) const {
        return {f(a), f(b), f(c), f(d)};
    }
};

template <class F>
double max_abs_diff(const Mat2<F>& x, const Mat2<F>& y) {
    return std::max({magnitude(x.a - y.a), magnitude(x.b - y.b), magnitude(x.c - y.c), magnitude(x.d - y.d)});
}

} // namespace gml
