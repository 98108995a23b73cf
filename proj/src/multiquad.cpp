#include "gml/multiquad.hpp"

namespace gml {

namespace {

int radical_count(const std::shared_ptr<const RadicalSystem>& sys) {
    return sys ? int(sys->radicands.size()) : 0;
}

} // namespace

MultiQuad& MultiQuad::operator*=(const MultiQuad& o) {
    adopt(o);
    int k = radical_count(sys_);
    std::size_t n = std::size_t(1) << k;
    Coeffs out{};
    for (std::size_t s = 0; s < n; ++s) {
        if (c_[s].is_zero()) continue;
        for (std::size_t t = 0; t < n; ++t) {
            if (o.c_[t].is_zero()) continue;
            Rational f = c_[s] * o.c_[t];
            std::size_t both = s & t;
            for (int i = 0; i < k; ++i)
                if (both & (std::size_t(1) << i)) f *= sys_->radicands[std::size_t(i)];
            out[s ^ t] += f;
        }
    }
    c_ = out;
    return *this;
}

MultiQuad MultiQuad::conjugate(int i) const {
    MultiQuad r(*this);
    for (std::size_t m = 0; m < r.c_.size(); ++m)
        if (m & (std::size_t(1) << i)) r.c_[m] = -r.c_[m];
    return r;
}

MultiQuad MultiQuad::inverse() const {
    if (zero()) raise(Errc::DivisionByZero, "inverse of zero");
    MultiQuad y = *this;
    MultiQuad acc(sys_, Coeffs{});
    acc.c_[0] = 1;
    for (int i = 0; i < radical_count(sys_); ++i) {
        MultiQuad c = y.conjugate(i);
        acc *= c;
        y *= c;
    }
    if (!y.is_rational() || y.c_[0].is_zero()) raise(Errc::DivisionByZero, "non-invertible radical expression");
    Rational inv = 1 / y.c_[0];
    for (auto& x : acc.c_) x *= inv;
    return acc;
}

Complex MultiQuad::to_complex() const {
    int k = radical_count(sys_);
    std::array<Complex, kMax> roots{};
    for (int i = 0; i < k; ++i) roots[std::size_t(i)] = std::sqrt(Complex(sys_->radicands[std::size_t(i)].convert_to<double>(), 0.0));
    Complex sum = 0.0;
    for (std::size_t m = 0; m < (std::size_t(1) << k); ++m) {
        if (c_[m].is_zero()) continue;
        Complex term(c_[m].convert_to<double>(), 0.0);
        for (int i = 0; i < k; ++i)
            if (m & (std::size_t(1) << i)) term *= roots[std::size_t(i)];
        sum += term;
    }
    return sum;
}

} // namespace gml
