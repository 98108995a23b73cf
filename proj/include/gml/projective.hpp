#pragma once

#include <vector>

#include "gml/scalar.hpp"

namespace gml {

// Homogeneous coordinates; the dimension is size() - 1.
template <class F>
using ProjPoint = std::vector<F>;

template <class F>
ProjPoint<F> normalize_projective(const ProjPoint<F>& p) {
    double scale = 0.0;
    for (const auto& x : p) scale = std::max(scale, magnitude(x));
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (near_zero(p[i], scale)) continue;
        ProjPoint<F> out(p.size());
        F inv = from_int<F>(1) / p[i];
        for (std::size_t j = 0; j < p.size(); ++j) out[j] = (j == i) ? from_int<F>(1) : p[j] * inv;
        if constexpr (!is_exact_v<F>)
            for (std::size_t j = 0; j < i; ++j) out[j] = from_int<F>(0);
        return out;
    }
    raise(Errc::AllZero, "all homogeneous coordinates vanish");
}

// Equality up to a common nonzero factor (all 2x2 minors vanish).
template <class F>
bool proj_equal(const ProjPoint<F>& a, const ProjPoint<F>& b, double tol = 1e-9) {
    if (a.size() != b.size()) return false;
    double sa = 0.0, sb = 0.0;
    for (const auto& x : a) sa = std::max(sa, magnitude(x));
    for (const auto& x : b) sb = std::max(sb, magnitude(x));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            F m = a[i] * b[j] - a[j] * b[i];
            if (!near_zero(m, sa * sb, tol)) return false;
        }
    return true;
}

template <class F>
ProjPoint<Complex> to_complex_point(const ProjPoint<F>& p) {
    ProjPoint<Complex> out;
    for (const auto& x : p) out.push_back(to_complex(x));
    return out;
}

} // namespace gml
