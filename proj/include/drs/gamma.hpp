#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "scaled.hpp"

namespace drs::special {

/// True when z lies within tol of 0, -1, -2, ...
inline bool is_nonpositive_integer(cplx z, double tol = 1e-13) {
    if (std::abs(z.imag()) > tol) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) <= tol;
}

namespace detail {

// Stirling series valid for Re z >= 15.
inline cplx log_gamma_stirling(cplx z) {
    // B_{2k} / (2k (2k-1)), k = 1..8
    static constexpr double coef[] = {
        1.0 / 12.0,          -1.0 / 360.0,       1.0 / 1260.0,
        -1.0 / 1680.0,       1.0 / 1188.0,       -691.0 / 360360.0,
        1.0 / 156.0,         -3617.0 / 122400.0,
    };
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series = 0.0;
    cplx p = inv;
    for (double c : coef) {
        series += c * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace detail

/// A branch of log Gamma(z); only exp() of the result is meaningful.
/// z must not be a nonpositive integer.
inline cplx log_gamma(cplx z) {
    constexpr double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
    }
    cplx shift = 0.0;
    cplx w = z;
    while (w.real() < 15.0) {
        shift += std::log(w);
        w += 1.0;
    }
    return detail::log_gamma_stirling(w) - shift;
}

inline cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

/// 1/Gamma(z); entire, exactly zero at the poles of Gamma.
inline cplx rgamma(cplx z) {
    if (is_nonpositive_integer(z, 0.0)) return {0.0, 0.0};
    return std::exp(-log_gamma(z));
}

/// Pochhammer symbol (a)_n.
inline cplx pochhammer(cplx a, int n) {
    cplx p = 1.0;
    for (int i = 0; i < n; ++i) p *= a + double(i);
    return p;
}

}  // namespace drs::special
