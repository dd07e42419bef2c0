#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace drs {

using cplx = std::complex<double>;

/// A complex number stored as mantissa * exp(log_scale).
///
/// Spherical functions and eigen-weighted volumes grow or decay like
/// exp((|Im lambda| +- rho) r); keeping the exponent apart lets ratios of
/// such quantities be formed without overflow.
struct Scaled {
    cplx mantissa{0.0, 0.0};
    double log_scale = 0.0;

    Scaled() = default;
    Scaled(cplx m, double l = 0.0) : mantissa(m), log_scale(l) {}

    /// exp(z) without evaluating the real exponential.
    static Scaled exp_of(cplx z) {
        return {std::polar(1.0, z.imag()), z.real()};
    }

    bool is_zero() const { return mantissa == cplx(0.0, 0.0); }

    /// log|value|; -inf for zero.
    double log_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log(std::abs(mantissa)) + log_scale;
    }

    /// Linear value; may overflow to inf or underflow to 0.
    cplx value() const {
        if (is_zero()) return {0.0, 0.0};
        return mantissa * std::exp(log_scale);
    }

    /// Mantissa rescaled so that |mantissa| is 1 (or zero).
    Scaled normalized() const {
        if (is_zero()) return {};
        double a = std::abs(mantissa);
        return {mantissa / a, log_scale + std::log(a)};
    }

    /// Value expressed relative to exp(reference).
    cplx relative_to(double reference) const {
        if (is_zero()) return {0.0, 0.0};
        return mantissa * std::exp(log_scale - reference);
    }
};

inline Scaled operator*(const Scaled& a, const Scaled& b) {
    return Scaled{a.mantissa * b.mantissa, a.log_scale + b.log_scale}.normalized();
}

inline Scaled operator*(const Scaled& a, cplx b) {
    return Scaled{a.mantissa * b, a.log_scale}.normalized();
}

inline Scaled operator/(const Scaled& a, const Scaled& b) {
    return Scaled{a.mantissa / b.mantissa, a.log_scale - b.log_scale}.normalized();
}

inline Scaled operator+(const Scaled& a, const Scaled& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    double ref = std::max(a.log_scale, b.log_scale);
    return Scaled{a.relative_to(ref) + b.relative_to(ref), ref}.normalized();
}

inline Scaled operator-(const Scaled& a) { return {-a.mantissa, a.log_scale}; }

inline Scaled operator-(const Scaled& a, const Scaled& b) { return a + (-b); }

/// a / b as an ordinary complex number; only the ratio needs to be representable.
inline cplx ratio(const Scaled& a, const Scaled& b) {
    if (a.is_zero()) return {0.0, 0.0};
    return (a.mantissa / b.mantissa) * std::exp(a.log_scale - b.log_scale);
}

/// log cosh(t) for t >= 0, stable for large t.
inline double log_cosh(double t) {
    t = std::abs(t);
    return t + std::log1p(std::exp(-2.0 * t)) - std::log(2.0);
}

/// log sinh(t) for t > 0, stable for large t.
inline double log_sinh(double t) {
    if (t < 1.0) return std::log(std::sinh(t));
    return t + std::log1p(-std::exp(-2.0 * t)) - std::log(2.0);
}

}  // namespace drs
