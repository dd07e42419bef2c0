#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>

#include "errors.hpp"
#include "gamma.hpp"
#include "scaled.hpp"

namespace drs::special {

/// A point z <= 0 on the negative real axis, together with the derived
/// quantities w = z/(z-1), 1-w = 1/(1-z) and log(1-z).  Keeping them separate
/// lets callers supply z = -sinh^2(t) for t far beyond the range where
/// sinh^2(t) itself is representable.
struct NegativeAxisPoint {
    double z = 0.0;
    double w = 0.0;
    double one_minus_w = 1.0;
    double log_one_minus_z = 0.0;

    static NegativeAxisPoint from_z(double z) {
        if (!(z <= 0.0)) throw InvalidArgument("hypergeometric argument must satisfy z <= 0");
        NegativeAxisPoint p;
        p.z = z;
        p.w = -z / (1.0 - z);
        p.one_minus_w = 1.0 / (1.0 - z);
        p.log_one_minus_z = std::log1p(-z);
        return p;
    }

    /// z = -sinh^2(t), t >= 0.
    static NegativeAxisPoint from_sinh_squared(double t) {
        if (!(t >= 0.0)) throw InvalidArgument("radius must be nonnegative");
        NegativeAxisPoint p;
        const double sh = std::sinh(t);
        p.z = -sh * sh;
        p.log_one_minus_z = 2.0 * log_cosh(t);
        if (t < 1.0) {
            const double ch = std::cosh(t);
            p.w = (sh / ch) * (sh / ch);
            p.one_minus_w = 1.0 / (ch * ch);
        } else {
            const double q = std::exp(-2.0 * t);
            const double th = (1.0 - q) / (1.0 + q);
            p.w = th * th;
            p.one_minus_w = 4.0 * q / ((1.0 + q) * (1.0 + q));
        }
        return p;
    }
};

namespace detail {

inline constexpr int kMaxSeriesTerms = 20000;

// Sum of the Maclaurin series of 2F1 starting at index `first` (0 or 1).
inline cplx series_from(cplx a, cplx b, cplx c, double x, int first) {
    cplx term = 1.0;
    cplx sum = first == 0 ? cplx(1.0) : cplx(0.0);
    int small_run = 0;
    double prev = 1.0;
    for (int n = 0; n < kMaxSeriesTerms; ++n) {
        term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) * x;
        sum += term;
        const double mag = std::abs(term);
        if (mag == 0.0) return sum;
        if (mag <= 1e-17 * std::abs(sum) && mag <= prev) {
            if (++small_run >= 3) return sum;
        } else {
            small_run = 0;
        }
        prev = mag;
    }
    throw SeriesNonConvergence("2F1 Maclaurin series did not converge at x = " + std::to_string(x));
}

inline Scaled gamma_ratio(std::initializer_list<cplx> num, std::initializer_list<cplx> den) {
    cplx log_value = 0.0;
    for (cplx d : den) {
        if (is_nonpositive_integer(d, 0.0)) return {};
        log_value -= log_gamma(d);
    }
    for (cplx n : num) log_value += log_gamma(n);
    return Scaled::exp_of(log_value);
}

// 2F1(a, b; c; w) via the connection formula around w = 1, with x = 1 - w
// and lx = log x.  Requires c - a - b to stay away from the integers.
inline Scaled connection_direct(cplx a, cplx b, cplx c, double x, double lx) {
    const cplx s = c - a - b;
    Scaled first = gamma_ratio({c, s}, {c - a, c - b});
    if (!first.is_zero()) first = first * series_from(a, b, 1.0 - s, x, 0);
    Scaled second = gamma_ratio({c, -s}, {a, b});
    if (!second.is_zero()) {
        second = second * Scaled::exp_of(s * lx);
        second = second * series_from(c - a, c - b, 1.0 + s, x, 0);
    }
    return first + second;
}

// Connection formula with the logarithmic cases (c - a - b near an integer)
// handled by averaging over a circle in b: 2F1 is entire in b, so the mean
// over the circle reproduces the centre value while the individual
// evaluations stay clear of the Gamma poles.
inline Scaled connection(cplx a, cplx b, cplx c, double x, double lx) {
    const cplx s = c - a - b;
    const cplx nearest(std::round(s.real()), 0.0);
    const double dist = std::abs(s - nearest);
    const double radius = std::min(0.4, 2.0 / std::abs(lx));
    if (dist >= 0.5 * radius) return connection_direct(a, b, c, x, lx);

    constexpr int kPoints = 32;
    Scaled acc;
    for (int k = 0; k < kPoints; ++k) {
        const double angle = 2.0 * std::numbers::pi * (k + 0.5) / kPoints;
        acc = acc + connection_direct(a, b + std::polar(radius, angle), c, x, lx);
    }
    return acc * cplx(1.0 / kPoints, 0.0);
}

}  // namespace detail

/// Maclaurin series of 2F1(a,b;c;x); |x| must be comfortably below 1.
inline cplx hyp2f1_series(cplx a, cplx b, cplx c, double x) {
    return detail::series_from(a, b, c, x, 0);
}

/// 2F1(a,b;c;x) - 1 summed without forming the leading 1.
inline cplx hyp2f1_series_tail(cplx a, cplx b, cplx c, double x) {
    return detail::series_from(a, b, c, x, 1);
}

/// Gauss hypergeometric function on the negative real axis, in scaled form.
///
/// |z| <= 1/2 uses the Maclaurin series; otherwise the Pfaff transformation
/// maps z to w = z/(z-1) in [1/3, 1), summed directly for w <= 0.7 and via
/// the connection formula around w = 1 beyond that.
inline Scaled hyp2f1_scaled(cplx a, cplx b, cplx c, const NegativeAxisPoint& p) {
    if (is_nonpositive_integer(c)) {
        throw DegenerateParam("2F1 third parameter is a nonpositive integer");
    }
    if (p.z == 0.0) return Scaled{1.0};
    // The function is symmetric in (a, b); fix an order so that swapping them
    // gives bit-identical results.
    auto key = [](cplx v) { return std::pair(v.real(), v.imag()); };
    if (key(b) < key(a)) std::swap(a, b);

    if (std::abs(p.z) <= 0.5) return Scaled{hyp2f1_series(a, b, c, p.z)};

    const Scaled prefactor = Scaled::exp_of(-a * p.log_one_minus_z);
    const cplx b_pfaff = c - b;
    if (p.w <= 0.7) return prefactor * hyp2f1_series(a, b_pfaff, c, p.w);
    return prefactor * detail::connection(a, b_pfaff, c, p.one_minus_w, -p.log_one_minus_z);
}

inline Scaled hyp2f1_scaled(cplx a, cplx b, cplx c, double z) {
    return hyp2f1_scaled(a, b, c, NegativeAxisPoint::from_z(z));
}

/// Linear-scale 2F1(a,b;c;z) for z <= 0.
inline cplx hyp2f1(cplx a, cplx b, cplx c, double z) {
    return hyp2f1_scaled(a, b, c, z).value();
}

}  // namespace drs::special
