#pragma once

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "jacobi.hpp"
#include "quadrature.hpp"
#include "scaled.hpp"

namespace drs {

/// Structural constants of a Damek-Ricci space with dim v = m and dim z = k.
struct SpaceParams {
    int m;
    int k;
    int n;
    double Q;
    double rho;
    double alpha;
    double beta;
    double alpha_p;
    double beta_p;
    double c_n;

    SpaceParams(int m_, int k_);

    JacobiParams jacobi() const { return {alpha, beta}; }
    JacobiParams jacobi_prime() const { return {alpha_p, beta_p}; }

    /// Copy with a different density constant (used to exercise the calibration check).
    SpaceParams with_density_constant(double c) const {
        SpaceParams s = *this;
        s.c_n = c;
        return s;
    }

private:
    struct Uncalibrated {};
    SpaceParams(int m_, int k_, Uncalibrated);
};

/// log of 2^n pi^{n/2} / Gamma(n/2 + 1).
inline double log_ball_constant(const SpaceParams& s) {
    const double n = s.n;
    return n * std::log(2.0) + 0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n + 1.0);
}

/// V_r^lambda = K sinh^n(r/2) cosh^{k+1}(r/2) phi^{(alpha',beta')}_{2 lambda}(r/2).
inline Scaled v_ball_closed_scaled(const SpaceParams& s, cplx lambda, double r) {
    if (!(r > 0.0)) throw InvalidArgument("ball volume requires r > 0");
    const double h = 0.5 * r;
    Scaled phi = jacobi_phi_scaled(s.jacobi_prime(), 2.0 * canonical(lambda), h);
    phi.log_scale += log_ball_constant(s) + s.n * log_sinh(h) + (s.k + 1) * log_cosh(h);
    return phi;
}

/// log of sinh^{m+k}(r/2) cosh^k(r/2), without the constant.
inline double log_density_shape(const SpaceParams& s, double r) {
    const double h = 0.5 * r;
    return (s.m + s.k) * log_sinh(h) + s.k * log_cosh(h);
}

inline double log_density_J(const SpaceParams& s, double r) {
    if (r == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(s.c_n) + log_density_shape(s, r);
}

/// Radial density J(r) = c_n sinh^{m+k}(r/2) cosh^k(r/2).
inline double density_J(const SpaceParams& s, double r) {
    if (!(r >= 0.0)) throw InvalidArgument("density_J requires r >= 0");
    if (r == 0.0) return 0.0;
    return std::exp(log_density_J(s, r));
}

namespace detail {

inline constexpr double kCalibrationRadius = 1.0;
inline constexpr double kCheckRadii[2] = {2.0, 5.0};
inline constexpr double kCalibrationTol = 1e-10;

/// integral of the unnormalised density over [0, r], in units of exp(shift)
inline double shape_integral(const SpaceParams& s, double r, double shift) {
    quad::Tolerance tol;
    tol.rel = 1e-13;
    tol.abs = 0.0;
    auto f = [&](double x) { return x == 0.0 ? 0.0 : std::exp(log_density_shape(s, x) - shift); };
    return quad::integrate(f, 0.0, r, tol).value.real();
}

inline double plain_volume_log(const SpaceParams& s, double r) {
    return v_ball_closed_scaled(s, cplx(0.0, s.rho), r).log_abs();
}

}  // namespace detail

/// Finds c_n by matching the integral of J against the closed-form plain ball
/// volume at r = 1 and checks the identity at r = 2 and r = 5.
inline double calibrate_density(const SpaceParams& s) {
    using namespace detail;
    const double r0 = kCalibrationRadius;
    const double shift0 = log_density_shape(s, r0);
    const double c = std::exp(plain_volume_log(s, r0) - shift0) / shape_integral(s, r0, shift0);
    for (double r : kCheckRadii) {
        const double shift = log_density_shape(s, r);
        const double lhs = std::log(c * shape_integral(s, r, shift)) + shift;
        const double err = std::abs(std::expm1(lhs - plain_volume_log(s, r)));
        if (!(err < kCalibrationTol)) {
            throw CalibrationMismatch("density calibration disagrees with the closed-form volume");
        }
    }
    return c;
}

/// Checks a (possibly modified) density constant against the closed-form volume
/// at r = 1, 2, 5.  Returns the worst relative error; throws CalibrationMismatch
/// beyond 1e-10.
inline double verify_density(const SpaceParams& s) {
    double worst = 0.0;
    for (double r : {detail::kCalibrationRadius, detail::kCheckRadii[0], detail::kCheckRadii[1]}) {
        const double shift = log_density_shape(s, r);
        const double lhs = std::log(s.c_n * detail::shape_integral(s, r, shift)) + shift;
        worst = std::max(worst, std::abs(std::expm1(lhs - detail::plain_volume_log(s, r))));
    }
    if (!(worst < detail::kCalibrationTol)) {
        throw CalibrationMismatch("density constant fails the closed-form volume check");
    }
    return worst;
}

inline SpaceParams::SpaceParams(int m_, int k_, Uncalibrated)
    : m(m_), k(k_), n(m_ + k_ + 1), Q(0.5 * m_ + k_), rho(0.25 * m_ + 0.5 * k_),
      alpha(0.5 * (m_ + k_ - 1)), beta(0.5 * (k_ - 1)), alpha_p(0.5 * (m_ + k_ + 1)),
      beta_p(0.5 * (k_ + 1)), c_n(1.0) {
    if (m_ < 2 || m_ % 2 != 0) throw InvalidArgument("m must be an even integer >= 2");
    if (k_ < 1) throw InvalidArgument("k must be >= 1");
}

inline SpaceParams::SpaceParams(int m_, int k_) : SpaceParams(m_, k_, Uncalibrated{}) {
    c_n = calibrate_density(*this);
}

}  // namespace drs
