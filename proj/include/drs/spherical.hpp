#pragma once

#include <cmath>

#include "jacobi.hpp"
#include "scaled.hpp"
#include "space.hpp"

namespace drs {

/// Elementary spherical function phi_lambda(t) = phi^{(alpha,beta)}_{2 lambda}(t/2).
inline Scaled spherical_phi_scaled(const SpaceParams& s, cplx lambda, double t) {
    return jacobi_phi_scaled(s.jacobi(), 2.0 * canonical(lambda), 0.5 * t);
}

inline cplx spherical_phi(const SpaceParams& s, cplx lambda, double t) {
    return spherical_phi_scaled(s, lambda, t).value();
}

/// c-function of the space: phi_lambda(t) e^{(rho - i lambda) t} -> c(lambda) for Im lambda < 0.
inline cplx spherical_c(const SpaceParams& s, cplx lambda) {
    return c_function(s.jacobi(), 2.0 * lambda);
}

/// Amplitude/phase form in the radial variable:
///   sinh^{alpha+1/2}(t/2) cosh^{beta+1/2}(t/2) phi_lambda(t) ~ A cos(lambda t + theta).
inline OscillatoryForm spherical_oscillatory_form(const SpaceParams& s, double lambda) {
    OscillatoryForm f = oscillatory_form(s.jacobi(), 2.0 * lambda);
    f.lambda = lambda;
    return f;
}

/// log of sinh^{a+1/2}(t/2) cosh^{b+1/2}(t/2), the weight that removes the decay of phi.
inline double log_oscillation_weight(double a, double b, double t) {
    return (a + 0.5) * log_sinh(0.5 * t) + (b + 0.5) * log_cosh(0.5 * t);
}

/// phi_0(t) / ((1 + t) e^{-rho t}).
inline double phi0_envelope(const SpaceParams& s, double t) {
    if (!(t > 0.0)) throw InvalidArgument("phi0_envelope requires t > 0");
    const Scaled p = spherical_phi_scaled(s, 0.0, t);
    return p.relative_to(std::log1p(t) - s.rho * t).real();
}

/// Magnitude scale of phi_lambda near t: A e^{-weight} for real lambda != 0,
/// phi_{i Im lambda}(t) (the majorant of |phi_lambda|) on the imaginary axis, and
/// the smaller of that majorant and the two-wave size otherwise.
inline double log_phi_envelope(const SpaceParams& s, cplx lambda, double t) {
    lambda = canonical(lambda);
    if (classify(lambda) == Regime::RealNonzero) {
        const OscillatoryForm f = oscillatory_constants(s.jacobi(), 2.0 * lambda.real());
        const double osc = std::log(f.amplitude) - log_oscillation_weight(s.alpha, s.beta, t);
        return std::min(osc, spherical_phi_scaled(s, 0.0, t).log_abs());
    }
    const double majorant = spherical_phi_scaled(s, cplx(0.0, lambda.imag()), t).log_abs();
    if (classify(lambda) == Regime::Generic) {
        return std::min(majorant, log_two_wave_envelope(s.jacobi(), 2.0 * lambda, 0.5 * t));
    }
    return majorant;
}

/// First radius t_lambda on a step-0.05 grid up to 40 after which
/// |phi_lambda(t)| / (|c(lambda)| e^{(|Im lambda| - rho) t}) stays within [0.5, 1.5].
inline double envelope_onset(const SpaceParams& s, cplx lambda) {
    lambda = canonical(lambda);
    if (lambda.imag() == 0.0) throw InvalidArgument("envelope_onset requires Im lambda != 0");
    const double log_c = std::log(std::abs(spherical_c(s, lambda)));
    const double rate = std::abs(lambda.imag()) - s.rho;
    double onset = 0.0;
    for (double t = 0.05; t <= 40.0 + 1e-9; t += 0.05) {
        const double q = std::exp(spherical_phi_scaled(s, lambda, t).log_abs() - log_c - rate * t);
        if (std::abs(q - 1.0) > 0.5) onset = t + 0.05;
    }
    return onset;
}

}  // namespace drs
