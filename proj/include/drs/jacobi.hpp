#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "gamma.hpp"
#include "hypergeometric.hpp"
#include "scaled.hpp"

namespace drs {

enum class Regime { ImaginaryAxis, RealNonzero, Zero, Generic };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::ImaginaryAxis: return "ImaginaryAxis";
        case Regime::RealNonzero: return "RealNonzero";
        case Regime::Zero: return "Zero";
        case Regime::Generic: return "Generic";
    }
    return "?";
}

inline Regime classify(cplx lambda) {
    const bool re0 = lambda.real() == 0.0;
    const bool im0 = lambda.imag() == 0.0;
    if (re0 && im0) return Regime::Zero;
    if (re0) return Regime::ImaginaryAxis;
    if (im0) return Regime::RealNonzero;
    return Regime::Generic;
}

/// Representative of {lambda, -lambda}: Im < 0, or Im == 0 and Re >= 0.
inline cplx canonical(cplx lambda) {
    if (lambda.imag() > 0.0 || (lambda.imag() == 0.0 && lambda.real() < 0.0)) lambda = -lambda;
    // avoid -0.0 components so that equal parameters compare bit-identical
    return {lambda.real() + 0.0, lambda.imag() + 0.0};
}

/// A spectral parameter together with its regime.
struct SpectralParam {
    cplx value;
    Regime regime;

    explicit SpectralParam(cplx lambda) : value(canonical(lambda)), regime(classify(lambda)) {}
};

/// Parameters (alpha, beta) of a Jacobi function; both must exceed -1/2.
struct JacobiParams {
    double alpha;
    double beta;

    JacobiParams(double a, double b) : alpha(a), beta(b) {
        if (!(a > -0.5) || !(b > -0.5)) {
            throw InvalidArgument("Jacobi parameters must exceed -1/2");
        }
    }

    double rho() const { return alpha + beta + 1.0; }
};

/// Jacobi function phi_lambda^{(alpha,beta)}(t) in scaled form.
inline Scaled jacobi_phi_scaled(const JacobiParams& p, cplx lambda, double t) {
    if (!(t >= 0.0)) throw InvalidArgument("jacobi_phi requires t >= 0");
    const Regime regime = classify(lambda);
    lambda = canonical(lambda);
    const cplx il = cplx(0.0, 1.0) * lambda;
    const double rho = p.rho();
    Scaled v = special::hyp2f1_scaled(0.5 * (rho - il), 0.5 * (rho + il), p.alpha + 1.0,
                                      special::NegativeAxisPoint::from_sinh_squared(t));
    if (regime != Regime::Generic) v.mantissa = {v.mantissa.real(), 0.0};
    return v;
}

inline cplx jacobi_phi(const JacobiParams& p, cplx lambda, double t) {
    return jacobi_phi_scaled(p, lambda, t).value();
}

/// Harish-Chandra type c-function of the Jacobi transform,
///   c(lambda) = 2^{rho - i lambda} Gamma(alpha+1) Gamma(i lambda)
///               / (Gamma((i lambda + rho)/2) Gamma((i lambda + alpha - beta + 1)/2)),
/// so that exp(-(i lambda - rho) t) phi_lambda(t) -> c(lambda) for Im lambda < 0.
/// Parameters with Im lambda > 0 are reflected; real lambda is used as given
/// (boundary value from Im lambda -> 0-), hence c(-lambda) = conj(c(lambda)).
inline cplx c_function(const JacobiParams& p, cplx lambda) {
    if (lambda == cplx(0.0, 0.0)) {
        throw PoleAtZero("c-function has a pole at lambda = 0");
    }
    if (lambda.imag() > 0.0) lambda = -lambda;
    const cplx il = cplx(0.0, 1.0) * lambda;
    const double rho = p.rho();
    const cplx log_c = (rho - il) * std::log(2.0) + special::log_gamma(p.alpha + 1.0) +
                       special::log_gamma(il);
    return std::exp(log_c) * special::rgamma(0.5 * (il + rho)) *
           special::rgamma(0.5 * (il + p.alpha - p.beta + 1.0));
}

/// phi normalised as (sinh t)^{alpha+1/2} (cosh t)^{beta+1/2} phi_lambda(t)
///   = amplitude * cos(lambda t + phase) + residual(t),  |residual(t)| <= C e^{-2t}.
struct OscillatoryForm {
    double lambda;
    double amplitude;
    double phase;
    double residual_bound;
};

/// Residual (sinh t)^{a+1/2}(cosh t)^{b+1/2} phi_lambda(t) - A cos(lambda t + theta)
/// for real lambda > 0.  For t >= 1 it is evaluated from the expansion
/// phi = 2 Re[c(lambda) Phi_lambda], Phi_lambda(t) =
/// (2 cosh t)^{i lambda - rho} 2F1((rho - i lambda)/2, (alpha-beta+1-i lambda)/2; 1 - i lambda; cosh^-2 t),
/// arranged so that no cancellation of O(1) terms occurs.
inline double oscillatory_residual(const JacobiParams& p, double lambda, double t) {
    const cplx c = c_function(p, lambda);
    const double rho = p.rho();
    const double amplitude = std::pow(2.0, 1.0 - rho) * std::abs(c);
    const double phase = std::arg(c);
    if (t < 1.0) {
        const double normalised = std::pow(std::sinh(t), p.alpha + 0.5) *
                                  std::pow(std::cosh(t), p.beta + 0.5) *
                                  jacobi_phi(p, lambda, t).real();
        return normalised - amplitude * std::cos(lambda * t + phase);
    }
    const cplx il(0.0, lambda);
    const double q = std::exp(-2.0 * t);
    const double u = 4.0 * q / ((1.0 + q) * (1.0 + q));
    const cplx f_minus_1 = special::hyp2f1_series_tail(0.5 * (rho - il),
                                                       0.5 * (p.alpha - p.beta + 1.0 - il),
                                                       1.0 - il, u);
    // log of tanh^{alpha+1/2}(t) (1 + e^{-2t})^{i lambda}
    const cplx L = (p.alpha + 0.5) * (std::log1p(-q) - std::log1p(q)) + il * std::log1p(q);
    const cplx expm1_L(std::expm1(L.real()) * std::cos(L.imag()) -
                           2.0 * std::pow(std::sin(0.5 * L.imag()), 2),
                       std::exp(L.real()) * std::sin(L.imag()));
    const cplx g = expm1_L * (1.0 + f_minus_1) + f_minus_1;
    return 2.0 * (c * std::pow(2.0, -rho) * std::polar(1.0, lambda * t) * g).real();
}

/// Amplitude and phase only; residual_bound is left at zero.
inline OscillatoryForm oscillatory_constants(const JacobiParams& p, double lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("oscillatory_form requires real lambda > 0");
    const cplx c = c_function(p, lambda);
    OscillatoryForm form{lambda, std::pow(2.0, 1.0 - p.rho()) * std::abs(c), std::arg(c), 0.0};
    if (form.phase == -std::numbers::pi) form.phase = std::numbers::pi;
    return form;
}

/// log of |c(lambda)| e^{(|Im lambda| - rho) t} + |c(-lambda)| e^{(-|Im lambda| - rho) t},
/// the size of the two leading waves of phi_lambda; lambda must not be imaginary.
inline double log_two_wave_envelope(const JacobiParams& p, cplx lambda, double t) {
    lambda = canonical(lambda);
    if (lambda.real() == 0.0) throw InvalidArgument("two-wave envelope requires Re lambda != 0");
    const double b = std::abs(lambda.imag());
    const double a = std::log(std::abs(c_function(p, lambda))) + b * t;
    const double c = std::log(std::abs(c_function(p, -lambda))) - b * t;
    return std::max(a, c) + std::log1p(std::exp(-std::abs(a - c))) - p.rho() * t;
}

/// Amplitude/phase normal form of phi_lambda for real lambda > 0.  The
/// residual bound is the maximum of |residual(t)| e^{2t} over a scan of [3, 30].
inline OscillatoryForm oscillatory_form(const JacobiParams& p, double lambda) {
    OscillatoryForm form = oscillatory_constants(p, lambda);
    double worst = 0.0;
    for (double t = 3.0; t <= 30.0 + 1e-12; t += 0.01) {
        worst = std::max(worst, std::abs(oscillatory_residual(p, lambda, t)) * std::exp(2.0 * t));
    }
    form.residual_bound = worst * (1.0 + 1e-3);
    return form;
}

}  // namespace drs
