#pragma once

#include <array>
#include <cmath>
#include <complex>

#include <boost/numeric/odeint.hpp>

#include "errors.hpp"
#include "jacobi.hpp"

namespace drs {

/// Independent reference for phi_lambda^{(alpha,beta)}(t): integrates the
/// Jacobi differential equation
///   phi'' + ((2a+1) coth t + (2b+1) tanh t) phi' + (lambda^2 + rho^2) phi = 0,
///   phi(0) = 1, phi'(0) = 0,
/// with an adaptive Runge-Kutta-Fehlberg 7(8) scheme.  Intended for tests and
/// the validation suite only.
///
/// The singular point t = 0 is stepped over with a four-term power series.
/// The exponential trend exp(-(rho - |Im lambda|) t) is factored out so the
/// integrated quantity stays of order one.
inline cplx jacobi_ode_oracle(const JacobiParams& p, cplx lambda, double t, double tol = 1e-13) {
    if (!(t >= 0.0)) throw InvalidArgument("jacobi_ode_oracle requires t >= 0");
    lambda = canonical(lambda);
    const double rho = p.rho();
    const cplx mu = lambda * lambda + rho * rho;
    const double A = 2.0 * p.alpha + 1.0;
    const double B = 2.0 * p.beta + 1.0;

    // phi = 1 + c1 t^2 + c2 t^4 + c3 t^6 + O(t^8)
    const cplx c1 = -mu / (2.0 * (A + 1.0));
    const cplx c2 = -c1 * (2.0 * (A / 3.0 + B) + mu) / (12.0 + 4.0 * A);
    const cplx c3 = -((A / 3.0 + B) * 4.0 * c2 + (-A / 45.0 - B / 3.0) * 2.0 * c1 + mu * c2) /
                    (30.0 + 6.0 * A);
    auto series = [&](double s) {
        const double s2 = s * s;
        return std::pair{1.0 + s2 * (c1 + s2 * (c2 + s2 * c3)),
                         s * (2.0 * c1 + s2 * (4.0 * c2 + s2 * 6.0 * c3))};
    };
    constexpr double t0 = 0.01;
    if (t <= t0) return series(t).first;

    const double kappa = rho - std::abs(lambda.imag());
    // state: psi = e^{kappa t} phi, v = e^{kappa t} phi'  (real, imag interleaved)
    using State = std::array<double, 4>;
    auto [phi0, dphi0] = series(t0);
    const double e0 = std::exp(kappa * t0);
    State x{(phi0 * e0).real(), (phi0 * e0).imag(), (dphi0 * e0).real(), (dphi0 * e0).imag()};

    long evaluations = 0;
    auto rhs = [&](const State& s, State& ds, double tt) {
        if (++evaluations > 5'000'000) {
            throw StiffnessFailure("Jacobi ODE oracle exceeded its evaluation budget");
        }
        const cplx psi(s[0], s[1]);
        const cplx v(s[2], s[3]);
        const double drift = A / std::tanh(tt) + B * std::tanh(tt);
        const cplx dpsi = kappa * psi + v;
        const cplx dv = (kappa - drift) * v - mu * psi;
        ds = {dpsi.real(), dpsi.imag(), dv.real(), dv.imag()};
    };

    namespace odeint = boost::numeric::odeint;
    try {
        auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
        odeint::integrate_adaptive(stepper, rhs, x, t0, t, 1e-3);
    } catch (const StiffnessFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw StiffnessFailure(std::string("Jacobi ODE oracle step control failed: ") + e.what());
    }
    return cplx(x[0], x[1]) * std::exp(-kappa * t);
}

}  // namespace drs
