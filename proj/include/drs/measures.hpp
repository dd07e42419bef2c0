#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"
#include "scaled.hpp"
#include "space.hpp"
#include "spherical.hpp"

namespace drs {

/// A finite sum f = sum_i coeff_i phi_{mu_i}.
class SphericalCombination {
public:
    struct Term {
        cplx mu;
        cplx coeff;
    };

    SphericalCombination(SpaceParams space, std::vector<Term> terms)
        : space_(std::move(space)), terms_(std::move(terms)) {
        if (terms_.empty()) throw InvalidArgument("spherical combination needs at least one term");
        for (auto& t : terms_) t.mu = canonical(t.mu);
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            for (std::size_t j = i + 1; j < terms_.size(); ++j) {
                if (terms_[i].mu == terms_[j].mu) {
                    throw InvalidArgument("spherical combination has repeated parameters");
                }
            }
        }
    }

    static SphericalCombination single(const SpaceParams& space, cplx mu, cplx coeff = 1.0) {
        return {space, {{mu, coeff}}};
    }

    const SpaceParams& space() const { return space_; }
    const std::vector<Term>& terms() const { return terms_; }

    cplx operator()(double t) const {
        cplx sum = 0.0;
        for (const auto& term : terms_) sum += term.coeff * spherical_phi(space_, term.mu, t);
        return sum;
    }

    cplx at_origin() const {
        cplx sum = 0.0;
        for (const auto& term : terms_) sum += term.coeff;
        return sum;
    }

    /// Coefficient of phi_lambda in f (zero if absent).
    cplx component(cplx lambda) const {
        lambda = canonical(lambda);
        for (const auto& term : terms_) {
            if (term.mu == lambda) return term.coeff;
        }
        return 0.0;
    }

private:
    SpaceParams space_;
    std::vector<Term> terms_;
};

/// A radial function r -> f(r).  Breakpoints mark kinks or jumps so that
/// quadrature splits there; support_hint bounds the support when known.
struct RadialProfile {
    std::function<cplx(double)> eval;
    std::optional<double> support_hint;
    std::vector<double> breakpoints;
};

inline cplx v_ball_closed(const SpaceParams& s, cplx lambda, double r) {
    return v_ball_closed_scaled(s, lambda, r).value();
}

namespace detail {

/// Integral of g(x) J(x) over [a, b] split at the given breakpoints, with the
/// integrand measured in units of exp(shift).
template <class G>
Scaled integrate_against_density(const SpaceParams& s, G&& g, double a, double b,
                                 std::vector<double> cuts = {}) {
    // scale by the largest sampled |g J| so the absolute floor stays negligible
    double shift = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 32; ++i) {
        const double x = a + (b - a) * i / 32.0;
        const double mag = std::abs(g(x));
        if (mag > 0.0) shift = std::max(shift, std::log(mag) + log_density_J(s, x));
    }
    if (!std::isfinite(shift)) shift = log_density_J(s, b);
    auto f = [&](double x) -> cplx {
        if (x == 0.0) return 0.0;
        return g(x) * std::exp(log_density_J(s, x) - shift);
    };
    cuts.push_back(a);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cplx total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = std::max(a, cuts[i]);
        const double hi = std::min(b, cuts[i + 1]);
        if (hi > lo) total += quad::integrate(f, lo, hi).value;
    }
    return Scaled{total, shift}.normalized();
}

}  // namespace detail

/// V_r^lambda by adaptive quadrature of phi_lambda J over [0, r].
inline cplx v_ball_quadrature(const SpaceParams& s, cplx lambda, double r) {
    if (!(r > 0.0)) throw InvalidArgument("ball volume requires r > 0");
    auto g = [&](double x) { return spherical_phi(s, lambda, x); };
    return detail::integrate_against_density(s, g, 0.0, r).value();
}

inline Scaled v_annulus_scaled(const SpaceParams& s, cplx lambda, double r, double rp) {
    if (!(r > 0.0) || !(rp > r)) throw InvalidArgument("annulus requires 0 < r < r'");
    return v_ball_closed_scaled(s, lambda, rp) - v_ball_closed_scaled(s, lambda, r);
}

/// V_{r,r'}^lambda = V_{r'}^lambda - V_r^lambda.
inline cplx v_annulus(const SpaceParams& s, cplx lambda, double r, double rp) {
    return v_annulus_scaled(s, lambda, r, rp).value();
}

/// Spherical transform of a radial profile truncated at r_max.
inline cplx spherical_transform_radial(const RadialProfile& f, const SpaceParams& s, cplx lambda,
                                       double r_max) {
    if (!(r_max > 0.0)) throw InvalidArgument("r_max must be positive");
    if (f.support_hint) r_max = std::min(r_max, *f.support_hint);
    if (!(r_max > 0.0)) return 0.0;
    auto g = [&](double x) { return f.eval(x) * spherical_phi(s, lambda, x); };
    return detail::integrate_against_density(s, g, 0.0, r_max, f.breakpoints).value();
}

// ---- denominators and their guard ----------------------------------------

inline constexpr double kGuardFactor = 1e-8;

/// log of the magnitude scale of V_r^lambda near r.
inline double log_vball_envelope(const SpaceParams& s, cplx lambda, double r) {
    lambda = canonical(lambda);
    if (classify(lambda) == Regime::RealNonzero) {
        const OscillatoryForm f = oscillatory_constants(s.jacobi_prime(), 2.0 * lambda.real());
        const double h = 0.5 * r;
        return log_ball_constant(s) + s.n * log_sinh(h) + (s.k + 1) * log_cosh(h) +
               std::log(f.amplitude) - log_oscillation_weight(s.alpha_p, s.beta_p, r);
    }
    const double majorant = v_ball_closed_scaled(s, cplx(0.0, lambda.imag()), r).log_abs();
    if (classify(lambda) == Regime::Generic) {
        const double h = 0.5 * r;
        return std::min(majorant, log_ball_constant(s) + s.n * log_sinh(h) + (s.k + 1) * log_cosh(h) +
                                      log_two_wave_envelope(s.jacobi_prime(), 2.0 * lambda, h));
    }
    return majorant;
}

inline double log_vannulus_envelope(const SpaceParams& s, cplx lambda, double r, double rp) {
    const double a = log_vball_envelope(s, lambda, r);
    const double b = log_vball_envelope(s, lambda, rp);
    return std::max(a, b) + std::log1p(std::exp(-std::abs(a - b)));
}

inline bool phi_admissible(const SpaceParams& s, cplx lambda, double r) {
    return spherical_phi_scaled(s, lambda, r).log_abs() - log_phi_envelope(s, lambda, r) >
           std::log(kGuardFactor);
}

inline bool vball_admissible(const SpaceParams& s, cplx lambda, double r) {
    return v_ball_closed_scaled(s, lambda, r).log_abs() - log_vball_envelope(s, lambda, r) >
           std::log(kGuardFactor);
}

inline bool vannulus_admissible(const SpaceParams& s, cplx lambda, double r, double rp) {
    return v_annulus_scaled(s, lambda, r, rp).log_abs() - log_vannulus_envelope(s, lambda, r, rp) >
           std::log(kGuardFactor);
}

// ---- averages of spherical combinations ----------------------------------

/// Sphere average (M_r f)(x) at |x| = s: sum_i c_i phi_{mu_i}(r) phi_{mu_i}(s).
inline cplx sphere_avg(const SphericalCombination& f, double r, double s) {
    if (!(r > 0.0) || !(s >= 0.0)) throw InvalidArgument("sphere_avg requires r > 0 and s >= 0");
    const SpaceParams& sp = f.space();
    cplx sum = 0.0;
    for (const auto& t : f.terms()) {
        sum += t.coeff * (spherical_phi_scaled(sp, t.mu, r) * spherical_phi_scaled(sp, t.mu, s)).value();
    }
    return sum;
}

enum class AverageKind { Sphere, Ball, Annulus };

inline const char* to_string(AverageKind k) {
    switch (k) {
        case AverageKind::Sphere: return "sphere";
        case AverageKind::Ball: return "ball";
        case AverageKind::Annulus: return "annulus";
    }
    return "?";
}

/// Denominator of the normalised average of the given kind: phi_mu(r), V_r^mu or V_{r,r'}^mu.
inline Scaled average_denominator(const SpaceParams& sp, cplx mu, AverageKind kind, double r,
                                  double rp) {
    switch (kind) {
        case AverageKind::Sphere: return spherical_phi_scaled(sp, mu, r);
        case AverageKind::Ball: return v_ball_closed_scaled(sp, mu, r);
        case AverageKind::Annulus: return v_annulus_scaled(sp, mu, r, rp);
    }
    return {};
}

/// log(|D(lambda)| / envelope): how far the denominator sits above its zero set.
inline double log_denominator_margin(const SpaceParams& sp, cplx lambda, AverageKind kind, double r,
                                     double rp = 0.0) {
    switch (kind) {
        case AverageKind::Sphere:
            return spherical_phi_scaled(sp, lambda, r).log_abs() - log_phi_envelope(sp, lambda, r);
        case AverageKind::Ball:
            return v_ball_closed_scaled(sp, lambda, r).log_abs() - log_vball_envelope(sp, lambda, r);
        case AverageKind::Annulus:
            return v_annulus_scaled(sp, lambda, r, rp).log_abs() -
                   log_vannulus_envelope(sp, lambda, r, rp);
    }
    return -std::numeric_limits<double>::infinity();
}

/// Weights w_i = c_i D(mu_i)/D(lambda) so that the normalised average of f at
/// |x| = s is sum_i w_i phi_{mu_i}(s).  The term with mu_i = lambda gets c_i exactly.
inline std::vector<cplx> average_weights(const SphericalCombination& f, cplx lambda,
                                         AverageKind kind, double r, double rp = 0.0) {
    const SpaceParams& sp = f.space();
    lambda = canonical(lambda);
    bool ok = false;
    switch (kind) {
        case AverageKind::Sphere: ok = phi_admissible(sp, lambda, r); break;
        case AverageKind::Ball: ok = vball_admissible(sp, lambda, r); break;
        case AverageKind::Annulus: ok = vannulus_admissible(sp, lambda, r, rp); break;
    }
    if (!ok) throw ZeroDenominator(std::string("denominator of the ") + to_string(kind) +
                                   " average is below the guard");
    const Scaled d_lambda = average_denominator(sp, lambda, kind, r, rp);
    std::vector<cplx> w;
    w.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        w.push_back(t.mu == lambda ? t.coeff
                                   : t.coeff * ratio(average_denominator(sp, t.mu, kind, r, rp), d_lambda));
    }
    return w;
}

namespace detail {

inline cplx weighted_sum(const SphericalCombination& f, const std::vector<cplx>& w, double s) {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * spherical_phi(f.space(), f.terms()[i].mu, s);
    return sum;
}

}  // namespace detail

/// Sphere average normalised by phi_lambda(r).
inline cplx sphere_avg_normalized(const SphericalCombination& f, cplx lambda, double r, double s) {
    return detail::weighted_sum(f, average_weights(f, lambda, AverageKind::Sphere, r), s);
}

/// Ball average normalised by V_r^lambda.
inline cplx ball_avg_normalized(const SphericalCombination& f, cplx lambda, double r, double s) {
    return detail::weighted_sum(f, average_weights(f, lambda, AverageKind::Ball, r), s);
}

/// Annulus average normalised by V_{r,r'}^lambda.
inline cplx annulus_avg_normalized(const SphericalCombination& f, cplx lambda, double r, double rp,
                                   double s) {
    if (!(r > 0.0) || !(rp > r)) throw InvalidArgument("annulus requires 0 < r < r'");
    return detail::weighted_sum(f, average_weights(f, lambda, AverageKind::Annulus, r, rp), s);
}

// ---- averages of radial profiles at the base point -----------------------

inline cplx annulus_avg_radial_at_e(const RadialProfile& f, const SpaceParams& s, double r,
                                    double rp) {
    if (!(r > 0.0) || !(rp > r)) throw InvalidArgument("annulus requires 0 < r < r'");
    const Scaled num = detail::integrate_against_density(s, f.eval, r, rp, f.breakpoints);
    return ratio(num, v_annulus_scaled(s, cplx(0.0, s.rho), r, rp));
}

inline cplx ball_avg_radial_at_e(const RadialProfile& f, const SpaceParams& s, double r) {
    if (!(r > 0.0)) throw InvalidArgument("ball requires r > 0");
    const Scaled num = detail::integrate_against_density(s, f.eval, 0.0, r, f.breakpoints);
    return ratio(num, v_ball_closed_scaled(s, cplx(0.0, s.rho), r));
}

/// Normalised average of a radial profile at the base point: f(r) / phi_lambda(r),
/// or the integral of f over the ball (annulus) divided by V^lambda.
inline cplx radial_avg_normalized_at_e(const RadialProfile& f, const SpaceParams& s, cplx lambda,
                                       AverageKind kind, double r, double rp = 0.0) {
    if (log_denominator_margin(s, lambda, kind, r, rp) <= std::log(kGuardFactor)) {
        throw ZeroDenominator("normalising denominator too close to zero");
    }
    const Scaled den = average_denominator(s, lambda, kind, r, rp);
    switch (kind) {
        case AverageKind::Sphere: return ratio(Scaled(f.eval(r)), den);
        case AverageKind::Ball:
            return ratio(detail::integrate_against_density(s, f.eval, 0.0, r, f.breakpoints), den);
        case AverageKind::Annulus:
            return ratio(detail::integrate_against_density(s, f.eval, r, rp, f.breakpoints), den);
    }
    return 0.0;
}

// ---- small-radius eigenvalue estimate ------------------------------------

/// 2n (M_t f(e) - f(e)) / (t^2 f(e)), an O(t^2) estimate of (Laplacian f)(e) / f(e).
inline cplx laplace_eigenvalue_estimate(const SphericalCombination& f, double t_small) {
    if (!(t_small > 0.0) || t_small > 0.1) throw InvalidArgument("t_small must lie in (0, 0.1]");
    const cplx f0 = f.at_origin();
    if (std::abs(f0) < 1e-12) throw ZeroAtBasePoint("f(e) vanishes");
    cplx diff = 0.0;
    for (const auto& t : f.terms()) diff += t.coeff * (spherical_phi(f.space(), t.mu, t_small) - 1.0);
    return 2.0 * f.space().n * diff / (t_small * t_small * f0);
}

/// Two-level Richardson extrapolation of the estimate over t, t/2, t/4.
inline cplx laplace_eigenvalue_richardson(const SphericalCombination& f, double t = 0.04) {
    const cplx e1 = laplace_eigenvalue_estimate(f, t);
    const cplx e2 = laplace_eigenvalue_estimate(f, 0.5 * t);
    const cplx e3 = laplace_eigenvalue_estimate(f, 0.25 * t);
    const cplx r1 = (4.0 * e2 - e1) / 3.0;
    const cplx r2 = (4.0 * e3 - e2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

/// -(lambda^2 + rho^2), the eigenvalue of phi_lambda.
inline cplx eigenvalue(const SpaceParams& s, cplx lambda) {
    return -(lambda * lambda + s.rho * s.rho);
}

}  // namespace drs
