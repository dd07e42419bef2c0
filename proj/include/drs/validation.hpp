#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "measures.hpp"
#include "ode_oracle.hpp"
#include "space.hpp"
#include "spherical.hpp"
#include "zeros.hpp"

namespace drs {

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    double max_error = 0.0;
    bool pass = false;
    double seconds = 0.0;
    std::string note;
};

struct ValidateOptions {
    double density_perturbation = 0.0;  // relative change applied to every c_n
    std::uint64_t seed = 20240611;
};

namespace validation {

inline SpaceParams space(int m, int k, const ValidateOptions& o) {
    SpaceParams s(m, k);
    if (o.density_perturbation != 0.0) s = s.with_density_constant(s.c_n * (1.0 + o.density_perturbation));
    return s;
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

/// Density constant against the closed-form plain ball volume.
inline SuiteResult density(const ValidateOptions& o) {
    SuiteResult r{"density_calibration"};
    for (auto [m, k] : {std::pair{2, 1}, {2, 2}, {4, 3}, {6, 1}}) {
        const SpaceParams s = space(m, k, o);
        ++r.cases;
        try {
            r.max_error = std::max(r.max_error, verify_density(s));
        } catch (const CalibrationMismatch& e) {
            r.max_error = std::max(r.max_error, std::abs(o.density_perturbation));
            r.note = e.what();
            return r;
        }
    }
    r.pass = true;
    return r;
}

/// Closed-form ball transform against quadrature of phi_lambda J.
inline SuiteResult ball_volume(const ValidateOptions& o) {
    SuiteResult r{"ball_volume_closed_form"};
    for (auto [m, k] : {std::pair{2, 1}, {4, 3}, {6, 1}}) {
        const SpaceParams s = space(m, k, o);
        const std::vector<cplx> lams{0.7, {0.0, 1.3}, {1.0, 0.5}, {0.0, s.rho}};
        for (cplx l : lams) {
            for (double rad : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
                ++r.cases;
                r.max_error = std::max(r.max_error, rel(v_ball_closed(s, l, rad), v_ball_quadrature(s, l, rad)));
            }
        }
    }
    r.pass = r.max_error < 1e-8;
    return r;
}

/// Jacobi function against the ODE oracle at random (alpha, beta, lambda, t).
inline SuiteResult jacobi_oracle(const ValidateOptions& o) {
    SuiteResult r{"jacobi_ode_oracle"};
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> ab(0.0, 4.0), re(0.0, 3.0), im(-1.5, 0.0), tt(0.05, 20.0);
    std::vector<std::tuple<JacobiParams, cplx, double>> cases;
    for (int i = 0; i < 100; ++i) {
        double a = ab(rng), b = ab(rng) - 0.5;
        if (b > a) std::swap(a, b);
        const int kind = i % 4;
        const cplx l = kind == 0 ? cplx(re(rng)) : kind == 1 ? cplx(0.0, im(rng)) : cplx(re(rng), im(rng));
        cases.emplace_back(JacobiParams{a, b}, kind == 3 && i % 8 == 3 ? cplx(0.0) : l, tt(rng));
    }
    const auto err = parallel_map(cases.size(), [&](std::size_t i) {
        auto [p, l, t] = cases[i];
        return rel(jacobi_phi(p, l, t), jacobi_ode_oracle(p, l, t));
    });
    r.cases = cases.size();
    for (double e : err) r.max_error = std::max(r.max_error, e);
    r.pass = r.max_error < 1e-9;
    return r;
}

/// e^{-(i lambda - rho) t} phi_lambda(t) / c(lambda) -> 1 for Im lambda < 0.
inline SuiteResult c_function_limit(const ValidateOptions&) {
    SuiteResult r{"c_function_limit"};
    const JacobiParams p{1.0, 0.0};
    const std::vector<cplx> lams{{0.0, -0.4}, {0.0, -0.7}, {1.0, -0.5}, {2.0, -0.3}, {0.5, -0.8},
                                 {3.0, -0.6}, {1.5, -0.35}, {0.25, -0.45}, {2.5, -0.75}, {1.2, -0.55}};
    bool monotone = true;
    auto err = [&](cplx l, double t) {
        const Scaled v = jacobi_phi_scaled(p, l, t);
        const cplx scaled = v.mantissa * std::exp(cplx(v.log_scale) - (cplx(0.0, 1.0) * l - p.rho()) * t);
        return std::abs(scaled / c_function(p, l) - 1.0);
    };
    for (cplx l : lams) {
        ++r.cases;
        const double e30 = err(l, 30.0), e15 = err(l, 15.0);
        r.max_error = std::max(r.max_error, e30);
        monotone = monotone && e30 < e15;
    }
    r.pass = r.max_error < 1e-6 && monotone;
    if (!monotone) r.note = "error at t = 30 not below error at t = 15";
    return r;
}

/// Residual of the amplitude/phase form, scaled by e^{2t}, bounded and not growing.
inline SuiteResult oscillatory(const ValidateOptions& o) {
    SuiteResult r{"oscillatory_form"};
    const SpaceParams s = space(2, 1, o);
    bool stable = true;
    for (double l : {0.5, 1.0, 2.0}) {
        double early = 0.0, late = 0.0;
        for (int i = 0; i <= 15000; ++i) {
            const double t = 5.0 + 1e-3 * i;
            const double v = std::abs(oscillatory_residual(s.jacobi(), l, t)) * std::exp(2.0 * t);
            (t <= 10.0 ? early : late) = std::max(t <= 10.0 ? early : late, v);
        }
        ++r.cases;
        r.max_error = std::max(r.max_error, late);
        stable = stable && std::isfinite(late) && late <= early;
    }
    r.pass = stable;
    return r;
}

/// Zero spacing against the pi/lambda lattice and positivity of t_n windows.
inline SuiteResult zeros(const ValidateOptions& o) {
    SuiteResult r{"zeros_and_tn_windows"};
    const SpaceParams s = space(2, 1, o);
    int failures = 0;
    for (double l : {0.5, 1.0, 2.0}) {
        const auto z = zeros_phi(s, l, 0.1, 60.0);
        for (std::size_t i = 1; i < z.size(); ++i) {
            if (z[i - 1] <= 20.0) continue;
            ++r.cases;
            r.max_error = std::max(r.max_error, std::abs(z[i] - z[i - 1] - std::numbers::pi / l));
        }
        const RadiusSchedule sch = tn_sequence(s, l, 50);
        for (const auto& e : sch.entries) {
            ++r.cases;
            for (int j = 0; j <= 64; ++j) {
                const double t = e.r - sch.delta_prime + 2.0 * sch.delta_prime * j / 64.0;
                if (!(spherical_phi(s, l, t).real() > 0.0)) {
                    ++failures;
                    break;
                }
            }
        }
    }
    r.pass = r.max_error < 1e-3 && failures == 0;
    if (failures) r.note = std::to_string(failures) + " t_n windows with nonpositive values";
    return r;
}

/// Annulus window ratios along the constructed schedule do not grow with j.
inline SuiteResult annulus_bound(const ValidateOptions& o) {
    SuiteResult r{"annulus_ratio_bound"};
    const SpaceParams s = space(2, 1, o);
    bool ok = true;
    for (cplx l : {cplx(1.0), cplx(1.0, 0.5), cplx(0.0, 1.3)}) {
        const RadiusSchedule sch = annulus_sequence(s, l, 1.0, 1.0, 50);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = static_cast<int>(sch.entries.size());
        for (int j = 0; j < n; ++j) {
            const double y = sch.entries[j].ratio_bound;
            ok = ok && std::isfinite(y);
            sx += j;
            sy += y;
            sxx += double(j) * j;
            sxy += j * y;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        ++r.cases;
        r.max_error = std::max(r.max_error, std::abs(slope));
    }
    r.pass = ok && r.max_error <= 1e-3;
    return r;
}

/// Decay of the normalised averages of phi_lambda + phi_mu towards phi_lambda.
inline SuiteResult convergence(const ValidateOptions& o) {
    SuiteResult r{"average_convergence"};
    const SpaceParams s = space(2, 1, o);
    const cplx l(0.0, 1.3), mu(0.0, 0.5);
    const SphericalCombination f(s, {{l, 1.0}, {mu, 1.0}});
    const double predicted = std::abs(mu.imag()) - std::abs(l.imag());
    const std::vector<std::pair<AverageKind, RadiusSchedule>> runs{
        {AverageKind::Sphere, admissible_grid(s, l, AverageKind::Sphere, 10.0, 40.0, 0.5)},
        {AverageKind::Ball, ball_sequence(s, l, 40)},
        {AverageKind::Annulus, annulus_sequence(s, l, 1.0, 1.0, 40)}};
    bool ok = true;
    for (const auto& [kind, sch] : runs) {
        const auto c = classify_normalized_average(f, l, kind, sch);
        const double e = decay_exponent(c.radii, c.sup_deviation, 10.0, 40.0);
        double at40 = 0.0;
        for (std::size_t i = 0; i < c.radii.size(); ++i) {
            if (c.radii[i] <= 40.0 + 1e-9) at40 = c.sup_deviation[i];
        }
        ++r.cases;
        r.max_error = std::max(r.max_error, std::abs(e / predicted - 1.0));
        ok = ok && at40 < 1e-10 && c.eigen_checked && c.eigen_ok;
    }
    r.pass = ok && r.max_error <= 0.1;
    return r;
}

/// Rule-based and sample-based ratio verdicts on the five cases.
inline SuiteResult taxonomy(const ValidateOptions& o) {
    SuiteResult r{"ratio_taxonomy"};
    const SpaceParams s = space(2, 1, o);
    const LimitKind expected[] = {LimitKind::Converges, LimitKind::Diverges, LimitKind::Oscillates,
                                  LimitKind::Converges, LimitKind::Diverges};
    int bad = 0;
    const auto pairs = table6_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto v = classify_ratio(s, pairs[i].lambda, pairs[i].mu);
        ++r.cases;
        if (v.kind != expected[i] || v.diagnostics.numeric_disagreement) ++bad;
    }
    std::mt19937_64 rng(o.seed);
    std::vector<CasePair> random;
    for (auto c : {RatioCase::A, RatioCase::B, RatioCase::C, RatioCase::D, RatioCase::E}) {
        for (int i = 0; i < 20; ++i) random.push_back(random_pair(c, rng));
    }
    const auto dis = parallel_map(random.size(), [&](std::size_t i) -> int {
        return classify_ratio(s, random[i].lambda, random[i].mu).diagnostics.numeric_disagreement;
    });
    for (int d : dis) {
        ++r.cases;
        bad += d;
    }
    r.max_error = bad;
    r.pass = bad == 0;
    return r;
}

/// Both counterexamples: the shifted-frequency sequence and the naive formulation.
inline SuiteResult counterexamples(const ValidateOptions& o) {
    SuiteResult r{"counterexamples"};
    const SpaceParams s = space(2, 1, o);
    const Counterexample ce = counterexample_sequence(s, {1.0, -0.5}, {0.3, -0.5});
    double near40 = 0.0, best = 1e300;
    for (std::size_t i = 0; i < ce.deviation.size(); ++i) {
        const double gap = std::abs(ce.schedule.entries[i].r - 40.0);
        if (gap < best) {
            best = gap;
            near40 = ce.deviation[i];
        }
    }
    const NaiveDemoReport nd = naive_hypothesis_demo(s, 1.0, 2.0);
    r.cases = 2;
    r.max_error = near40;
    const bool exponent_ok = std::abs(nd.measured_exponent / nd.predicted_exponent - 1.0) <= 0.1;
    r.pass = near40 < 1e-4 && ce.fails_eigen_test && nd.deviation_vanishes && nd.residual_bounded_below &&
             exponent_ok;
    return r;
}

/// Second-order convergence of the small-radius eigenvalue estimate.
inline SuiteResult eigen_estimator(const ValidateOptions& o) {
    SuiteResult r{"eigenvalue_estimator"};
    const SpaceParams s = space(2, 1, o);
    bool ok = true;
    for (cplx l : {cplx(0.0), cplx(1.0), cplx(0.0, 1.3), cplx(0.0, s.rho)}) {
        const auto f = SphericalCombination::single(s, l);
        const cplx target = eigenvalue(s, l);
        const double e1 = std::abs(laplace_eigenvalue_estimate(f, 0.08) - target);
        const double e2 = std::abs(laplace_eigenvalue_estimate(f, 0.04) - target);
        const double e3 = std::abs(laplace_eigenvalue_estimate(f, 0.02) - target);
        ++r.cases;
        r.max_error = std::max(r.max_error, e3);
        if (e1 < 1e-9) continue;  // eigenvalue 0: the estimate is exact up to roundoff
        const double q1 = e1 / e2, q2 = e2 / e3;
        ok = ok && q1 >= 3.0 && q1 <= 5.0 && q2 >= 3.0 && q2 <= 5.0;
    }
    r.pass = ok;
    return r;
}

}  // namespace validation

using SuiteFn = std::function<SuiteResult(const ValidateOptions&)>;

inline std::vector<std::pair<std::string, SuiteFn>> validation_suites() {
    using namespace validation;
    return {{"density_calibration", density},     {"ball_volume_closed_form", ball_volume},
            {"jacobi_ode_oracle", jacobi_oracle}, {"c_function_limit", c_function_limit},
            {"oscillatory_form", oscillatory},    {"zeros_and_tn_windows", zeros},
            {"annulus_ratio_bound", annulus_bound}, {"average_convergence", convergence},
            {"ratio_taxonomy", taxonomy},         {"counterexamples", counterexamples},
            {"eigenvalue_estimator", eigen_estimator}};
}

/// Runs every suite in order; an exception inside a suite counts as a failure.
inline std::vector<SuiteResult> run_validation(const ValidateOptions& o = {}) {
    std::vector<SuiteResult> out;
    for (const auto& [name, fn] : validation_suites()) {
        const auto t0 = std::chrono::steady_clock::now();
        SuiteResult r;
        try {
            r = fn(o);
        } catch (const std::exception& e) {
            r = SuiteResult{name};
            r.note = e.what();
            r.max_error = std::numeric_limits<double>::infinity();
        }
        r.name = name;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace drs
