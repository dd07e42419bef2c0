#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "measures.hpp"
#include "parallel.hpp"
#include "space.hpp"
#include "spherical.hpp"
#include "zeros.hpp"

namespace drs {

enum class LimitKind { Converges, Diverges, Oscillates };

inline const char* to_string(LimitKind k) {
    switch (k) {
        case LimitKind::Converges: return "Converges";
        case LimitKind::Diverges: return "Diverges";
        case LimitKind::Oscillates: return "Oscillates";
    }
    return "?";
}

struct Witness {
    std::string description;
    cplx value;
};

struct LimitVerdict {
    LimitKind kind = LimitKind::Converges;
    std::optional<cplx> limit;
    std::vector<Witness> witnesses;
    struct Diagnostics {
        double tail_variation = 0.0;  // max deviation over the last 20 samples
        double growth_slope = 0.0;    // d mean(log|v|) / d log r over 4 blocks
        double spread = 0.0;          // max |v_i - v_last| / max |v_i|
        std::size_t samples = 0;
        std::string rule;                  // rule-based case label, when one applies
        bool numeric_disagreement = false;  // rule and samples disagree
    } diagnostics;
};

/// Thresholds turning "converges / diverges / oscillates" into decisions.
struct ClassifierTolerance {
    double conv = 1e-6;   // tail deviation counted as converged
    double osc = 1e-3;    // relative spread counted as oscillation
    double slope = 0.5;   // |d log max / d log r| counted as growth or decay
    std::size_t tail = 20;
};

/// Classifies a sampled deviation series v(r) (target value 0).
///   growth slope p of the block means of log|v| against log r:
///     tail max <= conv or p < -slope  -> Converges (to the target)
///     p > slope                       -> Diverges
///     relative spread > osc           -> Oscillates
///     otherwise                       -> Converges to a non-target plateau v_last
inline LimitVerdict classify_series(const std::vector<double>& r, const std::vector<cplx>& v,
                                    const ClassifierTolerance& tol = {}) {
    if (r.size() != v.size() || r.size() < 8) {
        throw InvalidArgument("classify_series needs at least 8 samples");
    }
    LimitVerdict out;
    const std::size_t n = v.size();
    out.diagnostics.samples = n;
    // mean of log|v| over 4 consecutive blocks; robust against samples near zeros
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int blocks = 4;
    for (int b = 0; b < blocks; ++b) {
        const std::size_t lo = n * b / blocks, hi = n * (b + 1) / blocks;
        double m = 0.0, rc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            m += std::log(std::max(std::abs(v[i]), 1e-300));
            rc += r[i];
        }
        const double x = std::log(rc / static_cast<double>(hi - lo));
        const double y = m / static_cast<double>(hi - lo);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double p = (blocks * sxy - sx * sy) / (blocks * sxx - sx * sx);
    out.diagnostics.growth_slope = p;
    double tail = 0.0;
    for (std::size_t i = n - std::min(tol.tail, n); i < n; ++i) tail = std::max(tail, std::abs(v[i]));
    out.diagnostics.tail_variation = tail;
    double vmax = 0.0, spread = 0.0;
    std::size_t imax = 0, imin = 0;
    for (std::size_t i = 0; i < n; ++i) {
        vmax = std::max(vmax, std::abs(v[i]));
        spread = std::max(spread, std::abs(v[i] - v.back()));
        if (v[i].real() > v[imax].real()) imax = i;
        if (v[i].real() < v[imin].real()) imin = i;
    }
    out.diagnostics.spread = vmax > 0.0 ? spread / vmax : 0.0;
    if (tail <= tol.conv || p < -tol.slope) {
        out.kind = LimitKind::Converges;
        out.limit = cplx(0.0);
    } else if (p > tol.slope) {
        out.kind = LimitKind::Diverges;
    } else if (out.diagnostics.spread > tol.osc) {
        out.kind = LimitKind::Oscillates;
        out.witnesses.push_back({"sample with largest real part at r = " + std::to_string(r[imax]), v[imax]});
        out.witnesses.push_back({"sample with smallest real part at r = " + std::to_string(r[imin]), v[imin]});
    } else {
        out.kind = LimitKind::Converges;
        out.limit = v.back();
    }
    return out;
}

// ---- ratio phi_mu / phi_lambda --------------------------------------------

enum class RatioCase { A, B, C, D, E };

inline const char* to_string(RatioCase c) {
    switch (c) {
        case RatioCase::A: return "a";
        case RatioCase::B: return "b";
        case RatioCase::C: return "c";
        case RatioCase::D: return "d";
        case RatioCase::E: return "e";
    }
    return "?";
}

/// Which of the five cases (lambda, mu) falls into.
inline RatioCase ratio_case(cplx lambda, cplx mu) {
    lambda = canonical(lambda);
    mu = canonical(mu);
    if (lambda == mu) throw EqualParameters("lambda and mu coincide up to sign");
    const double a = std::abs(lambda.imag()), b = std::abs(mu.imag());
    if (a > b) return RatioCase::A;
    if (a < b) return RatioCase::B;
    if (lambda == cplx(0.0)) return RatioCase::D;
    if (mu == cplx(0.0)) return RatioCase::E;
    return RatioCase::C;
}

inline LimitKind rule_verdict(RatioCase c) {
    switch (c) {
        case RatioCase::A:
        case RatioCase::D: return LimitKind::Converges;
        case RatioCase::B:
        case RatioCase::E: return LimitKind::Diverges;
        case RatioCase::C: return LimitKind::Oscillates;
    }
    return LimitKind::Converges;
}

inline constexpr double kWellAdmissibleMargin = 0.1;

/// phi_mu(t) / phi_lambda(t) on the step-0.05 grid over [t_max/2, t_max],
/// keeping t where |phi_lambda(t)| is at least 0.1 of its envelope.
inline LimitVerdict classify_ratio_numeric(const SpaceParams& s, cplx lambda, cplx mu,
                                           double t_max = 60.0, const ClassifierTolerance& tol = {}) {
    const RadiusSchedule grid = admissible_grid(s, lambda, AverageKind::Sphere, 0.5 * t_max, t_max,
                                                0.05, 1.0, 1.0, kWellAdmissibleMargin);
    std::vector<double> r;
    for (const auto& e : grid.entries) r.push_back(e.r);
    const auto v = parallel_map(r.size(), [&](std::size_t i) {
        return ratio(spherical_phi_scaled(s, mu, r[i]), spherical_phi_scaled(s, lambda, r[i]));
    });
    return classify_series(r, v, tol);
}

/// Rule-based verdict for phi_mu / phi_lambda, cross-checked against samples.
inline LimitVerdict classify_ratio(const SpaceParams& s, cplx lambda, cplx mu, double t_max = 60.0) {
    const RatioCase c = ratio_case(lambda, mu);
    LimitVerdict numeric = classify_ratio_numeric(s, lambda, mu, t_max);
    LimitVerdict out = numeric;
    out.kind = rule_verdict(c);
    out.limit.reset();
    if (out.kind == LimitKind::Converges) out.limit = cplx(0.0);
    if (out.kind != LimitKind::Oscillates) out.witnesses.clear();
    out.diagnostics.rule = to_string(c);
    out.diagnostics.numeric_disagreement = numeric.kind != out.kind;
    return out;
}

// ---- normalised averages along a schedule ---------------------------------

struct AverageClassification {
    std::vector<double> radii;
    std::vector<double> outer_radii;        // annulus only
    std::vector<double> s_grid;
    std::vector<std::vector<cplx>> values;  // [radius][s]
    std::vector<cplx> target;               // g(s) = (lambda-component of f) phi_lambda(s)
    std::vector<double> sup_deviation;      // sup_s |value - g(s)| per radius
    std::vector<LimitVerdict> per_s;
    LimitVerdict sup;
    bool eigen_checked = false;
    bool eigen_ok = false;
    cplx eigen_estimate{0.0, 0.0};
};

inline std::vector<double> default_s_grid() {
    std::vector<double> s;
    for (int i = 0; i <= 20; ++i) s.push_back(0.1 * i);
    return s;
}

inline bool schedule_matches(ScheduleKind sk, AverageKind ak) {
    switch (sk) {
        case ScheduleKind::Sphere_tn: return ak == AverageKind::Sphere;
        case ScheduleKind::Ball_rn: return ak == AverageKind::Ball;
        case ScheduleKind::Annulus_rjrj: return ak == AverageKind::Annulus;
        case ScheduleKind::AdmissibleGrid: return true;
    }
    return false;
}

/// Evaluates the normalised average of f along the schedule at each s and
/// classifies the deviation from g = (lambda-component of f) phi_lambda.
inline AverageClassification classify_normalized_average(const SphericalCombination& f, cplx lambda,
                                                         AverageKind kind, const RadiusSchedule& sch,
                                                         std::vector<double> s_grid = default_s_grid(),
                                                         const ClassifierTolerance& tol = {}) {
    if (!schedule_matches(sch.kind, kind)) throw InvalidArgument("schedule kind does not match the average");
    if (s_grid.empty()) throw InvalidArgument("empty s grid");
    const SpaceParams& sp = f.space();
    AverageClassification out;
    out.s_grid = s_grid;
    for (const auto& e : sch.entries) {
        out.radii.push_back(e.r);
        out.outer_radii.push_back(e.rp);
    }
    // phi_{mu_i}(s) table
    std::vector<std::vector<cplx>> phi(f.terms().size(), std::vector<cplx>(s_grid.size()));
    for (std::size_t i = 0; i < f.terms().size(); ++i) {
        for (std::size_t j = 0; j < s_grid.size(); ++j) phi[i][j] = spherical_phi(sp, f.terms()[i].mu, s_grid[j]);
    }
    const cplx comp = f.component(lambda);
    for (double s : s_grid) out.target.push_back(comp * spherical_phi(sp, lambda, s));
    out.values = parallel_map(out.radii.size(), [&](std::size_t k) {
        const auto w = average_weights(f, lambda, kind, out.radii[k], out.outer_radii[k]);
        std::vector<cplx> row(s_grid.size(), 0.0);
        for (std::size_t j = 0; j < s_grid.size(); ++j) {
            for (std::size_t i = 0; i < w.size(); ++i) row[j] += w[i] * phi[i][j];
        }
        return row;
    });
    std::vector<cplx> sup_series;
    for (const auto& row : out.values) {
        double m = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) m = std::max(m, std::abs(row[j] - out.target[j]));
        out.sup_deviation.push_back(m);
        sup_series.push_back(m);
    }
    for (std::size_t j = 0; j < s_grid.size(); ++j) {
        std::vector<cplx> dev;
        for (const auto& row : out.values) dev.push_back(row[j] - out.target[j]);
        LimitVerdict v = classify_series(out.radii, dev, tol);
        if (v.limit) v.limit = *v.limit + out.target[j];
        out.per_s.push_back(std::move(v));
    }
    out.sup = classify_series(out.radii, sup_series, tol);
    if (out.sup.kind == LimitKind::Converges && out.sup.limit && *out.sup.limit == cplx(0.0) &&
        comp != cplx(0.0)) {
        const auto g = SphericalCombination::single(sp, lambda, comp);
        out.eigen_estimate = laplace_eigenvalue_richardson(g);
        out.eigen_checked = true;
        out.eigen_ok = std::abs(out.eigen_estimate - eigenvalue(sp, lambda)) <= 1e-3;
    }
    return out;
}

/// Normalised averages of a radial profile at the base point along the schedule,
/// classified against the target 0.
inline AverageClassification classify_profile_average(const RadialProfile& f, const SpaceParams& sp,
                                                      cplx lambda, AverageKind kind,
                                                      const RadiusSchedule& sch,
                                                      const ClassifierTolerance& tol = {}) {
    if (!schedule_matches(sch.kind, kind)) throw InvalidArgument("schedule kind does not match the average");
    AverageClassification out;
    out.s_grid = {0.0};
    out.target = {0.0};
    for (const auto& e : sch.entries) {
        out.radii.push_back(e.r);
        out.outer_radii.push_back(e.rp);
    }
    out.values = parallel_map(out.radii.size(), [&](std::size_t k) {
        return std::vector<cplx>{radial_avg_normalized_at_e(f, sp, lambda, kind, out.radii[k], out.outer_radii[k])};
    });
    std::vector<cplx> dev;
    for (const auto& row : out.values) {
        out.sup_deviation.push_back(std::abs(row[0]));
        dev.push_back(row[0]);
    }
    out.per_s.push_back(classify_series(out.radii, dev, tol));
    out.sup = classify_series(out.radii, std::vector<cplx>(out.sup_deviation.begin(), out.sup_deviation.end()), tol);
    return out;
}

/// Least-squares slope of log(dev) against r over [lo, hi].
inline double decay_exponent(const std::vector<double>& r, const std::vector<double>& dev, double lo,
                             double hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] < lo || r[i] > hi || !(dev[i] > 0.0)) continue;
        const double y = std::log(dev[i]);
        sx += r[i];
        sy += y;
        sxx += r[i] * r[i];
        sxy += r[i] * y;
        ++n;
    }
    if (n < 2) throw InvalidArgument("decay_exponent needs two samples in range");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---- counterexamples ------------------------------------------------------

struct Counterexample {
    RadiusSchedule schedule;
    cplx mu;
    cplx factor;                 // limit profile is factor * phi_mu
    std::vector<double> deviation;  // sup_s |f * sigma^lambda_{r_n}(s) - factor phi_mu(s)| per entry
    cplx eigen_estimate;         // estimate of (Laplacian g / g)(e) for the limit profile
    double eigen_margin;         // |estimate + (lambda^2 + rho^2)| / |lambda^2 + rho^2|
    bool fails_eigen_test;       // margin > 0.1
};

namespace detail {

inline void finish_counterexample(const SpaceParams& sp, cplx lambda, Counterexample& ce) {
    const auto f = SphericalCombination::single(sp, ce.mu);
    const auto s_grid = default_s_grid();
    for (const auto& e : ce.schedule.entries) {
        double m = 0.0;
        for (double s : s_grid) {
            m = std::max(m, std::abs(sphere_avg_normalized(f, lambda, e.r, s) -
                                     ce.factor * spherical_phi(sp, ce.mu, s)));
        }
        ce.deviation.push_back(m);
    }
    const auto g = SphericalCombination::single(sp, ce.mu, ce.factor);
    ce.eigen_estimate = laplace_eigenvalue_richardson(g);
    const cplx target = eigenvalue(sp, lambda);
    ce.eigen_margin = std::abs(ce.eigen_estimate - target) / std::abs(target);
    ce.fails_eigen_test = ce.eigen_margin > 0.1;
}

}  // namespace detail

/// Sequence r_n along which the normalised sphere average of f = phi_mu converges
/// to a multiple of phi_mu, which is not an eigenfunction for -(lambda^2 + rho^2).
///   Im lambda = Im mu < 0 and lambda - mu > 0: r_n = 2 n pi / (lambda - mu), limit c(mu)/c(lambda).
///   lambda, mu real: crests t_n of phi_lambda whose ratio phi_mu/phi_lambda lies
///   within 1e-4 of the value L at the last crest below t_max.
inline Counterexample counterexample_sequence(const SpaceParams& sp, cplx lambda, cplx mu, int count = 8,
                                              double t_max = 2000.0) {
    if (count <= 0) throw InvalidArgument("count must be positive");
    Counterexample ce;
    ce.mu = mu;
    ce.schedule.kind = ScheduleKind::Sphere_tn;
    ce.schedule.lambda = lambda;
    if (lambda.imag() < 0.0) {
        const cplx gap = lambda - mu;
        if (gap.imag() != 0.0 || !(gap.real() > 0.0)) {
            throw InvalidArgument("counterexample needs Im mu = Im lambda and Re mu < Re lambda");
        }
        ce.factor = spherical_c(sp, mu) / spherical_c(sp, lambda);
        ce.schedule.construction = "r_n = 2 n pi / (lambda - mu)";
        for (int n = 1; n <= count; ++n) ce.schedule.entries.push_back({2.0 * n * std::numbers::pi / gap.real()});
    } else if (lambda.imag() == 0.0 && mu.imag() == 0.0 && lambda.real() != 0.0 && mu.real() != 0.0) {
        if (canonical(lambda) == canonical(mu)) throw EqualParameters("lambda and mu coincide up to sign");
        const double lam = std::abs(lambda.real());
        const double theta = std::arg(spherical_c(sp, lam));
        auto crest = [&](long n) { return (2.0 * n * std::numbers::pi - theta) / lam; };
        auto value = [&](double t) {
            return ratio(spherical_phi_scaled(sp, mu, t), spherical_phi_scaled(sp, lambda, t));
        };
        const long last = static_cast<long>(std::floor((lam * t_max + theta) / (2.0 * std::numbers::pi)));
        if (last < count) throw SearchExhausted("t_max admits too few crests");
        const cplx L = value(crest(last));
        if (std::abs(L) < 1e-3) throw SearchExhausted("ratio at the last crest is too close to zero");
        std::vector<double> hits;
        for (long n = last; n >= 1 && static_cast<int>(hits.size()) < count; --n) {
            const double t = crest(n);
            if (t < 10.0) break;
            if (std::abs(value(t) - L) <= 1e-4) hits.push_back(t);
        }
        if (static_cast<int>(hits.size()) < count) {
            throw SearchExhausted("no stabilising subsequence below t_max; enlarge t_max");
        }
        std::reverse(hits.begin(), hits.end());
        for (double t : hits) ce.schedule.entries.push_back({t});
        ce.factor = L;
        ce.schedule.construction = "crests of phi_lambda where phi_mu/phi_lambda is near L";
    } else {
        throw InvalidArgument("counterexample needs Im lambda < 0 or real nonzero lambda and mu");
    }
    for (auto& e : ce.schedule.entries) e.verified = true;
    detail::finish_counterexample(sp, lambda, ce);
    return ce;
}

struct NaiveDemoReport {
    std::vector<double> radii;
    std::vector<double> deviation;  // sup_{s <= 2} |M_r f(s) - phi_lambda(r) f(s)|
    double measured_exponent;       // from the envelope of the deviation over [10, 30]
    double predicted_exponent;      // max(|Im lambda|, |Im mu|) - rho
    cplx eigen_residual;            // (Laplacian f + (lambda^2 + rho^2) f)(e), measured
    cplx eigen_residual_exact;      // lambda^2 - mu^2
    bool deviation_vanishes;
    bool residual_bounded_below;
};

/// For f = phi_lambda + phi_mu, M_r f - phi_lambda(r) f tends to zero although f
/// is not an eigenfunction.
inline NaiveDemoReport naive_hypothesis_demo(const SpaceParams& sp, cplx lambda, cplx mu) {
    if (!(std::abs(lambda.imag()) < sp.rho) || !(std::abs(mu.imag()) < sp.rho)) {
        throw InvalidArgument("naive hypothesis demo needs |Im lambda|, |Im mu| < rho");
    }
    if (canonical(lambda) == canonical(mu)) throw EqualParameters("lambda and mu coincide up to sign");
    const SphericalCombination f(sp, {{lambda, 1.0}, {mu, 1.0}});
    const auto s_grid = default_s_grid();
    std::vector<cplx> phi_mu_s;
    for (double s : s_grid) phi_mu_s.push_back(spherical_phi(sp, mu, s));
    double sup_phi_mu = 0.0;
    for (auto v : phi_mu_s) sup_phi_mu = std::max(sup_phi_mu, std::abs(v));
    NaiveDemoReport rep;
    // M_r f - phi_lambda(r) f = (phi_mu(r) - phi_lambda(r)) phi_mu
    auto dev = [&](double r) {
        return std::abs(spherical_phi(sp, mu, r) - spherical_phi(sp, lambda, r)) * sup_phi_mu;
    };
    for (double r = 1.0; r <= 40.0 + 1e-9; r += 1.0) {
        rep.radii.push_back(r);
        rep.deviation.push_back(dev(r));
    }
    // envelope: maximum over one period of the slower oscillation
    double slow = 0.0;
    for (double w : {std::abs(lambda.real()), std::abs(mu.real())}) {
        if (w > 0.0) slow = slow > 0.0 ? std::min(slow, w) : w;
    }
    const double period = slow > 0.0 ? 2.0 * std::numbers::pi / slow : 1.0;
    auto envelope = [&](double r) {
        double m = 0.0;
        for (int i = 0; i <= 400; ++i) m = std::max(m, dev(r + period * i / 400.0));
        return m;
    };
    rep.measured_exponent = (std::log(envelope(30.0)) - std::log(envelope(10.0))) / 20.0;
    rep.predicted_exponent = std::max(std::abs(lambda.imag()), std::abs(mu.imag())) - sp.rho;
    rep.eigen_residual = (laplace_eigenvalue_richardson(f) - eigenvalue(sp, lambda)) * f.at_origin();
    rep.eigen_residual_exact = lambda * lambda - mu * mu;
    rep.deviation_vanishes = dev(30.0) < 1e-6 * dev(5.0) ||
                             envelope(30.0) < 1e-6 * envelope(5.0);
    rep.residual_bounded_below = std::abs(rep.eigen_residual) >= 0.1 * std::abs(rep.eigen_residual_exact) &&
                                 std::abs(rep.eigen_residual_exact) > 0.0;
    return rep;
}

struct CrestScan {
    double scale;                     // C_mu / C_lambda
    std::vector<long> n;              // crest indices
    std::vector<double> t;            // t_n = (2 n pi - theta_lambda) / lambda
    std::vector<double> value;        // (phi_mu/phi_lambda)(t_n) / scale
    double lo, hi;                    // range of value
    std::size_t clusters;             // distinct values after rounding to 1e-3
};

namespace detail {

inline double crest(double lambda, double theta, long n) {
    return (2.0 * static_cast<double>(n) * std::numbers::pi - theta) / lambda;
}

inline long first_crest_after(double lambda, double theta, double t0) {
    long n = 1;
    while (crest(lambda, theta, n) < t0) ++n;
    return n;
}

inline void check_real_pair(double lambda, double mu) {
    if (!(lambda != 0.0) || !(mu != 0.0) || canonical(lambda) == canonical(mu)) {
        throw InvalidArgument("needs distinct nonzero real lambda, mu");
    }
}

}  // namespace detail

/// Scaled ratio values along the first `count` crests of phi_lambda beyond t = 10.
inline CrestScan crest_ratio_scan(const SpaceParams& sp, double lambda, double mu, long count = 2000) {
    detail::check_real_pair(lambda, mu);
    lambda = std::abs(lambda);
    mu = std::abs(mu);
    const double theta = std::arg(spherical_c(sp, lambda));
    CrestScan sc;
    sc.scale = std::abs(spherical_c(sp, mu)) / std::abs(spherical_c(sp, lambda));
    const long n0 = detail::first_crest_after(lambda, theta, 10.0);
    sc.value = parallel_map(static_cast<std::size_t>(count), [&](std::size_t i) {
        const double t = detail::crest(lambda, theta, n0 + static_cast<long>(i));
        return ratio(spherical_phi_scaled(sp, mu, t), spherical_phi_scaled(sp, lambda, t)).real() / sc.scale;
    });
    std::vector<double> keys;
    for (long i = 0; i < count; ++i) {
        sc.n.push_back(n0 + i);
        sc.t.push_back(detail::crest(lambda, theta, n0 + i));
        keys.push_back(std::round(sc.value[i] * 1e3));
    }
    sc.lo = *std::min_element(sc.value.begin(), sc.value.end());
    sc.hi = *std::max_element(sc.value.begin(), sc.value.end());
    std::sort(keys.begin(), keys.end());
    sc.clusters = static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
    return sc;
}

struct OscillationWitness {
    std::vector<long> indices;   // n with |value_n - target| < 1e-2
    std::vector<double> radii;   // t_n for those indices
    std::vector<double> values;  // scaled ratio values at those t_n
    CrestScan coverage;          // statistics over the scanned prefix
    long scanned;
};

/// Along the crests t_n = (2 n pi - theta_lambda)/lambda, finds n where
/// (phi_mu/phi_lambda)(t_n) / (C_mu/C_lambda) is within 1e-2 of target.
inline OscillationWitness oscillation_witness(const SpaceParams& sp, double lambda, double mu,
                                              double target, long n_max = 100000,
                                              std::size_t want = 3, long prefix = 2000) {
    detail::check_real_pair(lambda, mu);
    OscillationWitness w;
    w.coverage = crest_ratio_scan(sp, lambda, mu, prefix);
    lambda = std::abs(lambda);
    mu = std::abs(mu);
    const double theta = std::arg(spherical_c(sp, lambda));
    const long n0 = w.coverage.n.front();
    long n = n0;
    for (; n < n0 + n_max && w.indices.size() < want; ++n) {
        const double v = n < n0 + prefix
                             ? w.coverage.value[n - n0]
                             : ratio(spherical_phi_scaled(sp, mu, detail::crest(lambda, theta, n)),
                                     spherical_phi_scaled(sp, lambda, detail::crest(lambda, theta, n)))
                                       .real() / w.coverage.scale;
        if (std::abs(v - target) < 1e-2) {
            w.indices.push_back(n);
            w.radii.push_back(detail::crest(lambda, theta, n));
            w.values.push_back(v);
        }
    }
    w.scanned = n - n0;
    if (w.indices.empty()) throw SearchExhausted("no crest came within 1e-2 of the target");
    return w;
}

// ---- the five-case table and random instances ------------------------------

struct CasePair {
    RatioCase which;
    cplx lambda;
    cplx mu;
};

/// Representative pairs for the five cases.
inline std::vector<CasePair> table6_pairs() {
    return {{RatioCase::A, {0.0, 1.0}, 1.0},
            {RatioCase::B, 1.0, {0.0, 1.0}},
            {RatioCase::C, 1.0, 2.0},
            {RatioCase::D, 0.0, 1.0},
            {RatioCase::E, 1.0, 0.0}};
}

/// Random (lambda, mu) in the given case: real parts in [1, 3] (or zero where
/// the case demands), imaginary parts in [-1.5, 0] with gaps of at least 0.2.
inline CasePair random_pair(RatioCase which, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(1.0, 3.0), im(-1.5, 0.0), coin(0.0, 1.0);
    auto pick_re = [&]() { return coin(rng) < 0.3 ? 0.0 : re(rng); };
    for (;;) {
        cplx l, m;
        switch (which) {
            case RatioCase::A:
            case RatioCase::B: {
                double a = im(rng), b = im(rng);
                if (std::abs(std::abs(a) - std::abs(b)) < 0.2) continue;
                if (std::abs(a) < std::abs(b)) std::swap(a, b);  // |a| > |b|
                l = {pick_re(), a};
                m = {pick_re(), b};
                if (which == RatioCase::B) std::swap(l, m);
                break;
            }
            case RatioCase::C: {
                const double a = coin(rng) < 0.5 ? 0.0 : im(rng);
                l = {re(rng), a};
                m = {re(rng), a};
                if (a != 0.0 && coin(rng) < 0.3) l = {0.0, a};
                if (std::abs(l.real() - m.real()) < 0.2) continue;
                break;
            }
            case RatioCase::D:
                l = 0.0;
                m = re(rng);
                break;
            case RatioCase::E:
                l = re(rng);
                m = 0.0;
                break;
        }
        if (canonical(l) == canonical(m)) continue;
        if (ratio_case(l, m) != which) continue;
        return {which, l, m};
    }
}

}  // namespace drs
