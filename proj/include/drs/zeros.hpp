#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "measures.hpp"
#include "parallel.hpp"
#include "scaled.hpp"
#include "space.hpp"
#include "spherical.hpp"

namespace drs {

/// True iff the denominator of the chosen normalised average clears the guard.
inline bool admissible(const SpaceParams& s, cplx lambda, AverageKind kind, double r,
                       double rp = std::numeric_limits<double>::quiet_NaN()) {
    if (!(r > 0.0)) return false;
    switch (kind) {
        case AverageKind::Sphere: return phi_admissible(s, lambda, r);
        case AverageKind::Ball: return vball_admissible(s, lambda, r);
        case AverageKind::Annulus: return rp > r && vannulus_admissible(s, lambda, r, rp);
    }
    return false;
}

inline bool admissible(const SpaceParams& s, cplx lambda, double r) {
    return admissible(s, lambda, AverageKind::Sphere, r);
}

inline bool admissible(const SpaceParams& s, cplx lambda, double r, double rp) {
    return admissible(s, lambda, AverageKind::Annulus, r, rp);
}

// ---- zero finding --------------------------------------------------------

namespace detail {

/// Sign-change zeros of u on [a, b], swept at step about pi/(20 lambda) and
/// cross-checked by a sweep at half that step.
template <class U>
std::vector<double> sweep_zeros(U&& u, double lambda, double a, double b) {
    const double h = std::numbers::pi / (20.0 * lambda);
    const std::size_t steps = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil((b - a) / h)));
    const std::size_t fine = 2 * steps;
    std::vector<double> xs(fine + 1), us(fine + 1);
    for (std::size_t i = 0; i <= fine; ++i) {
        xs[i] = i == fine ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(fine);
        us[i] = u(xs[i]);
    }
    // zero counts as non-negative throughout, so brackets and counts agree
    auto up = [](double v) { return v >= 0.0; };
    auto count_changes = [&](std::size_t stride) {
        std::size_t n = 0;
        for (std::size_t i = 0; i + stride <= fine; i += stride) n += up(us[i]) != up(us[i + stride]);
        return n;
    };
    if (count_changes(1) != count_changes(2)) {
        throw BracketingFailure("sign sweeps at two resolutions disagree on [" + std::to_string(a) +
                                ", " + std::to_string(b) + "]");
    }
    std::vector<double> zeros;
    for (std::size_t i = 0; i < fine; ++i) {
        double lo = xs[i], hi = xs[i + 1];
        double ulo = us[i], uhi = us[i + 1];
        if (up(ulo) == up(uhi)) continue;
        const double eps = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi);
        for (int it = 0; it < 200 && hi - lo > eps; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double um = u(mid);
            if (up(um) == up(ulo)) {
                lo = mid;
                ulo = um;
            } else {
                hi = mid;
                uhi = um;
            }
        }
        double z = 0.5 * (lo + hi);
        if (uhi != ulo) {
            const double sec = lo - ulo * (hi - lo) / (uhi - ulo);
            if (sec >= lo && sec <= hi) z = sec;
        }
        zeros.push_back(z);
    }
    return zeros;
}

inline void require_positive_real(double lambda, const char* what) {
    if (!(lambda > 0.0)) throw InvalidArgument(std::string(what) + " requires real lambda > 0");
}

}  // namespace detail

/// phi_lambda(t) times the weight that removes its decay; O(1) and oscillating.
inline double phi_normalized(const SpaceParams& s, double lambda, double t) {
    const Scaled p = spherical_phi_scaled(s, lambda, t);
    return p.relative_to(-log_oscillation_weight(s.alpha, s.beta, t)).real();
}

/// V_r^lambda divided by its envelope.
inline double vball_normalized(const SpaceParams& s, double lambda, double r) {
    return v_ball_closed_scaled(s, lambda, r).relative_to(log_vball_envelope(s, lambda, r)).real();
}

inline std::vector<double> zeros_phi(const SpaceParams& s, double lambda, double a, double b) {
    detail::require_positive_real(lambda, "zeros_phi");
    if (!(a > 0.0) || !(b > a)) throw InvalidArgument("zeros_phi requires 0 < a < b");
    return detail::sweep_zeros([&](double t) { return phi_normalized(s, lambda, t); }, lambda, a, b);
}

inline std::vector<double> zeros_vball(const SpaceParams& s, double lambda, double a, double b) {
    detail::require_positive_real(lambda, "zeros_vball");
    if (!(a > 0.0) || !(b > a)) throw InvalidArgument("zeros_vball requires 0 < a < b");
    return detail::sweep_zeros([&](double r) { return vball_normalized(s, lambda, r); }, lambda, a, b);
}

// ---- radius schedules ----------------------------------------------------

enum class ScheduleKind { Sphere_tn, Ball_rn, Annulus_rjrj, AdmissibleGrid };

inline const char* to_string(ScheduleKind k) {
    switch (k) {
        case ScheduleKind::Sphere_tn: return "Sphere_tn";
        case ScheduleKind::Ball_rn: return "Ball_rn";
        case ScheduleKind::Annulus_rjrj: return "Annulus_rjrj";
        case ScheduleKind::AdmissibleGrid: return "AdmissibleGrid";
    }
    return "?";
}

struct Interval {
    double lo;
    double hi;
};

struct ScheduleEntry {
    double r;
    double rp = std::numeric_limits<double>::quiet_NaN();  // annulus outer radius
    double ratio_bound = 0.0;                              // measured window ratio (annulus/ball)
    bool verified = false;
};

/// An admissible sequence of radii (or radius pairs) with validity windows of
/// half-width delta_prime and the zero neighbourhoods they avoid.
struct RadiusSchedule {
    ScheduleKind kind = ScheduleKind::AdmissibleGrid;
    cplx lambda{0.0, 0.0};
    std::vector<ScheduleEntry> entries;
    double delta_prime = 0.0;
    std::vector<Interval> exclusion;
    double d = 0.0;
    double delta = 0.0;
    double achieved_bound = 0.0;
    int start_index = 0;
    std::string construction;  // short description of the rule used
};

/// Throws ConstructionFailure when the schedule breaks its invariants.
inline void check_schedule(const RadiusSchedule& sch) {
    const auto& e = sch.entries;
    for (std::size_t i = 1; i < e.size(); ++i) {
        if (!(e[i].r > e[i - 1].r)) throw ConstructionFailure("schedule radii are not increasing");
    }
    if (e.size() >= 2 && !(e.back().r > e.front().r)) throw ConstructionFailure("schedule does not grow");
    auto overlaps = [&](double lo, double hi) {
        for (const auto& x : sch.exclusion) {
            if (lo < x.hi && x.lo < hi) return true;
        }
        return false;
    };
    for (const auto& en : e) {
        const double c = sch.kind == ScheduleKind::Annulus_rjrj ? en.rp : en.r;
        if (overlaps(c - sch.delta_prime, c + sch.delta_prime)) {
            throw ConstructionFailure("a schedule window meets an excluded zero neighbourhood");
        }
        if (sch.kind == ScheduleKind::Annulus_rjrj) {
            const double lo = en.rp - en.r - 2.0 * sch.delta_prime;
            const double hi = en.rp - en.r + 2.0 * sch.delta_prime;
            if (!(lo > sch.d && hi < sch.d + sch.delta)) {
                throw ConstructionFailure("annulus window widths leave (d, d + delta)");
            }
        }
    }
}

namespace detail {

inline std::vector<Interval> neighbourhoods(const std::vector<double>& zeros, double radius) {
    std::vector<Interval> out;
    out.reserve(zeros.size());
    for (double z : zeros) out.push_back({z - radius, z + radius});
    return out;
}

inline constexpr double kExclusionRadius = 1e-6;

}  // namespace detail

/// Radii t_n = (2 n pi - theta)/lambda where phi_lambda is positive, with
/// windows of half-width delta' = min(pi/(3 lambda), delta_2).
inline RadiusSchedule tn_sequence(const SpaceParams& s, double lambda, int count) {
    detail::require_positive_real(lambda, "tn_sequence");
    if (count <= 0) throw InvalidArgument("count must be positive");
    const cplx c = spherical_c(s, lambda);
    const double C = 2.0 * std::abs(c);
    const double theta = std::arg(c);
    auto residual = [&](double t) {
        return spherical_phi_scaled(s, lambda, t).relative_to(-s.rho * t).real() -
               C * std::cos(lambda * t + theta);
    };
    // t0: last grid point where |E| >= C/2
    double t0 = 0.0;
    for (double t = 0.01; t <= 60.0; t += 0.01) {
        if (std::abs(residual(t)) >= 0.5 * C) t0 = t;
    }
    // delta_2: first zero of phi_lambda
    auto phi = [&](double t) { return spherical_phi_scaled(s, lambda, t).mantissa.real(); };
    double lo = 0.0, hi = 0.0;
    for (double t = 1e-3;; t += 1e-3) {
        if (t > 1000.0) throw ConstructionFailure("no zero of phi_lambda found near the origin");
        if (phi(t) <= 0.0) {
            lo = t - 1e-3;
            hi = t;
            break;
        }
    }
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (phi(mid) > 0.0 ? lo : hi) = mid;
    }
    const double delta1 = std::numbers::pi / (3.0 * lambda);
    const double delta2 = lo;
    RadiusSchedule sch;
    sch.kind = ScheduleKind::Sphere_tn;
    sch.lambda = lambda;
    sch.delta_prime = std::min(delta1, delta2);
    sch.construction = "t_n = (2 n pi - theta)/lambda beyond t0 = " + std::to_string(t0);
    int n = static_cast<int>(std::ceil((lambda * (t0 + sch.delta_prime) + theta) / (2.0 * std::numbers::pi)));
    n = std::max(n, 1);
    while ((2.0 * n * std::numbers::pi - theta) / lambda - sch.delta_prime <= t0) ++n;
    sch.start_index = n;
    for (int i = 0; i < count; ++i) {
        sch.entries.push_back({(2.0 * (n + i) * std::numbers::pi - theta) / lambda});
    }
    const double first = sch.entries.front().r - sch.delta_prime;
    const double last = sch.entries.back().r + sch.delta_prime;
    sch.exclusion = detail::neighbourhoods(zeros_phi(s, lambda, std::max(first - 1.0, 1e-3), last + 1.0),
                                           detail::kExclusionRadius);
    const auto ok = parallel_map(sch.entries.size(), [&](std::size_t i) -> int {
        const double t = sch.entries[i].r;
        for (int j = 0; j <= 32; ++j) {
            const double y = t - sch.delta_prime + 2.0 * sch.delta_prime * j / 32.0;
            if (!(phi(y) > 0.0)) return 0;
        }
        return 1;
    });
    for (std::size_t i = 0; i < ok.size(); ++i) {
        if (!ok[i]) throw ConstructionFailure("phi_lambda is not positive on a t_n window");
        sch.entries[i].verified = true;
    }
    check_schedule(sch);
    return sch;
}

namespace detail {

/// Max over the 3x3 grid of window corners and centres of |V_{s,t} / V_{r,r'}|;
/// negative if some V_{s,t} fails the guard or the lower bound |V_t| > |V_s|
/// (when required) does not hold.
inline double annulus_window_ratio(const SpaceParams& sp, cplx lambda, double r, double rp,
                                   double dp, bool require_lower_bound) {
    if (!vannulus_admissible(sp, lambda, r, rp)) return -1.0;
    const Scaled base = v_annulus_scaled(sp, lambda, r, rp);
    double worst = 0.0;
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            const double s = r + i * dp;
            const double t = rp + j * dp;
            if (!vannulus_admissible(sp, lambda, s, t)) return -1.0;
            if (require_lower_bound) {
                if (!(v_ball_closed_scaled(sp, lambda, t).log_abs() >
                      v_ball_closed_scaled(sp, lambda, s).log_abs())) {
                    return -1.0;
                }
            }
            worst = std::max(worst, std::abs(ratio(v_annulus_scaled(sp, lambda, s, t), base)));
        }
    }
    return worst;
}

}  // namespace detail

/// Radius pairs (r_j, r'_j) with d < r'_j - r_j < d + delta whose window ratios
/// |V_{s,t} / V_{r_j,r'_j}| stay bounded.
inline RadiusSchedule annulus_sequence(const SpaceParams& sp, cplx lambda, double d, double delta,
                                       int count) {
    if (!(d > 0.0) || !(delta > 0.0)) throw InvalidArgument("annulus_sequence requires d, delta > 0");
    if (count <= 0) throw InvalidArgument("count must be positive");
    lambda = canonical(lambda);
    const Regime regime = classify(lambda);
    RadiusSchedule sch;
    sch.kind = ScheduleKind::Annulus_rjrj;
    sch.lambda = lambda;
    sch.d = d;
    sch.delta = delta;
    constexpr int kMaxStart = 400;

    if (regime != Regime::RealNonzero) {
        // r_j = j, r'_j = j + d + delta/2
        sch.delta_prime = delta / 5.0;
        sch.construction = "r_j = j, r'_j = j + d + delta/2";
        const bool lower = regime != Regime::ImaginaryAxis;
        double previous = -1.0;
        int start = -1;
        for (int j = 1; j <= kMaxStart; ++j) {
            const double c = detail::annulus_window_ratio(sp, lambda, j, j + d + 0.5 * delta,
                                                          sch.delta_prime, lower);
            if (c > 0.0 && previous > 0.0 && std::abs(c - previous) <= 1e-4 * c) {
                start = j;
                break;
            }
            previous = c;
        }
        if (start < 0) throw ConstructionFailure("annulus ratio never stabilised");
        sch.start_index = start;
        for (int i = 0; i < count; ++i) {
            const double r = start + i;
            sch.entries.push_back({r, r + d + 0.5 * delta});
        }
        const auto bounds = parallel_map(sch.entries.size(), [&](std::size_t i) {
            return detail::annulus_window_ratio(sp, lambda, sch.entries[i].r, sch.entries[i].rp,
                                                sch.delta_prime, lower);
        });
        for (std::size_t i = 0; i < bounds.size(); ++i) {
            if (!(bounds[i] > 0.0) || !std::isfinite(bounds[i])) {
                throw ConstructionFailure("annulus window ratio could not be verified");
            }
            sch.entries[i].ratio_bound = bounds[i];
            sch.entries[i].verified = true;
            sch.achieved_bound = std::max(sch.achieved_bound, bounds[i]);
        }
        check_schedule(sch);
        return sch;
    }

    // real lambda: r_j at sin(lambda r_j + theta') = 1, r'_j = r_j + delta_1
    const double lam = lambda.real();
    const OscillatoryForm form = oscillatory_constants(sp.jacobi_prime(), 2.0 * lam);
    const double theta = form.phase;
    // delta_1: midpoint of the component of {|sin(lam x)| >= 0.1} in (d, d+delta)
    // that contains the maximum of |sin|
    const int grid = 20000;
    std::vector<char> feasible(grid + 1);
    int best = -1;
    double best_val = -1.0;
    for (int i = 0; i <= grid; ++i) {
        const double x = d + delta * i / grid;
        const double v = std::abs(std::sin(lam * x));
        feasible[i] = (i > 0 && i < grid && v >= 0.1) ? 1 : 0;
        if (feasible[i] && v > best_val) {
            best_val = v;
            best = i;
        }
    }
    if (best < 0) throw ConstructionFailure("no delta_1 in (d, d + delta) with |sin(lambda delta_1)| >= 0.1");
    int a = best, b = best;
    while (a > 0 && feasible[a - 1]) --a;
    while (b < grid && feasible[b + 1]) ++b;
    const double delta1 = d + delta * 0.5 * (a + b) / grid;
    const double sin1 = std::abs(std::sin(lam * delta1));
    const double delta2 = sin1 / (2.0 * lam);
    double min_cos = 1.0;
    for (int i = 0; i <= 200; ++i) {
        const double v = -delta2 + 2.0 * delta2 * i / 200.0;
        min_cos = std::min(min_cos, std::abs(std::sin(lam * (delta1 + v))));
    }
    const double xi = 0.5 * min_cos;
    const double D2 = std::exp(sp.rho * delta2);
    const double delta3 = xi / (4.0 * D2 * lam);
    sch.delta_prime = 0.9 * std::min({0.5 * (delta1 - d), 0.5 * (delta + d - delta1), delta2, delta3});
    sch.construction = "r_j at crests of sin(lambda r + theta'), r'_j = r_j + " + std::to_string(delta1);

    auto rj = [&](int j) { return (0.5 * std::numbers::pi + 2.0 * std::numbers::pi * j - theta) / lam; };
    auto eps = [&](double r) { return std::abs(oscillatory_residual(sp.jacobi_prime(), 2.0 * lam, 0.5 * r)) / form.amplitude; };
    int start = -1;
    for (int j = 0; j <= kMaxStart * 10; ++j) {
        const double r = rj(j);
        if (r - sch.delta_prime <= 0.0) continue;
        bool small = true;
        for (double base : {r, r + delta1}) {
            for (int i = -1; i <= 1 && small; ++i) small = eps(base + i * sch.delta_prime) <= xi / 8.0;
        }
        if (small) {
            start = j;
            break;
        }
    }
    if (start < 0) throw ConstructionFailure("oscillatory remainder never dropped below xi/8");
    sch.start_index = start;
    for (int i = 0; i < count; ++i) {
        const double r = rj(start + i);
        sch.entries.push_back({r, r + delta1});
    }
    const auto bounds = parallel_map(sch.entries.size(), [&](std::size_t i) {
        return detail::annulus_window_ratio(sp, lambda, sch.entries[i].r, sch.entries[i].rp,
                                            sch.delta_prime, false);
    });
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (!(bounds[i] > 0.0) || !std::isfinite(bounds[i])) {
            throw ConstructionFailure("annulus window ratio could not be verified");
        }
        sch.entries[i].ratio_bound = bounds[i];
        sch.entries[i].verified = true;
        sch.achieved_bound = std::max(sch.achieved_bound, bounds[i]);
    }
    // outer windows must avoid the zeros of V_r
    const double lo = sch.entries.front().rp - 1.0;
    const double hi = sch.entries.back().rp + 1.0;
    sch.exclusion = detail::neighbourhoods(zeros_vball(sp, lam, std::max(lo, 1e-3), hi),
                                           detail::kExclusionRadius);
    check_schedule(sch);
    return sch;
}

/// Radii r_n with a window of half-width delta on which |V_r / V_s| stays bounded.
inline RadiusSchedule ball_sequence(const SpaceParams& sp, cplx lambda, int count) {
    if (count <= 0) throw InvalidArgument("count must be positive");
    lambda = canonical(lambda);
    RadiusSchedule sch;
    sch.kind = ScheduleKind::Ball_rn;
    sch.lambda = lambda;
    const bool real = classify(lambda) == Regime::RealNonzero;
    std::function<double(int)> radius;
    if (real) {
        const double lam = lambda.real();
        const OscillatoryForm form = oscillatory_constants(sp.jacobi_prime(), 2.0 * lam);
        sch.delta_prime = std::min(std::numbers::pi / (4.0 * lam), 0.5);
        radius = [lam, theta = form.phase](int n) { return (n * std::numbers::pi - theta) / lam; };
        sch.construction = "r_n at crests of cos(lambda r + theta')";
    } else {
        sch.delta_prime = 0.25;
        radius = [](int n) { return static_cast<double>(n); };
        sch.construction = "r_n = n";
    }
    // window ratio max|V| / min|V| over 17 samples; negative if a sample fails the guard
    auto window_ratio = [&](double r) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (int j = 0; j <= 16; ++j) {
            const double x = r - sch.delta_prime + 2.0 * sch.delta_prime * j / 16.0;
            if (!vball_admissible(sp, lambda, x)) return -1.0;
            const double la = v_ball_closed_scaled(sp, lambda, x).log_abs();
            lo = std::min(lo, la);
            hi = std::max(hi, la);
        }
        return std::exp(hi - lo);
    };
    int start = -1;
    for (int n = 1; n <= 4000; ++n) {
        const double r = radius(n);
        if (r - sch.delta_prime <= 0.5) continue;
        if (real) {
            const double lam = lambda.real();
            const double e = std::abs(oscillatory_residual(sp.jacobi_prime(), 2.0 * lam, 0.5 * r)) /
                             oscillatory_constants(sp.jacobi_prime(), 2.0 * lam).amplitude;
            if (e > 0.1) continue;
        }
        if (window_ratio(r) > 0.0) {
            start = n;
            break;
        }
    }
    if (start < 0) throw ConstructionFailure("no admissible ball window found");
    sch.start_index = start;
    for (int i = 0; i < count; ++i) sch.entries.push_back({radius(start + i)});
    const auto bounds = parallel_map(sch.entries.size(), [&](std::size_t i) { return window_ratio(sch.entries[i].r); });
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (!(bounds[i] > 0.0) || !std::isfinite(bounds[i])) {
            throw ConstructionFailure("ball window ratio could not be verified");
        }
        sch.entries[i].ratio_bound = bounds[i];
        sch.entries[i].verified = true;
        sch.achieved_bound = std::max(sch.achieved_bound, bounds[i]);
    }
    if (real) {
        const double lo = sch.entries.front().r - sch.delta_prime - 1.0;
        const double hi = sch.entries.back().r + sch.delta_prime + 1.0;
        sch.exclusion = detail::neighbourhoods(zeros_vball(sp, lambda.real(), std::max(lo, 1e-3), hi),
                                               detail::kExclusionRadius);
    }
    check_schedule(sch);
    return sch;
}

/// Equally spaced radii in [r_min, r_max] whose denominator is at least
/// margin times its envelope (margin = the guard factor gives plain
/// admissibility).  For annuli r' = r + d + delta/2.
inline RadiusSchedule admissible_grid(const SpaceParams& sp, cplx lambda, AverageKind kind,
                                      double r_min, double r_max, double step, double d = 1.0,
                                      double delta = 1.0, double margin = kGuardFactor) {
    if (!(r_min > 0.0) || !(r_max > r_min) || !(step > 0.0)) {
        throw InvalidArgument("admissible_grid requires 0 < r_min < r_max and step > 0");
    }
    RadiusSchedule sch;
    sch.kind = ScheduleKind::AdmissibleGrid;
    sch.lambda = canonical(lambda);
    sch.d = d;
    sch.delta = delta;
    sch.construction = "equally spaced radii with denominator margin " + std::to_string(margin);
    const std::size_t n = static_cast<std::size_t>(std::floor((r_max - r_min) / step + 1e-9)) + 1;
    const double gap = kind == AverageKind::Annulus ? d + 0.5 * delta : 0.0;
    const double log_margin = std::log(margin);
    const auto ok = parallel_map(n, [&](std::size_t i) -> int {
        const double r = r_min + step * static_cast<double>(i);
        return log_denominator_margin(sp, lambda, kind, r, r + gap) > log_margin;
    });
    for (std::size_t i = 0; i < n; ++i) {
        if (!ok[i]) continue;
        const double r = r_min + step * static_cast<double>(i);
        ScheduleEntry e{r};
        if (kind == AverageKind::Annulus) e.rp = r + gap;
        e.verified = true;
        sch.entries.push_back(e);
    }
    return sch;
}

}  // namespace drs
