#pragma once

#include <ostream>
#include <string>

#include "asymptotics.hpp"
#include "config.hpp"
#include "zeros.hpp"

namespace drs {

inline AverageKind parse_average_kind(const std::string& s) {
    if (s == "sphere") return AverageKind::Sphere;
    if (s == "ball") return AverageKind::Ball;
    if (s == "annulus") return AverageKind::Annulus;
    throw InvalidArgument("average must be sphere, ball or annulus");
}

/// Radii for an experiment.  The grid variant keeps radii on [tmax/2, tmax] whose
/// denominator is at least 0.1 of its envelope; the annulus outer radius is
/// r + d + delta/2, or r + d on a line.
inline RadiusSchedule experiment_schedule(const ExperimentConfig& cfg, const SpaceParams& sp, AverageKind kind) {
    const cplx lambda = canonical(cfg.lambda);
    const bool constructed = cfg.schedule == "constructed" && !cfg.line_annulus;
    if (constructed) {
        switch (kind) {
            case AverageKind::Sphere:
                if (classify(lambda) == Regime::RealNonzero) return tn_sequence(sp, lambda.real(), cfg.count);
                break;
            case AverageKind::Ball: return ball_sequence(sp, lambda, cfg.count);
            case AverageKind::Annulus: return annulus_sequence(sp, lambda, cfg.d, cfg.delta, cfg.count);
        }
    }
    return admissible_grid(sp, lambda, kind, 0.5 * cfg.tmax, cfg.tmax, cfg.step, cfg.d,
                           cfg.line_annulus ? 0.0 : cfg.delta, kWellAdmissibleMargin);
}

struct ExperimentResult {
    AverageClassification classification;
    RadiusSchedule schedule;
};

/// Runs the experiment and writes the CSV
///   r[,rprime],s,value_re,value_im,dev_abs,verdict
/// followed by '#' comment rows carrying the overall verdict.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream& csv) {
    if (cfg.count <= 0 || !(cfg.tmax > 0.0) || !(cfg.step > 0.0) || !(cfg.d > 0.0) || !(cfg.delta > 0.0)) {
        throw ConfigError("count, tmax, step, d and delta must be positive");
    }
    const SpaceParams sp(cfg.m, cfg.k);
    const AverageKind kind = parse_average_kind(cfg.avg);
    const FSpec fs = parse_fspec(cfg.f);
    const ClassifierTolerance tol{cfg.tol_conv, cfg.tol_osc};
    ExperimentResult res;
    res.schedule = experiment_schedule(cfg, sp, kind);
    if (res.schedule.entries.size() < 8) {
        throw ConstructionFailure("fewer than 8 admissible radii; enlarge tmax or count");
    }
    if (fs.is_profile()) {
        res.classification = classify_profile_average(make_profile(fs), sp, cfg.lambda, kind, res.schedule, tol);
    } else {
        res.classification = classify_normalized_average(SphericalCombination(sp, fs.terms), cfg.lambda, kind,
                                                         res.schedule, ExperimentConfig::parse_grid(cfg.s_grid),
                                                         tol);
    }
    const auto& c = res.classification;
    const bool annulus = kind == AverageKind::Annulus;
    csv << (annulus ? "r,rprime,s,value_re,value_im,dev_abs,verdict\n" : "r,s,value_re,value_im,dev_abs,verdict\n");
    for (std::size_t i = 0; i < c.radii.size(); ++i) {
        for (std::size_t j = 0; j < c.s_grid.size(); ++j) {
            const cplx v = c.values[i][j];
            csv << format_double(c.radii[i]) << ',';
            if (annulus) csv << format_double(c.outer_radii[i]) << ',';
            csv << format_double(c.s_grid[j]) << ',' << format_double(v.real()) << ','
                << format_double(v.imag()) << ',' << format_double(std::abs(v - c.target[j])) << ','
                << to_string(c.per_s[j].kind) << '\n';
        }
    }
    csv << "# verdict," << to_string(c.sup.kind) << '\n';
    csv << "# schedule," << to_string(res.schedule.kind) << ',' << res.schedule.entries.size() << '\n';
    csv << "# growth_slope," << format_double(c.sup.diagnostics.growth_slope) << '\n';
    csv << "# tail_variation," << format_double(c.sup.diagnostics.tail_variation) << '\n';
    csv << "# spread," << format_double(c.sup.diagnostics.spread) << '\n';
    if (c.eigen_checked) {
        csv << "# eigen_check," << (c.eigen_ok ? "pass" : "fail") << ',' << format_complex(c.eigen_estimate)
            << '\n';
    }
    return res;
}

}  // namespace drs
