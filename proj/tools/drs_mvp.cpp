// drs_mvp: command-line front end for the drs toolkit.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "drs/drs.hpp"

using namespace drs;

namespace {

struct Common {
    int m = 2;
    int k = 1;
    SpaceParams space() const { return SpaceParams(m, k); }
};

void add_space(CLI::App* app, Common& c) {
    app->add_option("--m", c.m, "dimension of the first layer (even, >= 2)")->capture_default_str();
    app->add_option("--k", c.k, "dimension of the centre (>= 1)")->capture_default_str();
}

std::string num(double v) { return format_double(v); }

int cmd_specfun(const Common& c, const std::string& lam_text, double t) {
    const SpaceParams s = c.space();
    const cplx l = parse_complex(lam_text);
    const Scaled v = spherical_phi_scaled(s, l, t);
    const cplx val = v.value();
    std::cout << "lambda," << format_complex(canonical(l)) << '\n'
              << "regime," << to_string(classify(canonical(l))) << '\n'
              << "t," << num(t) << '\n'
              << "value," << num(val.real()) << ',' << num(val.imag()) << '\n'
              << "scaled," << num(v.mantissa.real()) << ',' << num(v.mantissa.imag()) << ','
              << num(v.log_scale) << '\n';
    return 0;
}

int cmd_measures(const Common& c, const std::string& which, const std::string& lam_text, double r,
                 std::optional<double> rp) {
    const SpaceParams s = c.space();
    const cplx l = parse_complex(lam_text);
    Scaled v;
    if (which == "vball") {
        v = v_ball_closed_scaled(s, l, r);
    } else {
        if (!rp) throw InvalidArgument("vannulus needs --rprime");
        v = v_annulus_scaled(s, l, r, *rp);
    }
    const cplx val = v.value();
    std::cout << "r,rprime,lambda_re,lambda_im,value_re,value_im,log_abs\n"
              << num(r) << ',' << (rp ? num(*rp) : std::string()) << ',' << num(l.real()) << ','
              << num(l.imag()) << ',' << num(val.real()) << ',' << num(val.imag()) << ','
              << num(v.log_abs()) << '\n';
    return 0;
}

int cmd_zeros(const Common& c, const std::string& which, double lam, double from, double to) {
    const SpaceParams s = c.space();
    const auto z = which == "phi" ? zeros_phi(s, lam, from, to) : zeros_vball(s, lam, from, to);
    std::cout << "index,zero\n";
    for (std::size_t i = 0; i < z.size(); ++i) std::cout << i << ',' << num(z[i]) << '\n';
    return 0;
}

int cmd_sequences(const Common& c, const std::string& which, const std::string& lam_text, double d,
                  double delta, int count) {
    const SpaceParams s = c.space();
    const cplx l = parse_complex(lam_text);
    RadiusSchedule sch;
    if (which == "tn") {
        if (l.imag() != 0.0) throw InvalidArgument("tn needs a real lambda");
        sch = tn_sequence(s, std::abs(l.real()), count);
    } else if (which == "annulus") {
        sch = annulus_sequence(s, l, d, delta, count);
    } else {
        sch = ball_sequence(s, l, count);
    }
    std::cout << "index,r,rprime,window_lo,window_hi,ratio_bound,verified\n";
    for (std::size_t i = 0; i < sch.entries.size(); ++i) {
        const auto& e = sch.entries[i];
        const double centre = sch.kind == ScheduleKind::Annulus_rjrj ? e.rp : e.r;
        std::cout << i << ',' << num(e.r) << ',' << (std::isnan(e.rp) ? std::string() : num(e.rp)) << ','
                  << num(centre - sch.delta_prime) << ',' << num(centre + sch.delta_prime) << ','
                  << num(e.ratio_bound) << ',' << (e.verified ? "true" : "false") << '\n';
    }
    std::cout << "# kind," << to_string(sch.kind) << '\n'
              << "# construction," << sch.construction << '\n'
              << "# delta_prime," << num(sch.delta_prime) << '\n'
              << "# start_index," << sch.start_index << '\n'
              << "# achieved_bound," << num(sch.achieved_bound) << '\n';
    return 0;
}

int cmd_classify(const Common& c, const std::string& lam_text, const std::string& mu_text, double tmax) {
    const SpaceParams s = c.space();
    const cplx l = parse_complex(lam_text), mu = parse_complex(mu_text);
    const LimitVerdict v = classify_ratio(s, l, mu, tmax);
    std::cout << "case,verdict,numeric_agrees,growth_slope,tail_variation,spread,samples\n"
              << v.diagnostics.rule << ',' << to_string(v.kind) << ','
              << (v.diagnostics.numeric_disagreement ? "false" : "true") << ','
              << num(v.diagnostics.growth_slope) << ',' << num(v.diagnostics.tail_variation) << ','
              << num(v.diagnostics.spread) << ',' << v.diagnostics.samples << '\n';
    for (const auto& w : v.witnesses) {
        std::cout << "# witness," << w.description << ',' << format_complex(w.value) << '\n';
    }
    return v.diagnostics.numeric_disagreement ? 1 : 0;
}

int cmd_table6(const Common& c) {
    const SpaceParams s = c.space();
    std::cout << "case,lambda,mu,verdict,numeric_agrees\n";
    bool agree = true;
    for (const auto& p : table6_pairs()) {
        const LimitVerdict v = classify_ratio(s, p.lambda, p.mu);
        agree = agree && !v.diagnostics.numeric_disagreement;
        std::cout << to_string(p.which) << ',' << format_complex(p.lambda) << ',' << format_complex(p.mu) << ','
                  << to_string(v.kind) << ',' << (v.diagnostics.numeric_disagreement ? "false" : "true") << '\n';
    }
    return agree ? 0 : 1;
}

int cmd_counterexample(const Common& c, const std::string& variant, const std::string& lam_text,
                       const std::string& mu_text, int count, double tmax) {
    const SpaceParams s = c.space();
    const cplx l = parse_complex(lam_text), mu = parse_complex(mu_text);
    if (variant == "seq") {
        const Counterexample ce = counterexample_sequence(s, l, mu, count, tmax);
        std::cout << "n,r,sup_deviation\n";
        for (std::size_t i = 0; i < ce.deviation.size(); ++i) {
            std::cout << i + 1 << ',' << num(ce.schedule.entries[i].r) << ',' << num(ce.deviation[i]) << '\n';
        }
        std::cout << "# construction," << ce.schedule.construction << '\n'
                  << "# limit_factor," << format_complex(ce.factor) << '\n'
                  << "# eigen_estimate," << format_complex(ce.eigen_estimate) << '\n'
                  << "# eigen_margin," << num(ce.eigen_margin) << '\n'
                  << "# fails_eigen_test," << (ce.fails_eigen_test ? "true" : "false") << '\n';
        return ce.fails_eigen_test ? 0 : 1;
    }
    const NaiveDemoReport rep = naive_hypothesis_demo(s, l, mu);
    std::cout << "r,deviation\n";
    for (std::size_t i = 0; i < rep.radii.size(); ++i) {
        std::cout << num(rep.radii[i]) << ',' << num(rep.deviation[i]) << '\n';
    }
    std::cout << "# measured_exponent," << num(rep.measured_exponent) << '\n'
              << "# predicted_exponent," << num(rep.predicted_exponent) << '\n'
              << "# eigen_residual," << format_complex(rep.eigen_residual) << '\n'
              << "# eigen_residual_exact," << format_complex(rep.eigen_residual_exact) << '\n'
              << "# deviation_vanishes," << (rep.deviation_vanishes ? "true" : "false") << '\n'
              << "# residual_bounded_below," << (rep.residual_bounded_below ? "true" : "false") << '\n';
    return rep.deviation_vanishes && rep.residual_bounded_below ? 0 : 1;
}

int cmd_validate(double perturbation) {
    ValidateOptions o;
    o.density_perturbation = perturbation;
    const auto results = run_validation(o);
    bool ok = true;
    std::cout << "suite,cases,max_error,status,seconds\n";
    for (const auto& r : results) {
        ok = ok && r.pass;
        std::cout << r.name << ',' << r.cases << ',' << num(r.max_error) << ',' << (r.pass ? "pass" : "fail") << ','
                  << num(std::round(r.seconds * 100.0) / 100.0) << '\n';
        if (!r.note.empty()) std::cout << "# " << r.name << ": " << r.note << '\n';
    }
    std::cout << "# overall," << (ok ? "pass" : "fail") << '\n';
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for spherical functions and normalised averages on Damek-Ricci spaces"};
    app.require_subcommand(1);

    Common common;

    auto* specfun = app.add_subcommand("specfun", "spherical functions");
    auto* sf_eval = specfun->add_subcommand("eval", "evaluate phi_lambda(t)");
    specfun->require_subcommand(1);
    std::string lam = "1", mu = "2";
    double t = 1.0;
    add_space(sf_eval, common);
    sf_eval->add_option("--lambda", lam, "spectral parameter (re,im | a+bi | real)")->required();
    sf_eval->add_option("--t", t, "radius")->required();

    auto* measures = app.add_subcommand("measures", "ball and annulus transforms");
    std::string measure_kind;
    double r = 1.0;
    std::optional<double> rprime;
    measures->add_option("kind", measure_kind, "vball | vannulus")->required()->check(CLI::IsMember({"vball", "vannulus"}));
    add_space(measures, common);
    measures->add_option("--lambda", lam)->required();
    measures->add_option("--r", r)->required();
    measures->add_option("--rprime", rprime);

    auto* zeros = app.add_subcommand("zeros", "zeros of phi_lambda or V_r^lambda for real lambda");
    std::string zero_kind;
    double zlam = 1.0, from = 0.1, to = 40.0;
    zeros->add_option("kind", zero_kind, "phi | vball")->required()->check(CLI::IsMember({"phi", "vball"}));
    add_space(zeros, common);
    zeros->add_option("--lambda", zlam)->required();
    zeros->add_option("--from", from)->capture_default_str();
    zeros->add_option("--to", to)->capture_default_str();

    auto* sequences = app.add_subcommand("sequences", "admissible radius sequences");
    std::string seq_kind;
    double d = 1.0, delta = 1.0;
    int count = 20;
    sequences->add_option("kind", seq_kind, "tn | annulus | ball")->required()->check(CLI::IsMember({"tn", "annulus", "ball"}));
    add_space(sequences, common);
    sequences->add_option("--lambda", lam)->required();
    sequences->add_option("--d", d)->capture_default_str();
    sequences->add_option("--delta", delta)->capture_default_str();
    sequences->add_option("--count", count)->capture_default_str();

    auto* classify_cmd = app.add_subcommand("classify", "limit of phi_mu / phi_lambda");
    double tmax = 60.0;
    add_space(classify_cmd, common);
    classify_cmd->add_option("--lambda", lam)->required();
    classify_cmd->add_option("--mu", mu)->required();
    classify_cmd->add_option("--tmax", tmax)->capture_default_str();

    auto* experiment = app.add_subcommand("experiment", "normalised averages along a radius schedule");
    std::string config_path;
    std::map<std::string, std::string> flags;
    experiment->add_option("--config", config_path, "key = value file; flags take precedence");
    const std::vector<std::pair<std::string, std::string>> exp_flags{
        {"m", "--m"},         {"k", "--k"},         {"lambda", "--lambda"},     {"f", "--f"},
        {"avg", "--avg"},     {"schedule", "--schedule"}, {"d", "--d"},       {"delta", "--delta"},
        {"count", "--count"}, {"tmax", "--tmax"},   {"step", "--step"},         {"s_grid", "--s-grid"},
        {"tol_conv", "--tol-conv"}, {"tol_osc", "--tol-osc"}, {"out", "--out"}};
    for (const auto& [key, flag] : exp_flags) {
        experiment->add_option_function<std::string>(flag, [&flags, key = key](const std::string& v) { flags[key] = v; });
    }
    experiment->add_flag_callback("--line-annulus", [&flags] { flags["line_annulus"] = "true"; },
                                  "annulus radii (r, r + d); exploratory");
    bool print_config = false;
    experiment->add_flag("--print-config", print_config, "print the resolved configuration and exit");

    auto* table6 = app.add_subcommand("table6", "verdicts for the five representative pairs");
    add_space(table6, common);

    auto* counter = app.add_subcommand("counterexample", "the two counterexamples");
    std::string variant = "seq";
    std::string ce_lam, ce_mu;
    double ce_tmax = 2000.0;
    int ce_count = 8;
    add_space(counter, common);
    counter->add_option("--variant", variant)->check(CLI::IsMember({"seq", "naive"}))->capture_default_str();
    counter->add_option("--lambda", ce_lam, "default 1-0.5i (seq) or 1 (naive)");
    counter->add_option("--mu", ce_mu, "default 0.3-0.5i (seq) or 2 (naive)");
    counter->add_option("--count", ce_count)->capture_default_str();
    counter->add_option("--tmax", ce_tmax, "search limit for real pairs")->capture_default_str();

    auto* validate = app.add_subcommand("validate", "run every invariant suite");
    double perturb = 0.0;
    validate->add_option("--perturb-density", perturb, "relative change applied to c_n (fault injection)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*sf_eval) return cmd_specfun(common, lam, t);
        if (*measures) return cmd_measures(common, measure_kind, lam, r, rprime);
        if (*zeros) return cmd_zeros(common, zero_kind, zlam, from, to);
        if (*sequences) return cmd_sequences(common, seq_kind, lam, d, delta, count);
        if (*classify_cmd) return cmd_classify(common, lam, mu, tmax);
        if (*table6) return cmd_table6(common);
        if (*counter) {
            const bool seq = variant == "seq";
            return cmd_counterexample(common, variant, ce_lam.empty() ? (seq ? "1-0.5i" : "1") : ce_lam,
                                      ce_mu.empty() ? (seq ? "0.3-0.5i" : "2") : ce_mu, ce_count, ce_tmax);
        }
        if (*validate) return cmd_validate(perturb);
        if (*experiment) {
            ExperimentConfig cfg;
            if (!config_path.empty()) cfg.apply_file(config_path);
            for (const auto& [key, value] : flags) cfg.set(key, value);
            if (print_config) {
                std::cout << cfg.serialize();
                return 0;
            }
            std::ostringstream csv;
            run_experiment(cfg, csv);
            if (cfg.out.empty()) {
                std::cout << csv.str();
            } else {
                std::ofstream out(cfg.out, std::ios::binary);
                if (!out) throw ConfigError("cannot write '" + cfg.out + "'");
                out << csv.str();
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
