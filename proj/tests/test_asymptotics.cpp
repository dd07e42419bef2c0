#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "drs/asymptotics.hpp"

using namespace drs;

namespace {

std::vector<double> grid(double a, double b, int n) {
    std::vector<double> r;
    for (int i = 0; i < n; ++i) r.push_back(a + (b - a) * i / (n - 1));
    return r;
}

template <class F>
std::vector<cplx> sample(const std::vector<double>& r, F f) {
    std::vector<cplx> v;
    for (double x : r) v.push_back(f(x));
    return v;
}

}  // namespace

TEST_CASE("series classifier on synthetic sequences") {
    const auto r = grid(30.0, 60.0, 200);
    CHECK(classify_series(r, sample(r, [](double x) { return cplx(std::exp(-x)); })).kind == LimitKind::Converges);
    CHECK(classify_series(r, sample(r, [](double x) { return cplx(1.0 / x); })).kind == LimitKind::Converges);
    CHECK(classify_series(r, sample(r, [](double x) { return cplx(std::exp(0.3 * x)); })).kind == LimitKind::Diverges);
    CHECK(classify_series(r, sample(r, [](double x) { return cplx(x); })).kind == LimitKind::Diverges);
    const auto osc = classify_series(r, sample(r, [](double x) { return cplx(std::cos(x)); }));
    CHECK(osc.kind == LimitKind::Oscillates);
    CHECK(osc.witnesses.size() == 2);
    CHECK_FALSE(osc.limit);
    const auto plateau = classify_series(r, sample(r, [](double x) { return cplx(2.0 + std::exp(-x)); }));
    CHECK(plateau.kind == LimitKind::Converges);
    REQUIRE(plateau.limit);
    CHECK(std::abs(*plateau.limit - 2.0) < 1e-12);
    CHECK_THROWS_AS(classify_series({1.0, 2.0}, {1.0, 2.0}), InvalidArgument);
}

TEST_CASE("the five cases") {
    CHECK(ratio_case(cplx(0.0, 1.0), 1.0) == RatioCase::A);
    CHECK(ratio_case(1.0, cplx(0.0, 1.0)) == RatioCase::B);
    CHECK(ratio_case(1.0, 2.0) == RatioCase::C);
    CHECK(ratio_case(cplx(1.0, -0.5), cplx(0.3, 0.5)) == RatioCase::C);
    CHECK(ratio_case(0.0, 1.0) == RatioCase::D);
    CHECK(ratio_case(1.0, 0.0) == RatioCase::E);
    CHECK_THROWS_AS(ratio_case(1.0, -1.0), EqualParameters);
}

TEST_CASE("ratio verdicts for the representative pairs") {
    const SpaceParams s(2, 1);
    const LimitKind expected[] = {LimitKind::Converges, LimitKind::Diverges, LimitKind::Oscillates,
                                  LimitKind::Converges, LimitKind::Diverges};
    const auto pairs = table6_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto v = classify_ratio(s, pairs[i].lambda, pairs[i].mu);
        CHECK(v.kind == expected[i]);
        CHECK_FALSE(v.diagnostics.numeric_disagreement);
        if (v.kind == LimitKind::Converges) CHECK(*v.limit == cplx(0.0));
    }
    CHECK_THROWS_AS(classify_ratio(s, 2.0, -2.0), EqualParameters);
}

TEST_CASE("random pairs land in the requested case and agree with sampling") {
    const SpaceParams s(2, 1);
    std::mt19937_64 rng(99);
    for (auto c : {RatioCase::A, RatioCase::B, RatioCase::C, RatioCase::D, RatioCase::E}) {
        for (int i = 0; i < 4; ++i) {
            const CasePair p = random_pair(c, rng);
            CHECK(ratio_case(p.lambda, p.mu) == c);
            CHECK_FALSE(classify_ratio(s, p.lambda, p.mu).diagnostics.numeric_disagreement);
        }
    }
}

TEST_CASE("normalised averages converge at the predicted rate") {
    const SpaceParams s(2, 1);
    const cplx l(0.0, 1.3), mu(0.0, 0.5);
    const SphericalCombination f(s, {{l, 1.0}, {mu, 1.0}});
    const auto c = classify_normalized_average(f, l, AverageKind::Ball, ball_sequence(s, l, 40));
    CHECK(c.sup.kind == LimitKind::Converges);
    CHECK(std::abs(decay_exponent(c.radii, c.sup_deviation, 10.0, 40.0) + 0.8) < 0.08);
    CHECK(c.eigen_checked);
    CHECK(c.eigen_ok);
    for (const auto& v : c.per_s) CHECK(v.kind == LimitKind::Converges);
}

TEST_CASE("a single term is an exact fixed point") {
    const SpaceParams s(2, 1);
    const auto f = SphericalCombination::single(s, 1.0, 2.0);
    const auto c = classify_normalized_average(f, 1.0, AverageKind::Sphere, tn_sequence(s, 1.0, 30));
    CHECK(c.sup.kind == LimitKind::Converges);
    for (double d : c.sup_deviation) CHECK(d < 1e-14);
}

TEST_CASE("two real frequencies oscillate") {
    const SpaceParams s(2, 1);
    const SphericalCombination f(s, {{1.0, 1.0}, {2.0, 1.0}});
    const auto sch = admissible_grid(s, 1.0, AverageKind::Sphere, 30.0, 60.0, 0.05, 1.0, 1.0, kWellAdmissibleMargin);
    const auto c = classify_normalized_average(f, 1.0, AverageKind::Sphere, sch);
    CHECK(c.sup.kind == LimitKind::Oscillates);
    CHECK_FALSE(c.eigen_checked);
    for (std::size_t j = 0; j < c.s_grid.size(); ++j) {
        if (std::abs(spherical_phi(s, 2.0, c.s_grid[j])) > 1e-3) CHECK(c.per_s[j].kind == LimitKind::Oscillates);
    }
}

TEST_CASE("schedule kind must match the average") {
    const SpaceParams s(2, 1);
    const auto f = SphericalCombination::single(s, 1.0);
    CHECK_THROWS_AS(classify_normalized_average(f, 1.0, AverageKind::Ball, tn_sequence(s, 1.0, 10)), InvalidArgument);
}

TEST_CASE("shifted-frequency counterexample") {
    const SpaceParams s(2, 1);
    const cplx l(1.0, -0.5), mu(0.3, -0.5);
    const Counterexample ce = counterexample_sequence(s, l, mu);
    CHECK(std::abs(ce.factor - spherical_c(s, mu) / spherical_c(s, l)) < 1e-14);
    for (std::size_t i = 0; i < ce.schedule.entries.size(); ++i) {
        CHECK(std::abs(ce.schedule.entries[i].r - 2.0 * (i + 1) * std::numbers::pi / 0.7) < 1e-12);
        if (ce.schedule.entries[i].r > 35.0) CHECK(ce.deviation[i] < 1e-4);
    }
    CHECK(ce.fails_eigen_test);
    CHECK(ce.eigen_margin > 0.1);
    CHECK_THROWS_AS(counterexample_sequence(s, l, cplx(0.3, -0.4)), InvalidArgument);
    CHECK_THROWS_AS(counterexample_sequence(s, mu, l), InvalidArgument);
}

TEST_CASE("real-pair counterexample through a crest search") {
    const SpaceParams s(2, 1);
    const Counterexample ce = counterexample_sequence(s, 1.0, 2.0);
    CHECK(ce.schedule.entries.size() == 8);
    CHECK(std::abs(ce.factor) > 1e-3);
    for (double d : ce.deviation) CHECK(d < 1e-3);
    CHECK(ce.fails_eigen_test);
    CHECK_THROWS_AS(counterexample_sequence(s, 1.0, std::numbers::sqrt2, 8, 200.0), SearchExhausted);
}

TEST_CASE("naive formulation: deviation vanishes while the residual does not") {
    const SpaceParams s(2, 1);
    const NaiveDemoReport rep = naive_hypothesis_demo(s, 1.0, 2.0);
    CHECK(rep.deviation_vanishes);
    CHECK(rep.residual_bounded_below);
    CHECK(std::abs(rep.measured_exponent / rep.predicted_exponent - 1.0) < 0.1);
    CHECK(std::abs(rep.eigen_residual - (1.0 - 4.0)) < 1e-6);
    CHECK_THROWS_AS(naive_hypothesis_demo(s, 1.0, -1.0), EqualParameters);
    CHECK_THROWS_AS(naive_hypothesis_demo(s, cplx(0.0, 1.2), 1.0), InvalidArgument);
}

TEST_CASE("oscillation witnesses along crests") {
    const SpaceParams s(2, 1);
    const OscillationWitness w = oscillation_witness(s, 1.0, std::numbers::sqrt2, 1.0);
    REQUIRE_FALSE(w.indices.empty());
    CHECK(w.indices.front() <= 100000);
    for (double v : w.values) CHECK(std::abs(v - 1.0) < 1e-2);
    CHECK(w.coverage.lo < -0.9);
    CHECK(w.coverage.hi > 0.9);

    const CrestScan rational = crest_ratio_scan(s, 1.0, 2.0);
    CHECK(rational.clusters <= 3);
    CHECK(w.coverage.clusters > 100);
    CHECK_THROWS_AS(oscillation_witness(s, 1.0, 2.0, 1.0, 2000), SearchExhausted);
}
