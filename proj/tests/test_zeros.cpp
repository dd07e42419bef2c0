#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "drs/zeros.hpp"

using namespace drs;

namespace {

// sign changes of phi_lambda on a uniform grid, independent of the library sweep
int count_sign_changes(const SpaceParams& s, double lambda, double a, double b, int n) {
    int changes = 0;
    double prev = spherical_phi(s, lambda, a).real();
    for (int i = 1; i <= n; ++i) {
        const double v = spherical_phi(s, lambda, a + (b - a) * i / n).real();
        changes += (prev < 0.0) != (v < 0.0);
        prev = v;
    }
    return changes;
}

}  // namespace

TEST_CASE("zeros of phi_lambda settle on the pi/lambda lattice") {
    const SpaceParams s(2, 1);
    for (double l : {0.5, 1.0, 2.0}) {
        const auto z = zeros_phi(s, l, 0.1, 60.0);
        CHECK(static_cast<int>(z.size()) == count_sign_changes(s, l, 0.1, 60.0, 24000));
        for (std::size_t i = 1; i < z.size(); ++i) {
            CHECK(z[i] > z[i - 1]);
            if (z[i - 1] > 20.0) CHECK(std::abs(z[i] - z[i - 1] - std::numbers::pi / l) < 1e-3);
        }
        for (double x : z) CHECK(std::abs(phi_normalized(s, l, x)) < 1e-10);
    }
}

TEST_CASE("zeros of the ball transform") {
    const SpaceParams s(4, 3);
    const auto z = zeros_vball(s, 1.0, 0.1, 40.0);
    REQUIRE(z.size() > 5);
    for (double x : z) CHECK(std::abs(vball_normalized(s, 1.0, x)) < 1e-9);
    for (std::size_t i = 1; i < z.size(); ++i) {
        if (z[i - 1] > 20.0) CHECK(std::abs(z[i] - z[i - 1] - std::numbers::pi) < 1e-3);
    }
}

TEST_CASE("zero finders need real positive lambda and a proper interval") {
    const SpaceParams s(2, 1);
    CHECK_THROWS_AS(zeros_phi(s, 0.0, 1.0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(zeros_phi(s, 1.0, 2.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(zeros_vball(s, -1.0, 1.0, 2.0), InvalidArgument);
}

TEST_CASE("t_n windows stay inside the positive region of phi_lambda") {
    const SpaceParams s(2, 1);
    for (double l : {0.5, 1.0, 2.0}) {
        const RadiusSchedule sch = tn_sequence(s, l, 50);
        REQUIRE(sch.entries.size() == 50);
        CHECK(sch.kind == ScheduleKind::Sphere_tn);
        CHECK(sch.delta_prime > 0.0);
        CHECK_NOTHROW(check_schedule(sch));
        for (const auto& e : sch.entries) {
            for (int j = 0; j <= 32; ++j) {
                const double t = e.r - sch.delta_prime + 2.0 * sch.delta_prime * j / 32.0;
                CHECK(spherical_phi(s, l, t).real() > 0.0);
            }
        }
    }
    CHECK_THROWS_AS(tn_sequence(s, 1.0, 0), InvalidArgument);
}

TEST_CASE("annulus schedules keep the window ratio bounded") {
    const SpaceParams s(2, 1);
    for (cplx l : {cplx(1.0), cplx(1.0, 0.5), cplx(0.0, 1.3)}) {
        const RadiusSchedule sch = annulus_sequence(s, l, 1.0, 1.0, 50);
        REQUIRE(sch.entries.size() == 50);
        CHECK_NOTHROW(check_schedule(sch));
        double lo = 1e300, hi = 0.0;
        for (const auto& e : sch.entries) {
            CHECK(e.rp - e.r > 1.0);
            CHECK(e.rp - e.r < 2.0);
            CHECK(admissible(s, l, e.r, e.rp));
            lo = std::min(lo, e.ratio_bound);
            hi = std::max(hi, e.ratio_bound);
        }
        CHECK(std::isfinite(hi));
        CHECK(hi <= sch.achieved_bound * (1.0 + 1e-12));
        CHECK(hi - lo < 1e-3 * hi);
    }
}

TEST_CASE("ball schedules are admissible") {
    const SpaceParams s(2, 1);
    for (cplx l : {cplx(1.0), cplx(0.0, 1.3)}) {
        const RadiusSchedule sch = ball_sequence(s, l, 30);
        REQUIRE(sch.entries.size() == 30);
        CHECK_NOTHROW(check_schedule(sch));
        for (const auto& e : sch.entries) {
            CHECK(admissible(s, l, AverageKind::Ball, e.r));
            CHECK(std::isfinite(e.ratio_bound));
        }
    }
}

TEST_CASE("admissible grid drops radii near zeros") {
    const SpaceParams s(2, 1);
    const auto z = zeros_phi(s, 1.0, 10.0, 20.0);
    const RadiusSchedule g = admissible_grid(s, 1.0, AverageKind::Sphere, 10.0, 20.0, 0.01, 1.0, 1.0, 0.1);
    CHECK(g.entries.size() < 1001);
    CHECK(g.entries.size() > 500);
    for (const auto& e : g.entries) {
        for (double x : z) CHECK(std::abs(e.r - x) > 1e-3);
    }
    CHECK_THROWS_AS(admissible_grid(s, 1.0, AverageKind::Sphere, 5.0, 4.0, 0.1), InvalidArgument);
}

TEST_CASE("a schedule meeting an exclusion is rejected") {
    RadiusSchedule sch;
    sch.kind = ScheduleKind::Sphere_tn;
    sch.delta_prime = 0.1;
    sch.entries = {{1.0}, {2.0}};
    sch.exclusion = {{1.95, 1.96}};
    CHECK_THROWS_AS(check_schedule(sch), ConstructionFailure);
    sch.exclusion.clear();
    sch.entries = {{2.0}, {1.0}};
    CHECK_THROWS_AS(check_schedule(sch), ConstructionFailure);
}
