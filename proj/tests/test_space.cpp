#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "drs/measures.hpp"
#include "drs/space.hpp"

using namespace drs;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("structural constants") {
    const SpaceParams s(4, 3);
    CHECK(s.n == 8);
    CHECK(s.Q == 5.0);
    CHECK(s.rho == 2.5);
    CHECK(s.alpha == 3.0);
    CHECK(s.beta == 1.0);
    CHECK(s.alpha_p == 4.0);
    CHECK(s.beta_p == 2.0);
    CHECK(s.jacobi().rho() == 2.0 * s.rho);
}

TEST_CASE("invalid dimensions are rejected") {
    CHECK_THROWS_AS(SpaceParams(3, 1), InvalidArgument);
    CHECK_THROWS_AS(SpaceParams(0, 1), InvalidArgument);
    CHECK_THROWS_AS(SpaceParams(2, 0), InvalidArgument);
}

TEST_CASE("calibrated density constant") {
    // the real hyperbolic space of dimension 4 with curvature -1/4
    CHECK(std::abs(SpaceParams(2, 1).c_n / (16.0 * std::numbers::pi * std::numbers::pi) - 1.0) < 1e-12);
    for (auto [m, k] : {std::pair{2, 1}, {2, 2}, {4, 3}, {6, 1}, {8, 7}}) {
        const SpaceParams s(m, k);
        const double n = s.n;
        const double closed = 4.0 * std::pow(2.0, n - 3.0) * n * std::pow(std::numbers::pi, 0.5 * n) /
                              std::tgamma(0.5 * n + 1.0);
        CHECK(std::abs(s.c_n / closed - 1.0) < 1e-11);
        CHECK(verify_density(s) < 1e-10);
    }
}

TEST_CASE("a perturbed density constant fails verification") {
    const SpaceParams s(2, 1);
    CHECK_THROWS_AS(verify_density(s.with_density_constant(s.c_n * 1.01)), CalibrationMismatch);
    CHECK_THROWS_AS(verify_density(s.with_density_constant(s.c_n * (1.0 + 1e-8))), CalibrationMismatch);
}

TEST_CASE("density is the derivative of the plain ball volume") {
    const SpaceParams s(2, 2);
    const cplx ir(0.0, s.rho);
    for (double r : {0.7, 2.0, 6.0}) {
        const double h = 1e-4;
        const cplx dv = (v_ball_closed(s, ir, r + h) - v_ball_closed(s, ir, r - h)) / (2.0 * h);
        CHECK(std::abs(dv.real() / density_J(s, r) - 1.0) < 1e-7);
    }
}

TEST_CASE("ball transform reference values") {
    // V_r^lambda = integral over the ball of phi_lambda, computed with mpmath for (2,1)
    const SpaceParams s(2, 1);
    CHECK(rel(v_ball_closed(s, 0.7, 5.0), cplx(3376.42467759150821974219285571)) < 1e-11);
    CHECK(rel(v_ball_closed(s, cplx(0.0, 1.0), 5.0), cplx(105796.169573417791330535488945)) < 1e-11);
    CHECK(rel(v_ball_closed(s, cplx(0.7, 0.3), 3.0),
              cplx(528.751422334918848384433523462, -205.517093889871285888091889517)) < 1e-11);
}

TEST_CASE("ball transform closed form against quadrature") {
    for (auto [m, k] : {std::pair{2, 1}, {4, 3}, {6, 1}}) {
        const SpaceParams s(m, k);
        for (cplx l : {cplx(0.7), cplx(0.0, 1.3), cplx(1.0, 0.5), cplx(0.0, s.rho)}) {
            for (double r : {0.5, 2.0, 10.0, 20.0}) {
                CHECK(rel(v_ball_closed(s, l, r), v_ball_quadrature(s, l, r)) < 1e-8);
            }
        }
    }
}

TEST_CASE("ball transform needs a positive radius") {
    CHECK_THROWS_AS(v_ball_closed(SpaceParams(2, 1), 1.0, 0.0), InvalidArgument);
}
