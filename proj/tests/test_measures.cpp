#include <catch2/catch_amalgamated.hpp>

#include "drs/measures.hpp"
#include "drs/zeros.hpp"

using namespace drs;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

RadialProfile indicator(double R) {
    return {[R](double t) { return cplx(t < R ? 1.0 : 0.0); }, R, {R}};
}

RadialProfile constant_one() {
    return {[](double) { return cplx(1.0); }, std::nullopt, {}};
}

}  // namespace

TEST_CASE("spherical combinations") {
    const SpaceParams s(2, 1);
    const SphericalCombination f(s, {{cplx(0.0, 0.5), 2.0}, {1.0, cplx(0.0, 1.0)}});
    CHECK(f.at_origin() == cplx(2.0, 1.0));
    CHECK(rel(f(3.0), 2.0 * spherical_phi(s, cplx(0.0, 0.5), 3.0) + cplx(0.0, 1.0) * spherical_phi(s, 1.0, 3.0)) <
          1e-15);
    // the lambda-component accepts either sign
    CHECK(f.component(cplx(0.0, -0.5)) == cplx(2.0));
    CHECK(f.component(-1.0) == cplx(0.0, 1.0));
    CHECK(f.component(3.0) == cplx(0.0));
    CHECK_THROWS_AS(SphericalCombination(s, {}), InvalidArgument);
    CHECK_THROWS_AS(SphericalCombination(s, {{1.0, 1.0}, {-1.0, 2.0}}), InvalidArgument);
}

TEST_CASE("annulus transform is a difference of ball transforms and matches quadrature") {
    const SpaceParams s(4, 3);
    for (cplx l : {cplx(0.7), cplx(1.0, 0.5)}) {
        const cplx v = v_annulus(s, l, 3.0, 4.5);
        CHECK(rel(v, v_ball_closed(s, l, 4.5) - v_ball_closed(s, l, 3.0)) < 1e-12);
        const auto g = [&](double x) { return spherical_phi(s, l, x); };
        CHECK(rel(v, detail::integrate_against_density(s, g, 3.0, 4.5).value()) < 1e-8);
    }
    CHECK_THROWS_AS(v_annulus(s, 1.0, 2.0, 2.0), InvalidArgument);
}

TEST_CASE("spherical transform of a ball indicator is the ball transform") {
    const SpaceParams s(2, 1);
    for (cplx l : {cplx(0.7), cplx(0.0, 1.3)}) {
        CHECK(rel(spherical_transform_radial(indicator(3.0), s, l, 10.0), v_ball_closed(s, l, 3.0)) < 1e-9);
    }
}

TEST_CASE("plain averages of the constant profile are one") {
    const SpaceParams s(2, 2);
    CHECK(std::abs(ball_avg_radial_at_e(constant_one(), s, 4.0) - 1.0) < 1e-10);
    CHECK(std::abs(annulus_avg_radial_at_e(constant_one(), s, 4.0, 5.5) - 1.0) < 1e-10);
}

TEST_CASE("phi_lambda is a fixed point of every normalised average") {
    const SpaceParams s(2, 1);
    for (cplx l : {cplx(1.0), cplx(1.0, -0.5), cplx(0.0, -1.3)}) {
        const auto f = SphericalCombination::single(s, l, 3.0);
        for (double sv : {0.0, 0.7, 2.0}) {
            const cplx target = 3.0 * spherical_phi(s, l, sv);
            CHECK(std::abs(sphere_avg_normalized(f, l, 7.3, sv) - target) < 1e-14);
            CHECK(std::abs(ball_avg_normalized(f, l, 7.3, sv) - target) < 1e-14);
            CHECK(std::abs(annulus_avg_normalized(f, l, 7.3, 8.9, sv) - target) < 1e-14);
        }
    }
}

TEST_CASE("normalised averages at the base point against quadrature") {
    const SpaceParams s(2, 1);
    const cplx l(0.0, 1.3), mu(0.0, 0.5);
    const SphericalCombination f(s, {{l, 1.0}, {mu, 1.0}});
    const double r = 6.0;
    const cplx expected = (v_ball_quadrature(s, l, r) + v_ball_quadrature(s, mu, r)) / v_ball_quadrature(s, l, r);
    CHECK(rel(ball_avg_normalized(f, l, r, 0.0), expected) < 1e-8);
    const cplx sphere = (spherical_phi(s, l, r) + spherical_phi(s, mu, r)) / spherical_phi(s, l, r);
    CHECK(rel(sphere_avg_normalized(f, l, r, 0.0), sphere) < 1e-13);
    CHECK(rel(sphere_avg(f, r, 0.0), f(r)) < 1e-14);
}

TEST_CASE("radial profiles normalised at the base point") {
    const SpaceParams s(2, 1);
    const RadialProfile g{[](double t) { return cplx(std::exp(-t)); }, std::nullopt, {}};
    const cplx l(0.0, -0.4);
    CHECK(rel(radial_avg_normalized_at_e(g, s, l, AverageKind::Sphere, 5.0), std::exp(-5.0) / spherical_phi(s, l, 5.0)) <
          1e-13);
    const auto h = [&](double x) { return std::exp(-x) * 1.0; };
    const cplx num = detail::integrate_against_density(s, [&](double x) { return cplx(h(x)); }, 0.0, 5.0).value();
    CHECK(rel(radial_avg_normalized_at_e(g, s, l, AverageKind::Ball, 5.0), num / v_ball_closed(s, l, 5.0)) < 1e-12);
}

TEST_CASE("normalising at a zero of the denominator is refused") {
    const SpaceParams s(2, 1);
    const double z = zeros_phi(s, 1.0, 0.1, 20.0).front();
    const auto f = SphericalCombination::single(s, 2.0);
    CHECK_THROWS_AS(sphere_avg_normalized(f, 1.0, z, 0.5), ZeroDenominator);
    const double zv = zeros_vball(s, 1.0, 0.1, 20.0).front();
    CHECK_THROWS_AS(ball_avg_normalized(f, 1.0, zv, 0.5), ZeroDenominator);
    CHECK_FALSE(phi_admissible(s, 1.0, z));
    CHECK(phi_admissible(s, 1.0, z + 0.05));
}

TEST_CASE("eigenvalue estimate converges at second order") {
    const SpaceParams s(2, 1);
    for (cplx l : {cplx(0.0), cplx(1.0), cplx(0.0, 1.3)}) {
        const auto f = SphericalCombination::single(s, l);
        const cplx target = eigenvalue(s, l);
        const double e1 = std::abs(laplace_eigenvalue_estimate(f, 0.1) - target);
        const double e2 = std::abs(laplace_eigenvalue_estimate(f, 0.05) - target);
        CHECK(e1 / e2 > 3.0);
        CHECK(e1 / e2 < 5.0);
        CHECK(std::abs(laplace_eigenvalue_richardson(f) - target) < 1e-9);
    }
    CHECK(std::abs(laplace_eigenvalue_estimate(SphericalCombination::single(s, cplx(0.0, s.rho)), 0.05)) < 1e-9);
}

TEST_CASE("eigenvalue estimate guards") {
    const SpaceParams s(2, 1);
    const SphericalCombination f(s, {{1.0, 1.0}, {2.0, -1.0}});
    CHECK_THROWS_AS(laplace_eigenvalue_estimate(f, 0.05), ZeroAtBasePoint);
    CHECK_THROWS_AS(laplace_eigenvalue_estimate(SphericalCombination::single(s, 1.0), 0.5), InvalidArgument);
}
