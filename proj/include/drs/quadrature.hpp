#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"
#include "scaled.hpp"

namespace drs::quad {

struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-14;
    int max_panels = 4000;
};

struct Result {
    cplx value;
    double error;
    int panels;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights for xgk[1], xgk[3], xgk[5], xgk[7].
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const cplx fc = f(centre);
    cplx kronrod = fc * wgk[7];
    cplx gauss = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const cplx sum = f(centre - dx) + f(centre + dx);
        kronrod += wgk[j] * sum;
        if (j % 2 == 1) gauss += wg[j / 2] * sum;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of a complex integrand on [a, b].
/// Panels are bisected in order of decreasing error estimate until the total
/// estimate drops below max(rel * |I|, abs).
template <class F>
Result integrate(F&& f, double a, double b, const Tolerance& tol = {}) {
    if (a == b) return {{0.0, 0.0}, 0.0, 0};
    std::priority_queue<detail::Panel> queue;
    auto first = detail::gk15(f, a, b);
    cplx total = first.value;
    double error = first.error;
    queue.push(first);
    int panels = 1;
    while (error > std::max(tol.rel * std::abs(total), tol.abs)) {
        if (panels >= tol.max_panels) {
            throw QuadratureNonConvergence("adaptive quadrature hit the panel limit on [" +
                                           std::to_string(a) + ", " + std::to_string(b) + "]");
        }
        auto worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++panels;
        if (mid <= worst.a || mid >= worst.b) break;  // interval exhausted
    }
    // Re-sum to shed the drift of incremental updates.
    total = 0.0;
    error = 0.0;
    while (!queue.empty()) {
        total += queue.top().value;
        error += queue.top().error;
        queue.pop();
    }
    return {total, error, panels};
}

}  // namespace drs::quad
