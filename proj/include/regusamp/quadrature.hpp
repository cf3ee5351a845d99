#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "regusamp/errors.hpp"

namespace regusamp {

// Tolerances for the adaptive integrator. The estimate is accepted once the
// summed error estimate drops below max(abs_tol, rel_tol * |result|).
struct Quadrature {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
            throw InvalidArgument("quadrature: tolerances must be positive and max_subdivisions >= 1");
        }
    }
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 nodes).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod15(const F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = static_cast<double>(f(centre));
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    double abs_sum = std::abs(kronrod);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        f1[j] = static_cast<double>(f(centre - dx));
        f2[j] = static_cast<double>(f(centre + dx));
        const double pair = f1[j] + f2[j];
        kronrod += kKronrodWeights[j] * pair;
        abs_sum += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double width = std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    asc *= width;
    abs_sum *= width;
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    err = std::max(err, std::numeric_limits<double>::epsilon() * abs_sum);
    return {a, b, kronrod * half, err};
}

} // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) quadrature: the panel with the
// largest error estimate is bisected until the tolerance is met.
// Reversed limits return the negated integral.
template <class F>
QuadResult integrate(const F& f, double a, double b, const Quadrature& q = {}) {
    q.validate();
    if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("integrate: limits must be finite");
    if (a == b) return {};
    if (b < a) {
        QuadResult r = integrate(f, b, a, q);
        r.value = -r.value;
        return r;
    }

    std::priority_queue<detail::Panel> heap;
    detail::Panel first = detail::gauss_kronrod15(f, a, b);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    int subdivisions = 0;

    while (total_err > std::max(q.abs_tol, q.rel_tol * std::abs(total))) {
        if (subdivisions >= q.max_subdivisions) {
            throw NoConvergence("integrate: " + std::to_string(q.max_subdivisions) +
                                " subdivisions exhausted on [" + std::to_string(a) + ", " +
                                std::to_string(b) + "], error estimate " + std::to_string(total_err));
        }
        const detail::Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Panel is at floating-point resolution; nothing left to refine.
            heap.push(worst);
            break;
        }
        const detail::Panel left = detail::gauss_kronrod15(f, worst.a, mid);
        const detail::Panel right = detail::gauss_kronrod15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum from the panels so the result does not carry the running-update drift.
    double sum = 0.0;
    double err = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return {sum, err, subdivisions};
}

} // namespace regusamp
