#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "regusamp/errors.hpp"
#include "regusamp/quadrature.hpp"
#include "regusamp/specfun.hpp"
#include "regusamp/windows.hpp"

namespace regusamp {

inline double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// The regularized sinc psi = sinc(L pi x) * phi_m(x) for one (window, cfg) pair.
struct KernelEval {
    WindowSpec window;
    SamplingConfig cfg;
};

inline double psi(const KernelEval& k, double x) {
    return sinc(k.cfg.L * std::numbers::pi * x) * eval_truncated(k.window, k.cfg, x);
}

namespace detail {

inline double j1_over_x(double z) {
    if (z < 1e-5) return 0.5 - z * z / 16.0;
    return bessel_j1(z) / z;
}

// Interior part of the sinh transform, |w| < beta: I1(z)/(z sinh beta).
inline double i1_over_x_sinh(double z, double beta) {
    const double scale = 2.0 * std::exp(z - beta) / (-std::expm1(-2.0 * beta));
    if (z < 1e-5) return (0.5 + z * z / 16.0) * scale * std::exp(-z);
    return bessel_i1_scaled(z) / z * scale;
}

inline Quadrature transform_quadrature() { return {1e-15, 1e-13, 4000}; }

inline void require_kind(const KernelEval& k, WindowKind kind, const char* op) {
    if (k.window.kind != kind) {
        throw WrongKind(std::string(op) + ": window is " + std::string(to_string(k.window.kind)) +
                        ", expected " + std::string(to_string(kind)));
    }
}

} // namespace detail

// Closed-form Fourier transform of the (untruncated) window.
inline double ft_window(const WindowSpec& w, const SamplingConfig& cfg, double v) {
    const double m = cfg.m;
    const double L = cfg.L;
    switch (w.kind) {
    case WindowKind::Rect: return 2.0 * m / L * sinc(2.0 * std::numbers::pi * m * v / L);
    case WindowKind::Gauss: {
        const double a = std::numbers::pi * w.sigma * v;
        return std::sqrt(2.0 * std::numbers::pi) * w.sigma * std::exp(-2.0 * a * a);
    }
    case WindowKind::Bspline: {
        const double sn = sinc(std::numbers::pi * v * m / (w.s * L));
        return m / (w.s * L * w.m2s0) * std::pow(sn, 2 * w.s);
    }
    case WindowKind::Sinh: {
        const double beta = w.beta;
        const double wv = std::abs(2.0 * std::numbers::pi * m * v / L);
        // pi m beta / (L sinh beta) written without sinh overflow
        const double lead = std::numbers::pi * m * beta / L;
        if (wv > beta) {
            const double z = std::sqrt((wv - beta) * (wv + beta));
            const double inv_sinh = 2.0 * std::exp(-beta) / (-std::expm1(-2.0 * beta));
            return lead * inv_sinh * detail::j1_over_x(z);
        }
        const double z = std::sqrt((beta - wv) * (beta + wv));
        return lead * detail::i1_over_x_sinh(z, beta);
    }
    }
    return 0.0;
}

inline double ft_psi_gauss(const KernelEval& k, double v) {
    detail::require_kind(k, WindowKind::Gauss, "ft_psi_gauss");
    const double L = k.cfg.L;
    const double c = std::numbers::sqrt2 * std::numbers::pi * k.window.sigma;
    const double av = std::abs(v);
    const double hi = c * (av + 0.5 * L);
    const double lo = c * (av - 0.5 * L);
    // erfc form keeps relative accuracy in the far tail
    if (lo > 0.0) return (erfc(lo) - erfc(hi)) / (2.0 * L);
    return (erf(hi) - erf(lo)) / (2.0 * L);
}

namespace detail {

// (1/L) * integral of the window transform over [v - L/2, v + L/2],
// split at the listed breakpoints that fall inside.
template <class Breaks>
double averaged_window_ft(const KernelEval& k, double v, const Breaks& breaks) {
    const double L = k.cfg.L;
    const double a = v - 0.5 * L;
    const double b = v + 0.5 * L;
    auto f = [&](double u) { return ft_window(k.window, k.cfg, u); };
    double cuts[8];
    int n = 0;
    cuts[n++] = a;
    for (double c : breaks) {
        if (c > a && c < b) cuts[n++] = c;
    }
    cuts[n++] = b;
    std::sort(cuts, cuts + n);
    double sum = 0.0;
    for (int i = 0; i + 1 < n; ++i) sum += integrate(f, cuts[i], cuts[i + 1], transform_quadrature()).value;
    return sum / L;
}

} // namespace detail

inline double ft_psi_bspline(const KernelEval& k, double v) {
    detail::require_kind(k, WindowKind::Bspline, "ft_psi_bspline");
    const double av = std::abs(v);
    const double none[] = {0.0};
    return detail::averaged_window_ft(k, av, none);
}

inline double ft_psi_sinh(const KernelEval& k, double v) {
    detail::require_kind(k, WindowKind::Sinh, "ft_psi_sinh");
    const double av = std::abs(v);
    // roots of D, where the Bessel form switches from I1 to J1
    const double ur = k.window.beta * k.cfg.L / (2.0 * std::numbers::pi * k.cfg.m);
    const double breaks[] = {-ur, 0.0, ur};
    return detail::averaged_window_ft(k, av, breaks);
}

inline double ft_psi_rect(const KernelEval& k, double v) {
    detail::require_kind(k, WindowKind::Rect, "ft_psi_rect");
    const double av = std::abs(v);
    const double none[] = {0.0};
    return detail::averaged_window_ft(k, av, none);
}

inline double ft_psi(const KernelEval& k, double v) {
    switch (k.window.kind) {
    case WindowKind::Rect: return ft_psi_rect(k, v);
    case WindowKind::Gauss: return ft_psi_gauss(k, v);
    case WindowKind::Bspline: return ft_psi_bspline(k, v);
    case WindowKind::Sinh: return ft_psi_sinh(k, v);
    }
    return 0.0;
}

// Direct quadrature of integral psi(x) cos(2 pi v x) dx. The Gaussian is
// taken untruncated out to max(m/L, 12 sigma).
inline double ft_psi_direct(const KernelEval& k, double v) {
    const double L = k.cfg.L;
    double reach = k.cfg.support();
    const bool gauss = k.window.kind == WindowKind::Gauss;
    if (gauss) reach = std::max(reach, 12.0 * k.window.sigma);
    auto f = [&](double x) {
        const double phi = gauss ? eval_window(k.window, k.cfg, x) : eval_truncated(k.window, k.cfg, x);
        return sinc(L * std::numbers::pi * x) * phi * std::cos(2.0 * std::numbers::pi * v * x);
    };
    // one panel per half-period of the fastest oscillation
    const double freq = 0.5 * L + std::abs(v);
    const int panels = std::max(4, static_cast<int>(std::ceil(reach * freq * 2.0)));
    const double h = reach / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        sum += integrate(f, i * h, (i + 1) * h, detail::transform_quadrature()).value;
    }
    return 2.0 * sum;
}

// Bound on |psi_hat(v)| for |v| >= L(1 + epsilon)/2.
inline double tail_bound(const KernelEval& k, double epsilon) {
    const double L = k.cfg.L;
    const double m = k.cfg.m;
    const double pi = std::numbers::pi;
    switch (k.window.kind) {
    case WindowKind::Gauss: {
        if (!(epsilon > 0.0 && epsilon < 1.0)) throw EpsilonOutOfRange("gauss tail bound needs epsilon in (0, 1)");
        const double sg = k.window.sigma;
        return std::exp(-pi * pi * sg * sg * L * L * epsilon * epsilon / 2.0) /
               (std::sqrt(2.0 * pi) * L * L * pi * sg * epsilon);
    }
    case WindowKind::Bspline: {
        const int s = k.window.s;
        if (!(epsilon > 2.0 * s / (m * pi))) throw EpsilonOutOfRange("bspline tail bound needs epsilon > 2s/(m pi)");
        return std::pow(2.0 * s / (epsilon * m * pi), 2 * s - 1) / ((2.0 * s - 1.0) * pi * L * k.window.m2s0);
    }
    case WindowKind::Sinh: {
        const double beta = k.window.beta;
        const double lam = k.cfg.lambda;
        const double s = beta * (1.0 + lam) / (pi * (1.0 + 2.0 * lam));
        if (!(epsilon >= 4.0 * s / m)) throw EpsilonOutOfRange("sinh tail bound needs epsilon >= 4s/m");
        const double inv_sinh = 2.0 * std::exp(-beta) / (-std::expm1(-2.0 * beta));
        return 5.0 * std::sqrt(2.0 * s * beta) / (4.0 * L * std::sqrt(m * epsilon)) * inv_sinh;
    }
    case WindowKind::Rect: break;
    }
    throw WrongKind("tail_bound: no essential-bandlimitation bound for the rect window");
}

// Bound on 1/L - psi_hat(v) for |v| <= L(1 - epsilon)/2 (Gaussian only).
inline double gauss_inner_deviation_bound(const KernelEval& k, double epsilon) {
    detail::require_kind(k, WindowKind::Gauss, "gauss_inner_deviation_bound");
    return 2.0 * tail_bound(k, epsilon);
}

} // namespace regusamp
