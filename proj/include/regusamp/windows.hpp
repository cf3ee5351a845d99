#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "regusamp/errors.hpp"
#include "regusamp/specfun.hpp"

namespace regusamp {

// Sampling parameters. L = N(1 + lambda) must come out integral, since
// samples sit on the grid l/L; delta = tau N is the bandwidth.
struct SamplingConfig {
    int N = 0;
    double lambda = 0.0;
    double tau = 0.0;
    int m = 0;
    int L = 0;
    double delta = 0.0;

    SamplingConfig() = default;

    SamplingConfig(int N_, double lambda_, double tau_, int m_) : N(N_), lambda(lambda_), tau(tau_), m(m_) {
        if (N < 1) throw InvalidConfig("N must be >= 1, got " + std::to_string(N));
        if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidConfig("lambda must be >= 0");
        if (!(tau > 0.0 && tau < 0.5)) throw InvalidConfig("tau must lie in (0, 1/2)");
        if (m < 2) throw InvalidConfig("m must be >= 2, got " + std::to_string(m));
        const double l_real = N * (1.0 + lambda);
        const double l_round = std::round(l_real);
        if (std::abs(l_real - l_round) > 1e-9 * l_real || l_round > 1e9) {
            throw InvalidConfig("N(1+lambda) = " + std::to_string(l_real) + " is not an integer");
        }
        L = static_cast<int>(l_round);
        if (2 * m > L) {
            throw InvalidConfig("2m = " + std::to_string(2 * m) + " exceeds L = " + std::to_string(L));
        }
        delta = tau * N;
    }

    // 2m is required to be much smaller than L; past L/4 results are suspect.
    bool support_warning() const { return 8 * m > L; }
    double support() const { return static_cast<double>(m) / L; }
};

enum class WindowKind { Rect, Gauss, Bspline, Sinh };

enum class SinhCase { One, Two };

inline std::string_view to_string(WindowKind k) {
    switch (k) {
    case WindowKind::Rect: return "rect";
    case WindowKind::Gauss: return "gauss";
    case WindowKind::Bspline: return "bspline";
    case WindowKind::Sinh: return "sinh";
    }
    return "?";
}

inline WindowKind parse_window_kind(std::string_view s) {
    if (s == "rect") return WindowKind::Rect;
    if (s == "gauss") return WindowKind::Gauss;
    if (s == "bspline") return WindowKind::Bspline;
    if (s == "sinh") return WindowKind::Sinh;
    throw InvalidArgument("unknown window '" + std::string(s) + "' (expected rect, gauss, bspline or sinh)");
}

// A window family with its single shape parameter. Build through the named
// constructors; the B-spline also carries M_{2s}(0) so evaluation stays cheap.
struct WindowSpec {
    WindowKind kind = WindowKind::Rect;
    double sigma = 0.0;
    int s = 0;
    double beta = 0.0;
    double m2s0 = 0.0;

    static WindowSpec rect() { return {}; }

    static WindowSpec gauss(double sigma) {
        if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("gauss window: sigma must be > 0");
        WindowSpec w;
        w.kind = WindowKind::Gauss;
        w.sigma = sigma;
        return w;
    }

    static WindowSpec bspline(int s) {
        if (s < 2) throw InvalidArgument("bspline window: s must be >= 2, got " + std::to_string(s));
        WindowSpec w;
        w.kind = WindowKind::Bspline;
        w.s = s;
        w.m2s0 = m2s_at_zero(s);
        return w;
    }

    static WindowSpec sinh(double beta) {
        if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("sinh window: beta must be > 0");
        WindowSpec w;
        w.kind = WindowKind::Sinh;
        w.beta = beta;
        return w;
    }
};

inline double default_sigma(const SamplingConfig& cfg) {
    return std::sqrt(cfg.m / (std::numbers::pi * cfg.L * (cfg.L - 2.0 * cfg.delta)));
}

inline int default_s(const SamplingConfig& cfg) { return (cfg.m + 2) / 2; }

inline double default_beta(const SamplingConfig& cfg, SinhCase c = SinhCase::Two) {
    const double sign = c == SinhCase::Two ? -1.0 : 1.0;
    return std::numbers::pi * cfg.m * (1.0 + cfg.lambda + sign * 2.0 * cfg.tau) / (1.0 + cfg.lambda);
}

inline WindowSpec default_params(WindowKind kind, const SamplingConfig& cfg, SinhCase c = SinhCase::Two) {
    switch (kind) {
    case WindowKind::Rect: return WindowSpec::rect();
    case WindowKind::Gauss: return WindowSpec::gauss(default_sigma(cfg));
    case WindowKind::Bspline: return WindowSpec::bspline(default_s(cfg));
    case WindowKind::Sinh: return WindowSpec::sinh(default_beta(cfg, c));
    }
    throw InvalidArgument("unknown window kind");
}

// sinh(beta r) / sinh(beta) without overflow for large beta.
inline double sinh_ratio(double beta, double r) {
    return std::exp(beta * (r - 1.0)) * (-std::expm1(-2.0 * beta * r)) / (-std::expm1(-2.0 * beta));
}

inline double eval_window(const WindowSpec& w, const SamplingConfig& cfg, double x) {
    const double ax = std::abs(x);
    const double edge = cfg.support();
    switch (w.kind) {
    case WindowKind::Rect: return ax <= edge ? 1.0 : 0.0;
    case WindowKind::Gauss: return std::exp(-x * x / (2.0 * w.sigma * w.sigma));
    case WindowKind::Bspline:
        if (ax >= edge) return 0.0;
        return cardinal_bspline(2 * w.s, cfg.L * ax * w.s / cfg.m) / w.m2s0;
    case WindowKind::Sinh: {
        if (ax >= edge) return 0.0;
        const double y = cfg.L * ax / cfg.m;
        return sinh_ratio(w.beta, std::sqrt((1.0 - y) * (1.0 + y)));
    }
    }
    return 0.0;
}

inline double eval_truncated(const WindowSpec& w, const SamplingConfig& cfg, double x) {
    if (std::abs(x) > cfg.support()) return 0.0;
    return eval_window(w, cfg, x);
}

inline double window_ft_at_zero(const WindowSpec& w, const SamplingConfig& cfg) {
    const double m = cfg.m;
    const double L = cfg.L;
    switch (w.kind) {
    case WindowKind::Rect: return 2.0 * m / L;
    case WindowKind::Gauss: return std::sqrt(2.0 * std::numbers::pi) * w.sigma;
    case WindowKind::Bspline: return m / (w.s * L * w.m2s0);
    case WindowKind::Sinh:
        // pi m I1(beta) / (L sinh beta), with the exponentials cancelled
        return std::numbers::pi * m * bessel_i1_scaled(w.beta) * 2.0 / (L * (-std::expm1(-2.0 * w.beta)));
    }
    return 0.0;
}

} // namespace regusamp
