#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "regusamp/errors.hpp"
#include "regusamp/kernel.hpp"
#include "regusamp/quadrature.hpp"
#include "regusamp/specfun.hpp"
#include "regusamp/windows.hpp"

namespace regusamp {

namespace detail {

inline Quadrature eta_quadrature() { return {1e-16, 1e-14, 4000}; }

// integral of phi_hat over [0, x0], x0 = L/2 - delta, taken panel by panel
// between the zeros of the transform so no panel straddles a sign change.
inline double window_ft_integral(const WindowSpec& w, const SamplingConfig& cfg, double a, double b) {
    auto f = [&](double u) { return ft_window(w, cfg, u); };
    const double step = cfg.L / static_cast<double>(2 * cfg.m);
    double sum = 0.0;
    double lo = a;
    while (lo < b) {
        double hi = (std::floor(lo / step) + 1.0) * step;
        if (hi <= lo) hi = lo + step;
        hi = std::min(b, hi);
        sum += integrate(f, lo, hi, eta_quadrature()).value;
        lo = hi;
    }
    return sum;
}

inline bool close_to(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

} // namespace detail

// eta(v) = 1 - integral of phi_hat over [v - L/2, v + L/2], for |v| <= delta.
class EtaEvaluator {
public:
    EtaEvaluator(const WindowSpec& w, const SamplingConfig& cfg) : w_(w), cfg_(cfg) {
        x0_ = 0.5 * cfg.L - cfg.delta;
        if (w.kind != WindowKind::Gauss) base_ = 1.0 - 2.0 * detail::window_ft_integral(w, cfg, 0.0, x0_);
    }

    double operator()(double v) const {
        const double av = std::abs(v);
        const double half = 0.5 * cfg_.L;
        if (w_.kind == WindowKind::Gauss) {
            const double c = std::numbers::sqrt2 * std::numbers::pi * w_.sigma;
            return 0.5 * (erfc(c * (half + av)) + erfc(c * (half - av)));
        }
        return base_ - partial(half - av) - partial(half + av);
    }

    // integral of phi_hat over [x0, y]
    double partial(double y) const { return detail::window_ft_integral(w_, cfg_, x0_, y); }
    double base() const { return base_; }
    double x0() const { return x0_; }

private:
    WindowSpec w_;
    SamplingConfig cfg_;
    double x0_ = 0.0;
    double base_ = 0.0;
};

inline double eta(const WindowSpec& w, const SamplingConfig& cfg, double v) {
    if (std::abs(v) > cfg.delta * (1.0 + 1e-12)) throw InvalidArgument("eta: |v| must not exceed delta");
    return EtaEvaluator(w, cfg)(v);
}

// max |eta| over [0, delta]: a uniform grid, then golden-section refinement
// around the grid argmax.
inline double eta_max(const WindowSpec& w, const SamplingConfig& cfg, int grid_points = 4097) {
    if (grid_points < 2) throw InvalidArgument("e1_numeric: grid_points must be >= 2");
    const EtaEvaluator ev(w, cfg);
    const int g = grid_points;
    const double h = cfg.delta / (g - 1);
    std::vector<double> vals(static_cast<std::size_t>(g));
    if (w.kind == WindowKind::Gauss) {
        for (int j = 0; j < g; ++j) vals[j] = ev(j * h);
    } else {
        // Both limits L/2 -+ v_j fall on the common grid x0 + i h, i = 0 .. 2(g-1).
        const int n = 2 * (g - 1);
        std::vector<double> cum(static_cast<std::size_t>(n) + 1, 0.0);
        auto f = [&](double u) { return ft_window(w, cfg, u); };
        for (int i = 0; i < n; ++i) {
            const double a = ev.x0() + i * h;
            cum[i + 1] = cum[i] + integrate(f, a, a + h, detail::eta_quadrature()).value;
        }
        for (int j = 0; j < g; ++j) vals[j] = ev.base() - cum[g - 1 - j] - cum[g - 1 + j];
    }
    int best = 0;
    for (int j = 1; j < g; ++j) {
        if (std::abs(vals[j]) > std::abs(vals[best])) best = j;
    }
    double result = std::abs(vals[best]);
    double a = std::max(0, best - 1) * h;
    double b = std::min(g - 1, best + 1) * h;
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = std::abs(ev(c));
    double fd = std::abs(ev(d));
    for (int it = 0; it < 3; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = std::abs(ev(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = std::abs(ev(d));
        }
    }
    return std::max({result, fc, fd});
}

inline double e1_numeric(const WindowSpec& w, const SamplingConfig& cfg, int grid_points = 4097) {
    return std::sqrt(2.0 * cfg.delta) * eta_max(w, cfg, grid_points);
}

// sqrt(2 delta) * sum over k != 0 of max |L psi_hat(v)| on [kL - delta, kL + delta].
// E1 only looks at |v| <= delta, but the sampled spectrum repeats with period L
// and those copies leak through psi_hat; adding this term to E1 gives a
// constant that does dominate the regularization error for every window.
inline double e1_alias_numeric(const WindowSpec& w, const SamplingConfig& cfg, int max_k = 64, int points = 33) {
    const double L = cfg.L;
    const double d = cfg.delta;
    const KernelEval k{w, cfg};
    double sum = 0.0;
    for (int j = 1; j <= max_k; ++j) {
        double best = 0.0;
        for (int i = 0; i < points; ++i) {
            const double v = j * L - d + 2.0 * d * i / (points - 1);
            const double lp = w.kind == WindowKind::Gauss
                                  ? L * ft_psi_gauss(k, v)
                                  : detail::window_ft_integral(w, cfg, v - 0.5 * L, v + 0.5 * L);
            best = std::max(best, std::abs(lp));
        }
        sum += 2.0 * best;
        if (best < 1e-18) break;
    }
    return std::sqrt(2.0 * d) * sum;
}

// Truncation constant. Zero for the compactly supported windows; exact for
// the Gaussian via erfc.
inline double e2_numeric(const WindowSpec& w, const SamplingConfig& cfg) {
    if (w.kind != WindowKind::Gauss) return 0.0;
    const double m = cfg.m;
    const double L = cfg.L;
    const double sg = w.sigma;
    const double a = m / (L * sg);
    const double inner = std::exp(-a * a) + L * sg * std::sqrt(std::numbers::pi) / 2.0 * erfc(a);
    return std::sqrt(2.0 * L) / (std::numbers::pi * m) * std::sqrt(inner);
}

// Upper estimates of E1 and E2 for a Gaussian with arbitrary sigma.
inline double gauss_e1_estimate(const SamplingConfig& cfg, double sigma) {
    const double x0 = 0.5 * cfg.L - cfg.delta;
    return std::sqrt(cfg.delta) / (std::sqrt(std::numbers::pi) * std::numbers::pi * sigma * x0) *
           std::exp(-2.0 * std::numbers::pi * std::numbers::pi * sigma * sigma * x0 * x0);
}

inline double gauss_e2_estimate(const SamplingConfig& cfg, double sigma) {
    const double m = cfg.m;
    const double L = cfg.L;
    return std::sqrt(2.0 * L) / (std::numbers::pi * m) * std::sqrt((2.0 * m + L * L * sigma * sigma) / (2.0 * m)) *
           std::exp(-m * m / (2.0 * L * L * sigma * sigma));
}

inline double rect_bound(const SamplingConfig& cfg) {
    const double m = cfg.m;
    return cfg.L / std::numbers::pi * std::sqrt(2.0 / m + 1.0 / (m * m));
}

inline double gauss_bound(const SamplingConfig& cfg) {
    const double pi = std::numbers::pi;
    const double m = cfg.m;
    const double L = cfg.L;
    const double d = cfg.delta;
    return (2.0 * std::sqrt(pi * d * L) + L * (m + 1.0) / std::sqrt(m)) / (pi * std::sqrt(m * pi * (L - 2.0 * d))) *
           std::exp(-pi * m * (L / 2.0 - d) / L);
}

// tau/(1+lambda) < 1/2 - 1/pi
inline bool bspline_bound_applies(const SamplingConfig& cfg) {
    return cfg.tau / (1.0 + cfg.lambda) < 0.5 - 1.0 / std::numbers::pi;
}

inline double bspline_bound(const SamplingConfig& cfg) {
    if (!bspline_bound_applies(cfg)) {
        throw ConditionViolated("bspline bound needs tau/(1+lambda) < 1/2 - 1/pi; got " +
                                std::to_string(cfg.tau / (1.0 + cfg.lambda)));
    }
    const double m = cfg.m;
    const double s = default_s(cfg);
    const double lam = cfg.lambda;
    const double expo = m * (std::log(std::numbers::pi * m * (1.0 + lam - 2.0 * cfg.tau)) - std::log(2.0 * s * (1.0 + lam)));
    return 3.0 * std::sqrt(cfg.delta * s) / ((2.0 * s - 1.0) * std::numbers::pi) * std::exp(-expo);
}

inline double sinh_bound(const SamplingConfig& cfg, SinhCase c = SinhCase::Two) {
    const double beta = default_beta(cfg, c);
    const double d = cfg.delta;
    if (c == SinhCase::Two) return 3.0 * std::sqrt(2.0 * d) * std::exp(-beta);
    const double lam = cfg.lambda;
    const double w0 = (1.0 + lam - 2.0 * cfg.tau) / (1.0 + lam + 2.0 * cfg.tau);
    const double r = std::sqrt(1.0 - w0 * w0);
    const double first = std::sqrt(beta * std::numbers::pi * d) / ((1.0 - 2.0 * std::exp(-beta)) * std::sqrt(r)) *
                         std::exp(-beta * (1.0 - r));
    const double second = 2.0 * std::sqrt(2.0 * d) / (-std::expm1(-2.0 * beta)) * std::exp(-beta);
    return first + second;
}

// The closed-form uniform bound for a window at its default parameter.
// Non-default parameters have no closed form and raise ConditionViolated.
inline double closed_form_bound(const WindowSpec& w, const SamplingConfig& cfg) {
    switch (w.kind) {
    case WindowKind::Rect: return rect_bound(cfg);
    case WindowKind::Gauss:
        if (!detail::close_to(w.sigma, default_sigma(cfg))) throw ConditionViolated("gauss bound assumes the default sigma");
        return gauss_bound(cfg);
    case WindowKind::Bspline:
        if (w.s != default_s(cfg)) throw ConditionViolated("bspline bound assumes s = ceil((m+1)/2)");
        return bspline_bound(cfg);
    case WindowKind::Sinh:
        if (detail::close_to(w.beta, default_beta(cfg, SinhCase::Two))) return sinh_bound(cfg, SinhCase::Two);
        if (detail::close_to(w.beta, default_beta(cfg, SinhCase::One))) return sinh_bound(cfg, SinhCase::One);
        throw ConditionViolated("sinh bound assumes one of the two default beta choices");
    }
    throw InvalidArgument("unknown window kind");
}

struct RobustnessBound {
    double generic = 0.0;
    std::optional<double> specialized;
};

inline RobustnessBound robustness_bound(const WindowSpec& w, const SamplingConfig& cfg, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("robustness_bound: eps must be > 0");
    RobustnessBound r;
    r.generic = eps * (2.0 + cfg.L * window_ft_at_zero(w, cfg));
    const double m = cfg.m;
    const double lam = cfg.lambda;
    const double root = std::sqrt((2.0 + 2.0 * lam) / (1.0 + lam - 2.0 * cfg.tau));
    switch (w.kind) {
    case WindowKind::Rect: break;
    case WindowKind::Gauss:
        if (detail::close_to(w.sigma, default_sigma(cfg))) r.specialized = eps * (2.0 + root * std::sqrt(m));
        break;
    case WindowKind::Bspline:
        if (w.s == default_s(cfg)) r.specialized = eps * (2.0 + 1.5 * std::sqrt(m));
        break;
    case WindowKind::Sinh:
        if (detail::close_to(w.beta, default_beta(cfg, SinhCase::Two)) ||
            detail::close_to(w.beta, default_beta(cfg, SinhCase::One))) {
            r.specialized = eps * (2.0 + root * std::sqrt(m) / (-std::expm1(-2.0 * w.beta)));
        }
        break;
    }
    return r;
}

struct BoundReport {
    WindowSpec window;
    SamplingConfig cfg;
    double e1 = 0.0;
    double e2 = 0.0;
    std::optional<double> closed_form;
    RobustnessBound robustness;
    double eta_max = 0.0;
};

inline BoundReport bound_report(const WindowSpec& w, const SamplingConfig& cfg, double eps = 1e-3,
                                int grid_points = 4097) {
    BoundReport r;
    r.window = w;
    r.cfg = cfg;
    r.eta_max = eta_max(w, cfg, grid_points);
    r.e1 = std::sqrt(2.0 * cfg.delta) * r.eta_max;
    r.e2 = e2_numeric(w, cfg);
    try {
        r.closed_form = closed_form_bound(w, cfg);
    } catch (const ConditionViolated&) {
    }
    r.robustness = robustness_bound(w, cfg, eps);
    return r;
}

// Numerical checks of auxiliary inequalities that the closed-form bounds lean on.
namespace diagnostics {

// max of sqrt(x)|J1(x)| over an n-point grid on (0, xmax]; expected < 1.
inline double j1_envelope_max(double xmax = 1e4, int n = 200000) {
    double best = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double x = xmax * i / n;
        best = std::max(best, std::sqrt(x) * std::abs(bessel_j1(x)));
    }
    return best;
}

// max over T in [0, tmax] of (integral_0^T J1(beta sinh t) dt) / (3(1 - e^-beta)/(2 beta)); expected <= 1.
// Substituting x = beta sinh t turns it into integral J1(x)/sqrt(x^2 + beta^2) dx.
inline double sinh_j1_integral_ratio(double beta, double tmax = 10.0) {
    const double xmax = beta * std::sinh(tmax);
    auto f = [&](double x) { return bessel_j1(x) / std::sqrt(x * x + beta * beta); };
    const double step = std::numbers::pi / 8.0;
    const Quadrature q{1e-14, 1e-12, 200};
    double cum = 0.0;
    double best = 0.0;
    for (double a = 0.0; a < xmax; a += step) {
        cum += integrate(f, a, std::min(xmax, a + step), q).value;
        best = std::max(best, cum);
    }
    return best / (3.0 * (-std::expm1(-beta)) / (2.0 * beta));
}

// max over w >= 2 of w^{3/2} / (w^2 - 1)^{3/4}; expected < 5/4.
inline double lemma_power_ratio_max(double wmax = 1e3, int n = 100000) {
    double best = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double w = 2.0 + (wmax - 2.0) * i / n;
        best = std::max(best, std::pow(w, 1.5) / std::pow(w * w - 1.0, 0.75));
    }
    return best;
}

} // namespace diagnostics

} // namespace regusamp
