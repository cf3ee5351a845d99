#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "regusamp/errors.hpp"
#include "regusamp/kernel.hpp"
#include "regusamp/windows.hpp"

namespace regusamp {

enum class TestKind { SincBand, SincSqBand, Custom };

struct TestFunction {
    TestKind kind = TestKind::SincBand;
    double delta = 0.0;
    std::function<double(double)> custom;

    static TestFunction sinc_band(double delta) { return {TestKind::SincBand, delta, {}}; }
    static TestFunction sinc_sq_band(double delta) { return {TestKind::SincSqBand, delta, {}}; }
    static TestFunction from(std::function<double(double)> f) { return {TestKind::Custom, 0.0, std::move(f)}; }

    double operator()(double t) const {
        switch (kind) {
        case TestKind::SincBand: return std::sqrt(2.0 * delta) * sinc(2.0 * delta * std::numbers::pi * t);
        case TestKind::SincSqBand: {
            const double s = sinc(delta * std::numbers::pi * t);
            return delta * s * s;
        }
        case TestKind::Custom: return custom(t);
        }
        return 0.0;
    }

    // L2 norm; SincBand is normalised to 1, SincSqBand has norm sqrt(2 delta / 3).
    double l2_norm() const {
        switch (kind) {
        case TestKind::SincBand: return 1.0;
        case TestKind::SincSqBand: return std::sqrt(2.0 * delta / 3.0);
        case TestKind::Custom: break;
        }
        return std::nan("");
    }
};

inline std::string_view to_string(TestKind k) {
    switch (k) {
    case TestKind::SincBand: return "sinc";
    case TestKind::SincSqBand: return "sinc2";
    case TestKind::Custom: return "custom";
    }
    return "?";
}

// Samples f(l/L) for l in [index_lo, index_hi]. Perturbations live beside the
// clean values so both reconstructions can be taken from one set.
struct SampleSet {
    SamplingConfig cfg;
    long long index_lo = 0;
    long long index_hi = -1;
    std::vector<double> values;
    std::vector<double> noise;
    double noise_eps = 0.0;

    long long size() const { return index_hi - index_lo + 1; }
    bool contains(long long lo, long long hi) const { return lo >= index_lo && hi <= index_hi; }
    double clean(long long l) const { return values[static_cast<std::size_t>(l - index_lo)]; }
    double noisy(long long l) const {
        const auto i = static_cast<std::size_t>(l - index_lo);
        return noise.empty() ? values[i] : values[i] + noise[i];
    }
};

// Anything that hands out f(l/L) over a contiguous index range.
template <class S>
concept SampleSource = requires(const S& s, long long l) {
    { s.lo() } -> std::convertible_to<long long>;
    { s.hi() } -> std::convertible_to<long long>;
    { s(l) } -> std::convertible_to<double>;
};

struct SampleView {
    const SampleSet* set;
    bool use_noisy;
    long long lo() const { return set->index_lo; }
    long long hi() const { return set->index_hi; }
    double operator()(long long l) const { return use_noisy ? set->noisy(l) : set->clean(l); }
};

inline SampleSet sample(const TestFunction& f, const SamplingConfig& cfg, long long lo, long long hi) {
    if (lo > hi) throw InvalidArgument("sample: lo > hi");
    SampleSet ss;
    ss.cfg = cfg;
    ss.index_lo = lo;
    ss.index_hi = hi;
    ss.values.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long long l = lo; l <= hi; ++l) ss.values.push_back(f(static_cast<double>(l) / cfg.L));
    return ss;
}

// Uniform noise on (-eps, eps). The generator is std::mt19937_64 seeded via
// std::seed_seq and the doubles are built from its top 53 bits, so the stream
// is the same on every conforming platform. Draws run in index order.
inline std::vector<double> uniform_noise(std::size_t count, double eps, std::seed_seq& seq) {
    std::mt19937_64 gen(seq);
    std::vector<double> out(count);
    for (auto& e : out) {
        double u = 0.0;
        while (u == 0.0) u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        e = eps * (2.0 * u - 1.0);
    }
    return out;
}

inline std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t sub = 0) {
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                         static_cast<std::uint32_t>(sub), static_cast<std::uint32_t>(sub >> 32)};
}

inline SampleSet perturb(const SampleSet& ss, double eps, std::uint64_t seed) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("perturb: eps must be > 0");
    SampleSet out = ss;
    auto seq = make_seed_seq(seed);
    out.noise = uniform_noise(ss.values.size(), eps, seq);
    out.noise_eps = eps;
    return out;
}

struct ReconstructOptions {
    bool kahan = false;
};

// The 2m coefficients psi(t - l/L) for l = first .. first + 2m - 1, with
// first = floor(Lt) - m + 1. Returns false (and leaves weights alone) when t
// sits on the grid; *grid_index then receives that index.
inline bool kernel_weights(const KernelEval& k, double t, long long& first, std::span<double> weights,
                           long long* grid_index = nullptr) {
    const double L = k.cfg.L;
    const int m = k.cfg.m;
    const double lt = L * t;
    const double nearest = std::round(lt);
    if (std::abs(lt - nearest) <= 1e-13 * std::max(1.0, std::abs(lt))) {
        if (grid_index) *grid_index = static_cast<long long>(nearest);
        return false;
    }
    const double kf = std::floor(lt);
    const long long kk = static_cast<long long>(kf);
    const double frac = lt - kf;
    // sin(pi (Lt - l)) = (-1)^(k - l) sin(pi frac); reflecting frac > 1/2 keeps
    // full relative accuracy when Lt sits just below a grid point
    const double g = frac > 0.5 ? 1.0 - frac : frac;
    const double s = std::sin(std::numbers::pi * g) / std::numbers::pi;
    first = kk - m + 1;
    for (int i = 0; i < 2 * m; ++i) {
        const int offset = m - 1 - i; // k - l
        const double d = frac + offset;
        const double sign = (offset % 2 == 0) ? 1.0 : -1.0;
        weights[static_cast<std::size_t>(i)] = sign * s / d * eval_truncated(k.window, k.cfg, d / L);
    }
    return true;
}

// Sum of values[i] * weights[i], taken from both ends toward the middle.
inline double edge_inward_dot(std::span<const double> values, std::span<const double> weights, bool kahan) {
    const std::size_t n = weights.size();
    double sum = 0.0;
    double comp = 0.0;
    std::size_t lo = 0;
    std::size_t hi = n;
    bool left = true;
    while (lo < hi) {
        const std::size_t i = left ? lo++ : --hi;
        left = !left;
        const double term = values[i] * weights[i];
        if (kahan) {
            const double y = term - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        } else {
            sum += term;
        }
    }
    return sum;
}

template <SampleSource S>
double reconstruct(const S& src, const KernelEval& k, double t, ReconstructOptions opt = {}) {
    const int m = k.cfg.m;
    std::vector<double> w(static_cast<std::size_t>(2 * m));
    long long first = 0;
    long long grid = 0;
    if (!kernel_weights(k, t, first, w, &grid)) {
        if (grid < src.lo() || grid > src.hi()) throw IndexOutOfRange(grid, grid, src.lo(), src.hi());
        return src(grid);
    }
    const long long last = first + 2 * m - 1;
    if (first < src.lo() || last > src.hi()) throw IndexOutOfRange(first, last, src.lo(), src.hi());
    std::vector<double> vals(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) vals[i] = src(first + static_cast<long long>(i));
    return edge_inward_dot(vals, w, opt.kahan);
}

inline double reconstruct_at(const SampleSet& ss, const WindowSpec& w, double t, bool use_noisy = false,
                             ReconstructOptions opt = {}) {
    return reconstruct(SampleView{&ss, use_noisy}, KernelEval{w, ss.cfg}, t, opt);
}

// Localized sampling with the plain (rectangular-window) sinc kernel.
inline double classical_truncated(const SampleSet& ss, double t, bool use_noisy = false) {
    return reconstruct_at(ss, WindowSpec::rect(), t, use_noisy);
}

// Samples needed so that every t in [a, b] can be reconstructed.
inline std::pair<long long, long long> required_range(const SamplingConfig& cfg, double a, double b) {
    return {static_cast<long long>(std::floor(cfg.L * a)) - cfg.m + 1,
            static_cast<long long>(std::floor(cfg.L * b)) + cfg.m};
}

// CSV with header "index,value"; indices must be contiguous and ascending.
inline SampleSet read_samples_csv(std::istream& in, const SamplingConfig& cfg) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("samples: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "index,value") throw ParseError("samples: expected header 'index,value', got '" + line + "'");
    SampleSet ss;
    ss.cfg = cfg;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("samples line " + std::to_string(lineno) + ": missing comma");
        long long idx = 0;
        double val = 0.0;
        try {
            std::size_t used = 0;
            idx = std::stoll(line.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("index");
            const std::string rest = line.substr(comma + 1);
            val = std::stod(rest, &used);
            if (used != rest.size()) throw std::invalid_argument("value");
        } catch (const std::exception&) {
            throw ParseError("samples line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
        }
        if (ss.values.empty()) {
            ss.index_lo = idx;
        } else if (idx != ss.index_hi + 1) {
            throw ParseError("samples line " + std::to_string(lineno) + ": index " + std::to_string(idx) +
                             " breaks the contiguous ascending run");
        }
        ss.index_hi = idx;
        ss.values.push_back(val);
    }
    if (ss.values.empty()) throw ParseError("samples: no data rows");
    return ss;
}

inline void write_samples_csv(std::ostream& out, const SampleSet& ss, bool use_noisy = false) {
    out << "index,value\n";
    out.precision(17);
    for (long long l = ss.index_lo; l <= ss.index_hi; ++l) {
        out << l << ',' << (use_noisy ? ss.noisy(l) : ss.clean(l)) << '\n';
    }
}

} // namespace regusamp
