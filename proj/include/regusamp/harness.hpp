#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "regusamp/bounds.hpp"
#include "regusamp/errors.hpp"
#include "regusamp/reconstruct.hpp"
#include "regusamp/windows.hpp"

namespace regusamp {

struct ExperimentPlan {
    TestKind test_fn = TestKind::SincBand;
    int N = 128;
    std::vector<int> m_list;
    std::vector<double> tau_list;
    std::vector<double> lambda_list;
    // Explicit (tau, lambda) pairs; when empty the product of the two lists is used.
    std::vector<std::pair<double, double>> pairs;
    std::vector<WindowKind> windows;
    long long S = 100000;
    int trials = 100;
    double eps = 0.0;
    std::uint64_t seed = 0;

    // (tau, lambda) in iteration order: lambda outer, tau inner.
    std::vector<std::pair<double, double>> tau_lambda() const {
        if (!pairs.empty()) return pairs;
        std::vector<std::pair<double, double>> out;
        for (double lam : lambda_list) {
            for (double tau : tau_list) out.emplace_back(tau, lam);
        }
        return out;
    }

    void validate() const {
        if (S < 2) throw InvalidConfig("plan: S must be >= 2");
        if (m_list.empty()) throw InvalidConfig("plan: m_list is empty");
        if (windows.empty()) throw InvalidConfig("plan: windows is empty");
        if (tau_lambda().empty()) throw InvalidConfig("plan: no (tau, lambda) pairs");
        if (test_fn == TestKind::Custom) throw InvalidConfig("plan: test_fn must be sinc or sinc2");
        for (const auto& [tau, lam] : tau_lambda()) {
            for (int m : m_list) SamplingConfig(N, lam, tau, m);
        }
        if (eps < 0.0) throw InvalidConfig("plan: eps must be >= 0");
        if (eps > 0.0 && trials < 1) throw InvalidConfig("plan: trials must be >= 1");
    }
};

struct ErrorRow {
    WindowKind window = WindowKind::Rect;
    int m = 0;
    double tau = 0.0;
    double lambda = 0.0;
    double measured = 0.0;
    double bound = 0.0;
    bool bound_valid = false;
};

struct ErrorReport {
    std::vector<ErrorRow> rows;
};

struct RunOptions {
    int jobs = 0; // 0: one per hardware thread
};

struct Cell {
    WindowKind window;
    SamplingConfig cfg;
};

inline std::vector<Cell> plan_cells(const ExperimentPlan& plan) {
    std::vector<Cell> cells;
    for (const auto& [tau, lam] : plan.tau_lambda()) {
        for (WindowKind w : plan.windows) {
            for (int m : plan.m_list) cells.push_back({w, SamplingConfig(plan.N, lam, tau, m)});
        }
    }
    return cells;
}

inline TestFunction plan_function(const ExperimentPlan& plan, const SamplingConfig& cfg) {
    return plan.test_fn == TestKind::SincSqBand ? TestFunction::sinc_sq_band(cfg.delta)
                                                : TestFunction::sinc_band(cfg.delta);
}

inline double grid_point(long long s, long long S) { return -1.0 + 2.0 * static_cast<double>(s) / (S - 1); }

namespace detail {

// Runs body(i) for i in [0, n) on `jobs` threads; the first exception wins.
template <class Body>
void parallel_for(std::size_t n, int jobs, Body body) {
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = jobs > 0 ? static_cast<std::size_t>(jobs) : std::max(1u, hw);
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace detail

// max over the S-point grid of |f(t) - (R f)(t)|, samples l = -L-m .. L+m.
inline double measure_approximation(const TestFunction& f, const WindowSpec& w, const SamplingConfig& cfg, long long S) {
    const SampleSet ss = sample(f, cfg, -cfg.L - cfg.m, cfg.L + cfg.m);
    const SampleView view{&ss, false};
    const KernelEval k{w, cfg};
    double worst = 0.0;
    for (long long s = 0; s < S; ++s) {
        const double t = grid_point(s, S);
        worst = std::max(worst, std::abs(f(t) - reconstruct(view, k, t)));
    }
    return worst;
}

inline ErrorReport run_approximation(const ExperimentPlan& plan, RunOptions opt = {}) {
    plan.validate();
    const auto cells = plan_cells(plan);
    ErrorReport report;
    report.rows.resize(cells.size());
    detail::parallel_for(cells.size(), opt.jobs, [&](std::size_t i) {
        const Cell& c = cells[i];
        const WindowSpec w = default_params(c.window, c.cfg);
        const TestFunction f = plan_function(plan, c.cfg);
        ErrorRow row{c.window, c.cfg.m, c.cfg.tau, c.cfg.lambda, 0.0, 0.0, false};
        row.measured = measure_approximation(f, w, c.cfg, plan.S);
        try {
            row.bound = closed_form_bound(w, c.cfg) * f.l2_norm();
            row.bound_valid = true;
        } catch (const ConditionViolated&) {
            row.bound = std::numeric_limits<double>::quiet_NaN();
        }
        report.rows[i] = row;
    });
    return report;
}

// Noise trials for one cell. By linearity R(f + e) - R(f) = R(e), so the
// kernel weights are computed once per grid point and reused for every trial.
inline double measure_perturbation(const WindowSpec& w, const SamplingConfig& cfg, long long S, int trials, double eps,
                                   std::uint64_t seed, std::uint64_t cell) {
    const KernelEval k{w, cfg};
    const long long lo = -cfg.L - cfg.m;
    const long long hi = cfg.L + cfg.m;
    const std::size_t width = static_cast<std::size_t>(2 * cfg.m);
    std::vector<double> weights(static_cast<std::size_t>(S) * width);
    std::vector<long long> first(static_cast<std::size_t>(S));
    std::vector<char> on_grid(static_cast<std::size_t>(S), 0);
    for (long long s = 0; s < S; ++s) {
        long long f0 = 0;
        long long g = 0;
        std::span<double> row(weights.data() + s * width, width);
        if (!kernel_weights(k, grid_point(s, S), f0, row, &g)) {
            on_grid[s] = 1;
            f0 = g;
        }
        if (f0 < lo || (on_grid[s] ? f0 : f0 + static_cast<long long>(width) - 1) > hi) {
            throw IndexOutOfRange(f0, f0 + static_cast<long long>(width) - 1, lo, hi);
        }
        first[s] = f0;
    }
    double worst = 0.0;
    std::vector<double> vals(width);
    for (int trial = 0; trial < trials; ++trial) {
        auto seq = make_seed_seq(seed, cell, static_cast<std::uint64_t>(trial));
        const auto noise = uniform_noise(static_cast<std::size_t>(hi - lo + 1), eps, seq);
        for (long long s = 0; s < S; ++s) {
            const std::size_t off = static_cast<std::size_t>(first[s] - lo);
            double d;
            if (on_grid[s]) {
                d = noise[off];
            } else {
                std::copy_n(noise.begin() + static_cast<std::ptrdiff_t>(off), width, vals.begin());
                d = edge_inward_dot(vals, std::span<const double>(weights.data() + s * width, width), false);
            }
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

inline ErrorReport run_perturbation(const ExperimentPlan& plan, RunOptions opt = {}) {
    plan.validate();
    if (!(plan.eps > 0.0)) throw InvalidConfig("perturbation plan needs eps > 0");
    const auto cells = plan_cells(plan);
    ErrorReport report;
    report.rows.resize(cells.size());
    detail::parallel_for(cells.size(), opt.jobs, [&](std::size_t i) {
        const Cell& c = cells[i];
        const WindowSpec w = default_params(c.window, c.cfg);
        ErrorRow row{c.window, c.cfg.m, c.cfg.tau, c.cfg.lambda, 0.0, 0.0, true};
        row.measured = measure_perturbation(w, c.cfg, plan.S, plan.trials, plan.eps, plan.seed, i);
        // report the tighter of the generic and window-specific estimates
        const RobustnessBound rb = robustness_bound(w, c.cfg, plan.eps);
        row.bound = rb.specialized ? std::min(rb.generic, *rb.specialized) : rb.generic;
        report.rows[i] = row;
    });
    return report;
}

inline ErrorReport run_plan(const ExperimentPlan& plan, RunOptions opt = {}) {
    return plan.eps > 0.0 ? run_perturbation(plan, opt) : run_approximation(plan, opt);
}

// Throws BoundViolation naming the first row whose measurement exceeds its bound.
inline void assert_dominance(const ErrorReport& report) {
    for (const auto& r : report.rows) {
        if (r.bound_valid && !(r.measured <= r.bound)) {
            std::ostringstream os;
            os.precision(17);
            os << "bound violated: " << to_string(r.window) << " m=" << r.m << " tau=" << r.tau << " lambda=" << r.lambda
               << " measured=" << r.measured << " bound=" << r.bound;
            throw BoundViolation(os.str());
        }
    }
}

inline void write_csv(std::ostream& out, const ErrorReport& report) {
    out << "window,m,tau,lambda,measured,bound,bound_valid\n";
    std::ostringstream os;
    os.precision(17);
    for (const auto& r : report.rows) {
        os.str("");
        os << to_string(r.window) << ',' << r.m << ',' << r.tau << ',' << r.lambda << ',' << r.measured << ',';
        if (r.bound_valid) {
            os << r.bound;
        } else {
            os << "NA";
        }
        os << ',' << (r.bound_valid ? "true" : "false") << '\n';
        out << os.str();
    }
}

inline void emit_csv(const ErrorReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_csv(out, report);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

// Least-squares slope of log(error) against m, skipping values at or below
// the round-off floor. Returns nullopt with fewer than two usable points.
inline std::optional<double> decay_slope(const std::vector<int>& ms, const std::vector<double>& errors, double floor) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < ms.size() && i < errors.size(); ++i) {
        if (!(errors[i] > floor)) continue;
        const double x = ms[i];
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::nullopt;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---- plan files -------------------------------------------------------------
// key = value lines, '#' starts a comment, lists are comma separated and
// numbers may be written as fractions such as 1/3.

namespace detail {

inline std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline double parse_number(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return v;
        }
        const std::string a = trim(text.substr(0, slash));
        const std::string b = trim(text.substr(slash + 1));
        const double num = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(text);
        const double den = std::stod(b, &used);
        if (used != b.size() || den == 0.0) throw std::invalid_argument(text);
        return num / den;
    } catch (const std::exception&) {
        throw ParseError("not a number: '" + text + "'");
    }
}

inline long long parse_integer(const std::string& text) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ParseError("not an integer: '" + text + "'");
    }
}

} // namespace detail

inline TestKind parse_test_kind(const std::string& s) {
    if (s == "sinc") return TestKind::SincBand;
    if (s == "sinc2") return TestKind::SincSqBand;
    throw ParseError("unknown test function '" + s + "' (expected sinc or sinc2)");
}

inline ExperimentPlan parse_plan(std::istream& in) {
    ExperimentPlan plan;
    plan.windows.clear();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("plan line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        const auto items = detail::split(value, ',');
        try {
            if (key == "test_fn") {
                plan.test_fn = parse_test_kind(value);
            } else if (key == "N") {
                plan.N = static_cast<int>(detail::parse_integer(value));
            } else if (key == "m_list") {
                plan.m_list.clear();
                for (const auto& it : items) {
                    const auto dots = it.find("..");
                    if (dots != std::string::npos) {
                        const long long a = detail::parse_integer(detail::trim(it.substr(0, dots)));
                        const long long b = detail::parse_integer(detail::trim(it.substr(dots + 2)));
                        for (long long m = a; m <= b; ++m) plan.m_list.push_back(static_cast<int>(m));
                    } else {
                        plan.m_list.push_back(static_cast<int>(detail::parse_integer(it)));
                    }
                }
            } else if (key == "tau_list") {
                plan.tau_list.clear();
                for (const auto& it : items) plan.tau_list.push_back(detail::parse_number(it));
            } else if (key == "lambda_list") {
                plan.lambda_list.clear();
                for (const auto& it : items) plan.lambda_list.push_back(detail::parse_number(it));
            } else if (key == "pairs") {
                plan.pairs.clear();
                for (const auto& it : items) {
                    const auto colon = it.find(':');
                    if (colon == std::string::npos) throw ParseError("pair '" + it + "' is not tau:lambda");
                    plan.pairs.emplace_back(detail::parse_number(detail::trim(it.substr(0, colon))),
                                            detail::parse_number(detail::trim(it.substr(colon + 1))));
                }
            } else if (key == "windows") {
                plan.windows.clear();
                for (const auto& it : items) plan.windows.push_back(parse_window_kind(it));
            } else if (key == "S") {
                plan.S = detail::parse_integer(value);
            } else if (key == "trials") {
                plan.trials = static_cast<int>(detail::parse_integer(value));
            } else if (key == "eps") {
                plan.eps = detail::parse_number(value);
            } else if (key == "seed") {
                plan.seed = static_cast<std::uint64_t>(detail::parse_integer(value));
            } else {
                throw ParseError("unknown key '" + key + "'");
            }
        } catch (const InvalidArgument& e) {
            throw ParseError("plan line " + std::to_string(lineno) + ": " + e.what());
        } catch (const ParseError& e) {
            throw ParseError("plan line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return plan;
}

inline ExperimentPlan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read plan '" + path + "'");
    return parse_plan(in);
}

} // namespace regusamp
