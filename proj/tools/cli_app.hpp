#pragma once

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regusamp/regusamp.hpp"

#ifndef REGUSAMP_PRESET_DIR
#define REGUSAMP_PRESET_DIR "presets"
#endif

namespace regusamp::cli {

enum ExitCode : int { Ok = 0, SelftestFailed = 1, Usage = 2, DataRange = 3, BoundFailure = 4, Io = 5 };

struct Selfcheck {
    std::string name;
    std::function<std::string()> run; // empty string on success, else detail
};

inline std::string near(double got, double want, double tol) {
    if (std::abs(got - want) <= tol) return "";
    std::ostringstream os;
    os.precision(17);
    os << "got " << got << " want " << want;
    return os.str();
}

inline std::vector<Selfcheck> selfchecks() {
    std::vector<Selfcheck> checks;
    checks.push_back({"erf(1)", [] { return near(erf(1.0), 0.8427007929497149, 1e-15); }});
    checks.push_back({"J1(1)", [] { return near(bessel_j1(1.0), 0.4400505857449335, 1e-15); }});
    checks.push_back({"J1 small argument", [] { return near(bessel_j1(1e-6) / 1e-6, 0.5, 1e-10); }});
    checks.push_back({"I1(1)", [] { return near(bessel_i1(1.0), 0.5651591039924851, 1e-15); }});
    checks.push_back({"M_2s(0) exact", [] {
        const std::pair<int, const char*> table[] = {{1, "1"},          {2, "2/3"},           {3, "11/20"},
                                                     {4, "151/315"},    {5, "15619/36288"},   {6, "655177/1663200"}};
        for (const auto& [s, text] : table) {
            if (m2s_at_zero_exact(s) != BigRational(text)) return "s=" + std::to_string(s) + " is not " + text;
        }
        return std::string();
    }});
    checks.push_back({"M_100(0)", [] { return near(m2s_at_zero(50), 0.137990, 5e-7); }});
    checks.push_back({"cardinal_bspline vs exact", [] { return near(cardinal_bspline(6, 0.0), 0.55, 1e-15); }});
    checks.push_back({"Eulerian E(5,2)", [] { return eulerian_number(5, 3) == 66 ? std::string() : "not 66"; }});
    checks.push_back({"interpolation", [] {
        const SamplingConfig cfg(128, 1.0, 1.0 / 3.0, 6);
        const auto ss = sample(TestFunction::sinc_band(cfg.delta), cfg, -300, 300);
        for (WindowKind kind : {WindowKind::Rect, WindowKind::Gauss, WindowKind::Bspline, WindowKind::Sinh}) {
            const auto w = default_params(kind, cfg);
            for (long long l : {-200LL, -7LL, 0LL, 3LL, 255LL}) {
                const double got = reconstruct_at(ss, w, static_cast<double>(l) / cfg.L);
                if (got != ss.clean(l)) return std::string(to_string(kind)) + " at l=" + std::to_string(l);
            }
        }
        return std::string();
    }});
    checks.push_back({"transform vs quadrature", [] {
        const SamplingConfig cfg(128, 1.0, 1.0 / 3.0, 5);
        for (WindowKind kind : {WindowKind::Gauss, WindowKind::Bspline, WindowKind::Sinh}) {
            const KernelEval k{default_params(kind, cfg), cfg};
            for (double v : {0.0, 0.5 * cfg.L, 1.1 * cfg.L}) {
                const auto msg = near(ft_psi(k, v), ft_psi_direct(k, v), 1e-8);
                if (!msg.empty()) return std::string(to_string(kind)) + " v=" + std::to_string(v) + ": " + msg;
            }
        }
        return std::string();
    }});
    return checks;
}

inline int cmd_selftest(std::ostream& out, std::ostream& err) {
    int failed = 0;
    out << "check,status,detail\n";
    for (const auto& c : selfchecks()) {
        std::string detail;
        try {
            detail = c.run();
        } catch (const std::exception& e) {
            detail = std::string("threw: ") + e.what();
        }
        const bool ok = detail.empty();
        failed += ok ? 0 : 1;
        out << c.name << ',' << (ok ? "pass" : "FAIL") << ',' << detail << '\n';
    }
    if (failed) err << failed << " selftest check(s) failed\n";
    return failed ? SelftestFailed : Ok;
}

struct ConfigFlags {
    int N = 128;
    double lambda = 1.0;
    std::string tau = "1/3";
    int m = 5;

    void add(CLI::App* sub) {
        sub->add_option("--N", N, "bandwidth scale")->capture_default_str();
        sub->add_option("--lambda", lambda, "oversampling parameter")->capture_default_str();
        sub->add_option("--tau", tau, "bandwidth fraction (fractions such as 1/3 allowed)")->capture_default_str();
        sub->add_option("--m", m, "truncation parameter")->capture_default_str();
    }

    SamplingConfig make(std::ostream& err) const {
        SamplingConfig cfg(N, lambda, detail::parse_number(tau), m);
        if (cfg.support_warning()) {
            err << "warning: 2m = " << 2 * m << " exceeds L/4 = " << cfg.L / 4.0 << "; localized sampling assumes 2m << L\n";
        }
        return cfg;
    }
};

inline void write_row(std::ostream& out, double t, double value) {
    std::ostringstream os;
    os.precision(17);
    os << t << ',' << value << '\n';
    out << os.str();
}

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline std::uint64_t seed_override(std::uint64_t seed, std::ostream& err) {
    if (const char* env = std::getenv("REGUSAMP_SEED")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
            return v;
        } catch (const std::exception&) {
            err << "warning: ignoring unparsable REGUSAMP_SEED='" << env << "'\n";
        }
    }
    return seed;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Regularized Shannon sampling with localized sampling"};
    app.name("regusamp");
    app.require_subcommand(1, 1);

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "reconstruct f(t) from equispaced samples");
    ConfigFlags rec_cfg;
    rec_cfg.add(rec);
    std::string samples_path;
    std::string window_name = "sinh";
    std::optional<double> at;
    std::string grid;
    std::optional<double> sigma;
    std::optional<int> s_param;
    std::optional<double> beta;
    bool kahan = false;
    rec->add_option("--samples", samples_path, "CSV with header index,value")->required();
    rec->add_option("--window", window_name, "rect, gauss, bspline or sinh")
        ->check(CLI::IsMember({"rect", "gauss", "bspline", "sinh"}))
        ->capture_default_str();
    auto* at_opt = rec->add_option("--at", at, "single evaluation point");
    auto* grid_opt = rec->add_option("--grid", grid, "a,b,count evaluation grid (inclusive)");
    at_opt->excludes(grid_opt);
    rec->add_option("--sigma", sigma, "Gaussian width (default from the error bound)");
    rec->add_option("--s", s_param, "B-spline half order (default ceil((m+1)/2))");
    rec->add_option("--beta", beta, "sinh shape (default pi m (1+lambda-2tau)/(1+lambda))");
    rec->add_flag("--kahan", kahan, "compensated summation");

    // bounds
    auto* bnd = app.add_subcommand("bounds", "error constants and closed-form bounds");
    ConfigFlags bnd_cfg;
    bnd_cfg.add(bnd);
    std::vector<std::string> bnd_windows{"rect", "gauss", "bspline", "sinh"};
    double bnd_eps = 1e-3;
    int sinh_case = 2;
    int grid_points = 4097;
    bnd->add_option("--window", bnd_windows, "windows to report")
        ->check(CLI::IsMember({"rect", "gauss", "bspline", "sinh"}))
        ->delimiter(',');
    bnd->add_option("--eps", bnd_eps, "noise level for the robustness bounds")->capture_default_str();
    bnd->add_option("--sinh-case", sinh_case, "sinh parameter choice: 2 (default) or 1")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    bnd->add_option("--grid-points", grid_points, "grid size for max |eta|")
        ->check(CLI::Range(2, 1 << 24))
        ->capture_default_str();

    // experiment
    auto* exp = app.add_subcommand("experiment", "run an experiment plan and write the error CSV");
    std::string plan_path;
    std::string preset;
    std::string out_path;
    std::string preset_dir = REGUSAMP_PRESET_DIR;
    int jobs = 0;
    std::optional<long long> s_override;
    std::optional<int> trials_override;
    auto* plan_opt = exp->add_option("--plan", plan_path, "plan file (key = value lines)");
    auto* preset_opt = exp->add_option("--preset", preset, "fig2, fig3, fig5, fig6, fig8, fig9 or fig10");
    plan_opt->excludes(preset_opt);
    exp->add_option("--out", out_path, "output CSV (default: stdout)");
    exp->add_option("--preset-dir", preset_dir, "directory holding <preset>.conf")->capture_default_str();
    exp->add_option("--jobs", jobs, "worker threads (0: all processors)")->check(CLI::NonNegativeNumber);
    exp->add_option("--S", s_override, "override the number of evaluation points");
    exp->add_option("--trials", trials_override, "override the number of noise trials");

    app.add_subcommand("selftest", "run the quick invariant checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::CallForVersion&) {
        out << "regusamp\n";
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return Usage;
    }

    try {
        if (rec->parsed()) {
            if (!at && grid.empty()) {
                err << "error: one of --at or --grid is required\n";
                return Usage;
            }
            const SamplingConfig cfg = rec_cfg.make(err);
            const WindowKind kind = parse_window_kind(window_name);
            WindowSpec w = default_params(kind, cfg);
            if (sigma && kind == WindowKind::Gauss) w = WindowSpec::gauss(*sigma);
            if (s_param && kind == WindowKind::Bspline) w = WindowSpec::bspline(*s_param);
            if (beta && kind == WindowKind::Sinh) w = WindowSpec::sinh(*beta);
            if (kind == WindowKind::Gauss && !sigma) err << "sigma = " << fmt(w.sigma) << " (default)\n";
            if (kind == WindowKind::Bspline && !s_param) err << "s = " << w.s << " (default)\n";
            if (kind == WindowKind::Sinh && !beta) err << "beta = " << fmt(w.beta) << " (default)\n";

            std::ifstream in(samples_path);
            if (!in) {
                err << "error: cannot read samples '" << samples_path << "'\n";
                return Io;
            }
            const SampleSet ss = read_samples_csv(in, cfg);

            std::vector<double> ts;
            if (at) {
                ts.push_back(*at);
            } else {
                const auto parts = detail::split(grid, ',');
                if (parts.size() != 3) throw InvalidArgument("--grid expects a,b,count");
                const double a = detail::parse_number(parts[0]);
                const double b = detail::parse_number(parts[1]);
                const long long count = detail::parse_integer(parts[2]);
                if (count < 1) throw InvalidArgument("--grid count must be >= 1");
                for (long long i = 0; i < count; ++i) ts.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
            }
            const ReconstructOptions opt{kahan};
            std::ostringstream buffer;
            buffer << "t,value\n";
            for (double t : ts) write_row(buffer, t, reconstruct(SampleView{&ss, false}, KernelEval{w, cfg}, t, opt));
            out << buffer.str();
            return Ok;
        }

        if (bnd->parsed()) {
            const SamplingConfig cfg = bnd_cfg.make(err);
            const SinhCase sc = sinh_case == 1 ? SinhCase::One : SinhCase::Two;
            out << "window,m,tau,lambda,e1,e2,closed_form,robustness_generic,robustness_specialized,eta_max\n";
            for (const auto& name : bnd_windows) {
                const WindowSpec w = default_params(parse_window_kind(name), cfg, sc);
                const BoundReport r = bound_report(w, cfg, bnd_eps, grid_points);
                out << name << ',' << cfg.m << ',' << fmt(cfg.tau) << ',' << fmt(cfg.lambda) << ',' << fmt(r.e1) << ','
                    << fmt(r.e2) << ',' << (r.closed_form ? fmt(*r.closed_form) : "NA") << ','
                    << fmt(r.robustness.generic) << ','
                    << (r.robustness.specialized ? fmt(*r.robustness.specialized) : "NA") << ',' << fmt(r.eta_max)
                    << '\n';
            }
            return Ok;
        }

        if (exp->parsed()) {
            ExperimentPlan plan;
            if (!plan_path.empty()) {
                plan = load_plan(plan_path);
            } else if (!preset.empty()) {
                plan = load_plan(preset_dir + "/" + preset + ".conf");
            } else {
                err << "error: one of --plan or --preset is required\n";
                return Usage;
            }
            plan.seed = seed_override(plan.seed, err);
            if (s_override) plan.S = *s_override;
            if (trials_override) plan.trials = *trials_override;
            for (int m : plan.m_list) {
                for (const auto& [tau, lam] : plan.tau_lambda()) {
                    if (SamplingConfig(plan.N, lam, tau, m).support_warning()) {
                        err << "warning: 2m > L/4 for m=" << m << " lambda=" << lam << "\n";
                    }
                }
            }
            const ErrorReport report = run_plan(plan, RunOptions{jobs});
            if (out_path.empty()) {
                std::ostringstream buffer;
                write_csv(buffer, report);
                out << buffer.str();
            } else {
                emit_csv(report, out_path);
            }
            try {
                assert_dominance(report);
            } catch (const BoundViolation& e) {
                err << "error: " << e.what() << '\n';
                return BoundFailure;
            }
            return Ok;
        }

        return cmd_selftest(out, err);
    } catch (const IndexOutOfRange& e) {
        err << "error: " << e.what() << '\n';
        return DataRange;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return Io;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return Io;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return Usage;
    } catch (const ConditionViolated& e) {
        err << "error: " << e.what() << '\n';
        return Usage;
    } catch (const Error& e) {
        // numerical failures (no convergence, overflow) are reported as data-range problems
        err << "error: " << e.what() << '\n';
        return DataRange;
    }
}

} // namespace regusamp::cli
