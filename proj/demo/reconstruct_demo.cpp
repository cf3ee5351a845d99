// Reconstruct a bandlimited signal from its samples with each window and
// print the worst error on [-1, 1] next to the closed-form bound.
#include <cmath>
#include <cstdio>

#include "regusamp/regusamp.hpp"

using namespace regusamp;

int main() {
    for (int m : {4, 8}) {
        const SamplingConfig cfg(128, 1.0, 1.0 / 3.0, m);
        const TestFunction f = TestFunction::sinc_band(cfg.delta);
        std::printf("m = %d (L = %d, delta = %.4g)\n", m, cfg.L, cfg.delta);
        for (WindowKind kind : {WindowKind::Rect, WindowKind::Gauss, WindowKind::Bspline, WindowKind::Sinh}) {
            const WindowSpec w = default_params(kind, cfg);
            const double err = measure_approximation(f, w, cfg, 2001);
            std::printf("  %-8s max error %.3e   bound %.3e\n", std::string(to_string(kind)).c_str(), err,
                        closed_form_bound(w, cfg));
        }
    }

    // A single point, the way a caller would use the library directly.
    const SamplingConfig cfg(128, 1.0, 1.0 / 3.0, 6);
    const auto [lo, hi] = required_range(cfg, 0.0, 0.1);
    const SampleSet ss = sample(TestFunction::sinc_band(cfg.delta), cfg, lo, hi);
    const double t = 0.0421;
    std::printf("sinh window at t = %g: %.15f (exact %.15f)\n", t,
                reconstruct_at(ss, default_params(WindowKind::Sinh, cfg), t),
                TestFunction::sinc_band(cfg.delta)(t));
}
