#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "regusamp/windows.hpp"

using namespace regusamp;

TEST(SamplingConfig, DerivedQuantities) {
    const SamplingConfig cfg(128, 1.0, 1.0 / 3.0, 5);
    EXPECT_EQ(cfg.L, 256);
    EXPECT_NEAR(cfg.delta, 128.0 / 3.0, 1e-12);
    EXPECT_DOUBLE_EQ(cfg.support(), 5.0 / 256.0);
    EXPECT_FALSE(cfg.support_warning());
    EXPECT_EQ(SamplingConfig(128, 0.5, 0.25, 2).L, 192);
    EXPECT_TRUE(SamplingConfig(16, 0.0, 0.25, 3).support_warning());
}

TEST(SamplingConfig, Rejections) {
    EXPECT_THROW(SamplingConfig(0, 1.0, 0.25, 2), InvalidConfig);
    EXPECT_THROW(SamplingConfig(128, -0.1, 0.25, 2), InvalidConfig);
    EXPECT_THROW(SamplingConfig(128, 1.0, 0.0, 2), InvalidConfig);
    EXPECT_THROW(SamplingConfig(128, 1.0, 0.5, 2), InvalidConfig);
    EXPECT_THROW(SamplingConfig(128, 1.0, 0.25, 1), InvalidConfig);
    EXPECT_THROW(SamplingConfig(100, 0.333, 0.25, 2), InvalidConfig);
    EXPECT_THROW(SamplingConfig(8, 0.0, 0.25, 5), InvalidConfig);
    EXPECT_NO_THROW(SamplingConfig(8, 0.0, 0.25, 4));
    EXPECT_TRUE((std::is_base_of_v<InvalidArgument, InvalidConfig>));
}

TEST(WindowKind, RoundTrip) {
    for (auto k : {WindowKind::Rect, WindowKind::Gauss, WindowKind::Bspline, WindowKind::Sinh}) {
        EXPECT_EQ(parse_window_kind(to_string(k)), k);
    }
    EXPECT_THROW(parse_window_kind("kaiser"), InvalidArgument);
}

TEST(WindowSpec, FactoryValidation) {
    EXPECT_THROW(WindowSpec::gauss(0.0), InvalidArgument);
    EXPECT_THROW(WindowSpec::gauss(std::nan("")), InvalidArgument);
    EXPECT_THROW(WindowSpec::bspline(1), InvalidArgument);
    EXPECT_THROW(WindowSpec::sinh(-1.0), InvalidArgument);
    EXPECT_DOUBLE_EQ(WindowSpec::bspline(3).m2s0, 11.0 / 20.0);
}

TEST(Defaults, Formulas) {
    const SamplingConfig cfg(128, 1.0, 1.0 / 3.0, 5);
    const double L = 256.0, d = 128.0 / 3.0;
    EXPECT_NEAR(default_sigma(cfg), std::sqrt(5.0 / (std::numbers::pi * L * (L - 2.0 * d))), 1e-18);
    EXPECT_NEAR(default_sigma(cfg), 0.0060355344066123371928, 1e-17);
    EXPECT_NEAR(default_beta(cfg), 10.471975511965977462, 1e-13);
    EXPECT_NEAR(default_beta(cfg, SinhCase::One), std::numbers::pi * 5.0 * (2.0 + 2.0 / 3.0) / 2.0, 1e-13);
    for (int m = 2; m <= 12; ++m) {
        const SamplingConfig c(128, 1.0, 0.25, m);
        EXPECT_EQ(default_s(c), static_cast<int>(std::ceil((m + 1) / 2.0))) << m;
    }
    EXPECT_EQ(default_params(WindowKind::Bspline, cfg).s, 3);
    EXPECT_EQ(default_params(WindowKind::Rect, cfg).kind, WindowKind::Rect);
}

class WindowProperties : public ::testing::TestWithParam<WindowKind> {};

TEST_P(WindowProperties, EvenPeakedAndTruncated) {
    const SamplingConfig cfg(128, 1.0, 1.0 / 3.0, 6);
    const WindowSpec w = default_params(GetParam(), cfg);
    const double edge = cfg.support();
    EXPECT_NEAR(eval_window(w, cfg, 0.0), 1.0, 1e-15);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> dist(-2.0 * edge, 2.0 * edge);
    for (int i = 0; i < 500; ++i) {
        const double x = dist(gen);
        const double v = eval_truncated(w, cfg, x);
        EXPECT_EQ(v, eval_truncated(w, cfg, -x));
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0 + 1e-15);
        if (std::abs(x) > edge) {
            EXPECT_EQ(v, 0.0);
        }
    }
}

TEST_P(WindowProperties, NonIncreasingOnHalfSupport) {
    const SamplingConfig cfg(128, 0.5, 0.25, 7);
    const WindowSpec w = default_params(GetParam(), cfg);
    double prev = 2.0;
    for (int i = 0; i <= 1000; ++i) {
        const double v = eval_truncated(w, cfg, cfg.support() * i / 1000.0);
        EXPECT_LE(v, prev + 1e-15);
        prev = v;
    }
}

TEST_P(WindowProperties, FourierTransformAtZeroIsIntegral) {
    const SamplingConfig cfg(128, 1.0, 0.25, 4);
    const WindowSpec w = default_params(GetParam(), cfg);
    const double reach = w.kind == WindowKind::Gauss ? 40.0 * w.sigma : cfg.support();
    const double integral =
        oracle::simpson([&](double x) { return eval_window(w, cfg, x); }, -reach, reach, 200000);
    EXPECT_NEAR(window_ft_at_zero(w, cfg) / integral, 1.0, 1e-8) << to_string(w.kind);
}

INSTANTIATE_TEST_SUITE_P(AllWindows, WindowProperties,
                         ::testing::Values(WindowKind::Rect, WindowKind::Gauss, WindowKind::Bspline, WindowKind::Sinh),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Windows, SinhShape) {
    const SamplingConfig cfg(128, 1.0, 1.0 / 3.0, 5);
    const WindowSpec w = WindowSpec::sinh(default_beta(cfg));
    const double x = 0.4 * cfg.support();
    const double r = std::sqrt(1.0 - 0.16);
    EXPECT_NEAR(eval_window(w, cfg, x), std::sinh(w.beta * r) / std::sinh(w.beta), 1e-15);
    EXPECT_EQ(eval_window(w, cfg, cfg.support()), 0.0);
    // very large beta stays finite
    const WindowSpec big = WindowSpec::sinh(2000.0);
    EXPECT_TRUE(std::isfinite(eval_window(big, cfg, 0.1 * cfg.support())));
    EXPECT_EQ(eval_window(big, cfg, 0.0), 1.0);
}

TEST(Windows, BsplineShape) {
    const SamplingConfig cfg(128, 1.0, 1.0 / 3.0, 5);
    const WindowSpec w = WindowSpec::bspline(3);
    const double x = 0.3 * cfg.support();
    EXPECT_NEAR(eval_window(w, cfg, x), cardinal_bspline(6, 0.9) / (11.0 / 20.0), 1e-15);
}

TEST(Windows, RectIncludesEdges) {
    const SamplingConfig cfg(128, 1.0, 1.0 / 3.0, 5);
    EXPECT_EQ(eval_truncated(WindowSpec::rect(), cfg, cfg.support()), 1.0);
    EXPECT_EQ(eval_truncated(WindowSpec::rect(), cfg, std::nextafter(cfg.support(), 1.0)), 0.0);
}
