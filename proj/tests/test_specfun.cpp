#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "regusamp/bounds.hpp"
#include "regusamp/specfun.hpp"

using namespace regusamp;

// Reference values below were computed once with mpmath at 40 digits.

TEST(Erf, KnownValues) {
    EXPECT_EQ(regusamp::erf(0.0), 0.0);
    EXPECT_NEAR(regusamp::erf(1.0), 0.8427007929497148693, 1e-15);
    EXPECT_NEAR(regusamp::erf(0.5), 0.52049987781304653768, 1e-15);
    EXPECT_NEAR(regusamp::erf(-3.0), -0.99997790950300141456, 1e-15);
    EXPECT_NEAR(regusamp::erf(6.0), 1.0, 1e-15);
    EXPECT_NEAR(regusamp::erfc(5.0) / 1.5374597944280348502e-12, 1.0, 1e-13);
    EXPECT_NEAR(regusamp::erfc(-1.5), 1.9661051464753107271, 1e-15);
}

TEST(Erf, OddMonotoneBounded) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> dist(-6.0, 6.0);
    std::vector<double> xs(1000);
    for (auto& x : xs) x = dist(gen);
    std::sort(xs.begin(), xs.end());
    double prev = -1.0;
    for (double x : xs) {
        const double e = regusamp::erf(x);
        EXPECT_EQ(regusamp::erf(-x), -e);
        EXPECT_GE(e, -1.0);
        EXPECT_LE(e, 1.0);
        EXPECT_GE(e, prev);
        prev = e;
    }
}

TEST(Erf, MatchesSeriesOracle) {
    // (2/sqrt(pi)) sum (-1)^n x^{2n+1} / (n! (2n+1)), long double
    for (double x : {0.1, 0.7, 1.3, 1.9, 2.1, 2.6}) {
        long double term = x, sum = x;
        for (int n = 1; n < 200; ++n) {
            term *= -static_cast<long double>(x) * x / n;
            sum += term / (2 * n + 1);
        }
        EXPECT_NEAR(regusamp::erf(x), static_cast<double>(sum * 2.0L / std::sqrt(std::numbers::pi_v<long double>)),
                    1e-15)
            << x;
    }
}

TEST(BesselJ1, KnownValues) {
    EXPECT_EQ(bessel_j1(0.0), 0.0);
    EXPECT_NEAR(bessel_j1(1e-6) / 1e-6, 0.5, 1e-10);
    const std::pair<double, double> table[] = {
        {0.5, 0.24226845767487388638},    {1.0, 0.4400505857449335160},   {3.0, 0.33905895852593645893},
        {10.0, 0.04347274616886143667},   {30.0, -0.11875106261662293652}, {100.0, -0.077145352014112158033},
        {1000.0, 0.0047283119070895239176}, {9999.5, 0.0066032722001328390992}};
    for (const auto& [x, want] : table) {
        EXPECT_NEAR(bessel_j1(x), want, 1e-12 * std::abs(want)) << x;
        EXPECT_EQ(bessel_j1(-x), -bessel_j1(x));
    }
}

TEST(BesselJ1, AgreesWithSeriesAcrossAlgorithmSwitch) {
    // the long double series loses digits to cancellation beyond x ~ 12
    for (double x = 0.05; x <= 12.0; x += 0.37) {
        EXPECT_NEAR(bessel_j1(x), oracle::j1_series(x), 2e-14) << x;
    }
}

TEST(BesselJ1, EnvelopeBelowInverseSqrt) {
    // |J1(x)| < 1/sqrt(x) on (0, 1e4]
    EXPECT_LT(diagnostics::j1_envelope_max(1e4, 200000), 1.0);
}

TEST(BesselI1, KnownValues) {
    EXPECT_EQ(bessel_i1(0.0), 0.0);
    const std::pair<double, double> table[] = {{0.1, 0.0500625260470926949},
                                               {1.0, 0.5651591039924850272},
                                               {5.0, 24.335642142450527199},
                                               {15.0, 328124.92197020639673},
                                               {25.0, 5657865129.8787013531},
                                               {100.0, 1.0683693903381624812e+42},
                                               {700.0, 1.5285003902339006881e+302}};
    for (const auto& [x, want] : table) {
        EXPECT_NEAR(bessel_i1(x) / want, 1.0, 1e-12) << x;
        EXPECT_EQ(bessel_i1(-x), -bessel_i1(x));
    }
}

TEST(BesselI1, OverflowGuard) {
    EXPECT_THROW(bessel_i1(700.5), OverflowDomain);
    EXPECT_THROW(bessel_i1(-800.0), OverflowDomain);
    EXPECT_NO_THROW(bessel_i1_scaled(5000.0));
}

TEST(BesselI1, ScaledBelowAsymptoticEnvelope) {
    // sqrt(2 pi x) e^{-x} I1(x) < 1
    EXPECT_LT(std::sqrt(2.0 * std::numbers::pi * 10.0) * std::exp(-10.0) * bessel_i1(10.0), 1.0);
    EXPECT_NEAR(std::sqrt(2.0 * std::numbers::pi * 10.0) * std::exp(-10.0) * bessel_i1(10.0), 0.96120739062382566, 1e-14);
    for (double x = 0.5; x < 600.0; x *= 1.3) EXPECT_LT(std::sqrt(2.0 * std::numbers::pi * x) * bessel_i1_scaled(x), 1.0);
}

TEST(BesselI1, ImaginaryArgumentIdentity) {
    for (double x = 0.1; x <= 20.0; x += 0.3) {
        EXPECT_NEAR(bessel_i1(x) / oracle::i1_from_j1_series(x), 1.0, 1e-12) << x;
    }
}

TEST(CardinalBspline, KnownValues) {
    EXPECT_EQ(cardinal_bspline(2, 0.0), 1.0);
    EXPECT_NEAR(cardinal_bspline(4, 0.0), 2.0 / 3.0, 1e-16);
    EXPECT_EQ(cardinal_bspline(4, 2.0), 0.0);
    EXPECT_NEAR(cardinal_bspline(4, 0.5), 2.0 / 3.0 - 0.25 + 0.0625, 1e-16);
    EXPECT_NEAR(cardinal_bspline(4, 1.5), 0.125 / 6.0, 1e-16);
    EXPECT_THROW(cardinal_bspline(3, 0.0), InvalidOrder);
    EXPECT_THROW(cardinal_bspline(0, 0.0), InvalidOrder);
}

TEST(CardinalBspline, EvenNonnegativeCompact) {
    std::mt19937_64 gen(11);
    for (int s = 1; s <= 8; ++s) {
        std::uniform_real_distribution<double> dist(-s - 1.0, s + 1.0);
        for (int i = 0; i < 200; ++i) {
            const double x = dist(gen);
            const double v = cardinal_bspline(2 * s, x);
            EXPECT_EQ(v, cardinal_bspline(2 * s, -x));
            EXPECT_GE(v, 0.0);
            if (std::abs(x) >= s) {
                EXPECT_EQ(v, 0.0);
            }
        }
    }
}

TEST(CardinalBspline, PartitionOfUnity) {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int s : {1, 2, 3, 5, 8}) {
        for (int i = 0; i < 100; ++i) {
            const double x = dist(gen);
            double sum = 0.0;
            for (int k = -20; k <= 20; ++k) sum += cardinal_bspline(2 * s, x - k);
            EXPECT_NEAR(sum, 1.0, 1e-12);
        }
    }
}

TEST(CardinalBspline, UnitIntegral) {
    for (int s : {1, 2, 4, 7}) {
        const auto r = integrate([s](double x) { return cardinal_bspline(2 * s, x); }, -s, s);
        EXPECT_NEAR(r.value, 1.0, 1e-10);
    }
}

TEST(M2sAtZero, ExactValues) {
    EXPECT_EQ(m2s_at_zero_exact(1), BigRational(1));
    EXPECT_EQ(m2s_at_zero_exact(2), BigRational(2, 3));
    EXPECT_EQ(m2s_at_zero_exact(3), BigRational(11, 20));
    EXPECT_EQ(m2s_at_zero_exact(4), BigRational(151, 315));
    EXPECT_EQ(m2s_at_zero_exact(5), BigRational(15619, 36288));
    EXPECT_EQ(m2s_at_zero_exact(6), BigRational(655177, 1663200));
    EXPECT_NEAR(m2s_at_zero(50), 0.137990, 5e-7);
    EXPECT_NEAR(m2s_at_zero(50), 0.13799020407550003, 1e-16);
    EXPECT_THROW(m2s_at_zero(0), InvalidRange);
    EXPECT_NO_THROW(m2s_at_zero(200));
}

TEST(M2sAtZero, AgreesWithRecurrence) {
    for (int s = 1; s <= 10; ++s) EXPECT_NEAR(m2s_at_zero(s), cardinal_bspline(2 * s, 0.0), 1e-13) << s;
}

TEST(M2sAtZero, ScaledSequenceIncreasesToLimit) {
    double prev = 0.0;
    for (int s = 2; s <= 50; ++s) {
        const double v = std::sqrt(2.0 * s) * m2s_at_zero(s);
        EXPECT_GT(v, prev) << s;
        EXPECT_LT(v, std::sqrt(6.0 / std::numbers::pi));
        prev = v;
    }
}

TEST(Eulerian, SmallValues) {
    EXPECT_EQ(eulerian_number(1, 1), 1);
    EXPECT_EQ(eulerian_number(3, 2), 4);
    EXPECT_EQ(eulerian_number(5, 3), 66);
    EXPECT_EQ(BigRational(eulerian_number(5, 3), factorial(5)), m2s_at_zero_exact(3));
    EXPECT_THROW(eulerian_number(3, 0), InvalidRange);
    EXPECT_THROW(eulerian_number(3, 4), InvalidRange);
}

TEST(Eulerian, MatchesEnumeration) {
    for (int n = 1; n <= 8; ++n) {
        for (int k = 1; k <= n; ++k) {
            EXPECT_EQ(eulerian_number(n, k), BigInt(oracle::eulerian_bruteforce(n, k - 1))) << n << "," << k;
        }
    }
}

TEST(Eulerian, CentralNumberGivesM2s) {
    for (int s = 1; s <= 12; ++s) {
        EXPECT_EQ(BigRational(eulerian_number(2 * s - 1, s), factorial(2 * s - 1)), m2s_at_zero_exact(s));
    }
}
