#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "regusamp/errors.hpp"
#include "regusamp/quadrature.hpp"

namespace regusamp {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

namespace detail {

// erfc for x > 2 by the Laplace continued fraction, evaluated with Lentz.
inline double erfc_cf(double x) {
    if (x > 27.3) return 0.0;
    constexpr double tiny = 1e-300;
    double f = x;
    double c = x;
    double d = 0.0;
    for (int n = 1; n < 500; ++n) {
        const double a = 0.5 * n;
        d = x + a * d;
        if (d == 0.0) d = tiny;
        c = x + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x * x) / (std::sqrt(std::numbers::pi) * f);
}

// erf for 0 <= x <= 2 via the positive series e^{-x^2} sum 2^n x^{2n+1} / (2n+1)!!.
inline double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x2) * sum;
}

} // namespace detail

inline double erf(double x) {
    const double ax = std::abs(x);
    const double r = ax <= 2.0 ? detail::erf_series(ax) : 1.0 - detail::erfc_cf(ax);
    return x < 0 ? -r : r;
}

inline double erfc(double x) {
    if (x < 0) return 2.0 - erfc(-x);
    if (x <= 2.0) return 1.0 - detail::erf_series(x);
    return detail::erfc_cf(x);
}

namespace detail {

// Hankel asymptotic series for J1 (and, with alternating=false, the I1
// expansion e^x/sqrt(2 pi x) sum (-1)^k a_k / x^k). a_k = prod(4 - (2j-1)^2) / (k! 8^k).
struct HankelSums {
    double p;
    double q;
};

inline HankelSums hankel_pq(double x) {
    double a = 1.0;
    double p = 1.0;
    double q = 0.0;
    double prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= (4.0 - odd * odd) / (8.0 * k * x);
        const double mag = std::abs(a);
        if (mag > prev) break;
        // sign pattern: P takes k = 0, 2, 4 with (-1)^{k/2}; Q takes k = 1, 3, 5 with (-1)^{(k-1)/2}
        if (k % 2 == 0) {
            p += ((k / 2) % 2 == 0 ? a : -a);
        } else {
            q += (((k - 1) / 2) % 2 == 0 ? a : -a);
        }
        if (mag < 1e-17) break;
        prev = mag;
    }
    return {p, q};
}

inline double j1_series(double x) {
    const double h = 0.5 * x;
    const double h2 = h * h;
    double term = h;
    double sum = term;
    for (int k = 1; k < 100; ++k) {
        term *= -h2 / (k * (k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Miller's backward recurrence, normalised with J0 + 2 sum J_{2k} = 1.
inline double j1_miller(double x) {
    int top = 2 * ((static_cast<int>(x) + 60) / 2);
    double jp1 = 0.0;
    double j = 1e-30;
    double norm = 0.0;
    double j1 = 0.0;
    for (int n = top; n >= 1; --n) {
        const double jm1 = (2.0 * n / x) * j - jp1;
        jp1 = j;
        j = jm1;
        const int idx = n - 1;
        if (idx == 1) j1 = j;
        if (idx > 0 && idx % 2 == 0) norm += 2.0 * j;
        if (std::abs(j) > 1e250) {
            j *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            j1 *= 1e-250;
        }
    }
    norm += j;
    return j1 / norm;
}

inline double i1_series(double x) {
    const double h = 0.5 * x;
    const double h2 = h * h;
    double term = h;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= h2 / (k * (k + 1.0));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// e^{-x} I1(x) for x > 20 from the large-argument expansion.
inline double i1e_asymptotic(double x) {
    double a = 1.0;
    double sum = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= -(4.0 - odd * odd) / (8.0 * k * x);
        if (std::abs(a) > prev) break;
        sum += a;
        if (std::abs(a) < 1e-17) break;
        prev = std::abs(a);
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

} // namespace detail

inline double bessel_j1(double x) {
    const double ax = std::abs(x);
    double r;
    if (ax <= 1.0) {
        r = detail::j1_series(ax);
    } else if (ax <= 25.0) {
        r = detail::j1_miller(ax);
    } else {
        const auto [p, q] = detail::hankel_pq(ax);
        const double s = std::sin(ax);
        const double c = std::cos(ax);
        // cos(x - 3pi/4) = (sin x - cos x)/sqrt2, sin(x - 3pi/4) = -(sin x + cos x)/sqrt2
        const double cs = (s - c) / std::numbers::sqrt2;
        const double sn = -(s + c) / std::numbers::sqrt2;
        r = std::sqrt(2.0 / (std::numbers::pi * ax)) * (p * cs - q * sn);
    }
    return x < 0 ? -r : r;
}

// Exponentially scaled e^{-|x|} I1(x); total on finite x.
inline double bessel_i1_scaled(double x) {
    const double ax = std::abs(x);
    const double r = ax <= 20.0 ? detail::i1_series(ax) * std::exp(-ax) : detail::i1e_asymptotic(ax);
    return x < 0 ? -r : r;
}

inline double bessel_i1(double x) {
    const double ax = std::abs(x);
    if (ax > 700.0) throw OverflowDomain("bessel_i1: |x| = " + std::to_string(ax) + " exceeds 700");
    const double r = ax <= 20.0 ? detail::i1_series(ax) : detail::i1e_asymptotic(ax) * std::exp(ax);
    return x < 0 ? -r : r;
}

// Centered cardinal B-spline M_n of even order n = 2s, supported on [-s, s].
// Evaluated at |x| through the Cox-de Boor recurrence for the shifted
// spline N_n(z) = M_n(z - n/2), so evenness is exact.
inline double cardinal_bspline(int order_2s, double x) {
    if (order_2s < 2 || order_2s % 2 != 0) {
        throw InvalidOrder("cardinal_bspline: order must be even and >= 2, got " + std::to_string(order_2s));
    }
    const int n = order_2s;
    const double ax = std::abs(x);
    if (!(ax < 0.5 * n)) return 0.0;
    const double z = ax + 0.5 * n;
    const int j = static_cast<int>(std::floor(z));
    // a[i] holds N_k(z - i) for i in [0, n]; only i <= j are nonzero.
    std::array<double, 66> small{};
    std::vector<double> large;
    double* a = small.data();
    if (n + 2 > static_cast<int>(small.size())) {
        large.assign(static_cast<std::size_t>(n) + 2, 0.0);
        a = large.data();
    }
    a[j] = 1.0;
    for (int k = 2; k <= n; ++k) {
        const int lo = std::max(0, j - k + 1);
        for (int i = lo; i <= j; ++i) {
            const double u = z - i;
            a[i] = (u * a[i] + (k - u) * a[i + 1]) / (k - 1);
        }
    }
    return a[0];
}

inline BigInt binomial(int n, int k) {
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// E(n, k-1): permutations of n elements with exactly k-1 ascents.
inline BigInt eulerian_number(int n, int k) {
    if (k < 1 || k > n) {
        throw InvalidRange("eulerian_number: need 1 <= k <= n, got n=" + std::to_string(n) +
                           ", k=" + std::to_string(k));
    }
    BigInt sum = 0;
    for (int j = 0; j < k; ++j) {
        BigInt term = binomial(n + 1, j) * boost::multiprecision::pow(BigInt(k - j), static_cast<unsigned>(n));
        if (j % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return sum;
}

inline BigRational m2s_at_zero_exact(int s) {
    if (s < 1) throw InvalidRange("m2s_at_zero: s must be >= 1, got " + std::to_string(s));
    BigInt sum = 0;
    for (int j = 0; j < s; ++j) {
        BigInt term = binomial(2 * s, j) * boost::multiprecision::pow(BigInt(s - j), static_cast<unsigned>(2 * s - 1));
        if (j % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return BigRational(sum, factorial(2 * s - 1));
}

inline double to_double(const BigRational& q) {
    using Float = boost::multiprecision::cpp_bin_float_50;
    const Float num(boost::multiprecision::numerator(q));
    const Float den(boost::multiprecision::denominator(q));
    return static_cast<double>(num / den);
}

inline double m2s_at_zero(int s) { return to_double(m2s_at_zero_exact(s)); }

} // namespace regusamp
