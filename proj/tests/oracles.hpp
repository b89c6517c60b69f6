// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

// Test-only reference computations. Nothing here calls into the library's
// numerical kernels, so they can serve as independent checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

/// y = A x by the textbook triple loop on a row-major array.
inline std::vector<double> dense_multiply(const std::vector<double>& a,
                                          const std::vector<double>& x)
{
    const std::size_t n = x.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        long double acc = 0.0L;
        for (std::size_t j = 0; j < n; ++j) {
            acc += static_cast<long double>(a[i * n + j]) * x[j];
        }
        y[i] = static_cast<double>(acc);
    }
    return y;
}

/// Eigenvalues of a symmetric row-major matrix by cyclic Jacobi rotations,
/// ascending.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a,
                                              std::size_t n)
{
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                total += a[i * n + j] * a[i * n + j];
                if (i != j) {
                    off += a[i * n + j] * a[i * n + j];
                }
            }
        }
        if (off <= 1e-30 * total) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) {
                    continue;
                }
                const double theta =
                    (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t =
                    (theta >= 0 ? 1.0 : -1.0) /
                    (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> lambda(n);
    for (std::size_t i = 0; i < n; ++i) {
        lambda[i] = a[i * n + i];
    }
    std::sort(lambda.begin(), lambda.end());
    return lambda;
}

inline double log_sum(const std::vector<double>& lambda)
{
    double s = 0.0;
    for (double l : lambda) {
        s += std::log(l);
    }
    return s;
}

/// Random SPD matrix B B^T + n I from std::mt19937_64 (independent of the
/// library's generators).
inline std::vector<double> random_spd(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> b(n * n);
    for (auto& v : b) {
        v = u(rng);
    }
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += b[i * n + k] * b[j * n + k];
            }
            a[i * n + j] = acc;
            a[j * n + i] = acc;
        }
        a[i * n + i] += static_cast<double>(n) * 0.1;
    }
    return a;
}

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<double> x(n);
    for (auto& v : x) {
        v = g(rng);
    }
    return x;
}

/// One-sided lower confidence bound for a binomial proportion (normal
/// approximation with continuity correction), z = 2.326 for 99%.
inline double binomial_lower_bound(std::int64_t successes, std::int64_t trials,
                                   double z = 2.326)
{
    const double q = static_cast<double>(successes) / trials;
    return q - z * std::sqrt(q * (1.0 - q) / trials) - 0.5 / trials;
}

}  // namespace oracle
