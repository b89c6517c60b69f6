// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "matrix.hpp"
#include "power_method.hpp"

namespace logdet {

struct EstimatorConfig {
    /// Series terms kept.
    int m = 10;
    double epsilon = 0.5;
    /// Failure probability behind the probe count.
    double delta = 0.01;
    /// Power iterations; 0 selects ceil(log2(4 n)).
    int t = 0;
    int power_repetitions = 3;
    std::optional<std::int64_t> p_override;
    std::uint64_t seed = 0;
    /// alpha = shift_factor * lambda_hat. 5 guarantees alpha > lambda_1
    /// whenever lambda_hat >= lambda_1 / 4.
    double shift_factor = 5.0;
    /// Push probes through mat_multivec in blocks (only when p >= 4).
    bool batch_probes = true;
    /// Retain the p x m array of g_i^T C^k g_i.
    bool keep_diagnostics = false;
    int threads = 1;
};

/// Throws ContractViolation when a field is out of range.
void validate(const EstimatorConfig& config);

/// Probe count implied by the config.
std::int64_t resolved_probes(const EstimatorConfig& config);

/// Power iterations implied by the config for an order-n matrix.
int resolved_iterations(const EstimatorConfig& config, Index n);

struct LogDetEstimate {
    /// Natural-log units.
    double value = 0.0;
    double alpha = 0.0;
    double lambda_hat = 0.0;
    Index n = 0;
    std::int64_t p = 0;
    int t = 0;
    /// partial_by_m[k - 1] is the estimate truncated after k terms.
    std::vector<double> partial_by_m;
    /// Row-major p x m, entry (i, k - 1) = g_i^T C^k g_i; empty unless
    /// keep_diagnostics.
    std::vector<double> per_probe_series;
    double wall_time = 0.0;
    EstimatorConfig config;
};

/**
 * Randomized log-determinant estimate.
 *
 * lambda_hat comes from boosted_power_method; alpha = shift_factor *
 * lambda_hat and C = I - A / alpha is applied implicitly (one matvec and one
 * scaled subtraction per step). Each probe g_i runs v_k = C v_{k-1} for
 * k = 1..m and records g_i^T v_k. The estimate is
 * n ln(alpha) - sum_k mean_i(g_i^T C^k g_i) / k.
 *
 * Probe i uses stream (seed, probe domain + i); means use the chunked
 * pairwise reduction, so the result does not depend on `threads`.
 *
 * Errors: NumericalError for a non-finite quadratic form, ShiftTooSmall when
 * |g_i^T C^k g_i| exceeds n * 10^k (the shift underestimates lambda_1).
 */
LogDetEstimate approx_logdet(const SpdMatrix& a, const EstimatorConfig& config);

/// n ln(alpha) - sum_k mean_k / k recomputed from per_probe_series with the
/// estimator's own reduction order.
double recompute_from_diagnostics(const LogDetEstimate& estimate);

/// n ln(alpha) - sum_{k<=j} trace(C^k) / k for j = 1..m, traces computed
/// exactly by pushing the identity through C. Requires alpha > lambda_1.
std::vector<double> truncated_series_partials(const SpdMatrix& a, double alpha,
                                              int m);
double truncated_series_exact_trace(const SpdMatrix& a, double alpha, int m);

struct ErrorBoundReport {
    /// lambda_n / alpha; the exponent the tail bound is valid for.
    double gamma_eff = 0.0;
    /// lambda_n / lambda_1, the tighter exponent usually quoted.
    double gamma_stated = 0.0;
    /// sum_i ln(5 lambda_1 / lambda_i), or n ln(5 kappa) without a spectrum.
    double Gamma = 0.0;
    double kappa = 0.0;
    /// (epsilon + (1 - gamma_eff)^m) * Gamma.
    double bound = 0.0;
    /// (epsilon + (1 - gamma_stated)^m) * Gamma, for comparison.
    double bound_stated = 0.0;
    bool gamma_from_spectrum = false;
};

ErrorBoundReport error_bound(double lambda_1, double lambda_n, Index n,
                             double alpha, int m, double epsilon,
                             std::span<const double> spectrum = {});

struct SelectedParameters {
    int m = 0;
    double epsilon = 0.0;
};

/// epsilon = target / (2 ln(5 kappa)) and the smallest m with
/// (1 - 1/(5 kappa))^m <= epsilon, so the surrogate bound is <= target * n.
SelectedParameters select_parameters(double kappa, double target_eps);

struct ConvergencePoint {
    int k = 0;
    double partial_value = 0.0;
    /// |partial_k - partial_m| / |partial_m|.
    double relative_change = 0.0;
};

/// Requires an estimate produced with keep_diagnostics.
std::vector<ConvergencePoint> convergence_trace(const LogDetEstimate& estimate);

}  // namespace logdet
