// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include "logdet.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "exact.hpp"
#include "parallel.hpp"
#include "reduction.hpp"
#include "rng.hpp"
#include "trace_estimator.hpp"

namespace logdet {

namespace {

constexpr Index probe_batch_width = 8;

/// |g^T C^k g| above this means C has an eigenvalue well outside (-1, 1).
double growth_limit(Index n, int k)
{
    return static_cast<double>(n) * std::pow(10.0, k);
}

void check_quadratic_form(double value, Index n, int k, std::int64_t probe)
{
    if (!std::isfinite(value)) {
        throw NumericalError("probe " + std::to_string(probe) + ", power " +
                             std::to_string(k) +
                             ": non-finite quadratic form (is A SPD?)");
    }
    if (std::abs(value) > growth_limit(n, k)) {
        throw ShiftTooSmall(
            "probe " + std::to_string(probe) + ", power " + std::to_string(k) +
            ": g^T C^k g grew past n*10^k; the power method underestimated "
            "lambda_1, increase power repetitions");
    }
}

/// Fills gamma (row-major (last - first) x m) for probes [first, last).
void run_probe_chunk(const SpdMatrix& a, double alpha, int m,
                     std::int64_t first, std::int64_t last, RngStream master,
                     Index width, std::vector<double>& gamma)
{
    const Index n = a.n();
    const auto len = static_cast<std::size_t>(n);
    std::vector<double> draw(len);
    for (std::int64_t start = first; start < last; start += width) {
        const Index b = std::min<Index>(width, last - start);
        DenseBlock g(n, b), v(n, b), y(n, b);
        for (Index c = 0; c < b; ++c) {
            fill_gaussian(draw.data(), len, probe_stream(master, start + c));
            g.set_column(c, draw);
        }
        v = g;
        double* vs = v.data().data();
        const double* ys = y.data().data();
        const double* gs = g.data().data();
        for (int k = 1; k <= m; ++k) {
            mat_multivec(a, v, y);
            for (Index e = 0; e < n * b; ++e) {
                vs[e] = vs[e] - ys[e] / alpha;
            }
            for (Index c = 0; c < b; ++c) {
                double acc = 0.0;
                for (Index i = 0; i < n; ++i) {
                    acc += gs[i * b + c] * vs[i * b + c];
                }
                check_quadratic_form(acc, n, k, start + c);
                gamma[(start - first + c) * m + (k - 1)] = acc;
            }
        }
    }
}

/// Per-k probe means through the generic recursion.
std::vector<double> probe_means_generic(const SpdMatrix& a, double alpha,
                                        const EstimatorConfig& config,
                                        std::int64_t p,
                                        std::vector<double>* per_probe)
{
    const int m = config.m;
    const RngStream master = probe_master(config.seed);
    const Index width =
        config.batch_probes && p >= 4 ? probe_batch_width : Index{1};
    const std::int64_t chunks = (p + reduction_chunk - 1) / reduction_chunk;
    std::vector<double> chunk_sums(static_cast<std::size_t>(chunks * m));
    if (per_probe != nullptr) {
        per_probe->assign(static_cast<std::size_t>(p * m), 0.0);
    }

    parallel_tasks(chunks, config.threads, [&](std::int64_t chunk) {
        const std::int64_t first = chunk * reduction_chunk;
        const std::int64_t last = std::min(p, first + reduction_chunk);
        const std::int64_t count = last - first;
        std::vector<double> gamma(static_cast<std::size_t>(count * m));
        run_probe_chunk(a, alpha, m, first, last, master, width, gamma);
        std::vector<double> column(static_cast<std::size_t>(count));
        for (int k = 0; k < m; ++k) {
            for (std::int64_t i = 0; i < count; ++i) {
                column[i] = gamma[i * m + k];
            }
            chunk_sums[chunk * m + k] = pairwise_sum(column);
        }
        if (per_probe != nullptr) {
            std::copy(gamma.begin(), gamma.end(),
                      per_probe->begin() + first * m);
        }
    });

    std::vector<double> means(static_cast<std::size_t>(m));
    std::vector<double> column(static_cast<std::size_t>(chunks));
    for (int k = 0; k < m; ++k) {
        for (std::int64_t c = 0; c < chunks; ++c) {
            column[c] = chunk_sums[c * m + k];
        }
        means[k] = pairwise_sum(column) / static_cast<double>(p);
    }
    return means;
}

/// Diagonal A: mean_i g_i^T C^k g_i = sum_j c_j^k mean_i g_ij^2, so only the
/// per-coordinate probe energies are needed.
std::vector<double> probe_means_diagonal(const SpdMatrix& a, double alpha,
                                         const EstimatorConfig& config,
                                         std::int64_t p)
{
    const Index n = a.n();
    const auto len = static_cast<std::size_t>(n);
    const RngStream master = probe_master(config.seed);
    const std::int64_t chunks = (p + reduction_chunk - 1) / reduction_chunk;
    const std::int64_t batch =
        std::max<std::int64_t>(1, config.threads) * std::int64_t{4};

    std::vector<double> energy(len, 0.0);
    std::vector<double> partial(static_cast<std::size_t>(batch) * len);
    for (std::int64_t base = 0; base < chunks; base += batch) {
        const std::int64_t in_batch = std::min(batch, chunks - base);
        parallel_tasks(in_batch, config.threads, [&](std::int64_t task) {
            const std::int64_t chunk = base + task;
            const std::int64_t first = chunk * reduction_chunk;
            const std::int64_t last = std::min(p, first + reduction_chunk);
            double* sums = partial.data() + task * n;
            std::fill(sums, sums + n, 0.0);
            std::vector<double> g(len);
            for (std::int64_t i = first; i < last; ++i) {
                fill_gaussian(g.data(), len, probe_stream(master, i));
                for (Index j = 0; j < n; ++j) {
                    sums[j] += g[j] * g[j];
                }
            }
        });
        for (std::int64_t task = 0; task < in_batch; ++task) {
            const double* sums = partial.data() + task * n;
            for (Index j = 0; j < n; ++j) {
                energy[j] += sums[j];
            }
        }
    }

    const auto diag = a.diagonal_values();
    std::vector<double> c(len), power(len);
    for (Index j = 0; j < n; ++j) {
        c[j] = 1.0 - diag[j] / alpha;
        power[j] = 1.0;
    }
    std::vector<double> means(static_cast<std::size_t>(config.m));
    for (int k = 1; k <= config.m; ++k) {
        double acc = 0.0;
        for (Index j = 0; j < n; ++j) {
            power[j] *= c[j];
            acc += power[j] * energy[j];
        }
        const double mean = acc / static_cast<double>(p);
        check_quadratic_form(mean, n, k, -1);
        means[k - 1] = mean;
    }
    return means;
}

std::vector<double> partial_sums(Index n, double alpha,
                                 std::span<const double> means)
{
    std::vector<double> partial(means.size());
    double running = static_cast<double>(n) * std::log(alpha);
    for (std::size_t k = 0; k < means.size(); ++k) {
        running -= means[k] / static_cast<double>(k + 1);
        partial[k] = running;
    }
    return partial;
}

}  // namespace

void validate(const EstimatorConfig& config)
{
    if (config.m < 1) {
        throw ContractViolation("m must be at least 1, got " +
                                std::to_string(config.m));
    }
    if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) {
        throw ContractViolation("epsilon must lie in (0, 1)");
    }
    if (!(config.delta > 0.0 && config.delta < 1.0)) {
        throw ContractViolation("delta must lie in (0, 1)");
    }
    if (config.t < 0) {
        throw ContractViolation("t must be positive (or 0 for the default)");
    }
    if (config.power_repetitions < 1) {
        throw ContractViolation("power repetitions must be at least 1");
    }
    if (config.p_override && *config.p_override < 1) {
        throw ContractViolation("probe count must be at least 1");
    }
    if (!(config.shift_factor >= 1.0) || !std::isfinite(config.shift_factor)) {
        throw ContractViolation("shift factor must be finite and >= 1");
    }
    if (config.threads < 1) {
        throw ContractViolation("threads must be at least 1");
    }
}

std::int64_t resolved_probes(const EstimatorConfig& config)
{
    return config.p_override ? *config.p_override
                             : probes_needed(config.epsilon, config.delta);
}

int resolved_iterations(const EstimatorConfig& config, Index n)
{
    return config.t > 0 ? config.t : default_power_iterations(n);
}

LogDetEstimate approx_logdet(const SpdMatrix& a, const EstimatorConfig& config)
{
    validate(config);
    const auto start = std::chrono::steady_clock::now();

    LogDetEstimate out;
    out.config = config;
    out.n = a.n();
    out.t = resolved_iterations(config, a.n());
    out.p = resolved_probes(config);

    const auto power =
        boosted_power_method(a, out.t, config.power_repetitions,
                             {config.seed, stream_domain::power});
    out.lambda_hat = power.lambda_hat;
    if (!(power.lambda_hat > 0.0) || !std::isfinite(power.lambda_hat)) {
        throw NumericalError("power method returned lambda_hat = " +
                             std::to_string(power.lambda_hat) +
                             "; A is not positive definite");
    }
    out.alpha = config.shift_factor * power.lambda_hat;

    std::vector<double> means;
    if (a.is_diagonal() && !config.keep_diagnostics) {
        means = probe_means_diagonal(a, out.alpha, config, out.p);
    } else {
        means = probe_means_generic(
            a, out.alpha, config, out.p,
            config.keep_diagnostics ? &out.per_probe_series : nullptr);
    }
    out.partial_by_m = partial_sums(a.n(), out.alpha, means);
    out.value = out.partial_by_m.back();
    out.wall_time = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    return out;
}

double recompute_from_diagnostics(const LogDetEstimate& estimate)
{
    const int m = estimate.config.m;
    const std::int64_t p = estimate.p;
    if (estimate.per_probe_series.size() != static_cast<std::size_t>(p * m)) {
        throw ContractViolation("estimate carries no per-probe diagnostics");
    }
    std::vector<double> means(static_cast<std::size_t>(m));
    std::vector<double> column(static_cast<std::size_t>(p));
    for (int k = 0; k < m; ++k) {
        for (std::int64_t i = 0; i < p; ++i) {
            column[i] = estimate.per_probe_series[i * m + k];
        }
        means[k] = chunked_mean(column);
    }
    return partial_sums(estimate.n, estimate.alpha, means).back();
}

std::vector<double> truncated_series_partials(const SpdMatrix& a, double alpha,
                                              int m)
{
    if (m < 1) {
        throw ContractViolation("m must be at least 1");
    }
    const double lambda_1 = symmetric_eigenvalues(a).back();
    if (!(alpha > lambda_1)) {
        throw ContractViolation("alpha (" + std::to_string(alpha) +
                                ") must exceed lambda_1 (" +
                                std::to_string(lambda_1) + ")");
    }
    const Index n = a.n();
    DenseBlock v(n, n), y(n, n);
    for (Index i = 0; i < n; ++i) {
        v(i, i) = 1.0;
    }
    std::vector<double> traces(static_cast<std::size_t>(m));
    double* vs = v.data().data();
    for (int k = 0; k < m; ++k) {
        mat_multivec(a, v, y);
        const double* ys = y.data().data();
        for (Index e = 0; e < n * n; ++e) {
            vs[e] = vs[e] - ys[e] / alpha;
        }
        double trace = 0.0;
        for (Index i = 0; i < n; ++i) {
            trace += v(i, i);
        }
        traces[k] = trace;
    }
    return partial_sums(n, alpha, traces);
}

double truncated_series_exact_trace(const SpdMatrix& a, double alpha, int m)
{
    return truncated_series_partials(a, alpha, m).back();
}

ErrorBoundReport error_bound(double lambda_1, double lambda_n, Index n,
                             double alpha, int m, double epsilon,
                             std::span<const double> spectrum)
{
    if (!(lambda_n > 0.0 && lambda_n <= lambda_1 && lambda_1 < alpha) ||
        !std::isfinite(alpha)) {
        throw ContractViolation("error bound needs 0 < lambda_n <= lambda_1 "
                                "< alpha");
    }
    if (n < 1 || m < 1 || !(epsilon >= 0.0)) {
        throw ContractViolation("error bound needs n >= 1, m >= 1, epsilon >= 0");
    }
    if (!spectrum.empty() && static_cast<Index>(spectrum.size()) != n) {
        throw ContractViolation("spectrum length must equal n");
    }
    ErrorBoundReport r;
    r.kappa = lambda_1 / lambda_n;
    r.gamma_eff = lambda_n / alpha;
    r.gamma_stated = lambda_n / lambda_1;
    if (spectrum.empty()) {
        r.Gamma = static_cast<double>(n) * std::log(5.0 * r.kappa);
    } else {
        r.gamma_from_spectrum = true;
        double sum = 0.0;
        for (double lambda : spectrum) {
            if (!(lambda > 0.0)) {
                throw ContractViolation("spectrum must be positive");
            }
            sum += std::log(5.0 * lambda_1 / lambda);
        }
        r.Gamma = sum;
    }
    r.bound = (epsilon + std::pow(1.0 - r.gamma_eff, m)) * r.Gamma;
    r.bound_stated = (epsilon + std::pow(1.0 - r.gamma_stated, m)) * r.Gamma;
    return r;
}

SelectedParameters select_parameters(double kappa, double target_eps)
{
    if (!(kappa >= 1.0) || !std::isfinite(kappa)) {
        throw ContractViolation("kappa must be >= 1");
    }
    if (!(target_eps > 0.0 && target_eps < 1.0)) {
        throw ContractViolation("target epsilon must lie in (0, 1)");
    }
    const double log5k = std::log(5.0 * kappa);
    SelectedParameters out;
    out.epsilon = target_eps / (2.0 * log5k);
    const double decay = -std::log1p(-1.0 / (5.0 * kappa));
    const double needed = std::log(2.0 * log5k / target_eps) / decay;
    out.m = std::max(1, static_cast<int>(std::ceil(needed)));
    return out;
}

std::vector<ConvergencePoint> convergence_trace(const LogDetEstimate& estimate)
{
    if (!estimate.config.keep_diagnostics) {
        throw ContractViolation(
            "convergence trace needs an estimate made with keep_diagnostics");
    }
    const auto& partial = estimate.partial_by_m;
    const double final_value = partial.back();
    std::vector<ConvergencePoint> out;
    out.reserve(partial.size());
    for (std::size_t k = 0; k < partial.size(); ++k) {
        out.push_back({static_cast<int>(k + 1), partial[k],
                       std::abs(partial[k] - final_value) /
                           std::abs(final_value)});
    }
    return out;
}

}  // namespace logdet
