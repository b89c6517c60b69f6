// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include "power_method.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace logdet {

namespace {

/// One attempt; false when an iterate collapses.
bool run_power(const SpdMatrix& a, int t, RngStream stream, double& lambda)
{
    const auto n = static_cast<std::size_t>(a.n());
    std::vector<double> x = rademacher_vector(n, stream);
    std::vector<double> y(n);
    for (int i = 0; i < t; ++i) {
        matvec(a, x, y);
        const double norm = norm2(y);
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            return false;
        }
        for (std::size_t k = 0; k < n; ++k) {
            x[k] = y[k] / norm;
        }
    }
    matvec(a, x, y);
    // x is unit-norm up to rounding; dividing by x^T x removes that rounding.
    lambda = dot(x, y) / dot(x, x);
    return std::isfinite(lambda) && lambda > 0.0;
}

}  // namespace

int default_power_iterations(Index n)
{
    if (n < 1) {
        throw ContractViolation("matrix order must be positive");
    }
    return static_cast<int>(std::ceil(std::log2(4.0 * static_cast<double>(n))));
}

PowerMethodResult power_method(const SpdMatrix& a, int t, RngStream stream)
{
    if (t < 1) {
        throw ContractViolation("power method needs t >= 1, got " +
                                std::to_string(t));
    }
    PowerMethodResult result;
    result.iterations = t;
    result.repetitions = 1;
    for (int attempt = 0; attempt < power_method_max_retries; ++attempt) {
        RngStream current{stream.master_seed,
                          stream.stream_id +
                              (static_cast<std::uint64_t>(attempt) << 40)};
        result.stream_ids_used.push_back(current.stream_id);
        double lambda = 0.0;
        if (run_power(a, t, current, lambda)) {
            result.lambda_hat = lambda;
            result.alpha = 5.0 * lambda;
            return result;
        }
    }
    throw NumericalError("power method: iterate underflowed on " +
                         std::to_string(power_method_max_retries) +
                         " consecutive restarts");
}

PowerMethodResult boosted_power_method(const SpdMatrix& a, int t,
                                       int repetitions, RngStream master)
{
    if (repetitions < 1) {
        throw ContractViolation("power method needs at least one repetition");
    }
    PowerMethodResult best;
    for (int j = 0; j < repetitions; ++j) {
        auto run = power_method(
            a, t,
            {master.master_seed,
             master.stream_id + static_cast<std::uint64_t>(j)});
        if (j == 0 || run.lambda_hat > best.lambda_hat) {
            best.lambda_hat = run.lambda_hat;
        }
        best.stream_ids_used.insert(best.stream_ids_used.end(),
                                    run.stream_ids_used.begin(),
                                    run.stream_ids_used.end());
    }
    best.alpha = 5.0 * best.lambda_hat;
    best.iterations = t;
    best.repetitions = repetitions;
    return best;
}

}  // namespace logdet
