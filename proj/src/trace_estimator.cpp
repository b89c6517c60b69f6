// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include "trace_estimator.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"
#include "reduction.hpp"

namespace logdet {

std::int64_t probes_needed(double epsilon, double delta)
{
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw ContractViolation("epsilon must lie in (0, 1], got " +
                                std::to_string(epsilon));
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ContractViolation("delta must lie in (0, 1), got " +
                                std::to_string(delta));
    }
    const double raw = 20.0 * std::log(2.0 / delta) / (epsilon * epsilon);
    // Slack so that values equal to an integer up to rounding stay there.
    const double p = std::ceil(raw * (1.0 - 1e-12));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(p));
}

TraceEstimate gaussian_trace(const LinearOperator& apply, Index n,
                             std::int64_t p, RngStream master,
                             const TraceOptions& options)
{
    if (p < 1) {
        throw ContractViolation("trace estimation needs at least one probe");
    }
    if (n < 1) {
        throw ContractViolation("operator dimension must be positive");
    }
    const auto len = static_cast<std::size_t>(n);
    std::vector<double> per_probe(static_cast<std::size_t>(p));
    const std::int64_t chunks = (p + reduction_chunk - 1) / reduction_chunk;
    parallel_tasks(chunks, options.threads, [&](std::int64_t chunk) {
        std::vector<double> g(len), y(len);
        const std::int64_t first = chunk * reduction_chunk;
        const std::int64_t last = std::min(p, first + reduction_chunk);
        for (std::int64_t i = first; i < last; ++i) {
            fill_gaussian(g.data(), len, probe_stream(master, i));
            apply(g, y);
            const double q = dot(g, y);
            if (!std::isfinite(q)) {
                throw NumericalError("trace estimation: probe " +
                                     std::to_string(i) +
                                     " produced a non-finite value");
            }
            per_probe[i] = q;
        }
    });
    TraceEstimate out;
    out.value = chunked_mean(per_probe);
    out.probes_used = p;
    if (options.keep_per_probe) {
        out.per_probe_values = std::move(per_probe);
    }
    return out;
}

TraceEstimate gaussian_trace(const LinearOperator& apply, Index n,
                             double epsilon, double delta, RngStream master,
                             const TraceOptions& options)
{
    auto out = gaussian_trace(apply, n, probes_needed(epsilon, delta), master,
                              options);
    out.epsilon = epsilon;
    out.delta = delta;
    return out;
}

}  // namespace logdet
