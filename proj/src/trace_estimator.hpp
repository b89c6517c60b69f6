// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "matrix.hpp"
#include "rng.hpp"

namespace logdet {

/// y = M x for some symmetric operator M; must be callable concurrently.
using LinearOperator =
    std::function<void(std::span<const double> x, std::span<double> y)>;

/// ceil(20 ln(2 / delta) / epsilon^2), at least 1. Requires 0 < epsilon <= 1
/// and 0 < delta < 1.
std::int64_t probes_needed(double epsilon, double delta);

struct TraceEstimate {
    double value = 0.0;
    std::int64_t probes_used = 0;
    /// g_i^T M g_i, probe order; empty unless requested.
    std::vector<double> per_probe_values;
    /// Accuracy parameters the probe count was derived from (0 if p was given).
    double epsilon = 0.0;
    double delta = 0.0;
};

struct TraceOptions {
    int threads = 1;
    bool keep_per_probe = false;
};

/// Stream of probe i under `master`.
inline RngStream probe_stream(RngStream master, std::int64_t i)
{
    return {master.master_seed,
            master.stream_id + static_cast<std::uint64_t>(i)};
}

/// Default probe master stream for a seed.
inline RngStream probe_master(std::uint64_t seed)
{
    return {seed, stream_domain::probe};
}

/**
 * (1/p) sum_i g_i^T M g_i over standard Gaussian probes, probe i drawn from
 * probe_stream(master, i). The mean uses the chunked pairwise order, so the
 * result is bitwise independent of `threads`. A non-finite quadratic form
 * raises NumericalError naming the probe.
 */
TraceEstimate gaussian_trace(const LinearOperator& apply, Index n,
                             std::int64_t p, RngStream master,
                             const TraceOptions& options = {});

/// Same with p = probes_needed(epsilon, delta).
TraceEstimate gaussian_trace(const LinearOperator& apply, Index n,
                             double epsilon, double delta, RngStream master,
                             const TraceOptions& options = {});

}  // namespace logdet
