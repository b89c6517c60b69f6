// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "matrix.hpp"
#include "rng.hpp"

namespace logdet {

struct PowerMethodResult {
    /// Rayleigh quotient x_t^T A x_t of the last normalized iterate.
    double lambda_hat = 0.0;
    /// 5 * lambda_hat.
    double alpha = 0.0;
    int iterations = 0;
    int repetitions = 0;
    /// Stream ids actually consumed, including underflow retries.
    std::vector<std::uint64_t> stream_ids_used;
};

/// ceil(log2(4 n)).
int default_power_iterations(Index n);

/// Restarts allowed when an iterate underflows to zero.
inline constexpr int power_method_max_retries = 8;

/**
 * Power iteration from a Rademacher start vector with 2-norm normalization
 * after each of the t products. If an iterate's norm underflows to zero (or
 * stops being finite) the run restarts on the next stream; eight failed
 * restarts raise NumericalError.
 */
PowerMethodResult power_method(const SpdMatrix& a, int t, RngStream stream);

/// Max over r independent restarts; restart j uses stream id
/// master.stream_id + j, so r = 1 reproduces power_method(a, t, master).
PowerMethodResult boosted_power_method(const SpdMatrix& a, int t,
                                       int repetitions, RngStream master);

}  // namespace logdet
