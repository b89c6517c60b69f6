// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace logdet {

/// Probes are reduced in fixed chunks of this many values; the grouping does
/// not depend on how chunks are scheduled onto threads.
inline constexpr std::int64_t reduction_chunk = 64;

/// Pairwise (cascade) summation with a fixed split rule.
inline double pairwise_sum(std::span<const double> values)
{
    if (values.size() <= 8) {
        double acc = 0.0;
        for (double v : values) {
            acc += v;
        }
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

/// Mean of `values` using the chunked pairwise order every estimator uses.
inline double chunked_mean(std::span<const double> values)
{
    std::vector<double> chunk_sums;
    for (std::size_t start = 0; start < values.size();
         start += reduction_chunk) {
        const std::size_t len = std::min<std::size_t>(
            reduction_chunk, values.size() - start);
        chunk_sums.push_back(pairwise_sum(values.subspan(start, len)));
    }
    return pairwise_sum(chunk_sums) / static_cast<double>(values.size());
}

}  // namespace logdet
