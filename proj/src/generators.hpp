// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "matrix.hpp"

namespace logdet {

enum class GeneratorFamily { dense, dense_dd, sparse_dd };

std::string to_string(GeneratorFamily family);
std::optional<GeneratorFamily> parse_generator_family(const std::string& name);

struct GeneratorSpec {
    GeneratorFamily family = GeneratorFamily::dense_dd;
    Index n = 0;
    /// Only used by sparse_dd; must satisfy n <= nnz_target <= n^2.
    Index nnz_target = 0;
    std::uint64_t seed = 0;
};

/// Off-diagonal and eigenvalue draws are uniform on [0.25, 0.75].
inline constexpr double generator_low = 0.25;
inline constexpr double generator_high = 0.75;

/// A = Q D Q^T with Q from the Householder QR of a uniform X and D uniform;
/// the spectrum of A is D.
SpdMatrix rand_spd_dense(Index n, std::uint64_t seed);

/// A = (X + X^T) / 2 + n I with uniform X; strictly diagonally dominant.
SpdMatrix rand_spd_dense_dd(Index n, std::uint64_t seed);

/// Full diagonal plus Bernoulli-sampled upper-triangle positions (rate
/// (nnz - n) / (n^2 - n)) mirrored below, then n added to the diagonal.
/// Positions are drawn by geometric skipping, so the cost is O(n + nnz).
SpdMatrix rand_spd_sparse(Index n, Index nnz_target, std::uint64_t seed);

SpdMatrix generate(const GeneratorSpec& spec);

}  // namespace logdet
