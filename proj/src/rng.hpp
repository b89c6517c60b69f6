// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace logdet {

/// Stream-id namespaces. The top byte selects the consumer so that power
/// restarts, probes and generator rows never share a counter range.
namespace stream_domain {
inline constexpr std::uint64_t power = 1ull << 56;
inline constexpr std::uint64_t probe = 2ull << 56;
inline constexpr std::uint64_t dense_rows = 3ull << 56;
inline constexpr std::uint64_t dense_diag = 4ull << 56;
inline constexpr std::uint64_t sparse_rows = 5ull << 56;
}  // namespace stream_domain

/// A (master seed, stream id) pair. Two equal pairs always produce the same
/// sequence; distinct stream ids address disjoint Philox counter ranges.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;

    friend bool operator==(const RngStream&, const RngStream&) = default;
};

/// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint64_t, 4> philox4x64_10(std::array<std::uint64_t, 4> ctr,
                                           std::array<std::uint64_t, 2> key);

/// SplitMix64 finalizer; used to derive seeds, not to draw samples.
std::uint64_t mix64(std::uint64_t z);

/// Seed for the `index`-th child of `master` (benchmark repeats etc.).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/**
 * Sequential reader over one stream; also a UniformRandomBitGenerator. The
 * block counter starts at zero, so a fresh engine on the same RngStream
 * replays the same values.
 */
class RngEngine {
public:
    using result_type = std::uint64_t;

    explicit RngEngine(RngStream stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return next_u64(); }

    std::uint64_t next_u64()
    {
        if (buffered_ == 0) {
            refill();
        }
        return buffer_[4 - buffered_--];
    }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal (ziggurat).
    double normal();
    /// +1 or -1 with equal probability.
    double sign();

private:
    void refill();

    std::array<std::uint64_t, 2> key_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 4> buffer_{};
    int buffered_ = 0;
    std::uint64_t sign_bits_ = 0;
    int sign_left_ = 0;
};

std::vector<double> rademacher_vector(std::size_t n, RngStream stream);
std::vector<double> gaussian_vector(std::size_t n, RngStream stream);

/// In-place variants used by the estimators to avoid reallocations.
void fill_rademacher(double* out, std::size_t n, RngStream stream);
void fill_gaussian(double* out, std::size_t n, RngStream stream);

}  // namespace logdet
