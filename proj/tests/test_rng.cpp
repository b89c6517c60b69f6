// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <set>

#include "doctest.h"
#include "rng.hpp"

using namespace logdet;

TEST_CASE("philox4x64-10 known-answer vectors")
{
    using Block = std::array<std::uint64_t, 4>;
    CHECK(philox4x64_10({0, 0, 0, 0}, {0, 0}) ==
          Block{0x16554d9eca36314cull, 0xdb20fe9d672d0fdcull,
                0xd7e772cee186176bull, 0x7e68b68aec7ba23bull});
    const std::uint64_t ones = ~std::uint64_t{0};
    CHECK(philox4x64_10({ones, ones, ones, ones}, {ones, ones}) ==
          Block{0x87b092c3013fe90bull, 0x438c3c67be8d0224ull,
                0x9cc7d7c69cd777b6ull, 0xa09caebf594f0ba0ull});
    CHECK(philox4x64_10({0x243f6a8885a308d3ull, 0x13198a2e03707344ull,
                         0xa4093822299f31d0ull, 0x082efa98ec4e6c89ull},
                        {0x452821e638d01377ull, 0xbe5466cf34e90c6cull}) ==
          Block{0xa528f45403e61d95ull, 0x38c72dbd566e9788ull,
                0xa5a1610e72fd18b5ull, 0x57bd43b5e52b7fe6ull});
}

TEST_CASE("same stream replays, different streams diverge")
{
    const RngStream s{42, stream_domain::probe | 3};
    CHECK(gaussian_vector(100, s) == gaussian_vector(100, s));
    CHECK(rademacher_vector(100, s) == rademacher_vector(100, s));
    CHECK(gaussian_vector(100, s) !=
          gaussian_vector(100, {42, stream_domain::probe | 4}));
    CHECK(gaussian_vector(100, s) !=
          gaussian_vector(100, {43, stream_domain::probe | 3}));
}

TEST_CASE("rademacher entries are +-1 with mean near zero")
{
    const auto small = rademacher_vector(4, {1, 0});
    for (double v : small) {
        CHECK((v == 1.0 || v == -1.0));
    }
    // 1e5 draws: sd of the mean is 1/sqrt(1e5) = 0.0032, so 0.02 is > 6 sd.
    const auto big = rademacher_vector(100000, {7, 11});
    double sum = 0.0;
    for (double v : big) {
        REQUIRE(std::abs(v) == 1.0);
        sum += v;
    }
    CHECK(std::abs(sum / 1e5) <= 0.02);
}

TEST_CASE("gaussian moments over 1e6 draws")
{
    const auto g = gaussian_vector(1000000, {2026, 5});
    double sum = 0.0, sq = 0.0;
    for (double v : g) {
        REQUIRE(std::isfinite(v));
        sum += v;
        sq += v * v;
    }
    const double mean = sum / 1e6;
    const double var = sq / 1e6 - mean * mean;
    // sd(mean) = 1e-3, sd(var) = sqrt(2/1e6) = 1.4e-3.
    CHECK(std::abs(mean) <= 0.01);
    CHECK(std::abs(var - 1.0) <= 0.01);
}

TEST_CASE("uniform draws stay in [0, 1) and derived seeds are distinct")
{
    RngEngine engine({9, 9});
    for (int i = 0; i < 10000; ++i) {
        const double u = engine.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
    std::set<std::uint64_t> seeds;
    for (std::uint64_t j = 0; j < 1000; ++j) {
        seeds.insert(derive_seed(12345, j));
    }
    CHECK(seeds.size() == 1000);
    CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}
