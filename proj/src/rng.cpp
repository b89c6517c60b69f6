// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include "rng.hpp"

#include <boost/random/normal_distribution.hpp>

namespace logdet {

namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kPhiloxW0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kPhiloxW1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo)
{
    const unsigned __int128 product = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(product >> 64);
    lo = static_cast<std::uint64_t>(product);
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64_10(std::array<std::uint64_t, 4> ctr,
                                           std::array<std::uint64_t, 2> key)
{
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    return mix64(master ^ mix64(index + 0x632be59bd9b4e019ull));
}

RngEngine::RngEngine(RngStream stream)
    : key_{stream.master_seed, 0}, stream_id_(stream.stream_id)
{}

void RngEngine::refill()
{
    buffer_ = philox4x64_10({block_, stream_id_, 0, 0}, key_);
    ++block_;
    buffered_ = 4;
}

double RngEngine::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngEngine::normal()
{
    return boost::random::normal_distribution<double>{}(*this);
}

double RngEngine::sign()
{
    if (sign_left_ == 0) {
        sign_bits_ = next_u64();
        sign_left_ = 64;
    }
    const bool bit = sign_bits_ & 1u;
    sign_bits_ >>= 1;
    --sign_left_;
    return bit ? 1.0 : -1.0;
}

void fill_rademacher(double* out, std::size_t n, RngStream stream)
{
    RngEngine engine(stream);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = engine.sign();
    }
}

void fill_gaussian(double* out, std::size_t n, RngStream stream)
{
    RngEngine engine(stream);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = engine.normal();
    }
}

std::vector<double> rademacher_vector(std::size_t n, RngStream stream)
{
    std::vector<double> out(n);
    fill_rademacher(out.data(), n, stream);
    return out;
}

std::vector<double> gaussian_vector(std::size_t n, RngStream stream)
{
    std::vector<double> out(n);
    fill_gaussian(out.data(), n, stream);
    return out;
}

}  // namespace logdet
