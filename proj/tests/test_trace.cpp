// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>

#include "doctest.h"
#include "errors.hpp"
#include "oracles.hpp"
#include "trace_estimator.hpp"

using namespace logdet;

namespace {

LinearOperator diag_op(std::vector<double> d)
{
    return [d = std::move(d)](std::span<const double> x, std::span<double> y) {
        for (std::size_t i = 0; i < d.size(); ++i) {
            y[i] = d[i] * x[i];
        }
    };
}

LinearOperator matrix_op(const SpdMatrix& a)
{
    return [&a](std::span<const double> x, std::span<double> y) {
        matvec(a, x, y);
    };
}

std::vector<double> one_to(int n)
{
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        d[i] = i + 1.0;
    }
    return d;
}

/// Fraction of `trials` estimates with relative error <= eps.
double hit_rate(const std::vector<double>& d, double eps, double delta,
                int trials)
{
    double trace = 0.0;
    for (double v : d) {
        trace += v;
    }
    const auto op = diag_op(d);
    int hits = 0;
    for (int s = 0; s < trials; ++s) {
        const auto r = gaussian_trace(op, static_cast<Index>(d.size()), eps,
                                      delta, probe_master(s));
        hits += std::abs(r.value - trace) <= eps * trace ? 1 : 0;
    }
    return static_cast<double>(hits) / trials;
}

}  // namespace

TEST_CASE("probes_needed evaluates 20 ln(2/delta) / eps^2")
{
    CHECK(probes_needed(0.5, 0.01) == 424);
    CHECK(probes_needed(0.5, 0.05) == 296);
    CHECK(probes_needed(1.0, 2.0 * std::exp(-20.0)) == 400);
    CHECK(probes_needed(0.3, 0.05) == 820);
    CHECK(probes_needed(0.999999, 0.999999) >= 1);
    CHECK_THROWS_AS(probes_needed(0.0, 0.1), ContractViolation);
    CHECK_THROWS_AS(probes_needed(1.5, 0.1), ContractViolation);
    CHECK_THROWS_AS(probes_needed(0.5, 0.0), ContractViolation);
    CHECK_THROWS_AS(probes_needed(0.5, 1.0), ContractViolation);
}

TEST_CASE("scaled identity estimate is linear in the scale")
{
    const Index n = 12;
    const auto one = gaussian_trace(diag_op(std::vector<double>(n, 1.0)), n,
                                    std::int64_t{50}, probe_master(4));
    for (double c : {2.0, 0.25, 8.0}) {
        const auto r = gaussian_trace(diag_op(std::vector<double>(n, c)), n,
                                      std::int64_t{50}, probe_master(4));
        CHECK(r.value / c == doctest::Approx(one.value).epsilon(1e-15));
    }
}

TEST_CASE("same stream reproduces bitwise, across thread counts")
{
    const auto raw = oracle::random_spd(15, 2);
    const auto a = SpdMatrix::dense(15, raw);
    const auto op = matrix_op(a);
    const auto base = gaussian_trace(op, 15, std::int64_t{333}, probe_master(9),
                                     {1, true});
    CHECK(base.probes_used == 333);
    CHECK(base.per_probe_values.size() == 333);
    for (int threads : {1, 2, 3, 8}) {
        const auto r = gaussian_trace(op, 15, std::int64_t{333},
                                      probe_master(9), {threads, true});
        CHECK(r.value == base.value);
        CHECK(r.per_probe_values == base.per_probe_values);
    }
    CHECK(gaussian_trace(op, 15, std::int64_t{333}, probe_master(10)).value !=
          base.value);
}

TEST_CASE("diag(1,2,3) meets the (0.3, 0.05) guarantee")
{
    CHECK(hit_rate({1, 2, 3}, 0.3, 0.05, 2000) >= 0.95);
}

TEST_CASE("diag(1..10) concentration for two accuracy levels")
{
    CHECK(hit_rate(one_to(10), 0.5, 0.05, 1000) >= 0.95);
    CHECK(hit_rate(one_to(10), 0.25, 0.05, 1000) >= 0.95);
}

TEST_CASE("estimator is unbiased")
{
    const auto raw = oracle::random_spd(10, 77);
    const auto a = SpdMatrix::dense(10, raw);
    double trace = 0.0;
    for (int i = 0; i < 10; ++i) {
        trace += raw[i * 10 + i];
    }
    const auto op = matrix_op(a);
    const int runs = 10000;
    std::vector<double> values(runs);
    for (int s = 0; s < runs; ++s) {
        values[s] = gaussian_trace(op, 10, std::int64_t{4},
                                   probe_master(1000 + s))
                        .value;
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= runs;
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(var / (runs - 1));
    CHECK(std::abs(mean - trace) <= 4.0 * sd / std::sqrt(runs));
}

TEST_CASE("non-finite operator output names the probe")
{
    int calls = 0;
    const LinearOperator op = [&calls](std::span<const double> x,
                                       std::span<double> y) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            y[i] = x[i];
        }
        if (calls++ == 5) {
            y[0] = std::numeric_limits<double>::quiet_NaN();
        }
    };
    try {
        gaussian_trace(op, 3, std::int64_t{10}, probe_master(0));
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("probe 5") != std::string::npos);
    }
    CHECK_THROWS_AS(gaussian_trace(op, 3, std::int64_t{0}, probe_master(0)),
                    ContractViolation);
}
