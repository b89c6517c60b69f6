// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logdet/logdet.h"

namespace logdet_bench {

/// Carries the C API status so the CLI can pick an exit code.
class BenchError : public std::runtime_error {
public:
    BenchError(logdet_status status, const std::string& what)
        : std::runtime_error(what), status_(status)
    {}
    logdet_status status() const { return status_; }

private:
    logdet_status status_;
};

struct GeneratorInput {
    logdet_generator_family family = LOGDET_GEN_DENSE;
    std::int64_t n = 0;
    std::int64_t nnz = 0;
    std::uint64_t seed = 0;
};

enum class ExactMethod { none, cholesky, eig };

enum class ReportFormat { csv, json };

struct RunConfig {
    /// Exactly one of input_path / generator.
    std::optional<std::string> input_path;
    std::optional<GeneratorInput> generator;
    /// m, epsilon, delta, t, repetitions, p, seed, shift factor, threads.
    logdet_config estimator{};
    ExactMethod exact = ExactMethod::cholesky;
    int repeats = 10;
    std::vector<int> sweep;
    /// Dense-equivalent size above which the exact baseline is skipped.
    double exact_budget_gib = 8.0;
};

RunConfig default_run_config();

struct BenchmarkRecord {
    std::string name;
    std::int64_t n = 0;
    std::int64_t nnz = 0;
    int m = 0;
    std::int64_t p = 0;
    int t = 0;
    std::uint64_t seed = 0;
    double estimate_mean = 0.0;
    double estimate_std = 0.0;
    std::optional<double> exact_value;
    std::optional<double> rel_err_pct;
    double time_approx_s = 0.0;
    std::optional<double> time_exact_s;
    std::optional<double> speedup;

    friend bool operator==(const BenchmarkRecord&,
                           const BenchmarkRecord&) = default;
};

/// Field order of the CSV columns and JSON keys.
const std::vector<std::string>& record_fields();

/// Repeat j runs with seed logdet_derive_seed(master, j) for every m in the
/// sweep. Failed repeats are reported on `log` and left out of the
/// aggregates; BenchError if the input cannot be built or every repeat of
/// some m fails.
std::vector<BenchmarkRecord> run_benchmark(const RunConfig& config,
                                           std::ostream& log);

void write_report(const std::vector<BenchmarkRecord>& records,
                  ReportFormat format, std::ostream& out);
/// path "-" writes to stdout.
void emit_report(const std::vector<BenchmarkRecord>& records,
                 ReportFormat format, const std::string& path);

std::vector<BenchmarkRecord> read_report(std::istream& in,
                                         ReportFormat format);

struct ValidationReport {
    logdet_validation summary{};
    std::string text;
};

/// Loads a Matrix Market file and describes it; BenchError on failure.
ValidationReport validate_file(const std::string& path);

}  // namespace logdet_bench
