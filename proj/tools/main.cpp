// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "bench.hpp"
#include "logdet/logdet.h"

namespace {

enum ExitCode { exit_ok = 0, exit_usage = 2, exit_input = 3, exit_numerical = 4 };

int exit_code_for(logdet_status status)
{
    switch (status) {
    case LOGDET_OK:
        return exit_ok;
    case LOGDET_ERR_INVALID_ARGUMENT:
        return exit_usage;
    case LOGDET_ERR_FORMAT:
    case LOGDET_ERR_IO:
    case LOGDET_ERR_NOT_POSITIVE_DEFINITE:
        return exit_input;
    case LOGDET_ERR_NUMERICAL:
    case LOGDET_ERR_SHIFT_TOO_SMALL:
    case LOGDET_ERR_INTERNAL:
        return exit_numerical;
    }
    return exit_numerical;
}

/// --threads, else LOGDET_THREADS, else 1.
int resolve_threads(int flag)
{
    if (flag > 0) {
        return flag;
    }
    const char* env = std::getenv("LOGDET_THREADS");
    if (env == nullptr || *env == '\0') {
        return 1;
    }
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (*end != '\0' || value < 1 || value > 4096) {
        throw logdet_bench::BenchError(
            LOGDET_ERR_INVALID_ARGUMENT,
            std::string("LOGDET_THREADS must be a positive integer, got '") +
                env + "'");
    }
    return static_cast<int>(value);
}

struct RunFlags {
    std::string input;
    std::string gen;
    std::int64_t n = 0;
    std::int64_t nnz = 0;
    std::vector<int> sweep;
    std::int64_t p = 0;
    int threads = 0;
    std::string exact = "cholesky";
    std::string format = "csv";
    std::string out = "-";
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Randomized log-determinant estimation and benchmarks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", logdet_version());

    auto config = logdet_bench::default_run_config();
    RunFlags flags;
    auto& est = config.estimator;

    auto* run = app.add_subcommand("run", "estimate log det(A), optionally "
                                          "against an exact baseline");
    auto* input = run->add_option("--input", flags.input,
                                  "symmetric Matrix Market file")
                      ->check(CLI::ExistingFile);
    auto* gen = run->add_option("--gen", flags.gen, "generator family")
                    ->check(CLI::IsMember({"dense", "dense_dd", "sparse_dd"}));
    input->excludes(gen);
    run->add_option("--n", flags.n, "generated order")->needs(gen);
    run->add_option("--nnz", flags.nnz, "sparse_dd nonzero target")->needs(gen);
    run->add_option("--m", est.m, "series terms")->capture_default_str();
    run->add_option("--sweep-m", flags.sweep, "comma-separated m values")
        ->delimiter(',');
    run->add_option("--eps", est.epsilon, "trace accuracy epsilon")
        ->capture_default_str();
    run->add_option("--delta", est.delta, "trace failure probability")
        ->capture_default_str();
    run->add_option("--t", est.t, "power iterations (0: ceil(log2 4n))")
        ->capture_default_str();
    run->add_option("--reps", est.power_repetitions,
                    "power method restarts")
        ->capture_default_str();
    run->add_option("--p", flags.p, "probe count (overrides eps/delta)");
    run->add_option("--seed", est.seed, "master seed")->capture_default_str();
    run->add_option("--shift-factor", est.shift_factor,
                    "alpha = shift factor * lambda_hat")
        ->capture_default_str();
    run->add_option("--exact", flags.exact, "exact baseline")
        ->check(CLI::IsMember({"cholesky", "eig", "none"}))
        ->capture_default_str();
    run->add_option("--exact-budget-gib", config.exact_budget_gib,
                    "skip the baseline above this dense-equivalent size")
        ->capture_default_str();
    run->add_option("--repeats", config.repeats, "independent repeats")
        ->capture_default_str();
    run->add_option("--threads", flags.threads,
                    "worker threads (default: LOGDET_THREADS or 1)");
    run->add_option("--format", flags.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    run->add_option("--out", flags.out, "report path, - for stdout")
        ->capture_default_str();

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "check a Matrix Market file");
    validate->add_option("file", validate_path, "Matrix Market file")
        ->required();

    double kappa = 0.0;
    double target_eps = 0.0;
    double params_delta = 0.01;
    auto* params = app.add_subcommand(
        "params", "series terms and accuracy for a target error of eps * n");
    params->add_option("--kappa", kappa, "condition number bound")->required();
    params->add_option("--target-eps", target_eps, "target error per row")
        ->required();
    params->add_option("--delta", params_delta, "trace failure probability")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*run) {
            if (!*input && !*gen) {
                std::cerr << "run: one of --input or --gen is required\n";
                return exit_usage;
            }
            if (*input) {
                config.input_path = flags.input;
            } else {
                const std::map<std::string, logdet_generator_family> families{
                    {"dense", LOGDET_GEN_DENSE},
                    {"dense_dd", LOGDET_GEN_DENSE_DD},
                    {"sparse_dd", LOGDET_GEN_SPARSE_DD}};
                if (flags.n < 1) {
                    std::cerr << "run: --gen needs --n >= 1\n";
                    return exit_usage;
                }
                logdet_bench::GeneratorInput g;
                g.family = families.at(flags.gen);
                g.n = flags.n;
                g.nnz = flags.nnz > 0 ? flags.nnz : 10 * flags.n;
                g.seed = est.seed;
                config.generator = g;
            }
            config.exact = flags.exact == "none" ? logdet_bench::ExactMethod::none
                           : flags.exact == "eig"
                               ? logdet_bench::ExactMethod::eig
                               : logdet_bench::ExactMethod::cholesky;
            config.sweep = flags.sweep;
            est.p_override = flags.p;
            est.threads = resolve_threads(flags.threads);
            const auto records = logdet_bench::run_benchmark(config, std::cerr);
            logdet_bench::emit_report(records,
                                      flags.format == "json"
                                          ? logdet_bench::ReportFormat::json
                                          : logdet_bench::ReportFormat::csv,
                                      flags.out);
        } else if (*validate) {
            std::cout << logdet_bench::validate_file(validate_path).text;
        } else if (*params) {
            int32_t m = 0;
            double eps = 0.0;
            if (logdet_select_parameters(kappa, target_eps, &m, &eps) !=
                LOGDET_OK) {
                std::cerr << "params: " << logdet_last_error() << "\n";
                return exit_usage;
            }
            int64_t p = 0;
            const bool have_p =
                logdet_probes_needed(eps, params_delta, &p) == LOGDET_OK;
            std::cout.precision(17);
            std::cout << "m: " << m << "\n"
                      << "epsilon: " << eps << "\n";
            if (have_p) {
                std::cout << "p: " << p << "\n";
            }
        }
    } catch (const logdet_bench::BenchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.status());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_ok;
}
