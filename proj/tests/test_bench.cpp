// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bench.hpp"
#include "doctest.h"

using namespace logdet_bench;

namespace {

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / name).string();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream(path) << text;
}

int cli(const std::string& args)
{
    const std::string command =
        std::string(LOGDET_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int raw = std::system(command.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

RunConfig generated(logdet_generator_family family, std::int64_t n,
                    std::int64_t nnz = 0)
{
    auto config = default_run_config();
    config.generator = GeneratorInput{family, n, nnz, 1};
    return config;
}

BenchmarkRecord sample_record()
{
    BenchmarkRecord r;
    r.name = "sparse,\"quoted\"";
    r.n = 100;
    r.nnz = 1000;
    r.m = 4;
    r.p = 60;
    r.t = 9;
    r.seed = 18446744073709551615ull;
    r.estimate_mean = -3546.9212345678901;
    r.estimate_std = 0.1 + 0.2;
    r.exact_value = -3717.89;
    r.rel_err_pct = 100.0 * (-3717.89 - -3546.9212345678901) / -3717.89;
    r.time_approx_s = 1.0 / 3.0;
    r.time_exact_s = 2.0 / 7.0;
    r.speedup = (2.0 / 7.0) / (1.0 / 3.0);
    return r;
}

}  // namespace

TEST_CASE("CSV has a header line and one line per record")
{
    std::ostringstream out;
    write_report({sample_record()}, ReportFormat::csv, out);
    const std::string text = out.str();
    CHECK(text.rfind("name,n,nnz,m,p,t,seed,estimate_mean,estimate_std,"
                     "exact_value,rel_err_pct,time_approx_s,time_exact_s,"
                     "speedup\n",
                     0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}

TEST_CASE("CSV and JSON round-trip to equal records")
{
    BenchmarkRecord sparse = sample_record();
    sparse.name = "plain";
    sparse.exact_value.reset();
    sparse.rel_err_pct.reset();
    sparse.time_exact_s.reset();
    sparse.speedup.reset();
    const std::vector<BenchmarkRecord> records{sample_record(), sparse};
    for (auto format : {ReportFormat::csv, ReportFormat::json}) {
        std::stringstream buffer;
        write_report(records, format, buffer);
        CHECK(read_report(buffer, format) == records);
    }
}

TEST_CASE("absent fields are empty cells and JSON nulls")
{
    BenchmarkRecord r = sample_record();
    r.name = "x";
    r.exact_value.reset();
    r.rel_err_pct.reset();
    r.time_exact_s.reset();
    r.speedup.reset();
    std::ostringstream csv;
    write_report({r}, ReportFormat::csv, csv);
    CHECK(csv.str().find(",,,") != std::string::npos);
    CHECK(csv.str().back() == '\n');
    CHECK(csv.str()[csv.str().size() - 2] == ',');
    std::ostringstream json;
    write_report({r}, ReportFormat::json, json);
    CHECK(json.str().find("\"exact_value\": null") != std::string::npos);
    CHECK(json.str().find("\"speedup\": null") != std::string::npos);
    CHECK(json.str().find("\"time_approx_s\": 0.33333333333333331") !=
          std::string::npos);
}

TEST_CASE("report files")
{
    const auto path = temp_path("logdet_report.json");
    emit_report({sample_record()}, ReportFormat::json, path);
    std::ifstream in(path);
    CHECK(read_report(in, ReportFormat::json).size() == 1);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(emit_report({}, ReportFormat::csv, path), BenchError);
    CHECK_THROWS_AS(
        emit_report({sample_record()}, ReportFormat::csv, "/nonexistent/x.csv"),
        BenchError);
}

TEST_CASE("m sweep on dense_dd: near convergence by m = 3")
{
    auto config = generated(LOGDET_GEN_DENSE_DD, 500);
    config.sweep = {1, 2, 3, 4};
    config.repeats = 10;
    config.estimator.p_override = 60;
    config.estimator.shift_factor = 1.0;
    std::ostringstream log;
    const auto records = run_benchmark(config, log);
    REQUIRE(records.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(records[i].m == static_cast<int>(i + 1));
        CHECK(records[i].p == 60);
        CHECK(records[i].t == 11);
        REQUIRE(records[i].exact_value.has_value());
        REQUIRE(records[i].speedup.has_value());
        CHECK(*records[i].speedup ==
              *records[i].time_exact_s / records[i].time_approx_s);
        CHECK(*records[i].rel_err_pct ==
              100.0 * (*records[i].exact_value - records[i].estimate_mean) /
                  *records[i].exact_value);
        CHECK(records[i].estimate_std >= 0.0);
    }
    CHECK(std::abs(*records[2].rel_err_pct) < 1.0);
}

TEST_CASE("sweep values reuse the probe streams")
{
    auto config = generated(LOGDET_GEN_SPARSE_DD, 200, 2000);
    config.sweep = {2, 5};
    config.repeats = 1;
    config.estimator.p_override = 30;
    config.exact = ExactMethod::none;
    std::ostringstream log;
    const auto records = run_benchmark(config, log);

    logdet_matrix* a = nullptr;
    REQUIRE(logdet_matrix_generate(LOGDET_GEN_SPARSE_DD, 200, 2000, 1, &a) ==
            LOGDET_OK);
    logdet_config c = config.estimator;
    c.m = 5;
    c.seed = logdet_derive_seed(c.seed, 0);
    logdet_estimate* e = nullptr;
    REQUIRE(logdet_approx(a, &c, &e) == LOGDET_OK);
    double partials[5];
    logdet_estimate_partials(e, partials, 5);
    CHECK(records[0].estimate_mean == partials[1]);
    CHECK(records[1].estimate_mean == partials[4]);
    CHECK_FALSE(records[0].exact_value.has_value());
    CHECK_FALSE(records[0].speedup.has_value());
    logdet_estimate_free(e);
    logdet_matrix_free(a);
}

TEST_CASE("fixed seed reproduces the estimate fields bitwise")
{
    auto config = generated(LOGDET_GEN_DENSE, 120);
    config.repeats = 1;
    config.estimator.p_override = 50;
    std::ostringstream log;
    const auto a = run_benchmark(config, log);
    config.estimator.threads = 8;
    const auto b = run_benchmark(config, log);
    CHECK(a[0].estimate_mean == b[0].estimate_mean);
    CHECK(a[0].estimate_std == b[0].estimate_std);
    CHECK(a[0].exact_value == b[0].exact_value);
}

TEST_CASE("identity input: exact zero, estimate within the bound")
{
    const auto path = temp_path("logdet_identity.mtx");
    std::ostringstream text;
    text << "%%MatrixMarket matrix coordinate real symmetric\n100 100 100\n";
    for (int i = 1; i <= 100; ++i) {
        text << i << " " << i << " 1\n";
    }
    write_file(path, text.str());
    auto config = default_run_config();
    config.input_path = path;
    config.repeats = 3;
    std::ostringstream log;
    const auto records = run_benchmark(config, log);
    std::filesystem::remove(path);
    REQUIRE(records.size() == 1);
    CHECK(records[0].name == "logdet_identity");
    CHECK(records[0].exact_value == 0.0);
    // Relative error is undefined against an exact value of zero.
    CHECK_FALSE(records[0].rel_err_pct.has_value());
    logdet_error_bound_report bound{};
    REQUIRE(logdet_error_bound(1, 1, 100, 5, config.estimator.m,
                               config.estimator.epsilon, nullptr, 0,
                               &bound) == LOGDET_OK);
    CHECK(std::abs(records[0].estimate_mean) <= bound.bound);
}

TEST_CASE("baseline skipped above the memory budget")
{
    auto config = generated(LOGDET_GEN_SPARSE_DD, 2000, 8000);
    config.repeats = 1;
    config.estimator.p_override = 8;
    config.exact_budget_gib = 1e-3;
    std::ostringstream log;
    const auto records = run_benchmark(config, log);
    CHECK_FALSE(records[0].exact_value.has_value());
    CHECK(log.str().find("baseline skipped") != std::string::npos);
}

TEST_CASE("validation reports")
{
    const auto good = temp_path("logdet_validate_good.mtx");
    write_file(good,
               "%%MatrixMarket matrix coordinate real symmetric\n"
               "3 3 4\n1 1 4\n2 2 4\n3 1 -1\n3 3 4\n");
    const auto report = validate_file(good);
    CHECK(report.summary.n == 3);
    CHECK(report.summary.nnz == 5);
    CHECK(report.text.find("gershgorin: definite") != std::string::npos);

    const auto weak = temp_path("logdet_validate_weak.mtx");
    write_file(weak, "%%MatrixMarket matrix array real symmetric\n2 2\n"
                     "1\n2\n5\n");
    CHECK(validate_file(weak).text.find("gershgorin: inconclusive") !=
          std::string::npos);

    const auto zero = temp_path("logdet_validate_zero.mtx");
    write_file(zero, "%%MatrixMarket matrix coordinate real symmetric\n"
                     "2 2 2\n1 1 1\n2 2 0\n");
    try {
        validate_file(zero);
        FAIL("expected rejection");
    } catch (const BenchError& e) {
        CHECK(e.status() == LOGDET_ERR_NOT_POSITIVE_DEFINITE);
    }

    const auto ufl = temp_path("logdet_validate_ufl.mtx");
    write_file(ufl, "%%MatrixMarket matrix coordinate real symmetric\n"
                    "%-------------------------------------------------\n"
                    "% UF Sparse Matrix Collection\n"
                    "% name: test/fixture\n"
                    "%-------------------------------------------------\n"
                    "2 2 3\n1 1 2.0e+00\n2 1 -1.0E+00\n2 2 2\n");
    CHECK(validate_file(ufl).summary.gershgorin_definite == 1);
    CHECK(validate_file(ufl).summary.n == 2);

    for (const auto& p : {good, weak, zero, ufl}) {
        std::filesystem::remove(p);
    }
}

TEST_CASE("command-line exit codes")
{
    const auto out = temp_path("logdet_cli_out.csv");
    CHECK(cli("run --gen dense_dd --n 50 --m 2 --p 10 --repeats 2 --out " +
              out) == 0);
    std::ifstream in(out);
    CHECK(read_report(in, ReportFormat::csv).size() == 1);
    std::filesystem::remove(out);

    CHECK(cli("params --kappa 10 --target-eps 0.25") == 0);
    CHECK(cli("") == 2);
    CHECK(cli("run --gen nope --n 5") == 2);
    CHECK(cli("run --gen dense --n 5 --m 0") == 2);
    CHECK(cli("run") == 2);
    CHECK(cli("params --kappa 0.5 --target-eps 0.1") == 2);
    CHECK(cli("run --input /nonexistent.mtx") == 2);

    const auto bad = temp_path("logdet_cli_bad.mtx");
    write_file(bad, "%%MatrixMarket matrix coordinate real general\n"
                    "1 1 1\n1 1 1\n");
    CHECK(cli("validate " + bad) == 3);
    CHECK(cli("run --input " + bad) == 3);
    std::filesystem::remove(bad);

    // Positive diagonal, dominant eigenvalue -1999.
    const auto indefinite = temp_path("logdet_cli_indef.mtx");
    write_file(indefinite, "%%MatrixMarket matrix array real symmetric\n"
                           "3 3\n1\n-1000\n-1000\n1\n-1000\n1\n");
    CHECK(cli("run --input " + indefinite + " --exact none --repeats 2") ==
          4);
    std::filesystem::remove(indefinite);

    CHECK(cli("run --gen dense --n 5 --p 4 --repeats 1 --exact none") == 0);
    CHECK(std::system(("LOGDET_THREADS=x " + std::string(LOGDET_CLI_PATH) +
                       " run --gen dense --n 5 >/dev/null 2>&1")
                          .c_str()) != 0);
}
