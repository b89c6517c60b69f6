// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include "bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <json.hpp>

namespace logdet_bench {

namespace {

using MatrixPtr = std::unique_ptr<logdet_matrix, decltype(&logdet_matrix_free)>;
using EstimatePtr =
    std::unique_ptr<logdet_estimate, decltype(&logdet_estimate_free)>;

void check(logdet_status status, const std::string& context)
{
    if (status != LOGDET_OK) {
        throw BenchError(status, context + ": " + logdet_last_error());
    }
}

const char* family_name(logdet_generator_family family)
{
    switch (family) {
    case LOGDET_GEN_DENSE:
        return "dense";
    case LOGDET_GEN_DENSE_DD:
        return "dense_dd";
    case LOGDET_GEN_SPARSE_DD:
        return "sparse_dd";
    }
    return "unknown";
}

std::string input_name(const RunConfig& config)
{
    if (config.input_path) {
        return std::filesystem::path(*config.input_path).stem().string();
    }
    const auto& g = *config.generator;
    std::string name = std::string(family_name(g.family)) + "_n" +
                       std::to_string(g.n);
    if (g.family == LOGDET_GEN_SPARSE_DD) {
        name += "_nnz" + std::to_string(g.nnz);
    }
    return name;
}

MatrixPtr build_input(const RunConfig& config)
{
    logdet_matrix* raw = nullptr;
    if (config.input_path.has_value() == config.generator.has_value()) {
        throw BenchError(LOGDET_ERR_INVALID_ARGUMENT,
                         "give exactly one of an input file or a generator");
    }
    if (config.input_path) {
        check(logdet_matrix_load_mm(config.input_path->c_str(), &raw),
              *config.input_path);
    } else {
        const auto& g = *config.generator;
        check(logdet_matrix_generate(g.family, g.n, g.nnz, g.seed, &raw),
              "generator");
    }
    return {raw, &logdet_matrix_free};
}

struct ExactResult {
    std::optional<double> value;
    std::optional<double> seconds;
};

ExactResult run_exact(const logdet_matrix* a, const RunConfig& config,
                      std::ostream& log)
{
    if (config.exact == ExactMethod::none) {
        return {};
    }
    const double n = static_cast<double>(logdet_matrix_order(a));
    const double dense_gib = n * n * 8.0 / (1024.0 * 1024.0 * 1024.0);
    if (dense_gib > config.exact_budget_gib) {
        log << "baseline skipped: dense-equivalent size " << dense_gib
            << " GiB exceeds the " << config.exact_budget_gib
            << " GiB budget\n";
        return {};
    }
    const auto method = config.exact == ExactMethod::eig
                            ? LOGDET_EXACT_EIG
                            : LOGDET_EXACT_CHOLESKY;
    double value = 0.0;
    int64_t index = -1;
    const auto start = std::chrono::steady_clock::now();
    const logdet_status status = logdet_exact(a, method, &value, &index);
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    if (status != LOGDET_OK) {
        log << "exact baseline failed: " << logdet_last_error() << "\n";
        return {};
    }
    return {value, seconds};
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line)
{
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cells.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cells.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.emplace_back();
        } else if (c != '\r') {
            cells.back() += c;
        }
    }
    return cells;
}

/// Record fields as (cell text, is-numeric) in record_fields() order;
/// empty text means absent.
std::vector<std::pair<std::string, bool>> record_cells(const BenchmarkRecord& r)
{
    const auto opt = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    };
    return {
        {r.name, false},
        {std::to_string(r.n), true},
        {std::to_string(r.nnz), true},
        {std::to_string(r.m), true},
        {std::to_string(r.p), true},
        {std::to_string(r.t), true},
        {std::to_string(r.seed), true},
        {format_double(r.estimate_mean), true},
        {format_double(r.estimate_std), true},
        {opt(r.exact_value), true},
        {opt(r.rel_err_pct), true},
        {format_double(r.time_approx_s), true},
        {opt(r.time_exact_s), true},
        {opt(r.speedup), true},
    };
}

std::optional<double> parse_optional(const std::string& cell)
{
    if (cell.empty()) {
        return std::nullopt;
    }
    return std::stod(cell);
}

BenchmarkRecord record_from_cells(const std::vector<std::string>& c)
{
    if (c.size() != record_fields().size()) {
        throw BenchError(LOGDET_ERR_FORMAT, "report row has " +
                                                std::to_string(c.size()) +
                                                " fields");
    }
    BenchmarkRecord r;
    r.name = c[0];
    r.n = std::stoll(c[1]);
    r.nnz = std::stoll(c[2]);
    r.m = std::stoi(c[3]);
    r.p = std::stoll(c[4]);
    r.t = std::stoi(c[5]);
    r.seed = std::stoull(c[6]);
    r.estimate_mean = std::stod(c[7]);
    r.estimate_std = std::stod(c[8]);
    r.exact_value = parse_optional(c[9]);
    r.rel_err_pct = parse_optional(c[10]);
    r.time_approx_s = std::stod(c[11]);
    r.time_exact_s = parse_optional(c[12]);
    r.speedup = parse_optional(c[13]);
    return r;
}

std::string json_cell(const nlohmann::json& v)
{
    if (v.is_null()) {
        return {};
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_unsigned()) {
        return std::to_string(v.get<std::uint64_t>());
    }
    if (v.is_number_integer()) {
        return std::to_string(v.get<std::int64_t>());
    }
    if (v.is_number_float()) {
        return format_double(v.get<double>());
    }
    throw BenchError(LOGDET_ERR_FORMAT, "unexpected JSON value " + v.dump());
}

}  // namespace

RunConfig default_run_config()
{
    RunConfig config;
    logdet_config_default(&config.estimator);
    return config;
}

const std::vector<std::string>& record_fields()
{
    static const std::vector<std::string> fields{
        "name",          "n",           "nnz",          "m",
        "p",             "t",           "seed",         "estimate_mean",
        "estimate_std",  "exact_value", "rel_err_pct",  "time_approx_s",
        "time_exact_s",  "speedup"};
    return fields;
}

std::vector<BenchmarkRecord> run_benchmark(const RunConfig& config,
                                           std::ostream& log)
{
    if (config.repeats < 1) {
        throw BenchError(LOGDET_ERR_INVALID_ARGUMENT,
                         "repeats must be at least 1");
    }
    std::vector<int> ms = config.sweep;
    if (ms.empty()) {
        ms.push_back(config.estimator.m);
    }
    for (int m : ms) {
        if (m < 1) {
            throw BenchError(LOGDET_ERR_INVALID_ARGUMENT,
                             "sweep values must be at least 1");
        }
    }

    const MatrixPtr a = build_input(config);
    const std::string name = input_name(config);
    const ExactResult exact = run_exact(a.get(), config, log);

    std::vector<BenchmarkRecord> records;
    for (int m : ms) {
        BenchmarkRecord r;
        r.name = name;
        r.n = logdet_matrix_order(a.get());
        r.nnz = logdet_matrix_nnz(a.get());
        r.m = m;
        r.seed = config.estimator.seed;

        std::vector<double> values, times;
        logdet_status last_failure = LOGDET_OK;
        for (int j = 0; j < config.repeats; ++j) {
            logdet_config c = config.estimator;
            c.m = m;
            c.seed = logdet_derive_seed(config.estimator.seed,
                                        static_cast<std::uint64_t>(j));
            logdet_estimate* raw = nullptr;
            const logdet_status status = logdet_approx(a.get(), &c, &raw);
            if (status == LOGDET_ERR_INVALID_ARGUMENT) {
                throw BenchError(status, logdet_last_error());
            }
            if (status != LOGDET_OK) {
                log << "m=" << m << " repeat " << j
                    << " failed: " << logdet_last_error() << "\n";
                last_failure = status;
                continue;
            }
            const EstimatePtr e(raw, &logdet_estimate_free);
            values.push_back(logdet_estimate_value(e.get()));
            times.push_back(logdet_estimate_wall_time(e.get()));
            r.p = logdet_estimate_probes(e.get());
            r.t = logdet_estimate_iterations(e.get());
        }
        if (values.empty()) {
            throw BenchError(last_failure, "every repeat failed at m=" +
                                               std::to_string(m));
        }

        const double k = static_cast<double>(values.size());
        double sum = 0.0, time_sum = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            sum += values[i];
            time_sum += times[i];
        }
        r.estimate_mean = sum / k;
        double sq = 0.0;
        for (double v : values) {
            sq += (v - r.estimate_mean) * (v - r.estimate_mean);
        }
        r.estimate_std = values.size() > 1 ? std::sqrt(sq / (k - 1)) : 0.0;
        r.time_approx_s = time_sum / k;

        r.exact_value = exact.value;
        r.time_exact_s = exact.seconds;
        if (exact.value && *exact.value != 0.0) {
            r.rel_err_pct =
                100.0 * (*exact.value - r.estimate_mean) / *exact.value;
        }
        if (exact.seconds && r.time_approx_s > 0.0) {
            r.speedup = *exact.seconds / r.time_approx_s;
        }
        records.push_back(std::move(r));
    }
    return records;
}

void write_report(const std::vector<BenchmarkRecord>& records,
                  ReportFormat format, std::ostream& out)
{
    const auto& fields = record_fields();
    if (format == ReportFormat::csv) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            out << (i ? "," : "") << fields[i];
        }
        out << "\n";
        for (const auto& r : records) {
            const auto cells = record_cells(r);
            for (std::size_t i = 0; i < cells.size(); ++i) {
                out << (i ? "," : "") << csv_escape(cells[i].first);
            }
            out << "\n";
        }
        return;
    }
    // Hand-assembled so numbers keep 17 significant digits.
    out << "[";
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto cells = record_cells(records[k]);
        out << (k ? ",\n  {" : "\n  {");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto& [text, numeric] = cells[i];
            out << (i ? ", " : "") << nlohmann::json(fields[i]).dump() << ": ";
            if (!numeric) {
                out << nlohmann::json(text).dump();
            } else if (text.empty() || text.find_first_of("ni") !=
                                           std::string::npos) {
                // Absent, or not representable (nan/inf).
                out << "null";
            } else {
                out << text;
            }
        }
        out << "}";
    }
    out << "\n]\n";
}

void emit_report(const std::vector<BenchmarkRecord>& records,
                 ReportFormat format, const std::string& path)
{
    if (records.empty()) {
        throw BenchError(LOGDET_ERR_INVALID_ARGUMENT, "no records to report");
    }
    if (path == "-") {
        write_report(records, format, std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw BenchError(LOGDET_ERR_IO, "cannot open " + path);
    }
    write_report(records, format, out);
    out.flush();
    if (!out) {
        throw BenchError(LOGDET_ERR_IO, "write failed: " + path);
    }
}

std::vector<BenchmarkRecord> read_report(std::istream& in, ReportFormat format)
{
    std::vector<BenchmarkRecord> records;
    const auto& fields = record_fields();
    if (format == ReportFormat::csv) {
        std::string line;
        if (!std::getline(in, line) || csv_split(line) != fields) {
            throw BenchError(LOGDET_ERR_FORMAT, "unexpected CSV header");
        }
        while (std::getline(in, line)) {
            if (!line.empty()) {
                records.push_back(record_from_cells(csv_split(line)));
            }
        }
        return records;
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw BenchError(LOGDET_ERR_FORMAT, e.what());
    }
    if (!doc.is_array()) {
        throw BenchError(LOGDET_ERR_FORMAT, "report is not a JSON array");
    }
    for (const auto& object : doc) {
        std::vector<std::string> cells;
        for (const auto& field : fields) {
            cells.push_back(json_cell(object.at(field)));
        }
        records.push_back(record_from_cells(cells));
    }
    return records;
}

ValidationReport validate_file(const std::string& path)
{
    logdet_matrix* raw = nullptr;
    check(logdet_matrix_load_mm(path.c_str(), &raw), path);
    const MatrixPtr a(raw, &logdet_matrix_free);
    ValidationReport report;
    check(logdet_matrix_validate(a.get(), &report.summary), path);
    const auto& s = report.summary;
    std::ostringstream text;
    text << "n: " << s.n << "\n"
         << "nnz: " << s.nnz << "\n"
         << "storage: " << (logdet_matrix_is_sparse(a.get()) ? "sparse" : "dense")
         << "\n"
         << "symmetric: " << (s.symmetric ? "yes" : "no") << "\n"
         << "diagonal: " << (s.diagonal_positive ? "positive" : "not positive")
         << "\n"
         << "gershgorin: "
         << (s.gershgorin_definite ? "definite" : "inconclusive")
         << " (margin " << format_double(s.gershgorin_margin) << ")\n";
    report.text = text.str();
    return report;
}

}  // namespace logdet_bench
