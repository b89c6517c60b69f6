// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include "matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "errors.hpp"

namespace logdet {

namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool is_blank(const std::string& line)
{
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

/// Next line that is neither a comment nor blank; false at end of input.
bool next_data_line(std::istream& in, std::string& line, std::int64_t& lineno)
{
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '%' || is_blank(line)) {
            continue;
        }
        return true;
    }
    return false;
}

Index parse_index(std::istringstream& fields, std::int64_t lineno,
                  const char* what)
{
    Index value = 0;
    if (!(fields >> value)) {
        throw FormatError(std::string("expected ") + what, lineno);
    }
    return value;
}

double parse_value(std::istringstream& fields, std::int64_t lineno)
{
    double value = 0.0;
    if (!(fields >> value)) {
        throw FormatError("expected a real value", lineno);
    }
    return value;
}

void expect_line_end(std::istringstream& fields, std::int64_t lineno)
{
    std::string rest;
    if (fields >> rest) {
        throw FormatError("unexpected trailing token '" + rest + "'", lineno);
    }
}

}  // namespace

SpdMatrix read_matrix_market(std::istream& in)
{
    std::int64_t lineno = 0;
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("empty input");
    }
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }

    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (lower(banner) != "%%matrixmarket") {
        throw FormatError("missing %%MatrixMarket banner", lineno);
    }
    if (lower(object) != "matrix") {
        throw FormatError("unsupported object '" + object + "'", lineno);
    }
    format = lower(format);
    if (format != "coordinate" && format != "array") {
        throw FormatError("unsupported format '" + format + "'", lineno);
    }
    field = lower(field);
    if (field != "real" && field != "integer" && field != "double") {
        throw FormatError("unsupported field '" + field +
                              "' (only real and integer are accepted)",
                          lineno);
    }
    symmetry = lower(symmetry);
    if (symmetry != "symmetric") {
        throw FormatError("unsupported symmetry '" + symmetry +
                              "' (only symmetric is accepted)",
                          lineno);
    }

    if (!next_data_line(in, line, lineno)) {
        throw FormatError("missing size line", lineno);
    }
    std::istringstream size_fields(line);
    const Index rows = parse_index(size_fields, lineno, "row count");
    const Index cols = parse_index(size_fields, lineno, "column count");
    if (rows != cols) {
        throw FormatError("matrix is not square", lineno);
    }
    if (rows < 1) {
        throw FormatError("matrix order must be positive", lineno);
    }
    const Index n = rows;

    if (format == "array") {
        expect_line_end(size_fields, lineno);
        std::vector<double> dense(static_cast<std::size_t>(n * n), 0.0);
        // Column-major lower triangle.
        for (Index j = 0; j < n; ++j) {
            for (Index i = j; i < n; ++i) {
                if (!next_data_line(in, line, lineno)) {
                    throw FormatError("fewer array entries than declared",
                                      lineno);
                }
                std::istringstream fields(line);
                const double v = parse_value(fields, lineno);
                expect_line_end(fields, lineno);
                dense[i * n + j] = v;
                dense[j * n + i] = v;
            }
        }
        if (next_data_line(in, line, lineno)) {
            throw FormatError("more array entries than declared", lineno);
        }
        return SpdMatrix::dense(n, std::move(dense));
    }

    const Index declared = parse_index(size_fields, lineno, "entry count");
    expect_line_end(size_fields, lineno);
    if (declared < 0) {
        throw FormatError("negative entry count", lineno);
    }
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(declared));
    for (Index e = 0; e < declared; ++e) {
        if (!next_data_line(in, line, lineno)) {
            throw FormatError("fewer entries than declared (" +
                                  std::to_string(e) + " of " +
                                  std::to_string(declared) + ")",
                              lineno);
        }
        std::istringstream fields(line);
        const Index i = parse_index(fields, lineno, "row index");
        const Index j = parse_index(fields, lineno, "column index");
        const double v = parse_value(fields, lineno);
        expect_line_end(fields, lineno);
        if (i < 1 || i > n || j < 1 || j > n) {
            throw FormatError("index (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ") out of range",
                              lineno);
        }
        triplets.push_back({i - 1, j - 1, v});
    }
    if (next_data_line(in, line, lineno)) {
        throw FormatError("more entries than declared", lineno);
    }
    return SpdMatrix::from_triplets(n, std::move(triplets),
                                    TripletLayout::one_triangle);
}

SpdMatrix load_matrix_market(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    return read_matrix_market(in);
}

void write_matrix_market(const SpdMatrix& a, std::ostream& out)
{
    const bool sparse = a.is_sparse();
    Index lower_count = 0;
    a.for_each_entry([&](Index i, Index j, double v) {
        if (j <= i && (sparse || v != 0.0 || i == j)) {
            ++lower_count;
        }
    });
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << a.n() << ' ' << a.n() << ' ' << lower_count << '\n';
    char buf[64];
    a.for_each_entry([&](Index i, Index j, double v) {
        if (j <= i && (sparse || v != 0.0 || i == j)) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << i + 1 << ' ' << j + 1 << ' ' << buf << '\n';
        }
    });
}

void save_matrix_market(const SpdMatrix& a, const std::string& path)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    write_matrix_market(a, out);
    out.flush();
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

}  // namespace logdet
