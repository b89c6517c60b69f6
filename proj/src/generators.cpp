// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include "generators.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "rng.hpp"

namespace logdet {

namespace {

void require_order(Index n)
{
    if (n < 1) {
        throw ContractViolation("generator order must be at least 1");
    }
}

/// Row i of a uniform n x n draw comes from its own stream.
void fill_uniform_rows(double* out, Index n, std::uint64_t seed,
                       std::uint64_t domain)
{
    for (Index i = 0; i < n; ++i) {
        RngEngine engine({seed, domain | static_cast<std::uint64_t>(i)});
        for (Index j = 0; j < n; ++j) {
            out[i * n + j] = engine.uniform(generator_low, generator_high);
        }
    }
}

}  // namespace

std::string to_string(GeneratorFamily family)
{
    switch (family) {
    case GeneratorFamily::dense:
        return "dense";
    case GeneratorFamily::dense_dd:
        return "dense_dd";
    case GeneratorFamily::sparse_dd:
        return "sparse_dd";
    }
    return "unknown";
}

std::optional<GeneratorFamily> parse_generator_family(const std::string& name)
{
    if (name == "dense") {
        return GeneratorFamily::dense;
    }
    if (name == "dense_dd") {
        return GeneratorFamily::dense_dd;
    }
    if (name == "sparse_dd") {
        return GeneratorFamily::sparse_dd;
    }
    return std::nullopt;
}

SpdMatrix rand_spd_dense(Index n, std::uint64_t seed)
{
    require_order(n);
    using RowMatrix =
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    // A rank-deficient draw (probability zero) moves to the next stream block.
    for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
        const std::uint64_t shift = attempt << 40;
        RowMatrix x(n, n);
        fill_uniform_rows(x.data(), n, seed, stream_domain::dense_rows | shift);

        Eigen::VectorXd d(n);
        RngEngine diag_engine({seed, stream_domain::dense_diag | shift});
        for (Index i = 0; i < n; ++i) {
            d[i] = diag_engine.uniform(generator_low, generator_high);
        }

        Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
        const auto& r = qr.matrixQR();
        const double r_max = r.diagonal().cwiseAbs().maxCoeff();
        if (r.diagonal().cwiseAbs().minCoeff() <=
            1e-14 * static_cast<double>(n) * r_max) {
            continue;
        }
        const Eigen::MatrixXd q =
            qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
        const Eigen::MatrixXd a = q * d.asDiagonal() * q.transpose();

        std::vector<double> values(static_cast<std::size_t>(n * n));
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) {
                values[i * n + j] = 0.5 * (a(i, j) + a(j, i));
            }
        }
        return SpdMatrix::dense(n, std::move(values));
    }
    throw NumericalError("rand_spd_dense: repeated rank-deficient draws");
}

SpdMatrix rand_spd_dense_dd(Index n, std::uint64_t seed)
{
    require_order(n);
    std::vector<double> x(static_cast<std::size_t>(n * n));
    fill_uniform_rows(x.data(), n, seed, stream_domain::dense_rows);
    std::vector<double> a(x.size());
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            a[i * n + j] = 0.5 * (x[i * n + j] + x[j * n + i]);
        }
        a[i * n + i] += static_cast<double>(n);
    }
    return SpdMatrix::dense(n, std::move(a));
}

SpdMatrix rand_spd_sparse(Index n, Index nnz_target, std::uint64_t seed)
{
    require_order(n);
    if (nnz_target < n || nnz_target > n * n) {
        throw ContractViolation("sparse generator needs n <= nnz <= n^2 (n = " +
                                std::to_string(n) + ", nnz = " +
                                std::to_string(nnz_target) + ")");
    }
    const double rate =
        n == 1 ? 0.0
               : static_cast<double>(nnz_target - n) /
                     (static_cast<double>(n) * static_cast<double>(n - 1));

    // Upper-triangle entries per row, columns ascending.
    std::vector<std::vector<std::pair<Index, double>>> upper(
        static_cast<std::size_t>(n));
    std::vector<double> diag(static_cast<std::size_t>(n));
    const double log_miss = rate < 1.0 ? std::log1p(-rate) : 0.0;
    for (Index i = 0; i < n; ++i) {
        RngEngine engine(
            {seed, stream_domain::sparse_rows | static_cast<std::uint64_t>(i)});
        diag[i] = engine.uniform(generator_low, generator_high) +
                  static_cast<double>(n);
        if (rate <= 0.0) {
            continue;
        }
        auto& row = upper[i];
        if (rate >= 1.0) {
            for (Index j = i + 1; j < n; ++j) {
                row.emplace_back(j, engine.uniform(generator_low, generator_high));
            }
            continue;
        }
        // Gap to the next success of a Bernoulli(rate) sequence.
        Index j = i;
        while (true) {
            const double u = 1.0 - engine.uniform();  // (0, 1]
            const double gap = std::floor(std::log(u) / log_miss);
            if (gap >= static_cast<double>(n - 1 - j)) {
                break;
            }
            j += 1 + static_cast<Index>(gap);
            row.emplace_back(j, engine.uniform(generator_low, generator_high));
        }
    }

    std::vector<Index> count(static_cast<std::size_t>(n), 1);
    for (Index i = 0; i < n; ++i) {
        count[i] += static_cast<Index>(upper[i].size());
        for (const auto& [j, v] : upper[i]) {
            ++count[j];
        }
    }
    std::vector<Index> row_ptr(static_cast<std::size_t>(n + 1), 0);
    for (Index i = 0; i < n; ++i) {
        row_ptr[i + 1] = row_ptr[i] + count[i];
    }
    std::vector<Index> col_idx(static_cast<std::size_t>(row_ptr[n]));
    std::vector<double> values(col_idx.size());
    std::vector<Index> next(row_ptr.begin(), row_ptr.end() - 1);
    // Visiting rows in order appends the mirrored (lower) entries of row j
    // before its diagonal and its own upper entries, keeping columns sorted.
    for (Index i = 0; i < n; ++i) {
        col_idx[next[i]] = i;
        values[next[i]++] = diag[i];
        for (const auto& [j, v] : upper[i]) {
            col_idx[next[i]] = j;
            values[next[i]++] = v;
            col_idx[next[j]] = i;
            values[next[j]++] = v;
        }
    }
    return SpdMatrix::from_csr(n, std::move(row_ptr), std::move(col_idx),
                               std::move(values));
}

SpdMatrix generate(const GeneratorSpec& spec)
{
    switch (spec.family) {
    case GeneratorFamily::dense:
        return rand_spd_dense(spec.n, spec.seed);
    case GeneratorFamily::dense_dd:
        return rand_spd_dense_dd(spec.n, spec.seed);
    case GeneratorFamily::sparse_dd:
        return rand_spd_sparse(spec.n, spec.nnz_target, spec.seed);
    }
    throw ContractViolation("unknown generator family");
}

}  // namespace logdet
