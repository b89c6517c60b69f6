// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include "matrix.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "errors.hpp"

namespace logdet {

namespace {

void require_order(Index n)
{
    if (n < 1) {
        throw ContractViolation("matrix order must be positive, got " +
                                std::to_string(n));
    }
}

using EntryMap = std::map<std::pair<Index, Index>, double>;

CsrStorage csr_from_map(Index n, const EntryMap& entries)
{
    CsrStorage s;
    s.row_ptr.assign(static_cast<std::size_t>(n + 1), 0);
    s.col_idx.reserve(entries.size());
    s.values.reserve(entries.size());
    for (const auto& [key, value] : entries) {
        ++s.row_ptr[key.first + 1];
        s.col_idx.push_back(key.second);
        s.values.push_back(value);
    }
    for (Index i = 0; i < n; ++i) {
        s.row_ptr[i + 1] += s.row_ptr[i];
    }
    return s;
}

void check_dimension(std::size_t got, Index expected, const char* what)
{
    if (static_cast<Index>(got) != expected) {
        throw ContractViolation(std::string(what) + ": length " +
                                std::to_string(got) + " does not match " +
                                std::to_string(expected));
    }
}

}  // namespace

std::vector<double> DenseBlock::column(Index j) const
{
    std::vector<double> out(static_cast<std::size_t>(rows_));
    for (Index i = 0; i < rows_; ++i) {
        out[i] = (*this)(i, j);
    }
    return out;
}

void DenseBlock::set_column(Index j, std::span<const double> values)
{
    check_dimension(values.size(), rows_, "set_column");
    for (Index i = 0; i < rows_; ++i) {
        (*this)(i, j) = values[i];
    }
}

SpdMatrix::SpdMatrix(Index n, DenseStorage storage)
    : n_(n), storage_(std::move(storage))
{
    const auto& v = std::get<DenseStorage>(storage_).values;
    diagonal_only_ = true;
    for (Index i = 0; i < n_ && diagonal_only_; ++i) {
        for (Index j = 0; j < n_; ++j) {
            if (i != j && v[i * n_ + j] != 0.0) {
                diagonal_only_ = false;
                break;
            }
        }
    }
    check_diagonal();
}

SpdMatrix::SpdMatrix(Index n, CsrStorage storage)
    : n_(n), storage_(std::move(storage))
{
    const auto& s = std::get<CsrStorage>(storage_);
    diagonal_only_ = true;
    for (Index i = 0; i < n_ && diagonal_only_; ++i) {
        for (Index k = s.row_ptr[i]; k < s.row_ptr[i + 1]; ++k) {
            if (s.col_idx[k] != i && s.values[k] != 0.0) {
                diagonal_only_ = false;
                break;
            }
        }
    }
    check_diagonal();
}

void SpdMatrix::check_diagonal() const
{
    const auto diag = diagonal_values();
    for (Index i = 0; i < n_; ++i) {
        if (!(diag[i] > 0.0)) {
            throw NotPositiveDefinite(
                "diagonal entry " + std::to_string(i + 1) +
                    " is missing or not strictly positive",
                i);
        }
    }
}

SpdMatrix SpdMatrix::dense(Index n, std::vector<double> a)
{
    require_order(n);
    check_dimension(a.size(), n * n, "dense matrix");
    double max_abs = 0.0;
    for (double v : a) {
        if (!std::isfinite(v)) {
            throw ContractViolation("matrix entries must be finite");
        }
        max_abs = std::max(max_abs, std::abs(v));
    }
    const double tol = symmetry_tolerance * max_abs;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double upper = a[i * n + j];
            const double lower = a[j * n + i];
            if (std::abs(upper - lower) > tol) {
                throw ContractViolation(
                    "matrix is not symmetric at (" + std::to_string(i + 1) +
                    ", " + std::to_string(j + 1) + ")");
            }
            const double mean = 0.5 * (upper + lower);
            a[i * n + j] = mean;
            a[j * n + i] = mean;
        }
    }
    return SpdMatrix(n, DenseStorage{std::move(a)});
}

SpdMatrix SpdMatrix::from_triplets(Index n, std::vector<Triplet> triplets,
                                   TripletLayout layout)
{
    require_order(n);
    EntryMap entries;
    double max_abs = 0.0;
    for (const auto& t : triplets) {
        if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n) {
            throw ContractViolation(
                "entry (" + std::to_string(t.row + 1) + ", " +
                std::to_string(t.col + 1) + ") outside a " +
                std::to_string(n) + "x" + std::to_string(n) + " matrix");
        }
        if (!std::isfinite(t.value)) {
            throw ContractViolation("matrix entries must be finite");
        }
        if (layout == TripletLayout::one_triangle) {
            entries[{std::max(t.row, t.col), std::min(t.row, t.col)}] +=
                t.value;
        } else {
            entries[{t.row, t.col}] += t.value;
        }
    }
    for (const auto& [key, value] : entries) {
        max_abs = std::max(max_abs, std::abs(value));
    }

    EntryMap full;
    if (layout == TripletLayout::one_triangle) {
        for (const auto& [key, value] : entries) {
            full[key] = value;
            full[{key.second, key.first}] = value;
        }
    } else {
        const double tol = symmetry_tolerance * max_abs;
        for (const auto& [key, value] : entries) {
            const auto mirror = entries.find({key.second, key.first});
            const double other = mirror == entries.end() ? 0.0 : mirror->second;
            if (std::abs(value - other) > tol) {
                throw ContractViolation(
                    "matrix is not symmetric at (" +
                    std::to_string(key.first + 1) + ", " +
                    std::to_string(key.second + 1) + ")");
            }
            const double mean = 0.5 * (value + other);
            full[key] = mean;
            full[{key.second, key.first}] = mean;
        }
    }
    return SpdMatrix(n, csr_from_map(n, full));
}

SpdMatrix SpdMatrix::from_csr(Index n, std::vector<Index> row_ptr,
                              std::vector<Index> col_idx,
                              std::vector<double> values)
{
    require_order(n);
    check_dimension(row_ptr.size(), n + 1, "row pointers");
    check_dimension(values.size(), static_cast<Index>(col_idx.size()),
                    "CSR values");
    if (row_ptr.front() != 0 ||
        row_ptr.back() != static_cast<Index>(col_idx.size())) {
        throw ContractViolation("row pointers do not span the column indices");
    }
    double max_abs = 0.0;
    for (Index i = 0; i < n; ++i) {
        if (row_ptr[i + 1] < row_ptr[i]) {
            throw ContractViolation("row pointers must be nondecreasing");
        }
        for (Index k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            if (col_idx[k] < 0 || col_idx[k] >= n) {
                throw ContractViolation("column index out of range in row " +
                                        std::to_string(i + 1));
            }
            if (k > row_ptr[i] && col_idx[k] <= col_idx[k - 1]) {
                throw ContractViolation(
                    "column indices must be strictly increasing in row " +
                    std::to_string(i + 1));
            }
            if (!std::isfinite(values[k])) {
                throw ContractViolation("matrix entries must be finite");
            }
            max_abs = std::max(max_abs, std::abs(values[k]));
        }
    }

    // Transpose by counting; rows come out with ascending columns.
    std::vector<Index> t_ptr(static_cast<std::size_t>(n + 1), 0);
    for (Index c : col_idx) {
        ++t_ptr[c + 1];
    }
    for (Index i = 0; i < n; ++i) {
        t_ptr[i + 1] += t_ptr[i];
    }
    std::vector<Index> t_col(col_idx.size());
    std::vector<double> t_val(values.size());
    {
        std::vector<Index> next(t_ptr.begin(), t_ptr.end() - 1);
        for (Index i = 0; i < n; ++i) {
            for (Index k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
                const Index dst = next[col_idx[k]]++;
                t_col[dst] = i;
                t_val[dst] = values[k];
            }
        }
    }
    if (t_ptr != row_ptr || t_col != col_idx) {
        // Structurally asymmetric; explicit zeros may still make it symmetric.
        std::vector<Triplet> triplets;
        triplets.reserve(col_idx.size());
        for (Index i = 0; i < n; ++i) {
            for (Index k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
                triplets.push_back({i, col_idx[k], values[k]});
            }
        }
        return from_triplets(n, std::move(triplets), TripletLayout::full);
    }
    const double tol = symmetry_tolerance * max_abs;
    for (Index i = 0; i < n; ++i) {
        for (Index k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            if (std::abs(values[k] - t_val[k]) > tol) {
                throw ContractViolation(
                    "matrix is not symmetric at (" + std::to_string(i + 1) +
                    ", " + std::to_string(col_idx[k] + 1) + ")");
            }
        }
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
        values[k] = 0.5 * (values[k] + t_val[k]);
    }
    return SpdMatrix(n, CsrStorage{std::move(row_ptr), std::move(col_idx),
                                   std::move(values)});
}

SpdMatrix SpdMatrix::diagonal(std::span<const double> diag)
{
    const auto n = static_cast<Index>(diag.size());
    require_order(n);
    CsrStorage s;
    s.row_ptr.resize(diag.size() + 1);
    s.col_idx.resize(diag.size());
    s.values.assign(diag.begin(), diag.end());
    for (Index i = 0; i <= n; ++i) {
        s.row_ptr[i] = i;
    }
    for (Index i = 0; i < n; ++i) {
        s.col_idx[i] = i;
    }
    return SpdMatrix(n, std::move(s));
}

SpdMatrix SpdMatrix::identity(Index n)
{
    require_order(n);
    return diagonal(std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

Index SpdMatrix::nnz() const noexcept
{
    if (const auto* s = csr_storage()) {
        return static_cast<Index>(s->values.size());
    }
    return n_ * n_;
}

double SpdMatrix::at(Index i, Index j) const
{
    if (i < 0 || i >= n_ || j < 0 || j >= n_) {
        throw ContractViolation("index out of range");
    }
    if (const auto* d = dense_storage()) {
        return d->values[i * n_ + j];
    }
    const auto& s = *csr_storage();
    const auto first = s.col_idx.begin() + s.row_ptr[i];
    const auto last = s.col_idx.begin() + s.row_ptr[i + 1];
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) {
        return 0.0;
    }
    return s.values[it - s.col_idx.begin()];
}

std::vector<double> SpdMatrix::diagonal_values() const
{
    std::vector<double> diag(static_cast<std::size_t>(n_), 0.0);
    for_each_entry([&](Index i, Index j, double v) {
        if (i == j) {
            diag[i] = v;
        }
    });
    return diag;
}

std::vector<double> SpdMatrix::to_dense() const
{
    if (const auto* d = dense_storage()) {
        return d->values;
    }
    std::vector<double> out(static_cast<std::size_t>(n_ * n_), 0.0);
    for_each_entry([&](Index i, Index j, double v) { out[i * n_ + j] = v; });
    return out;
}

SpdMatrix SpdMatrix::to_sparse() const
{
    if (is_sparse()) {
        return *this;
    }
    const auto& v = dense_storage()->values;
    CsrStorage s;
    s.row_ptr.assign(static_cast<std::size_t>(n_ + 1), 0);
    for (Index i = 0; i < n_; ++i) {
        for (Index j = 0; j < n_; ++j) {
            if (v[i * n_ + j] != 0.0 || i == j) {
                s.col_idx.push_back(j);
                s.values.push_back(v[i * n_ + j]);
            }
        }
        s.row_ptr[i + 1] = static_cast<Index>(s.col_idx.size());
    }
    return SpdMatrix(n_, std::move(s));
}

SpdMatrix SpdMatrix::to_dense_matrix() const
{
    if (!is_sparse()) {
        return *this;
    }
    return SpdMatrix(n_, DenseStorage{to_dense()});
}

SpdMatrix SpdMatrix::scaled(double c) const
{
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw ContractViolation("scale factor must be positive and finite");
    }
    SpdMatrix out = *this;
    std::visit(
        [c](auto& storage) {
            for (auto& v : storage.values) {
                v *= c;
            }
        },
        out.storage_);
    return out;
}

void matvec(const SpdMatrix& a, std::span<const double> x, std::span<double> y)
{
    const Index n = a.n();
    check_dimension(x.size(), n, "matvec input");
    check_dimension(y.size(), n, "matvec output");
    if (const auto* d = a.dense_storage()) {
        const double* row = d->values.data();
        for (Index i = 0; i < n; ++i, row += n) {
            double acc = 0.0;
            for (Index j = 0; j < n; ++j) {
                acc += row[j] * x[j];
            }
            y[i] = acc;
        }
        return;
    }
    const auto& s = *a.csr_storage();
    for (Index i = 0; i < n; ++i) {
        double acc = 0.0;
        for (Index k = s.row_ptr[i]; k < s.row_ptr[i + 1]; ++k) {
            acc += s.values[k] * x[s.col_idx[k]];
        }
        y[i] = acc;
    }
}

std::vector<double> matvec(const SpdMatrix& a, std::span<const double> x)
{
    std::vector<double> y(static_cast<std::size_t>(a.n()));
    matvec(a, x, y);
    return y;
}

void mat_multivec(const SpdMatrix& a, const DenseBlock& x, DenseBlock& y)
{
    const Index n = a.n();
    const Index p = x.cols();
    if (x.rows() != n) {
        throw ContractViolation("mat_multivec: block has " +
                                std::to_string(x.rows()) + " rows, matrix order " +
                                std::to_string(n));
    }
    if (y.rows() != n || y.cols() != p) {
        y = DenseBlock(n, p);
    }
    const double* xs = x.data().data();
    double* ys = y.data().data();
    if (const auto* d = a.dense_storage()) {
        const double* row = d->values.data();
        for (Index i = 0; i < n; ++i, row += n) {
            double* acc = ys + i * p;
            std::fill(acc, acc + p, 0.0);
            for (Index j = 0; j < n; ++j) {
                const double aij = row[j];
                const double* xr = xs + j * p;
                for (Index c = 0; c < p; ++c) {
                    acc[c] += aij * xr[c];
                }
            }
        }
        return;
    }
    const auto& s = *a.csr_storage();
    for (Index i = 0; i < n; ++i) {
        double* acc = ys + i * p;
        std::fill(acc, acc + p, 0.0);
        for (Index k = s.row_ptr[i]; k < s.row_ptr[i + 1]; ++k) {
            const double aij = s.values[k];
            const double* xr = xs + s.col_idx[k] * p;
            for (Index c = 0; c < p; ++c) {
                acc[c] += aij * xr[c];
            }
        }
    }
}

DenseBlock mat_multivec(const SpdMatrix& a, const DenseBlock& x)
{
    DenseBlock y(a.n(), x.cols());
    mat_multivec(a, x, y);
    return y;
}

double dot(std::span<const double> x, std::span<const double> y)
{
    check_dimension(y.size(), static_cast<Index>(x.size()), "dot");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += x[i] * y[i];
    }
    return acc;
}

double norm2(std::span<const double> x)
{
    double scale = 0.0;
    for (double v : x) {
        scale = std::max(scale, std::abs(v));
    }
    if (scale == 0.0 || !std::isfinite(scale)) {
        return scale;
    }
    double acc = 0.0;
    for (double v : x) {
        const double r = v / scale;
        acc += r * r;
    }
    return scale * std::sqrt(acc);
}

}  // namespace logdet
