// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace logdet {

using Index = std::int64_t;

/// Dense n x n, row-major.
struct DenseStorage {
    std::vector<double> values;
};

/// Compressed sparse row holding both triangles.
struct CsrStorage {
    std::vector<Index> row_ptr;
    std::vector<Index> col_idx;
    std::vector<double> values;
};

struct Triplet {
    Index row;
    Index col;
    double value;
};

/// How a triplet list encodes the symmetric matrix.
enum class TripletLayout {
    /// Only one triangle (either) is given; entries are mirrored.
    one_triangle,
    /// Both triangles are given and must agree within tolerance.
    full,
};

/// n x p block of column vectors, stored row-major (row i holds the i-th
/// entry of every column contiguously).
class DenseBlock {
public:
    DenseBlock() = default;
    DenseBlock(Index rows, Index cols)
        : rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows * cols), 0.0)
    {}

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }

    double& operator()(Index i, Index j) { return data_[i * cols_ + j]; }
    double operator()(Index i, Index j) const { return data_[i * cols_ + j]; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    std::vector<double> column(Index j) const;
    void set_column(Index j, std::span<const double> values);

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<double> data_;
};

/**
 * Symmetric matrix with a strictly positive diagonal, dense or CSR.
 *
 * Construction enforces exact symmetry (one-triangle input is mirrored; full
 * input is accepted when max|a_ij - a_ji| <= 1e-12 max|A| and then replaced
 * by (A + A^T) / 2) and a present, positive diagonal. Positive definiteness
 * itself is only established by the exact baselines. Immutable afterwards.
 */
class SpdMatrix {
public:
    /// Relative asymmetry tolerated by the full-matrix constructors.
    static constexpr double symmetry_tolerance = 1e-12;

    static SpdMatrix dense(Index n, std::vector<double> row_major);
    static SpdMatrix from_triplets(Index n, std::vector<Triplet> triplets,
                                   TripletLayout layout);
    /// Full symmetric CSR (both triangles).
    static SpdMatrix from_csr(Index n, std::vector<Index> row_ptr,
                              std::vector<Index> col_idx,
                              std::vector<double> values);
    static SpdMatrix diagonal(std::span<const double> diag);
    static SpdMatrix identity(Index n);

    Index n() const noexcept { return n_; }
    Index nnz() const noexcept;
    bool is_sparse() const noexcept
    {
        return std::holds_alternative<CsrStorage>(storage_);
    }
    /// True when no off-diagonal entry is stored (or all stored ones are 0).
    bool is_diagonal() const noexcept { return diagonal_only_; }
    bool symmetry_checked() const noexcept { return true; }

    const DenseStorage* dense_storage() const noexcept
    {
        return std::get_if<DenseStorage>(&storage_);
    }
    const CsrStorage* csr_storage() const noexcept
    {
        return std::get_if<CsrStorage>(&storage_);
    }

    double at(Index i, Index j) const;
    std::vector<double> diagonal_values() const;
    /// Row-major dense copy.
    std::vector<double> to_dense() const;
    /// Same logical matrix in the other storage.
    SpdMatrix to_sparse() const;
    SpdMatrix to_dense_matrix() const;
    /// c * A, same storage.
    SpdMatrix scaled(double c) const;

    /// Calls f(i, j, a_ij) for stored entries, row by row, columns ascending.
    template <typename F>
    void for_each_entry(F&& f) const;

private:
    SpdMatrix(Index n, DenseStorage storage);
    SpdMatrix(Index n, CsrStorage storage);
    void check_diagonal() const;

    Index n_ = 0;
    std::variant<DenseStorage, CsrStorage> storage_;
    bool diagonal_only_ = false;
};

/// y = A x.
std::vector<double> matvec(const SpdMatrix& a, std::span<const double> x);
void matvec(const SpdMatrix& a, std::span<const double> x, std::span<double> y);

/// Y = A X in one pass over A. Column j of the result is bitwise equal to
/// matvec(A, column j of X).
DenseBlock mat_multivec(const SpdMatrix& a, const DenseBlock& x);
void mat_multivec(const SpdMatrix& a, const DenseBlock& x, DenseBlock& y);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

template <typename F>
void SpdMatrix::for_each_entry(F&& f) const
{
    if (const auto* d = dense_storage()) {
        for (Index i = 0; i < n_; ++i) {
            for (Index j = 0; j < n_; ++j) {
                f(i, j, d->values[i * n_ + j]);
            }
        }
    } else {
        const auto& s = *csr_storage();
        for (Index i = 0; i < n_; ++i) {
            for (Index k = s.row_ptr[i]; k < s.row_ptr[i + 1]; ++k) {
                f(i, s.col_idx[k], s.values[k]);
            }
        }
    }
}

}  // namespace logdet
