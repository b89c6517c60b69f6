// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include "exact.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/OrderingMethods>
#include <Eigen/Sparse>

#include "errors.hpp"

namespace logdet {

namespace {

[[noreturn]] void pivot_failure(Index index, double pivot)
{
    throw NotPositiveDefinite("Cholesky pivot " + std::to_string(index) +
                                  " is not positive (" +
                                  std::to_string(pivot) + ")",
                              index);
}

double row_dot(const double* x, const double* y, Index len)
{
    double acc = 0.0;
    for (Index k = 0; k < len; ++k) {
        acc += x[k] * y[k];
    }
    return acc;
}

/// Columns of the upper triangle of P A P^T, where order[k] is the original
/// index of pivot k. Column k holds (row, value) pairs with row <= k.
struct UpperColumns {
    std::vector<Index> ptr;
    std::vector<Index> row;
    std::vector<double> value;
};

UpperColumns permuted_upper(const CsrStorage& s, const std::vector<Index>& order)
{
    const auto n = static_cast<Index>(order.size());
    std::vector<Index> inverse(order.size());
    for (Index k = 0; k < n; ++k) {
        inverse[order[k]] = k;
    }
    UpperColumns u;
    u.ptr.assign(static_cast<std::size_t>(n + 1), 0);
    for (Index k = 0; k < n; ++k) {
        const Index r = order[k];
        for (Index p = s.row_ptr[r]; p < s.row_ptr[r + 1]; ++p) {
            const Index i = inverse[s.col_idx[p]];
            if (i <= k) {
                u.row.push_back(i);
                u.value.push_back(s.values[p]);
            }
        }
        u.ptr[k + 1] = static_cast<Index>(u.row.size());
    }
    return u;
}

std::vector<Index> elimination_tree(const UpperColumns& u, Index n)
{
    std::vector<Index> parent(static_cast<std::size_t>(n), -1);
    std::vector<Index> ancestor(static_cast<std::size_t>(n), -1);
    for (Index k = 0; k < n; ++k) {
        for (Index p = u.ptr[k]; p < u.ptr[k + 1]; ++p) {
            for (Index i = u.row[p]; i != -1 && i < k;) {
                const Index next = ancestor[i];
                ancestor[i] = k;
                if (next == -1) {
                    parent[i] = k;
                }
                i = next;
            }
        }
    }
    return parent;
}

/// Nonzero pattern of row k of L in topological order, written to
/// stack[top..n). Returns top.
Index row_pattern(const UpperColumns& u, Index k,
                  const std::vector<Index>& parent, std::vector<Index>& flag,
                  std::vector<Index>& stack)
{
    const auto n = static_cast<Index>(parent.size());
    Index top = n;
    flag[k] = k;
    for (Index p = u.ptr[k]; p < u.ptr[k + 1]; ++p) {
        Index i = u.row[p];
        if (i > k) {
            continue;
        }
        Index len = 0;
        for (; flag[i] != k; i = parent[i]) {
            stack[len++] = i;
            flag[i] = k;
        }
        while (len > 0) {
            stack[--top] = stack[--len];
        }
    }
    return top;
}

double sparse_cholesky_logdet(const SpdMatrix& a)
{
    const Index n = a.n();
    const auto& s = *a.csr_storage();

    Eigen::SparseMatrix<double, Eigen::ColMajor, int> pattern(
        static_cast<int>(n), static_cast<int>(n));
    {
        std::vector<Eigen::Triplet<double, int>> entries;
        entries.reserve(s.values.size());
        for (Index i = 0; i < n; ++i) {
            for (Index p = s.row_ptr[i]; p < s.row_ptr[i + 1]; ++p) {
                entries.emplace_back(static_cast<int>(i),
                                     static_cast<int>(s.col_idx[p]), 1.0);
            }
        }
        pattern.setFromTriplets(entries.begin(), entries.end());
    }
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> perm;
    Eigen::AMDOrdering<int> amd;
    amd(pattern, perm);
    std::vector<Index> order(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) {
        order[k] = perm.indices()[k];
    }

    const UpperColumns u = permuted_upper(s, order);
    const std::vector<Index> parent = elimination_tree(u, n);
    std::vector<Index> flag(static_cast<std::size_t>(n), -1);
    std::vector<Index> stack(static_cast<std::size_t>(n));

    // Symbolic pass: column counts of L (diagonal included).
    std::vector<Index> col_ptr(static_cast<std::size_t>(n + 1), 0);
    for (Index k = 0; k < n; ++k) {
        ++col_ptr[k + 1];
        for (Index top = row_pattern(u, k, parent, flag, stack); top < n;
             ++top) {
            ++col_ptr[stack[top] + 1];
        }
    }
    for (Index k = 0; k < n; ++k) {
        col_ptr[k + 1] += col_ptr[k];
    }

    std::vector<Index> l_row(static_cast<std::size_t>(col_ptr[n]));
    std::vector<double> l_val(static_cast<std::size_t>(col_ptr[n]));
    std::vector<Index> fill(col_ptr.begin(), col_ptr.end() - 1);
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    std::fill(flag.begin(), flag.end(), -1);

    double log_sum = 0.0;
    for (Index k = 0; k < n; ++k) {
        Index top = row_pattern(u, k, parent, flag, stack);
        for (Index p = u.ptr[k]; p < u.ptr[k + 1]; ++p) {
            x[u.row[p]] = u.value[p];
        }
        double d = x[k];
        x[k] = 0.0;
        for (; top < n; ++top) {
            const Index i = stack[top];
            const double lki = x[i] / l_val[col_ptr[i]];
            x[i] = 0.0;
            for (Index p = col_ptr[i] + 1; p < fill[i]; ++p) {
                x[l_row[p]] -= l_val[p] * lki;
            }
            d -= lki * lki;
            const Index slot = fill[i]++;
            l_row[slot] = k;
            l_val[slot] = lki;
        }
        if (!(d > 0.0)) {
            pivot_failure(order[k], d);
        }
        const Index slot = fill[k]++;
        l_row[slot] = k;
        l_val[slot] = std::sqrt(d);
        log_sum += std::log(l_val[slot]);
    }
    return 2.0 * log_sum;
}

}  // namespace

std::vector<double> dense_cholesky(Index n, std::vector<double> a)
{
    for (Index i = 0; i < n; ++i) {
        double* li = a.data() + i * n;
        for (Index j = 0; j < i; ++j) {
            const double* lj = a.data() + j * n;
            li[j] = (li[j] - row_dot(li, lj, j)) / lj[j];
        }
        const double d = li[i] - row_dot(li, li, i);
        if (!(d > 0.0)) {
            pivot_failure(i, d);
        }
        li[i] = std::sqrt(d);
        for (Index j = i + 1; j < n; ++j) {
            li[j] = 0.0;
        }
    }
    return a;
}

double exact_logdet_cholesky(const SpdMatrix& a)
{
    if (a.is_sparse()) {
        return sparse_cholesky_logdet(a);
    }
    const Index n = a.n();
    const auto l = dense_cholesky(n, a.dense_storage()->values);
    double log_sum = 0.0;
    for (Index i = 0; i < n; ++i) {
        log_sum += std::log(l[i * n + i]);
    }
    return 2.0 * log_sum;
}

std::vector<double> symmetric_eigenvalues(const SpdMatrix& a)
{
    const Index n = a.n();
    const auto dense = a.to_dense();
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        view(dense.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        Eigen::MatrixXd(view), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("symmetric eigensolver did not converge");
    }
    const auto& values = solver.eigenvalues();
    return {values.data(), values.data() + values.size()};
}

double exact_logdet_eig(const SpdMatrix& a)
{
    const auto lambda = symmetric_eigenvalues(a);
    double sum = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (!(lambda[i] > 0.0)) {
            throw NotPositiveDefinite("eigenvalue " + std::to_string(i) +
                                          " is not positive (" +
                                          std::to_string(lambda[i]) + ")",
                                      static_cast<Index>(i));
        }
        sum += std::log(lambda[i]);
    }
    return sum;
}

}  // namespace logdet
