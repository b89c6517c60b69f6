// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "errors.hpp"
#include "generators.hpp"
#include "matrix.hpp"
#include "oracles.hpp"

using namespace logdet;

namespace {

double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        scale = std::max(scale, std::abs(b[i]));
        diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    return diff / scale;
}

}  // namespace

TEST_CASE("matvec on identity and diagonal")
{
    CHECK(matvec(SpdMatrix::identity(3), std::vector<double>{1, 2, 3}) ==
          std::vector<double>{1, 2, 3});
    CHECK(matvec(SpdMatrix::diagonal(std::vector<double>{2, 3}),
                 std::vector<double>{1, 1}) == std::vector<double>{2, 3});
    CHECK(matvec(SpdMatrix::dense(2, {2, 0, 0, 3}),
                 std::vector<double>{1, 1}) == std::vector<double>{2, 3});
}

TEST_CASE("matvec matches the triple-loop reference")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto raw = oracle::random_spd(5, seed);
        const auto x = oracle::random_vector(5, seed + 100);
        const auto a = SpdMatrix::dense(5, raw);
        const auto expected = oracle::dense_multiply(raw, x);
        CHECK(max_rel_diff(matvec(a, x), expected) <= 1e-12);
        CHECK(max_rel_diff(matvec(a.to_sparse(), x), expected) <= 1e-12);
    }
}

TEST_CASE("matvec rejects a dimension mismatch")
{
    CHECK_THROWS_AS(matvec(SpdMatrix::identity(3), std::vector<double>{1, 2}),
                    ContractViolation);
    CHECK_THROWS_AS(mat_multivec(SpdMatrix::identity(3), DenseBlock(4, 2)),
                    ContractViolation);
}

TEST_CASE("mat_multivec is column-wise matvec, bitwise")
{
    const auto x4 = [] {
        DenseBlock b(4, 2);
        for (Index i = 0; i < 4; ++i) {
            b(i, 0) = static_cast<double>(i) + 0.5;
            b(i, 1) = -static_cast<double>(i);
        }
        return b;
    }();
    const auto y4 = mat_multivec(SpdMatrix::identity(4), x4);
    CHECK(std::equal(y4.data().begin(), y4.data().end(), x4.data().begin()));

    for (const bool sparse : {false, true}) {
        auto a = SpdMatrix::dense(6, oracle::random_spd(6, 3));
        if (sparse) {
            a = a.to_sparse();
        }
        DenseBlock x(6, 3);
        for (Index j = 0; j < 3; ++j) {
            x.set_column(j, oracle::random_vector(6, 50 + j));
        }
        const auto y = mat_multivec(a, x);
        for (Index j = 0; j < 3; ++j) {
            CHECK(y.column(j) == matvec(a, x.column(j)));
        }
        DenseBlock single(6, 1);
        single.set_column(0, x.column(1));
        CHECK(mat_multivec(a, single).column(0) == matvec(a, x.column(1)));
    }
}

TEST_CASE("kernel symmetry and storage equivalence")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto dense = rand_spd_dense_dd(30, seed);
        const auto sparse = rand_spd_sparse(30, 200, seed);
        for (const auto* a : {&dense, &sparse}) {
            const auto x = oracle::random_vector(30, seed * 2);
            const auto y = oracle::random_vector(30, seed * 2 + 1);
            const double xay = dot(x, matvec(*a, y));
            const double yax = dot(y, matvec(*a, x));
            CHECK(std::abs(xay - yax) <= 1e-10 * std::abs(xay));
        }
        const auto x = oracle::random_vector(30, seed);
        CHECK(max_rel_diff(matvec(dense.to_sparse(), x), matvec(dense, x)) <=
              1e-12);
        CHECK(max_rel_diff(matvec(sparse.to_dense_matrix(), x),
                           matvec(sparse, x)) <= 1e-12);
    }
}

TEST_CASE("construction symmetrizes within tolerance and rejects asymmetry")
{
    const auto a = SpdMatrix::dense(2, {2.0, 1.0, 1.0 + 1e-15, 2.0});
    CHECK(a.at(0, 1) == a.at(1, 0));
    CHECK_THROWS_AS(SpdMatrix::dense(2, {2.0, 1.0, 1.1, 2.0}),
                    ContractViolation);

    const auto lower = SpdMatrix::from_triplets(
        2, {{0, 0, 2.0}, {1, 0, 1.0}, {1, 1, 2.0}},
        TripletLayout::one_triangle);
    CHECK(lower.at(0, 1) == 1.0);
    CHECK(lower.nnz() == 4);
    CHECK_THROWS_AS(
        SpdMatrix::from_triplets(2, {{0, 0, 2.0}, {1, 0, 1.0}, {1, 1, 2.0}},
                                 TripletLayout::full),
        ContractViolation);
}

TEST_CASE("diagonal must be present and positive")
{
    CHECK_THROWS_AS(SpdMatrix::dense(2, {0.0, 0.0, 0.0, 1.0}),
                    NotPositiveDefinite);
    CHECK_THROWS_AS(SpdMatrix::from_triplets(2, {{0, 0, 1.0}},
                                             TripletLayout::one_triangle),
                    NotPositiveDefinite);
    CHECK_THROWS_AS(SpdMatrix::diagonal(std::vector<double>{1.0, -2.0}),
                    NotPositiveDefinite);
}

TEST_CASE("CSR invariants are enforced")
{
    // Unsorted columns in row 0.
    CHECK_THROWS_AS(SpdMatrix::from_csr(2, {0, 2, 4}, {1, 0, 0, 1},
                                        {1.0, 2.0, 1.0, 2.0}),
                    ContractViolation);
    // Decreasing row pointers.
    CHECK_THROWS_AS(
        SpdMatrix::from_csr(2, {0, 3, 2}, {0, 1, 1}, {2.0, 1.0, 2.0}),
        ContractViolation);
    const auto ok = SpdMatrix::from_csr(2, {0, 2, 4}, {0, 1, 0, 1},
                                        {2.0, 1.0, 1.0, 2.0});
    const auto& s = *ok.csr_storage();
    for (Index i = 0; i < ok.n(); ++i) {
        CHECK(s.row_ptr[i] <= s.row_ptr[i + 1]);
        for (Index k = s.row_ptr[i] + 1; k < s.row_ptr[i + 1]; ++k) {
            CHECK(s.col_idx[k - 1] < s.col_idx[k]);
        }
    }
    CHECK(ok.is_sparse());
    CHECK_FALSE(ok.is_diagonal());
    CHECK(SpdMatrix::identity(3).is_diagonal());
}
