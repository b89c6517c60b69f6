// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "matrix.hpp"

namespace logdet {

/// 2 * sum(ln L_kk) for A = L L^T. Dense storage uses a row-oriented dense
/// factorization, CSR an up-looking sparse factorization after an AMD
/// ordering. A pivot <= 0 throws NotPositiveDefinite naming the pivot's
/// original row index (0-based).
double exact_logdet_cholesky(const SpdMatrix& a);

/// Sum of ln(lambda_i) from a symmetric eigendecomposition of the dense form.
double exact_logdet_eig(const SpdMatrix& a);

/// Ascending eigenvalues of the dense form.
std::vector<double> symmetric_eigenvalues(const SpdMatrix& a);

/// Lower Cholesky factor of a dense matrix, row-major; throws like
/// exact_logdet_cholesky.
std::vector<double> dense_cholesky(Index n, std::vector<double> a);

}  // namespace logdet
