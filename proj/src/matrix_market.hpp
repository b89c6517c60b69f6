// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "matrix.hpp"

namespace logdet {

/**
 * Reads a Matrix Market "matrix {coordinate|array} {real|integer}
 * symmetric" file. Header tokens are case-insensitive. Symmetric files store
 * one triangle; the loader mirrors it. Coordinate input yields CSR storage,
 * array input dense storage.
 *
 * Throws FormatError (with the 1-based line number) on malformed input and
 * IoError when the file cannot be opened.
 */
SpdMatrix load_matrix_market(const std::string& path);
SpdMatrix read_matrix_market(std::istream& in);

/// Writes coordinate real symmetric, lower triangle, 1-based, %.17g values.
void save_matrix_market(const SpdMatrix& a, const std::string& path);
void write_matrix_market(const SpdMatrix& a, std::ostream& out);

}  // namespace logdet
