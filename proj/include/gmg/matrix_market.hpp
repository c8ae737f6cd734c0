// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#ifndef GMG_MATRIX_MARKET_HPP
#define GMG_MATRIX_MARKET_HPP

#include <iosfwd>
#include <string>

#include "gmg/sparse.hpp"

namespace gmg {

/// Parsed banner of a Matrix Market file. Only coordinate format with
/// real/integer/pattern field and general/symmetric symmetry is accepted;
/// everything else is rejected with a named parse error.
struct MatrixMarketHeader {
  enum class Format { coordinate, array };
  enum class Field { real, integer, pattern };
  enum class Symmetry { general, symmetric };

  Format format = Format::coordinate;
  Field field = Field::real;
  Symmetry symmetry = Symmetry::general;
};

/// Reads a Matrix Market coordinate file. Symmetric storage is expanded to
/// full storage, pattern entries get value 1, duplicates sum. Accepts both
/// LF and CRLF line endings. Parse errors carry the 1-based line number.
SparseMatrix read_matrix_market(std::istream& stream);
SparseMatrix read_matrix_market_file(const std::string& path);

/// Writes coordinate real format with 1-based indices and 17 significant
/// digits (lossless for 64-bit floats). With symmetric_hint the matrix must
/// be exactly symmetric and only the lower triangle is stored.
void write_matrix_market(const SparseMatrix& a, bool symmetric_hint,
                         std::ostream& stream);
void write_matrix_market_file(const SparseMatrix& a, bool symmetric_hint,
                              const std::string& path);

}  // namespace gmg

#endif  // GMG_MATRIX_MARKET_HPP
