// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#ifndef GMG_SPARSE_HPP
#define GMG_SPARSE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "gmg/error.hpp"

namespace gmg {

using index_t = std::int64_t;
using DenseVector = std::vector<double>;

struct Triplet {
  index_t row = 0;
  index_t col = 0;
  double value = 0.0;
};

/// Permutation of [0, n): forward maps old index to new index,
/// inverse maps back. The two arrays are mutually inverse bijections.
struct Permutation {
  std::vector<index_t> forward;
  std::vector<index_t> inverse;

  static Permutation identity(index_t n);
  /// Builds the inverse and validates that forward is a bijection on [0, n).
  static Permutation from_forward(std::vector<index_t> forward);

  index_t size() const { return static_cast<index_t>(forward.size()); }
};

/// Compressed sparse row matrix, the single storage format of the library.
/// Within each row column indices are strictly increasing. Explicitly stored
/// zeros are permitted; drop_explicit_zeros() removes them as a separate pass.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  /// Takes ownership of raw CSR arrays and validates every invariant.
  SparseMatrix(index_t nrows, index_t ncols, std::vector<index_t> row_offsets,
               std::vector<index_t> col_indices, std::vector<double> values);

  /// Builds CSR from an unordered triplet list. Duplicate (row, col) pairs
  /// merge by summation in a canonical order, so shuffling the input yields
  /// bitwise identical arrays.
  static SparseMatrix from_triplets(index_t nrows, index_t ncols,
                                    std::vector<Triplet> triplets);
  static SparseMatrix identity(index_t n);

  index_t rows() const { return nrows_; }
  index_t cols() const { return ncols_; }
  index_t nnz() const { return static_cast<index_t>(values_.size()); }
  bool is_square() const { return nrows_ == ncols_; }

  std::span<const index_t> row_offsets() const { return row_offsets_; }
  std::span<const index_t> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }

  std::span<const index_t> row_cols(index_t i) const {
    return {col_indices_.data() + row_offsets_[i],
            col_indices_.data() + row_offsets_[i + 1]};
  }
  std::span<const double> row_values(index_t i) const {
    return {values_.data() + row_offsets_[i],
            values_.data() + row_offsets_[i + 1]};
  }

  /// Stored value at (i, j), or 0 when the entry is not stored.
  double coeff(index_t i, index_t j) const;

  /// Copy without explicitly stored zeros.
  SparseMatrix drop_explicit_zeros() const;

  bool operator==(const SparseMatrix& other) const = default;

 private:
  index_t nrows_ = 0;
  index_t ncols_ = 0;
  std::vector<index_t> row_offsets_{0};
  std::vector<index_t> col_indices_;
  std::vector<double> values_;
};

/// y = A x.
DenseVector spmv(const SparseMatrix& a, const DenseVector& x);

/// Transpose in canonical sorted CSR form.
SparseMatrix transpose(const SparseMatrix& a);

/// B with b(p(i), p(j)) = a(i, j); A must be square.
SparseMatrix permute_symmetric(const SparseMatrix& a, const Permutation& p);

/// Sparse-sparse product A B in canonical CSR form.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

constexpr index_t kDenseOracleCap = 4'000'000;

/// Row-major dense mirror, zeros where nothing is stored. Refuses matrices
/// with more than `cap` entries; meant for test oracles and small operands.
std::vector<double> to_dense(const SparseMatrix& a,
                             index_t cap = kDenseOracleCap);

}  // namespace gmg

#endif  // GMG_SPARSE_HPP
