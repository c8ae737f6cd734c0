// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#ifndef GMG_ILU_HPP
#define GMG_ILU_HPP

#include <optional>

#include "gmg/sparse.hpp"

namespace gmg {

enum class FactorKind { ilu0, ilut, exact };

/// Incomplete LU factors of a (possibly permuted) square matrix.
/// L is strictly lower triangular with an implicit unit diagonal,
/// U is upper triangular with a nonzero diagonal.
struct IncompleteFactorization {
  SparseMatrix lower;
  SparseMatrix upper;
  Permutation perm;
  FactorKind kind = FactorKind::ilu0;
  double drop_tol = 0.0;
  // Diagonal-shift fallback bookkeeping (ILUT only).
  int shift_attempts = 0;
  double applied_shift = 0.0;

  index_t dim() const { return lower.rows(); }
  index_t nnz() const { return lower.nnz() + upper.nnz(); }
};

/// ILU(0): elimination restricted to the pattern of the permuted matrix,
/// zero fill. The permuted matrix must have a nonzero diagonal; a pivot
/// smaller than 1e-14 times the row maximum raises a factorization error
/// naming the row.
IncompleteFactorization ilu0(const SparseMatrix& a, const Permutation& perm);

/// Threshold ILU: row-wise elimination that drops entries below
/// tol * ||A(i,:)||_2; the diagonal is never dropped. tol = 0 keeps all fill
/// (exact LU up to roundoff, kind reported as exact). Pivot breakdown
/// triggers a diagonal shift of 1e-8 * max|a_ij|, doubled up to 10 times and
/// recorded in the result; afterwards a factorization error is raised.
IncompleteFactorization ilut(const SparseMatrix& a, double tol);

/// Solves A t ~= z through the factors: permute, forward-substitute L,
/// back-substitute U, permute back.
DenseVector solve_factored(const IncompleteFactorization& f,
                           const DenseVector& z);

/// Cheap estimates of factorization quality. Fields are absent when their
/// preconditions do not hold (see factor_quality).
struct FactorQualityReport {
  std::optional<double> diag_ratio_bound;  // max diag / min diag of A
  std::optional<double> spd_estimate;      // ||L(N,:)||^2 / l_11^2, Cholesky form
  std::optional<double> unsym_estimate;    // max |u_ii| / min |u_ii|
  std::optional<double> relative_error;    // ||LU - L~U~||_F / ||LU||_F
};

/// diag_ratio_bound requires a fully positive diagonal; spd_estimate is
/// reported only for numerically symmetric A; relative_error factors the
/// permuted matrix exactly (tol = 0) and is refused beyond the dense oracle
/// cap on dim^2.
FactorQualityReport factor_quality(const SparseMatrix& a,
                                   const IncompleteFactorization& f,
                                   bool compute_error);

}  // namespace gmg

#endif  // GMG_ILU_HPP
