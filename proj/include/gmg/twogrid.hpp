// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#ifndef GMG_TWOGRID_HPP
#define GMG_TWOGRID_HPP

#include <memory>
#include <optional>

#include "gmg/aggregation.hpp"
#include "gmg/ilu.hpp"
#include "gmg/ordering.hpp"
#include "gmg/sparse.hpp"

namespace gmg {

enum class AggregationScheme { matching, strength };
enum class CoarseMode { exact, ilut };

struct TwoGridConfig {
  AggregationScheme aggregation = AggregationScheme::matching;
  double strength_beta = 0.25;       // strength scheme only
  std::optional<double> cf;          // per-dimension fine/coarse ratio, > 1
  std::optional<index_t> explicit_nc;
  std::optional<int> grid_dim;       // required to convert cf into a target
  OrderingKind smoother_ordering = OrderingKind::natural;
  CoarseMode coarse_mode = CoarseMode::ilut;
  double coarse_tol = 1e-4;
};

/// Two-grid preconditioner without post-smoothing,
///   B^{-1} = S^{-1} + M^{-1} - M^{-1} A S^{-1},
/// with ILU(0) smoother S and interpolated coarse correction
/// M^{-1} = P Ac^{-1} P^T (exact or ILUT coarse factorization).
/// Plain data so tests can swap individual pieces.
struct TwoGridPreconditioner {
  std::shared_ptr<const SparseMatrix> fine_matrix;
  IncompleteFactorization smoother;
  AggregateMap aggregates;
  IncompleteFactorization coarse_factor;
};

struct TwoGridSetupReport {
  index_t n_aggregates = 0;
  index_t nnz_smoother = 0;
  index_t nnz_coarse = 0;
  int coarse_shift_attempts = 0;
  double setup_seconds = 0.0;
};

/// Assembles aggregates, the Galerkin coarse matrix with its factorization,
/// and the ILU(0) smoother. The matrix is taken by value and retained inside
/// the preconditioner. Factorization breakdowns propagate with a stage label.
std::pair<TwoGridPreconditioner, TwoGridSetupReport> build_two_grid(
    SparseMatrix a, const TwoGridConfig& cfg);

/// Coarse grid correction g = P Ac^{-1} P^T h.
DenseVector apply_m_inverse(const TwoGridPreconditioner& p,
                            const DenseVector& h);

/// Full preconditioner application q = B^{-1} z.
DenseVector apply_b_inverse(const TwoGridPreconditioner& p,
                            const DenseVector& z);

}  // namespace gmg

#endif  // GMG_TWOGRID_HPP
