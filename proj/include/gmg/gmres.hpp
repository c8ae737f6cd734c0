// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#ifndef GMG_GMRES_HPP
#define GMG_GMRES_HPP

#include <functional>

#include "gmg/sparse.hpp"

namespace gmg {

struct SolverConfig {
  int restart_m = 30;
  int max_total_iters = 600;
  double rel_tol = 1e-7;
};

enum class SolveStatus { converged, max_iters, breakdown };

struct SolveReport {
  SolveStatus status = SolveStatus::breakdown;
  int iterations = 0;  // preconditioned matvec count across all cycles
  std::vector<double> residual_history;  // true relative residuals
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
};

/// Left preconditioner application contract: z -> B^{-1} z.
using PreconditionerFn = std::function<DenseVector(const DenseVector&)>;

/// Identity preconditioner for unpreconditioned runs.
PreconditionerFn no_preconditioner();

/// Left-preconditioned restarted GMRES with modified Gram-Schmidt and
/// Givens-rotation least squares. The inner test watches the preconditioned
/// residual estimate; convergence is declared only on the true relative
/// residual ||b - A x|| / ||b||. Returns the best iterate seen.
std::pair<DenseVector, SolveReport> gmres(const SparseMatrix& a,
                                          const DenseVector& b,
                                          const PreconditionerFn& precond,
                                          const DenseVector& x0,
                                          const SolverConfig& cfg);

}  // namespace gmg

#endif  // GMG_GMRES_HPP
