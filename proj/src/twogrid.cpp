// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#include "gmg/twogrid.hpp"

#include <chrono>
#include <cmath>

namespace gmg {

namespace {

index_t coarse_target(const TwoGridConfig& cfg, index_t n) {
  if (cfg.explicit_nc) {
    const index_t nc = *cfg.explicit_nc;
    if (nc < 1 || nc > n) {
      throw ContractError("build_two_grid: explicit_nc out of [1, N]");
    }
    return nc;
  }
  if (cfg.cf) {
    if (*cfg.cf <= 1.0) {
      throw ContractError("build_two_grid: coarsening factor must exceed 1");
    }
    if (!cfg.grid_dim) {
      throw ContractError(
          "build_two_grid: cf needs grid_dim metadata, use explicit_nc for "
          "general matrices");
    }
    const double target =
        std::round(static_cast<double>(n) / std::pow(*cfg.cf, *cfg.grid_dim));
    return std::clamp(static_cast<index_t>(target), index_t{1}, n);
  }
  throw ContractError("build_two_grid: either cf or explicit_nc is required");
}

}  // namespace

std::pair<TwoGridPreconditioner, TwoGridSetupReport> build_two_grid(
    SparseMatrix a, const TwoGridConfig& cfg) {
  if (!a.is_square()) {
    throw ContractError("build_two_grid: matrix must be square");
  }
  const auto start = std::chrono::steady_clock::now();
  const index_t n = a.rows();

  TwoGridPreconditioner p;
  p.fine_matrix = std::make_shared<const SparseMatrix>(std::move(a));
  const SparseMatrix& fine = *p.fine_matrix;

  p.aggregates = cfg.aggregation == AggregationScheme::matching
                     ? aggregate_by_matching(fine, coarse_target(cfg, n))
                     : aggregate_by_strength(fine, cfg.strength_beta);

  const SparseMatrix coarse = galerkin_coarse(fine, p.aggregates);
  try {
    const double tol =
        cfg.coarse_mode == CoarseMode::exact ? 0.0 : cfg.coarse_tol;
    p.coarse_factor = ilut(coarse, tol);
  } catch (const FactorError& e) {
    throw FactorError(std::string("coarse factorization: ") + e.what(),
                      e.row());
  }
  try {
    p.smoother = ilu0(fine, make_ordering(fine, cfg.smoother_ordering));
  } catch (const FactorError& e) {
    throw FactorError(std::string("smoother factorization: ") + e.what(),
                      e.row());
  }

  TwoGridSetupReport report;
  report.n_aggregates = p.aggregates.n_aggregates;
  report.nnz_smoother = p.smoother.nnz();
  report.nnz_coarse = p.coarse_factor.nnz();
  report.coarse_shift_attempts = p.coarse_factor.shift_attempts;
  report.setup_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return {std::move(p), report};
}

DenseVector apply_m_inverse(const TwoGridPreconditioner& p,
                            const DenseVector& h) {
  const DenseVector h_c = restrict(p.aggregates, h);
  const DenseVector g_c = solve_factored(p.coarse_factor, h_c);
  return prolongate(p.aggregates, g_c);
}

DenseVector apply_b_inverse(const TwoGridPreconditioner& p,
                            const DenseVector& z) {
  DenseVector t = solve_factored(p.smoother, z);
  const DenseVector f = apply_m_inverse(p, z);
  const DenseVector q = apply_m_inverse(p, spmv(*p.fine_matrix, t));
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += f[i] - q[i];
  return t;
}

}  // namespace gmg
