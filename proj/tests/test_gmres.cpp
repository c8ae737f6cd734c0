// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gmg/gmres.hpp"
#include "gmg/problem.hpp"
#include "gmg/twogrid.hpp"
#include "oracle.hpp"

using gmg::DenseVector;
using gmg::index_t;
using gmg::SolverConfig;
using gmg::SolveStatus;
using gmg::SparseMatrix;

namespace {

double true_relres(const SparseMatrix& a, const DenseVector& b,
                   const DenseVector& x) {
  const DenseVector ax = spmv(a, x);
  double rr = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    rr += (b[i] - ax[i]) * (b[i] - ax[i]);
    bb += b[i] * b[i];
  }
  return std::sqrt(rr) / std::sqrt(bb);
}

gmg::GridSpec dc1_2d(index_t n) {
  gmg::GridSpec spec;
  spec.dim = 2;
  spec.n = n;
  spec.kappa_profile = gmg::KappaProfile::jump_cells;
  spec.jump_amplitude = 1e3;
  return spec;
}

}  // namespace

TEST_CASE("identity system converges in one iteration") {
  const SparseMatrix a = SparseMatrix::identity(5);
  const DenseVector b{1.0, -2.0, 3.0, 0.5, 0.0};
  const auto [x, report] =
      gmres(a, b, gmg::no_preconditioner(), DenseVector(5, 0.0), {});
  CHECK(report.status == SolveStatus::converged);
  CHECK(report.iterations == 1);
  for (index_t i = 0; i < 5; ++i) {
    CHECK(x[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}

TEST_CASE("a perfect preconditioner converges in one iteration") {
  std::mt19937_64 rng(103);
  const SparseMatrix a = oracle::random_spd_sparse(rng, 8);
  const oracle::DenseMatrix a_inv =
      oracle::inverse(oracle::DenseMatrix::from_sparse(a));
  const gmg::PreconditionerFn precond = [&a_inv](const DenseVector& z) {
    return oracle::matvec(a_inv, z);
  };
  const DenseVector b = oracle::random_vector(rng, 8);
  const auto [x, report] = gmres(a, b, precond, DenseVector(8, 0.0), {});
  CHECK(report.status == SolveStatus::converged);
  CHECK(report.iterations == 1);
}

TEST_CASE("unpreconditioned solve of the 1D Poisson system") {
  const SparseMatrix a = oracle::tridiag(100);
  const DenseVector b = spmv(a, DenseVector(100, 1.0));
  SolverConfig cfg;
  cfg.max_total_iters = 5000;
  // cond(A) ~ 4e3 maps residual 1e-10 to solution error well under 1e-6.
  cfg.rel_tol = 1e-10;
  const auto [x, report] =
      gmres(a, b, gmg::no_preconditioner(), DenseVector(100, 0.0), cfg);
  CHECK(report.status == SolveStatus::converged);
  const std::vector<double> x_ref = lu_solve(
      oracle::lu_factor(oracle::DenseMatrix::from_sparse(a)), b);
  for (index_t i = 0; i < 100; ++i) {
    CHECK(std::abs(x[i] - 1.0) <= 1e-6);
    CHECK(std::abs(x[i] - x_ref[i]) <= 1e-6);
  }
}

TEST_CASE("zero right-hand side returns zero immediately") {
  const SparseMatrix a = oracle::tridiag(4);
  const auto [x, report] =
      gmres(a, DenseVector(4, 0.0), gmg::no_preconditioner(),
            DenseVector(4, 0.0), {});
  CHECK(report.status == SolveStatus::converged);
  CHECK(report.iterations == 0);
  CHECK(x == DenseVector(4, 0.0));
  CHECK_FALSE(report.residual_history.empty());
}

TEST_CASE("an exact initial guess converges without iterating") {
  const SparseMatrix a = oracle::tridiag(4);
  const DenseVector ones(4, 1.0);
  const DenseVector b = spmv(a, ones);
  const auto [x, report] =
      gmres(a, b, gmg::no_preconditioner(), ones, {});
  CHECK(report.status == SolveStatus::converged);
  CHECK(report.iterations == 0);
}

TEST_CASE("reported convergence is confirmed by the true residual") {
  std::mt19937_64 rng(107);
  const SparseMatrix a = oracle::random_spd_sparse(rng, 30);
  const DenseVector b = oracle::random_vector(rng, 30);
  SolverConfig cfg;
  const auto [x, report] =
      gmres(a, b, gmg::no_preconditioner(), DenseVector(30, 0.0), cfg);
  REQUIRE(report.status == SolveStatus::converged);
  CHECK(true_relres(a, b, x) < cfg.rel_tol);
  CHECK(report.residual_history.back() < cfg.rel_tol);
}

TEST_CASE("full-space cycle reaches machine precision on SPD systems") {
  // Restart length >= n: loss of basis orthogonality would show up here.
  std::mt19937_64 rng(109);
  const SparseMatrix a = oracle::random_spd_sparse(rng, 24);
  const DenseVector b = oracle::random_vector(rng, 24);
  SolverConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.restart_m = 30;
  const auto [x, report] =
      gmres(a, b, gmg::no_preconditioner(), DenseVector(24, 0.0), cfg);
  CHECK(report.status == SolveStatus::converged);
  CHECK(report.iterations <= 24);
  const std::vector<double> x_ref = lu_solve(
      oracle::lu_factor(oracle::DenseMatrix::from_sparse(a)), b);
  for (index_t i = 0; i < 24; ++i) {
    CHECK(x[i] == doctest::Approx(x_ref[i]).epsilon(1e-8));
  }
}

TEST_CASE("residual history is monotone within an unpreconditioned cycle") {
  std::mt19937_64 rng(113);
  const SparseMatrix a = oracle::random_spd_sparse(rng, 20);
  const DenseVector b = oracle::random_vector(rng, 20);
  SolverConfig cfg;
  cfg.restart_m = 20;
  const auto [x, report] =
      gmres(a, b, gmg::no_preconditioner(), DenseVector(20, 0.0), cfg);
  for (std::size_t k = 1; k < report.residual_history.size(); ++k) {
    CHECK(report.residual_history[k] <=
          report.residual_history[k - 1] * (1.0 + 1e-12));
  }
}

TEST_CASE("iteration reports are deterministic") {
  const SparseMatrix a = discretize(dc1_2d(12)).matrix;
  const DenseVector b = spmv(a, DenseVector(144, 1.0));
  SolverConfig cfg;
  cfg.max_total_iters = 2000;
  const auto [x1, r1] =
      gmres(a, b, gmg::no_preconditioner(), DenseVector(144, 0.0), cfg);
  const auto [x2, r2] =
      gmres(a, b, gmg::no_preconditioner(), DenseVector(144, 0.0), cfg);
  CHECK(r1.iterations == r2.iterations);
  CHECK(r1.residual_history == r2.residual_history);
  CHECK(x1 == x2);
}

TEST_CASE("iteration cap reports max_iters and returns the best iterate") {
  const SparseMatrix a = oracle::tridiag(100);
  const DenseVector b = spmv(a, DenseVector(100, 1.0));
  SolverConfig cfg;
  cfg.max_total_iters = 3;
  const auto [x, report] =
      gmres(a, b, gmg::no_preconditioner(), DenseVector(100, 0.0), cfg);
  CHECK(report.status == SolveStatus::max_iters);
  CHECK(report.iterations == 3);
  CHECK(report.residual_history.size() == 4);  // initial + one per step
  CHECK(true_relres(a, b, x) ==
        doctest::Approx(report.residual_history.back()).epsilon(1e-10));
}

TEST_CASE("non-finite values surface as breakdown") {
  const SparseMatrix a = SparseMatrix::from_triplets(
      1, 1, {{0, 0, std::numeric_limits<double>::quiet_NaN()}});
  const auto [x, report] =
      gmres(a, {1.0}, gmg::no_preconditioner(), {0.0}, {});
  CHECK(report.status == SolveStatus::breakdown);
}

TEST_CASE("invalid configurations are rejected") {
  const SparseMatrix a = oracle::tridiag(3);
  const DenseVector b{1.0, 0.0, 1.0};
  SolverConfig cfg;
  cfg.restart_m = 0;
  CHECK_THROWS_AS(gmres(a, b, gmg::no_preconditioner(), {0.0, 0.0, 0.0}, cfg),
                  gmg::ContractError);
  CHECK_THROWS_AS(
      gmres(a, {1.0}, gmg::no_preconditioner(), {0.0, 0.0, 0.0}, {}),
      gmg::ContractError);
}

TEST_CASE("two-grid preconditioned counts are stable across a refinement") {
  // Desk-scale analogue of the mesh-independence observation; the full
  // version lives in the acceptance suite.
  int its[2];
  int idx = 0;
  for (index_t n : {16, 32}) {
    const gmg::ProblemInstance problem = discretize(dc1_2d(n));
    gmg::TwoGridConfig cfg;
    cfg.cf = 3.0;
    cfg.grid_dim = 2;
    cfg.coarse_tol = 1e-4;
    const auto [p, setup] = build_two_grid(problem.matrix, cfg);
    const gmg::PreconditionerFn precond = [&p](const DenseVector& z) {
      return apply_b_inverse(p, z);
    };
    const auto [x, report] =
        gmres(problem.matrix, problem.rhs, precond,
              DenseVector(problem.matrix.rows(), 0.0), {});
    REQUIRE(report.status == SolveStatus::converged);
    its[idx++] = report.iterations;
  }
  CHECK(std::max(its[0], its[1]) <= 2 * std::min(its[0], its[1]));
}
