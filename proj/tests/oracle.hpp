// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0
//
// Dense reference implementations used as independent oracles by the test
// suites. Everything here is O(n^2)-O(n^3) and meant for small instances.

#ifndef GMG_TESTS_ORACLE_HPP
#define GMG_TESTS_ORACLE_HPP

#include <random>
#include <utility>
#include <vector>

#include "gmg/aggregation.hpp"
#include "gmg/sparse.hpp"

namespace oracle {

using gmg::index_t;

struct DenseMatrix {
  index_t rows = 0;
  index_t cols = 0;
  std::vector<double> data;  // row major

  DenseMatrix() = default;
  DenseMatrix(index_t r, index_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(index_t i, index_t j) { return data[i * cols + j]; }
  double at(index_t i, index_t j) const { return data[i * cols + j]; }

  static DenseMatrix identity(index_t n);
  static DenseMatrix from_sparse(const gmg::SparseMatrix& a);
};

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& x);
DenseMatrix transpose(const DenseMatrix& a);
// a + alpha * b
DenseMatrix add_scaled(const DenseMatrix& a, const DenseMatrix& b,
                       double alpha);
double frobenius(const DenseMatrix& a);
double max_abs(const DenseMatrix& a);

// LU with partial pivoting.
struct DenseLU {
  DenseMatrix lu;
  std::vector<index_t> pivots;
};
DenseLU lu_factor(DenseMatrix a);
std::vector<double> lu_solve(const DenseLU& f, std::vector<double> b);
DenseMatrix inverse(const DenseMatrix& a);

// Gaussian elimination without pivoting; returns unit-lower L and upper U.
std::pair<DenseMatrix, DenseMatrix> lu_no_pivot(DenseMatrix a);

// Lower Cholesky factor G with A = G G^T; throws on a nonpositive pivot.
DenseMatrix cholesky(const DenseMatrix& a);

// Cyclic Jacobi; eigenvalues sorted ascending. Input must be symmetric.
std::vector<double> sym_eigenvalues(DenseMatrix a);

// Eigenvalues of S^{-1} A for symmetric A and SPD S, via the congruence
// G^{-1} A G^{-T} with G = cholesky(S).
std::vector<double> generalized_sym_eigenvalues(const DenseMatrix& a,
                                                const DenseMatrix& s);

// lambda_max / lambda_min through Jacobi; input must be SPD.
double spd_condition_number(const DenseMatrix& a);

// The boolean interpolation operator P as a dense N x Nc matrix.
DenseMatrix interpolation_matrix(const gmg::AggregateMap& m);

// Deterministic random fixtures.
gmg::SparseMatrix random_sparse(std::mt19937_64& rng, index_t rows,
                                index_t cols, double density);
gmg::SparseMatrix random_spd_sparse(std::mt19937_64& rng, index_t n);
std::vector<index_t> random_partition(std::mt19937_64& rng, index_t n,
                                      index_t n_aggregates);
std::vector<double> random_vector(std::mt19937_64& rng, index_t n);

// Convenience: tridiag(-1, 2, -1) of size n.
gmg::SparseMatrix tridiag(index_t n);

}  // namespace oracle

#endif  // GMG_TESTS_ORACLE_HPP
