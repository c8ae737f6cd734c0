// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <random>

#include "gmg/sparse.hpp"
#include "oracle.hpp"

using gmg::DenseVector;
using gmg::index_t;
using gmg::SparseMatrix;
using gmg::Triplet;

TEST_CASE("spmv identity and zero") {
  const SparseMatrix eye = SparseMatrix::identity(3);
  CHECK(spmv(eye, {1.0, 2.0, 3.0}) == DenseVector{1.0, 2.0, 3.0});

  const SparseMatrix zero = SparseMatrix::from_triplets(2, 2, {});
  CHECK(spmv(zero, {5.0, 7.0}) == DenseVector{0.0, 0.0});
}

TEST_CASE("spmv tridiagonal") {
  const SparseMatrix a = oracle::tridiag(3);
  CHECK(spmv(a, {1.0, 1.0, 1.0}) == DenseVector{1.0, 0.0, 1.0});
}

TEST_CASE("spmv rejects dimension mismatch") {
  const SparseMatrix eye = SparseMatrix::identity(3);
  CHECK_THROWS_AS(spmv(eye, {1.0, 2.0}), gmg::ContractError);
}

TEST_CASE("spmv agrees with the dense oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const SparseMatrix a = oracle::random_sparse(rng, 50, 50, 0.15);
    const std::vector<double> x = oracle::random_vector(rng, 50);
    const DenseVector y = spmv(a, x);
    const std::vector<double> y_ref =
        oracle::matvec(oracle::DenseMatrix::from_sparse(a), x);
    double err = 0.0, scale = 0.0;
    for (index_t i = 0; i < 50; ++i) {
      err = std::max(err, std::abs(y[i] - y_ref[i]));
      scale = std::max(scale, std::abs(y_ref[i]));
    }
    CHECK(err <= 1e-13 * std::max(scale, 1.0));
  }
}

TEST_CASE("transpose basics") {
  const SparseMatrix eye = SparseMatrix::identity(3);
  CHECK(transpose(eye) == eye);

  const SparseMatrix row = SparseMatrix::from_triplets(
      1, 3, {{0, 0, 1.0}, {0, 1, 2.0}, {0, 2, 3.0}});
  const SparseMatrix col = transpose(row);
  CHECK(col.rows() == 3);
  CHECK(col.cols() == 1);
  CHECK(col.coeff(0, 0) == 1.0);
  CHECK(col.coeff(1, 0) == 2.0);
  CHECK(col.coeff(2, 0) == 3.0);
}

TEST_CASE("transpose is an involution with identical storage") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    const SparseMatrix a = oracle::random_sparse(rng, 5, 5, 0.5);
    CHECK(transpose(transpose(a)) == a);
  }
}

TEST_CASE("permute_symmetric identity and reversal") {
  const SparseMatrix d = SparseMatrix::from_triplets(
      3, 3, {{0, 0, 1.0}, {1, 1, 2.0}, {2, 2, 3.0}});
  CHECK(permute_symmetric(d, gmg::Permutation::identity(3)) == d);

  const gmg::Permutation reversal = gmg::Permutation::from_forward({2, 1, 0});
  const SparseMatrix r = permute_symmetric(d, reversal);
  CHECK(r.coeff(0, 0) == 3.0);
  CHECK(r.coeff(1, 1) == 2.0);
  CHECK(r.coeff(2, 2) == 1.0);
}

TEST_CASE("permute_symmetric matches dense conjugation") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 8; ++trial) {
    const SparseMatrix a = oracle::random_sparse(rng, 8, 8, 0.3);
    std::vector<index_t> fwd(8);
    std::iota(fwd.begin(), fwd.end(), index_t{0});
    std::shuffle(fwd.begin(), fwd.end(), rng);
    const gmg::Permutation p = gmg::Permutation::from_forward(fwd);

    const SparseMatrix b = permute_symmetric(a, p);
    const oracle::DenseMatrix ad = oracle::DenseMatrix::from_sparse(a);
    const oracle::DenseMatrix bd = oracle::DenseMatrix::from_sparse(b);
    for (index_t i = 0; i < 8; ++i) {
      for (index_t j = 0; j < 8; ++j) {
        CHECK(bd.at(p.forward[i], p.forward[j]) == ad.at(i, j));
      }
    }
  }
}

TEST_CASE("permute_symmetric requires a square matrix") {
  const SparseMatrix rect = SparseMatrix::from_triplets(2, 3, {{0, 0, 1.0}});
  CHECK_THROWS_AS(permute_symmetric(rect, gmg::Permutation::identity(2)),
                  gmg::ContractError);
}

TEST_CASE("to_dense") {
  CHECK(to_dense(SparseMatrix::identity(2)) ==
        std::vector<double>{1.0, 0.0, 0.0, 1.0});
  CHECK(to_dense(SparseMatrix::from_triplets(2, 2, {})) ==
        std::vector<double>{0.0, 0.0, 0.0, 0.0});
  CHECK(to_dense(SparseMatrix::from_triplets(2, 2,
                                             {{0, 1, 3.0}, {1, 0, -2.0}})) ==
        std::vector<double>{0.0, 3.0, -2.0, 0.0});
}

TEST_CASE("to_dense refuses matrices over the cap") {
  const SparseMatrix big = SparseMatrix::from_triplets(3000, 3000, {});
  CHECK_THROWS_AS(to_dense(big), gmg::ContractError);
}

TEST_CASE("triplet construction is order independent") {
  std::mt19937_64 rng(17);
  std::vector<Triplet> triplets;
  std::uniform_int_distribution<index_t> idx(0, 9);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (int k = 0; k < 60; ++k) {
    triplets.push_back({idx(rng), idx(rng), val(rng)});  // duplicates likely
  }
  const SparseMatrix reference = SparseMatrix::from_triplets(10, 10, triplets);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(triplets.begin(), triplets.end(), rng);
    CHECK(SparseMatrix::from_triplets(10, 10, triplets) == reference);
  }
}

TEST_CASE("duplicate triplets merge by summation") {
  const SparseMatrix a =
      SparseMatrix::from_triplets(1, 1, {{0, 0, 1.0}, {0, 0, 2.0}});
  CHECK(a.nnz() == 1);
  CHECK(a.coeff(0, 0) == 3.0);
}

TEST_CASE("drop_explicit_zeros") {
  const SparseMatrix a =
      SparseMatrix::from_triplets(2, 2, {{0, 0, 0.0}, {0, 1, 2.0}});
  CHECK(a.nnz() == 2);
  const SparseMatrix b = a.drop_explicit_zeros();
  CHECK(b.nnz() == 1);
  CHECK(b.coeff(0, 1) == 2.0);
}

TEST_CASE("multiply agrees with the dense oracle") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 6; ++trial) {
    const SparseMatrix a = oracle::random_sparse(rng, 6, 7, 0.4);
    const SparseMatrix b = oracle::random_sparse(rng, 7, 5, 0.4);
    const oracle::DenseMatrix ref = oracle::matmul(
        oracle::DenseMatrix::from_sparse(a), oracle::DenseMatrix::from_sparse(b));
    const oracle::DenseMatrix got =
        oracle::DenseMatrix::from_sparse(multiply(a, b));
    CHECK(oracle::frobenius(oracle::add_scaled(got, ref, -1.0)) <=
          1e-13 * std::max(1.0, oracle::frobenius(ref)));
  }
}

TEST_CASE("permutation validation") {
  CHECK_THROWS_AS(gmg::Permutation::from_forward({0, 0, 1}),
                  gmg::ContractError);
  CHECK_THROWS_AS(gmg::Permutation::from_forward({0, 3, 1}),
                  gmg::ContractError);
  const gmg::Permutation p = gmg::Permutation::from_forward({2, 0, 1});
  CHECK(p.inverse == std::vector<index_t>{1, 2, 0});
}

TEST_CASE("CSR invariant validation") {
  // Unsorted columns within a row.
  CHECK_THROWS_AS(SparseMatrix(2, 2, {0, 2, 2}, {1, 0}, {1.0, 2.0}),
                  gmg::ContractError);
  // Column out of range.
  CHECK_THROWS_AS(SparseMatrix(2, 2, {0, 1, 1}, {5}, {1.0}),
                  gmg::ContractError);
  // Offset/value length mismatch.
  CHECK_THROWS_AS(SparseMatrix(2, 2, {0, 1, 3}, {0, 1}, {1.0, 2.0}),
                  gmg::ContractError);
}
