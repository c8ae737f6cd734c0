// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#include "gmg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace gmg {

Permutation Permutation::identity(index_t n) {
  Permutation p;
  p.forward.resize(n);
  p.inverse.resize(n);
  std::iota(p.forward.begin(), p.forward.end(), index_t{0});
  std::iota(p.inverse.begin(), p.inverse.end(), index_t{0});
  return p;
}

Permutation Permutation::from_forward(std::vector<index_t> forward) {
  const index_t n = static_cast<index_t>(forward.size());
  std::vector<index_t> inverse(n, -1);
  for (index_t i = 0; i < n; ++i) {
    const index_t f = forward[i];
    if (f < 0 || f >= n || inverse[f] != -1) {
      throw ContractError("permutation is not a bijection on [0, n)");
    }
    inverse[f] = i;
  }
  Permutation p;
  p.forward = std::move(forward);
  p.inverse = std::move(inverse);
  return p;
}

SparseMatrix::SparseMatrix(index_t nrows, index_t ncols,
                           std::vector<index_t> row_offsets,
                           std::vector<index_t> col_indices,
                           std::vector<double> values)
    : nrows_(nrows),
      ncols_(ncols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (nrows_ < 0 || ncols_ < 0) {
    throw ContractError("negative matrix dimension");
  }
  if (static_cast<index_t>(row_offsets_.size()) != nrows_ + 1 ||
      row_offsets_.front() != 0 ||
      row_offsets_.back() != static_cast<index_t>(values_.size()) ||
      col_indices_.size() != values_.size()) {
    throw ContractError("inconsistent CSR array lengths");
  }
  for (index_t i = 0; i < nrows_; ++i) {
    if (row_offsets_[i] > row_offsets_[i + 1]) {
      throw ContractError("row offsets must be nondecreasing");
    }
    for (index_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const index_t c = col_indices_[k];
      if (c < 0 || c >= ncols_) {
        throw ContractError("column index out of range");
      }
      if (k > row_offsets_[i] && col_indices_[k - 1] >= c) {
        throw ContractError("column indices must be strictly increasing");
      }
    }
  }
}

SparseMatrix SparseMatrix::from_triplets(index_t nrows, index_t ncols,
                                         std::vector<Triplet> triplets) {
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols) {
      throw ContractError("triplet index out of range");
    }
  }
  // The value participates in the sort key so that duplicates merge in a
  // canonical order regardless of input order.
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) {
              return std::tie(a.row, a.col, a.value) <
                     std::tie(b.row, b.col, b.value);
            });
  std::vector<index_t> offsets(nrows + 1, 0);
  std::vector<index_t> cols;
  std::vector<double> vals;
  cols.reserve(triplets.size());
  vals.reserve(triplets.size());
  std::size_t k = 0;
  for (index_t i = 0; i < nrows; ++i) {
    while (k < triplets.size() && triplets[k].row == i) {
      const index_t c = triplets[k].col;
      double sum = 0.0;
      while (k < triplets.size() && triplets[k].row == i &&
             triplets[k].col == c) {
        sum += triplets[k].value;
        ++k;
      }
      cols.push_back(c);
      vals.push_back(sum);
    }
    offsets[i + 1] = static_cast<index_t>(cols.size());
  }
  return SparseMatrix(nrows, ncols, std::move(offsets), std::move(cols),
                      std::move(vals));
}

SparseMatrix SparseMatrix::identity(index_t n) {
  std::vector<index_t> offsets(n + 1);
  std::iota(offsets.begin(), offsets.end(), index_t{0});
  std::vector<index_t> cols(n);
  std::iota(cols.begin(), cols.end(), index_t{0});
  return SparseMatrix(n, n, std::move(offsets), std::move(cols),
                      std::vector<double>(n, 1.0));
}

double SparseMatrix::coeff(index_t i, index_t j) const {
  const auto cols = row_cols(i);
  const auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return values_[row_offsets_[i] + (it - cols.begin())];
}

SparseMatrix SparseMatrix::drop_explicit_zeros() const {
  std::vector<index_t> offsets(nrows_ + 1, 0);
  std::vector<index_t> cols;
  std::vector<double> vals;
  for (index_t i = 0; i < nrows_; ++i) {
    for (index_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      if (values_[k] != 0.0) {
        cols.push_back(col_indices_[k]);
        vals.push_back(values_[k]);
      }
    }
    offsets[i + 1] = static_cast<index_t>(cols.size());
  }
  return SparseMatrix(nrows_, ncols_, std::move(offsets), std::move(cols),
                      std::move(vals));
}

DenseVector spmv(const SparseMatrix& a, const DenseVector& x) {
  if (a.cols() != static_cast<index_t>(x.size())) {
    throw ContractError("spmv: dimension mismatch");
  }
  DenseVector y(a.rows(), 0.0);
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  for (index_t i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (index_t k = offsets[i]; k < offsets[i + 1]; ++k) {
      sum += vals[k] * x[cols[k]];
    }
    y[i] = sum;
  }
  return y;
}

SparseMatrix transpose(const SparseMatrix& a) {
  const index_t m = a.rows();
  const index_t n = a.cols();
  std::vector<index_t> offsets(n + 1, 0);
  for (index_t c : a.col_indices()) ++offsets[c + 1];
  for (index_t j = 0; j < n; ++j) offsets[j + 1] += offsets[j];

  std::vector<index_t> cols(a.nnz());
  std::vector<double> vals(a.nnz());
  std::vector<index_t> next(offsets.begin(), offsets.end() - 1);
  for (index_t i = 0; i < m; ++i) {
    const auto rc = a.row_cols(i);
    const auto rv = a.row_values(i);
    for (std::size_t k = 0; k < rc.size(); ++k) {
      const index_t slot = next[rc[k]]++;
      cols[slot] = i;
      vals[slot] = rv[k];
    }
  }
  return SparseMatrix(n, m, std::move(offsets), std::move(cols),
                      std::move(vals));
}

SparseMatrix permute_symmetric(const SparseMatrix& a, const Permutation& p) {
  if (!a.is_square()) {
    throw ContractError("permute_symmetric: matrix must be square");
  }
  if (p.size() != a.rows()) {
    throw ContractError("permute_symmetric: permutation size mismatch");
  }
  std::vector<Triplet> triplets;
  triplets.reserve(a.nnz());
  for (index_t i = 0; i < a.rows(); ++i) {
    const auto rc = a.row_cols(i);
    const auto rv = a.row_values(i);
    for (std::size_t k = 0; k < rc.size(); ++k) {
      triplets.push_back({p.forward[i], p.forward[rc[k]], rv[k]});
    }
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(triplets));
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ContractError("multiply: dimension mismatch");
  }
  const index_t m = a.rows();
  const index_t n = b.cols();
  std::vector<index_t> offsets(m + 1, 0);
  std::vector<index_t> cols;
  std::vector<double> vals;
  std::vector<double> acc(n, 0.0);
  std::vector<index_t> marker(n, -1);
  std::vector<index_t> active;
  for (index_t i = 0; i < m; ++i) {
    active.clear();
    const auto arc = a.row_cols(i);
    const auto arv = a.row_values(i);
    for (std::size_t ka = 0; ka < arc.size(); ++ka) {
      const index_t k = arc[ka];
      const double av = arv[ka];
      const auto brc = b.row_cols(k);
      const auto brv = b.row_values(k);
      for (std::size_t kb = 0; kb < brc.size(); ++kb) {
        const index_t j = brc[kb];
        if (marker[j] != i) {
          marker[j] = i;
          acc[j] = 0.0;
          active.push_back(j);
        }
        acc[j] += av * brv[kb];
      }
    }
    std::sort(active.begin(), active.end());
    for (index_t j : active) {
      cols.push_back(j);
      vals.push_back(acc[j]);
    }
    offsets[i + 1] = static_cast<index_t>(cols.size());
  }
  return SparseMatrix(m, n, std::move(offsets), std::move(cols),
                      std::move(vals));
}

std::vector<double> to_dense(const SparseMatrix& a, index_t cap) {
  if (a.rows() * a.cols() > cap) {
    throw ContractError("to_dense: matrix exceeds the dense oracle cap");
  }
  std::vector<double> dense(a.rows() * a.cols(), 0.0);
  for (index_t i = 0; i < a.rows(); ++i) {
    const auto rc = a.row_cols(i);
    const auto rv = a.row_values(i);
    for (std::size_t k = 0; k < rc.size(); ++k) {
      dense[i * a.cols() + rc[k]] = rv[k];
    }
  }
  return dense;
}

}  // namespace gmg
