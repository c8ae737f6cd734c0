// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#include "gmg/ilu.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace gmg {

namespace {

constexpr double kPivotTol = 1e-14;

struct FactorRows {
  std::vector<std::vector<index_t>> l_cols;
  std::vector<std::vector<double>> l_vals;
  std::vector<std::vector<index_t>> u_cols;  // diagonal first
  std::vector<std::vector<double>> u_vals;
  std::vector<double> u_diag;
};

SparseMatrix rows_to_csr(index_t n,
                         const std::vector<std::vector<index_t>>& cols,
                         const std::vector<std::vector<double>>& vals) {
  std::vector<index_t> offsets(n + 1, 0);
  std::size_t total = 0;
  for (index_t i = 0; i < n; ++i) {
    total += cols[i].size();
    offsets[i + 1] = static_cast<index_t>(total);
  }
  std::vector<index_t> flat_cols;
  std::vector<double> flat_vals;
  flat_cols.reserve(total);
  flat_vals.reserve(total);
  for (index_t i = 0; i < n; ++i) {
    flat_cols.insert(flat_cols.end(), cols[i].begin(), cols[i].end());
    flat_vals.insert(flat_vals.end(), vals[i].begin(), vals[i].end());
  }
  return SparseMatrix(n, n, std::move(offsets), std::move(flat_cols),
                      std::move(flat_vals));
}

double max_abs_row(std::span<const double> vals) {
  double m = 0.0;
  for (double v : vals) m = std::max(m, std::abs(v));
  return m;
}

// Core ILUT sweep over `a` with an additive diagonal shift. Throws
// FactorError on pivot breakdown. The drop threshold for an entry in
// position (i, j) is tol * min(||A(i,:)||, ||A(:,j)||): for matrices with
// strongly varying scales (coarse operators of jump problems) the row norm
// alone erases the small couplings that tie large-entry rows to the rest of
// the domain, which ruins the preconditioner while barely moving
// ||LU - L~U~||. The column norm keeps those entries in both triangles.
FactorRows ilut_sweep(const SparseMatrix& a, double tol, double shift,
                      std::span<const double> col_norms) {
  const index_t n = a.rows();
  FactorRows rows;
  rows.l_cols.resize(n);
  rows.l_vals.resize(n);
  rows.u_cols.resize(n);
  rows.u_vals.resize(n);
  rows.u_diag.resize(n);

  std::vector<double> w(n, 0.0);
  std::vector<index_t> marker(n, -1);
  std::vector<index_t> active;

  for (index_t i = 0; i < n; ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);

    active.clear();
    std::priority_queue<index_t, std::vector<index_t>, std::greater<>> elim;
    double norm2 = shift * shift;
    bool diag_seen = false;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const index_t j = cols[k];
      double v = vals[k];
      norm2 += vals[k] * vals[k];
      if (j == i) {
        v += shift;
        diag_seen = true;
      }
      w[j] = v;
      marker[j] = i;
      active.push_back(j);
      if (j < i) elim.push(j);
    }
    if (!diag_seen && shift != 0.0) {
      w[i] = shift;
      marker[i] = i;
      active.push_back(i);
    }
    const double row_norm = std::sqrt(norm2);
    const auto drop = [&](index_t j) {
      return tol * std::min(row_norm, col_norms[j]);
    };
    const double pivot_floor = kPivotTol * max_abs_row(vals);

    auto& lc = rows.l_cols[i];
    auto& lv = rows.l_vals[i];
    while (!elim.empty()) {
      const index_t k = elim.top();
      elim.pop();
      // Dropping acts on the computed entry, before the pivot division.
      if (std::abs(w[k]) < drop(k)) continue;
      const double lik = w[k] / rows.u_diag[k];
      lc.push_back(k);
      lv.push_back(lik);
      const auto& ukc = rows.u_cols[k];
      const auto& ukv = rows.u_vals[k];
      for (std::size_t t = 1; t < ukc.size(); ++t) {  // skip the diagonal
        const index_t j = ukc[t];
        if (marker[j] != i) {
          marker[j] = i;
          w[j] = 0.0;
          active.push_back(j);
          if (j < i) elim.push(j);
        }
        w[j] -= lik * ukv[t];
      }
    }

    const double pivot = (marker[i] == i) ? w[i] : 0.0;
    if (!std::isfinite(pivot) || std::abs(pivot) <= pivot_floor) {
      throw FactorError(
          "ILUT pivot breakdown at row " + std::to_string(i), i);
    }
    rows.u_diag[i] = pivot;
    auto& uc = rows.u_cols[i];
    auto& uv = rows.u_vals[i];
    uc.push_back(i);
    uv.push_back(pivot);
    std::sort(active.begin(), active.end());
    for (index_t j : active) {
      if (j <= i) continue;
      if (std::abs(w[j]) < drop(j)) continue;
      uc.push_back(j);
      uv.push_back(w[j]);
    }
  }
  return rows;
}

IncompleteFactorization pack(index_t n, FactorRows rows, FactorKind kind,
                             Permutation perm, double tol) {
  IncompleteFactorization f;
  f.lower = rows_to_csr(n, rows.l_cols, rows.l_vals);
  f.upper = rows_to_csr(n, rows.u_cols, rows.u_vals);
  f.perm = std::move(perm);
  f.kind = kind;
  f.drop_tol = tol;
  return f;
}

}  // namespace

IncompleteFactorization ilu0(const SparseMatrix& a, const Permutation& perm) {
  if (!a.is_square()) throw ContractError("ilu0: matrix must be square");
  if (perm.size() != a.rows()) {
    throw ContractError("ilu0: permutation size mismatch");
  }
  const SparseMatrix ap = permute_symmetric(a, perm);
  const index_t n = ap.rows();

  FactorRows rows;
  rows.l_cols.resize(n);
  rows.l_vals.resize(n);
  rows.u_cols.resize(n);
  rows.u_vals.resize(n);
  rows.u_diag.resize(n);

  std::vector<double> w(n, 0.0);
  std::vector<index_t> marker(n, -1);

  for (index_t i = 0; i < n; ++i) {
    const auto cols = ap.row_cols(i);
    const auto vals = ap.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      w[cols[k]] = vals[k];
      marker[cols[k]] = i;
    }
    auto& lc = rows.l_cols[i];
    auto& lv = rows.l_vals[i];
    for (index_t k : cols) {
      if (k >= i) break;
      const double lik = w[k] / rows.u_diag[k];
      w[k] = lik;
      lc.push_back(k);
      lv.push_back(lik);
      const auto& ukc = rows.u_cols[k];
      const auto& ukv = rows.u_vals[k];
      for (std::size_t t = 1; t < ukc.size(); ++t) {
        const index_t j = ukc[t];
        if (marker[j] == i) w[j] -= lik * ukv[t];  // zero fill outside pattern
      }
    }
    const double pivot = (marker[i] == i) ? w[i] : 0.0;
    if (!std::isfinite(pivot) ||
        std::abs(pivot) <= kPivotTol * max_abs_row(vals)) {
      throw FactorError("ILU(0) pivot breakdown at row " + std::to_string(i),
                        i);
    }
    rows.u_diag[i] = pivot;
    auto& uc = rows.u_cols[i];
    auto& uv = rows.u_vals[i];
    uc.push_back(i);
    uv.push_back(pivot);
    for (index_t j : cols) {
      if (j > i) {
        uc.push_back(j);
        uv.push_back(w[j]);
      }
    }
  }
  return pack(n, std::move(rows), FactorKind::ilu0, perm, 0.0);
}

IncompleteFactorization ilut(const SparseMatrix& a, double tol) {
  if (!a.is_square()) throw ContractError("ilut: matrix must be square");
  if (tol < 0.0) throw ContractError("ilut: tolerance must be nonnegative");
  const index_t n = a.rows();
  const double amax = max_abs_row(a.values());
  const FactorKind kind = tol == 0.0 ? FactorKind::exact : FactorKind::ilut;

  std::vector<double> col_norms(n, 0.0);
  for (index_t i = 0; i < n; ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      col_norms[cols[k]] += vals[k] * vals[k];
    }
  }
  for (double& c : col_norms) c = std::sqrt(c);

  double shift = 0.0;
  constexpr int kMaxShiftAttempts = 10;
  for (int attempt = 0; attempt <= kMaxShiftAttempts; ++attempt) {
    try {
      FactorRows rows = ilut_sweep(a, tol, shift, col_norms);
      IncompleteFactorization f =
          pack(n, std::move(rows), kind, Permutation::identity(n), tol);
      f.shift_attempts = attempt;
      f.applied_shift = shift;
      return f;
    } catch (const FactorError&) {
      if (attempt == kMaxShiftAttempts || amax == 0.0) throw;
      shift = (shift == 0.0) ? 1e-8 * amax : 2.0 * shift;
    }
  }
  throw FactorError("ILUT factorization failed", -1);  // unreachable
}

DenseVector solve_factored(const IncompleteFactorization& f,
                           const DenseVector& z) {
  const index_t n = f.dim();
  if (static_cast<index_t>(z.size()) != n) {
    throw ContractError("solve_factored: vector size mismatch");
  }
  DenseVector zp(n);
  for (index_t i = 0; i < n; ++i) zp[f.perm.forward[i]] = z[i];

  // Forward substitution with the implicit unit diagonal.
  DenseVector y(n);
  for (index_t i = 0; i < n; ++i) {
    double s = zp[i];
    const auto cols = f.lower.row_cols(i);
    const auto vals = f.lower.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) s -= vals[k] * y[cols[k]];
    y[i] = s;
  }
  // Back substitution; the diagonal is the first entry of each U row.
  DenseVector t(n);
  for (index_t i = n - 1; i >= 0; --i) {
    double s = y[i];
    const auto cols = f.upper.row_cols(i);
    const auto vals = f.upper.row_values(i);
    double diag = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] == i) {
        diag = vals[k];
      } else {
        s -= vals[k] * t[cols[k]];
      }
    }
    t[i] = s / diag;
  }
  DenseVector out(n);
  for (index_t i = 0; i < n; ++i) out[i] = t[f.perm.forward[i]];
  return out;
}

namespace {

SparseMatrix with_unit_diagonal(const SparseMatrix& strictly_lower) {
  const index_t n = strictly_lower.rows();
  std::vector<Triplet> triplets;
  triplets.reserve(strictly_lower.nnz() + n);
  for (index_t i = 0; i < n; ++i) {
    const auto cols = strictly_lower.row_cols(i);
    const auto vals = strictly_lower.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      triplets.push_back({i, cols[k], vals[k]});
    }
    triplets.push_back({i, i, 1.0});
  }
  return SparseMatrix::from_triplets(n, n, std::move(triplets));
}

double frobenius(const SparseMatrix& a) {
  double s = 0.0;
  for (double v : a.values()) s += v * v;
  return std::sqrt(s);
}

double frobenius_diff(const SparseMatrix& a, const SparseMatrix& b) {
  double s = 0.0;
  for (index_t i = 0; i < a.rows(); ++i) {
    const auto c1 = a.row_cols(i);
    const auto v1 = a.row_values(i);
    const auto c2 = b.row_cols(i);
    const auto v2 = b.row_values(i);
    std::size_t k1 = 0, k2 = 0;
    while (k1 < c1.size() || k2 < c2.size()) {
      double d;
      if (k2 == c2.size() || (k1 < c1.size() && c1[k1] < c2[k2])) {
        d = v1[k1++];
      } else if (k1 == c1.size() || c2[k2] < c1[k1]) {
        d = -v2[k2++];
      } else {
        d = v1[k1++] - v2[k2++];
      }
      s += d * d;
    }
  }
  return std::sqrt(s);
}

bool numerically_symmetric(const SparseMatrix& a, double tol) {
  if (!a.is_square()) return false;
  const SparseMatrix at = transpose(a);
  const double scale = max_abs_row(a.values());
  for (index_t i = 0; i < a.rows(); ++i) {
    const auto c1 = a.row_cols(i);
    const auto v1 = a.row_values(i);
    const auto c2 = at.row_cols(i);
    const auto v2 = at.row_values(i);
    std::size_t k1 = 0, k2 = 0;
    while (k1 < c1.size() || k2 < c2.size()) {
      double d;
      if (k2 == c2.size() || (k1 < c1.size() && c1[k1] < c2[k2])) {
        d = v1[k1++];
      } else if (k1 == c1.size() || c2[k2] < c1[k1]) {
        d = v2[k2++];
      } else {
        d = v1[k1++] - v2[k2++];
      }
      if (std::abs(d) > tol * scale) return false;
    }
  }
  return true;
}

}  // namespace

FactorQualityReport factor_quality(const SparseMatrix& a,
                                   const IncompleteFactorization& f,
                                   bool compute_error) {
  if (!a.is_square() || a.rows() != f.dim()) {
    throw ContractError("factor_quality: dimension mismatch");
  }
  const index_t n = a.rows();
  FactorQualityReport report;

  {
    double dmin = 0.0, dmax = 0.0;
    bool all_positive = n > 0;
    for (index_t i = 0; i < n && all_positive; ++i) {
      const double d = a.coeff(i, i);
      if (d <= 0.0) {
        all_positive = false;
      } else {
        dmin = (i == 0) ? d : std::min(dmin, d);
        dmax = (i == 0) ? d : std::max(dmax, d);
      }
    }
    if (all_positive) report.diag_ratio_bound = dmax / dmin;
  }

  std::vector<double> udiag(n);
  bool diag_positive = true;
  for (index_t i = 0; i < n; ++i) {
    udiag[i] = f.upper.coeff(i, i);
    if (udiag[i] <= 0.0) diag_positive = false;
  }

  if (n > 0 && diag_positive && numerically_symmetric(a, 1e-12)) {
    // Fold the U scaling into L as in the Cholesky form LD^{1/2}: the last
    // row is ||L(N,:)||^2 = sum_j l_Nj^2 d_j + d_N, and l_11^2 = d_1.
    double norm2 = udiag[n - 1];
    const auto cols = f.lower.row_cols(n - 1);
    const auto vals = f.lower.row_values(n - 1);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      norm2 += vals[k] * vals[k] * udiag[cols[k]];
    }
    report.spd_estimate = norm2 / udiag[0];
  }

  if (n > 0) {
    double umin = std::abs(udiag[0]), umax = std::abs(udiag[0]);
    for (index_t i = 1; i < n; ++i) {
      umin = std::min(umin, std::abs(udiag[i]));
      umax = std::max(umax, std::abs(udiag[i]));
    }
    if (umin > 0.0) report.unsym_estimate = umax / umin;
  }

  if (compute_error) {
    if (n * n > kDenseOracleCap) {
      throw ContractError("factor_quality: instance exceeds the oracle cap");
    }
    const SparseMatrix ap = permute_symmetric(a, f.perm);
    const IncompleteFactorization exact = ilut(ap, 0.0);
    const SparseMatrix exact_product =
        multiply(with_unit_diagonal(exact.lower), exact.upper);
    const SparseMatrix approx_product =
        multiply(with_unit_diagonal(f.lower), f.upper);
    report.relative_error =
        frobenius_diff(exact_product, approx_product) / frobenius(exact_product);
  }
  return report;
}

}  // namespace gmg
