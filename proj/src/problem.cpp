// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#include "gmg/problem.hpp"

#include <cmath>
#include <vector>

namespace gmg {

index_t GridSpec::unknowns() const {
  index_t total = 1;
  for (int d = 0; d < dim; ++d) total *= n;
  return total;
}

void GridSpec::validate() const {
  if (dim != 2 && dim != 3) throw ContractError("GridSpec: dim must be 2 or 3");
  if (n < 2) throw ContractError("GridSpec: need at least 2 cells per side");
  if (kappa_profile == KappaProfile::jump_cells && jump_amplitude <= 0.0) {
    throw ContractError("GridSpec: jump amplitude must be positive");
  }
  if (kappa_profile == KappaProfile::constant && kappa_value <= 0.0) {
    throw ContractError("GridSpec: constant kappa must be positive");
  }
}

double kappa_at(const GridSpec& spec, std::span<const double> x) {
  if (spec.kappa_profile == KappaProfile::constant) return spec.kappa_value;
  for (int d = 0; d < spec.dim; ++d) {
    const auto cell = static_cast<long>(std::floor(10.0 * x[d]));
    if (cell % 2 != 0) return 1.0;
  }
  const auto band = static_cast<long>(std::floor(10.0 * x[1]));
  return spec.jump_amplitude * static_cast<double>(band + 1);
}

namespace {

double harmonic_mean(double a, double b) { return 2.0 * a * b / (a + b); }

}  // namespace

ProblemInstance discretize(const GridSpec& spec) {
  spec.validate();
  const index_t n = spec.n;
  const int dim = spec.dim;
  const index_t total = spec.unknowns();
  const double h = 1.0 / static_cast<double>(n);

  index_t stride[3] = {1, n, n * n};

  std::vector<double> kappa(total);
  {
    std::array<double, 3> x{};
    index_t idx[3] = {0, 0, 0};
    for (index_t c = 0; c < total; ++c) {
      for (int d = 0; d < dim; ++d) {
        x[d] = (static_cast<double>(idx[d]) + 0.5) * h;
      }
      kappa[c] = kappa_at(spec, std::span<const double>(x.data(), dim));
      for (int d = 0; d < dim; ++d) {
        if (++idx[d] < n) break;
        idx[d] = 0;
      }
    }
  }

  const double inv_h2 = 1.0 / (h * h);
  const double inv_h = 1.0 / h;
  std::vector<Triplet> triplets;
  triplets.reserve(total * (2 * dim + 1));

  index_t idx[3] = {0, 0, 0};
  for (index_t c = 0; c < total; ++c) {
    for (int d = 0; d < dim; ++d) {
      const double a_d = spec.velocity[d];
      // Interior face between c and its +d neighbour.
      if (idx[d] + 1 < n) {
        const index_t u = c + stride[d];
        const double kf = harmonic_mean(kappa[c], kappa[u]) * inv_h2;
        triplets.push_back({c, c, kf});
        triplets.push_back({u, u, kf});
        triplets.push_back({c, u, -kf});
        triplets.push_back({u, c, -kf});
        if (a_d > 0.0) {
          triplets.push_back({c, c, a_d * inv_h});
          triplets.push_back({u, c, -a_d * inv_h});
        } else if (a_d < 0.0) {
          triplets.push_back({u, u, -a_d * inv_h});
          triplets.push_back({c, u, a_d * inv_h});
        }
      }
      // Boundary faces. Dirichlet data lives on the second-coordinate
      // extremes; everything else is homogeneous Neumann. Convective
      // outflow through any boundary face folds into the diagonal, inflow
      // carries the zero boundary value and contributes nothing.
      const bool dirichlet = (d == 1);
      if (idx[d] == 0) {
        if (dirichlet) triplets.push_back({c, c, 2.0 * kappa[c] * inv_h2});
        if (a_d < 0.0) triplets.push_back({c, c, -a_d * inv_h});
      }
      if (idx[d] == n - 1) {
        if (dirichlet) triplets.push_back({c, c, 2.0 * kappa[c] * inv_h2});
        if (a_d > 0.0) triplets.push_back({c, c, a_d * inv_h});
      }
    }
    for (int d = 0; d < dim; ++d) {
      if (++idx[d] < n) break;
      idx[d] = 0;
    }
  }

  ProblemInstance problem;
  problem.matrix = SparseMatrix::from_triplets(total, total, std::move(triplets));
  problem.rhs = spmv(problem.matrix, DenseVector(total, 1.0));
  problem.spec = spec;
  problem.h = h;
  return problem;
}

MMatrixReport is_m_matrix_candidate(const SparseMatrix& a) {
  if (!a.is_square()) {
    throw ContractError("is_m_matrix_candidate: matrix must be square");
  }
  const index_t n = a.rows();
  MMatrixReport report;
  bool any_strict = false;
  for (index_t i = 0; i < n; ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    double diag = 0.0;
    double off_sum = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] == i) {
        diag = vals[k];
      } else {
        if (vals[k] > 0.0) {
          report.clause = "sign";
          report.row = i;
          return report;
        }
        off_sum += -vals[k];
      }
    }
    if (diag <= 0.0) {
      report.clause = "diagonal";
      report.row = i;
      return report;
    }
    // Dominance up to roundoff. Row sums of assembled and aggregated
    // operators carry cancellation error far above eps * |a_ii| (summing
    // large within-aggregate entries down to small totals), so the slack is
    // generous relative to anything a genuine sign violation produces.
    const double slack = 1e-9 * (diag + off_sum);
    if (off_sum > diag + slack) {
      report.clause = "dominance";
      report.row = i;
      return report;
    }
    if (diag - off_sum > slack) any_strict = true;
  }
  if (!any_strict) {
    report.clause = "strict";
    return report;
  }

  // Irreducibility: one breadth-first search over the symmetrized pattern.
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<index_t> queue;
  queue.reserve(n);
  queue.push_back(0);
  seen[0] = 1;
  const SparseMatrix at = transpose(a);
  std::size_t head = 0;
  while (head < queue.size()) {
    const index_t v = queue[head++];
    for (const SparseMatrix* m : {&a, &at}) {
      const auto cols = m->row_cols(v);
      const auto vals = m->row_values(v);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        const index_t w = cols[k];
        if (w != v && vals[k] != 0.0 && !seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  if (static_cast<index_t>(queue.size()) != n) {
    report.clause = "irreducible";
    return report;
  }
  report.ok = true;
  return report;
}

}  // namespace gmg
