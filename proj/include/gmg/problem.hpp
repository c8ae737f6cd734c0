// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#ifndef GMG_PROBLEM_HPP
#define GMG_PROBLEM_HPP

#include <array>
#include <string>

#include "gmg/sparse.hpp"

namespace gmg {

enum class KappaProfile {
  constant,   // kappa(x) = kappa_value everywhere
  jump_cells  // amplitude * (floor(10 x2) + 1) inside the even-index cells
};

/// Cell-centered finite-volume discretization of a convection-diffusion
/// equation on the unit square/cube with a uniform n^dim grid. Dirichlet
/// data is imposed on the two boundaries extremal in the second coordinate,
/// homogeneous Neumann everywhere else.
struct GridSpec {
  int dim = 2;  // 2 or 3
  index_t n = 2;
  KappaProfile kappa_profile = KappaProfile::jump_cells;
  double kappa_value = 1.0;       // constant profile only
  double jump_amplitude = 1e3;    // jump_cells profile only
  std::array<double, 3> velocity{0.0, 0.0, 0.0};

  index_t unknowns() const;
  void validate() const;
};

struct ProblemInstance {
  SparseMatrix matrix;
  DenseVector rhs;
  GridSpec spec;
  double h = 0.0;
};

/// Diffusion coefficient at a point of [0,1]^dim.
double kappa_at(const GridSpec& spec, std::span<const double> x);

/// Assembles the system matrix and a manufactured right-hand side
/// b = A * ones, so the exact solution is the vector of all ones.
ProblemInstance discretize(const GridSpec& spec);

/// Outcome of the M-matrix screen; when ok is false, `clause` names the
/// first violated requirement: "diagonal", "sign", "dominance", "strict"
/// or "irreducible".
struct MMatrixReport {
  bool ok = false;
  std::string clause;
  index_t row = -1;
};

/// Checks positive diagonal, nonpositive off-diagonals, weak diagonal
/// dominance in every row with at least one strict row, and connectivity
/// of the symmetrized adjacency graph.
MMatrixReport is_m_matrix_candidate(const SparseMatrix& a);

}  // namespace gmg

#endif  // GMG_PROBLEM_HPP
