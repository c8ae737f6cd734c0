// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#ifndef GMG_BENCH_HPP
#define GMG_BENCH_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gmg/gmres.hpp"
#include "gmg/ilu.hpp"
#include "gmg/problem.hpp"
#include "gmg/twogrid.hpp"

namespace gmg::bench {

enum class Method { gmg_no, gmg_nd, egmg_no, egmg_nd, none };

/// Table label: GMG-NO, GMG-ND, EGMG-NO, EGMG-ND or none.
std::string method_label(Method m);
/// Parses lowercase CLI spellings like "gmg-no".
std::optional<Method> parse_method(const std::string& name);

/// Named generator cases: dc1-2d, dc1-3d, dcc1-2d, dcc2-3d.
std::optional<GridSpec> make_case(const std::string& name, index_t n,
                                  double jump);

/// A problem for one benchmark run: either a generated grid case or an
/// external Matrix Market file with an optional right-hand side file.
struct ProblemRef {
  std::string id;
  std::optional<GridSpec> spec;
  std::string matrix_path;
  std::string rhs_path;
};

struct LoadedProblem {
  SparseMatrix matrix;
  DenseVector rhs;  // b = A * ones when no rhs file is given
  std::optional<int> grid_dim;
};

LoadedProblem load_problem(const ProblemRef& ref);

struct RunOptions {
  Method method = Method::gmg_no;
  std::optional<double> cf;
  std::optional<index_t> nc;
  double coarse_tol = 1e-4;
  double beta = 0.25;
  AggregationScheme aggregation = AggregationScheme::matching;
  SolverConfig solver;
};

struct RunRecord {
  std::string problem;
  Method method = Method::none;
  std::optional<double> cf;
  std::optional<index_t> nc;  // achieved coarse size
  int its = 0;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
  double relres = 0.0;
  std::string status;  // converged | max_iters | breakdown | error
  index_t nnz_smoother = 0;
  index_t nnz_coarse = 0;
  std::optional<double> diag_ratio;
  std::optional<double> coarse_unsym_estimate;
};

/// Builds the configured preconditioner, solves, and records the outcome.
/// Never throws for solver-level failures; those land in `status`.
RunRecord run_single(const LoadedProblem& problem,
                     const std::string& problem_id, const RunOptions& options);

struct SweepConfig {
  std::vector<ProblemRef> problems;
  std::vector<Method> methods;
  std::vector<double> cfs;    // exactly one of cfs / ncs is used
  std::vector<index_t> ncs;
  RunOptions base;
};

/// Parses the flat sectioned sweep format ([problems] / [methods] /
/// [cf] or [nc] / [options]); see the README for the grammar.
SweepConfig parse_sweep_config(std::istream& in);

/// One record per problem x method x coarse-size cell, in configuration
/// order. Cell failures are recorded, never propagated.
std::vector<RunRecord> run_sweep(const SweepConfig& config);

// Fixed CSV schema:
//   problem,method,cf,nc,its,setup_s,solve_s,relres,status,
//   nnz_smoother,nnz_coarse
std::string csv_header();
std::string csv_row(const RunRecord& record);
void write_csv(const std::vector<RunRecord>& records, std::ostream& out);

/// Paper-style table: one row per problem and coarse size, its/time columns
/// per method. Unconverged cells show NC, breakdowns BD, errors ERR.
std::string markdown_table(const SweepConfig& config,
                           const std::vector<RunRecord>& records);

/// One aligned human-readable row for the solve subcommand.
std::string record_line(const RunRecord& record);

/// max diag / min diag, absent unless the diagonal is fully positive.
std::optional<double> diagonal_ratio(const SparseMatrix& a);

}  // namespace gmg::bench

#endif  // GMG_BENCH_HPP
