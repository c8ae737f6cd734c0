// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0
//
// Benchmark front end: generate test problems, solve single systems, and
// run method x coarsening sweeps that emit CSV and markdown tables.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gmg/bench.hpp"
#include "gmg/matrix_market.hpp"

namespace {

using gmg::DenseVector;
using gmg::index_t;
using gmg::SparseMatrix;

constexpr int kExitUsage = 2;
constexpr int kExitMaxIters = 3;
constexpr int kExitBreakdown = 4;

SparseMatrix vector_as_column(const DenseVector& v) {
  std::vector<gmg::Triplet> triplets;
  triplets.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    triplets.push_back({static_cast<index_t>(i), 0, v[i]});
  }
  return SparseMatrix::from_triplets(static_cast<index_t>(v.size()), 1,
                                     std::move(triplets));
}

void append_csv_row(const std::string& path, const gmg::bench::RunRecord& r) {
  const bool fresh =
      !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw gmg::Error("cannot open '" + path + "' for writing");
  if (fresh) out << gmg::bench::csv_header() << "\n";
  out << gmg::bench::csv_row(r) << "\n";
}

struct GenerateArgs {
  std::string case_name;
  index_t n = 0;
  double jump = 1e3;
  std::string out_prefix;
};

int run_generate(const GenerateArgs& args) {
  const auto spec = gmg::bench::make_case(args.case_name, args.n, args.jump);
  if (!spec) {
    std::cerr << "unknown case '" << args.case_name << "'\n";
    return kExitUsage;
  }
  const gmg::ProblemInstance problem = gmg::discretize(*spec);
  const std::string prefix =
      args.out_prefix.empty()
          ? args.case_name + "_n" + std::to_string(args.n)
          : args.out_prefix;
  gmg::write_matrix_market_file(problem.matrix, false, prefix + ".mtx");
  gmg::write_matrix_market_file(vector_as_column(problem.rhs), false,
                                prefix + "_rhs.mtx");
  const auto ratio = gmg::bench::diagonal_ratio(problem.matrix);
  std::cout << "wrote " << prefix << ".mtx and " << prefix << "_rhs.mtx\n"
            << "size=" << problem.matrix.rows() << "x"
            << problem.matrix.cols() << " nnz=" << problem.matrix.nnz()
            << " diag_ratio=";
  if (ratio) {
    std::cout << *ratio << "\n";
  } else {
    std::cout << "n/a\n";
  }
  return 0;
}

struct SolveArgs {
  std::string matrix_path;
  std::string rhs_path;
  bool rhs_ones = false;
  std::string case_name;
  index_t n = 0;
  double jump = 1e3;
  std::string method = "gmg-no";
  std::optional<double> cf;
  std::optional<index_t> nc;
  double coarse_tol = 1e-4;
  double beta = 0.25;
  std::string aggregation = "matching";
  int restart = 30;
  int maxit = 600;
  double tol = 1e-7;
  std::string csv_path;
  long seed = 0;  // reserved, runs are deterministic
};

int run_solve(const SolveArgs& args) {
  if (args.matrix_path.empty() == args.case_name.empty()) {
    std::cerr << "exactly one of --matrix or --case is required\n";
    return kExitUsage;
  }
  gmg::bench::ProblemRef ref;
  if (!args.case_name.empty()) {
    ref.spec = gmg::bench::make_case(args.case_name, args.n, args.jump);
    if (!ref.spec) {
      std::cerr << "unknown case '" << args.case_name << "'\n";
      return kExitUsage;
    }
    ref.id = args.case_name + ":n=" + std::to_string(args.n);
  } else {
    ref.matrix_path = args.matrix_path;
    ref.rhs_path = args.rhs_path;
    const auto slash = args.matrix_path.find_last_of('/');
    ref.id = slash == std::string::npos ? args.matrix_path
                                        : args.matrix_path.substr(slash + 1);
  }

  gmg::bench::RunOptions options;
  const auto method = gmg::bench::parse_method(args.method);
  if (!method) {
    std::cerr << "unknown method '" << args.method << "'\n";
    return kExitUsage;
  }
  options.method = *method;
  if (options.method != gmg::bench::Method::none) {
    if (args.cf.has_value() == args.nc.has_value()) {
      std::cerr << "exactly one of --cf or --nc is required\n";
      return kExitUsage;
    }
  }
  options.cf = args.cf;
  options.nc = args.nc;
  options.coarse_tol = args.coarse_tol;
  options.beta = args.beta;
  if (args.aggregation == "matching") {
    options.aggregation = gmg::AggregationScheme::matching;
  } else if (args.aggregation == "strength") {
    options.aggregation = gmg::AggregationScheme::strength;
  } else {
    std::cerr << "unknown aggregation '" << args.aggregation << "'\n";
    return kExitUsage;
  }
  options.solver.restart_m = args.restart;
  options.solver.max_total_iters = args.maxit;
  options.solver.rel_tol = args.tol;

  const gmg::bench::LoadedProblem problem = gmg::bench::load_problem(ref);
  const gmg::bench::RunRecord record =
      gmg::bench::run_single(problem, ref.id, options);
  std::cout << gmg::bench::record_line(record) << "\n";
  if (!args.csv_path.empty()) append_csv_row(args.csv_path, record);

  if (record.status == "converged") return 0;
  if (record.status == "max_iters") return kExitMaxIters;
  if (record.status == "breakdown") return kExitBreakdown;
  std::cerr << record.status << "\n";
  return kExitUsage;
}

struct SweepArgs {
  std::string config_path;
  std::string csv_path = "sweep.csv";
  std::string md_path;
};

int run_sweep_cmd(const SweepArgs& args) {
  std::ifstream in(args.config_path);
  if (!in) {
    std::cerr << "cannot open sweep config '" << args.config_path << "'\n";
    return kExitUsage;
  }
  const gmg::bench::SweepConfig config = gmg::bench::parse_sweep_config(in);
  const std::vector<gmg::bench::RunRecord> records =
      gmg::bench::run_sweep(config);
  {
    std::ofstream csv(args.csv_path);
    if (!csv) {
      std::cerr << "cannot open '" << args.csv_path << "' for writing\n";
      return kExitUsage;
    }
    gmg::bench::write_csv(records, csv);
  }
  const std::string table = gmg::bench::markdown_table(config, records);
  if (args.md_path.empty()) {
    std::cout << table;
  } else {
    std::ofstream md(args.md_path);
    md << table;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-grid AMG benchmark driver"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "Generate a test problem as Matrix Market files");
  generate->add_option("--case", gen.case_name,
                       "Problem family: dc1-2d, dc1-3d, dcc1-2d, dcc2-3d")
      ->required();
  generate->add_option("--n", gen.n, "Cells per spatial direction")
      ->required()
      ->check(CLI::PositiveNumber);
  generate->add_option("--jump", gen.jump, "Coefficient jump amplitude");
  generate->add_option("--out", gen.out_prefix, "Output file prefix");

  SolveArgs sol;
  CLI::App* solve =
      app.add_subcommand("solve", "Solve one system and print a run record");
  solve->add_option("--matrix", sol.matrix_path, "Matrix Market file");
  solve->add_option("--rhs", sol.rhs_path, "Right-hand side file (n x 1)");
  solve->add_flag("--rhs-ones", sol.rhs_ones,
                  "Use b = A*ones (default when no --rhs is given)");
  solve->add_option("--case", sol.case_name, "Generate the problem in-memory");
  solve->add_option("--n", sol.n, "Cells per direction for --case");
  solve->add_option("--jump", sol.jump, "Jump amplitude for --case");
  solve->add_option("--method", sol.method,
                    "gmg-no | gmg-nd | egmg-no | egmg-nd | none");
  double cf_value = 0.0;
  index_t nc_value = 0;
  CLI::Option* cf_opt =
      solve->add_option("--cf", cf_value, "Coarsening factor (> 1)");
  CLI::Option* nc_opt =
      solve->add_option("--nc", nc_value, "Explicit coarse grid size");
  solve->add_option("--coarse-tol", sol.coarse_tol, "ILUT drop tolerance");
  solve->add_option("--beta", sol.beta, "Strength-of-connection threshold");
  solve->add_option("--aggregation", sol.aggregation, "matching | strength");
  solve->add_option("--restart", sol.restart, "GMRES restart length");
  solve->add_option("--maxit", sol.maxit, "Total inner iteration cap");
  solve->add_option("--tol", sol.tol, "Relative residual target");
  solve->add_option("--csv", sol.csv_path, "Append the record to a CSV file");
  solve->add_option("--seed", sol.seed, "Reserved; runs are deterministic");

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Run a problems x methods x cf sweep from a config file");
  sweep_cmd->add_option("config", sweep.config_path, "Sweep config file")
      ->required();
  sweep_cmd->add_option("--csv", sweep.csv_path, "CSV output path");
  sweep_cmd->add_option("--md", sweep.md_path,
                        "Markdown table path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*solve) {
      if (cf_opt->count() > 0) sol.cf = cf_value;
      if (nc_opt->count() > 0) sol.nc = nc_value;
      return run_solve(sol);
    }
    if (*sweep_cmd) return run_sweep_cmd(sweep);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
