// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#include "gmg/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "gmg/matrix_market.hpp"

namespace gmg::bench {

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

OrderingKind method_ordering(Method m) {
  return (m == Method::gmg_nd || m == Method::egmg_nd)
             ? OrderingKind::nested_dissection
             : OrderingKind::natural;
}

CoarseMode method_coarse_mode(Method m) {
  return (m == Method::egmg_no || m == Method::egmg_nd) ? CoarseMode::exact
                                                        : CoarseMode::ilut;
}

std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_iters:
      return "max_iters";
    case SolveStatus::breakdown:
      return "breakdown";
  }
  return "unknown";
}

}  // namespace

std::string method_label(Method m) {
  switch (m) {
    case Method::gmg_no:
      return "GMG-NO";
    case Method::gmg_nd:
      return "GMG-ND";
    case Method::egmg_no:
      return "EGMG-NO";
    case Method::egmg_nd:
      return "EGMG-ND";
    case Method::none:
      return "none";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string& name) {
  if (name == "gmg-no") return Method::gmg_no;
  if (name == "gmg-nd") return Method::gmg_nd;
  if (name == "egmg-no") return Method::egmg_no;
  if (name == "egmg-nd") return Method::egmg_nd;
  if (name == "none") return Method::none;
  return std::nullopt;
}

std::optional<GridSpec> make_case(const std::string& name, index_t n,
                                  double jump) {
  GridSpec spec;
  spec.n = n;
  spec.kappa_profile = KappaProfile::jump_cells;
  spec.jump_amplitude = jump;
  if (name == "dc1-2d") {
    spec.dim = 2;
  } else if (name == "dc1-3d") {
    spec.dim = 3;
  } else if (name == "dcc1-2d") {
    spec.dim = 2;
    spec.velocity = {1000.0, 1000.0, 0.0};
  } else if (name == "dcc2-3d") {
    spec.dim = 3;
    spec.velocity = {1000.0, 1000.0, 1000.0};
  } else {
    return std::nullopt;
  }
  return spec;
}

LoadedProblem load_problem(const ProblemRef& ref) {
  LoadedProblem out;
  if (ref.spec) {
    ProblemInstance problem = discretize(*ref.spec);
    out.matrix = std::move(problem.matrix);
    out.rhs = std::move(problem.rhs);
    out.grid_dim = ref.spec->dim;
    return out;
  }
  out.matrix = read_matrix_market_file(ref.matrix_path);
  if (!ref.rhs_path.empty()) {
    const SparseMatrix rhs = read_matrix_market_file(ref.rhs_path);
    if (rhs.cols() != 1 || rhs.rows() != out.matrix.rows()) {
      throw ContractError("rhs file must be an n x 1 matrix");
    }
    out.rhs.assign(rhs.rows(), 0.0);
    for (index_t i = 0; i < rhs.rows(); ++i) {
      for (std::size_t k = 0; k < rhs.row_cols(i).size(); ++k) {
        out.rhs[i] += rhs.row_values(i)[k];
      }
    }
  } else {
    out.rhs = spmv(out.matrix, DenseVector(out.matrix.rows(), 1.0));
  }
  return out;
}

std::optional<double> diagonal_ratio(const SparseMatrix& a) {
  if (!a.is_square() || a.rows() == 0) return std::nullopt;
  double dmin = 0.0, dmax = 0.0;
  for (index_t i = 0; i < a.rows(); ++i) {
    const double d = a.coeff(i, i);
    if (d <= 0.0) return std::nullopt;
    dmin = (i == 0) ? d : std::min(dmin, d);
    dmax = (i == 0) ? d : std::max(dmax, d);
  }
  return dmax / dmin;
}

RunRecord run_single(const LoadedProblem& problem,
                     const std::string& problem_id,
                     const RunOptions& options) {
  RunRecord record;
  record.problem = problem_id;
  record.method = options.method;
  record.cf = options.cf;
  record.diag_ratio = diagonal_ratio(problem.matrix);
  try {
    PreconditionerFn precond = no_preconditioner();
    TwoGridPreconditioner two_grid;
    if (options.method != Method::none) {
      TwoGridConfig cfg;
      cfg.aggregation = options.aggregation;
      cfg.strength_beta = options.beta;
      cfg.cf = options.cf;
      cfg.explicit_nc = options.nc;
      cfg.grid_dim = problem.grid_dim;
      cfg.smoother_ordering = method_ordering(options.method);
      cfg.coarse_mode = method_coarse_mode(options.method);
      cfg.coarse_tol = options.coarse_tol;
      auto [built, setup] = build_two_grid(problem.matrix, cfg);
      two_grid = std::move(built);
      record.nc = setup.n_aggregates;
      record.setup_seconds = setup.setup_seconds;
      record.nnz_smoother = setup.nnz_smoother;
      record.nnz_coarse = setup.nnz_coarse;
      const SparseMatrix coarse =
          galerkin_coarse(*two_grid.fine_matrix, two_grid.aggregates);
      record.coarse_unsym_estimate =
          factor_quality(coarse, two_grid.coarse_factor, false).unsym_estimate;
      precond = [&two_grid](const DenseVector& z) {
        return apply_b_inverse(two_grid, z);
      };
    }
    const DenseVector x0(problem.matrix.rows(), 0.0);
    auto [x, report] =
        gmres(problem.matrix, problem.rhs, precond, x0, options.solver);
    record.its = report.iterations;
    record.solve_seconds = report.solve_seconds;
    record.relres = report.residual_history.back();
    record.status = status_name(report.status);
  } catch (const std::exception& e) {
    record.status = std::string("error: ") + e.what();
  }
  return record;
}

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig config;
  std::string line;
  std::string section;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream iss(line);
    std::string token;
    if (!(iss >> token)) continue;
    if (token.front() == '[') {
      section = token;
      continue;
    }
    if (section == "[problems]") {
      ProblemRef ref;
      index_t n = 0;
      double jump = 1e3;
      std::string case_name;
      std::string tok = token;
      do {
        const auto eq = tok.find('=');
        const std::string key = tok.substr(0, eq);
        const std::string value =
            eq == std::string::npos ? "" : tok.substr(eq + 1);
        if (key == "case") {
          case_name = value;
        } else if (key == "n") {
          n = std::stoll(value);
        } else if (key == "jump") {
          jump = std::stod(value);
        } else if (key == "matrix") {
          ref.matrix_path = value;
        } else if (key == "rhs") {
          ref.rhs_path = value;
        } else if (key == "name") {
          ref.id = value;
        } else {
          throw ParseError("unknown problem key '" + key + "'", lineno);
        }
      } while (iss >> tok);
      if (!case_name.empty()) {
        ref.spec = make_case(case_name, n, jump);
        if (!ref.spec) {
          throw ParseError("unknown case '" + case_name + "'", lineno);
        }
        if (ref.id.empty()) {
          ref.id = case_name + ":n=" + std::to_string(n) +
                   ":jump=" + fmt("%g", jump);
        }
      } else if (!ref.matrix_path.empty()) {
        if (ref.id.empty()) {
          const auto slash = ref.matrix_path.find_last_of('/');
          ref.id = slash == std::string::npos
                       ? ref.matrix_path
                       : ref.matrix_path.substr(slash + 1);
        }
      } else {
        throw ParseError("problem needs case= or matrix=", lineno);
      }
      config.problems.push_back(std::move(ref));
    } else if (section == "[methods]") {
      do {
        const auto method = parse_method(token);
        if (!method) throw ParseError("unknown method '" + token + "'", lineno);
        config.methods.push_back(*method);
      } while (iss >> token);
    } else if (section == "[cf]") {
      do {
        config.cfs.push_back(std::stod(token));
      } while (iss >> token);
    } else if (section == "[nc]") {
      do {
        config.ncs.push_back(std::stoll(token));
      } while (iss >> token);
    } else if (section == "[options]") {
      const auto eq = token.find('=');
      std::string key = token.substr(0, eq);
      std::string value = eq == std::string::npos ? "" : token.substr(eq + 1);
      if (value.empty() && (iss >> value) && value == "=") iss >> value;
      if (key == "coarse_tol") {
        config.base.coarse_tol = std::stod(value);
      } else if (key == "beta") {
        config.base.beta = std::stod(value);
      } else if (key == "aggregation") {
        if (value == "matching") {
          config.base.aggregation = AggregationScheme::matching;
        } else if (value == "strength") {
          config.base.aggregation = AggregationScheme::strength;
        } else {
          throw ParseError("unknown aggregation '" + value + "'", lineno);
        }
      } else if (key == "restart") {
        config.base.solver.restart_m = std::stoi(value);
      } else if (key == "maxit") {
        config.base.solver.max_total_iters = std::stoi(value);
      } else if (key == "tol") {
        config.base.solver.rel_tol = std::stod(value);
      } else {
        throw ParseError("unknown option '" + key + "'", lineno);
      }
    } else {
      throw ParseError("content outside of a [section]", lineno);
    }
  }
  if (config.cfs.empty() == config.ncs.empty()) {
    throw ParseError("exactly one of [cf] or [nc] must be provided", lineno);
  }
  return config;
}

std::vector<RunRecord> run_sweep(const SweepConfig& config) {
  std::vector<RunRecord> records;
  const std::size_t cells = config.cfs.empty() ? config.ncs.size()
                                               : config.cfs.size();
  for (const ProblemRef& ref : config.problems) {
    std::optional<LoadedProblem> problem;
    std::string load_error;
    try {
      problem = load_problem(ref);
    } catch (const std::exception& e) {
      load_error = std::string("error: ") + e.what();
    }
    for (const Method method : config.methods) {
      for (std::size_t c = 0; c < cells; ++c) {
        RunOptions options = config.base;
        options.method = method;
        if (config.cfs.empty()) {
          options.nc = config.ncs[c];
        } else {
          options.cf = config.cfs[c];
        }
        if (!problem) {
          RunRecord record;
          record.problem = ref.id;
          record.method = method;
          record.cf = options.cf;
          record.nc = options.nc;
          record.status = load_error;
          records.push_back(std::move(record));
          continue;
        }
        records.push_back(run_single(*problem, ref.id, options));
      }
    }
  }
  return records;
}

std::string csv_header() {
  return "problem,method,cf,nc,its,setup_s,solve_s,relres,status,"
         "nnz_smoother,nnz_coarse";
}

std::string csv_row(const RunRecord& r) {
  std::ostringstream out;
  out << r.problem << ',' << method_label(r.method) << ',';
  if (r.cf) out << fmt("%g", *r.cf);
  out << ',';
  if (r.nc) out << *r.nc;
  out << ',' << r.its << ',' << fmt("%.4f", r.setup_seconds) << ','
      << fmt("%.4f", r.solve_seconds) << ',' << fmt("%.3e", r.relres) << ','
      << r.status << ',' << r.nnz_smoother << ',' << r.nnz_coarse;
  return out.str();
}

void write_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << csv_header() << "\n";
  for (const RunRecord& r : records) out << csv_row(r) << "\n";
}

namespace {

std::string cell_marker(const RunRecord& r) {
  if (r.status == "converged") return std::to_string(r.its);
  if (r.status == "max_iters") return "NC";
  if (r.status == "breakdown") return "BD";
  return "ERR";
}

}  // namespace

std::string markdown_table(const SweepConfig& config,
                           const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "| problem | " << (config.cfs.empty() ? "nc" : "cf") << " |";
  for (const Method m : config.methods) {
    out << ' ' << method_label(m) << " its | " << method_label(m) << " time |";
  }
  out << "\n|---|---|";
  for (std::size_t i = 0; i < config.methods.size(); ++i) out << "---|---|";
  out << "\n";

  const std::size_t cells = config.cfs.empty() ? config.ncs.size()
                                               : config.cfs.size();
  // records are ordered problem-major, then method, then cell
  for (std::size_t p = 0; p < config.problems.size(); ++p) {
    for (std::size_t c = 0; c < cells; ++c) {
      out << "| " << config.problems[p].id << " | "
          << (config.cfs.empty() ? std::to_string(config.ncs[c])
                                 : fmt("%g", config.cfs[c]))
          << " |";
      for (std::size_t m = 0; m < config.methods.size(); ++m) {
        const RunRecord& r =
            records[(p * config.methods.size() + m) * cells + c];
        out << ' ' << cell_marker(r) << " | "
            << (r.status == "converged"
                    ? fmt("%.2f", r.setup_seconds + r.solve_seconds)
                    : std::string("NA"))
            << " |";
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string record_line(const RunRecord& r) {
  std::ostringstream out;
  out << r.problem << "  " << method_label(r.method);
  if (r.cf) out << "  cf=" << fmt("%g", *r.cf);
  if (r.nc) out << "  nc=" << *r.nc;
  out << "  its=" << r.its << "  setup=" << fmt("%.3f", r.setup_seconds)
      << "s  solve=" << fmt("%.3f", r.solve_seconds)
      << "s  relres=" << fmt("%.3e", r.relres) << "  " << r.status
      << "  nnz(S)=" << r.nnz_smoother << "  nnz(Ac~)=" << r.nnz_coarse;
  if (r.diag_ratio) out << "  diag_ratio=" << fmt("%.3e", *r.diag_ratio);
  if (r.coarse_unsym_estimate) {
    out << "  coarse_condest=" << fmt("%.3e", *r.coarse_unsym_estimate);
  }
  return out.str();
}

}  // namespace gmg::bench
