// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "gmg/aggregation.hpp"
#include "gmg/bench.hpp"
#include "gmg/gmres.hpp"
#include "gmg/matrix_market.hpp"
#include "gmg/ordering.hpp"
#include "gmg/problem.hpp"
#include "gmg/twogrid.hpp"

namespace py = pybind11;

using gmg::DenseVector;
using gmg::index_t;
using gmg::SparseMatrix;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<index_t> to_index_array(const std::vector<index_t>& v) {
  py::array_t<index_t> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

gmg::AggregateMap map_from_object(const py::object& part) {
  return gmg::AggregateMap::from_part(part.cast<std::vector<index_t>>());
}

std::string status_name(gmg::SolveStatus s) {
  switch (s) {
    case gmg::SolveStatus::converged:
      return "converged";
    case gmg::SolveStatus::max_iters:
      return "max_iters";
    case gmg::SolveStatus::breakdown:
      return "breakdown";
  }
  return "unknown";
}

struct PySolveResult {
  std::vector<double> x;
  std::string status;
  int iterations = 0;
  std::vector<double> residual_history;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
  index_t nc = 0;
};

gmg::TwoGridConfig make_config(const std::string& aggregation, double beta,
                               std::optional<double> cf,
                               std::optional<index_t> nc,
                               std::optional<int> grid_dim,
                               const std::string& ordering,
                               const std::string& coarse_mode,
                               double coarse_tol) {
  gmg::TwoGridConfig cfg;
  if (aggregation == "matching") {
    cfg.aggregation = gmg::AggregationScheme::matching;
  } else if (aggregation == "strength") {
    cfg.aggregation = gmg::AggregationScheme::strength;
  } else {
    throw gmg::ContractError("aggregation must be 'matching' or 'strength'");
  }
  cfg.strength_beta = beta;
  cfg.cf = cf;
  cfg.explicit_nc = nc;
  cfg.grid_dim = grid_dim;
  if (ordering == "natural") {
    cfg.smoother_ordering = gmg::OrderingKind::natural;
  } else if (ordering == "nested-dissection") {
    cfg.smoother_ordering = gmg::OrderingKind::nested_dissection;
  } else {
    throw gmg::ContractError(
        "ordering must be 'natural' or 'nested-dissection'");
  }
  if (coarse_mode == "exact") {
    cfg.coarse_mode = gmg::CoarseMode::exact;
  } else if (coarse_mode == "ilut") {
    cfg.coarse_mode = gmg::CoarseMode::ilut;
  } else {
    throw gmg::ContractError("coarse_mode must be 'exact' or 'ilut'");
  }
  cfg.coarse_tol = coarse_tol;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-grid aggregation AMG preconditioner and GMRES solver";

  py::register_exception<gmg::Error>(m, "GmgError");

  py::class_<SparseMatrix>(m, "SparseMatrix")
      .def_static(
          "from_triplets",
          [](index_t rows, index_t cols, const std::vector<index_t>& i,
             const std::vector<index_t>& j, const std::vector<double>& v) {
            if (i.size() != j.size() || i.size() != v.size()) {
              throw gmg::ContractError("triplet arrays must match in length");
            }
            std::vector<gmg::Triplet> triplets(i.size());
            for (std::size_t k = 0; k < i.size(); ++k) {
              triplets[k] = {i[k], j[k], v[k]};
            }
            return SparseMatrix::from_triplets(rows, cols, std::move(triplets));
          },
          py::arg("rows"), py::arg("cols"), py::arg("i"), py::arg("j"),
          py::arg("v"))
      .def_static(
          "from_csr",
          [](index_t rows, index_t cols, const std::vector<index_t>& indptr,
             const std::vector<index_t>& indices,
             const std::vector<double>& values) {
            return SparseMatrix(rows, cols, indptr, indices, values);
          },
          py::arg("rows"), py::arg("cols"), py::arg("indptr"),
          py::arg("indices"), py::arg("values"))
      .def_static("identity", &SparseMatrix::identity, py::arg("n"))
      .def_property_readonly("rows", &SparseMatrix::rows)
      .def_property_readonly("cols", &SparseMatrix::cols)
      .def_property_readonly("nnz", &SparseMatrix::nnz)
      .def("csr",
           [](const SparseMatrix& a) {
             return py::make_tuple(
                 to_index_array({a.row_offsets().begin(),
                                 a.row_offsets().end()}),
                 to_index_array({a.col_indices().begin(),
                                 a.col_indices().end()}),
                 to_array({a.values().begin(), a.values().end()}));
           })
      .def("to_dense",
           [](const SparseMatrix& a) {
             const std::vector<double> dense = to_dense(a);
             py::array_t<double> out({a.rows(), a.cols()});
             std::copy(dense.begin(), dense.end(), out.mutable_data());
             return out;
           })
      .def("coeff", &SparseMatrix::coeff, py::arg("i"), py::arg("j"))
      .def("__eq__",
           [](const SparseMatrix& a, const SparseMatrix& b) { return a == b; })
      .def("__repr__", [](const SparseMatrix& a) {
        return "<SparseMatrix " + std::to_string(a.rows()) + "x" +
               std::to_string(a.cols()) + ", nnz=" + std::to_string(a.nnz()) +
               ">";
      });

  m.def(
      "spmv",
      [](const SparseMatrix& a, const std::vector<double>& x) {
        return to_array(spmv(a, x));
      },
      py::arg("a"), py::arg("x"));
  m.def("transpose", [](const SparseMatrix& a) { return transpose(a); },
        py::arg("a"));

  m.def("read_matrix_market", &gmg::read_matrix_market_file, py::arg("path"));
  m.def("write_matrix_market", &gmg::write_matrix_market_file, py::arg("a"),
        py::arg("symmetric_hint"), py::arg("path"));

  m.def(
      "generate_problem",
      [](const std::string& case_name, index_t n, double jump) {
        const auto spec = gmg::bench::make_case(case_name, n, jump);
        if (!spec) {
          throw gmg::ContractError("unknown case '" + case_name + "'");
        }
        gmg::ProblemInstance problem = gmg::discretize(*spec);
        return py::make_tuple(std::move(problem.matrix),
                              to_array(problem.rhs), spec->dim);
      },
      py::arg("case_name"), py::arg("n"), py::arg("jump") = 1e3,
      "Returns (matrix, rhs, dim) for dc1-2d, dc1-3d, dcc1-2d or dcc2-3d");

  m.def(
      "aggregate_matching",
      [](const SparseMatrix& a, index_t target_nc) {
        return to_index_array(aggregate_by_matching(a, target_nc).part);
      },
      py::arg("a"), py::arg("target_nc"));
  m.def(
      "aggregate_strength",
      [](const SparseMatrix& a, double beta) {
        return to_index_array(aggregate_by_strength(a, beta).part);
      },
      py::arg("a"), py::arg("beta") = 0.25);
  m.def(
      "galerkin_coarse",
      [](const SparseMatrix& a, const py::object& part) {
        return galerkin_coarse(a, map_from_object(part));
      },
      py::arg("a"), py::arg("part"));
  m.def(
      "prolongate",
      [](const py::object& part, const std::vector<double>& x_c) {
        return to_array(prolongate(map_from_object(part), x_c));
      },
      py::arg("part"), py::arg("x_c"));
  m.def(
      "restrict",
      [](const py::object& part, const std::vector<double>& y) {
        return to_array(gmg::restrict(map_from_object(part), y));
      },
      py::arg("part"), py::arg("y"));
  m.def(
      "nested_dissection",
      [](const SparseMatrix& a) {
        return to_index_array(gmg::nested_dissection(a).forward);
      },
      py::arg("a"), "Old-to-new position map of the dissection ordering");

  py::class_<gmg::TwoGridPreconditioner>(m, "TwoGrid")
      .def(py::init([](const SparseMatrix& a, const std::string& aggregation,
                       double beta, std::optional<double> cf,
                       std::optional<index_t> nc, std::optional<int> grid_dim,
                       const std::string& ordering,
                       const std::string& coarse_mode, double coarse_tol) {
             auto [p, report] = build_two_grid(
                 a, make_config(aggregation, beta, cf, nc, grid_dim, ordering,
                                coarse_mode, coarse_tol));
             return p;
           }),
           py::arg("a"), py::arg("aggregation") = "matching",
           py::arg("beta") = 0.25, py::arg("cf") = std::nullopt,
           py::arg("nc") = std::nullopt, py::arg("grid_dim") = std::nullopt,
           py::arg("ordering") = "natural", py::arg("coarse_mode") = "ilut",
           py::arg("coarse_tol") = 1e-4)
      .def_property_readonly(
          "nc",
          [](const gmg::TwoGridPreconditioner& p) {
            return p.aggregates.n_aggregates;
          })
      .def_property_readonly(
          "part",
          [](const gmg::TwoGridPreconditioner& p) {
            return to_index_array(p.aggregates.part);
          })
      .def(
          "apply_b_inverse",
          [](const gmg::TwoGridPreconditioner& p,
             const std::vector<double>& z) {
            return to_array(apply_b_inverse(p, z));
          },
          py::arg("z"))
      .def(
          "apply_m_inverse",
          [](const gmg::TwoGridPreconditioner& p,
             const std::vector<double>& h) {
            return to_array(apply_m_inverse(p, h));
          },
          py::arg("h"));

  py::class_<PySolveResult>(m, "SolveResult")
      .def_property_readonly("x",
                             [](const PySolveResult& r) { return to_array(r.x); })
      .def_readonly("status", &PySolveResult::status)
      .def_readonly("iterations", &PySolveResult::iterations)
      .def_property_readonly(
          "residual_history",
          [](const PySolveResult& r) { return to_array(r.residual_history); })
      .def_readonly("setup_seconds", &PySolveResult::setup_seconds)
      .def_readonly("solve_seconds", &PySolveResult::solve_seconds)
      .def_readonly("nc", &PySolveResult::nc)
      .def("__repr__", [](const PySolveResult& r) {
        return "<SolveResult " + r.status +
               ", its=" + std::to_string(r.iterations) + ">";
      });

  m.def(
      "solve",
      [](const SparseMatrix& a, const std::vector<double>& b,
         const std::string& method, std::optional<double> cf,
         std::optional<index_t> nc, std::optional<int> grid_dim,
         double coarse_tol, double beta, const std::string& aggregation,
         int restart, int maxit, double tol) {
        gmg::PreconditionerFn precond = gmg::no_preconditioner();
        gmg::TwoGridPreconditioner p;
        PySolveResult result;
        if (method != "none") {
          const auto parsed = gmg::bench::parse_method(method);
          if (!parsed) {
            throw gmg::ContractError("unknown method '" + method + "'");
          }
          const bool exact = parsed == gmg::bench::Method::egmg_no ||
                             parsed == gmg::bench::Method::egmg_nd;
          const bool nd = parsed == gmg::bench::Method::gmg_nd ||
                          parsed == gmg::bench::Method::egmg_nd;
          auto [built, setup] = build_two_grid(
              a, make_config(aggregation, beta, cf, nc, grid_dim,
                             nd ? "nested-dissection" : "natural",
                             exact ? "exact" : "ilut", coarse_tol));
          p = std::move(built);
          result.setup_seconds = setup.setup_seconds;
          result.nc = setup.n_aggregates;
          precond = [&p](const DenseVector& z) { return apply_b_inverse(p, z); };
        }
        gmg::SolverConfig cfg;
        cfg.restart_m = restart;
        cfg.max_total_iters = maxit;
        cfg.rel_tol = tol;
        auto [x, report] =
            gmres(a, b, precond, DenseVector(a.rows(), 0.0), cfg);
        result.x = std::move(x);
        result.status = status_name(report.status);
        result.iterations = report.iterations;
        result.residual_history = std::move(report.residual_history);
        result.solve_seconds = report.solve_seconds;
        return result;
      },
      py::arg("a"), py::arg("b"), py::arg("method") = "gmg-no",
      py::arg("cf") = std::nullopt, py::arg("nc") = std::nullopt,
      py::arg("grid_dim") = std::nullopt, py::arg("coarse_tol") = 1e-4,
      py::arg("beta") = 0.25, py::arg("aggregation") = "matching",
      py::arg("restart") = 30, py::arg("maxit") = 600, py::arg("tol") = 1e-7,
      "Left-preconditioned GMRES with the two-grid preconditioner");
}
