# Copyright contributors to the gmg project
# SPDX-License-Identifier: Apache-2.0
"""Two-grid aggregation AMG preconditioner and GMRES solver."""

from gmg._core import (
    GmgError,
    SolveResult,
    SparseMatrix,
    TwoGrid,
    aggregate_matching,
    aggregate_strength,
    galerkin_coarse,
    generate_problem,
    nested_dissection,
    prolongate,
    read_matrix_market,
    restrict,
    solve,
    spmv,
    transpose,
    write_matrix_market,
)

__all__ = [
    "GmgError",
    "SolveResult",
    "SparseMatrix",
    "TwoGrid",
    "aggregate_matching",
    "aggregate_strength",
    "galerkin_coarse",
    "generate_problem",
    "nested_dissection",
    "prolongate",
    "read_matrix_market",
    "restrict",
    "solve",
    "spmv",
    "transpose",
    "write_matrix_market",
]
