// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#ifndef GMG_ORDERING_HPP
#define GMG_ORDERING_HPP

#include "gmg/sparse.hpp"

namespace gmg {

enum class OrderingKind { natural, nested_dissection };

constexpr index_t kNestedDissectionLeaf = 32;

/// Nested dissection by recursive bisection: breadth-first level sets from a
/// pseudo-peripheral node split each component into two balanced halves, the
/// boundary vertices of the second half form the separator and are ordered
/// last. Components of a disconnected graph are ordered independently.
/// Deterministic: every tie is broken by the smaller vertex index.
Permutation nested_dissection(const SparseMatrix& a,
                              index_t leaf_size = kNestedDissectionLeaf);

/// natural -> identity, nested_dissection -> default-leaf dissection.
Permutation make_ordering(const SparseMatrix& a, OrderingKind kind);

}  // namespace gmg

#endif  // GMG_ORDERING_HPP
