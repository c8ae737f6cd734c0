// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#ifndef GMG_AGGREGATION_HPP
#define GMG_AGGREGATION_HPP

#include "gmg/sparse.hpp"

namespace gmg {

/// Disjoint cover of the fine nodes by aggregates. part[i] is the aggregate
/// that fine node i belongs to; every id in [0, n_aggregates) occurs at least
/// once. The map is the implicit representation of the boolean interpolation
/// operator P (one unit entry per row), which is never materialized.
struct AggregateMap {
  std::vector<index_t> part;
  index_t n_aggregates = 0;
  std::vector<index_t> sizes;

  /// Validates surjectivity onto [0, max(part)+1) and fills in sizes.
  static AggregateMap from_part(std::vector<index_t> part);
  static AggregateMap identity(index_t n);

  index_t fine_size() const { return static_cast<index_t>(part.size()); }
};

/// Undirected weighted adjacency of a square matrix: symmetric pattern,
/// no self loops, edge weight |a_ij| + |a_ji|.
struct WeightedGraph {
  index_t n = 0;
  std::vector<index_t> offsets{0};
  std::vector<index_t> neighbors;
  std::vector<double> weights;

  static WeightedGraph from_matrix(const SparseMatrix& a);

  std::span<const index_t> adj(index_t v) const {
    return {neighbors.data() + offsets[v], neighbors.data() + offsets[v + 1]};
  }
  std::span<const double> adj_weights(index_t v) const {
    return {weights.data() + offsets[v], weights.data() + offsets[v + 1]};
  }
};

/// Greedy heavy-edge matching: nodes are visited in ascending index and each
/// unmatched node pairs with its heaviest unmatched neighbor (ties go to the
/// smaller index). Returns partner per node, self for unmatched.
/// With min_relative_weight > 0 an edge is only eligible when its weight is
/// at least that fraction of the heavier endpoint's maximum incident weight,
/// which keeps pairs from forming across weak couplings.
std::vector<index_t> match_heavy_edge(const WeightedGraph& g,
                                      double min_relative_weight = 0.0);

/// Coarsens by repeated matching and pairwise contraction until exactly
/// target_nc groups remain or a pass produces no pairs; the final pass
/// contracts only the heaviest pairs needed. Matching passes use a relative
/// strength threshold so aggregates follow the strong couplings of
/// discontinuous problems instead of straddling coefficient jumps.
AggregateMap aggregate_by_matching(const SparseMatrix& a, index_t target_nc);

/// Classical strength-of-connection aggregation with strong/weak threshold
/// beta in (0, 1]: node j is strong for i when a_ij < -beta * max_k |a_ik|.
AggregateMap aggregate_by_strength(const SparseMatrix& a, double beta);

/// x = P x_c, i.e. x_i = x_c[part(i)].
DenseVector prolongate(const AggregateMap& m, const DenseVector& x_c);

/// y_c = P^T y, i.e. the sum of y over each aggregate.
DenseVector restrict(const AggregateMap& m, const DenseVector& y);

/// Galerkin coarse operator A_c = P^T A P, assembled entrywise as
/// (A_c)_{IJ} = sum of a_{kl} over k in G_I, l in G_J.
SparseMatrix galerkin_coarse(const SparseMatrix& a, const AggregateMap& m);

}  // namespace gmg

#endif  // GMG_AGGREGATION_HPP
