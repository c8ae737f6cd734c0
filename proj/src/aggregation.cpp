// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#include "gmg/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>

namespace gmg {

AggregateMap AggregateMap::from_part(std::vector<index_t> part) {
  index_t n_aggregates = 0;
  for (index_t p : part) {
    if (p < 0) throw ContractError("AggregateMap: negative aggregate id");
    n_aggregates = std::max(n_aggregates, p + 1);
  }
  std::vector<index_t> sizes(n_aggregates, 0);
  for (index_t p : part) ++sizes[p];
  for (index_t j = 0; j < n_aggregates; ++j) {
    if (sizes[j] == 0) {
      throw ContractError("AggregateMap: aggregate " + std::to_string(j) +
                          " is empty");
    }
  }
  AggregateMap m;
  m.part = std::move(part);
  m.n_aggregates = n_aggregates;
  m.sizes = std::move(sizes);
  return m;
}

AggregateMap AggregateMap::identity(index_t n) {
  std::vector<index_t> part(n);
  std::iota(part.begin(), part.end(), index_t{0});
  return from_part(std::move(part));
}

WeightedGraph WeightedGraph::from_matrix(const SparseMatrix& a) {
  if (!a.is_square()) {
    throw ContractError("WeightedGraph: matrix must be square");
  }
  const index_t n = a.rows();
  const SparseMatrix at = transpose(a);

  WeightedGraph g;
  g.n = n;
  g.offsets.assign(n + 1, 0);
  for (index_t i = 0; i < n; ++i) {
    // Merge row i of A and of A^T, both sorted by column.
    const auto c1 = a.row_cols(i);
    const auto v1 = a.row_values(i);
    const auto c2 = at.row_cols(i);
    const auto v2 = at.row_values(i);
    std::size_t k1 = 0, k2 = 0;
    while (k1 < c1.size() || k2 < c2.size()) {
      index_t col;
      double w = 0.0;
      if (k2 == c2.size() || (k1 < c1.size() && c1[k1] < c2[k2])) {
        col = c1[k1];
        w = std::abs(v1[k1++]);
      } else if (k1 == c1.size() || c2[k2] < c1[k1]) {
        col = c2[k2];
        w = std::abs(v2[k2++]);
      } else {
        col = c1[k1];
        w = std::abs(v1[k1++]) + std::abs(v2[k2++]);
      }
      if (col == i) continue;  // no self loops
      g.neighbors.push_back(col);
      g.weights.push_back(w);
    }
    g.offsets[i + 1] = static_cast<index_t>(g.neighbors.size());
  }
  return g;
}

std::vector<index_t> match_heavy_edge(const WeightedGraph& g,
                                      double min_relative_weight) {
  constexpr index_t kUnmatched = -1;
  std::vector<double> max_weight;
  if (min_relative_weight > 0.0) {
    max_weight.assign(g.n, 0.0);
    for (index_t v = 0; v < g.n; ++v) {
      for (double w : g.adj_weights(v)) {
        max_weight[v] = std::max(max_weight[v], w);
      }
    }
  }
  std::vector<index_t> partner(g.n, kUnmatched);
  for (index_t v = 0; v < g.n; ++v) {
    if (partner[v] != kUnmatched) continue;
    const auto adj = g.adj(v);
    const auto w = g.adj_weights(v);
    index_t best = kUnmatched;
    double best_w = -1.0;
    for (std::size_t k = 0; k < adj.size(); ++k) {
      const index_t u = adj[k];
      if (partner[u] != kUnmatched || u == v) continue;
      if (min_relative_weight > 0.0 &&
          w[k] < min_relative_weight * std::max(max_weight[v], max_weight[u])) {
        continue;
      }
      if (w[k] > best_w || (w[k] == best_w && u < best)) {
        best = u;
        best_w = w[k];
      }
    }
    if (best == kUnmatched) {
      partner[v] = v;
    } else {
      partner[v] = best;
      partner[best] = v;
    }
  }
  return partner;
}

namespace {

// Contracts matched pairs of g. New group ids are assigned in ascending
// order of the smaller pair endpoint; edge weights sum, self loops drop.
struct Contraction {
  std::vector<index_t> new_id;
  index_t n_groups = 0;
  WeightedGraph graph;
};

Contraction contract(const WeightedGraph& g,
                     const std::vector<index_t>& partner) {
  Contraction out;
  out.new_id.assign(g.n, -1);
  for (index_t v = 0; v < g.n; ++v) {
    if (partner[v] >= v) {
      out.new_id[v] = out.n_groups;
      if (partner[v] != v) out.new_id[partner[v]] = out.n_groups;
      ++out.n_groups;
    }
  }
  struct Edge {
    index_t u, v;
    double w;
  };
  std::vector<Edge> edges;
  edges.reserve(g.neighbors.size());
  for (index_t v = 0; v < g.n; ++v) {
    const auto adj = g.adj(v);
    const auto w = g.adj_weights(v);
    for (std::size_t k = 0; k < adj.size(); ++k) {
      const index_t nu = out.new_id[v];
      const index_t nv = out.new_id[adj[k]];
      if (nu != nv) edges.push_back({nu, nv, w[k]});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  WeightedGraph& c = out.graph;
  c.n = out.n_groups;
  c.offsets.assign(out.n_groups + 1, 0);
  std::size_t k = 0;
  for (index_t u = 0; u < out.n_groups; ++u) {
    while (k < edges.size() && edges[k].u == u) {
      const index_t v = edges[k].v;
      double w = 0.0;
      while (k < edges.size() && edges[k].u == u && edges[k].v == v) {
        w += edges[k].w;
        ++k;
      }
      c.neighbors.push_back(v);
      c.weights.push_back(w);
    }
    c.offsets[u + 1] = static_cast<index_t>(c.neighbors.size());
  }
  return out;
}

}  // namespace

AggregateMap aggregate_by_matching(const SparseMatrix& a, index_t target_nc) {
  if (!a.is_square()) {
    throw ContractError("aggregate_by_matching: matrix must be square");
  }
  const index_t n = a.rows();
  if (target_nc < 1 || target_nc > n) {
    throw ContractError("aggregate_by_matching: target_nc out of [1, N]");
  }
  // Edges lighter than this fraction of an endpoint's strongest coupling do
  // not form pairs; the jump-coefficient problems need aggregates that stay
  // inside the strongly coupled regions.
  constexpr double kStrengthThreshold = 0.3;

  std::vector<index_t> part(n);
  std::iota(part.begin(), part.end(), index_t{0});
  WeightedGraph graph = WeightedGraph::from_matrix(a);
  index_t groups = n;
  while (groups > target_nc) {
    std::vector<index_t> partner = match_heavy_edge(graph, kStrengthThreshold);
    struct Pair {
      index_t v, u;
      double w;
    };
    std::vector<Pair> pairs;
    for (index_t v = 0; v < groups; ++v) {
      if (partner[v] > v) {
        const auto adj = graph.adj(v);
        const auto wts = graph.adj_weights(v);
        double w = 0.0;
        for (std::size_t k = 0; k < adj.size(); ++k) {
          if (adj[k] == partner[v]) {
            w = wts[k];
            break;
          }
        }
        pairs.push_back({v, partner[v], w});
      }
    }
    if (pairs.empty()) break;
    // The final pass contracts only the heaviest pairs needed to land on
    // the requested count exactly.
    const index_t budget = groups - target_nc;
    if (static_cast<index_t>(pairs.size()) > budget) {
      std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        return a.w != b.w ? a.w > b.w : a.v < b.v;
      });
      for (std::size_t k = budget; k < pairs.size(); ++k) {
        partner[pairs[k].v] = pairs[k].v;
        partner[pairs[k].u] = pairs[k].u;
      }
    }
    Contraction c = contract(graph, partner);
    for (index_t i = 0; i < n; ++i) part[i] = c.new_id[part[i]];
    graph = std::move(c.graph);
    groups = c.n_groups;
  }
  return AggregateMap::from_part(std::move(part));
}

AggregateMap aggregate_by_strength(const SparseMatrix& a, double beta) {
  if (!a.is_square()) {
    throw ContractError("aggregate_by_strength: matrix must be square");
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw ContractError("aggregate_by_strength: beta must be in (0, 1]");
  }
  const index_t n = a.rows();

  // Strong sets S_i = { j != i : a_ij < -beta * max_{k != i} |a_ik| }.
  std::vector<std::vector<index_t>> strong(n);
  for (index_t i = 0; i < n; ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    double max_off = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] != i) max_off = std::max(max_off, std::abs(vals[k]));
    }
    if (max_off == 0.0) continue;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] != i && vals[k] < -beta * max_off) {
        strong[i].push_back(cols[k]);
      }
    }
  }
  std::vector<std::vector<index_t>> strong_rev(n);
  for (index_t i = 0; i < n; ++i) {
    for (index_t j : strong[i]) strong_rev[j].push_back(i);
  }

  // Repeatedly take the unmarked node with the fewest unmarked strong
  // neighbors (ties: smallest index) and aggregate it with them.
  std::vector<index_t> count(n);
  using Entry = std::pair<index_t, index_t>;  // (count, node)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (index_t i = 0; i < n; ++i) {
    count[i] = static_cast<index_t>(strong[i].size());
    heap.push({count[i], i});
  }
  std::vector<index_t> part(n, -1);
  index_t next_id = 0;
  const auto mark = [&](index_t v, index_t id) {
    part[v] = id;
    for (index_t r : strong_rev[v]) {
      if (part[r] == -1) heap.push({--count[r], r});
    }
  };
  while (!heap.empty()) {
    const auto [c, i] = heap.top();
    heap.pop();
    if (part[i] != -1 || c != count[i]) continue;  // marked or stale
    const index_t id = next_id++;
    mark(i, id);
    for (index_t j : strong[i]) {
      if (part[j] == -1) mark(j, id);
    }
  }
  return AggregateMap::from_part(std::move(part));
}

DenseVector prolongate(const AggregateMap& m, const DenseVector& x_c) {
  if (static_cast<index_t>(x_c.size()) != m.n_aggregates) {
    throw ContractError("prolongate: coarse vector size mismatch");
  }
  DenseVector x(m.part.size());
  for (std::size_t i = 0; i < m.part.size(); ++i) x[i] = x_c[m.part[i]];
  return x;
}

DenseVector restrict(const AggregateMap& m, const DenseVector& y) {
  if (y.size() != m.part.size()) {
    throw ContractError("restrict: fine vector size mismatch");
  }
  DenseVector y_c(m.n_aggregates, 0.0);
  for (std::size_t i = 0; i < m.part.size(); ++i) y_c[m.part[i]] += y[i];
  return y_c;
}

SparseMatrix galerkin_coarse(const SparseMatrix& a, const AggregateMap& m) {
  if (!a.is_square() || a.rows() != m.fine_size()) {
    throw ContractError("galerkin_coarse: dimension mismatch");
  }
  std::vector<Triplet> triplets;
  triplets.reserve(a.nnz());
  for (index_t i = 0; i < a.rows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      triplets.push_back({m.part[i], m.part[cols[k]], vals[k]});
    }
  }
  return SparseMatrix::from_triplets(m.n_aggregates, m.n_aggregates,
                                     std::move(triplets));
}

}  // namespace gmg
