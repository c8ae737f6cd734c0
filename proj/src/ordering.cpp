// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#include "gmg/ordering.hpp"

#include <algorithm>
#include <vector>

#include "gmg/aggregation.hpp"

namespace gmg {

namespace {

// Recursive bisection state over the symmetrized adjacency pattern.
// Subsets are stamped with an epoch so membership tests are O(1).
class Dissector {
 public:
  Dissector(const WeightedGraph& g, index_t leaf_size)
      : g_(g), leaf_(leaf_size), stamp_(g.n, 0) {
    order_.reserve(g.n);
  }

  std::vector<index_t> run() {
    std::vector<index_t> all(g_.n);
    for (index_t v = 0; v < g_.n; ++v) all[v] = v;
    dissect(all);
    return std::move(order_);
  }

 private:
  void dissect(std::vector<index_t>& verts) {
    if (static_cast<index_t>(verts.size()) <= leaf_) {
      order_.insert(order_.end(), verts.begin(), verts.end());
      return;
    }
    const index_t tag = ++epoch_;
    for (index_t v : verts) stamp_[v] = tag;

    std::vector<std::vector<index_t>> comps = components(verts, tag);
    if (comps.size() > 1) {
      for (auto& comp : comps) dissect(comp);
      return;
    }

    const index_t root = pseudo_peripheral(verts, tag);
    std::vector<index_t> bfs = level_order(root, tag);
    const std::size_t cut = bfs.size() / 2;
    std::vector<index_t> first(bfs.begin(), bfs.begin() + cut);
    std::vector<index_t> second(bfs.begin() + cut, bfs.end());
    std::sort(first.begin(), first.end());
    std::sort(second.begin(), second.end());

    const index_t first_tag = ++epoch_;
    for (index_t v : first) stamp_[v] = first_tag;
    std::vector<index_t> separator;
    std::vector<index_t> interior;
    for (index_t v : second) {
      bool boundary = false;
      for (index_t u : g_.adj(v)) {
        if (stamp_[u] == first_tag) {
          boundary = true;
          break;
        }
      }
      (boundary ? separator : interior).push_back(v);
    }
    dissect(first);
    dissect(interior);
    order_.insert(order_.end(), separator.begin(), separator.end());
  }

  // Connected components of the stamped subset, each sorted ascending,
  // listed by smallest contained vertex.
  std::vector<std::vector<index_t>> components(
      const std::vector<index_t>& verts, index_t tag) {
    const index_t seen = ++epoch_;
    std::vector<std::vector<index_t>> comps;
    for (index_t s : verts) {
      if (stamp_[s] != tag) continue;  // already claimed by a component
      std::vector<index_t> comp{s};
      stamp_[s] = seen;
      for (std::size_t head = 0; head < comp.size(); ++head) {
        for (index_t u : g_.adj(comp[head])) {
          if (stamp_[u] == tag) {
            stamp_[u] = seen;
            comp.push_back(u);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
    // Components consumed the tag; restore it for the caller.
    for (const auto& comp : comps) {
      for (index_t v : comp) stamp_[v] = tag;
    }
    return comps;
  }

  // Breadth-first level sets, ascending inside each level.
  std::vector<std::vector<index_t>> levels(index_t root, index_t tag) {
    const index_t seen = ++epoch_;
    std::vector<std::vector<index_t>> out;
    std::vector<index_t> frontier{root};
    stamp_[root] = seen;
    while (!frontier.empty()) {
      out.push_back(frontier);
      std::vector<index_t> next;
      for (index_t v : frontier) {
        for (index_t u : g_.adj(v)) {
          if (stamp_[u] == tag) {
            stamp_[u] = seen;
            next.push_back(u);
          }
        }
      }
      std::sort(next.begin(), next.end());
      frontier = std::move(next);
    }
    for (const auto& level : out) {
      for (index_t v : level) stamp_[v] = tag;
    }
    return out;
  }

  std::vector<index_t> level_order(index_t root, index_t tag) {
    std::vector<index_t> flat;
    for (const auto& level : levels(root, tag)) {
      flat.insert(flat.end(), level.begin(), level.end());
    }
    return flat;
  }

  index_t induced_degree(index_t v, index_t tag) const {
    index_t deg = 0;
    for (index_t u : g_.adj(v)) {
      if (stamp_[u] == tag) ++deg;
    }
    return deg;
  }

  index_t min_degree_vertex(const std::vector<index_t>& verts, index_t tag) {
    index_t best = verts.front();
    index_t best_deg = induced_degree(best, tag);
    for (index_t v : verts) {
      const index_t deg = induced_degree(v, tag);
      if (deg < best_deg || (deg == best_deg && v < best)) {
        best = v;
        best_deg = deg;
      }
    }
    return best;
  }

  index_t pseudo_peripheral(const std::vector<index_t>& verts, index_t tag) {
    index_t v = min_degree_vertex(verts, tag);
    std::size_t ecc = levels(v, tag).size();
    for (;;) {
      const std::vector<std::vector<index_t>> lv = levels(v, tag);
      const index_t u = min_degree_vertex(lv.back(), tag);
      const std::size_t u_ecc = levels(u, tag).size();
      if (u_ecc > ecc) {
        v = u;
        ecc = u_ecc;
      } else {
        return v;
      }
    }
  }

  const WeightedGraph& g_;
  index_t leaf_;
  std::vector<index_t> stamp_;
  index_t epoch_ = 0;
  std::vector<index_t> order_;
};

}  // namespace

Permutation nested_dissection(const SparseMatrix& a, index_t leaf_size) {
  if (!a.is_square()) {
    throw ContractError("nested_dissection: matrix must be square");
  }
  if (leaf_size < 1) {
    throw ContractError("nested_dissection: leaf size must be at least 1");
  }
  const WeightedGraph g = WeightedGraph::from_matrix(a);
  Dissector dissector(g, leaf_size);
  const std::vector<index_t> order = dissector.run();
  std::vector<index_t> forward(a.rows());
  for (index_t pos = 0; pos < a.rows(); ++pos) forward[order[pos]] = pos;
  return Permutation::from_forward(std::move(forward));
}

Permutation make_ordering(const SparseMatrix& a, OrderingKind kind) {
  if (!a.is_square()) {
    throw ContractError("make_ordering: matrix must be square");
  }
  switch (kind) {
    case OrderingKind::natural:
      return Permutation::identity(a.rows());
    case OrderingKind::nested_dissection:
      return nested_dissection(a);
  }
  throw ContractError("make_ordering: unknown ordering kind");
}

}  // namespace gmg
