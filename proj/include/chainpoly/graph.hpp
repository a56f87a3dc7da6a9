// Copyright 2026 The chainpoly Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chainpoly/errors.hpp"
#include "chainpoly/subset.hpp"

namespace chainpoly {

using Edge = std::pair<int, int>;

/// Undirected multigraph. Loops and parallel edges are allowed; edges are
/// identified by their index in `edges()`.
class Graph {
 public:
  Graph() = default;
  Graph(int n_vertices, std::vector<Edge> edges)
      : n_vertices_(n_vertices), edges_(std::move(edges)) {
    if (n_vertices_ < 0) throw ContractViolation("negative vertex count");
    if (edges_.size() > static_cast<std::size_t>(kMaxGroundSize)) {
      throw InvalidParameters("graphs are limited to " + std::to_string(kMaxGroundSize) + " edges");
    }
    for (const auto& [u, v] : edges_) {
      if (u < 0 || v < 0 || u >= n_vertices_ || v >= n_vertices_) {
        throw ContractViolation("edge {" + std::to_string(u) + "," + std::to_string(v) +
                                "} has a vertex outside [0, " + std::to_string(n_vertices_) + ")");
      }
    }
  }

  int num_vertices() const noexcept { return n_vertices_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }

  /// No loops and no repeated vertex pair.
  bool is_simple() const {
    std::set<Edge> seen;
    for (auto [u, v] : edges_) {
      if (u == v) return false;
      if (!seen.insert(std::minmax(u, v)).second) return false;
    }
    return true;
  }

  Subset all_edges() const { return Subset::full(num_edges()); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_vertices_ = 0;
  std::vector<Edge> edges_;
};

namespace detail {

struct DisjointSets {
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
  std::vector<int> parent;
};

inline void check_edge_subset(const Graph& g, const Subset& s) {
  if (s.width() != g.num_edges()) {
    throw ContractViolation("edge subset width " + std::to_string(s.width()) +
                            " does not match " + std::to_string(g.num_edges()) + " edges");
  }
}

}  // namespace detail

/// Rank of an edge set given as raw bits (no width check).
inline int graph_rank_bits(const Graph& g, std::uint64_t bits) {
  detail::DisjointSets ds(g.num_vertices());
  int rank = 0;
  for (; bits != 0; bits &= bits - 1) {
    const auto& [u, v] = g.edges()[static_cast<std::size_t>(std::countr_zero(bits))];
    if (ds.unite(u, v)) ++rank;
  }
  return rank;
}

/// Number of connected components of (V, A) on all vertices.
inline int components(const Graph& g, const Subset& edge_subset) {
  detail::check_edge_subset(g, edge_subset);
  return g.num_vertices() - graph_rank_bits(g, edge_subset.bits());
}

/// |V| - c(A).
inline int graph_rank(const Graph& g, const Subset& edge_subset) {
  detail::check_edge_subset(g, edge_subset);
  return graph_rank_bits(g, edge_subset.bits());
}

/// Directed copy of a graph: per-edge (tail, head).
class Orientation {
 public:
  Orientation() = default;
  Orientation(const Graph& g, std::vector<Edge> arcs) : arcs_(std::move(arcs)) {
    if (arcs_.size() != g.edges().size()) {
      throw ContractViolation("orientation must give one arc per edge");
    }
    for (std::size_t e = 0; e < arcs_.size(); ++e) {
      if (std::minmax(arcs_[e].first, arcs_[e].second) !=
          std::minmax(g.edges()[e].first, g.edges()[e].second)) {
        throw ContractViolation("arc " + std::to_string(e) + " does not match its underlying edge");
      }
    }
  }

  /// Each edge {a, b} oriented from the smaller to the larger index.
  static Orientation standard(const Graph& g) {
    std::vector<Edge> arcs;
    for (auto [u, v] : g.edges()) arcs.emplace_back(std::min(u, v), std::max(u, v));
    return Orientation(g, std::move(arcs));
  }

  /// Flips the arcs whose bit is set in `flip`.
  static Orientation flipped(const Graph& g, std::uint64_t flip) {
    std::vector<Edge> arcs = standard(g).arcs_;
    for (std::size_t e = 0; e < arcs.size(); ++e) {
      if ((flip >> e) & 1U) std::swap(arcs[e].first, arcs[e].second);
    }
    return Orientation(g, std::move(arcs));
  }

  const std::vector<Edge>& arcs() const noexcept { return arcs_; }
  int tail(int e) const { return arcs_.at(static_cast<std::size_t>(e)).first; }
  int head(int e) const { return arcs_.at(static_cast<std::size_t>(e)).second; }

 private:
  std::vector<Edge> arcs_;
};

inline Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph(n, std::move(edges));
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges));
}

inline Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

}  // namespace chainpoly
