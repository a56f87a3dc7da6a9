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

// Small matroids and graphs shared by the test suites and the acceptance
// runner.

#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chainpoly.hpp"

namespace zoo {

struct Entry {
  std::string name;
  chainpoly::Matroid m;
};

inline chainpoly::Graph graph(int n, std::vector<chainpoly::Edge> edges) { return chainpoly::Graph(n, std::move(edges)); }

/// Every matroid here has at most 6 elements.
inline std::vector<Entry> small_matroids() {
  using namespace chainpoly;
  std::vector<Entry> out;
  for (int n = 0; n <= 5; ++n) {
    for (int r = 0; r <= n; ++r) out.push_back({"U" + std::to_string(r) + std::to_string(n), make_uniform(r, n)});
  }
  out.push_back({"U36", make_uniform(3, 6)});
  out.push_back({"K3", make_graphic(complete_graph(3))});
  out.push_back({"K4", make_graphic(complete_graph(4))});
  out.push_back({"C4", make_graphic(cycle_graph(4))});
  out.push_back({"C5", make_graphic(cycle_graph(5))});
  out.push_back({"P4", make_graphic(path_graph(4))});
  out.push_back({"diamond", make_graphic(graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}))});
  out.push_back({"theta", make_graphic(graph(2, {{0, 1}, {0, 1}, {0, 1}}))});
  out.push_back({"loopy", make_graphic(graph(3, {{0, 1}, {1, 2}, {2, 2}, {0, 1}}))});
  out.push_back({"K4*", dual(make_graphic(complete_graph(4)))});
  out.push_back({"C5*", dual(make_graphic(cycle_graph(5)))});
  out.push_back({"U12+K3", direct_sum(make_uniform(1, 2), make_graphic(complete_graph(3)))});
  out.push_back({"U11+U01", direct_sum(make_uniform(1, 1), make_uniform(0, 1))});
  out.push_back({"K4/0", contract(make_graphic(complete_graph(4)), 0)});
  out.push_back({"K4\\0", delete_element(make_graphic(complete_graph(4)), 0)});
  out.push_back({"U25/1\\3", delete_element(contract(make_uniform(2, 5), 1), 3)});
  // Non-uniform rank table: two parallel elements {0,1} next to a free pair.
  std::vector<int> ranks(16);
  for (int s = 0; s < 16; ++s) {
    const int par = (s & 3) ? 1 : 0;
    ranks[static_cast<std::size_t>(s)] = par + std::popcount(static_cast<unsigned>(s >> 2));
  }
  out.push_back({"table4", make_rank_table(4, ranks)});
  return out;
}

inline std::vector<Entry> simple_matroids(int max_n) {
  std::vector<Entry> out;
  for (auto& e : small_matroids()) {
    if (e.m.size() <= max_n && chainpoly::is_simple(e.m)) out.push_back(e);
  }
  if (max_n >= 7) {
    out.push_back({"K3+U24", chainpoly::direct_sum(chainpoly::make_graphic(chainpoly::complete_graph(3)),
                                                  chainpoly::make_uniform(2, 4))});
  }
  return out;
}

/// Every simple graph on up to `max_vertices` vertices, one per edge subset
/// of the complete graph (labelled, not up to isomorphism).
inline std::vector<chainpoly::Graph> simple_graphs(int max_vertices) {
  std::vector<chainpoly::Graph> out;
  for (int n = 1; n <= max_vertices; ++n) {
    const auto all = chainpoly::complete_graph(n).edges();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
      std::vector<chainpoly::Edge> edges;
      for (std::size_t e = 0; e < all.size(); ++e) {
        if ((mask >> e) & 1) edges.push_back(all[e]);
      }
      out.emplace_back(n, edges);
    }
  }
  return out;
}

}  // namespace zoo
