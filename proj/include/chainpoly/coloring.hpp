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

// Coupled k-multicolorings of a simple graph and the polynomial counting
// them.
//
// A k-tuple of vertex colorings (f_1, ..., f_k) is coupled when every edge
// {a, b} satisfies, writing E_i for "f_i(a) = f_i(b)":
//
//   k even:  E_1 => E_2,  E_1 & E_3 => E_4,  ...,  E_1 & ... & E_{k-1} => E_k
//   k odd:   the same lines up to  E_1 & ... & E_{k-2} => E_{k-1},  plus
//            E_1 & E_3 & ... & E_{k-2} => not E_k
//
// (the conjunctions run over odd indices). For k = 1 this is a proper
// coloring. The count is (t_1 ... t_k)^{c(G)} chi^k_{M(G)}(t_k, ..., t_1).

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "chainpoly/chain_enum.hpp"
#include "chainpoly/errors.hpp"
#include "chainpoly/graph.hpp"
#include "chainpoly/invariants.hpp"
#include "chainpoly/matroid.hpp"
#include "chainpoly/polynomial.hpp"

namespace chainpoly {

/// k vertex colorings; colors[i][v] lies in [0, palette[i]).
struct ColorAssignment {
  std::vector<int> palette;
  std::vector<std::vector<int>> colors;

  int k() const noexcept { return static_cast<int>(palette.size()); }
};

/// The edge condition, one implication per displayed line. equal[i] is
/// whether f_{i+1} agrees on the two endpoints.
inline bool coupled_coloring_on_edge(const std::vector<bool>& equal) {
  const int k = static_cast<int>(equal.size());
  if (k < 1) throw ContractViolation("a multicoloring needs k >= 1");
  if (k == 1) return !equal[0];
  // f_1, f_3, ..., f_last all agree.
  auto odd_agree = [&](int last) {
    for (int i = 1; i <= last; i += 2) {
      if (!equal[static_cast<std::size_t>(i - 1)]) return false;
    }
    return true;
  };
  if (k % 2 == 0) {
    for (int m = 1; m <= k / 2; ++m) {
      if (odd_agree(2 * m - 1) && !equal[static_cast<std::size_t>(2 * m - 1)]) return false;
    }
    return true;
  }
  for (int m = 1; m <= (k - 1) / 2; ++m) {
    if (odd_agree(2 * m - 1) && !equal[static_cast<std::size_t>(2 * m - 1)]) return false;
  }
  return !(odd_agree(k - 2) && equal[static_cast<std::size_t>(k - 1)]);
}

inline void require_simple(const Graph& g) {
  if (!g.is_simple()) throw HypothesisViolation("coupled multicolorings are defined on simple graphs");
}

inline bool is_coupled_coloring(const Graph& g, const ColorAssignment& ca) {
  require_simple(g);
  const int k = ca.k();
  if (k < 1) throw ContractViolation("a multicoloring needs k >= 1");
  if (ca.colors.size() != ca.palette.size()) throw ContractViolation("one coloring per palette entry");
  for (int i = 0; i < k; ++i) {
    const auto& f = ca.colors[static_cast<std::size_t>(i)];
    if (f.size() != static_cast<std::size_t>(g.num_vertices())) throw ContractViolation("coloring must cover every vertex");
    for (int c : f) {
      if (c < 0 || c >= ca.palette[static_cast<std::size_t>(i)]) throw ContractViolation("color outside its palette");
    }
  }
  std::vector<bool> equal(static_cast<std::size_t>(k));
  for (const auto& [a, b] : g.edges()) {
    for (int i = 0; i < k; ++i) {
      const auto& f = ca.colors[static_cast<std::size_t>(i)];
      equal[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(a)] == f[static_cast<std::size_t>(b)];
    }
    if (!coupled_coloring_on_edge(equal)) return false;
  }
  return true;
}

namespace detail {

inline void check_palette(const std::vector<int>& palette) {
  if (palette.empty()) throw InvalidParameters("palette must list at least one size");
  for (int t : palette) {
    if (t < 1) throw InvalidParameters("palette sizes must be positive");
  }
}

inline std::uint64_t coloring_visits(const Graph& g, const std::vector<int>& palette) {
  std::uint64_t total = 1;
  for (int t : palette) {
    const std::uint64_t p = saturating_pow(static_cast<std::uint64_t>(t), g.num_vertices());
    total = (p != 0 && total > UINT64_MAX / p) ? UINT64_MAX : total * p;
  }
  return total;
}

/// Edge-pattern form of the coupling condition: z[i] has bit e set when
/// level i "agrees" on edge e. Shared by colorings (agree = equal colors)
/// and flows (agree = zero value), whose conditions coincide as masks.
inline bool coupled_masks_ok(const std::uint64_t* z, int k) {
  std::uint64_t all_odd = ~std::uint64_t{0};
  if (k % 2 == 0) {
    for (int m = 1; m <= k / 2; ++m) {
      all_odd &= z[2 * m - 2];
      if ((all_odd & ~z[2 * m - 1]) != 0) return false;
    }
    return true;
  }
  for (int m = 1; m <= (k - 1) / 2; ++m) {
    all_odd &= z[2 * m - 2];
    if ((all_odd & ~z[2 * m - 1]) != 0) return false;
  }
  return (all_odd & z[k - 1]) == 0;
}

/// Sum over one pattern per level, of the product of multiplicities,
/// restricted to pattern tuples passing coupled_masks_ok.
inline std::uint64_t combine_pattern_histograms(
    const std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>>& hist) {
  const int k = static_cast<int>(hist.size());
  std::vector<std::uint64_t> z(static_cast<std::size_t>(k));
  std::uint64_t total = 0;
  auto rec = [&](auto&& self, int level, std::uint64_t weight) -> void {
    if (level == k) {
      if (coupled_masks_ok(z.data(), k)) total += weight;
      return;
    }
    for (const auto& [mask, count] : hist[static_cast<std::size_t>(level)]) {
      z[static_cast<std::size_t>(level)] = mask;
      self(self, level + 1, weight * count);
    }
  };
  rec(rec, 0, 1);
  return total;
}

}  // namespace detail

/// Number of coupled k-multicolorings with palette sizes t_1..t_k. Each
/// coloring f_i is reduced to its edge-agreement pattern; the count is
/// exact because the coupling condition reads nothing else.
inline std::uint64_t count_coupled_colorings(const Graph& g, const std::vector<int>& palette,
                                             const WorkBudget& budget = WorkBudget::from_env()) {
  require_simple(g);
  detail::check_palette(palette);
  require_visits(detail::coloring_visits(g, palette), budget, "coupled coloring count");
  const int n = g.num_vertices();
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> hist;
  std::uint64_t visits = 0;
  for (int t : palette) {
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    std::vector<int> f(static_cast<std::size_t>(n), 0);
    while (true) {
      std::uint64_t mask = 0;
      for (int e = 0; e < g.num_edges(); ++e) {
        const auto& [a, b] = g.edge(e);
        if (f[static_cast<std::size_t>(a)] == f[static_cast<std::size_t>(b)]) mask |= std::uint64_t{1} << e;
      }
      ++counts[mask];
      ++visits;
      int v = 0;
      while (v < n && ++f[static_cast<std::size_t>(v)] == t) f[static_cast<std::size_t>(v++)] = 0;
      if (v == n) break;
    }
    hist.emplace_back(counts.begin(), counts.end());
  }
  budget.record(visits);
  return detail::combine_pattern_histograms(hist);
}

/// Reference count: every tuple of vertex functions, tested with
/// is_coupled_coloring.
inline std::uint64_t count_coupled_colorings_naive(const Graph& g, const std::vector<int>& palette,
                                                   const WorkBudget& budget = WorkBudget::from_env()) {
  require_simple(g);
  detail::check_palette(palette);
  require_visits(detail::coloring_visits(g, palette), budget, "naive coupled coloring count");
  const int n = g.num_vertices();
  const int k = static_cast<int>(palette.size());
  ColorAssignment ca{palette, std::vector<std::vector<int>>(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(n), 0))};
  std::uint64_t count = 0;
  std::uint64_t visits = 0;
  while (true) {
    ++visits;
    if (is_coupled_coloring(g, ca)) ++count;
    if (n == 0) break;
    int i = 0;
    int v = 0;
    // Mixed-radix increment over (function, vertex) digits.
    while (i < k) {
      auto& digit = ca.colors[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)];
      if (++digit < palette[static_cast<std::size_t>(i)]) break;
      digit = 0;
      if (++v == n) {
        v = 0;
        ++i;
      }
    }
    if (i == k) break;
  }
  budget.record(visits);
  return count;
}

/// (t_1 ... t_k)^{c(G)} chi^k_{M(G)}(t_k, ..., t_1) over (t1..tk).
inline MultiPoly coupled_chromatic_poly(const Graph& g, int k, const WorkBudget& budget = WorkBudget::from_env()) {
  require_simple(g);
  const auto vars = indexed_vars("t", k);
  const Matroid m = make_graphic(g);
  const auto chi = chain_characteristic(m, k, CharRoute::definition, budget);
  std::map<std::string, MultiPoly> reverse;
  for (int i = 1; i <= k; ++i) {
    reverse.emplace(vars[static_cast<std::size_t>(i - 1)],
                    MultiPoly::variable(vars, vars[static_cast<std::size_t>(k - i)]));
  }
  const int c = components(g, g.all_edges());
  Exponents e(static_cast<std::size_t>(k), static_cast<std::uint32_t>(c));
  MultiPoly factor(vars);
  factor.add_term(e, 1);
  return chi.substitute(reverse).with_vars(vars) * factor;
}

/// The same polynomial through the chain Tutte polynomial:
/// (-1)^{k rk(G)} (t_1 ... t_k)^{c(G)} T^k(1 - t_k, ..., 1 - t_1; 0, ..., 0).
inline MultiPoly coupled_chromatic_poly_tutte(const Graph& g, int k, const WorkBudget& budget = WorkBudget::from_env()) {
  require_simple(g);
  const auto vars = indexed_vars("t", k);
  const Matroid m = make_graphic(g);
  const auto t = chain_tutte(m, k, budget);
  std::map<std::string, MultiPoly> bind;
  for (int i = 1; i <= k; ++i) {
    const auto& tv = vars[static_cast<std::size_t>(k - i)];
    bind.emplace("x" + std::to_string(i), MultiPoly::constant(vars, 1) - MultiPoly::variable(vars, tv));
    bind.emplace("y" + std::to_string(i), MultiPoly(vars));
  }
  const int c = components(g, g.all_edges());
  Exponents e(static_cast<std::size_t>(k), static_cast<std::uint32_t>(c));
  MultiPoly factor(vars);
  factor.add_term(e, (k * m.rank()) % 2 == 0 ? 1 : -1);
  return t.substitute(bind).with_vars(vars) * factor;
}

/// Chromatic polynomial by deletion-contraction, over `t1`. Works on
/// multigraphs: loops give 0 and parallel copies are dropped.
inline MultiPoly classic_chromatic_poly(const Graph& g) {
  const std::vector<std::string> vars{"t1"};
  auto rec = [&](auto&& self, int n, std::vector<Edge> edges) -> MultiPoly {
    std::vector<Edge> simple;
    for (auto [u, v] : edges) {
      if (u == v) return MultiPoly(vars);
      Edge e = std::minmax(u, v);
      if (std::find(simple.begin(), simple.end(), e) == simple.end()) simple.push_back(e);
    }
    if (simple.empty()) {
      MultiPoly p(vars);
      p.add_term({static_cast<std::uint32_t>(n)}, 1);
      return p;
    }
    const Edge e = simple.back();
    simple.pop_back();
    // Contract e: merge e.second into e.first, renumber above it.
    auto relabel = [&](int x) {
      if (x == e.second) x = e.first;
      return x > e.second ? x - 1 : x;
    };
    std::vector<Edge> contracted;
    for (auto [u, v] : simple) contracted.emplace_back(relabel(u), relabel(v));
    return self(self, n, simple) - self(self, n - 1, contracted);
  };
  return rec(rec, g.num_vertices(), g.edges());
}

}  // namespace chainpoly
