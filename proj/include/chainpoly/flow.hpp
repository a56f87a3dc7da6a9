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
#include <cctype>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "chainpoly/chain_enum.hpp"
#include "chainpoly/coloring.hpp"
#include "chainpoly/errors.hpp"
#include "chainpoly/graph.hpp"
#include "chainpoly/invariants.hpp"
#include "chainpoly/matroid.hpp"
#include "chainpoly/polynomial.hpp"

namespace chainpoly {

/// Finite abelian group Z_{n_1} x ... x Z_{n_r}. Elements are encoded as
/// integers in [0, order) in mixed radix, first factor least significant;
/// 0 encodes the identity.
class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw InvalidParameters("a group needs at least one cyclic factor");
    order_ = 1;
    for (int f : factors_) {
      if (f < 1) throw InvalidParameters("cyclic factor orders must be positive");
      if (order_ > (1 << 20) / f) throw InvalidParameters("group order is limited to 2^20");
      order_ *= f;
    }
  }

  static AbelianGroup cyclic(int n) { return AbelianGroup({n}); }

  /// Parses "Z4", "Z2xZ2", "Z2 x Z3".
  static AbelianGroup parse(const std::string& text) {
    std::vector<int> factors;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < text.size() && text[i] == ' ') ++i;
    };
    skip();
    while (true) {
      if (i >= text.size() || text[i] != 'Z') throw InvalidParameters("expected Z<n> in group '" + text + "'");
      ++i;
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i || i - start > 7) throw InvalidParameters("expected a cyclic order in group '" + text + "'");
      factors.push_back(std::stoi(text.substr(start, i - start)));
      skip();
      if (i == text.size()) break;
      if (text[i] != 'x') throw InvalidParameters("expected 'x' between factors in group '" + text + "'");
      ++i;
      skip();
    }
    return AbelianGroup(std::move(factors));
  }

  const std::vector<int>& factors() const noexcept { return factors_; }
  int order() const noexcept { return order_; }
  bool is_zero(int a) const noexcept { return a == 0; }

  int add(int a, int b) const {
    int out = 0;
    int place = 1;
    for (int f : factors_) {
      out += ((a % f + b % f) % f) * place;
      a /= f;
      b /= f;
      place *= f;
    }
    return out;
  }

  int neg(int a) const {
    int out = 0;
    int place = 1;
    for (int f : factors_) {
      out += ((f - a % f) % f) * place;
      a /= f;
      place *= f;
    }
    return out;
  }

  int sub(int a, int b) const { return add(a, neg(b)); }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += "x";
      s += "Z" + std::to_string(factors_[i]);
    }
    return s;
  }

  bool operator==(const AbelianGroup&) const = default;

 private:
  std::vector<int> factors_;
  int order_ = 1;
};

/// Parses a comma separated list such as "Z2,Z2xZ2".
inline std::vector<AbelianGroup> parse_group_list(const std::string& text) {
  std::vector<AbelianGroup> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    out.push_back(AbelianGroup::parse(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

/// k edge functions, values[i][e] an encoded element of groups[i].
struct FlowAssignment {
  std::vector<AbelianGroup> groups;
  std::vector<std::vector<int>> values;

  int k() const noexcept { return static_cast<int>(groups.size()); }
};

/// Inflow equals outflow at every vertex.
inline bool satisfies_kirchhoff(const Orientation& o, int num_vertices, const AbelianGroup& group,
                                const std::vector<int>& values) {
  std::vector<int> net(static_cast<std::size_t>(num_vertices), 0);
  for (std::size_t e = 0; e < values.size(); ++e) {
    const auto [tail, head] = o.arcs()[e];
    net[static_cast<std::size_t>(head)] = group.add(net[static_cast<std::size_t>(head)], values[e]);
    net[static_cast<std::size_t>(tail)] = group.sub(net[static_cast<std::size_t>(tail)], values[e]);
  }
  return std::all_of(net.begin(), net.end(), [](int x) { return x == 0; });
}

/// The edge condition, one implication per line, zero[i] being whether the
/// (i+1)-th flow vanishes on the edge (Z_i below):
///
///   k = 1:    not Z_1
///   k even:   Z_1 => Z_2,  Z_1 & Z_3 => Z_4,  ...,  Z_1 & ... & Z_{k-1} => Z_k
///   k odd:    the lines up to Z_1 & ... & Z_{k-4} => Z_{k-3}, then
///             Z_1 & ... & Z_{k-2} => (Z_{k-1} and not Z_k)
inline bool coupled_flow_on_edge(const std::vector<bool>& zero) {
  const int k = static_cast<int>(zero.size());
  if (k < 1) throw ContractViolation("a multiflow needs k >= 1");
  auto z = [&](int i) { return static_cast<bool>(zero[static_cast<std::size_t>(i - 1)]); };
  auto odd_zero = [&](int last) {
    for (int i = 1; i <= last; i += 2) {
      if (!z(i)) return false;
    }
    return true;
  };
  if (k == 1) return !z(1);
  if (k % 2 == 0) {
    for (int m = 1; m <= k / 2; ++m) {
      if (odd_zero(2 * m - 1) && !z(2 * m)) return false;
    }
    return true;
  }
  for (int m = 1; m <= (k - 3) / 2; ++m) {
    if (odd_zero(2 * m - 1) && !z(2 * m)) return false;
  }
  return !odd_zero(k - 2) || (z(k - 1) && !z(k));
}

/// Checks every f_i is a flow (ContractViolation otherwise) and then the
/// coupling condition on every edge.
inline bool is_coupled_flow(const Graph& g, const Orientation& o, const FlowAssignment& fa) {
  const int k = fa.k();
  if (k < 1) throw ContractViolation("a multiflow needs k >= 1");
  if (fa.values.size() != fa.groups.size()) throw ContractViolation("one edge function per group");
  for (int i = 0; i < k; ++i) {
    const auto& f = fa.values[static_cast<std::size_t>(i)];
    const auto& grp = fa.groups[static_cast<std::size_t>(i)];
    if (f.size() != static_cast<std::size_t>(g.num_edges())) throw ContractViolation("edge function must cover every edge");
    for (int x : f) {
      if (x < 0 || x >= grp.order()) throw ContractViolation("value outside its group");
    }
    if (!satisfies_kirchhoff(o, g.num_vertices(), grp, f)) {
      throw ContractViolation("edge function " + std::to_string(i + 1) + " violates the conservation law");
    }
  }
  std::vector<bool> zero(static_cast<std::size_t>(k));
  for (int e = 0; e < g.num_edges(); ++e) {
    for (int i = 0; i < k; ++i) {
      zero[static_cast<std::size_t>(i)] = fa.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)] == 0;
    }
    if (!coupled_flow_on_edge(zero)) return false;
  }
  return true;
}

namespace detail {

/// Spanning forest of g: BFS order and the tree edge into each vertex.
struct SpanningForest {
  std::vector<int> order;
  std::vector<int> parent_edge;
  std::vector<int> cotree;
};

inline SpanningForest spanning_forest(const Graph& g) {
  const int n = g.num_vertices();
  SpanningForest sf;
  sf.parent_edge.assign(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& [u, v] = g.edge(e);
    adj[static_cast<std::size_t>(u)].emplace_back(v, e);
    adj[static_cast<std::size_t>(v)].emplace_back(u, e);
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<bool> tree(static_cast<std::size_t>(g.num_edges()), false);
  for (int root = 0; root < n; ++root) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    seen[static_cast<std::size_t>(root)] = true;
    std::size_t head = sf.order.size();
    sf.order.push_back(root);
    while (head < sf.order.size()) {
      const int u = sf.order[head++];
      for (auto [v, e] : adj[static_cast<std::size_t>(u)]) {
        if (seen[static_cast<std::size_t>(v)]) continue;
        seen[static_cast<std::size_t>(v)] = true;
        sf.parent_edge[static_cast<std::size_t>(v)] = e;
        tree[static_cast<std::size_t>(e)] = true;
        sf.order.push_back(v);
      }
    }
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!tree[static_cast<std::size_t>(e)]) sf.cotree.push_back(e);
  }
  return sf;
}

/// Calls visit(values) for every A-flow on (g, o). Co-tree values are free;
/// tree values are then forced leaf-first by conservation.
template <typename Visit>
void for_each_flow(const Graph& g, const Orientation& o, const AbelianGroup& group, Visit&& visit) {
  const SpanningForest sf = spanning_forest(g);
  const int n = g.num_vertices();
  std::vector<int> values(static_cast<std::size_t>(g.num_edges()), 0);
  std::vector<int> net(static_cast<std::size_t>(n));
  while (true) {
    std::fill(net.begin(), net.end(), 0);
    for (int e : sf.cotree) {
      const auto [tail, head] = o.arcs()[static_cast<std::size_t>(e)];
      const int x = values[static_cast<std::size_t>(e)];
      net[static_cast<std::size_t>(head)] = group.add(net[static_cast<std::size_t>(head)], x);
      net[static_cast<std::size_t>(tail)] = group.sub(net[static_cast<std::size_t>(tail)], x);
    }
    for (auto it = sf.order.rbegin(); it != sf.order.rend(); ++it) {
      const int v = *it;
      const int e = sf.parent_edge[static_cast<std::size_t>(v)];
      if (e < 0) continue;
      const auto [tail, head] = o.arcs()[static_cast<std::size_t>(e)];
      const int here = net[static_cast<std::size_t>(v)];
      // Choose the tree value so that v balances, then push it to the parent.
      const int x = tail == v ? here : group.neg(here);
      values[static_cast<std::size_t>(e)] = x;
      net[static_cast<std::size_t>(head)] = group.add(net[static_cast<std::size_t>(head)], x);
      net[static_cast<std::size_t>(tail)] = group.sub(net[static_cast<std::size_t>(tail)], x);
    }
    visit(static_cast<const std::vector<int>&>(values));
    std::size_t j = 0;
    while (j < sf.cotree.size()) {
      auto& digit = values[static_cast<std::size_t>(sf.cotree[j])];
      if (++digit < group.order()) break;
      digit = 0;
      ++j;
    }
    if (j == sf.cotree.size()) break;
  }
}

inline std::uint64_t flow_space_size(const Graph& g, const AbelianGroup& group) {
  const int beta = g.num_edges() - graph_rank(g, g.all_edges());
  return saturating_pow(static_cast<std::uint64_t>(group.order()), beta);
}

inline void check_groups(const std::vector<AbelianGroup>& groups) {
  if (groups.empty()) throw InvalidParameters("at least one group is required");
}

}  // namespace detail

/// Number of coupled k-multiflows with f_i valued in groups[i]. Depends only
/// on the group orders; the orientation is a parameter so tests can vary it.
inline std::uint64_t count_coupled_flows(const Graph& g, const std::vector<AbelianGroup>& groups,
                                         const Orientation& o, const WorkBudget& budget = WorkBudget::from_env()) {
  detail::check_groups(groups);
  std::uint64_t work = 0;
  for (const auto& grp : groups) {
    const std::uint64_t s = detail::flow_space_size(g, grp);
    work = (work > UINT64_MAX - s) ? UINT64_MAX : work + s;
  }
  require_visits(work, budget, "coupled flow count");
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> hist;
  for (const auto& grp : groups) {
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    detail::for_each_flow(g, o, grp, [&](const std::vector<int>& f) {
      std::uint64_t mask = 0;
      for (std::size_t e = 0; e < f.size(); ++e) {
        if (f[e] == 0) mask |= std::uint64_t{1} << e;
      }
      ++counts[mask];
    });
    hist.emplace_back(counts.begin(), counts.end());
  }
  budget.record(work);
  return detail::combine_pattern_histograms(hist);
}

inline std::uint64_t count_coupled_flows(const Graph& g, const std::vector<AbelianGroup>& groups,
                                         const WorkBudget& budget = WorkBudget::from_env()) {
  return count_coupled_flows(g, groups, Orientation::standard(g), budget);
}

/// Reference count: filters all |A_i|^{|E|} edge functions by conservation,
/// then tests every tuple of flows with is_coupled_flow.
inline std::uint64_t count_coupled_flows_naive(const Graph& g, const std::vector<AbelianGroup>& groups,
                                               const Orientation& o, const WorkBudget& budget = WorkBudget::from_env()) {
  detail::check_groups(groups);
  const int m = g.num_edges();
  std::uint64_t work = 0;
  for (const auto& grp : groups) {
    const std::uint64_t s = saturating_pow(static_cast<std::uint64_t>(grp.order()), m);
    work = (work > UINT64_MAX - s) ? UINT64_MAX : work + s;
  }
  std::uint64_t tuples = 1;
  for (const auto& grp : groups) {
    const std::uint64_t s = detail::flow_space_size(g, grp);
    tuples = (s != 0 && tuples > UINT64_MAX / s) ? UINT64_MAX : tuples * s;
  }
  work = (work > UINT64_MAX - tuples) ? UINT64_MAX : work + tuples;
  require_visits(work, budget, "naive coupled flow count");

  std::vector<std::vector<std::vector<int>>> flows;
  for (const auto& grp : groups) {
    std::vector<std::vector<int>> list;
    std::vector<int> f(static_cast<std::size_t>(m), 0);
    while (true) {
      if (satisfies_kirchhoff(o, g.num_vertices(), grp, f)) list.push_back(f);
      int e = 0;
      while (e < m && ++f[static_cast<std::size_t>(e)] == grp.order()) f[static_cast<std::size_t>(e++)] = 0;
      if (e == m) break;
    }
    flows.push_back(std::move(list));
  }
  const int k = static_cast<int>(groups.size());
  FlowAssignment fa{groups, std::vector<std::vector<int>>(static_cast<std::size_t>(k))};
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, int level) -> void {
    if (level == k) {
      if (is_coupled_flow(g, o, fa)) ++count;
      return;
    }
    for (const auto& f : flows[static_cast<std::size_t>(level)]) {
      fa.values[static_cast<std::size_t>(level)] = f;
      self(self, level + 1);
    }
  };
  rec(rec, 0);
  budget.record(work);
  return count;
}

/// (-1)^{k|E|} sum over chains B_1 c ... c B_k of prod (-1)^{|B_i|} t_i^{|B_i| - rk B_i}.
inline MultiPoly coupled_flow_poly_chain(const Graph& g, int k, const WorkBudget& budget = WorkBudget::from_env()) {
  if (k < 1) throw InvalidParameters("k must be at least 1");
  const Matroid m = make_graphic(g);
  const int n = m.size();
  require_chain_budget(n, k, budget, "coupled flow polynomial");
  const auto table = rank_table(m);
  ChainSumSpec spec;
  spec.n = n;
  spec.vars = indexed_vars("t", k);
  spec.alternating = true;
  for (int i = 0; i < k; ++i) spec.levels.push_back(LevelSpec{table.data(), m.rank(), -1, i});
  MultiPoly p = chain_sum(spec, budget, "coupled flow polynomial");
  return (static_cast<long long>(k) * n) % 2 == 0 ? p : -p;
}

/// (-1)^{k(|E| + rk)} T^k(0, ..., 0; 1 - t_1, ..., 1 - t_k).
inline MultiPoly coupled_flow_poly_tutte(const Graph& g, int k, const WorkBudget& budget = WorkBudget::from_env()) {
  const Matroid m = make_graphic(g);
  const auto vars = indexed_vars("t", k);
  const auto t = chain_tutte(m, k, budget);
  std::map<std::string, MultiPoly> bind;
  for (int i = 1; i <= k; ++i) {
    bind.emplace("x" + std::to_string(i), MultiPoly(vars));
    bind.emplace("y" + std::to_string(i),
                 MultiPoly::constant(vars, 1) - MultiPoly::variable(vars, vars[static_cast<std::size_t>(i - 1)]));
  }
  MultiPoly p = t.substitute(bind).with_vars(vars);
  return (static_cast<long long>(k) * (m.size() + m.rank())) % 2 == 0 ? p : -p;
}

/// Coupled flow polynomial over (t1..tk), computed by both routes; a
/// disagreement is an internal error.
inline MultiPoly coupled_flow_poly(const Graph& g, int k, const WorkBudget& budget = WorkBudget::from_env()) {
  MultiPoly chain = coupled_flow_poly_chain(g, k, budget);
  MultiPoly tutte = coupled_flow_poly_tutte(g, k, budget);
  if (!(chain == tutte)) {
    throw std::logic_error("coupled flow polynomial routes disagree: " + chain.to_string() + " vs " + tutte.to_string());
  }
  return chain;
}

/// Flow polynomial by deletion-contraction over `t1`: bridges give 0, loops
/// a factor t1 - 1.
inline MultiPoly classic_flow_poly(const Graph& g) {
  const std::vector<std::string> vars{"t1"};
  const MultiPoly one = MultiPoly::constant(vars, 1);
  const MultiPoly loop_factor = MultiPoly::variable(vars, "t1") - one;
  auto rec = [&](auto&& self, const Graph& h) -> MultiPoly {
    if (h.num_edges() == 0) return one;
    const Edge e = h.edge(h.num_edges() - 1);
    std::vector<Edge> rest(h.edges().begin(), h.edges().end() - 1);
    Graph deleted(h.num_vertices(), rest);
    if (e.first == e.second) return loop_factor * self(self, deleted);
    if (components(deleted, deleted.all_edges()) > components(h, h.all_edges())) return MultiPoly(vars);
    auto relabel = [&](int x) {
      if (x == e.second) x = e.first;
      return x > e.second ? x - 1 : x;
    };
    std::vector<Edge> merged;
    for (auto [u, v] : rest) merged.emplace_back(relabel(u), relabel(v));
    Graph contracted(h.num_vertices() - 1, merged);
    return self(self, contracted) - self(self, deleted);
  };
  return rec(rec, g);
}

}  // namespace chainpoly
