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

// Chain invariants of a matroid M on ground set E with rank r:
//
//   W^k(a; b)  = sum over chains S_1 ⊆ ... ⊆ S_k of
//                prod_i a_i^{r - rk S_i} b_i^{|S_i| - rk S_i}
//   T^k(x; y)  = W^k(x - 1; y - 1)
//   chi^k(t)   = sum over chains of prod_i (-1)^{|S_i|} t_i^{r - rk S_i}
//              = (-1)^{k r} T^k(1 - t; 0)
//              = sum over chains of flats X of mu^k(X) prod_i t_i^{r - rk X_i}
//   Mob(s, t)  = sum_{X <= Y flats} mu(X, Y) s^{rk X} t^{r - rk Y}
//              = s^r chi^2(1/s, t)

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "chainpoly/chain_enum.hpp"
#include "chainpoly/errors.hpp"
#include "chainpoly/lattice.hpp"
#include "chainpoly/matroid.hpp"
#include "chainpoly/polynomial.hpp"

namespace chainpoly {

/// a1..ak, b1..bk
inline std::vector<std::string> whitney_vars(int k) {
  auto v = indexed_vars("a", k);
  auto b = indexed_vars("b", k);
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

/// x1..xk, y1..yk
inline std::vector<std::string> tutte_vars(int k) {
  auto v = indexed_vars("x", k);
  auto y = indexed_vars("y", k);
  v.insert(v.end(), y.begin(), y.end());
  return v;
}

namespace detail {

inline void require_k(int k) {
  if (k < 1) throw InvalidParameters("chain length k must be >= 1, got " + std::to_string(k));
}

/// W-style sum with level i (1-based) evaluated in `level_tables[i-1]`.
inline MultiPoly whitney_sum(int n, const std::vector<const std::vector<std::uint8_t>*>& level_tables,
                             const std::vector<int>& level_tops, const WorkBudget& budget,
                             const std::string& what) {
  const int k = static_cast<int>(level_tables.size());
  ChainSumSpec spec;
  spec.n = n;
  spec.vars = whitney_vars(k);
  for (int i = 0; i < k; ++i) {
    spec.levels.push_back(LevelSpec{level_tables[static_cast<std::size_t>(i)]->data(),
                                    level_tops[static_cast<std::size_t>(i)], i, k + i});
  }
  return chain_sum(spec, budget, what);
}

/// a_i -> x_i - 1, b_i -> y_i - 1.
inline MultiPoly shift_to_tutte(const MultiPoly& w, int k) {
  const auto tv = tutte_vars(k);
  const auto wv = whitney_vars(k);
  std::map<std::string, MultiPoly> bind;
  for (std::size_t i = 0; i < wv.size(); ++i) {
    bind.emplace(wv[i], MultiPoly::variable({tv[i]}, tv[i]) - MultiPoly::constant({tv[i]}, 1));
  }
  return w.substitute(bind).with_vars(tv);
}

}  // namespace detail

/// Chain Whitney rank generating polynomial W^k_M over (a1..ak, b1..bk).
inline MultiPoly whitney_rank_poly(const Matroid& m, int k, const WorkBudget& budget = WorkBudget::from_env()) {
  detail::require_k(k);
  require_chain_budget(m.size(), k, budget, "chain Whitney polynomial");
  const auto table = rank_table(m);
  std::vector<const std::vector<std::uint8_t>*> tables(static_cast<std::size_t>(k), &table);
  std::vector<int> tops(static_cast<std::size_t>(k), m.rank());
  return detail::whitney_sum(m.size(), tables, tops, budget, "chain Whitney polynomial");
}

/// Chain Tutte polynomial T^k_M over (x1..xk, y1..yk).
inline MultiPoly chain_tutte(const Matroid& m, int k, const WorkBudget& budget = WorkBudget::from_env()) {
  return detail::shift_to_tutte(whitney_rank_poly(m, k, budget), k);
}

enum class CharRoute { definition, tutte_eval, mobius };

inline const char* route_name(CharRoute r) {
  switch (r) {
    case CharRoute::definition:
      return "definition";
    case CharRoute::tutte_eval:
      return "tutte_eval";
    case CharRoute::mobius:
      return "mobius";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Chain Moebius function.

/// mu^k on every chain of flats X_1 ⊆ ... ⊆ X_k.
struct ChainMobiusTable {
  FlatLattice lattice;
  int k = 0;
  /// chains[c] holds k flat indices into `lattice`.
  std::vector<std::vector<int>> chains;
  std::vector<long long> values;

  long long value(const std::vector<int>& chain) const {
    auto it = std::find(chains.begin(), chains.end(), chain);
    if (it == chains.end()) throw ContractViolation("not a chain of flats");
    return values[static_cast<std::size_t>(it - chains.begin())];
  }
};

namespace detail {

inline std::vector<std::vector<int>> flat_chains(const FlatLattice& lattice, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      out.push_back(cur);
      return;
    }
    for (int f = 0; f < lattice.size(); ++f) {
      if (depth > 0 && !lattice.leq(cur.back(), f)) continue;
      cur.push_back(f);
      self(self, depth + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Signed number of subset chains A with A_i ⊆ Y_i. Each element e of Y_k
/// contributes 1 + sum_{l = m(e)}^{k} (-1)^{k - l + 1}, where m(e) is the
/// first i with e in Y_i; that factor is 0 when k - m(e) + 1 is odd and 1
/// otherwise.
inline long long downset_sign_count(const FlatLattice& lattice, const std::vector<int>& chain) {
  const int k = static_cast<int>(chain.size());
  std::uint64_t below = 0;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t cur = lattice.flat(chain[static_cast<std::size_t>(i - 1)]).bits();
    const std::uint64_t fresh = cur & ~below;
    if (fresh != 0 && ((k - i + 1) & 1) != 0) return 0;
    below = cur;
  }
  return 1;
}

}  // namespace detail

/// Computes mu^k for every chain of flats by Moebius inversion of the
/// down-set sums over the poset of flat chains (componentwise order).
inline ChainMobiusTable chain_mobius_table(const Matroid& m, int k, int flat_cap = kDefaultFlatCap) {
  detail::require_k(k);
  ChainMobiusTable t;
  t.lattice = flats(m, flat_cap);
  t.k = k;
  t.chains = detail::flat_chains(t.lattice, k);
  const auto& lat = t.lattice;

  // Process chains by increasing total cardinality; any strictly smaller
  // chain comes first.
  std::vector<std::size_t> order(t.chains.size());
  std::vector<int> weight(t.chains.size());
  for (std::size_t c = 0; c < t.chains.size(); ++c) {
    order[c] = c;
    int w = 0;
    for (int f : t.chains[c]) w += lat.flat(f).size();
    weight[c] = w;
  }
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return weight[a] < weight[b]; });

  std::map<std::vector<int>, long long> mu;
  std::vector<std::vector<int>> below(static_cast<std::size_t>(lat.size()));
  for (int x = 0; x < lat.size(); ++x) {
    for (int y = 0; y <= x; ++y) {
      if (lat.leq(y, x)) below[static_cast<std::size_t>(x)].push_back(y);
    }
  }
  for (std::size_t c : order) {
    const auto& x = t.chains[c];
    long long sum_below = 0;
    // DFS over chains Y <= X with Y != X, from the top level down.
    std::vector<int> y(static_cast<std::size_t>(k));
    auto rec = [&](auto&& self, int level, bool strict) -> void {
      if (level < 0) {
        if (strict) sum_below += mu.at(y);
        return;
      }
      const int xi = x[static_cast<std::size_t>(level)];
      for (int f : below[static_cast<std::size_t>(xi)]) {
        if (level + 1 < k && !lat.leq(f, y[static_cast<std::size_t>(level + 1)])) continue;
        y[static_cast<std::size_t>(level)] = f;
        self(self, level - 1, strict || f != xi);
      }
    };
    rec(rec, k - 1, false);
    mu.emplace(x, detail::downset_sign_count(lat, x) - sum_below);
  }
  t.values.reserve(t.chains.size());
  for (const auto& ch : t.chains) t.values.push_back(mu.at(ch));
  return t;
}

/// mu^k(X_1, ..., X_k) by its defining sum over subset chains whose joins
/// are exactly the given flats.
inline long long chain_mobius(const Matroid& m, const std::vector<Subset>& flat_chain,
                              const WorkBudget& budget = WorkBudget::from_env()) {
  const int k = static_cast<int>(flat_chain.size());
  detail::require_k(k);
  const int n = m.size();
  for (std::size_t i = 0; i < flat_chain.size(); ++i) {
    const auto& x = flat_chain[i];
    if (x.width() != n) throw ContractViolation("flat width does not match the ground set");
    if (closure(m, x) != x) throw ContractViolation("X_" + std::to_string(i + 1) + " = " + x.to_string() + " is not a flat");
    if (i > 0 && !flat_chain[i - 1].is_subset_of(x)) throw ContractViolation("flats are not nested");
  }
  // Every A_i lies inside X_k, so only the elements of X_k are enumerated.
  const auto top = flat_chain.back().elements();
  const int sub_n = static_cast<int>(top.size());
  require_chain_budget(sub_n, k, budget, "chain Moebius function");
  const auto table = rank_table(m);
  auto expand = [&](std::uint64_t compact) {
    std::uint64_t out = 0;
    for (; compact != 0; compact &= compact - 1) {
      out |= std::uint64_t{1} << top[static_cast<std::size_t>(std::countr_zero(compact))];
    }
    return out;
  };
  auto closure_bits = [&](std::uint64_t s) {
    const int r = table[s];
    std::uint64_t out = s;
    for (int a = 0; a < n; ++a) {
      const std::uint64_t bit = std::uint64_t{1} << a;
      if ((s & bit) == 0 && table[s | bit] == r) out |= bit;
    }
    return out;
  };
  std::vector<std::uint64_t> sub_closure(std::size_t{1} << sub_n);
  for (std::uint64_t s = 0; s < sub_closure.size(); ++s) sub_closure[s] = closure_bits(expand(s));
  long long total = 0;
  std::uint64_t visits = 0;
  for_each_chain(sub_n, k, [&](const std::uint64_t* masks) {
    ++visits;
    int parity = 0;
    for (int i = 0; i < k; ++i) {
      if (sub_closure[masks[i]] != flat_chain[static_cast<std::size_t>(i)].bits()) return;
      parity ^= std::popcount(masks[i]);
    }
    total += (parity & 1) ? -1 : 1;
  });
  budget.record(visits);
  return total;
}

// ---------------------------------------------------------------------------
// Chain characteristic polynomial.

/// chi^k from the chain Moebius function.
inline MultiPoly chain_char_from_mobius(const Matroid& m, int k, int flat_cap = kDefaultFlatCap) {
  const auto table = chain_mobius_table(m, k, flat_cap);
  const auto vars = indexed_vars("t", k);
  MultiPoly out(vars);
  Exponents e(static_cast<std::size_t>(k));
  for (std::size_t c = 0; c < table.chains.size(); ++c) {
    for (int i = 0; i < k; ++i) {
      e[static_cast<std::size_t>(i)] =
          static_cast<std::uint32_t>(m.rank() - table.lattice.rank(table.chains[c][static_cast<std::size_t>(i)]));
    }
    out.add_term(e, Rational(table.values[c]));
  }
  return out;
}

/// chi^k_M over (t1..tk), computed along the chosen route.
inline MultiPoly chain_characteristic(const Matroid& m, int k, CharRoute route = CharRoute::definition,
                                      const WorkBudget& budget = WorkBudget::from_env()) {
  detail::require_k(k);
  const auto vars = indexed_vars("t", k);
  switch (route) {
    case CharRoute::definition: {
      require_chain_budget(m.size(), k, budget, "chain characteristic polynomial");
      const auto table = rank_table(m);
      ChainSumSpec spec;
      spec.n = m.size();
      spec.vars = vars;
      spec.alternating = true;
      for (int i = 0; i < k; ++i) spec.levels.push_back(LevelSpec{table.data(), m.rank(), i, -1});
      return chain_sum(spec, budget, "chain characteristic polynomial");
    }
    case CharRoute::tutte_eval: {
      const auto t = chain_tutte(m, k, budget);
      std::map<std::string, MultiPoly> bind;
      for (int i = 1; i <= k; ++i) {
        const std::string ti = "t" + std::to_string(i);
        bind.emplace("x" + std::to_string(i), MultiPoly::constant({ti}, 1) - MultiPoly::variable({ti}, ti));
        bind.emplace("y" + std::to_string(i), MultiPoly(std::vector<std::string>{}));
      }
      const int sign = (k * m.rank()) % 2 == 0 ? 1 : -1;
      return t.substitute(bind).with_vars(vars).scale(sign);
    }
    case CharRoute::mobius:
      return chain_char_from_mobius(m, k);
  }
  throw ContractViolation("unknown route");
}

/// Classic characteristic polynomial sum_{A ⊆ E} (-1)^{|A|} t^{r - rk A}
/// by direct subset enumeration, over the single variable `t1`.
inline MultiPoly classic_characteristic(const Matroid& m) {
  const auto table = rank_table(m);
  MultiPoly out(indexed_vars("t", 1));
  for (std::uint64_t s = 0; s < table.size(); ++s) {
    out.add_term({static_cast<std::uint32_t>(m.rank() - table[s])}, std::popcount(s) % 2 ? -1 : 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Moebius polynomial.

/// Mob_M(s, t) from the classic Moebius function of L(M).
inline MultiPoly mobius_poly(const Matroid& m, int flat_cap = kDefaultFlatCap) {
  const auto lattice = flats(m, flat_cap);
  const auto mu = mobius_matrix(lattice);
  MultiPoly out({"s", "t"});
  for (int x = 0; x < lattice.size(); ++x) {
    for (int y = x; y < lattice.size(); ++y) {
      const long long v = mu[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      if (v == 0) continue;
      out.add_term({static_cast<std::uint32_t>(lattice.rank(x)), static_cast<std::uint32_t>(m.rank() - lattice.rank(y))},
                   Rational(v));
    }
  }
  return out;
}

/// s^{rk M} chi^2_M(1/s, t), the same polynomial reached through chi^2.
inline MultiPoly mobius_poly_from_chi2(const Matroid& m, const WorkBudget& budget = WorkBudget::from_env()) {
  const auto chi2 = chain_characteristic(m, 2, CharRoute::definition, budget);
  const auto rev = chi2.reverse_in_var("t1", static_cast<std::uint32_t>(m.rank()));
  return rev.substitute({{"t1", MultiPoly::variable({"s"}, "s")}, {"t2", MultiPoly::variable({"t"}, "t")}})
      .with_vars({"s", "t"});
}

// ---------------------------------------------------------------------------
// Split chain Tutte polynomials.

inline void require_not_loop_or_coloop(const Matroid& m, ElementId a) {
  if (a < 0 || a >= m.size()) {
    throw ContractViolation("element " + std::to_string(a) + " outside ground set of size " + std::to_string(m.size()));
  }
  if (is_loop(m, a)) throw HypothesisViolation("element " + std::to_string(a) + " is a loop");
  if (is_coloop(m, a)) throw HypothesisViolation("element " + std::to_string(a) + " is a coloop");
}

/// sT^{k,j}_{M,a}: chains in E - a whose first j levels are measured in
/// M \ a and the remaining k - j levels in M / a. j = 0 and j = k reduce to
/// the chain Tutte polynomials of M / a and M \ a.
inline MultiPoly split_chain_tutte(const Matroid& m, ElementId a, int k, int j,
                                   const WorkBudget& budget = WorkBudget::from_env()) {
  detail::require_k(k);
  require_not_loop_or_coloop(m, a);
  if (j < 0 || j > k) throw InvalidParameters("split index j must lie in [0, k]");
  const Matroid del = delete_element(m, a);
  const Matroid con = contract(m, a);
  if (j == 0) return chain_tutte(con, k, budget);
  if (j == k) return chain_tutte(del, k, budget);
  require_chain_budget(del.size(), k, budget, "split chain Tutte polynomial");
  const auto del_table = rank_table(del);
  const auto con_table = rank_table(con);
  std::vector<const std::vector<std::uint8_t>*> tables;
  std::vector<int> tops;
  for (int i = 1; i <= k; ++i) {
    tables.push_back(i <= j ? &del_table : &con_table);
    tops.push_back(i <= j ? del.rank() : con.rank());
  }
  const auto w = detail::whitney_sum(del.size(), tables, tops, budget, "split chain Tutte polynomial");
  return detail::shift_to_tutte(w, k);
}

/// sum_{j=0}^{k} sT^{k,j}_{M,a}.
inline MultiPoly split_chain_tutte_sum(const Matroid& m, ElementId a, int k,
                                       const WorkBudget& budget = WorkBudget::from_env()) {
  MultiPoly total(tutte_vars(k));
  for (int j = 0; j <= k; ++j) total += split_chain_tutte(m, a, k, j, budget);
  return total;
}

}  // namespace chainpoly
