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

// Identity checks over the chain invariants. Each verifier returns a Report
// instead of throwing on a mismatch, so a run can list every failing check
// with both sides attached.

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "chainpoly/coloring.hpp"
#include "chainpoly/flow.hpp"
#include "chainpoly/invariants.hpp"
#include "chainpoly/lattice.hpp"
#include "chainpoly/matroid.hpp"
#include "chainpoly/polynomial.hpp"

namespace chainpoly {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
  /// Both sides, filled in on failure.
  std::string lhs;
  std::string rhs;
  double seconds = 0.0;
};

class Report {
 public:
  void add(CheckResult c) { checks_.push_back(std::move(c)); }
  void merge(const Report& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  }

  bool passed() const {
    for (const auto& c : checks_) {
      if (!c.passed) return false;
    }
    return true;
  }
  const std::vector<CheckResult>& checks() const noexcept { return checks_; }

  std::uint64_t chain_visits = 0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : checks_) {
      nlohmann::ordered_json j;
      j["suite"] = c.suite;
      j["name"] = c.name;
      j["status"] = c.passed ? "pass" : "fail";
      if (!c.detail.empty()) j["detail"] = c.detail;
      if (!c.passed && (!c.lhs.empty() || !c.rhs.empty())) {
        j["lhs"] = c.lhs;
        j["rhs"] = c.rhs;
      }
      j["seconds"] = c.seconds;
      checks.push_back(std::move(j));
    }
    nlohmann::ordered_json out;
    out["status"] = passed() ? "pass" : "fail";
    out["checks"] = std::move(checks);
    out["chain_visits"] = chain_visits;
    return out;
  }

  std::string to_text() const {
    std::string out;
    for (const auto& c : checks_) {
      out += c.passed ? "PASS " : "FAIL ";
      out += c.suite + "/" + c.name;
      if (!c.detail.empty()) out += "  (" + c.detail + ")";
      out += "\n";
      if (!c.passed && (!c.lhs.empty() || !c.rhs.empty())) {
        out += "  lhs: " + c.lhs + "\n  rhs: " + c.rhs + "\n";
      }
    }
    out += passed() ? "all checks passed\n" : "some checks FAILED\n";
    return out;
  }

 private:
  std::vector<CheckResult> checks_;
};

namespace detail {

/// Runs `body`, which returns a CheckResult with pass/fail filled in, and
/// stamps suite, name and elapsed time.
inline CheckResult timed(const std::string& suite, const std::string& name,
                         const std::function<CheckResult()>& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r = body();
  r.suite = suite;
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline CheckResult poly_check(const MultiPoly& lhs, const MultiPoly& rhs, std::string detail = {}) {
  CheckResult r;
  r.passed = lhs == rhs;
  r.detail = std::move(detail);
  if (!r.passed) {
    r.lhs = lhs.to_string();
    r.rhs = rhs.to_string();
  }
  return r;
}

inline CheckResult bool_check(bool ok, std::string detail) {
  CheckResult r;
  r.passed = ok;
  r.detail = std::move(detail);
  return r;
}

}  // namespace detail

/// Rank axioms of m and of its dual (exhaustive up to 10 elements, 1000
/// sampled pairs above), and rank agreement of the double dual.
inline Report verify_axioms(const Matroid& m) {
  Report rep;
  rep.add(detail::timed("axioms", "rank-axioms", [&] {
    auto v = find_axiom_violation(m, 10, 1000);
    return detail::bool_check(!v, v.value_or(""));
  }));
  rep.add(detail::timed("axioms", "dual-rank-axioms", [&] {
    auto v = find_axiom_violation(dual(m), 10, 1000);
    return detail::bool_check(!v, v.value_or(""));
  }));
  if (m.size() <= 20) {
    rep.add(detail::timed("axioms", "double-dual", [&] {
      const Matroid dd = detail::make_matroid(m.size(), Matroid::Dual{dual(m).node()});
      return detail::bool_check(rank_equal(dd, m), "rank of (M*)* agrees with M on every subset");
    }));
  }
  return rep;
}

/// chi^k by definition, by Tutte evaluation and by the chain Moebius
/// function must coincide; chi^1 must equal the classic subset sum; the
/// Moebius polynomial must equal s^r chi^2(1/s, t).
inline Report verify_routes(const Matroid& m, int k, const WorkBudget& budget = WorkBudget::from_env()) {
  Report rep;
  const auto by_def = chain_characteristic(m, k, CharRoute::definition, budget);
  rep.add(detail::timed("routes", "definition=tutte_eval", [&] {
    return detail::poly_check(by_def, chain_characteristic(m, k, CharRoute::tutte_eval, budget));
  }));
  rep.add(detail::timed("routes", "definition=mobius", [&] {
    return detail::poly_check(by_def, chain_characteristic(m, k, CharRoute::mobius, budget));
  }));
  rep.add(detail::timed("routes", "degree-bound", [&] {
    return detail::bool_check(by_def.total_degree() <= static_cast<std::uint32_t>(k * m.rank()),
                              "total degree " + std::to_string(by_def.total_degree()) + " <= k*rk(M)");
  }));
  if (k == 1) {
    rep.add(detail::timed("routes", "chi1=classic", [&] { return detail::poly_check(by_def, classic_characteristic(m)); }));
  }
  rep.add(detail::timed("routes", "mobius-reversal", [&] {
    return detail::poly_check(mobius_poly(m), mobius_poly_from_chi2(m, budget), "Mob(s,t) = s^r chi^2(1/s,t)");
  }));
  return rep;
}

/// T^k_{M*}(x_1..x_k; y_1..y_k) = T^k_M(y_k..y_1; x_k..x_1).
inline Report verify_duality(const Matroid& m, int k, const WorkBudget& budget = WorkBudget::from_env()) {
  Report rep;
  rep.add(detail::timed("duality", "tutte-dual", [&] {
    const auto t = chain_tutte(m, k, budget);
    std::map<std::string, MultiPoly> bind;
    for (int i = 1; i <= k; ++i) {
      const std::string xr = "x" + std::to_string(k + 1 - i);
      const std::string yr = "y" + std::to_string(k + 1 - i);
      bind.emplace("x" + std::to_string(i), MultiPoly::variable({yr}, yr));
      bind.emplace("y" + std::to_string(i), MultiPoly::variable({xr}, xr));
    }
    const auto swapped = t.substitute(bind).with_vars(tutte_vars(k));
    return detail::poly_check(chain_tutte(dual(m), k, budget), swapped);
  }));
  return rep;
}

/// T^k and chi^k are multiplicative over direct sums; checked for M + M
/// and M + U_{1,2}.
inline Report verify_product(const Matroid& m, int k, const WorkBudget& budget = WorkBudget::from_env()) {
  Report rep;
  const Matroid other = make_uniform(1, 2);
  for (const auto& [label, second] : {std::pair<std::string, Matroid>{"M+M", m}, {"M+U12", other}}) {
    const Matroid sum = direct_sum(m, second);
    rep.add(detail::timed("product", "tutte " + label, [&] {
      return detail::poly_check(chain_tutte(sum, k, budget), chain_tutte(m, k, budget) * chain_tutte(second, k, budget));
    }));
    rep.add(detail::timed("product", "chi " + label, [&] {
      return detail::poly_check(chain_characteristic(sum, k, CharRoute::definition, budget),
                                chain_characteristic(m, k, CharRoute::definition, budget) *
                                    chain_characteristic(second, k, CharRoute::definition, budget));
    }));
  }
  return rep;
}

/// T^{k+1}(2, 2x_1-1, x_2..x_k; 2, y_1/2+1/2, y_2..y_k) = 2^{rk M} T^k(x; y),
/// certified on a product grid with deg+1 integer points per variable.
inline Report verify_lemma21(const Matroid& m, int k, const WorkBudget& budget = WorkBudget::from_env(),
                             std::uint64_t max_grid_points = 200'000) {
  Report rep;
  rep.add(detail::timed("lemma21", "grid-certified", [&]() -> CheckResult {
    const auto big = chain_tutte(m, k + 1, budget);
    const auto small = chain_tutte(m, k, budget);
    const auto small_vars = tutte_vars(k);
    // Slot of each small variable inside the (k+1)-chain polynomial.
    auto slot = [&](const std::string& v) {
      const char family = v[0];
      const int i = std::stoi(v.substr(1));
      return std::string(1, family) + std::to_string(i + 1);
    };
    std::vector<std::uint32_t> degree;
    std::uint64_t points = 1;
    for (const auto& v : small_vars) {
      const std::uint32_t d = std::max(small.degree_in(v), big.degree_in(slot(v)));
      degree.push_back(d);
      points = points > max_grid_points ? points : points * (d + 1);
    }
    if (points > max_grid_points) {
      throw SizeCapError("lemma21 grid needs " + std::to_string(points) + " points", points, max_grid_points);
    }
    const Rational scale = Rational(Integer(1) << m.rank());
    std::vector<std::uint32_t> idx(small_vars.size(), 0);
    std::uint64_t checked = 0;
    while (true) {
      std::map<std::string, Rational> at_small;
      std::map<std::string, Rational> at_big{{"x1", 2}, {"y1", 2}};
      for (std::size_t v = 0; v < small_vars.size(); ++v) {
        const Rational val = idx[v];
        at_small[small_vars[v]] = val;
        const std::string& name = small_vars[v];
        Rational mapped = val;
        if (name == "x1") mapped = 2 * val - 1;
        if (name == "y1") mapped = val / 2 + Rational(1, 2);
        at_big[slot(name)] = mapped;
      }
      const Rational lhs = big.evaluate(at_big);
      const Rational rhs = scale * small.evaluate(at_small);
      ++checked;
      if (lhs != rhs) {
        CheckResult r;
        r.passed = false;
        r.detail = "mismatch at grid point " + std::to_string(checked);
        r.lhs = rational_to_string(lhs);
        r.rhs = rational_to_string(rhs);
        return r;
      }
      std::size_t v = 0;
      while (v < idx.size() && ++idx[v] > degree[v]) idx[v++] = 0;
      if (v == idx.size()) break;
    }
    return detail::bool_check(true, std::to_string(checked) + " grid points");
  }));
  return rep;
}

/// T^k_M = sum_{j=0}^{k} sT^{k,j}_{M,a}.
inline Report verify_recursion(const Matroid& m, ElementId a, int k, const WorkBudget& budget = WorkBudget::from_env()) {
  require_not_loop_or_coloop(m, a);
  Report rep;
  rep.add(detail::timed("recursion", "element " + std::to_string(a) + " k=" + std::to_string(k), [&] {
    return detail::poly_check(chain_tutte(m, k, budget), split_chain_tutte_sum(m, a, k, budget));
  }));
  return rep;
}

/// verify_recursion for every element that is neither a loop nor a coloop.
inline Report verify_recursion_all(const Matroid& m, int k, const WorkBudget& budget = WorkBudget::from_env()) {
  Report rep;
  bool any = false;
  for (int a = 0; a < m.size(); ++a) {
    if (is_loop(m, a) || is_coloop(m, a)) continue;
    any = true;
    rep.merge(verify_recursion(m, a, k, budget));
  }
  if (!any) rep.add(detail::timed("recursion", "no-eligible-element", [] {
    return detail::bool_check(true, "every element is a loop or a coloop");
  }));
  return rep;
}

/// Grid-certified Tutte substitution, duality and product identities together.
inline Report verify_identities(const Matroid& m, int k, const WorkBudget& budget = WorkBudget::from_env()) {
  Report rep = verify_duality(m, k, budget);
  rep.merge(verify_product(m, k, budget));
  rep.merge(verify_lemma21(m, k, budget));
  return rep;
}

/// For simple m: every coefficient of chi^k in total degree d has sign
/// (-1)^{k rk(M) - d}, and sgn mu^k(X) = prod_i (-1)^{rk X_i} on every chain
/// of flats.
inline Report verify_sign_alternation(const Matroid& m, int k, const WorkBudget& budget = WorkBudget::from_env()) {
  if (!is_simple(m)) throw HypothesisViolation("sign alternation requires a simple matroid");
  Report rep;
  rep.add(detail::timed("signs", "chi coefficients k=" + std::to_string(k), [&] {
    const auto chi = chain_characteristic(m, k, CharRoute::definition, budget);
    const int top = k * m.rank();
    for (const auto& [e, c] : chi.terms()) {
      int d = 0;
      for (auto x : e) d += static_cast<int>(x);
      const bool want_positive = (top - d) % 2 == 0;
      if ((c > 0) != want_positive) {
        return detail::bool_check(false, "coefficient " + rational_to_string(c) + " in degree " + std::to_string(d));
      }
    }
    return detail::bool_check(true, std::to_string(chi.num_terms()) + " coefficients");
  }));
  rep.add(detail::timed("signs", "chain mobius k=" + std::to_string(k), [&] {
    const auto table = chain_mobius_table(m, k);
    for (std::size_t c = 0; c < table.chains.size(); ++c) {
      int rank_sum = 0;
      for (int f : table.chains[c]) rank_sum += table.lattice.rank(f);
      const long long v = table.values[c];
      const bool want_positive = rank_sum % 2 == 0;
      if (v == 0 || (v > 0) != want_positive) {
        std::string chain;
        for (int f : table.chains[c]) chain += table.lattice.flat(f).to_string();
        return detail::bool_check(false, "mu^k" + chain + " = " + std::to_string(v));
      }
    }
    return detail::bool_check(true, std::to_string(table.chains.size()) + " flat chains");
  }));
  return rep;
}

namespace detail {

/// Every tuple in [lo, hi]^k, in lexicographic order.
inline std::vector<std::vector<int>> integer_tuples(int k, int lo, int hi) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(k), lo);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && ++cur[static_cast<std::size_t>(i)] > hi) cur[static_cast<std::size_t>(i--)] = lo;
    if (i < 0) break;
  }
  return out;
}

inline std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline std::map<std::string, Rational> point(const std::vector<int>& values) {
  std::map<std::string, Rational> pt;
  for (std::size_t i = 0; i < values.size(); ++i) pt["t" + std::to_string(i + 1)] = values[i];
  return pt;
}

}  // namespace detail

/// Coupled colorings of a simple graph: the polynomial evaluated at every
/// palette in [1, max_palette]^k with prod t_i^n <= max_assignments equals
/// the exhaustive count; the Tutte form agrees; k = 1 is the classic
/// chromatic polynomial.
inline Report verify_coloring_oracle(const Graph& g, int k, int max_palette = 3,
                                     std::uint64_t max_assignments = 10'000'000,
                                     const WorkBudget& budget = WorkBudget::from_env()) {
  require_simple(g);
  Report rep;
  const auto poly = coupled_chromatic_poly(g, k, budget);
  rep.add(detail::timed("coloring-oracle", "tutte-form k=" + std::to_string(k), [&] {
    return detail::poly_check(poly, coupled_chromatic_poly_tutte(g, k, budget));
  }));
  if (k == 1) {
    rep.add(detail::timed("coloring-oracle", "classic-chromatic", [&] {
      return detail::poly_check(poly, classic_chromatic_poly(g));
    }));
  }
  rep.add(detail::timed("coloring-oracle", "counts k=" + std::to_string(k), [&] {
    std::size_t compared = 0;
    for (const auto& palette : detail::integer_tuples(k, 1, max_palette)) {
      if (detail::coloring_visits(g, palette) > max_assignments) continue;
      const std::uint64_t count = count_coupled_colorings(g, palette, budget);
      const Rational value = poly.evaluate(detail::point(palette));
      ++compared;
      if (value != Rational(count)) {
        CheckResult r = detail::bool_check(false, "palette (" + detail::join_ints(palette) + ")");
        r.lhs = rational_to_string(value);
        r.rhs = std::to_string(count);
        return r;
      }
    }
    return detail::bool_check(true, std::to_string(compared) + " palettes");
  }));
  return rep;
}

/// Coupled flows: the polynomial evaluated at the group orders equals the
/// count for every tuple of groups Z_1..Z_max_order; counts do not depend on
/// the orientation (random re-orientations) nor on the group structure
/// (Z4 against Z2xZ2); the spanning-forest count matches the naive filter
/// on graphs with at most 5 edges; k = 1 is the classic flow polynomial.
inline Report verify_flow_oracle(const Graph& g, int k, int max_order = 3, int reorientations = 20,
                                 std::uint64_t seed = 1, const WorkBudget& budget = WorkBudget::from_env()) {
  Report rep;
  const auto poly = coupled_flow_poly(g, k, budget);
  if (k == 1) {
    rep.add(detail::timed("flow-oracle", "classic-flow", [&] { return detail::poly_check(poly, classic_flow_poly(g)); }));
  }
  auto groups_of = [](const std::vector<int>& orders) {
    std::vector<AbelianGroup> out;
    for (int o : orders) out.push_back(AbelianGroup::cyclic(o));
    return out;
  };
  const auto tuples = detail::integer_tuples(k, 1, max_order);
  rep.add(detail::timed("flow-oracle", "counts k=" + std::to_string(k), [&] {
    for (const auto& orders : tuples) {
      const std::uint64_t count = count_coupled_flows(g, groups_of(orders), budget);
      const Rational value = poly.evaluate(detail::point(orders));
      if (value != Rational(count)) {
        CheckResult r = detail::bool_check(false, "groups (" + detail::join_ints(orders) + ")");
        r.lhs = rational_to_string(value);
        r.rhs = std::to_string(count);
        return r;
      }
    }
    return detail::bool_check(true, std::to_string(tuples.size()) + " group tuples");
  }));
  rep.add(detail::timed("flow-oracle", "orientation-independence", [&] {
    std::mt19937_64 rng(seed);
    const std::uint64_t mask = low_bits(g.num_edges());
    for (const auto& orders : tuples) {
      const auto groups = groups_of(orders);
      const std::uint64_t base = count_coupled_flows(g, groups, budget);
      for (int r = 0; r < reorientations; ++r) {
        const auto o = Orientation::flipped(g, rng() & mask);
        if (count_coupled_flows(g, groups, o, budget) != base) {
          return detail::bool_check(false, "groups (" + detail::join_ints(orders) + ") re-orientation " + std::to_string(r));
        }
      }
    }
    return detail::bool_check(true, std::to_string(reorientations) + " re-orientations per group tuple");
  }));
  rep.add(detail::timed("flow-oracle", "group-structure", [&] {
    std::vector<AbelianGroup> cyclic(static_cast<std::size_t>(k), AbelianGroup::cyclic(2));
    std::vector<AbelianGroup> product = cyclic;
    cyclic[0] = AbelianGroup::parse("Z4");
    product[0] = AbelianGroup::parse("Z2xZ2");
    const auto a = count_coupled_flows(g, cyclic, budget);
    const auto b = count_coupled_flows(g, product, budget);
    auto pt = detail::point(std::vector<int>(static_cast<std::size_t>(k), 2));
    pt["t1"] = 4;
    const Rational value = poly.evaluate(pt);
    return detail::bool_check(a == b && value == Rational(a),
                              "Z4 against Z2xZ2 in the first slot: " + std::to_string(a) + " and " + std::to_string(b));
  }));
  if (g.num_edges() <= 5) {
    rep.add(detail::timed("flow-oracle", "naive-filter", [&] {
      for (const auto& orders : tuples) {
        const auto groups = groups_of(orders);
        const auto o = Orientation::standard(g);
        if (count_coupled_flows(g, groups, o, budget) != count_coupled_flows_naive(g, groups, o, budget)) {
          return detail::bool_check(false, "groups (" + detail::join_ints(orders) + ")");
        }
      }
      return detail::bool_check(true, "spanning-forest count equals the all-functions filter");
    }));
  }
  return rep;
}

}  // namespace chainpoly
