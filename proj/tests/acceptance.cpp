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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "chainpoly.hpp"
#include "oracles.hpp"
#include "zoo.hpp"

namespace {

using namespace chainpoly;

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
  void require_report(const Report& r, const std::string& what) {
    if (r.passed()) return;
    for (const auto& c : r.checks()) {
      if (!c.passed) {
        require(false, what + ": " + c.suite + "/" + c.name + " " + c.detail + (c.lhs.empty() ? "" : " lhs=" + c.lhs) +
                           (c.rhs.empty() ? "" : " rhs=" + c.rhs));
        return;
      }
    }
  }
};

MultiPoly T2(const std::string& text) { return MultiPoly::parse(text, indexed_vars("t", 2)); }

std::map<std::string, Rational> point(const std::vector<int>& v) {
  std::map<std::string, Rational> pt;
  for (std::size_t i = 0; i < v.size(); ++i) pt["t" + std::to_string(i + 1)] = v[i];
  return pt;
}

oracle::RankFn graph_rank_of(const Graph& g) { return oracle::graph_rank(g.num_vertices(), g.edges()); }

const char* const kChi2K3 = "t1^2*t2^2 - 3*t1^2*t2 + 2*t1^2 + 3*t1*t2 - 3*t1 + 1";
const char* const kChi2K5 =
    "t1^4*t2^4 - 10*t1^4*t2^3 + 35*t1^4*t2^2 + 10*t1^3*t2^3 - 50*t1^4*t2 - 60*t1^3*t2^2 + 24*t1^4 + 110*t1^3*t2 + "
    "25*t1^2*t2^2 - 60*t1^3 - 75*t1^2*t2 + 50*t1^2 + 15*t1*t2 - 15*t1 + 1";
const char* const kFlow2K3 = "t1*t2 - t2 + 1";
const char* const kFlow2K4 =
    "t1^3*t2^3 - 6*t1^2*t2^3 + 6*t1^2*t2^2 + 11*t1*t2^3 - 18*t1*t2^2 - 6*t2^3 + 7*t1*t2 + 12*t2^2 - 7*t2 + 1";

Outcome ac1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto m = make_graphic(complete_graph(3));
  const auto want = T2(kChi2K3);
  for (auto route : {CharRoute::definition, CharRoute::tutte_eval, CharRoute::mobius}) {
    o.require(chain_characteristic(m, 2, route) == want, std::string("route ") + route_name(route));
  }
  o.require(want.num_terms() == 6, "six terms");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 1.0, "runtime " + std::to_string(secs) + " s");
  return o;
}

Outcome ac2() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto chi = chain_characteristic(make_graphic(complete_graph(5)), 2);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(chi == T2(kChi2K5), "K5 polynomial differs: " + chi.to_string());
  o.require(chi.coefficient({4, 4}) == Rational(1) && chi.coefficient({0, 0}) == Rational(1), "leading and constant terms");
  o.require(chi.num_terms() == 15, "term count " + std::to_string(chi.num_terms()));
  o.require(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  return o;
}

Outcome ac3() {
  Outcome o;
  const Graph k4 = complete_graph(4);
  const auto chi = chain_characteristic(make_graphic(k4), 2);
  const auto ref = oracle::to_poly(oracle::chain_characteristic(6, 2, graph_rank_of(k4)), indexed_vars("t", 2));
  o.require(chi == ref, "library and brute force differ");
  o.require(chi.coefficient({3, 1}) == Rational(11), "coefficient of t1^3*t2 is 11");
  o.require(chi.num_terms() == 10, "ten terms");
  return o;
}

Outcome ac4() {
  Outcome o;
  const std::vector<std::pair<Graph, const char*>> cases{{complete_graph(3), kFlow2K3}, {complete_graph(4), kFlow2K4}};
  for (const auto& [g, text] : cases) {
    const auto want = T2(text);
    o.require(coupled_flow_poly_chain(g, 2) == want, "chain formula on K" + std::to_string(g.num_vertices()));
    o.require(coupled_flow_poly_tutte(g, 2) == want, "Tutte evaluation on K" + std::to_string(g.num_vertices()));
    o.require(oracle::to_poly(oracle::chain_flow(g.num_edges(), 2, graph_rank_of(g)), indexed_vars("t", 2)) == want,
              "brute force on K" + std::to_string(g.num_vertices()));
  }
  return o;
}

Outcome ac5() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const Graph k3 = complete_graph(3);
  o.require(oracle::count_colorings(3, k3.edges(), {2, 2}) == 28, "K3 (2,2) count");
  o.require(coupled_chromatic_poly(k3, 2).evaluate(point({2, 2})) == Rational(28), "K3 (2,2) polynomial");
  std::size_t compared = 0;
  for (const auto& g : zoo::simple_graphs(4)) {
    for (int k = 1; k <= 2; ++k) {
      const auto p = coupled_chromatic_poly(g, k);
      for (const auto& palette : detail::integer_tuples(k, 1, 3)) {
        const auto count = oracle::count_colorings(g.num_vertices(), g.edges(), palette);
        ++compared;
        o.require(p.evaluate(point(palette)) == Rational(count),
                  std::to_string(g.num_vertices()) + " vertices, palette (" + detail::join_ints(palette) + ")");
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 120.0, "runtime " + std::to_string(secs) + " s");
  o.note = o.ok ? std::to_string(compared) + " evaluations" : o.note;
  return o;
}

Outcome ac6() {
  Outcome o;
  const std::vector<std::pair<std::string, Graph>> graphs{
      {"K3", complete_graph(3)}, {"K4", complete_graph(4)}, {"C4", cycle_graph(4)}, {"C5", cycle_graph(5)}};
  std::mt19937_64 rng(6);
  for (const auto& [name, g] : graphs) {
    for (int k = 1; k <= 2; ++k) {
      const auto p = coupled_flow_poly(g, k);
      for (const auto& orders : detail::integer_tuples(k, 1, 3)) {
        std::vector<AbelianGroup> groups;
        std::vector<std::vector<int>> factors;
        for (int q : orders) {
          groups.push_back(AbelianGroup::cyclic(q));
          factors.push_back({q});
        }
        const auto std_o = Orientation::standard(g);
        const auto count = oracle::count_flows(g.num_vertices(), std_o.arcs(), factors);
        const std::string where = name + " (" + detail::join_ints(orders) + ")";
        o.require(p.evaluate(point(orders)) == Rational(count), where + " polynomial");
        o.require(count_coupled_flows(g, groups) == count, where + " count");
        for (int r = 0; r < 20; ++r) {
          const auto flipped = Orientation::flipped(g, rng() & low_bits(g.num_edges()));
          o.require(count_coupled_flows(g, groups, flipped) == count, where + " re-orientation");
        }
      }
      std::vector<AbelianGroup> cyc(static_cast<std::size_t>(k), AbelianGroup::cyclic(2));
      std::vector<AbelianGroup> prod = cyc;
      cyc[0] = AbelianGroup::parse("Z4");
      prod[0] = AbelianGroup::parse("Z2xZ2");
      std::vector<std::vector<int>> prod_factors(static_cast<std::size_t>(k), std::vector<int>{2});
      prod_factors[0] = {2, 2};
      const auto a = count_coupled_flows(g, cyc);
      const auto b = count_coupled_flows(g, prod);
      const auto ref = oracle::count_flows(g.num_vertices(), Orientation::standard(g).arcs(), prod_factors);
      o.require(a == b && b == ref, name + " Z4 against Z2xZ2");
    }
  }
  return o;
}

Outcome ac7() {
  Outcome o;
  std::string mismatches;
  bool signed_ok = true;
  for (int n = 0; n <= 4; ++n) {
    for (int k = 1; k <= 3; ++k) {
      const auto vars = indexed_vars("t", k);
      MultiPoly inner = MultiPoly::constant(vars, 1);
      MultiPoly prefix = MultiPoly::constant(vars, 1);
      for (int i = 1; i <= k; ++i) {
        prefix = prefix * MultiPoly::variable(vars, vars[static_cast<std::size_t>(i - 1)]);
        inner += prefix.scale(i % 2 ? -1 : 1);
      }
      const MultiPoly closed = inner.scale(k % 2 ? -1 : 1).pow(static_cast<unsigned>(n));
      const auto chi = chain_characteristic(make_uniform(n, n), k);
      const std::string where = "n=" + std::to_string(n) + " k=" + std::to_string(k);
      o.require(chi == closed, where + " closed form");
      Rational expected = 1;
      for (int i = 0; i < n; ++i) expected *= (1 + k);
      const Rational value = chi.evaluate(point(std::vector<int>(static_cast<std::size_t>(k), -1)));
      if (value != expected) {
        mismatches += " " + where + ":" + rational_to_string(value);
        signed_ok = signed_ok && value == ((k * n) % 2 ? -expected : expected);
      }
    }
  }
  o.require(mismatches.empty(), "value at (-1,...,-1) is not (1+k)^n at" + mismatches +
                                    (signed_ok ? "; every value equals (-1)^(k n) (1+k)^n" : ""));
  return o;
}

Outcome ac8() {
  Outcome o;
  const std::vector<std::pair<int, long long>> fubini{{3, 13}, {4, 75}, {5, 541}};
  for (const auto& [n, value] : fubini) {
    const auto chi = chain_characteristic(make_graphic(complete_graph(n)), 2);
    o.require(chi.evaluate(point({-1, -1})) == Rational(value), "K" + std::to_string(n));
  }
  return o;
}

Outcome ac9() {
  Outcome o;
  const std::vector<zoo::Entry> corpus{{"K3", make_graphic(complete_graph(3))},
                                       {"K4", make_graphic(complete_graph(4))},
                                       {"U24", make_uniform(2, 4)}};
  for (const auto& e : corpus) {
    for (int k = 1; k <= 3; ++k) o.require_report(verify_recursion_all(e.m, k), e.name + " k=" + std::to_string(k));
  }
  return o;
}

Outcome ac10() {
  Outcome o;
  std::size_t checks = 0;
  for (const auto& e : zoo::small_matroids()) {
    for (int k = 1; k <= 2; ++k) {
      const auto r = verify_identities(e.m, k);
      checks += r.checks().size();
      o.require_report(r, e.name + " k=" + std::to_string(k));
    }
    const auto mob = verify_routes(e.m, 2);
    checks += mob.checks().size();
    o.require_report(mob, e.name + " routes");
  }
  o.note = o.ok ? std::to_string(checks) + " checks" : o.note;
  return o;
}

Outcome ac11() {
  Outcome o;
  for (const auto& e : zoo::simple_matroids(7)) {
    for (int k = 1; k <= 3; ++k) {
      o.require_report(verify_sign_alternation(e.m, k), e.name + " k=" + std::to_string(k));
    }
  }
  return o;
}

Outcome ac12() {
  Outcome o;
  const auto chi3 = chain_characteristic(make_graphic(complete_graph(4)), 3);
  const auto t = MultiPoly::variable({"t"}, "t");
  const auto diag = chi3.substitute({{"t1", t}, {"t2", t}, {"t3", t}});
  std::vector<Rational> coeffs;
  for (int d = 9; d >= 0; --d) coeffs.push_back(diag.coefficient({static_cast<std::uint32_t>(d)}));
  const std::vector<Rational> expected{1, -6, 17, -30, 37, -37, 30, -17, 11, -6};
  o.require(coeffs == expected, "coefficients " + diag.to_string());
  o.require(Rational(17) * 17 < Rational(30) * 11, "17^2 < 30*11");
  o.require(!is_log_concave(coeffs), "not log-concave");
  o.require(is_unimodal(coeffs), "unimodal");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 chi^2(K3) by three routes", ac1},
      {"AC2 chi^2(K5)", ac2},
      {"AC3 chi^2(K4) against brute force", ac3},
      {"AC4 Flow^2(K3), Flow^2(K4) by both routes", ac4},
      {"AC5 coloring oracle agreement", ac5},
      {"AC6 flow oracle agreement", ac6},
      {"AC7 Boolean matroid closed form and (1+k)^n", ac7},
      {"AC8 chi^2(K_n)(-1,-1) is the ordered Bell number", ac8},
      {"AC9 split-level recursion", ac9},
      {"AC10 identity suite on the small-matroid zoo", ac10},
      {"AC11 sign properties on simple matroids", ac11},
      {"AC12 log-concavity counterexample", ac12},
  };
  int failures = 0;
  for (const auto& [label, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out.ok = false;
      out.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.ok) ++failures;
    std::printf("%s %s  [%.3f s]%s%s\n", out.ok ? "PASS" : "FAIL", label.c_str(), secs, out.note.empty() ? "" : "  ",
                out.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
