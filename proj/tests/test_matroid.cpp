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

#include <algorithm>

#include <gtest/gtest.h>

#include "chainpoly.hpp"
#include "oracles.hpp"
#include "zoo.hpp"

namespace {

using namespace chainpoly;

Matroid k3() { return make_graphic(complete_graph(3)); }
Matroid k4() { return make_graphic(complete_graph(4)); }

oracle::EdgeList edges_of(const Graph& g) { return {g.edges().begin(), g.edges().end()}; }

TEST(Matroid, UniformRank) {
  const auto u = make_uniform(2, 4);
  EXPECT_EQ(u.rank(Subset::of(4, {0, 1, 2})), 2);
  EXPECT_EQ(u.rank(Subset::empty(4)), 0);
  EXPECT_EQ(make_uniform(3, 3).rank(), 3);
}

TEST(Matroid, UniformRejectsBadParameters) {
  EXPECT_THROW(make_uniform(3, 2), InvalidParameters);
  EXPECT_THROW(make_uniform(-1, 2), InvalidParameters);
  EXPECT_THROW(make_uniform(1, 64), InvalidParameters);
}

TEST(Matroid, GraphicRanks) {
  EXPECT_EQ(k3().rank(k3().ground()), 2);
  EXPECT_EQ(k3().size(), 3);
  EXPECT_EQ(k4().rank(), 3);
  EXPECT_EQ(k4().size(), 6);
  const auto loop = make_graphic(Graph(1, {{0, 0}}));
  EXPECT_EQ(loop.size(), 1);
  EXPECT_EQ(loop.rank(), 0);
}

TEST(Matroid, EmptySetHasRankZero) {
  for (const auto& e : zoo::small_matroids()) EXPECT_EQ(e.m.rank(Subset::empty(e.m.size())), 0) << e.name;
}

TEST(Matroid, WidthMismatchIsContractViolation) {
  EXPECT_THROW(k3().rank(Subset::empty(4)), ContractViolation);
  EXPECT_THROW(delete_element(k3(), 3), ContractViolation);
  EXPECT_THROW(contract(k3(), -1), ContractViolation);
}

TEST(Matroid, UniformLoopsAndColoops) {
  EXPECT_TRUE(is_loop(make_uniform(0, 2), 0));
  EXPECT_TRUE(is_loop(make_uniform(0, 1), 0));
  EXPECT_TRUE(is_coloop(make_uniform(1, 1), 0));
  EXPECT_FALSE(is_loop(make_uniform(1, 1), 0));
  EXPECT_TRUE(is_simple(k3()));
  EXPECT_FALSE(is_simple(make_graphic(Graph(2, {{0, 1}, {0, 1}}))));
  EXPECT_FALSE(is_simple(make_uniform(0, 1)));
}

TEST(Matroid, DualOfU13IsU23) {
  const auto d = dual(make_uniform(1, 3));
  const auto u23 = make_uniform(2, 3);
  for (std::uint64_t s = 0; s < 8; ++s) EXPECT_EQ(d.rank_bits(s), u23.rank_bits(s));
  EXPECT_TRUE(rank_equal(d, u23));
}

TEST(Matroid, DualIsInvolution) {
  EXPECT_TRUE(rank_equal(dual(dual(make_uniform(2, 4))), make_uniform(2, 4)));
  for (const auto& e : zoo::small_matroids()) {
    const auto dd = dual(dual(e.m));
    EXPECT_TRUE(rank_equal(dd, e.m)) << e.name;
    // Also through a node that does not short-circuit.
    const auto explicit_dd = Matroid::from_node(
        detail::make_matroid(e.m.size(), Matroid::Dual{dual(e.m).node()}).node());
    EXPECT_TRUE(rank_equal(explicit_dd, e.m)) << e.name;
  }
}

TEST(Matroid, K4IsSelfDualUpToRelabeling) {
  // Search all 720 relabelings for one carrying rank onto dual rank.
  const auto m = k4();
  const auto d = dual(m);
  std::vector<int> perm{0, 1, 2, 3, 4, 5};
  bool found = false;
  do {
    bool ok = true;
    for (std::uint64_t s = 0; s < 64 && ok; ++s) {
      std::uint64_t img = 0;
      for (int a = 0; a < 6; ++a) {
        if ((s >> a) & 1) img |= std::uint64_t{1} << perm[static_cast<std::size_t>(a)];
      }
      ok = m.rank_bits(s) == d.rank_bits(img);
    }
    found = ok;
  } while (!found && std::next_permutation(perm.begin(), perm.end()));
  EXPECT_TRUE(found);
}

TEST(Matroid, MinorSemantics) {
  const auto u = make_uniform(2, 4);
  EXPECT_TRUE(rank_equal(delete_element(u, 0), make_uniform(2, 3)));
  EXPECT_TRUE(rank_equal(contract(u, 0), make_uniform(1, 3)));
  // Contracting an edge of a triangle leaves two parallel edges.
  const auto two_cycle = make_graphic(Graph(2, {{0, 1}, {0, 1}}));
  for (int a = 0; a < 3; ++a) EXPECT_TRUE(rank_equal(contract(k3(), a), two_cycle));
  const auto r = restrict_to(k4(), Subset::of(6, {0, 1, 3}));
  EXPECT_TRUE(rank_equal(r, k3()));
}

TEST(Matroid, DirectSum) {
  EXPECT_TRUE(rank_equal(direct_sum(make_uniform(1, 1), make_uniform(1, 1)), make_uniform(2, 2)));
  const auto s = direct_sum(make_uniform(1, 2), k3());
  EXPECT_EQ(s.size(), 5);
  EXPECT_EQ(s.rank(), 3);
  EXPECT_EQ(s.rank(Subset::of(5, {0, 1, 2})), 2);
}

TEST(MatroidProperty, MinorsCommute) {
  for (const auto& e : zoo::small_matroids()) {
    const int n = e.m.size();
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        // After removing a, element b > a shifts down by one.
        const int b_after_a = b > a ? b - 1 : b;
        const int a_after_b = a > b ? a - 1 : a;
        const auto lhs = delete_element(contract(e.m, a), b_after_a);
        const auto rhs = contract(delete_element(e.m, b), a_after_b);
        EXPECT_TRUE(rank_equal(lhs, rhs)) << e.name << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(MatroidProperty, MinorRankFormulas) {
  const auto m = k4();
  const auto c = contract(m, 2);
  const auto d = delete_element(m, 2);
  for (std::uint64_t s = 0; s < 32; ++s) {
    // Lift s from the 5-element minor back into K4's labels.
    std::uint64_t lifted = (s & 0b11) | ((s >> 2) << 3);
    EXPECT_EQ(c.rank_bits(s), m.rank_bits(lifted | 0b100) - 1);
    EXPECT_EQ(d.rank_bits(s), m.rank_bits(lifted));
  }
}

TEST(MatroidProperty, RankAxiomsAcrossZoo) {
  for (const auto& e : zoo::small_matroids()) {
    EXPECT_FALSE(find_axiom_violation(e.m).has_value()) << e.name;
    EXPECT_FALSE(find_axiom_violation(dual(e.m)).has_value()) << e.name;
  }
}

TEST(MatroidProperty, GraphicRankMatchesOracle) {
  for (const auto& g : zoo::simple_graphs(4)) {
    const auto m = make_graphic(g);
    const auto rk = oracle::graph_rank(g.num_vertices(), edges_of(g));
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.num_edges()); ++s) ASSERT_EQ(m.rank_bits(s), rk(s));
  }
}

TEST(RankTable, ValidatesAxioms) {
  EXPECT_NO_THROW(make_rank_table(2, {0, 1, 1, 1}));
  // Not monotone.
  EXPECT_THROW(make_rank_table(2, {0, 1, 1, 0}), InvalidParameters);
  // rk(empty) != 0.
  EXPECT_THROW(make_rank_table(1, {1, 1}), InvalidParameters);
  // Singleton rank 2.
  EXPECT_THROW(make_rank_table(1, {0, 2}), InvalidParameters);
  // A pair of rank 3.
  EXPECT_THROW(make_rank_table(2, {0, 1, 1, 3}), InvalidParameters);
  EXPECT_THROW(make_rank_table(2, {0, 1, 1}), InvalidParameters);
}

TEST(Closure, UniformFreeMatroidFlats) {
  const auto lat = flats(make_uniform(3, 3));
  EXPECT_EQ(lat.size(), 8);
}

TEST(Closure, K3Flats) {
  const auto lat = flats(k3());
  ASSERT_EQ(lat.size(), 5);
  EXPECT_EQ(lat.flat(lat.bottom()), Subset::empty(3));
  EXPECT_EQ(lat.flat(lat.top()), Subset::full(3));
  EXPECT_EQ(closure(k3(), Subset::of(3, {0, 1})), Subset::full(3));
  EXPECT_EQ(join(k3(), Subset::of(3, {2})), Subset::of(3, {2}));
}

TEST(Closure, FlatCapIsEnforced) {
  try {
    flats(make_uniform(2, 21));
    FAIL() << "expected a size-cap error";
  } catch (const SizeCapError& e) {
    EXPECT_EQ(e.required(), 21u);
    EXPECT_EQ(e.cap(), 20u);
  }
  EXPECT_NO_THROW(flats(make_uniform(2, 21), 21));
}

TEST(ClosureProperty, OperatorLaws) {
  for (const auto& e : zoo::small_matroids()) {
    const int n = e.m.size();
    EXPECT_EQ(closure(e.m, e.m.ground()), e.m.ground()) << e.name;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      const Subset a(n, s);
      const Subset ca = closure(e.m, a);
      EXPECT_TRUE(a.is_subset_of(ca));
      EXPECT_EQ(closure(e.m, ca), ca);
      EXPECT_EQ(e.m.rank(ca), e.m.rank(a));
      for (int x = 0; x < n; ++x) {
        if (a.contains(x)) continue;
        EXPECT_TRUE(ca.is_subset_of(closure(e.m, a.with(x))));
      }
    }
  }
}

TEST(ClosureProperty, FlatsMatchImageOfClosure) {
  for (const auto& e : zoo::small_matroids()) {
    const int n = e.m.size();
    auto rk = [&](std::uint64_t s) { return e.m.rank_bits(s); };
    const auto expected = oracle::flats(n, rk);
    const auto lat = flats(e.m);
    std::vector<std::uint64_t> got;
    for (const auto& f : lat.flats()) got.push_back(f.bits());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected) << e.name;
    for (int i = 1; i < lat.size(); ++i) {
      const auto& a = lat.flat(i - 1);
      const auto& b = lat.flat(i);
      EXPECT_TRUE(a.size() < b.size() || (a.size() == b.size() && a.bits() < b.bits()));
    }
  }
}

TEST(Lattice, ClassicMobiusOfK3) {
  const auto lat = flats(k3());
  const auto mu = mobius_matrix(lat);
  EXPECT_EQ(mu[0][static_cast<std::size_t>(lat.top())], 2);
  for (int i = 1; i <= 3; ++i) EXPECT_EQ(mu[0][static_cast<std::size_t>(i)], -1);
}

TEST(Subset, Basics) {
  const auto s = Subset::of(5, {0, 3});
  EXPECT_EQ(s.size(), 2);
  EXPECT_EQ(s.to_string(), "{0,3}");
  EXPECT_EQ(s.complement(), Subset::of(5, {1, 2, 4}));
  EXPECT_THROW(Subset::of(3, {3}), ContractViolation);
  EXPECT_THROW(s | Subset::empty(4), ContractViolation);
  EXPECT_EQ(s.elements(), (std::vector<ElementId>{0, 3}));
}

}  // namespace
