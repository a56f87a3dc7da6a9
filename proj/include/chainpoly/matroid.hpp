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

// Matroids given by a ground set {0, ..., n-1} and a rank oracle.
//
// A Matroid is an immutable handle to a shared node. Duals, direct sums
// and minors are lazy views that answer rank queries through their parent,
// so building M/a or M* is O(n) and never copies a table. Rank queries are
// const and lock-free; bulk consumers (chain enumeration) materialize a
// full rank table once with `rank_table`.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "chainpoly/errors.hpp"
#include "chainpoly/graph.hpp"
#include "chainpoly/subset.hpp"

namespace chainpoly {

/// Largest ground set for which a dense 2^n rank table is built.
inline constexpr int kMaxRankTableSize = 26;

class Matroid;

namespace detail {
struct MatroidNode;
}  // namespace detail

class Matroid {
 public:
  struct Uniform {
    int r;
  };
  struct Graphic {
    Graph graph;
  };
  struct Table {
    std::vector<std::uint8_t> ranks;
  };
  struct Dual {
    std::shared_ptr<const detail::MatroidNode> of;
  };
  struct Sum {
    std::shared_ptr<const detail::MatroidNode> first;
    std::shared_ptr<const detail::MatroidNode> second;
  };
  /// Parent with `deleted` removed and `contracted` contracted. `kept[i]`
  /// is the parent element behind element i of the minor.
  struct Minor {
    std::shared_ptr<const detail::MatroidNode> parent;
    std::uint64_t deleted;
    std::uint64_t contracted;
    std::vector<ElementId> kept;
    int contracted_rank;
  };
  using Kind = std::variant<Uniform, Graphic, Table, Dual, Sum, Minor>;

  int size() const noexcept;
  /// rk(M) = rk(ground set).
  int rank() const noexcept;
  int rank(const Subset& s) const;
  /// Unchecked fast path: bits must lie inside the ground set.
  int rank_bits(std::uint64_t bits) const;

  Subset ground() const { return Subset::full(size()); }
  const Kind& kind() const noexcept;
  /// "uniform", "graphic", "table", "dual", "sum" or "minor".
  std::string kind_name() const;

  static Matroid from_node(std::shared_ptr<const detail::MatroidNode> node) {
    Matroid m;
    m.node_ = std::move(node);
    return m;
  }
  const std::shared_ptr<const detail::MatroidNode>& node() const noexcept { return node_; }

 private:
  std::shared_ptr<const detail::MatroidNode> node_;
};

namespace detail {

struct MatroidNode {
  int n = 0;
  int total_rank = 0;
  Matroid::Kind kind;

  int rank_bits(std::uint64_t bits) const {
    return std::visit([&](const auto& k) { return rank_of(k, bits); }, kind);
  }

 private:
  int rank_of(const Matroid::Uniform& u, std::uint64_t bits) const {
    return std::min(std::popcount(bits), u.r);
  }
  int rank_of(const Matroid::Graphic& g, std::uint64_t bits) const {
    return graph_rank_bits(g.graph, bits);
  }
  int rank_of(const Matroid::Table& t, std::uint64_t bits) const { return t.ranks[bits]; }
  int rank_of(const Matroid::Dual& d, std::uint64_t bits) const {
    return std::popcount(bits) - d.of->total_rank + d.of->rank_bits(~bits & low_bits(n));
  }
  int rank_of(const Matroid::Sum& s, std::uint64_t bits) const {
    const int n1 = s.first->n;
    return s.first->rank_bits(bits & low_bits(n1)) + s.second->rank_bits(bits >> n1);
  }
  int rank_of(const Matroid::Minor& m, std::uint64_t bits) const {
    std::uint64_t parent_bits = m.contracted;
    for (; bits != 0; bits &= bits - 1) {
      parent_bits |= std::uint64_t{1} << m.kept[static_cast<std::size_t>(std::countr_zero(bits))];
    }
    return m.parent->rank_bits(parent_bits) - m.contracted_rank;
  }
};

inline Matroid make_matroid(int n, Matroid::Kind kind) {
  auto node = std::make_shared<MatroidNode>();
  node->n = n;
  node->kind = std::move(kind);
  node->total_rank = node->rank_bits(low_bits(n));
  return Matroid::from_node(std::move(node));
}

}  // namespace detail

inline int Matroid::size() const noexcept { return node_ ? node_->n : 0; }
inline int Matroid::rank() const noexcept { return node_ ? node_->total_rank : 0; }
inline int Matroid::rank_bits(std::uint64_t bits) const { return node_ ? node_->rank_bits(bits) : 0; }
inline const Matroid::Kind& Matroid::kind() const noexcept { return node_->kind; }

inline int Matroid::rank(const Subset& s) const {
  if (s.width() != size()) {
    throw ContractViolation("subset width " + std::to_string(s.width()) +
                            " does not match ground set size " + std::to_string(size()));
  }
  return rank_bits(s.bits());
}

inline std::string Matroid::kind_name() const {
  static constexpr const char* kNames[] = {"uniform", "graphic", "table", "dual", "sum", "minor"};
  return kNames[node_->kind.index()];
}

/// U_{r,n}: rank(S) = min(|S|, r).
inline Matroid make_uniform(int r, int n) {
  if (n < 0 || n > kMaxGroundSize) {
    throw InvalidParameters("uniform matroid size " + std::to_string(n) + " outside [0, 63]");
  }
  if (r < 0 || r > n) {
    throw InvalidParameters("uniform matroid needs 0 <= r <= n, got r=" + std::to_string(r) +
                            " n=" + std::to_string(n));
  }
  return detail::make_matroid(n, Matroid::Uniform{r});
}

/// Cycle matroid of a graph: ground set = edges, rank(A) = |V| - c(A).
inline Matroid make_graphic(const Graph& g) {
  return detail::make_matroid(g.num_edges(), Matroid::Graphic{g});
}

namespace detail {

/// Local rank axioms on every (S, a, b). Together they are equivalent to
/// normalization, unit increase, monotonicity and submodularity.
inline std::optional<std::string> table_axiom_violation(int n, const std::vector<std::uint8_t>& r) {
  if (r[0] != 0) return "rank of the empty set is " + std::to_string(r[0]);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < count; ++s) {
    for (int a = 0; a < n; ++a) {
      const std::uint64_t sa = s | (std::uint64_t{1} << a);
      if (sa == s) continue;
      const int inc = r[sa] - r[s];
      if (inc < 0 || inc > 1) {
        return "adding element " + std::to_string(a) + " to " + Subset(n, s).to_string() +
               " changes rank by " + std::to_string(inc);
      }
      for (int b = a + 1; b < n; ++b) {
        const std::uint64_t sb = s | (std::uint64_t{1} << b);
        if (sb == s) continue;
        if (r[sa] + r[sb] < r[sa | sb] + r[s]) {
          return "submodularity fails at " + Subset(n, s).to_string() + " with elements " +
                 std::to_string(a) + "," + std::to_string(b);
        }
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> sampled_axiom_violation(int n, const std::vector<std::uint8_t>& r,
                                                          int samples, std::uint64_t seed) {
  if (r[0] != 0) return "rank of the empty set is " + std::to_string(r[0]);
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = low_bits(n);
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t a = rng() & mask;
    const std::uint64_t b = rng() & mask;
    if (r[a & b] + r[a | b] > r[a] + r[b]) {
      return "submodularity fails on " + Subset(n, a).to_string() + ", " + Subset(n, b).to_string();
    }
    if (r[a & b] > r[a] || r[a] > r[a | b]) {
      return "monotonicity fails below " + Subset(n, a).to_string();
    }
    if (n > 0) {
      const int e = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
      if (r[std::uint64_t{1} << e] > 1) return "singleton {" + std::to_string(e) + "} has rank > 1";
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Matroid given by an explicit rank for every subset, indexed by bitmask.
/// Axioms are validated exhaustively for n <= 12 and by sampling above.
inline Matroid make_rank_table(int n, const std::vector<int>& ranks) {
  if (n < 0 || n > 24) throw InvalidParameters("rank tables support 0 <= n <= 24");
  if (ranks.size() != (std::size_t{1} << n)) {
    throw InvalidParameters("rank table for n=" + std::to_string(n) + " needs " +
                            std::to_string(std::size_t{1} << n) + " entries, got " +
                            std::to_string(ranks.size()));
  }
  std::vector<std::uint8_t> table(ranks.size());
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] < 0 || ranks[i] > n) throw InvalidParameters("rank value out of range at index " + std::to_string(i));
    table[i] = static_cast<std::uint8_t>(ranks[i]);
  }
  auto violation = n <= 12 ? detail::table_axiom_violation(n, table)
                           : detail::sampled_axiom_violation(n, table, 1000, 0x5eed);
  if (violation) throw InvalidParameters("rank table is not a matroid: " + *violation);
  return detail::make_matroid(n, Matroid::Table{std::move(table)});
}

/// rank*(S) = |S| - (rk(M) - rk(E - S)).
inline Matroid dual(const Matroid& m) {
  if (const auto* d = std::get_if<Matroid::Dual>(&m.kind())) return Matroid::from_node(d->of);
  return detail::make_matroid(m.size(), Matroid::Dual{m.node()});
}

/// Elements of m2 are relabeled to follow those of m1.
inline Matroid direct_sum(const Matroid& m1, const Matroid& m2) {
  if (m1.size() + m2.size() > kMaxGroundSize) {
    throw InvalidParameters("direct sum exceeds 63 elements");
  }
  return detail::make_matroid(m1.size() + m2.size(), Matroid::Sum{m1.node(), m2.node()});
}

/// M \ D / C with disjoint D, C. Remaining elements keep their relative
/// order and are renumbered from 0. Nested minors collapse onto the
/// original matroid.
inline Matroid minor(const Matroid& m, const Subset& deleted, const Subset& contracted) {
  if (deleted.width() != m.size() || contracted.width() != m.size()) {
    throw ContractViolation("minor sets must match the ground set size " + std::to_string(m.size()));
  }
  if ((deleted.bits() & contracted.bits()) != 0) {
    throw ContractViolation("deleted and contracted sets overlap");
  }
  std::shared_ptr<const detail::MatroidNode> parent = m.node();
  std::uint64_t del = deleted.bits();
  std::uint64_t con = contracted.bits();
  std::vector<ElementId> to_parent(static_cast<std::size_t>(m.size()));
  for (int i = 0; i < m.size(); ++i) to_parent[static_cast<std::size_t>(i)] = i;
  if (const auto* inner = std::get_if<Matroid::Minor>(&m.kind())) {
    parent = inner->parent;
    to_parent = inner->kept;
    auto lift = [&](std::uint64_t bits) {
      std::uint64_t out = 0;
      for (; bits != 0; bits &= bits - 1) {
        out |= std::uint64_t{1} << to_parent[static_cast<std::size_t>(std::countr_zero(bits))];
      }
      return out;
    };
    del = lift(del) | inner->deleted;
    con = lift(con) | inner->contracted;
  }
  std::vector<ElementId> kept;
  for (int i = 0; i < m.size(); ++i) {
    if (!deleted.contains(i) && !contracted.contains(i)) kept.push_back(to_parent[static_cast<std::size_t>(i)]);
  }
  const int n = static_cast<int>(kept.size());
  const int con_rank = parent->rank_bits(con);
  return detail::make_matroid(n, Matroid::Minor{std::move(parent), del, con, std::move(kept), con_rank});
}

inline Matroid delete_element(const Matroid& m, ElementId a) {
  return minor(m, Subset::of(m.size(), {a}), Subset::empty(m.size()));
}

inline Matroid contract(const Matroid& m, ElementId a) {
  return minor(m, Subset::empty(m.size()), Subset::of(m.size(), {a}));
}

/// M|S: delete everything outside S.
inline Matroid restrict_to(const Matroid& m, const Subset& s) {
  return minor(m, s.complement(), Subset::empty(m.size()));
}

inline bool is_loop(const Matroid& m, ElementId a) {
  return m.rank(Subset::of(m.size(), {a})) == 0;
}

inline bool is_coloop(const Matroid& m, ElementId a) {
  return m.rank(Subset::full(m.size()).without(a)) == m.rank() - 1;
}

/// No loops and no parallel pairs.
inline bool is_simple(const Matroid& m) {
  const int n = m.size();
  for (int a = 0; a < n; ++a) {
    if (m.rank_bits(std::uint64_t{1} << a) == 0) return false;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (m.rank_bits((std::uint64_t{1} << a) | (std::uint64_t{1} << b)) != 2) return false;
    }
  }
  return true;
}

/// {a : rank(S + a) = rank(S)}.
inline Subset closure(const Matroid& m, const Subset& s) {
  const int r = m.rank(s);
  std::uint64_t out = s.bits();
  for (int a = 0; a < m.size(); ++a) {
    const std::uint64_t bit = std::uint64_t{1} << a;
    if ((out & bit) == 0 && m.rank_bits(s.bits() | bit) == r) out |= bit;
  }
  return Subset(m.size(), out);
}

/// Minimal flat containing S; the same set as closure(m, s).
inline Subset join(const Matroid& m, const Subset& s) { return closure(m, s); }

/// Dense table of rank(S) for every S, indexed by bitmask.
inline std::vector<std::uint8_t> rank_table(const Matroid& m) {
  const int n = m.size();
  if (n > kMaxRankTableSize) {
    throw SizeCapError("rank table for " + std::to_string(n) + " elements exceeds the " +
                           std::to_string(kMaxRankTableSize) + "-element table cap",
                       std::uint64_t{1} << std::min(n, 62), std::uint64_t{1} << kMaxRankTableSize);
  }
  if (const auto* t = std::get_if<Matroid::Table>(&m.kind())) return t->ranks;
  std::vector<std::uint8_t> out(std::size_t{1} << n);
  if (const auto* u = std::get_if<Matroid::Uniform>(&m.kind())) {
    for (std::size_t s = 0; s < out.size(); ++s) {
      out[s] = static_cast<std::uint8_t>(std::min(std::popcount(s), u->r));
    }
    return out;
  }
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = static_cast<std::uint8_t>(m.rank_bits(s));
  return out;
}

/// Checks the rank axioms. Exhaustive (local form) when n <= exhaustive_up_to,
/// otherwise `samples` random subset pairs. Returns a description of the
/// first violation found.
inline std::optional<std::string> find_axiom_violation(const Matroid& m, int exhaustive_up_to = 12,
                                                       int samples = 1000, std::uint64_t seed = 1) {
  const int n = m.size();
  if (n <= exhaustive_up_to) return detail::table_axiom_violation(n, rank_table(m));
  if (m.rank_bits(0) != 0) return std::string("rank of the empty set is nonzero");
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = low_bits(n);
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t a = rng() & mask;
    const std::uint64_t b = rng() & mask;
    const int ra = m.rank_bits(a);
    const int rb = m.rank_bits(b);
    const int rmeet = m.rank_bits(a & b);
    const int rjoin = m.rank_bits(a | b);
    if (rmeet + rjoin > ra + rb) return "submodularity fails on " + Subset(n, a).to_string();
    if (rmeet > ra || ra > rjoin) return "monotonicity fails on " + Subset(n, a).to_string();
    const int e = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    if (m.rank_bits(std::uint64_t{1} << e) > 1) return "singleton rank exceeds 1";
  }
  return std::nullopt;
}

/// True when both matroids have the same size and agree on every subset.
inline bool rank_equal(const Matroid& a, const Matroid& b) {
  if (a.size() != b.size()) return false;
  const std::uint64_t count = std::uint64_t{1} << a.size();
  for (std::uint64_t s = 0; s < count; ++s) {
    if (a.rank_bits(s) != b.rank_bits(s)) return false;
  }
  return true;
}

}  // namespace chainpoly
