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

// Enumeration of chains A_1 ⊆ A_2 ⊆ ... ⊆ A_k of subsets of {0, ..., n-1}.
//
// A chain is the same thing as a level assignment: element e gets the
// first index at which it enters the chain, or "absent". There are
// therefore exactly (k+1)^n chains. The enumerator walks the level digits
// depth-first and keeps the k masks up to date incrementally, so a visit
// costs O(1) mask updates plus whatever the leaf callback does.
//
// Polynomial sums over chains are accumulated as integer counts in a dense
// exponent grid (or a hash map when the grid would be too large). Integer
// addition is associative, so the parallel partition over the leading
// digits produces bit-identical output for any worker count.

#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <memory>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "chainpoly/errors.hpp"
#include "chainpoly/polynomial.hpp"
#include "chainpoly/subset.hpp"

namespace chainpoly {

inline constexpr std::uint64_t kDefaultMaxVisits = 1'000'000'000ULL;

/// Work limits and parallelism for exponential enumerations.
struct WorkBudget {
  std::uint64_t max_visits = kDefaultMaxVisits;
  unsigned jobs = 1;
  /// Optional shared counter of chain (or assignment) visits performed.
  std::shared_ptr<std::atomic<std::uint64_t>> visits;

  /// Default budget, with CHAINPOLY_MAX_VISITS overriding the visit cap.
  static WorkBudget from_env() {
    WorkBudget b;
    if (const char* env = std::getenv("CHAINPOLY_MAX_VISITS"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != nullptr && *end == '\0') b.max_visits = v;
    }
    return b;
  }

  void record(std::uint64_t n) const {
    if (visits) visits->fetch_add(n, std::memory_order_relaxed);
  }
};

/// base^exp, saturating at UINT64_MAX.
inline std::uint64_t saturating_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

/// |C^k| = (k+1)^n.
inline std::uint64_t chain_count(int n, int k) {
  return saturating_pow(static_cast<std::uint64_t>(k) + 1, n);
}

inline void require_visits(std::uint64_t required, const WorkBudget& budget, const std::string& what) {
  if (required > budget.max_visits) {
    throw SizeCapError(what + " needs " + std::to_string(required) + " visits but the cap is " +
                           std::to_string(budget.max_visits) +
                           "; raise --max-visits or CHAINPOLY_MAX_VISITS",
                       required, budget.max_visits);
  }
}

inline void require_chain_budget(int n, int k, const WorkBudget& budget, const std::string& what) {
  if (k < 1) throw InvalidParameters("chain length k must be >= 1, got " + std::to_string(k));
  require_visits(chain_count(n, k), budget, what);
}

/// A chain of k nested subsets stored as per-element levels: levels[e] in
/// 1..k is the first A_i containing e; kAbsent means e is not in A_k.
class SubsetChain {
 public:
  static constexpr std::uint8_t kAbsent = 0xFF;

  SubsetChain(int k, std::vector<std::uint8_t> levels) : k_(k), levels_(std::move(levels)) {
    if (k < 1 || k > 254) throw ContractViolation("chain length must lie in [1, 254]");
    if (levels_.size() > static_cast<std::size_t>(kMaxGroundSize)) {
      throw ContractViolation("chains support at most 63 elements");
    }
    for (auto l : levels_) {
      if (l != kAbsent && (l < 1 || l > k)) throw ContractViolation("level out of range");
    }
  }

  /// Encodes nested sets A_1 ⊆ ... ⊆ A_k.
  static SubsetChain from_sets(const std::vector<Subset>& sets) {
    if (sets.empty()) throw ContractViolation("a chain needs at least one set");
    const int n = sets.front().width();
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].width() != n) throw ContractViolation("chain sets have different widths");
      if (i > 0 && !sets[i - 1].is_subset_of(sets[i])) {
        throw ContractViolation("chain is not nested at position " + std::to_string(i + 1));
      }
    }
    std::vector<std::uint8_t> levels(static_cast<std::size_t>(n), kAbsent);
    for (std::size_t i = sets.size(); i-- > 0;) {
      for (ElementId a : sets[i].elements()) levels[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(i + 1);
    }
    return SubsetChain(static_cast<int>(sets.size()), std::move(levels));
  }

  /// Mixed-radix decoding: digit e (base k+1) is 0 for absent, else the level.
  static SubsetChain from_index(int n, int k, std::uint64_t index) {
    std::vector<std::uint8_t> levels(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) {
      const auto digit = static_cast<std::uint8_t>(index % static_cast<std::uint64_t>(k + 1));
      index /= static_cast<std::uint64_t>(k + 1);
      levels[static_cast<std::size_t>(e)] = digit == 0 ? kAbsent : digit;
    }
    if (index != 0) throw ContractViolation("chain index out of range");
    return SubsetChain(k, std::move(levels));
  }

  std::uint64_t index() const {
    std::uint64_t out = 0;
    for (std::size_t e = levels_.size(); e-- > 0;) {
      out = out * static_cast<std::uint64_t>(k_ + 1) + (levels_[e] == kAbsent ? 0 : levels_[e]);
    }
    return out;
  }

  int k() const noexcept { return k_; }
  int ground_size() const noexcept { return static_cast<int>(levels_.size()); }
  const std::vector<std::uint8_t>& levels() const noexcept { return levels_; }

  std::vector<Subset> sets() const {
    const int n = ground_size();
    std::vector<std::uint64_t> masks(static_cast<std::size_t>(k_), 0);
    for (int e = 0; e < n; ++e) {
      const auto l = levels_[static_cast<std::size_t>(e)];
      if (l == kAbsent) continue;
      for (int i = l - 1; i < k_; ++i) masks[static_cast<std::size_t>(i)] |= std::uint64_t{1} << e;
    }
    std::vector<Subset> out;
    for (auto m : masks) out.emplace_back(n, m);
    return out;
  }

  friend bool operator==(const SubsetChain&, const SubsetChain&) = default;

 private:
  int k_;
  std::vector<std::uint8_t> levels_;
};

namespace detail {

/// Depth-first walk over the level digits of elements [first, n). `masks`
/// holds A_1..A_k for the digits already fixed.
template <class Leaf>
void walk_chains(int first, int n, int k, std::uint64_t* masks, Leaf& leaf) {
  if (first == n) {
    leaf(static_cast<const std::uint64_t*>(masks));
    return;
  }
  const std::uint64_t bit = std::uint64_t{1} << first;
  walk_chains(first + 1, n, k, masks, leaf);
  // Entering at level i puts the element in A_i, ..., A_k.
  for (int i = k - 1; i >= 0; --i) {
    masks[i] |= bit;
    walk_chains(first + 1, n, k, masks, leaf);
  }
  for (int i = 0; i < k; ++i) masks[i] &= ~bit;
}

}  // namespace detail

/// Calls leaf(masks) once per chain, masks[i] = A_{i+1} as a bitmask.
template <class Leaf>
void for_each_chain(int n, int k, Leaf&& leaf) {
  if (n < 0 || n > kMaxGroundSize) throw ContractViolation("chain enumeration supports 0 <= n <= 63");
  if (k < 1) throw InvalidParameters("chain length k must be >= 1");
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(k), 0);
  detail::walk_chains(0, n, k, masks.data(), leaf);
}

/// Parallel variant: `make_worker()` builds one per-thread leaf callback;
/// the leading digits are partitioned into tasks pulled by `jobs` threads.
/// Returns the workers so the caller can reduce their state.
template <class MakeWorker>
auto for_each_chain_parallel(int n, int k, unsigned jobs, MakeWorker&& make_worker) {
  using Worker = decltype(make_worker());
  if (k < 1) throw InvalidParameters("chain length k must be >= 1");
  jobs = std::max(1U, jobs);
  // Enough prefix digits for a few tasks per worker.
  int prefix = 0;
  std::uint64_t tasks = 1;
  while (prefix < n && tasks < static_cast<std::uint64_t>(jobs) * 8 && jobs > 1) {
    tasks *= static_cast<std::uint64_t>(k + 1);
    ++prefix;
  }
  std::vector<Worker> workers;
  workers.reserve(jobs);
  for (unsigned j = 0; j < jobs; ++j) workers.push_back(make_worker());
  if (jobs == 1) {
    std::vector<std::uint64_t> masks(static_cast<std::size_t>(k), 0);
    detail::walk_chains(0, n, k, masks.data(), workers.front());
    return workers;
  }
  std::atomic<std::uint64_t> next{0};
  auto run = [&](Worker& worker) {
    std::vector<std::uint64_t> masks(static_cast<std::size_t>(k));
    for (std::uint64_t t = next.fetch_add(1); t < tasks; t = next.fetch_add(1)) {
      std::fill(masks.begin(), masks.end(), 0);
      std::uint64_t digits = t;
      for (int e = 0; e < prefix; ++e) {
        const auto d = static_cast<int>(digits % static_cast<std::uint64_t>(k + 1));
        digits /= static_cast<std::uint64_t>(k + 1);
        if (d == 0) continue;
        for (int i = d - 1; i < k; ++i) masks[static_cast<std::size_t>(i)] |= std::uint64_t{1} << e;
      }
      detail::walk_chains(prefix, n, k, masks.data(), worker);
    }
  };
  std::vector<std::thread> threads;
  for (unsigned j = 1; j < jobs; ++j) threads.emplace_back(run, std::ref(workers[j]));
  run(workers[0]);
  for (auto& t : threads) t.join();
  return workers;
}

/// How one level of the chain contributes to a monomial.
struct LevelSpec {
  /// Rank of every subset of the enumeration ground set, by bitmask.
  const std::uint8_t* ranks = nullptr;
  /// Rank of the whole ground set in this level's matroid.
  int top_rank = 0;
  /// Output variable receiving top_rank - rk(A_i), or -1.
  int corank_var = -1;
  /// Output variable receiving |A_i| - rk(A_i), or -1.
  int nullity_var = -1;
};

/// Sum over all chains of (sign) * prod_i var^exponent, with the
/// per-level contributions described by `levels`.
struct ChainSumSpec {
  int n = 0;
  std::vector<LevelSpec> levels;
  std::vector<std::string> vars;
  /// Multiply every chain by prod_i (-1)^{|A_i|}.
  bool alternating = false;
};

namespace detail {

inline constexpr std::uint64_t kDenseGridLimit = std::uint64_t{1} << 22;

struct ExponentGrid {
  std::vector<std::uint64_t> range;   // per variable, max exponent + 1
  std::vector<std::uint64_t> stride;  // mixed-radix strides
  std::uint64_t size = 1;
};

inline ExponentGrid exponent_grid(const ChainSumSpec& spec) {
  ExponentGrid g;
  g.range.assign(spec.vars.size(), 1);
  for (const auto& l : spec.levels) {
    if (l.corank_var >= 0) g.range[static_cast<std::size_t>(l.corank_var)] += static_cast<std::uint64_t>(l.top_rank);
    if (l.nullity_var >= 0) {
      g.range[static_cast<std::size_t>(l.nullity_var)] += static_cast<std::uint64_t>(spec.n - l.top_rank);
    }
  }
  g.stride.resize(spec.vars.size());
  for (std::size_t v = 0; v < spec.vars.size(); ++v) {
    g.stride[v] = g.size;
    if (g.size > UINT64_MAX / g.range[v]) {
      throw InvalidParameters("exponent space of the chain sum does not fit in 64 bits");
    }
    g.size *= g.range[v];
  }
  return g;
}

/// Per-thread accumulator for ChainSumSpec.
class ChainSumWorker {
 public:
  ChainSumWorker(const ChainSumSpec& spec, const ExponentGrid& grid)
      : spec_(&spec), grid_(&grid), dense_(grid.size <= kDenseGridLimit) {
    if (dense_) counts_.assign(grid.size, 0);
    for (const auto& l : spec.levels) {
      corank_stride_.push_back(l.corank_var >= 0 ? grid.stride[static_cast<std::size_t>(l.corank_var)] : 0);
      nullity_stride_.push_back(l.nullity_var >= 0 ? grid.stride[static_cast<std::size_t>(l.nullity_var)] : 0);
    }
  }

  void operator()(const std::uint64_t* masks) {
    std::uint64_t index = 0;
    int parity = 0;
    const std::size_t k = spec_->levels.size();
    for (std::size_t i = 0; i < k; ++i) {
      const auto& level = spec_->levels[i];
      const int size = std::popcount(masks[i]);
      const int r = level.ranks[masks[i]];
      index += corank_stride_[i] * static_cast<std::uint64_t>(level.top_rank - r) +
               nullity_stride_[i] * static_cast<std::uint64_t>(size - r);
      parity ^= size;
    }
    const std::int64_t w = (spec_->alternating && (parity & 1)) ? -1 : 1;
    if (dense_) {
      counts_[index] += w;
    } else {
      sparse_[index] += w;
    }
    ++visits_;
  }

  void merge_into(std::vector<std::int64_t>& dense, std::unordered_map<std::uint64_t, std::int64_t>& sparse) const {
    if (dense_) {
      for (std::size_t i = 0; i < counts_.size(); ++i) dense[i] += counts_[i];
    } else {
      for (const auto& [idx, c] : sparse_) sparse[idx] += c;
    }
  }
  bool dense() const noexcept { return dense_; }
  std::uint64_t visits() const noexcept { return visits_; }

 private:
  const ChainSumSpec* spec_;
  const ExponentGrid* grid_;
  bool dense_;
  std::vector<std::int64_t> counts_;
  std::unordered_map<std::uint64_t, std::int64_t> sparse_;
  std::vector<std::uint64_t> corank_stride_;
  std::vector<std::uint64_t> nullity_stride_;
  std::uint64_t visits_ = 0;
};

}  // namespace detail

/// Evaluates a ChainSumSpec by full enumeration of the (k+1)^n chains.
inline MultiPoly chain_sum(const ChainSumSpec& spec, const WorkBudget& budget, const std::string& what) {
  const int k = static_cast<int>(spec.levels.size());
  require_chain_budget(spec.n, k, budget, what);
  for (const auto& l : spec.levels) {
    if (l.ranks == nullptr) throw ContractViolation("chain sum level without a rank table");
  }
  const auto grid = detail::exponent_grid(spec);
  auto workers = for_each_chain_parallel(spec.n, k, budget.jobs,
                                         [&] { return detail::ChainSumWorker(spec, grid); });
  std::vector<std::int64_t> dense;
  std::unordered_map<std::uint64_t, std::int64_t> sparse;
  if (workers.front().dense()) dense.assign(grid.size, 0);
  std::uint64_t visits = 0;
  for (const auto& w : workers) {
    w.merge_into(dense, sparse);
    visits += w.visits();
  }
  budget.record(visits);

  MultiPoly out(spec.vars);
  Exponents e(spec.vars.size());
  auto emit = [&](std::uint64_t idx, std::int64_t c) {
    if (c == 0) return;
    for (std::size_t v = 0; v < e.size(); ++v) {
      e[v] = static_cast<std::uint32_t>((idx / grid.stride[v]) % grid.range[v]);
    }
    out.add_term(e, Rational(c));
  };
  if (!dense.empty()) {
    for (std::uint64_t i = 0; i < dense.size(); ++i) emit(i, dense[i]);
  } else {
    for (const auto& [idx, c] : sparse) emit(idx, c);
  }
  return out;
}

}  // namespace chainpoly
