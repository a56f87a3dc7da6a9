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
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "chainpoly/errors.hpp"
#include "chainpoly/matroid.hpp"
#include "chainpoly/subset.hpp"

namespace chainpoly {

inline constexpr int kDefaultFlatCap = 20;

/// The lattice of flats L(M), sorted by (cardinality, bit value). Index 0 is
/// the bottom closure(empty), the last index is the top (the ground set).
class FlatLattice {
 public:
  FlatLattice() = default;
  FlatLattice(int ground_size, std::vector<Subset> flats, std::vector<int> ranks)
      : ground_size_(ground_size), flats_(std::move(flats)), ranks_(std::move(ranks)) {
    for (std::size_t i = 0; i < flats_.size(); ++i) index_.emplace(flats_[i].bits(), static_cast<int>(i));
  }

  int ground_size() const noexcept { return ground_size_; }
  int size() const noexcept { return static_cast<int>(flats_.size()); }
  const std::vector<Subset>& flats() const noexcept { return flats_; }
  const Subset& flat(int i) const { return flats_.at(static_cast<std::size_t>(i)); }
  int rank(int i) const { return ranks_.at(static_cast<std::size_t>(i)); }
  int bottom() const noexcept { return 0; }
  int top() const noexcept { return size() - 1; }

  /// Index of `s`, or -1 when `s` is not a flat.
  int index_of(const Subset& s) const {
    auto it = index_.find(s.bits());
    return it == index_.end() ? -1 : it->second;
  }

  bool leq(int i, int j) const { return flat(i).is_subset_of(flat(j)); }

 private:
  int ground_size_ = 0;
  std::vector<Subset> flats_;
  std::vector<int> ranks_;
  std::unordered_map<std::uint64_t, int> index_;
};

/// All flats of m. Generated from the bottom by covers cl(F + a); refuses
/// ground sets larger than `cap`.
inline FlatLattice flats(const Matroid& m, int cap = kDefaultFlatCap) {
  const int n = m.size();
  if (n > cap) {
    throw SizeCapError("flat lattice of a " + std::to_string(n) + "-element matroid exceeds the cap of " +
                           std::to_string(cap) + " elements",
                       static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(cap));
  }
  std::vector<Subset> found;
  std::unordered_map<std::uint64_t, bool> seen;
  std::deque<Subset> queue;
  const Subset bottom = closure(m, Subset::empty(n));
  queue.push_back(bottom);
  seen.emplace(bottom.bits(), true);
  while (!queue.empty()) {
    Subset f = queue.front();
    queue.pop_front();
    found.push_back(f);
    for (int a = 0; a < n; ++a) {
      if (f.contains(a)) continue;
      Subset g = closure(m, f.with(a));
      if (seen.emplace(g.bits(), true).second) queue.push_back(g);
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<int> ranks;
  ranks.reserve(found.size());
  for (const auto& f : found) ranks.push_back(m.rank(f));
  return FlatLattice(n, std::move(found), std::move(ranks));
}

/// Classic Moebius function of L(M): mu[i][j] for flats i <= j, zero
/// elsewhere. mu(X, X) = 1 and sum_{X <= Y <= Z} mu(X, Y) = 0 for X < Z.
inline std::vector<std::vector<long long>> mobius_matrix(const FlatLattice& lattice) {
  const int size = lattice.size();
  std::vector<std::vector<long long>> mu(static_cast<std::size_t>(size),
                                         std::vector<long long>(static_cast<std::size_t>(size), 0));
  for (int x = 0; x < size; ++x) {
    auto& row = mu[static_cast<std::size_t>(x)];
    row[static_cast<std::size_t>(x)] = 1;
    // Sorted by cardinality, so every Y strictly between X and Z precedes Z.
    for (int z = x + 1; z < size; ++z) {
      if (!lattice.leq(x, z)) continue;
      long long sum = 0;
      for (int y = x; y < z; ++y) {
        if (lattice.leq(x, y) && lattice.leq(y, z)) sum += row[static_cast<std::size_t>(y)];
      }
      row[static_cast<std::size_t>(z)] = -sum;
    }
  }
  return mu;
}

}  // namespace chainpoly
