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

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "chainpoly/errors.hpp"

namespace chainpoly {

/// Ground sets are single-word bitsets.
inline constexpr int kMaxGroundSize = 63;

using ElementId = int;

/// Mask with the low `n` bits set.
constexpr std::uint64_t low_bits(int n) noexcept {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

/// A subset of a ground set {0, ..., width-1}. The width is part of the
/// value: rank queries reject subsets built for a different ground set.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr Subset(int width, std::uint64_t bits) : width_(width), bits_(bits) {
    if (width < 0 || width > kMaxGroundSize) {
      throw ContractViolation("subset width " + std::to_string(width) +
                              " outside [0, 63]");
    }
    if ((bits & ~low_bits(width)) != 0) {
      throw ContractViolation("subset has bits beyond its width " +
                              std::to_string(width));
    }
  }

  static Subset empty(int width) { return Subset(width, 0); }
  static Subset full(int width) { return Subset(width, low_bits(width)); }
  static Subset of(int width, std::initializer_list<ElementId> ids) {
    std::uint64_t bits = 0;
    for (ElementId id : ids) {
      if (id < 0 || id >= width) {
        throw ContractViolation("element " + std::to_string(id) +
                                " outside ground set of size " +
                                std::to_string(width));
      }
      bits |= std::uint64_t{1} << id;
    }
    return Subset(width, bits);
  }

  constexpr int width() const noexcept { return width_; }
  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr int size() const noexcept { return std::popcount(bits_); }
  constexpr bool empty() const noexcept { return bits_ == 0; }

  constexpr bool contains(ElementId a) const noexcept {
    return a >= 0 && a < width_ && ((bits_ >> a) & 1U) != 0;
  }
  constexpr bool is_subset_of(const Subset& other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }

  Subset with(ElementId a) const { return Subset(width_, bits_ | bit(a)); }
  Subset without(ElementId a) const { return Subset(width_, bits_ & ~bit(a)); }
  Subset complement() const { return Subset(width_, ~bits_ & low_bits(width_)); }

  Subset operator|(const Subset& o) const { return Subset(same(o), bits_ | o.bits_); }
  Subset operator&(const Subset& o) const { return Subset(same(o), bits_ & o.bits_); }
  Subset operator-(const Subset& o) const { return Subset(same(o), bits_ & ~o.bits_); }

  std::vector<ElementId> elements() const {
    std::vector<ElementId> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b));
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (ElementId a : elements()) {
      if (!first) s += ",";
      s += std::to_string(a);
      first = false;
    }
    return s + "}";
  }

  friend constexpr bool operator==(const Subset&, const Subset&) = default;

  /// Ordering used for flats: cardinality first, then bit value.
  friend constexpr bool operator<(const Subset& a, const Subset& b) noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.bits_ < b.bits_;
  }

 private:
  std::uint64_t bit(ElementId a) const {
    if (a < 0 || a >= width_) {
      throw ContractViolation("element " + std::to_string(a) +
                              " outside ground set of size " +
                              std::to_string(width_));
    }
    return std::uint64_t{1} << a;
  }
  int same(const Subset& o) const {
    if (o.width_ != width_) {
      throw ContractViolation("subset width mismatch: " +
                              std::to_string(width_) + " vs " +
                              std::to_string(o.width_));
    }
    return width_;
  }

  int width_ = 0;
  std::uint64_t bits_ = 0;
};

}  // namespace chainpoly
