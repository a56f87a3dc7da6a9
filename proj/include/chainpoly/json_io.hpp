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

// JSON descriptions of graphs and matroids.
//
//   graph:    {"vertices": n, "edges": [[u, v], ...]}
//   matroid:  {"type": "uniform", "r": r, "n": n}
//             {"type": "graphic", "graph": <graph>}
//             {"type": "table", "n": n, "ranks": [rk(0), rk(1), ..., rk(2^n - 1)]}
//             {"type": "dual", "of": <matroid>}
//             {"type": "sum", "first": <matroid>, "second": <matroid>}
//             {"type": "delete" | "contract", "of": <matroid>, "element": e}
//             {"type": "minor", "of": <matroid>, "deleted": [...], "contracted": [...]}
//
// Table ranks are indexed by subset bitmask. Serialization emits the
// structure the matroid value actually holds, so nested minors come back as
// a single "minor" and a double dual as its original.

#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "chainpoly/errors.hpp"
#include "chainpoly/graph.hpp"
#include "chainpoly/matroid.hpp"

namespace chainpoly {

using OrderedJson = nlohmann::ordered_json;

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + "." + key, "missing field");
  return *it;
}

inline long long as_int(const nlohmann::json& j, const std::string& path, long long lo, long long hi) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  const long long v = j.get<long long>();
  if (v < lo || v > hi) {
    throw ParseError(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return v;
}

inline Subset as_subset(const nlohmann::json& j, int width, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of element ids");
  Subset s = Subset::empty(width);
  for (std::size_t i = 0; i < j.size(); ++i) {
    s = s.with(static_cast<ElementId>(as_int(j[i], path + "[" + std::to_string(i) + "]", 0, width - 1)));
  }
  return s;
}

/// Library errors raised while building a value are reported at `path`.
template <typename F>
auto at_path(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(path, e.what());
  }
}

}  // namespace detail

inline Graph graph_from_json(const nlohmann::json& j, const std::string& path = "$") {
  const int n = static_cast<int>(detail::as_int(detail::field(j, "vertices", path), path + ".vertices", 0, 1 << 20));
  const auto& edges = detail::field(j, "edges", path);
  if (!edges.is_array()) throw ParseError(path + ".edges", "expected an array");
  std::vector<Edge> list;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = path + ".edges[" + std::to_string(i) + "]";
    if (!edges[i].is_array() || edges[i].size() != 2) throw ParseError(p, "expected a pair [u, v]");
    const int u = static_cast<int>(detail::as_int(edges[i][0], p + "[0]", 0, n - 1));
    const int v = static_cast<int>(detail::as_int(edges[i][1], p + "[1]", 0, n - 1));
    list.emplace_back(u, v);
  }
  return detail::at_path(path, [&] { return Graph(n, std::move(list)); });
}

inline OrderedJson graph_to_json(const Graph& g) {
  OrderedJson j;
  j["vertices"] = g.num_vertices();
  j["edges"] = OrderedJson::array();
  for (const auto& [u, v] : g.edges()) j["edges"].push_back({u, v});
  return j;
}

inline Matroid matroid_from_json(const nlohmann::json& j, const std::string& path = "$") {
  const auto& type_field = detail::field(j, "type", path);
  if (!type_field.is_string()) throw ParseError(path + ".type", "expected a string");
  const std::string type = type_field.get<std::string>();
  if (type == "uniform") {
    const int r = static_cast<int>(detail::as_int(detail::field(j, "r", path), path + ".r", 0, kMaxGroundSize));
    const int n = static_cast<int>(detail::as_int(detail::field(j, "n", path), path + ".n", 0, kMaxGroundSize));
    return detail::at_path(path, [&] { return make_uniform(r, n); });
  }
  if (type == "graphic") {
    Graph g = graph_from_json(detail::field(j, "graph", path), path + ".graph");
    return detail::at_path(path, [&] { return make_graphic(g); });
  }
  if (type == "table") {
    const int n = static_cast<int>(detail::as_int(detail::field(j, "n", path), path + ".n", 0, 24));
    const auto& ranks = detail::field(j, "ranks", path);
    if (!ranks.is_array()) throw ParseError(path + ".ranks", "expected an array");
    if (ranks.size() != (std::size_t{1} << n)) {
      throw ParseError(path + ".ranks", "expected " + std::to_string(std::size_t{1} << n) + " entries");
    }
    std::vector<int> values;
    values.reserve(ranks.size());
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      values.push_back(static_cast<int>(detail::as_int(ranks[i], path + ".ranks[" + std::to_string(i) + "]", 0, n)));
    }
    return detail::at_path(path, [&] { return make_rank_table(n, values); });
  }
  if (type == "dual") return dual(matroid_from_json(detail::field(j, "of", path), path + ".of"));
  if (type == "sum") {
    Matroid a = matroid_from_json(detail::field(j, "first", path), path + ".first");
    Matroid b = matroid_from_json(detail::field(j, "second", path), path + ".second");
    return detail::at_path(path, [&] { return direct_sum(a, b); });
  }
  if (type == "delete" || type == "contract") {
    Matroid m = matroid_from_json(detail::field(j, "of", path), path + ".of");
    const auto e = static_cast<ElementId>(
        detail::as_int(detail::field(j, "element", path), path + ".element", 0, m.size() - 1));
    return type == "delete" ? delete_element(m, e) : contract(m, e);
  }
  if (type == "minor") {
    Matroid m = matroid_from_json(detail::field(j, "of", path), path + ".of");
    Subset del = detail::as_subset(detail::field(j, "deleted", path), m.size(), path + ".deleted");
    Subset con = detail::as_subset(detail::field(j, "contracted", path), m.size(), path + ".contracted");
    return detail::at_path(path, [&] { return minor(m, del, con); });
  }
  throw ParseError(path + ".type", "unknown matroid type '" + type + "'");
}

namespace detail {

inline OrderedJson node_to_json(const MatroidNode& node) {
  return std::visit(
      [&](const auto& k) -> OrderedJson {
        using K = std::decay_t<decltype(k)>;
        OrderedJson j;
        if constexpr (std::is_same_v<K, Matroid::Uniform>) {
          j["type"] = "uniform";
          j["r"] = k.r;
          j["n"] = node.n;
        } else if constexpr (std::is_same_v<K, Matroid::Graphic>) {
          j["type"] = "graphic";
          j["graph"] = graph_to_json(k.graph);
        } else if constexpr (std::is_same_v<K, Matroid::Table>) {
          j["type"] = "table";
          j["n"] = node.n;
          j["ranks"] = OrderedJson::array();
          for (auto r : k.ranks) j["ranks"].push_back(static_cast<int>(r));
        } else if constexpr (std::is_same_v<K, Matroid::Dual>) {
          j["type"] = "dual";
          j["of"] = node_to_json(*k.of);
        } else if constexpr (std::is_same_v<K, Matroid::Sum>) {
          j["type"] = "sum";
          j["first"] = node_to_json(*k.first);
          j["second"] = node_to_json(*k.second);
        } else {
          j["type"] = "minor";
          j["of"] = node_to_json(*k.parent);
          auto ids = [](std::uint64_t bits) {
            OrderedJson a = OrderedJson::array();
            for (; bits != 0; bits &= bits - 1) a.push_back(std::countr_zero(bits));
            return a;
          };
          j["deleted"] = ids(k.deleted);
          j["contracted"] = ids(k.contracted);
        }
        return j;
      },
      node.kind);
}

}  // namespace detail

inline OrderedJson matroid_to_json(const Matroid& m) {
  if (!m.node()) throw ContractViolation("empty matroid handle");
  return detail::node_to_json(*m.node());
}

/// Parses JSON text, turning syntax errors into ParseError with the byte
/// offset as location.
inline nlohmann::json parse_json_text(const std::string& text, const std::string& source = "input") {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + "@byte " + std::to_string(e.byte), "malformed JSON");
  }
}

inline Matroid parse_matroid(const std::string& text) { return matroid_from_json(parse_json_text(text)); }
inline Graph parse_graph(const std::string& text) { return graph_from_json(parse_json_text(text)); }

}  // namespace chainpoly
