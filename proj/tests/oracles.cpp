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

#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace oracle {

namespace {

int popcount(std::uint64_t x) { return std::popcount(x); }

/// Coefficients of (z - 1)^d, lowest power first.
std::vector<long long> shifted_power(int d) {
  std::vector<long long> c{1};
  for (int i = 0; i < d; ++i) {
    std::vector<long long> next(c.size() + 1, 0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] -= c[j];
    }
    c = std::move(next);
  }
  return c;
}

void add(Coeffs& c, const std::vector<int>& e, long long v) {
  long long& slot = c[e];
  slot += v;
  if (slot == 0) c.erase(e);
}

}  // namespace

RankFn uniform_rank(int r) {
  return [r](std::uint64_t s) { return std::min(popcount(s), r); };
}

RankFn graph_rank(int num_vertices, const EdgeList& edges) {
  return [num_vertices, edges](std::uint64_t s) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(num_vertices));
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!((s >> e) & 1)) continue;
      adj[static_cast<std::size_t>(edges[e].first)].push_back(edges[e].second);
      adj[static_cast<std::size_t>(edges[e].second)].push_back(edges[e].first);
    }
    std::vector<bool> seen(static_cast<std::size_t>(num_vertices), false);
    int comps = 0;
    for (int v = 0; v < num_vertices; ++v) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      ++comps;
      std::vector<int> stack{v};
      seen[static_cast<std::size_t>(v)] = true;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<std::size_t>(u)]) {
          if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = true;
            stack.push_back(w);
          }
        }
      }
    }
    return num_vertices - comps;
  };
}

RankFn dual_rank(int n, const RankFn& rk) {
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const int r = rk(all);
  return [rk, all, r](std::uint64_t s) { return popcount(s) - r + rk(all & ~s); };
}

void for_each_chain(int n, int k, const std::function<void(const std::vector<std::uint64_t>&)>& visit) {
  std::vector<std::uint64_t> chain(static_cast<std::size_t>(k));
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  std::function<void(int, std::uint64_t)> rec = [&](int level, std::uint64_t outer) {
    if (level < 0) {
      visit(chain);
      return;
    }
    // All submasks of `outer`, including 0 and `outer` itself.
    std::uint64_t sub = outer;
    while (true) {
      chain[static_cast<std::size_t>(level)] = sub;
      rec(level - 1, sub);
      if (sub == 0) break;
      sub = (sub - 1) & outer;
    }
  };
  rec(k - 1, all);
}

Coeffs chain_characteristic(int n, int k, const RankFn& rk) {
  const int r = rk((std::uint64_t{1} << n) - 1);
  Coeffs out;
  std::vector<int> e(static_cast<std::size_t>(k));
  for_each_chain(n, k, [&](const std::vector<std::uint64_t>& a) {
    int sign = 1;
    for (int i = 0; i < k; ++i) {
      e[static_cast<std::size_t>(i)] = r - rk(a[static_cast<std::size_t>(i)]);
      if (popcount(a[static_cast<std::size_t>(i)]) % 2) sign = -sign;
    }
    add(out, e, sign);
  });
  return out;
}

Coeffs chain_tutte(int n, int k, const RankFn& rk) {
  const int r = rk((std::uint64_t{1} << n) - 1);
  Coeffs out;
  for_each_chain(n, k, [&](const std::vector<std::uint64_t>& s) {
    // Expand prod_i (x_i - 1)^{a_i} (y_i - 1)^{b_i} term by term.
    Coeffs term{{std::vector<int>(static_cast<std::size_t>(2 * k), 0), 1}};
    for (int i = 0; i < k; ++i) {
      const int rs = rk(s[static_cast<std::size_t>(i)]);
      const auto px = shifted_power(r - rs);
      const auto py = shifted_power(popcount(s[static_cast<std::size_t>(i)]) - rs);
      Coeffs next;
      for (const auto& [exp, c] : term) {
        for (std::size_t a = 0; a < px.size(); ++a) {
          for (std::size_t b = 0; b < py.size(); ++b) {
            auto e = exp;
            e[static_cast<std::size_t>(i)] = static_cast<int>(a);
            e[static_cast<std::size_t>(k + i)] = static_cast<int>(b);
            add(next, e, c * px[a] * py[b]);
          }
        }
      }
      term = std::move(next);
    }
    for (const auto& [exp, c] : term) add(out, exp, c);
  });
  return out;
}

Coeffs chain_flow(int n, int k, const RankFn& rk) {
  Coeffs out;
  const int global = (k * n) % 2 ? -1 : 1;
  std::vector<int> e(static_cast<std::size_t>(k));
  for_each_chain(n, k, [&](const std::vector<std::uint64_t>& b) {
    int sign = global;
    for (int i = 0; i < k; ++i) {
      const auto s = b[static_cast<std::size_t>(i)];
      e[static_cast<std::size_t>(i)] = popcount(s) - rk(s);
      if (popcount(s) % 2) sign = -sign;
    }
    add(out, e, sign);
  });
  return out;
}

std::vector<std::uint64_t> flats(int n, const RankFn& rk) {
  std::set<std::uint64_t> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    std::uint64_t c = s;
    const int r = rk(s);
    for (int a = 0; a < n; ++a) {
      if (rk(s | (std::uint64_t{1} << a)) == r) c |= std::uint64_t{1} << a;
    }
    out.insert(c);
  }
  return {out.begin(), out.end()};
}

Coeffs mobius_poly(int n, const RankFn& rk) {
  const auto fl = flats(n, rk);
  const int r = rk((std::uint64_t{1} << n) - 1);
  auto leq = [](std::uint64_t x, std::uint64_t y) { return (x & ~y) == 0; };
  Coeffs out;
  for (auto x : fl) {
    // mu(x, y) by the recursive definition, memoized on y.
    std::map<std::uint64_t, long long> mu;
    std::function<long long(std::uint64_t)> get = [&](std::uint64_t y) -> long long {
      if (y == x) return 1;
      auto it = mu.find(y);
      if (it != mu.end()) return it->second;
      long long s = 0;
      for (auto z : fl) {
        if (z != y && leq(x, z) && leq(z, y)) s += get(z);
      }
      mu[y] = -s;
      return -s;
    };
    for (auto y : fl) {
      if (!leq(x, y)) continue;
      add(out, {rk(x), r - rk(y)}, get(y));
    }
  }
  return out;
}

long long chain_mobius(int n, const RankFn& rk, const std::vector<std::uint64_t>& flat_chain) {
  auto closure = [&](std::uint64_t s) {
    std::uint64_t c = s;
    const int r = rk(s);
    for (int a = 0; a < n; ++a) {
      if (rk(s | (std::uint64_t{1} << a)) == r) c |= std::uint64_t{1} << a;
    }
    return c;
  };
  const int k = static_cast<int>(flat_chain.size());
  long long total = 0;
  for_each_chain(n, k, [&](const std::vector<std::uint64_t>& a) {
    int sign = 1;
    for (int i = 0; i < k; ++i) {
      if (closure(a[static_cast<std::size_t>(i)]) != flat_chain[static_cast<std::size_t>(i)]) return;
      if (popcount(a[static_cast<std::size_t>(i)]) % 2) sign = -sign;
    }
    total += sign;
  });
  return total;
}

bool coupled(const std::vector<bool>& agree, std::size_t from) {
  const std::size_t left = agree.size() - from;
  if (left == 0) return true;
  if (left == 1) return !agree[from];
  if (!agree[from]) return true;
  return agree[from + 1] && coupled(agree, from + 2);
}

std::uint64_t count_colorings(int num_vertices, const EdgeList& edges, const std::vector<int>& palette) {
  const std::size_t k = palette.size();
  std::vector<std::vector<int>> f(k, std::vector<int>(static_cast<std::size_t>(num_vertices), 0));
  std::uint64_t count = 0;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int v) {
    if (i == k) {
      std::vector<bool> agree(k);
      for (auto [a, b] : edges) {
        for (std::size_t j = 0; j < k; ++j) {
          agree[j] = f[j][static_cast<std::size_t>(a)] == f[j][static_cast<std::size_t>(b)];
        }
        if (!coupled(agree)) return;
      }
      ++count;
      return;
    }
    if (v == num_vertices) {
      rec(i + 1, 0);
      return;
    }
    for (int c = 0; c < palette[i]; ++c) {
      f[i][static_cast<std::size_t>(v)] = c;
      rec(i, v + 1);
    }
  };
  rec(0, 0);
  return count;
}

std::uint64_t count_flows(int num_vertices, const EdgeList& arcs, const std::vector<std::vector<int>>& groups) {
  const std::size_t k = groups.size();
  const std::size_t m = arcs.size();
  // A group element is a vector of residues, one per cyclic factor.
  using Element = std::vector<int>;
  std::vector<std::vector<std::vector<Element>>> flows(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& fac = groups[i];
    std::vector<Element> elements{Element(fac.size(), 0)};
    for (std::size_t d = 0; d < fac.size(); ++d) {
      std::vector<Element> next;
      for (const auto& el : elements) {
        for (int x = 0; x < fac[d]; ++x) {
          auto e = el;
          e[d] = x;
          next.push_back(e);
        }
      }
      elements = std::move(next);
    }
    std::vector<Element> f(m);
    std::function<void(std::size_t)> rec = [&](std::size_t e) {
      if (e == m) {
        for (int v = 0; v < num_vertices; ++v) {
          for (std::size_t d = 0; d < fac.size(); ++d) {
            long long net = 0;
            for (std::size_t a = 0; a < m; ++a) {
              if (arcs[a].second == v) net += f[a][d];
              if (arcs[a].first == v) net -= f[a][d];
            }
            if (((net % fac[d]) + fac[d]) % fac[d] != 0) return;
          }
        }
        flows[i].push_back(f);
        return;
      }
      for (const auto& el : elements) {
        f[e] = el;
        rec(e + 1);
      }
    };
    rec(0);
  }
  auto is_zero = [](const Element& e) { return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; }); };
  std::uint64_t count = 0;
  std::vector<const std::vector<Element>*> pick(k);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      std::vector<bool> zero(k);
      for (std::size_t e = 0; e < m; ++e) {
        for (std::size_t j = 0; j < k; ++j) zero[j] = is_zero((*pick[j])[e]);
        if (!coupled(zero)) return;
      }
      ++count;
      return;
    }
    for (const auto& f : flows[i]) {
      pick[i] = &f;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

chainpoly::MultiPoly to_poly(const Coeffs& c, const std::vector<std::string>& vars) {
  chainpoly::MultiPoly p(vars);
  for (const auto& [exp, coef] : c) {
    chainpoly::Exponents e(exp.begin(), exp.end());
    p.add_term(e, chainpoly::Rational(coef));
  }
  return p;
}

}  // namespace oracle
