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

// Exact sparse multivariate polynomials with rational coefficients.
//
// A MultiPoly lives over an ordered list of variable names. Terms are kept
// in a map ordered graded-lexicographically (highest total degree first,
// ties broken lexicographically in variable order), so iteration order is
// the canonical print order and two equal polynomials serialize to the same
// bytes. Zero coefficients are never stored.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "chainpoly/errors.hpp"

namespace chainpoly {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;
using Exponents = std::vector<std::uint32_t>;

inline std::string rational_to_string(const Rational& q) {
  const Integer& num = boost::multiprecision::numerator(q);
  const Integer& den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Accepts "p", "-p", "p/q" with decimal integers.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> Integer {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      neg = s[i] == '-';
      ++i;
    }
    if (i == s.size()) throw ParseError("", "empty integer in rational '" + std::string(text) + "'");
    Integer v = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
        throw ParseError("", "bad digit in rational '" + std::string(text) + "'");
      }
      v = v * 10 + (s[i] - '0');
    }
    return neg ? Integer(-v) : v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError("", "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

/// Graded lexicographic order, largest first.
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const noexcept {
    const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db) return da > db;
    return b < a;
  }
};

/// {prefix}1 ... {prefix}k
inline std::vector<std::string> indexed_vars(const std::string& prefix, int k) {
  std::vector<std::string> out;
  for (int i = 1; i <= k; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexGreater>;

  MultiPoly() = default;

  /// The zero polynomial over `vars`.
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
    std::set<std::string> seen;
    for (const auto& v : vars_) {
      if (v.empty() || !seen.insert(v).second) {
        throw ContractViolation("variable names must be unique and non-empty");
      }
    }
  }

  static MultiPoly constant(std::vector<std::string> vars, const Rational& c) {
    MultiPoly p(std::move(vars));
    p.add_term(Exponents(p.vars_.size(), 0), c);
    return p;
  }

  static MultiPoly variable(std::vector<std::string> vars, std::string_view name) {
    MultiPoly p(std::move(vars));
    const int idx = p.var_index(name);
    if (idx < 0) throw ContractViolation("unknown variable '" + std::string(name) + "'");
    Exponents e(p.vars_.size(), 0);
    e[static_cast<std::size_t>(idx)] = 1;
    p.add_term(e, 1);
    return p;
  }

  const std::vector<std::string>& vars() const noexcept { return vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  int var_index(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return static_cast<int>(i);
    }
    return -1;
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Adds c * x^e to the polynomial.
  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != vars_.size()) {
      throw ContractViolation("exponent vector length " + std::to_string(e.size()) +
                              " does not match " + std::to_string(vars_.size()) +
                              " variables");
    }
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Re-expresses the polynomial over `vars`. Variables may be added or
  /// reordered; a variable can be dropped only if no term uses it.
  MultiPoly with_vars(std::vector<std::string> vars) const {
    MultiPoly out(std::move(vars));
    std::vector<int> where(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) where[i] = out.var_index(vars_[i]);
    for (const auto& [e, c] : terms_) {
      Exponents ne(out.vars_.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (where[i] < 0) {
          throw ContractViolation("cannot drop variable '" + vars_[i] + "' still in use");
        }
        ne[static_cast<std::size_t>(where[i])] = e[i];
      }
      out.add_term(ne, c);
    }
    return out;
  }

  /// Union of variable lists: lhs order, then new names from rhs.
  static std::vector<std::string> merged_vars(const std::vector<std::string>& a,
                                              const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    for (const auto& v : b) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    return out;
  }

  MultiPoly& operator+=(const MultiPoly& rhs) {
    if (rhs.vars_ != vars_) {
      auto vars = merged_vars(vars_, rhs.vars_);
      if (vars != vars_) *this = with_vars(vars);
      MultiPoly aligned = rhs.with_vars(vars_);
      for (const auto& [e, c] : aligned.terms_) add_term(e, c);
      return *this;
    }
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
  }

  friend MultiPoly operator+(MultiPoly lhs, const MultiPoly& rhs) { return lhs += rhs; }
  friend MultiPoly operator-(MultiPoly lhs, const MultiPoly& rhs) { return lhs += -rhs; }

  MultiPoly operator-() const { return scale(-1); }

  MultiPoly scale(const Rational& c) const {
    MultiPoly out(vars_);
    if (c == 0) return out;
    for (const auto& [e, coef] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, coef * c);
    return out;
  }

  friend MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs) {
    if (lhs.vars_ != rhs.vars_) {
      auto vars = merged_vars(lhs.vars_, rhs.vars_);
      return lhs.with_vars(vars) * rhs.with_vars(vars);
    }
    MultiPoly out(lhs.vars_);
    Exponents e(lhs.vars_.size());
    for (const auto& [ea, ca] : lhs.terms_) {
      for (const auto& [eb, cb] : rhs.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  MultiPoly pow(unsigned exponent) const {
    MultiPoly result = constant(vars_, 1);
    MultiPoly base = *this;
    while (exponent != 0) {
      if (exponent & 1U) result = result * base;
      exponent >>= 1U;
      if (exponent != 0) base = base * base;
    }
    return result;
  }

  std::uint32_t degree_in(std::string_view var) const {
    const int idx = var_index(var);
    if (idx < 0) return 0;
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(idx)]);
    return d;
  }

  std::uint32_t total_degree() const {
    if (terms_.empty()) return 0;
    const auto& e = terms_.begin()->first;
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
  }

  bool is_integral() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
      return boost::multiprecision::denominator(t.second) == 1;
    });
  }

  Rational evaluate(const std::map<std::string, Rational>& point) const {
    std::vector<Rational> values;
    values.reserve(vars_.size());
    for (const auto& v : vars_) {
      auto it = point.find(v);
      if (it == point.end()) throw ContractViolation("unbound variable '" + v + "'");
      values.push_back(it->second);
    }
    std::vector<std::vector<Rational>> powers(vars_.size(), std::vector<Rational>{1});
    auto power = [&](std::size_t i, std::uint32_t k) -> const Rational& {
      auto& p = powers[i];
      while (p.size() <= k) p.push_back(p.back() * values[i]);
      return p[k];
    };
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] != 0) term *= power(i, e[i]);
      }
      total += term;
    }
    return total;
  }

  /// Simultaneous substitution. A bound variable stays in the result's
  /// variable list only if it occurs in some binding; new variables from
  /// the bindings are appended in order of first appearance.
  MultiPoly substitute(const std::map<std::string, MultiPoly>& bindings) const {
    for (const auto& [name, value] : bindings) {
      if (var_index(name) < 0) {
        throw ContractViolation("substitution binds '" + name + "', not a variable of the polynomial");
      }
    }
    std::set<std::string> used_in_values;
    std::vector<std::string> appended;
    for (const auto& v : vars_) {
      auto it = bindings.find(v);
      if (it == bindings.end()) continue;
      for (const auto& w : it->second.vars()) {
        if (used_in_values.insert(w).second && var_index(w) < 0) appended.push_back(w);
      }
    }
    std::vector<std::string> out_vars;
    for (const auto& v : vars_) {
      if (!bindings.contains(v) || used_in_values.contains(v)) out_vars.push_back(v);
    }
    for (auto& w : appended) out_vars.push_back(std::move(w));

    std::vector<const MultiPoly*> bound(vars_.size(), nullptr);
    std::vector<std::vector<MultiPoly>> powers(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = bindings.find(vars_[i]);
      if (it == bindings.end()) continue;
      bound[i] = &it->second;
      powers[i].push_back(constant(out_vars, 1));
    }
    auto power = [&](std::size_t i, std::uint32_t k) -> const MultiPoly& {
      auto& p = powers[i];
      while (p.size() <= k) p.push_back(p.back() * bound[i]->with_vars(out_vars));
      return p[k];
    };

    MultiPoly out(out_vars);
    std::vector<int> free_pos(vars_.size(), -1);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (bound[i] == nullptr) free_pos[i] = out.var_index(vars_[i]);
    }
    for (const auto& [e, c] : terms_) {
      Exponents mono(out_vars.size(), 0);
      MultiPoly term = constant(out_vars, c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (bound[i] == nullptr) {
          mono[static_cast<std::size_t>(free_pos[i])] += e[i];
        } else {
          term = term * power(i, e[i]);
        }
      }
      for (const auto& [te, tc] : term.terms_) {
        Exponents combined = te;
        for (std::size_t j = 0; j < combined.size(); ++j) combined[j] += mono[j];
        out.add_term(combined, tc);
      }
    }
    return out;
  }

  /// var^d * p(1/var): maps the exponent e of `var` to d - e.
  MultiPoly reverse_in_var(std::string_view var, std::uint32_t d) const {
    const int idx = var_index(var);
    if (idx < 0) throw ContractViolation("unknown variable '" + std::string(var) + "'");
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[static_cast<std::size_t>(idx)] > d) {
        throw InvalidParameters("reversal degree " + std::to_string(d) + " below degree " +
                                std::to_string(e[static_cast<std::size_t>(idx)]) + " of '" +
                                std::string(var) + "' would give a Laurent polynomial");
      }
      Exponents ne = e;
      ne[static_cast<std::size_t>(idx)] = d - e[static_cast<std::size_t>(idx)];
      out.add_term(ne, c);
    }
    return out;
  }

  /// Human-readable canonical form, e.g. "t1^2*t2 - 3*t1 + 1".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool negative = c < 0;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      const Rational mag = negative ? Rational(-c) : c;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (e[i] != 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        out += rational_to_string(mag);
      } else if (mag == 1) {
        out += mono;
      } else {
        out += rational_to_string(mag) + "*" + mono;
      }
    }
    return out;
  }

  /// Parses the text form over a fixed variable list.
  static MultiPoly parse(std::string_view text, std::vector<std::string> vars) {
    return parse_impl(text, std::move(vars), false);
  }

  /// Parses the text form, collecting variables in order of first appearance.
  static MultiPoly parse(std::string_view text) { return parse_impl(text, {}, true); }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : terms_) {
      terms.push_back({{"exp", e}, {"coef", rational_to_string(c)}});
    }
    return {{"vars", vars_}, {"terms", terms}};
  }

  static MultiPoly from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vars") || !j["vars"].is_array()) {
      throw ParseError("vars", "polynomial JSON needs a 'vars' array");
    }
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < j["vars"].size(); ++i) {
      if (!j["vars"][i].is_string()) throw ParseError("vars[" + std::to_string(i) + "]", "expected string");
      vars.push_back(j["vars"][i].get<std::string>());
    }
    MultiPoly p(vars);
    if (!j.contains("terms") || !j["terms"].is_array()) {
      throw ParseError("terms", "polynomial JSON needs a 'terms' array");
    }
    for (std::size_t t = 0; t < j["terms"].size(); ++t) {
      const auto& term = j["terms"][t];
      const std::string path = "terms[" + std::to_string(t) + "]";
      if (!term.is_object() || !term.contains("exp") || !term.contains("coef")) {
        throw ParseError(path, "expected {\"exp\": [...], \"coef\": \"p/q\"}");
      }
      if (!term["exp"].is_array() || term["exp"].size() != vars.size()) {
        throw ParseError(path + ".exp", "exponent vector must match vars");
      }
      Exponents e;
      for (const auto& x : term["exp"]) {
        if (!x.is_number_unsigned()) throw ParseError(path + ".exp", "exponents are non-negative integers");
        e.push_back(x.get<std::uint32_t>());
      }
      Rational c;
      if (term["coef"].is_string()) {
        try {
          c = parse_rational(term["coef"].get<std::string>());
        } catch (const ParseError& err) {
          throw ParseError(path + ".coef", err.what());
        }
      } else if (term["coef"].is_number_integer()) {
        c = Rational(term["coef"].get<long long>());
      } else {
        throw ParseError(path + ".coef", "expected rational string");
      }
      p.add_term(e, c);
    }
    return p;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  static MultiPoly parse_impl(std::string_view text, std::vector<std::string> vars, bool infer) {
    struct Factor {
      Rational coef = 1;
      std::vector<std::pair<std::string, std::uint32_t>> powers;
    };
    std::size_t pos = 0;
    auto skip = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& msg) -> ParseError {
      return ParseError("offset " + std::to_string(pos), msg);
    };
    auto read_uint = [&]() -> std::string {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) throw fail("expected digits");
      return std::string(text.substr(start, pos - start));
    };
    std::vector<std::pair<int, Factor>> parsed;
    skip();
    if (pos == text.size()) throw fail("empty polynomial");
    bool first = true;
    while (true) {
      skip();
      if (pos == text.size()) break;
      int sign = 1;
      if (text[pos] == '+' || text[pos] == '-') {
        sign = text[pos] == '-' ? -1 : 1;
        ++pos;
        skip();
      } else if (!first) {
        throw fail("expected '+' or '-' between terms");
      }
      first = false;
      Factor term;
      while (true) {
        skip();
        if (pos >= text.size()) throw fail("expected factor");
        const char ch = text[pos];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
          std::string num = read_uint();
          skip();
          if (pos < text.size() && text[pos] == '/') {
            ++pos;
            skip();
            num += "/" + read_uint();
          }
          term.coef *= parse_rational(num);
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
          std::size_t start = pos;
          while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
          std::string name(text.substr(start, pos - start));
          std::uint32_t e = 1;
          skip();
          if (pos < text.size() && text[pos] == '^') {
            ++pos;
            skip();
            e = static_cast<std::uint32_t>(std::stoul(read_uint()));
          }
          term.powers.emplace_back(std::move(name), e);
        } else {
          throw fail(std::string("unexpected character '") + ch + "'");
        }
        skip();
        if (pos < text.size() && text[pos] == '*') {
          ++pos;
          continue;
        }
        break;
      }
      parsed.emplace_back(sign, std::move(term));
    }
    if (infer) {
      for (const auto& [sign, term] : parsed) {
        for (const auto& [name, e] : term.powers) {
          if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
        }
      }
    }
    MultiPoly p(std::move(vars));
    for (const auto& [sign, term] : parsed) {
      Exponents e(p.vars_.size(), 0);
      for (const auto& [name, k] : term.powers) {
        const int idx = p.var_index(name);
        if (idx < 0) throw ParseError("", "unknown variable '" + name + "'");
        e[static_cast<std::size_t>(idx)] += k;
      }
      p.add_term(e, term.coef * sign);
    }
    return p;
  }

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Sums coefficients of equal total degree, from total_degree() down to 0.
inline std::vector<Rational> coefficients_by_total_degree(const MultiPoly& p) {
  if (p.is_zero()) return {};
  std::vector<Rational> out(p.total_degree() + 1, Rational(0));
  for (const auto& [e, c] : p.terms()) {
    const auto d = std::accumulate(e.begin(), e.end(), std::uint32_t{0});
    out[out.size() - 1 - d] += c;
  }
  return out;
}

/// c_i^2 >= c_{i-1} c_{i+1} on absolute values at every interior index.
inline bool is_log_concave(const std::vector<Rational>& seq) {
  for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
    const Rational a = abs(seq[i - 1]);
    const Rational b = abs(seq[i]);
    const Rational c = abs(seq[i + 1]);
    if (b * b < a * c) return false;
  }
  return true;
}

/// Absolute values weakly rise then weakly fall.
inline bool is_unimodal(const std::vector<Rational>& seq) {
  std::size_t i = 1;
  while (i < seq.size() && abs(seq[i]) >= abs(seq[i - 1])) ++i;
  while (i < seq.size() && abs(seq[i]) <= abs(seq[i - 1])) ++i;
  return i >= seq.size();
}

}  // namespace chainpoly
