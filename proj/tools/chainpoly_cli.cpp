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

// chainpoly: command-line front end.
//
//   chainpoly chain-char --k 2 --graph k3.json
//   chainpoly verify --suite all --matroid '{"type":"uniform","r":2,"n":4}' --k 2
//   chainpoly count-flows --graph k3.json --groups Z2,Z2
//
// Exit codes: 0 success, 1 verification failure or other error, 2 malformed
// input or usage, 3 work cap exceeded, 4 hypothesis violated.

#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chainpoly.hpp"

namespace {

using namespace chainpoly;

constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitHypothesis = 4;

const std::vector<std::string> kSuites{"axioms",    "routes", "duality",         "product",     "recursion",
                                       "lemma21",   "signs",  "coloring-oracle", "flow-oracle", "all"};

struct Options {
  int k = 2;
  std::string graph;
  std::string matroid;
  std::string groups;
  std::string palette;
  std::string format = "text";
  std::string route = "definition";
  std::string suite = "all";
  std::optional<std::uint64_t> max_visits;
  unsigned jobs = 1;
};

/// What a command produced: text for stdout and an exit status.
struct Result {
  std::string out;
  int status = 0;
};

std::string read_source(const std::string& where, const std::string& what) {
  if (where == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(where);
  if (!in) throw ParseError(what, "cannot open '" + where + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool looks_inline(const std::string& s) {
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '{';
  }
  return false;
}

Graph load_graph(const Options& o) {
  if (o.graph.empty()) throw InvalidParameters("this command needs --graph");
  const std::string text = looks_inline(o.graph) ? o.graph : read_source(o.graph, "--graph");
  return graph_from_json(parse_json_text(text, o.graph == "-" ? "stdin" : "--graph"));
}

Matroid load_matroid(const Options& o) {
  if (!o.matroid.empty()) {
    const std::string text = looks_inline(o.matroid) ? o.matroid : read_source(o.matroid, "--matroid");
    return matroid_from_json(parse_json_text(text, o.matroid == "-" ? "stdin" : "--matroid"));
  }
  if (!o.graph.empty()) return make_graphic(load_graph(o));
  throw InvalidParameters("this command needs --matroid or --graph");
}

WorkBudget budget_of(const Options& o) {
  WorkBudget b = WorkBudget::from_env();
  if (o.max_visits) b.max_visits = *o.max_visits;
  b.jobs = o.jobs;
  b.visits = std::make_shared<std::atomic<std::uint64_t>>(0);
  return b;
}

std::vector<int> parse_palette(const std::string& text) {
  if (text.empty()) throw InvalidParameters("count-colorings needs --palette, e.g. --palette 2,3");
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw ParseError("--palette", "'" + item + "' is not an integer");
    }
  }
  return out;
}

Result emit_poly(const Options& o, const std::string& command, const MultiPoly& p) {
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["k"] = o.k;
    j["polynomial"] = p.to_string();
    j["vars"] = p.vars();
    j["terms"] = p.to_json()["terms"];
    return {j.dump(2) + "\n"};
  }
  return {p.to_string() + "\n"};
}

Result emit_count(const Options& o, const std::string& command, std::uint64_t count) {
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["count"] = count;
    return {j.dump(2) + "\n"};
  }
  return {std::to_string(count) + "\n"};
}

CharRoute parse_route(const std::string& r) {
  if (r == "definition") return CharRoute::definition;
  if (r == "tutte") return CharRoute::tutte_eval;
  return CharRoute::mobius;
}

Result run_chain_char(const Options& o) {
  const Matroid m = load_matroid(o);
  const WorkBudget b = budget_of(o);
  MultiPoly p = chain_characteristic(m, o.k, o.route == "all" ? CharRoute::definition : parse_route(o.route), b);
  if (o.route == "all") {
    for (auto r : {CharRoute::tutte_eval, CharRoute::mobius}) {
      if (!(chain_characteristic(m, o.k, r, b) == p)) {
        throw std::logic_error(std::string("route ") + route_name(r) + " disagrees with the definition");
      }
    }
  }
  return emit_poly(o, "chain-char", p);
}

Result run_verify(const Options& o) {
  const WorkBudget b = budget_of(o);
  const bool all = o.suite == "all";
  std::optional<Graph> g;
  if (!o.graph.empty()) g = load_graph(o);
  const Matroid m = g && o.matroid.empty() ? make_graphic(*g) : load_matroid(o);
  Report rep;
  auto wants = [&](const char* name) { return all || o.suite == name; };
  if (wants("axioms")) rep.merge(verify_axioms(m));
  if (wants("routes")) rep.merge(verify_routes(m, o.k, b));
  if (wants("duality")) rep.merge(verify_duality(m, o.k, b));
  if (wants("product")) rep.merge(verify_product(m, o.k, b));
  if (wants("lemma21")) rep.merge(verify_lemma21(m, o.k, b));
  if (wants("recursion")) rep.merge(verify_recursion_all(m, o.k, b));
  // "all" runs hypothesis-bound suites only where their hypotheses hold.
  if (o.suite == "signs" || (all && is_simple(m))) rep.merge(verify_sign_alternation(m, o.k, b));
  if (o.suite == "coloring-oracle" || o.suite == "flow-oracle") {
    if (!g) throw InvalidParameters("suite " + o.suite + " needs --graph");
  }
  if (g && (o.suite == "coloring-oracle" || (all && g->is_simple()))) rep.merge(verify_coloring_oracle(*g, o.k, 3, 10'000'000, b));
  if (g && wants("flow-oracle")) rep.merge(verify_flow_oracle(*g, o.k, 3, 20, 1, b));
  rep.chain_visits = b.visits->load();
  Result r;
  r.out = o.format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_text();
  r.status = rep.passed() ? 0 : kExitFailure;
  return r;
}

int report_error(const std::string& kind, const std::string& message, int status) {
  std::cerr << "chainpoly: " << kind << ": " << message << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chain Tutte, chain characteristic and coupled coloring/flow polynomials of matroids and graphs"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--k", o.k, "chain length k >= 1")->capture_default_str();
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    sub->add_option("--max-visits", o.max_visits, "work cap (chain or assignment visits)");
    sub->add_option("--jobs", o.jobs, "worker threads; output does not depend on it")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
  };
  auto add_matroid_input = [&](CLI::App* sub) {
    sub->add_option("--matroid", o.matroid, "matroid JSON, inline or a file path ('-' for stdin)");
    sub->add_option("--graph", o.graph, "graph JSON file ('-' for stdin); used as its cycle matroid");
  };
  auto add_graph_input = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph, "graph JSON file ('-' for stdin)")->required();
  };

  std::vector<std::pair<CLI::App*, std::function<Result()>>> commands;
  auto matroid_cmd = [&](const std::string& name, const std::string& help, std::function<Result()> body) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub);
    add_matroid_input(sub);
    commands.emplace_back(sub, std::move(body));
    return sub;
  };
  auto graph_cmd = [&](const std::string& name, const std::string& help, std::function<Result()> body) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub);
    add_graph_input(sub);
    commands.emplace_back(sub, std::move(body));
    return sub;
  };

  matroid_cmd("chain-tutte", "chain Tutte polynomial T^k in (x1..xk, y1..yk)",
              [&] { return emit_poly(o, "chain-tutte", chain_tutte(load_matroid(o), o.k, budget_of(o))); });
  auto* chain_char = matroid_cmd("chain-char", "chain characteristic polynomial chi^k in (t1..tk)",
                                 [&] { return run_chain_char(o); });
  chain_char->add_option("--route", o.route, "definition, tutte, mobius, or all (computes every route and compares)")
      ->check(CLI::IsMember({"definition", "tutte", "mobius", "all"}))
      ->capture_default_str();
  matroid_cmd("whitney", "chain Whitney rank polynomial W^k in (a1..ak, b1..bk)",
              [&] { return emit_poly(o, "whitney", whitney_rank_poly(load_matroid(o), o.k, budget_of(o))); });
  matroid_cmd("mobius", "Moebius polynomial in (s, t); --k is ignored",
              [&] { return emit_poly(o, "mobius", mobius_poly(load_matroid(o))); });
  graph_cmd("chromatic", "coupled k-multicoloring polynomial of a simple graph",
            [&] { return emit_poly(o, "chromatic", coupled_chromatic_poly(load_graph(o), o.k, budget_of(o))); });
  graph_cmd("flow", "coupled k-multicommodity flow polynomial",
            [&] { return emit_poly(o, "flow", coupled_flow_poly(load_graph(o), o.k, budget_of(o))); });
  auto* colorings = graph_cmd("count-colorings", "count coupled multicolorings exhaustively", [&] {
    return emit_count(o, "count-colorings", count_coupled_colorings(load_graph(o), parse_palette(o.palette), budget_of(o)));
  });
  colorings->add_option("--palette", o.palette, "palette sizes t1,...,tk")->required();
  auto* flows = graph_cmd("count-flows", "count coupled multicommodity flows exhaustively", [&] {
    return emit_count(o, "count-flows", count_coupled_flows(load_graph(o), parse_group_list(o.groups), budget_of(o)));
  });
  flows->add_option("--groups", o.groups, "groups A1,...,Ak such as Z2,Z2xZ2")->required();
  auto* verify = matroid_cmd("verify", "run verification suites and print a report", [&] { return run_verify(o); });
  verify->add_option("--suite", o.suite, "suite to run")->check(CLI::IsMember(kSuites))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (o.k < 1) throw InvalidParameters("--k must be at least 1");
    for (auto& [sub, body] : commands) {
      if (!sub->parsed()) continue;
      const Result r = body();
      std::cout << r.out << std::flush;
      return r.status;
    }
    return kExitFailure;
  } catch (const ParseError& e) {
    return report_error("parse error", e.what(), kExitParse);
  } catch (const SizeCapError& e) {
    return report_error("size cap", e.what(), kExitCap);
  } catch (const HypothesisViolation& e) {
    return report_error("hypothesis violated", e.what(), kExitHypothesis);
  } catch (const InvalidParameters& e) {
    return report_error("invalid parameters", e.what(), kExitParse);
  } catch (const std::exception& e) {
    return report_error("error", e.what(), kExitFailure);
  }
}
