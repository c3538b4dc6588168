// Copyright 2026 The thermodec Authors.
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

#include "thermodec/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include <json.hpp>

namespace thermodec {

namespace {

using nlohmann::json;

std::string child_path(const std::string& path, const std::string& key) {
  return path + "/" + key;
}

std::string child_path(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

// Runs `make` and re-labels model validation failures with `path`.
template <typename F>
auto at_path(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const ScenarioError&) {
    throw;
  } catch (const DomainError& e) {
    throw ScenarioError(path, e.what());
  } catch (const ParameterError& e) {
    throw ScenarioError(path, e.what());
  }
}

void expect_object(const json& j, const std::string& path,
                   std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ScenarioError(path, "expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!keys.count(key)) throw ScenarioError(child_path(path, key), "unknown field");
  }
}

const json& require(const json& j, const std::string& path, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ScenarioError(child_path(path, key), "missing required field");
  return *it;
}

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ScenarioError(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ScenarioError(path, "expected a finite number");
  return x;
}

long long read_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ScenarioError(path, "expected an integer");
  return j.get<long long>();
}

std::string read_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ScenarioError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> read_numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ScenarioError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_number(j[i], child_path(path, i)));
  return out;
}

std::vector<std::string> read_strings(const json& j, const std::string& path) {
  if (!j.is_array()) throw ScenarioError(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_string(j[i], child_path(path, i)));
  return out;
}

std::optional<double> read_optional_number(const json& j, const std::string& path,
                                           const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) return std::nullopt;
  return read_number(*it, child_path(path, key));
}

ProbabilityVector read_probabilities(const json& j, const std::string& path) {
  auto w = read_numbers(j, path);
  return at_path(path, [&] { return ProbabilityVector(std::move(w)); });
}

void require_size(std::size_t have, std::size_t want, const std::string& path) {
  if (have != want) {
    throw ScenarioError(path, fmt::format("has {} entries, expected {}", have, want));
  }
}

ScenarioKind kind_from_string(const std::string& s, const std::string& path) {
  if (s == "lottery") return ScenarioKind::kLottery;
  if (s == "satisfice") return ScenarioKind::kSatisfice;
  if (s == "tree") return ScenarioKind::kTree;
  if (s == "mdp") return ScenarioKind::kMdp;
  throw ScenarioError(path, fmt::format("unknown scenario kind '{}'", s));
}

LotteryScenario read_lottery(const json& j) {
  expect_object(j, "", {"kind", "seed", "outcomes", "p0", "U", "beta"});
  auto labels = read_strings(require(j, "", "outcomes"), "/outcomes");
  auto outcomes = at_path("/outcomes", [&] { return FinitePartition(std::move(labels)); });
  auto prior = read_probabilities(require(j, "", "p0"), "/p0");
  require_size(prior.size(), outcomes.size(), "/p0");
  if (!prior.strictly_positive()) throw ScenarioError("/p0", "prior must be strictly positive");
  auto utility = read_numbers(require(j, "", "U"), "/U");
  require_size(utility.size(), outcomes.size(), "/U");
  const double beta = read_number(require(j, "", "beta"), "/beta");
  return LotteryScenario{at_path("", [&] {
    return BoundedLottery(std::move(outcomes), std::move(prior), std::move(utility), beta);
  })};
}

SatisficeScenario read_satisfice(const json& j) {
  expect_object(j, "", {"kind", "seed", "truncated_poisson", "support", "pmf", "reference"});
  const bool has_poisson = j.contains("truncated_poisson");
  const bool has_points = j.contains("support") || j.contains("pmf");
  if (has_poisson == has_points) {
    throw ScenarioError("", "give either truncated_poisson or support and pmf");
  }
  std::optional<TruncatedPoisson> poisson;
  std::optional<DiscreteSource> source;
  if (has_poisson) {
    const auto& tp = j["truncated_poisson"];
    const std::string path = "/truncated_poisson";
    expect_object(tp, path, {"lambda", "min", "max"});
    TruncatedPoisson spec;
    spec.lambda = read_number(require(tp, path, "lambda"), path + "/lambda");
    const auto lo = read_integer(require(tp, path, "min"), path + "/min");
    const auto hi = read_integer(require(tp, path, "max"), path + "/max");
    if (lo < 0 || hi > 100000) throw ScenarioError(path, "support must lie in 0..100000");
    spec.min = static_cast<int>(lo);
    spec.max = static_cast<int>(hi);
    source = at_path(path, [&] {
      return DiscreteSource::truncated_poisson(spec.lambda, spec.min, spec.max);
    });
    poisson = spec;
  } else {
    auto support = read_numbers(require(j, "", "support"), "/support");
    auto pmf = read_probabilities(require(j, "", "pmf"), "/pmf");
    require_size(pmf.size(), support.size(), "/pmf");
    if (!pmf.strictly_positive()) throw ScenarioError("/pmf", "pmf must be strictly positive");
    source = at_path("/support", [&] { return DiscreteSource(std::move(support), std::move(pmf)); });
  }
  std::optional<ProbabilityVector> reference;
  if (j.contains("reference")) {
    reference = read_probabilities(j["reference"], "/reference");
    require_size(reference->size(), source->size(), "/reference");
    if (!reference->strictly_positive()) {
      throw ScenarioError("/reference", "reference must be strictly positive");
    }
  }
  return SatisficeScenario{poisson, std::move(*source), std::move(reference)};
}

void read_tree_node(const json& j, const std::string& path, DecisionTree& tree, NodeId id) {
  expect_object(j, path, {"kind", "beta", "children"});
  const auto kind = at_path(child_path(path, "kind"), [&] {
    return node_kind_from_string(read_string(require(j, path, "kind"), child_path(path, "kind")));
  });
  const double beta = read_number(require(j, path, "beta"), child_path(path, "beta"));
  if (beta == 0.0) throw ScenarioError(child_path(path, "beta"), "beta must be nonzero");
  tree.set_node(id, kind, beta);
  const auto& children = require(j, path, "children");
  const std::string cpath = child_path(path, "children");
  if (!children.is_array() || children.empty()) {
    throw ScenarioError(cpath, "expected a nonempty array of edges");
  }
  double mass = 0.0;
  for (std::size_t i = 0; i < children.size(); ++i) {
    const auto& edge = children[i];
    const std::string epath = child_path(cpath, i);
    expect_object(edge, epath, {"label", "prior", "reward", "node"});
    const auto label = read_string(require(edge, epath, "label"), child_path(epath, "label"));
    const double prior = read_number(require(edge, epath, "prior"), child_path(epath, "prior"));
    if (!(prior > 0.0) || prior > 1.0) {
      throw ScenarioError(child_path(epath, "prior"), "prior must lie in (0, 1]");
    }
    mass += prior;
    const double reward = read_number(require(edge, epath, "reward"), child_path(epath, "reward"));
    const NodeId child = tree.add_child(id, label, prior, reward);
    if (edge.contains("node")) read_tree_node(edge["node"], child_path(epath, "node"), tree, child);
  }
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw ScenarioError(cpath, fmt::format("priors sum to {:.17g}, not 1", mass));
  }
}

TreeScenario read_tree(const json& j) {
  expect_object(j, "", {"kind", "seed", "root_utility", "root"});
  DecisionTree tree;
  tree.set_root_utility(read_optional_number(j, "", "root_utility").value_or(0.0));
  read_tree_node(require(j, "", "root"), "/root", tree, DecisionTree::root());
  at_path("/root", [&] {
    tree.validate();
    return 0;
  });
  return TreeScenario{std::move(tree)};
}

MdpScenario read_mdp(const json& j) {
  expect_object(j, "", {"kind", "seed", "states", "rewards", "horizon", "initial_state",
                        "actions", "passive", "beta", "beta_action", "beta_obs"});
  MdpScenario out;
  auto& mdp = out.mdp;
  mdp.states = read_strings(require(j, "", "states"), "/states");
  at_path("/states", [&] { return FinitePartition(mdp.states); });
  const std::size_t n = mdp.states.size();
  mdp.reward = read_numbers(require(j, "", "rewards"), "/rewards");
  require_size(mdp.reward.size(), n, "/rewards");
  const auto horizon = read_integer(require(j, "", "horizon"), "/horizon");
  if (horizon < 1 || horizon > 64) throw ScenarioError("/horizon", "horizon must lie in 1..64");
  mdp.horizon = static_cast<int>(horizon);
  const auto init = read_string(require(j, "", "initial_state"), "/initial_state");
  const auto it = std::find(mdp.states.begin(), mdp.states.end(), init);
  if (it == mdp.states.end()) throw ScenarioError("/initial_state", "not one of the states");
  mdp.initial_state = static_cast<std::size_t>(it - mdp.states.begin());

  const auto& actions = require(j, "", "actions");
  if (!actions.is_array()) throw ScenarioError("/actions", "expected one action list per state");
  require_size(actions.size(), n, "/actions");
  for (std::size_t s = 0; s < n; ++s) {
    const std::string spath = child_path("/actions", s);
    if (!actions[s].is_array() || actions[s].empty()) {
      throw ScenarioError(spath, "expected a nonempty array of actions");
    }
    mdp.action_labels.emplace_back();
    mdp.kernel.emplace_back();
    for (std::size_t a = 0; a < actions[s].size(); ++a) {
      const auto& act = actions[s][a];
      const std::string apath = child_path(spath, a);
      expect_object(act, apath, {"label", "next"});
      mdp.action_labels[s].push_back(
          read_string(require(act, apath, "label"), child_path(apath, "label")));
      const auto row = read_probabilities(require(act, apath, "next"), child_path(apath, "next"));
      require_size(row.size(), n, child_path(apath, "next"));
      mdp.kernel[s].emplace_back(row.weights().begin(), row.weights().end());
    }
  }
  if (j.contains("passive")) {
    const auto& passive = j["passive"];
    if (!passive.is_array()) throw ScenarioError("/passive", "expected one row per state");
    require_size(passive.size(), n, "/passive");
    std::vector<std::vector<double>> rows;
    for (std::size_t s = 0; s < n; ++s) {
      const auto row = read_probabilities(passive[s], child_path("/passive", s));
      require_size(row.size(), n, child_path("/passive", s));
      rows.emplace_back(row.weights().begin(), row.weights().end());
    }
    mdp.passive = std::move(rows);
  }
  out.beta = read_optional_number(j, "", "beta");
  out.beta_action = read_optional_number(j, "", "beta_action");
  out.beta_obs = read_optional_number(j, "", "beta_obs");
  at_path("", [&] {
    mdp.validate();
    return 0;
  });
  return out;
}

json write_numbers(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

json write_tree_node(const DecisionTree& tree, NodeId id) {
  const auto& n = tree.node(id);
  json children = json::array();
  for (NodeId c : n.children) {
    const auto& child = tree.node(c);
    json edge = {{"label", child.label}, {"prior", child.prior}, {"reward", child.reward}};
    if (!child.is_leaf()) edge["node"] = write_tree_node(tree, c);
    children.push_back(std::move(edge));
  }
  return {{"kind", to_string(n.kind)}, {"beta", n.beta}, {"children", std::move(children)}};
}

json to_json(const LotteryScenario& s) {
  const auto& lot = s.lottery;
  return {{"outcomes", lot.outcomes().labels()},
          {"p0", write_numbers(lot.prior().weights())},
          {"U", lot.utility()},
          {"beta", lot.beta()}};
}

json to_json(const SatisficeScenario& s) {
  json j = json::object();
  if (s.truncated_poisson) {
    j["truncated_poisson"] = {{"lambda", s.truncated_poisson->lambda},
                              {"min", s.truncated_poisson->min},
                              {"max", s.truncated_poisson->max}};
  } else {
    j["support"] = s.source.support();
    j["pmf"] = write_numbers(s.source.pmf().weights());
  }
  if (s.reference) j["reference"] = write_numbers(s.reference->weights());
  return j;
}

json to_json(const TreeScenario& s) {
  return {{"root_utility", s.tree.root_utility()},
          {"root", write_tree_node(s.tree, DecisionTree::root())}};
}

json to_json(const MdpScenario& s) {
  const auto& mdp = s.mdp;
  json actions = json::array();
  for (std::size_t st = 0; st < mdp.num_states(); ++st) {
    json list = json::array();
    for (std::size_t a = 0; a < mdp.num_actions(st); ++a) {
      list.push_back({{"label", mdp.action_labels[st][a]}, {"next", mdp.kernel[st][a]}});
    }
    actions.push_back(std::move(list));
  }
  json j = {{"states", mdp.states},
            {"rewards", mdp.reward},
            {"horizon", mdp.horizon},
            {"initial_state", mdp.states[mdp.initial_state]},
            {"actions", std::move(actions)}};
  if (mdp.passive) j["passive"] = *mdp.passive;
  if (s.beta) j["beta"] = *s.beta;
  if (s.beta_action) j["beta_action"] = *s.beta_action;
  if (s.beta_obs) j["beta_obs"] = *s.beta_obs;
  return j;
}

}  // namespace

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kLottery:
      return "lottery";
    case ScenarioKind::kSatisfice:
      return "satisfice";
    case ScenarioKind::kTree:
      return "tree";
    case ScenarioKind::kMdp:
      return "mdp";
  }
  return "unknown";
}

ScenarioFile parse_scenario(const std::string& text, std::optional<ScenarioKind> expected) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("", fmt::format("not valid JSON ({})", e.what()));
  }
  if (!j.is_object()) throw ScenarioError("", "expected a JSON object");
  std::optional<ScenarioKind> kind;
  if (j.contains("kind")) kind = kind_from_string(read_string(j["kind"], "/kind"), "/kind");
  if (kind && expected && *kind != *expected) {
    throw ScenarioError("/kind", fmt::format("scenario is a {} file, this command needs {}",
                                             to_string(*kind), to_string(*expected)));
  }
  if (!kind) kind = expected;
  if (!kind) throw ScenarioError("/kind", "missing required field");

  std::optional<std::uint64_t> seed;
  if (j.contains("seed")) {
    const auto& s = j["seed"];
    if (!s.is_number_unsigned()) {
      throw ScenarioError("/seed", "expected an unsigned 64-bit integer");
    }
    seed = s.get<std::uint64_t>();
  }
  switch (*kind) {
    case ScenarioKind::kLottery:
      return ScenarioFile{read_lottery(j), seed};
    case ScenarioKind::kSatisfice:
      return ScenarioFile{read_satisfice(j), seed};
    case ScenarioKind::kTree:
      return ScenarioFile{read_tree(j), seed};
    case ScenarioKind::kMdp:
      return ScenarioFile{read_mdp(j), seed};
  }
  throw ScenarioError("/kind", "unknown scenario kind");
}

ScenarioFile load_scenario(const std::filesystem::path& path,
                           std::optional<ScenarioKind> expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("", fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), expected);
}

std::string canonical_json(const ScenarioFile& scenario) {
  json j = std::visit([](const auto& s) { return to_json(s); }, scenario.payload);
  j["kind"] = to_string(scenario.kind());
  if (scenario.seed) j["seed"] = *scenario.seed;
  return j.dump(2) + "\n";
}

void save_scenario(const ScenarioFile& scenario, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ScenarioError("", fmt::format("cannot write '{}'", path.string()));
  out << canonical_json(scenario);
  if (!out) throw ScenarioError("", fmt::format("failed writing '{}'", path.string()));
}

std::string scenario_hash(const ScenarioFile& scenario) {
  const std::string text = canonical_json(scenario);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw DiagnosticError("SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

}  // namespace thermodec
