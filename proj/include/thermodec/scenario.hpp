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

// Scenario files: one JSON document per problem instance. The schemas are
// documented in docs/formats.md. Loading validates the document completely
// (unknown keys included) and builds the typed model objects, so a loaded
// scenario is always solvable.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "thermodec/control.hpp"
#include "thermodec/errors.hpp"
#include "thermodec/lottery.hpp"
#include "thermodec/satisficing.hpp"
#include "thermodec/tree.hpp"

namespace thermodec {

// Schema or parse violation; what() starts with the JSON path of the
// offending value, e.g. "/p0: probabilities sum to 0.9, not 1".
class ScenarioError : public DomainError {
 public:
  ScenarioError(const std::string& path, const std::string& what)
      : DomainError(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class ScenarioKind { kLottery, kSatisfice, kTree, kMdp };

const char* to_string(ScenarioKind kind);

struct LotteryScenario {
  BoundedLottery lottery;
};

struct TruncatedPoisson {
  double lambda = 1.0;
  int min = 0;
  int max = 0;
};

struct SatisficeScenario {
  // Either generated from a truncated Poisson or given point by point.
  std::optional<TruncatedPoisson> truncated_poisson;
  DiscreteSource source;
  // Reference distribution Q for gibbs-vs-max; uniform when absent.
  std::optional<ProbabilityVector> reference;
};

struct TreeScenario {
  DecisionTree tree;
};

struct MdpScenario {
  FiniteMDP mdp;
  std::optional<double> beta;         // kl mode
  std::optional<double> beta_action;  // bounded mode
  std::optional<double> beta_obs;     // risk and bounded modes
};

struct ScenarioFile {
  std::variant<LotteryScenario, SatisficeScenario, TreeScenario, MdpScenario> payload;
  std::optional<std::uint64_t> seed;

  ScenarioKind kind() const { return static_cast<ScenarioKind>(payload.index()); }
};

// Parses and validates. When the document has no "kind" key, `expected`
// supplies it; when both are present they must agree.
ScenarioFile parse_scenario(const std::string& text,
                            std::optional<ScenarioKind> expected = std::nullopt);
ScenarioFile load_scenario(const std::filesystem::path& path,
                           std::optional<ScenarioKind> expected = std::nullopt);

// Canonical text: sorted keys, two-space indentation, shortest round-trip
// numbers, trailing newline. save(load(f)) is a fixed point after one pass.
std::string canonical_json(const ScenarioFile& scenario);
void save_scenario(const ScenarioFile& scenario, const std::filesystem::path& path);

// Lowercase hex SHA-256 of canonical_json(scenario).
std::string scenario_hash(const ScenarioFile& scenario);

}  // namespace thermodec
