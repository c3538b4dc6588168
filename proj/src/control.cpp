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

#include "thermodec/control.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <fmt/format.h>

#include "thermodec/errors.hpp"
#include "thermodec/measure.hpp"
#include "thermodec/numeric.hpp"

namespace thermodec {

namespace {

void validate_row(const std::vector<double>& row, std::size_t n, const std::string& what) {
  if (row.size() != n) {
    throw DomainError(fmt::format("{} has {} entries, expected {}", what, row.size(), n));
  }
  double mass = 0.0;
  for (double p : row) {
    if (!std::isfinite(p) || p < 0.0) throw DomainError(fmt::format("{} has a negative entry", what));
    mass += p;
  }
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw DomainError(fmt::format("{} sums to {:.17g}, not 1", what, mass));
  }
}

ControlSolution empty_solution(const FiniteMDP& mdp) {
  ControlSolution sol;
  sol.value.assign(mdp.horizon + 1, std::vector<double>(mdp.num_states(), 0.0));
  sol.policy.assign(mdp.horizon, std::vector<std::vector<double>>(mdp.num_states()));
  return sol;
}

// Backward pass where actions maximize and `aggregate(row, continuation)`
// collapses the successor distribution of one action into a value.
ControlSolution max_over_actions(
    const FiniteMDP& mdp,
    const std::function<double(const std::vector<double>&, const std::vector<double>&)>&
        aggregate) {
  mdp.validate();
  auto sol = empty_solution(mdp);
  const std::size_t n = mdp.num_states();
  std::vector<double> continuation(n);
  for (int t = mdp.horizon - 1; t >= 0; --t) {
    for (std::size_t s2 = 0; s2 < n; ++s2) continuation[s2] = mdp.reward[s2] + sol.value[t + 1][s2];
    for (std::size_t s = 0; s < n; ++s) {
      std::size_t best_a = 0;
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < mdp.num_actions(s); ++a) {
        const double q = aggregate(mdp.kernel[s][a], continuation);
        if (q > best) {
          best = q;
          best_a = a;
        }
      }
      sol.value[t][s] = best;
      sol.policy[t][s].assign(mdp.num_actions(s), 0.0);
      sol.policy[t][s][best_a] = 1.0;
    }
  }
  return sol;
}

double support_extremum(const std::vector<double>& row, const std::vector<double>& v,
                        bool worst) {
  double out = worst ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] <= 0.0) continue;
    out = worst ? std::min(out, v[i]) : std::max(out, v[i]);
  }
  return out;
}

}  // namespace

void FiniteMDP::validate() const {
  const std::size_t n = states.size();
  if (n == 0) throw DomainError("MDP needs at least one state");
  if (horizon < 1) throw DomainError("MDP horizon must be >= 1");
  if (initial_state >= n) throw DomainError("initial state out of range");
  if (reward.size() != n) throw DomainError("need one reward per state");
  for (double r : reward) {
    if (!std::isfinite(r)) throw DomainError("rewards must be finite");
  }
  if (kernel.size() != n || action_labels.size() != n) {
    throw DomainError("need an action list for every state");
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (kernel[s].empty()) throw DomainError(fmt::format("state '{}' has no actions", states[s]));
    if (action_labels[s].size() != kernel[s].size()) {
      throw DomainError(fmt::format("state '{}' has mismatched action labels", states[s]));
    }
    for (std::size_t a = 0; a < kernel[s].size(); ++a) {
      validate_row(kernel[s][a], n,
                   fmt::format("transition row of state '{}' action '{}'", states[s],
                               action_labels[s][a]));
    }
  }
  if (passive) {
    if (passive->size() != n) throw DomainError("passive dynamics need one row per state");
    for (std::size_t s = 0; s < n; ++s) {
      validate_row((*passive)[s], n, fmt::format("passive row of state '{}'", states[s]));
    }
  }
}

ControlSolution kl_control_z_iteration(const FiniteMDP& mdp, double beta) {
  mdp.validate();
  if (beta == 0.0 || !std::isfinite(beta)) throw ParameterError("KL control needs a finite nonzero beta");
  if (!mdp.passive) throw DomainError("KL control needs passive dynamics");
  const auto& p0 = *mdp.passive;
  const std::size_t n = mdp.num_states();
  auto sol = empty_solution(mdp);
  // log z_{t+1}(s'); z_T = 1.
  std::vector<double> log_z_next(n, 0.0);
  std::vector<double> log_z(n);
  std::vector<double> terms;
  for (int t = mdp.horizon - 1; t >= 0; --t) {
    for (std::size_t s = 0; s < n; ++s) {
      terms.assign(n, -std::numeric_limits<double>::infinity());
      for (std::size_t s2 = 0; s2 < n; ++s2) {
        if (p0[s][s2] > 0.0) terms[s2] = std::log(p0[s][s2]) + beta * mdp.reward[s2] + log_z_next[s2];
      }
      log_z[s] = numeric::log_sum_exp(terms);
      auto& row = sol.policy[t][s];
      row.resize(n);
      for (std::size_t s2 = 0; s2 < n; ++s2) row[s2] = std::exp(terms[s2] - log_z[s]);
      sol.value[t][s] = log_z[s] / beta;
    }
    log_z_next = log_z;
  }
  return sol;
}

ControlSolution bellman_value_iteration(const FiniteMDP& mdp) {
  return max_over_actions(mdp, [](const auto& row, const auto& v) {
    return numeric::dot(row, v);
  });
}

ControlSolution risk_sensitive_value(const FiniteMDP& mdp, double beta_obs) {
  if (beta_obs == 0.0 || !std::isfinite(beta_obs)) {
    throw ParameterError("risk-sensitive control needs a finite nonzero beta_obs");
  }
  return max_over_actions(mdp, [beta_obs](const auto& row, const auto& v) {
    return numeric::soft_aggregate(row, v, beta_obs);
  });
}

ControlSolution robust_minimax_value(const FiniteMDP& mdp) {
  return max_over_actions(mdp, [](const auto& row, const auto& v) {
    return support_extremum(row, v, /*worst=*/true);
  });
}

ControlSolution optimistic_value(const FiniteMDP& mdp) {
  return max_over_actions(mdp, [](const auto& row, const auto& v) {
    return support_extremum(row, v, /*worst=*/false);
  });
}

namespace {

void grow_mdp(const FiniteMDP& mdp, DecisionTree& tree, NodeId node, std::size_t s,
              int stages, double beta_action, double beta_obs) {
  tree.set_node(node, NodeKind::kAction, beta_action);
  const std::size_t num_a = mdp.num_actions(s);
  for (std::size_t a = 0; a < num_a; ++a) {
    const NodeId obs = tree.add_child(node, mdp.action_labels[s][a],
                                      1.0 / static_cast<double>(num_a), 0.0,
                                      NodeKind::kObservation, beta_obs);
    for (std::size_t s2 = 0; s2 < mdp.num_states(); ++s2) {
      const double p = mdp.kernel[s][a][s2];
      if (p <= 0.0) continue;
      const NodeId next = tree.add_child(obs, mdp.states[s2], p, mdp.reward[s2]);
      if (stages > 1) grow_mdp(mdp, tree, next, s2, stages - 1, beta_action, beta_obs);
    }
  }
}

void grow_passive(const FiniteMDP& mdp, DecisionTree& tree, NodeId node, std::size_t s,
                  int stages, double beta) {
  tree.set_node(node, NodeKind::kAction, beta);
  for (std::size_t s2 = 0; s2 < mdp.num_states(); ++s2) {
    const double p = (*mdp.passive)[s][s2];
    if (p <= 0.0) continue;
    const NodeId next = tree.add_child(node, mdp.states[s2], p, mdp.reward[s2]);
    if (stages > 1) grow_passive(mdp, tree, next, s2, stages - 1, beta);
  }
}

}  // namespace

DecisionTree unroll_mdp(const FiniteMDP& mdp, std::size_t start, int stages,
                        double beta_action, double beta_obs) {
  mdp.validate();
  if (start >= mdp.num_states()) throw DomainError("start state out of range");
  if (stages < 1) throw DomainError("need at least one stage to unroll");
  DecisionTree tree(NodeKind::kAction, beta_action);
  grow_mdp(mdp, tree, DecisionTree::root(), start, stages, beta_action, beta_obs);
  return tree;
}

DecisionTree unroll_passive(const FiniteMDP& mdp, std::size_t start, int stages,
                            double beta) {
  mdp.validate();
  if (!mdp.passive) throw DomainError("MDP has no passive dynamics");
  if (start >= mdp.num_states()) throw DomainError("start state out of range");
  if (stages < 1) throw DomainError("need at least one stage to unroll");
  DecisionTree tree(NodeKind::kAction, beta);
  grow_passive(mdp, tree, DecisionTree::root(), start, stages, beta);
  return tree;
}

ControlSolution bounded_rational_control(const FiniteMDP& mdp, double beta_action,
                                         double beta_obs) {
  mdp.validate();
  auto sol = empty_solution(mdp);
  for (int t = 0; t < mdp.horizon; ++t) {
    for (std::size_t s = 0; s < mdp.num_states(); ++s) {
      const auto tree = unroll_mdp(mdp, s, mdp.horizon - t, beta_action, beta_obs);
      const auto solved = solve_tree(tree);
      sol.value[t][s] = solved.root_value();
      sol.policy[t][s] = solved.nodes[DecisionTree::root()].policy;
    }
  }
  return sol;
}

double return_range(const FiniteMDP& mdp) {
  const auto [lo, hi] = std::minmax_element(mdp.reward.begin(), mdp.reward.end());
  return mdp.horizon * (*hi - *lo);
}

}  // namespace thermodec
