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

// Finite-horizon control problems as limits of the bounded-rational tree
// recursion. Each solver here is a direct backward pass over the MDP; the
// same problems unrolled into a DecisionTree and run through solve_tree with
// extreme temperatures must agree with them:
//
//   KL control           all nodes are actions, beta uniform
//   Bellman optimality   beta_action -> +inf, beta_observation -> 0
//   risk-sensitive       beta_action -> +inf, beta_observation != 0
//   robust (minimax)     beta_action -> +inf, beta_observation -> -inf
//
// Rewards are collected on entering a state; values at the horizon are zero.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "thermodec/tree.hpp"

namespace thermodec {

struct FiniteMDP {
  std::vector<std::string> states;
  // action_labels[s][a]; kernel[s][a][s'] = p(s' | s, a).
  std::vector<std::vector<std::string>> action_labels;
  std::vector<std::vector<std::vector<double>>> kernel;
  // passive[s][s'] = p0(s' | s), needed by KL control only.
  std::optional<std::vector<std::vector<double>>> passive;
  std::vector<double> reward;  // r(s'), received on entering s'
  int horizon = 1;
  std::size_t initial_state = 0;

  std::size_t num_states() const { return states.size(); }
  std::size_t num_actions(std::size_t s) const { return kernel[s].size(); }

  // Shapes, row-stochastic kernels within 1e-12, finite rewards, horizon >= 1.
  void validate() const;
};

struct ControlSolution {
  // value[t][s] for t = 0..horizon; value[horizon] is all zeros.
  std::vector<std::vector<double>> value;
  // policy[t][s] for t = 0..horizon-1: a distribution over actions, or over
  // successor states for KL control.
  std::vector<std::vector<std::vector<double>>> policy;

  double initial_value(const FiniteMDP& mdp) const { return value[0][mdp.initial_state]; }
};

// Linearly solvable control: z_t(s) = sum_s' p0(s'|s) exp(beta r(s')) z_{t+1}(s'),
// V_t = (1/beta) log z_t, controlled p(s'|s) ∝ p0 exp(beta r(s')) z_{t+1}(s').
// Evaluated in the log domain. DomainError when the MDP has no passive
// dynamics, ParameterError for beta == 0.
ControlSolution kl_control_z_iteration(const FiniteMDP& mdp, double beta);

// V_t(s) = max_a sum_s' p(s'|s,a) [r(s') + V_{t+1}(s')]; deterministic policy,
// lowest action index on ties.
ControlSolution bellman_value_iteration(const FiniteMDP& mdp);

// Actions maximize, observations aggregate with the stress function
// (1/beta_obs) log sum_s' p(s'|s,a) exp(beta_obs [r(s') + V_{t+1}(s')]).
ControlSolution risk_sensitive_value(const FiniteMDP& mdp, double beta_obs);

// Actions maximize, observations take the worst successor in the support of
// p(.|s,a); the probabilities themselves play no role.
ControlSolution robust_minimax_value(const FiniteMDP& mdp);

// Actions maximize, observations take the best successor in the support.
ControlSolution optimistic_value(const FiniteMDP& mdp);

// Unrolls `stages` decision epochs from `start`: an action node (beta_action,
// uniform prior over actions, zero reward) followed by an observation node
// (beta_obs, prior p(s'|s,a), reward r(s')) per epoch. Zero-probability
// successors are omitted.
DecisionTree unroll_mdp(const FiniteMDP& mdp, std::size_t start, int stages,
                        double beta_action, double beta_obs);

// Unrolls the passive dynamics: one action node per epoch with prior
// p0(s'|s), reward r(s') and temperature beta.
DecisionTree unroll_passive(const FiniteMDP& mdp, std::size_t start, int stages,
                            double beta);

// solve_tree on unroll_mdp from every (stage, state): values and root
// action policies for the general bounded-rational agent.
ControlSolution bounded_rational_control(const FiniteMDP& mdp, double beta_action,
                                         double beta_obs);

// horizon * (max r - min r): the spread of attainable returns, used to scale
// tolerances of limit comparisons.
double return_range(const FiniteMDP& mdp);

}  // namespace thermodec
