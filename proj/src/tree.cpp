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

#include "thermodec/tree.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "thermodec/errors.hpp"
#include "thermodec/measure.hpp"
#include "thermodec/numeric.hpp"

namespace thermodec {

const char* to_string(NodeKind kind) {
  return kind == NodeKind::kAction ? "action" : "observation";
}

NodeKind node_kind_from_string(const std::string& s) {
  if (s == "action") return NodeKind::kAction;
  if (s == "observation") return NodeKind::kObservation;
  throw DomainError(fmt::format("unknown node kind '{}'", s));
}

DecisionTree::DecisionTree(NodeKind root_kind, double root_beta, double root_utility)
    : root_utility_(root_utility) {
  TreeNode root;
  root.kind = root_kind;
  root.beta = root_beta;
  nodes_.push_back(std::move(root));
}

NodeId DecisionTree::add_child(NodeId parent, std::string label, double prior,
                               double reward, NodeKind kind, double beta) {
  if (parent >= nodes_.size()) throw DomainError("parent node does not exist");
  TreeNode child;
  child.kind = kind;
  child.beta = beta;
  child.parent = parent;
  child.label = std::move(label);
  child.prior = prior;
  child.reward = reward;
  const NodeId id = nodes_.size();
  nodes_.push_back(std::move(child));
  nodes_[parent].children.push_back(id);
  return id;
}

void DecisionTree::set_node(NodeId id, NodeKind kind, double beta) {
  auto& n = nodes_.at(id);
  n.kind = kind;
  n.beta = beta;
}

void DecisionTree::set_reward(NodeId id, double reward) { nodes_.at(id).reward = reward; }

std::vector<NodeId> DecisionTree::leaves() const {
  std::vector<NodeId> out;
  // Depth-first, children in insertion order.
  std::vector<NodeId> stack{root()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const auto& n = nodes_[id];
    if (n.is_leaf()) {
      out.push_back(id);
      continue;
    }
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<NodeId> DecisionTree::path_to(NodeId id) const {
  std::vector<NodeId> path;
  for (NodeId cur = id; nodes_.at(cur).parent; cur = *nodes_[cur].parent) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  return path;
}

std::size_t DecisionTree::depth() const {
  std::size_t d = 0;
  for (NodeId leaf : leaves()) d = std::max(d, path_to(leaf).size());
  return d;
}

void DecisionTree::validate() const {
  if (nodes_.front().is_leaf()) throw DomainError("tree must have depth >= 1");
  if (!std::isfinite(root_utility_)) throw DomainError("root utility must be finite");
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    const auto& n = nodes_[id];
    if (id != root() && !std::isfinite(n.reward)) {
      throw DomainError(fmt::format("reward on edge '{}' is not finite", n.label));
    }
    if (n.is_leaf()) continue;
    if (n.beta == 0.0 || !std::isfinite(n.beta)) {
      throw ParameterError(fmt::format("node {} needs a finite nonzero beta", id));
    }
    double mass = 0.0;
    for (NodeId c : n.children) {
      const double q = nodes_[c].prior;
      if (!(q > 0.0) || q > 1.0) {
        throw DomainError(fmt::format("prior on edge '{}' below node {} must lie in (0, 1]",
                                      nodes_[c].label, id));
      }
      mass += q;
    }
    if (std::abs(mass - 1.0) > kMassTolerance) {
      throw DomainError(fmt::format("priors below node {} sum to {:.17g}", id, mass));
    }
  }
}

SolvedTree solve_tree(const DecisionTree& tree) {
  tree.validate();
  SolvedTree out;
  out.nodes.resize(tree.size());
  std::vector<double> q;
  std::vector<double> continuation;
  std::vector<double> log_w;
  // Children have larger ids than their parents.
  for (NodeId id = tree.size(); id-- > 0;) {
    const auto& n = tree.node(id);
    auto& s = out.nodes[id];
    if (n.is_leaf()) continue;
    q.clear();
    continuation.clear();
    log_w.clear();
    for (NodeId c : n.children) {
      const auto& child = tree.node(c);
      q.push_back(child.prior);
      continuation.push_back(child.reward + out.nodes[c].value);
      log_w.push_back(std::log(child.prior) + n.beta * continuation.back());
    }
    s.value = numeric::soft_aggregate(q, continuation, n.beta);
    s.log_z = n.beta * s.value;
    s.policy = numeric::softmax(log_w);
  }
  return out;
}

std::vector<double> path_distribution(const DecisionTree& tree, const SolvedTree& solved) {
  std::vector<double> reach(tree.size(), 0.0);
  reach[DecisionTree::root()] = 1.0;
  for (NodeId id = 0; id < tree.size(); ++id) {
    const auto& n = tree.node(id);
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      reach[n.children[i]] = reach[id] * solved.nodes[id].policy[i];
    }
  }
  std::vector<double> out;
  for (NodeId leaf : tree.leaves()) out.push_back(reach[leaf]);
  return out;
}

std::vector<double> reparameterize_utility(const std::vector<double>& utility,
                                           const std::vector<double>& p,
                                           const std::vector<double>& q,
                                           double alpha, double beta) {
  if (alpha == 0.0 || beta == 0.0) throw ParameterError("temperatures must be nonzero");
  if (p.size() != utility.size() || q.size() != utility.size()) {
    throw DomainError("utility, P and Q must have equal size");
  }
  const double coeff = 1.0 / alpha - 1.0 / beta;
  std::vector<double> out(utility.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(p[i] > 0.0) || !(q[i] > 0.0)) {
      throw ParameterError("P and Q must be strictly positive");
    }
    out[i] = utility[i] - coeff * std::log(p[i] / q[i]);
  }
  return out;
}

std::vector<double> rewards_from_utilities(const DecisionTree& tree,
                                           const std::vector<double>& prefix_utility,
                                           const std::vector<double>& conditional_policy,
                                           double alpha) {
  if (alpha == 0.0) throw ParameterError("alpha must be nonzero");
  if (prefix_utility.size() != tree.size()) {
    throw DomainError(fmt::format("need one prefix utility per node: got {} for {} nodes",
                                  prefix_utility.size(), tree.size()));
  }
  if (conditional_policy.size() != tree.size()) {
    throw DomainError("need one conditional probability per node");
  }
  std::vector<double> rewards(tree.size(), 0.0);
  for (NodeId id = 1; id < tree.size(); ++id) {
    const auto& n = tree.node(id);
    const auto& parent = tree.node(*n.parent);
    const double p = conditional_policy[id];
    if (!(p > 0.0) || !(n.prior > 0.0)) {
      throw DomainError(fmt::format("edge '{}' needs positive P and Q", n.label));
    }
    if (parent.beta == 0.0) throw ParameterError("node temperatures must be nonzero");
    rewards[id] = (prefix_utility[id] - prefix_utility[*n.parent]) -
                  (1.0 / alpha - 1.0 / parent.beta) * std::log(p / n.prior);
  }
  return rewards;
}

DecisionTree with_rewards(const DecisionTree& tree, const std::vector<double>& rewards,
                          double root_utility) {
  if (rewards.size() != tree.size()) throw DomainError("need one reward per node");
  DecisionTree out = tree;
  for (NodeId id = 1; id < tree.size(); ++id) out.set_reward(id, rewards[id]);
  out.set_root_utility(root_utility);
  return out;
}

std::vector<double> conditionals_from_paths(const DecisionTree& tree,
                                            const std::vector<double>& leaf_probs) {
  const auto leaves = tree.leaves();
  if (leaf_probs.size() != leaves.size()) {
    throw DomainError(fmt::format("need one probability per leaf: got {} for {} leaves",
                                  leaf_probs.size(), leaves.size()));
  }
  std::vector<double> reach(tree.size(), 0.0);
  for (std::size_t i = 0; i < leaves.size(); ++i) reach[leaves[i]] = leaf_probs[i];
  for (NodeId id = tree.size(); id-- > 0;) {
    if (const auto& n = tree.node(id); n.parent) reach[*n.parent] += reach[id];
  }
  std::vector<double> cond(tree.size(), 1.0);
  for (NodeId id = 1; id < tree.size(); ++id) {
    const auto& n = tree.node(id);
    const double parent_reach = reach[*n.parent];
    cond[id] = parent_reach > 0.0 ? reach[id] / parent_reach : n.prior;
  }
  return cond;
}

TrajectoryFreeEnergy trajectory_free_energy(const DecisionTree& tree,
                                            const std::vector<double>& leaf_probs,
                                            double alpha,
                                            const std::vector<double>& prefix_utility) {
  tree.validate();
  for (double p : leaf_probs) {
    if (!(p > 0.0)) throw DomainError("path distribution must be strictly positive");
  }
  const auto cond = conditionals_from_paths(tree, leaf_probs);
  const auto expected = rewards_from_utilities(tree, prefix_utility, cond, alpha);
  for (NodeId id = 1; id < tree.size(); ++id) {
    const double have = tree.node(id).reward;
    if (std::abs(have - expected[id]) > 1e-9 * (1.0 + std::abs(expected[id]))) {
      throw DiagnosticError(fmt::format(
          "reward on edge '{}' ({:.17g}) was not derived from these utilities and "
          "paths (expected {:.17g})",
          tree.node(id).label, have, expected[id]));
    }
  }
  if (std::abs(tree.root_utility() - prefix_utility[DecisionTree::root()]) >
      1e-9 * (1.0 + std::abs(tree.root_utility()))) {
    throw DiagnosticError("tree root utility differs from the prefix utility of the root");
  }

  const auto leaves = tree.leaves();
  TrajectoryFreeEnergy out{0.0, tree.root_utility()};
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const double p_path = leaf_probs[i];
    double log_q_path = 0.0;
    double nested = 0.0;
    for (NodeId id : tree.path_to(leaves[i])) {
      const auto& n = tree.node(id);
      log_q_path += std::log(n.prior);
      nested += n.reward - std::log(cond[id] / n.prior) / tree.node(*n.parent).beta;
    }
    out.flat += p_path * (prefix_utility[leaves[i]] - (std::log(p_path) - log_q_path) / alpha);
    out.nested += p_path * nested;
  }
  return out;
}

}  // namespace thermodec
