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

// Decision trees whose internal nodes carry their own inverse temperature.
//
// Every non-root node stores the edge that leads to it: a label, the prior
// probability Q(x_t | x_<t) and the reward R(x_t | x_<t). Nodes are appended
// after their parent, so node ids are a topological order and iterating ids
// backwards visits children before parents.
//
// solve_tree runs the backward recursion
//
//   V(x_<t) = (1/beta(x_<t)) log sum_{x_t} Q exp(beta(x_<t) [R + V(x_<=t)])
//   P(x_t | x_<t) ∝ Q exp(beta(x_<t) [R + V(x_<=t)])
//
// with V = 0 (log Z = 0) at the leaves.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace thermodec {

using NodeId = std::size_t;

enum class NodeKind { kAction, kObservation };

const char* to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& s);

struct TreeNode {
  NodeKind kind = NodeKind::kAction;
  double beta = 1.0;  // ignored at leaves
  std::vector<NodeId> children;
  // Incoming edge; unset for the root.
  std::optional<NodeId> parent;
  std::string label;
  double prior = 1.0;
  double reward = 0.0;

  bool is_leaf() const { return children.empty(); }
};

class DecisionTree {
 public:
  // A tree with a single root node.
  explicit DecisionTree(NodeKind root_kind = NodeKind::kAction, double root_beta = 1.0,
                        double root_utility = 0.0);

  static constexpr NodeId root() { return 0; }

  // Appends a child to `parent` and returns its id. The child starts as an
  // action node with beta 1; use set_node to change it once it has children.
  NodeId add_child(NodeId parent, std::string label, double prior, double reward,
                   NodeKind kind = NodeKind::kAction, double beta = 1.0);

  void set_node(NodeId id, NodeKind kind, double beta);
  void set_reward(NodeId id, double reward);
  void set_root_utility(double u) { root_utility_ = u; }

  const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }
  double root_utility() const { return root_utility_; }

  std::vector<NodeId> leaves() const;
  // Node ids from the root (exclusive) down to `id` (inclusive).
  std::vector<NodeId> path_to(NodeId id) const;
  std::size_t depth() const;

  // Throws DomainError / ParameterError naming the first violation:
  // priors positive and summing to one within 1e-12 at each internal node,
  // beta finite and nonzero at internal nodes, depth >= 1.
  void validate() const;

 private:
  std::vector<TreeNode> nodes_;
  double root_utility_ = 0.0;
};

struct SolvedNode {
  std::vector<double> policy;  // over children, same order
  double log_z = 0.0;
  double value = 0.0;          // log_z / beta, zero at leaves
};

struct SolvedTree {
  std::vector<SolvedNode> nodes;

  double root_value() const { return nodes.front().value; }
};

SolvedTree solve_tree(const DecisionTree& tree);

// Probability of reaching each leaf under the per-node policies, in the
// order returned by DecisionTree::leaves().
std::vector<double> path_distribution(const DecisionTree& tree,
                                      const SolvedTree& solved);

// V(x) = U(x) - (1/alpha - 1/beta) log(P(x)/Q(x)): the utility that yields
// the same equilibrium P at inverse temperature beta that U yields at alpha.
// P and Q strictly positive, alpha and beta nonzero (ParameterError).
std::vector<double> reparameterize_utility(const std::vector<double>& utility,
                                           const std::vector<double>& p,
                                           const std::vector<double>& q,
                                           double alpha, double beta);

// Edge rewards of a tree with node temperatures beta(x_<t), derived from
// prefix utilities U(x_<=t) (one per node, root first) and the conditional
// policy P(x_t|x_<t) (one per node, ignored at the root):
//
//   R(x_t|x_<t) = [U(x_<=t) - U(x_<t)]
//                 - (1/alpha - 1/beta(x_<t)) log(P(x_t|x_<t)/Q(x_t|x_<t)).
//
// Returns one reward per node (zero for the root). DomainError when a
// utility or probability is missing.
std::vector<double> rewards_from_utilities(const DecisionTree& tree,
                                           const std::vector<double>& prefix_utility,
                                           const std::vector<double>& conditional_policy,
                                           double alpha);

// Copy of `tree` with edge rewards replaced and the root utility set to
// prefix_utility[root].
DecisionTree with_rewards(const DecisionTree& tree, const std::vector<double>& rewards,
                          double root_utility);

// Conditional P(x_t|x_<t) per node from a distribution over leaves (order of
// DecisionTree::leaves()). Nodes with zero reach get their prior.
std::vector<double> conditionals_from_paths(const DecisionTree& tree,
                                            const std::vector<double>& leaf_probs);

struct TrajectoryFreeEnergy {
  double flat;    // sum_paths P {U(leaf) - (1/alpha) log P/Q}
  double nested;  // U(root) + sum_paths P sum_t {R - (1/beta_t) log P_t/Q_t}
};

// Evaluates both forms of the trajectory free energy. The tree's rewards
// must be the ones rewards_from_utilities produces for (prefix_utility, the
// conditionals of leaf_probs, alpha); otherwise DiagnosticError.
TrajectoryFreeEnergy trajectory_free_energy(const DecisionTree& tree,
                                            const std::vector<double>& leaf_probs,
                                            double alpha,
                                            const std::vector<double>& prefix_utility);

}  // namespace thermodec
