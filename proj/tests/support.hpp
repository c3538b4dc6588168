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

// Random instance generators and brute-force reference implementations
// shared by the unit tests and the acceptance suite. The references are
// deliberately naive (direct sums in long double, explicit enumeration) and
// share no code with the library beyond its data types.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "thermodec/control.hpp"
#include "thermodec/lottery.hpp"
#include "thermodec/measure.hpp"
#include "thermodec/tree.hpp"

namespace thermodec::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Strictly positive weights with entries at least `floor` before normalizing.
inline std::vector<double> random_simplex(Rng& rng, std::size_t n, double floor = 1e-3) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = std::max(floor, uniform(rng, 0.0, 1.0));
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

inline std::vector<double> random_vector(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = uniform(rng, lo, hi);
  return v;
}

inline BoundedLottery random_lottery(Rng& rng, double beta) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 8));
  return BoundedLottery(FinitePartition::indexed(n),
                        ProbabilityVector::normalized(random_simplex(rng, n)),
                        random_vector(rng, n, -5.0, 5.0), beta);
}

// p0 * exp(beta U) / sum, summed in long double without shifting.
inline std::vector<double> naive_gibbs(const std::vector<double>& p0,
                                       const std::vector<double>& u, double beta) {
  std::vector<long double> w(p0.size());
  long double z = 0.0L;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = p0[i] * std::exp(static_cast<long double>(beta) * u[i]);
    z += w[i];
  }
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = static_cast<double>(w[i] / z);
  return out;
}

// Bayes update: posterior ∝ prior * likelihood.
inline std::vector<double> bayes_update(const std::vector<double>& prior,
                                        const std::vector<double>& likelihood) {
  long double evidence = 0.0L;
  for (std::size_t i = 0; i < prior.size(); ++i) {
    evidence += static_cast<long double>(prior[i]) * likelihood[i];
  }
  std::vector<double> out(prior.size());
  for (std::size_t i = 0; i < prior.size(); ++i) {
    out[i] = static_cast<double>(static_cast<long double>(prior[i]) * likelihood[i] / evidence);
  }
  return out;
}

// (1/beta) log sum p0 exp(beta U), unshifted long double.
inline double naive_certainty_equivalent(const std::vector<double>& p0,
                                         const std::vector<double>& u, double beta) {
  long double z = 0.0L;
  for (std::size_t i = 0; i < p0.size(); ++i) {
    z += p0[i] * std::exp(static_cast<long double>(beta) * u[i]);
  }
  return static_cast<double>(std::log(z) / beta);
}

inline double naive_kl(const std::vector<double>& p, const std::vector<double>& q) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) s += p[i] * std::log(static_cast<long double>(p[i]) / q[i]);
  }
  return static_cast<double>(s);
}

inline double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Random tree of depth 1..max_depth; every internal node has 1..max_branching
// children (the root at least two), non-root nodes above the bottom stop
// early with probability 0.2. beta_of() supplies each internal node's beta.
inline DecisionTree random_tree(Rng& rng, int max_depth, int max_branching,
                                const std::function<double()>& beta_of) {
  const int depth = uniform_int(rng, 1, max_depth);
  DecisionTree tree(NodeKind::kAction, beta_of(), uniform(rng, -1.0, 1.0));
  std::function<void(NodeId, int)> grow = [&](NodeId id, int level) {
    if (id != DecisionTree::root() && (level == depth || uniform(rng, 0.0, 1.0) < 0.2)) return;
    const int k = id == DecisionTree::root() ? uniform_int(rng, 2, std::max(2, max_branching))
                                             : uniform_int(rng, 1, max_branching);
    const auto q = random_simplex(rng, static_cast<std::size_t>(k), 0.05);
    std::vector<NodeId> kids;
    for (int i = 0; i < k; ++i) {
      kids.push_back(tree.add_child(id, std::to_string(id) + "." + std::to_string(i), q[i],
                                    uniform(rng, -2.0, 2.0)));
    }
    for (NodeId c : kids) grow(c, level + 1);
  };
  grow(DecisionTree::root(), 0);
  // Fix node temperatures once the shape is known.
  for (NodeId id = 0; id < tree.size(); ++id) {
    if (!tree.node(id).is_leaf()) {
      tree.set_node(id, uniform(rng, 0.0, 1.0) < 0.5 ? NodeKind::kAction : NodeKind::kObservation,
                    beta_of());
    }
  }
  return tree;
}

struct EnumeratedPath {
  NodeId leaf;
  double log_q = 0.0;   // sum of log priors along the path
  double reward = 0.0;  // sum of rewards along the path
};

// All root-to-leaf paths, leaves in depth-first insertion order.
inline std::vector<EnumeratedPath> enumerate_paths(const DecisionTree& tree) {
  std::vector<EnumeratedPath> out;
  std::function<void(NodeId, double, double)> walk = [&](NodeId id, double lq, double r) {
    const auto& n = tree.node(id);
    if (id != DecisionTree::root()) {
      lq += std::log(n.prior);
      r += n.reward;
    }
    if (n.is_leaf()) {
      out.push_back({id, lq, r});
      return;
    }
    for (NodeId c : n.children) walk(c, lq, r);
  };
  walk(DecisionTree::root(), 0.0, 0.0);
  return out;
}

// One-shot Gibbs distribution over complete trajectories,
// Q(path) exp(alpha * total reward) / Z.
inline std::vector<double> trajectory_gibbs(const DecisionTree& tree, double alpha) {
  const auto paths = enumerate_paths(tree);
  std::vector<long double> w(paths.size());
  long double m = -std::numeric_limits<long double>::infinity();
  for (std::size_t i = 0; i < paths.size(); ++i) {
    w[i] = paths[i].log_q + static_cast<long double>(alpha) * paths[i].reward;
    m = std::max(m, w[i]);
  }
  long double z = 0.0L;
  for (auto& x : w) z += (x = std::exp(x - m));
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = static_cast<double>(w[i] / z);
  return out;
}

// Recursive max/min over the tree: action nodes maximize, observation nodes
// minimize over their children.
inline double minimax_oracle(const DecisionTree& tree, NodeId id = DecisionTree::root()) {
  const auto& n = tree.node(id);
  if (n.is_leaf()) return 0.0;
  double best = n.kind == NodeKind::kAction ? -std::numeric_limits<double>::infinity()
                                            : std::numeric_limits<double>::infinity();
  for (NodeId c : n.children) {
    const double v = tree.node(c).reward + minimax_oracle(tree, c);
    best = n.kind == NodeKind::kAction ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

// Random MDP with 2..max_states states, 1..3 actions per state and kernels
// whose entries are zero with probability `sparsity` (the diagonal entry is
// kept so every row has support).
inline FiniteMDP random_mdp(Rng& rng, int max_states, int max_horizon, double sparsity = 0.3) {
  FiniteMDP mdp;
  const int n = uniform_int(rng, 2, max_states);
  mdp.horizon = uniform_int(rng, 1, max_horizon);
  mdp.initial_state = 0;
  auto row = [&](int keep) {
    std::vector<double> r(n);
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      r[j] = (j == keep || uniform(rng, 0.0, 1.0) >= sparsity) ? uniform(rng, 0.05, 1.0) : 0.0;
      total += r[j];
    }
    for (auto& x : r) x /= total;
    return r;
  };
  for (int s = 0; s < n; ++s) {
    mdp.states.push_back("s" + std::to_string(s));
    mdp.reward.push_back(uniform(rng, -1.0, 1.0));
    const int actions = uniform_int(rng, 1, 3);
    mdp.action_labels.emplace_back();
    mdp.kernel.emplace_back();
    for (int a = 0; a < actions; ++a) {
      mdp.action_labels[s].push_back("a" + std::to_string(a));
      mdp.kernel[s].push_back(row(uniform_int(rng, 0, n - 1)));
    }
  }
  std::vector<std::vector<double>> passive;
  for (int s = 0; s < n; ++s) passive.push_back(row(s));
  mdp.passive = passive;
  return mdp;
}

// Expectimax over explicit histories, no memoization:
// V(s, k) = max_a sum_s' p(s'|s,a) [r(s') + V(s', k-1)], V(., 0) = 0.
inline double expectimax_oracle(const FiniteMDP& mdp, std::size_t s, int stages) {
  if (stages == 0) return 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < mdp.kernel[s].size(); ++a) {
    long double v = 0.0L;
    for (std::size_t s2 = 0; s2 < mdp.states.size(); ++s2) {
      const double p = mdp.kernel[s][a][s2];
      if (p > 0.0) v += p * (mdp.reward[s2] + expectimax_oracle(mdp, s2, stages - 1));
    }
    best = std::max(best, static_cast<double>(v));
  }
  return best;
}

// (1/beta) log E_passive[exp(beta * sum of rewards)] over all passive paths
// of `stages` steps from s, by enumeration.
inline double kl_path_oracle(const FiniteMDP& mdp, std::size_t s, int stages, double beta) {
  long double z = 0.0L;
  std::function<void(std::size_t, int, long double, long double)> walk =
      [&](std::size_t cur, int left, long double prob, long double ret) {
        if (left == 0) {
          z += prob * std::exp(static_cast<long double>(beta) * ret);
          return;
        }
        for (std::size_t s2 = 0; s2 < mdp.states.size(); ++s2) {
          const double p = (*mdp.passive)[cur][s2];
          if (p > 0.0) walk(s2, left - 1, prob * p, ret + mdp.reward[s2]);
        }
      };
  walk(s, stages, 1.0L, 0.0L);
  return static_cast<double>(std::log(z) / beta);
}

}  // namespace thermodec::testing
