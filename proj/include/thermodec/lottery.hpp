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

// Bounded lotteries: a lottery (outcomes, prior p0, utility U) together with a
// resource parameter beta.
//
// The equilibrium choice distribution is p(x) = p0(x) exp(beta U(x)) / Z with
// Z = sum p0 exp(beta U). It maximizes the negative free-energy difference
//
//   -dF[q] = E_q[U] - (1/beta) KL(q || p0),
//
// whose maximum is the certainty equivalent V = (1/beta) log Z. As beta runs
// from -inf through 0 to +inf, V moves from min U through E_p0[U] to max U.

#pragma once

#include <span>
#include <vector>

#include "thermodec/measure.hpp"

namespace thermodec {

// Stand-in for beta -> +/-infinity in limit computations.
inline constexpr double kLimitBeta = 1e6;

class BoundedLottery {
 public:
  // The prior must be strictly positive, utility finite and the same size as
  // the outcome set, beta finite (zero allowed).
  BoundedLottery(FinitePartition outcomes, ProbabilityVector prior,
                 std::vector<double> utility, double beta);

  const FinitePartition& outcomes() const { return outcomes_; }
  const ProbabilityVector& prior() const { return prior_; }
  const std::vector<double>& utility() const { return utility_; }
  double beta() const { return beta_; }
  std::size_t size() const { return utility_.size(); }

  // Same outcomes, prior and utility with a different resource parameter.
  BoundedLottery with_beta(double beta) const;

 private:
  FinitePartition outcomes_;
  ProbabilityVector prior_;
  std::vector<double> utility_;
  double beta_;
};

struct EquilibriumResult {
  ProbabilityVector posterior;
  double log_partition;         // log Z, nats
  double certainty_equivalent;  // (1/beta) log Z, utils
  double neg_free_energy_diff;  // -dF evaluated at the posterior, utils
};

// Gibbs posterior, log partition and certainty equivalent. beta == 0 is the
// exact limit: posterior = prior, V = E_p0[U], log Z = 0.
EquilibriumResult equilibrium(const BoundedLottery& lot);

// E_q[U] - (1/beta) KL(q || p0). The sign convention is that this is the
// quantity being maximized. Throws ParameterError for beta == 0.
double neg_free_energy_diff(const ProbabilityVector& q, const BoundedLottery& lot);

// Certainty equivalent V(beta) for every entry of `betas` (all finite).
std::vector<double> certainty_equivalent_limits(const BoundedLottery& lot,
                                                std::span<const double> betas);

struct PosteriorLimits {
  ProbabilityVector rational;       // beta = +kLimitBeta
  ProbabilityVector prior;          // beta = 0
  ProbabilityVector anti_rational;  // beta = -kLimitBeta
};

PosteriorLimits posterior_limits(const BoundedLottery& lot);

}  // namespace thermodec
