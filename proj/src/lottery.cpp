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

#include "thermodec/lottery.hpp"

#include <cmath>

#include <fmt/format.h>

#include "thermodec/errors.hpp"
#include "thermodec/numeric.hpp"

namespace thermodec {

BoundedLottery::BoundedLottery(FinitePartition outcomes, ProbabilityVector prior,
                               std::vector<double> utility, double beta)
    : outcomes_(std::move(outcomes)),
      prior_(std::move(prior)),
      utility_(std::move(utility)),
      beta_(beta) {
  if (prior_.size() != outcomes_.size() || utility_.size() != outcomes_.size()) {
    throw DomainError(fmt::format(
        "lottery sizes disagree: {} outcomes, {} prior weights, {} utilities",
        outcomes_.size(), prior_.size(), utility_.size()));
  }
  for (std::size_t i = 0; i < prior_.size(); ++i) {
    if (!(prior_[i] > 0.0)) {
      throw DomainError(fmt::format("prior of outcome '{}' must be strictly positive",
                                    outcomes_.label(i)));
    }
    if (!std::isfinite(utility_[i])) {
      throw DomainError(fmt::format("utility of outcome '{}' is not finite",
                                    outcomes_.label(i)));
    }
  }
  if (!std::isfinite(beta_)) throw ParameterError("lottery beta must be finite");
}

BoundedLottery BoundedLottery::with_beta(double beta) const {
  return BoundedLottery(outcomes_, prior_, utility_, beta);
}

EquilibriumResult equilibrium(const BoundedLottery& lot) {
  const auto p0 = lot.prior().weights();
  const auto& u = lot.utility();
  const double beta = lot.beta();
  if (beta == 0.0) {
    const double eu = numeric::dot(p0, u);
    return {lot.prior(), 0.0, eu, eu};
  }
  std::vector<double> log_w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) log_w[i] = std::log(p0[i]) + beta * u[i];
  ProbabilityVector posterior(numeric::softmax(log_w));
  const double ce = numeric::soft_aggregate(p0, u, beta);
  const double nfe = neg_free_energy_diff(posterior, lot);
  return {std::move(posterior), beta * ce, ce, nfe};
}

double neg_free_energy_diff(const ProbabilityVector& q, const BoundedLottery& lot) {
  if (lot.beta() == 0.0) {
    throw ParameterError("negative free-energy difference undefined for beta = 0");
  }
  if (q.size() != lot.size()) {
    throw DomainError("distribution and lottery differ in size");
  }
  return numeric::dot(q.weights(), lot.utility()) -
         numeric::kl_divergence(q.weights(), lot.prior().weights()) / lot.beta();
}

std::vector<double> certainty_equivalent_limits(const BoundedLottery& lot,
                                                std::span<const double> betas) {
  std::vector<double> out;
  out.reserve(betas.size());
  for (double b : betas) {
    if (!std::isfinite(b)) throw ParameterError("beta values must be finite");
    out.push_back(numeric::soft_aggregate(lot.prior().weights(), lot.utility(), b));
  }
  return out;
}

PosteriorLimits posterior_limits(const BoundedLottery& lot) {
  return {equilibrium(lot.with_beta(kLimitBeta)).posterior, lot.prior(),
          equilibrium(lot.with_beta(-kLimitBeta)).posterior};
}

}  // namespace thermodec
