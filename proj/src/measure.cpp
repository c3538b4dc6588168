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

#include "thermodec/measure.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "thermodec/errors.hpp"
#include "thermodec/numeric.hpp"

namespace thermodec {

FinitePartition::FinitePartition(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw DomainError("partition must have at least one outcome");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw DomainError(fmt::format("duplicate outcome label '{}'", l));
    }
  }
}

FinitePartition FinitePartition::indexed(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FinitePartition(std::move(labels));
}

ProbabilityVector::ProbabilityVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw DomainError("probability vector is empty");
  double total = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw DomainError(fmt::format("probability {} at index {} is not a nonnegative number", w, i));
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw DomainError(fmt::format("probabilities sum to {:.17g}, not 1", total));
  }
}

ProbabilityVector ProbabilityVector::normalized(std::vector<double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DomainError("cannot normalize weights with nonpositive total");
  }
  for (double& w : weights) w /= total;
  return ProbabilityVector(std::move(weights));
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n) {
  if (n == 0) throw DomainError("uniform distribution over zero outcomes");
  return ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ProbabilityVector ProbabilityVector::point_mass(std::size_t n, std::size_t index) {
  if (index >= n) throw DomainError("point mass index out of range");
  std::vector<double> w(n, 0.0);
  w[index] = 1.0;
  return ProbabilityVector(std::move(w));
}

bool ProbabilityVector::strictly_positive() const {
  for (double w : weights_) {
    if (!(w > 0.0)) return false;
  }
  return true;
}

void CostPotential::validate() const {
  if (beta == 0.0 || !std::isfinite(beta)) {
    throw ParameterError("cost potential needs a finite nonzero beta");
  }
  for (double p : phi) {
    if (!std::isfinite(p)) throw ParameterError("cost potential values must be finite");
  }
}

double transformation_cost(double prob, double beta) {
  if (beta == 0.0) throw ParameterError("transformation cost undefined for beta = 0");
  if (!(prob > 0.0) || prob > 1.0) {
    throw DomainError(fmt::format("transformation cost needs 0 < prob <= 1, got {}", prob));
  }
  if (prob == 1.0) return 0.0;
  return -std::log(prob) / beta;
}

namespace {

std::vector<double> scaled_negative(const CostPotential& pot,
                                    const FinitePartition& part) {
  pot.validate();
  if (pot.phi.size() != part.size()) {
    throw DomainError(fmt::format("potential has {} values for a partition of {} outcomes",
                                  pot.phi.size(), part.size()));
  }
  std::vector<double> args(pot.phi.size());
  for (std::size_t i = 0; i < args.size(); ++i) args[i] = -pot.beta * pot.phi[i];
  return args;
}

}  // namespace

double potential_of_partition(const CostPotential& pot,
                              const FinitePartition& part) {
  const auto args = scaled_negative(pot, part);
  return -numeric::log_sum_exp(args) / pot.beta;
}

ProbabilityVector gibbs_from_potential(const CostPotential& pot,
                                       const FinitePartition& part) {
  return ProbabilityVector(numeric::softmax(scaled_negative(pot, part)));
}

double free_energy(const ProbabilityVector& q, const CostPotential& pot) {
  pot.validate();
  if (q.size() != pot.phi.size()) {
    throw DomainError("free energy: distribution and potential differ in size");
  }
  return numeric::dot(q.weights(), pot.phi) +
         numeric::neg_entropy(q.weights()) / pot.beta;
}

double isothermal_work(double p, double gamma) {
  if (!(gamma > 0.0)) throw ParameterError("isothermal work needs gamma > 0");
  if (!(p > 0.0) || p > 1.0) {
    throw DomainError(fmt::format("isothermal work needs 0 < p <= 1, got {}", p));
  }
  if (p == 1.0) return 0.0;
  return -gamma * std::log2(p);
}

}  // namespace thermodec
