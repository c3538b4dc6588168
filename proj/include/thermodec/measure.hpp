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

// Transformation costs, cost potentials and Gibbs measures over finite
// partitions.
//
// A cost potential assigns an absolute cost phi(x) to every cell x of a
// partition of a reference event S. With conversion factor beta (inverse
// cost per nat) the potential of S and the conditional probabilities of the
// cells follow from the log-partition sum
//
//   phi(S)   = -(1/beta) log sum_x exp(-beta phi(x))
//   p(x | S) = exp(-beta phi(x)) / exp(-beta phi(S)),
//
// and p minimizes the free energy F[q] = sum q phi + (1/beta) sum q log q with
// minimum value phi(S).

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace thermodec {

// Total-mass tolerance accepted by ProbabilityVector.
inline constexpr double kMassTolerance = 1e-12;

class FinitePartition {
 public:
  // Labels must be nonempty and pairwise distinct.
  explicit FinitePartition(std::vector<std::string> labels);

  // Partition with labels "0", "1", ..., "n-1".
  static FinitePartition indexed(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  bool operator==(const FinitePartition&) const = default;

 private:
  std::vector<std::string> labels_;
};

// Nonnegative weights summing to one within kMassTolerance. Inputs outside
// the tolerance are rejected, never renormalized.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> weights);

  // Divides by the total before validation; for callers that computed
  // unnormalized weights themselves.
  static ProbabilityVector normalized(std::vector<double> weights);
  static ProbabilityVector uniform(std::size_t n);
  // All mass on `index`.
  static ProbabilityVector point_mass(std::size_t n, std::size_t index);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }
  bool strictly_positive() const;

 private:
  std::vector<double> weights_;
};

struct CostPotential {
  std::vector<double> phi;  // cost per outcome
  double beta = 1.0;        // conversion factor, nonzero
  double phi0 = 0.0;        // potential of the whole sample space

  // Throws ParameterError for beta == 0 or non-finite phi.
  void validate() const;
};

// -(1/beta) log(prob). Zero for prob == 1.
double transformation_cost(double prob, double beta);

// phi(S) for the partition `part` of S.
double potential_of_partition(const CostPotential& pot,
                              const FinitePartition& part);

ProbabilityVector gibbs_from_potential(const CostPotential& pot,
                                       const FinitePartition& part);

// F_beta[q] = sum q phi + (1/beta) sum q log q, with 0 log 0 = 0.
double free_energy(const ProbabilityVector& q, const CostPotential& pot);

// Work needed to confine a one-molecule ideal gas to a fraction `p` of its
// volume, -gamma * log2(p), where gamma converts one bit into energy units.
double isothermal_work(double p, double gamma);

}  // namespace thermodec
