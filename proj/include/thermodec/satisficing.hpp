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

// Satisficing by random search: the best of m i.i.d. draws from a discrete
// source has CDF F_m(v) = F_0(v)^m. More draws buy a higher expected maximum
// with diminishing increments, so a per-draw cost yields a finite optimal
// number of draws.
//
// Sample-count conventions: `m` is the total number of draws. The optimal
// stopping search is phrased in `extra draws` M = m - 1, i.e. the first draw
// is free and each further draw costs `cost_per_sample`.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "thermodec/measure.hpp"

namespace thermodec {

class DiscreteSource {
 public:
  // `support` strictly increasing, `pmf` strictly positive and of equal size.
  DiscreteSource(std::vector<double> support, ProbabilityVector pmf);

  // Poisson(lambda) weights on the integers lo..hi, renormalized to sum to one.
  static DiscreteSource truncated_poisson(double lambda, int lo, int hi);

  std::size_t size() const { return support_.size(); }
  const std::vector<double>& support() const { return support_; }
  const ProbabilityVector& pmf() const { return pmf_; }
  // F_0 at every support point; the last entry is exactly one.
  const std::vector<double>& cdf() const { return cdf_; }

 private:
  std::vector<double> support_;
  ProbabilityVector pmf_;
  std::vector<double> cdf_;
};

// F_0(v)^m per support point. Throws ParameterError for m < 1.
std::vector<double> max_cdf(const DiscreteSource& source, int m);

// Distribution of the maximum of m draws: first differences of max_cdf.
ProbabilityVector max_pmf(const DiscreteSource& source, int m);

// E[max of m draws] = v_n - sum_k (v_{k+1} - v_k) F_0(v_k)^m.
double expected_max(const DiscreteSource& source, int m);

// E_{m+1} - E_m = sum_k (v_{k+1} - v_k) F_0(v_k)^m (1 - F_0(v_k)), evaluated
// in closed form so that it stays meaningful when it is far below the
// rounding error of expected_max itself.
double expected_max_increment(const DiscreteSource& source, int m);

struct MaxSamplingResult {
  std::vector<int> sample_counts;            // m, total draws
  std::vector<ProbabilityVector> pmf_of_max;
  std::vector<double> expected_max;
  std::vector<double> penalized_value;       // expected_max - (m - 1) * cost
};

MaxSamplingResult max_sampling_curve(const DiscreteSource& source,
                                     std::span<const int> sample_counts,
                                     double cost_per_sample);

struct OptimalSampleSize {
  int extra_draws;  // M*, so M* + 1 draws in total
  double value;     // E[max of M*+1 draws] - M* * cost
};

// argmax over M in {0..max_extra_draws} of E[max of M+1 draws] - M * cost,
// ties toward the smaller M. Throws ParameterError for cost <= 0 or
// max_extra_draws < 1, DiagnosticError when the maximizer sits on the upper
// end of the range (the penalized value is still rising there).
OptimalSampleSize optimal_sample_size(const DiscreteSource& source,
                                      double cost_per_sample,
                                      int max_extra_draws);

// Sup-norm distance between the Gibbs distribution Q(x) exp(alpha U(x)) / Z
// with U(x) = log F_M(x) and the exact distribution of the maximum of alpha
// draws from M, for each alpha. The common outcome set is ordered by index.
// Q and M must be strictly positive and of equal size (DomainError
// otherwise); alphas must be positive.
std::vector<double> gibbs_vs_max_distance(const ProbabilityVector& reference,
                                          const ProbabilityVector& source_pmf,
                                          std::span<const int> alphas);

// Least-squares fit of log d(alpha) = intercept + slope * alpha, read as the
// bound d(alpha) <= exp(-(alpha - xi) delta) with delta = -slope and the
// smallest xi for which the bound covers every fitted point.
struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double delta = 0.0;
  double xi = 0.0;  // NaN when delta <= 0

  double bound(double alpha) const;
};

// Throws DiagnosticError when fewer than two points are given or a distance
// is not strictly positive.
DecayFit fit_exponential_decay(std::span<const int> alphas,
                               std::span<const double> distances);

// Residual of the continuous-limit log-odds identity
//
//   log p_m(v)/p_m(v') ~= (m-1) log F_0(v)/F_0(v') + log mu(v)/mu(v')
//
// where p_m(v) = mu(v) sum_{i=1..m} F_0(v)^{m-i} F_0(v-)^{i-1} is the exact
// discrete pmf of the maximum. The maximum is taken over pairs of support
// points whose predecessor has F_0(v-) >= cdf_floor: the approximation is
// zeroth order in F_0(v) - F_0(v-) relative to F_0(v), so it only converges
// under refinement away from the lower tail. Returns 0 when fewer than two
// points qualify.
double log_odds_check(const DiscreteSource& source, int m, double cdf_floor = 0.5);

// (m-1) * max log(F_0(v)/F_0(v-)) over the same points: an upper bound on
// log_odds_check that shrinks with the grid spacing.
double log_odds_residual_bound(const DiscreteSource& source, int m,
                               double cdf_floor = 0.5);

// Empirical distribution of the maximum of m draws, estimated by simulating
// `draws` independent searches. Work is split over `streams` independently
// seeded generators; the result depends only on (seed, streams).
std::vector<double> sample_max_frequencies(const DiscreteSource& source, int m,
                                           std::size_t draws, std::uint64_t seed,
                                           std::size_t streams = 1);

}  // namespace thermodec
