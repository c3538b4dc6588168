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

#include "thermodec/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermodec/errors.hpp"

namespace thermodec::numeric {

double log_sum_exp(std::span<const double> args) {
  if (args.empty()) throw DomainError("log_sum_exp: no arguments supplied");
  const double max_arg = *std::max_element(args.begin(), args.end());
  if (max_arg == -std::numeric_limits<double>::infinity()) return max_arg;
  double sum = 0.0;
  for (double a : args) sum += std::exp(a - max_arg);
  return max_arg + std::log(sum);
}

std::vector<double> softmax(std::span<const double> log_weights) {
  const double lse = log_sum_exp(log_weights);
  std::vector<double> out(log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::exp(log_weights[i] - lse);
    total += out[i];
  }
  // One more pass removes the residual rounding of exp/log.
  for (double& p : out) p /= total;
  return out;
}

double soft_aggregate(std::span<const double> weights,
                      std::span<const double> values, double beta) {
  if (weights.size() != values.size() || weights.empty()) {
    throw DomainError("soft_aggregate: weights and values must match and be nonempty");
  }
  if (beta == 0.0) return dot(weights, values);

  // Reference value: the one carrying the largest log-weight.
  std::size_t ref = weights.size();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    const double lw = std::log(weights[i]) + beta * values[i];
    if (ref == weights.size() || lw > best) {
      best = lw;
      ref = i;
    }
  }
  if (ref == weights.size()) {
    throw DomainError("soft_aggregate: weights have no positive entry");
  }
  const double c = values[ref];

  // S = sum w exp(beta (v - c)) and s = S - 1 computed without cancellation.
  double big = 0.0;
  double small = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    const double x = beta * (values[i] - c);
    big += weights[i] * std::exp(x);
    small += weights[i] * std::expm1(x);
  }
  const double log_s = std::abs(small) < 0.5 ? std::log1p(small) : std::log(big);
  return c + log_s / beta;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) acc += p[i] * std::log(p[i] / q[i]);
  }
  return acc;
}

double neg_entropy(std::span<const double> p) {
  double acc = 0.0;
  for (double x : p) {
    if (x > 0.0) acc += x * std::log(x);
  }
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace thermodec::numeric
