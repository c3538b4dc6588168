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

#pragma once

#include <span>
#include <vector>

namespace thermodec::numeric {

// log(sum_i exp(args[i])), shifted by the largest argument.
// Throws DomainError on an empty input.
double log_sum_exp(std::span<const double> args);

// exp(args[i] - log_sum_exp(args)); the result sums to one.
std::vector<double> softmax(std::span<const double> log_weights);

// Soft aggregation (1/beta) log sum_i weights[i] exp(beta * values[i]).
//
// `weights` must be a probability vector (entries with zero weight are
// skipped). beta == 0 returns the weighted mean, which is the limit of the
// expression. The evaluation is shifted by the dominant term and switches to
// log1p/expm1 when the aggregate is close to one, so that the result stays
// accurate for |beta| from 1e-12 up to 1e6 and beyond.
double soft_aggregate(std::span<const double> weights,
                      std::span<const double> values, double beta);

// sum_i p[i] log(p[i] / q[i]) with 0 log 0 = 0. Requires q[i] > 0 wherever
// p[i] > 0.
double kl_divergence(std::span<const double> p, std::span<const double> q);

// sum_i p[i] log p[i] with 0 log 0 = 0.
double neg_entropy(std::span<const double> p);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace thermodec::numeric
