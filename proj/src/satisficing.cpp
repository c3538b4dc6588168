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

#include "thermodec/satisficing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "thermodec/errors.hpp"
#include "thermodec/numeric.hpp"

namespace thermodec {

DiscreteSource::DiscreteSource(std::vector<double> support, ProbabilityVector pmf)
    : support_(std::move(support)), pmf_(std::move(pmf)) {
  if (support_.size() != pmf_.size()) {
    throw DomainError(fmt::format("source has {} support points but {} probabilities",
                                  support_.size(), pmf_.size()));
  }
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (!std::isfinite(support_[i])) throw DomainError("support values must be finite");
    if (i > 0 && !(support_[i] > support_[i - 1])) {
      throw DomainError("support must be strictly increasing");
    }
  }
  if (!pmf_.strictly_positive()) throw DomainError("source pmf must be strictly positive");
  cdf_.resize(support_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    acc += pmf_[i];
    cdf_[i] = std::min(acc, 1.0);
  }
  cdf_.back() = 1.0;
}

DiscreteSource DiscreteSource::truncated_poisson(double lambda, int lo, int hi) {
  if (!(lambda > 0.0)) throw ParameterError("Poisson rate must be positive");
  if (lo < 0 || hi < lo) throw ParameterError("truncation range must satisfy 0 <= lo <= hi");
  std::vector<double> support;
  std::vector<double> log_w;
  for (int v = lo; v <= hi; ++v) {
    support.push_back(v);
    log_w.push_back(v * std::log(lambda) - lambda - std::lgamma(v + 1.0));
  }
  return DiscreteSource(std::move(support), ProbabilityVector(numeric::softmax(log_w)));
}

namespace {

void require_draws(int m) {
  if (m < 1) throw ParameterError(fmt::format("number of draws must be >= 1, got {}", m));
}

}  // namespace

std::vector<double> max_cdf(const DiscreteSource& source, int m) {
  require_draws(m);
  std::vector<double> out(source.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::pow(source.cdf()[k], m);
  return out;
}

ProbabilityVector max_pmf(const DiscreteSource& source, int m) {
  const auto f = max_cdf(source, m);
  std::vector<double> pmf(f.size());
  double prev = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    pmf[k] = f[k] - prev;
    prev = f[k];
  }
  return ProbabilityVector(std::move(pmf));
}

double expected_max(const DiscreteSource& source, int m) {
  const auto f = max_cdf(source, m);
  const auto& v = source.support();
  double below = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) below += (v[k + 1] - v[k]) * f[k];
  return v.back() - below;
}

double expected_max_increment(const DiscreteSource& source, int m) {
  const auto f = max_cdf(source, m);
  const auto& v = source.support();
  const auto& cdf = source.cdf();
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    acc += (v[k + 1] - v[k]) * f[k] * (1.0 - cdf[k]);
  }
  return acc;
}

MaxSamplingResult max_sampling_curve(const DiscreteSource& source,
                                     std::span<const int> sample_counts,
                                     double cost_per_sample) {
  MaxSamplingResult out;
  for (int m : sample_counts) {
    out.sample_counts.push_back(m);
    out.pmf_of_max.push_back(max_pmf(source, m));
    const double e = expected_max(source, m);
    out.expected_max.push_back(e);
    out.penalized_value.push_back(e - (m - 1) * cost_per_sample);
  }
  return out;
}

OptimalSampleSize optimal_sample_size(const DiscreteSource& source,
                                      double cost_per_sample,
                                      int max_extra_draws) {
  if (!(cost_per_sample > 0.0) || !std::isfinite(cost_per_sample)) {
    throw ParameterError("cost per sample must be positive");
  }
  if (max_extra_draws < 1) throw ParameterError("search range must allow at least one extra draw");
  OptimalSampleSize best{0, expected_max(source, 1)};
  for (int extra = 1; extra <= max_extra_draws; ++extra) {
    const double value = expected_max(source, extra + 1) - extra * cost_per_sample;
    if (value > best.value) best = {extra, value};
  }
  if (best.extra_draws == max_extra_draws) {
    throw DiagnosticError(fmt::format(
        "penalized expected maximum still increasing at M = {}; widen the search range",
        max_extra_draws));
  }
  return best;
}

std::vector<double> gibbs_vs_max_distance(const ProbabilityVector& reference,
                                          const ProbabilityVector& source_pmf,
                                          std::span<const int> alphas) {
  if (reference.size() != source_pmf.size()) {
    throw DomainError("reference and source must live on the same outcome set");
  }
  if (!reference.strictly_positive() || !source_pmf.strictly_positive()) {
    throw DomainError("reference and source must be strictly positive");
  }
  const std::size_t n = source_pmf.size();
  std::vector<double> log_f(n);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += source_pmf[k];
    log_f[k] = std::log(std::min(acc, 1.0));
  }
  log_f.back() = 0.0;

  std::vector<double> out;
  out.reserve(alphas.size());
  std::vector<double> log_w(n);
  for (int alpha : alphas) {
    if (alpha < 1) throw ParameterError("alpha must be a positive integer");
    for (std::size_t k = 0; k < n; ++k) log_w[k] = std::log(reference[k]) + alpha * log_f[k];
    const auto gibbs = numeric::softmax(log_w);
    // Differences below the top outcome are formed from accurately computed
    // small numbers; the top one is their negated sum, since both
    // distributions have unit mass.
    double dist = 0.0;
    double sum_below = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const double top = std::exp(alpha * log_f[k]);
      const double max_mass =
          k == 0 ? top : -top * std::expm1(alpha * (log_f[k - 1] - log_f[k]));
      const double diff = gibbs[k] - max_mass;
      sum_below += diff;
      dist = std::max(dist, std::abs(diff));
    }
    dist = std::max(dist, std::abs(sum_below));
    out.push_back(dist);
  }
  return out;
}

double DecayFit::bound(double alpha) const { return std::exp(-(alpha - xi) * delta); }

DecayFit fit_exponential_decay(std::span<const int> alphas,
                               std::span<const double> distances) {
  if (alphas.size() != distances.size() || alphas.size() < 2) {
    throw DiagnosticError("decay fit needs at least two (alpha, distance) pairs");
  }
  const double n = static_cast<double>(alphas.size());
  std::vector<double> y(alphas.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(distances[i] > 0.0)) {
      throw DiagnosticError(fmt::format("distance at alpha = {} is not positive", alphas[i]));
    }
    y[i] = std::log(distances[i]);
    mx += alphas[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double dx = alphas[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DiagnosticError("decay fit needs at least two distinct alphas");
  DecayFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * alphas[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.delta = -fit.slope;
  if (fit.delta > 0.0) {
    fit.xi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      fit.xi = std::max(fit.xi, alphas[i] + y[i] / fit.delta);
    }
  } else {
    fit.xi = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

namespace {

// h(v) = log S_m(v) - (m-1) log F_0(v) for every qualifying support point,
// with S_m(v) = sum_{i=1..m} F_0(v)^{m-i} F_0(v-)^{i-1}. The log-odds residual
// of a pair is |h(v) - h(v')|: the mu terms appear identically on both sides.
// Factoring F_0(v)^{m-1} out of S_m leaves a geometric sum in F_0(v-)/F_0(v).
std::vector<double> log_odds_excess(const DiscreteSource& source, int m,
                                    double cdf_floor) {
  require_draws(m);
  const auto& cdf = source.cdf();
  std::vector<double> h;
  for (std::size_t k = 1; k < cdf.size(); ++k) {
    if (cdf[k - 1] < cdf_floor) continue;
    const double ratio = cdf[k - 1] / cdf[k];
    // sum_{j<m} ratio^j, accumulated term by term.
    double geometric = 0.0;
    double term = 1.0;
    for (int j = 0; j < m; ++j) {
      geometric += term;
      term *= ratio;
    }
    h.push_back(std::log(geometric));
  }
  return h;
}

}  // namespace

double log_odds_check(const DiscreteSource& source, int m, double cdf_floor) {
  const auto h = log_odds_excess(source, m, cdf_floor);
  if (h.size() < 2) return 0.0;
  const auto [lo, hi] = std::minmax_element(h.begin(), h.end());
  return *hi - *lo;
}

double log_odds_residual_bound(const DiscreteSource& source, int m,
                               double cdf_floor) {
  require_draws(m);
  const auto& cdf = source.cdf();
  double widest = 0.0;
  for (std::size_t k = 1; k < cdf.size(); ++k) {
    if (cdf[k - 1] < cdf_floor) continue;
    widest = std::max(widest, std::log(cdf[k] / cdf[k - 1]));
  }
  return (m - 1) * widest;
}

namespace {

std::vector<std::uint64_t> simulate_stream(const std::vector<double>& cdf, int m,
                                           std::size_t draws, std::uint64_t seed,
                                           std::size_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 gen(seq);
  std::vector<std::uint64_t> counts(cdf.size(), 0);
  for (std::size_t d = 0; d < draws; ++d) {
    std::size_t best = 0;
    for (int i = 0; i < m; ++i) {
      // 53 random bits -> uniform in [0, 1).
      const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const auto idx = std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
      best = std::max(best, idx);
    }
    ++counts[best];
  }
  return counts;
}

}  // namespace

std::vector<double> sample_max_frequencies(const DiscreteSource& source, int m,
                                           std::size_t draws, std::uint64_t seed,
                                           std::size_t streams) {
  require_draws(m);
  if (draws == 0) throw ParameterError("need at least one simulated search");
  if (streams == 0) throw ParameterError("need at least one stream");
  std::vector<std::vector<std::uint64_t>> per_stream(streams);
  std::vector<std::thread> workers;
  for (std::size_t s = 0; s < streams; ++s) {
    const std::size_t share = draws / streams + (s < draws % streams ? 1 : 0);
    workers.emplace_back([&, s, share] {
      per_stream[s] = simulate_stream(source.cdf(), m, share, seed, s);
    });
  }
  for (auto& w : workers) w.join();
  std::vector<double> freq(source.size(), 0.0);
  for (const auto& counts : per_stream) {
    for (std::size_t k = 0; k < counts.size(); ++k) freq[k] += static_cast<double>(counts[k]);
  }
  for (double& f : freq) f /= static_cast<double>(draws);
  return freq;
}

}  // namespace thermodec
