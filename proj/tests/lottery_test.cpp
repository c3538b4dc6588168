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
#include <cmath>
#include <vector>

#include <doctest.h>

#include "support.hpp"
#include "thermodec/errors.hpp"
#include "thermodec/lottery.hpp"

namespace thermodec {
namespace {

std::vector<double> to_vec(const ProbabilityVector& p) {
  return {p.weights().begin(), p.weights().end()};
}

BoundedLottery coin(double beta) {
  return BoundedLottery(FinitePartition({"a", "b"}), ProbabilityVector::uniform(2), {1.0, 0.0},
                        beta);
}

TEST_CASE("construction rejects invalid lotteries") {
  const FinitePartition ab({"a", "b"});
  CHECK_THROWS_AS(BoundedLottery(ab, ProbabilityVector({1.0, 0.0}), {1.0, 0.0}, 1.0),
                  DomainError);
  CHECK_THROWS(BoundedLottery(ab, ProbabilityVector::uniform(3), {1.0, 0.0}, 1.0));
  CHECK_THROWS(BoundedLottery(ab, ProbabilityVector::uniform(2), {1.0, NAN}, 1.0));
  CHECK_THROWS(BoundedLottery(ab, ProbabilityVector::uniform(2), {1.0, 0.0}, INFINITY));
}

TEST_CASE("hand-evaluated equilibrium") {
  const auto eq = equilibrium(coin(1.0));
  CHECK(eq.posterior[0] == doctest::Approx(0.7311).epsilon(1e-4));
  CHECK(eq.posterior[0] == doctest::Approx(std::exp(1.0) / (std::exp(1.0) + 1.0)));
  CHECK(eq.certainty_equivalent == doctest::Approx(0.6201).epsilon(1e-4));
  CHECK(eq.certainty_equivalent == doctest::Approx(std::log((std::exp(1.0) + 1.0) / 2.0)));
  CHECK(eq.log_partition == doctest::Approx(eq.certainty_equivalent));
  CHECK(eq.neg_free_energy_diff == doctest::Approx(eq.certainty_equivalent));
  CHECK(equilibrium(coin(-1.0)).certainty_equivalent == doctest::Approx(0.3799).epsilon(1e-4));
}

TEST_CASE("beta zero is the exact prior limit") {
  const BoundedLottery lot(FinitePartition::indexed(3), ProbabilityVector({0.2, 0.3, 0.5}),
                           {3.0, -1.0, 2.0}, 0.0);
  const auto eq = equilibrium(lot);
  CHECK(to_vec(eq.posterior) == std::vector<double>{0.2, 0.3, 0.5});
  CHECK(eq.certainty_equivalent == doctest::Approx(0.6 - 0.3 + 1.0));
  CHECK(eq.log_partition == 0.0);
  CHECK_THROWS_AS(neg_free_energy_diff(ProbabilityVector::uniform(3), lot), ParameterError);
}

TEST_CASE("constant utility leaves the prior untouched") {
  const BoundedLottery lot(FinitePartition::indexed(3), ProbabilityVector({0.2, 0.3, 0.5}),
                           {1.5, 1.5, 1.5}, 7.0);
  const auto eq = equilibrium(lot);
  for (std::size_t i = 0; i < 3; ++i) CHECK(eq.posterior[i] == doctest::Approx(lot.prior()[i]));
  CHECK(eq.certainty_equivalent == doctest::Approx(1.5));
}

TEST_CASE("posterior is a Bayes update with likelihood exp(beta U)") {
  testing::Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    const double beta = testing::uniform(rng, -5.0, 5.0);
    const auto lot = testing::random_lottery(rng, beta);
    std::vector<double> likelihood;
    for (double u : lot.utility()) likelihood.push_back(std::exp(beta * u));
    const auto want = testing::bayes_update(to_vec(lot.prior()), likelihood);
    CHECK(testing::sup_distance(to_vec(equilibrium(lot).posterior), want) < 1e-12);
  }
}

TEST_CASE("uniform prior gives the logit rule") {
  const std::vector<double> u{0.3, -1.0, 2.0, 0.0};
  const BoundedLottery lot(FinitePartition::indexed(4), ProbabilityVector::uniform(4), u, 1.7);
  double z = 0.0;
  for (double x : u) z += std::exp(1.7 * x);
  const auto eq = equilibrium(lot);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(eq.posterior[i] == doctest::Approx(std::exp(1.7 * u[i]) / z).epsilon(1e-13));
  }
}

TEST_CASE("free energy difference and the variational gap") {
  testing::Rng rng(22);
  for (int i = 0; i < 300; ++i) {
    const double beta = (i % 2 ? 1.0 : -1.0) * testing::uniform(rng, 0.05, 20.0);
    const auto lot = testing::random_lottery(rng, beta);
    const auto eq = equilibrium(lot);
    double mean = 0.0;
    for (std::size_t k = 0; k < lot.size(); ++k) mean += lot.prior()[k] * lot.utility()[k];
    CHECK(std::abs(neg_free_energy_diff(lot.prior(), lot) - mean) < 1e-12);
    CHECK(std::abs(neg_free_energy_diff(eq.posterior, lot) - eq.certainty_equivalent) < 1e-9);
    const ProbabilityVector q(testing::random_simplex(rng, lot.size()));
    const double gap = eq.certainty_equivalent - neg_free_energy_diff(q, lot);
    CHECK(std::abs(gap - testing::naive_kl(to_vec(q), to_vec(eq.posterior)) / beta) < 1e-9);
    if (beta > 0) {
      CHECK(gap > 0.0);
    } else {
      CHECK(gap < 0.0);
    }
  }
}

TEST_CASE("certainty equivalent limits on the coin") {
  const std::vector<double> betas{1e6, -1e6, 1e-9};
  const auto v = certainty_equivalent_limits(coin(1.0), betas);
  CHECK(std::abs(v[0] - 1.0) < 1e-3);
  CHECK(std::abs(v[1] - 0.0) < 1e-3);
  CHECK(std::abs(v[2] - 0.5) < 1e-6);
}

TEST_CASE("certainty equivalent is monotone in beta and shifts with U") {
  testing::Rng rng(23);
  std::vector<double> grid;
  for (int k = 0; k <= 200; ++k) grid.push_back(-50.0 + 0.5 * k);
  for (int i = 0; i < 50; ++i) {
    const auto lot = testing::random_lottery(rng, 1.0);
    const auto v = certainty_equivalent_limits(lot, grid);
    const auto [lo, hi] = std::minmax_element(lot.utility().begin(), lot.utility().end());
    for (std::size_t k = 0; k < v.size(); ++k) {
      CHECK(v[k] >= *lo - 1e-12);
      CHECK(v[k] <= *hi + 1e-12);
      if (k + 1 < v.size()) CHECK(v[k] <= v[k + 1] + 1e-10);
    }
    auto shifted_u = lot.utility();
    for (auto& u : shifted_u) u += 3.25;
    const BoundedLottery shifted(lot.outcomes(), lot.prior(), shifted_u, 2.0);
    const auto a = equilibrium(lot.with_beta(2.0));
    const auto b = equilibrium(shifted);
    CHECK(b.certainty_equivalent == doctest::Approx(a.certainty_equivalent + 3.25).epsilon(1e-13));
    CHECK(testing::sup_distance(to_vec(a.posterior), to_vec(b.posterior)) < 1e-13);
  }
}

TEST_CASE("second-order expansion for small beta") {
  testing::Rng rng(24);
  for (int i = 0; i < 50; ++i) {
    const auto lot = testing::random_lottery(rng, 1e-2);
    double mean = 0.0, second = 0.0;
    for (std::size_t k = 0; k < lot.size(); ++k) {
      mean += lot.prior()[k] * lot.utility()[k];
      second += lot.prior()[k] * lot.utility()[k] * lot.utility()[k];
    }
    const double var = second - mean * mean;
    const double v = equilibrium(lot).certainty_equivalent;
    // Remainder is O(beta^2) times the third cumulant, |U| <= 5.
    CHECK(std::abs(v - (mean + 0.5e-2 * var)) < 1e-4 * 250.0 / 6.0);
  }
}

TEST_CASE("posterior limits") {
  const BoundedLottery desc(FinitePartition::indexed(3), ProbabilityVector::uniform(3),
                            {2.0, 1.0, 0.0}, 1.0);
  CHECK(posterior_limits(desc).rational[0] >= 0.999);
  CHECK(posterior_limits(desc).anti_rational[2] >= 0.999);
  const BoundedLottery tied(FinitePartition::indexed(3), ProbabilityVector::uniform(3),
                            {1.0, 1.0, 0.0}, 1.0);
  const auto lim = posterior_limits(tied);
  CHECK(lim.rational[0] == doctest::Approx(0.5));
  CHECK(lim.rational[1] == doctest::Approx(0.5));
  CHECK(lim.rational[2] < 1e-12);
  CHECK(to_vec(lim.prior) == to_vec(tied.prior()));
}

}  // namespace
}  // namespace thermodec
