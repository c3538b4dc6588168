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
#include "thermodec/measure.hpp"
#include "thermodec/numeric.hpp"

namespace thermodec {
namespace {

TEST_CASE("probability vectors are validated, not renormalized") {
  CHECK_NOTHROW(ProbabilityVector({0.25, 0.75}));
  CHECK_THROWS_AS(ProbabilityVector({0.5, 0.4}), DomainError);
  CHECK_THROWS_AS(ProbabilityVector({1.5, -0.5}), DomainError);
  CHECK_THROWS_AS(ProbabilityVector(std::vector<double>{}), DomainError);
  CHECK(ProbabilityVector::normalized({1.0, 3.0})[1] == doctest::Approx(0.75));
  CHECK(ProbabilityVector::point_mass(3, 2)[2] == 1.0);
  CHECK_FALSE(ProbabilityVector::point_mass(3, 2).strictly_positive());
}

TEST_CASE("partitions need distinct nonempty labels") {
  CHECK_THROWS_AS(FinitePartition({"a", "a"}), DomainError);
  CHECK_THROWS_AS(FinitePartition(std::vector<std::string>{}), DomainError);
  CHECK(FinitePartition::indexed(3).label(2) == "2");
}

TEST_CASE("transformation cost") {
  CHECK(transformation_cost(1.0, 2.0) == 0.0);
  CHECK(transformation_cost(0.5, 1.0) == doctest::Approx(0.6931471805599453));
  CHECK_THROWS_AS(transformation_cost(0.5, 0.0), ParameterError);
  CHECK_THROWS_AS(transformation_cost(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(transformation_cost(1.5, 1.0), DomainError);
  testing::Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double p = testing::uniform(rng, 1e-6, 1.0);
    const double q = testing::uniform(rng, 1e-6, 1.0);
    const double beta = testing::uniform(rng, 0.1, 5.0);
    CHECK(std::abs(transformation_cost(p * q, beta) -
                   (transformation_cost(p, beta) + transformation_cost(q, beta))) < 1e-10);
    if (p < q) CHECK(transformation_cost(p, beta) > transformation_cost(q, beta));
  }
}

TEST_CASE("potential of a partition") {
  const auto part3 = FinitePartition::indexed(3);
  CHECK(potential_of_partition({{2.0, 2.0, 2.0}, 0.5}, part3) ==
        doctest::Approx(2.0 - std::log(3.0) / 0.5));
  CHECK(potential_of_partition({{1.7}, 3.0}, FinitePartition::indexed(1)) ==
        doctest::Approx(1.7));
  CHECK(potential_of_partition({{0.0, 0.0}, 1.0}, FinitePartition::indexed(2)) ==
        doctest::Approx(-std::log(2.0)));
  CHECK_THROWS(potential_of_partition({{0.0, 0.0}, 1.0}, part3));
}

TEST_CASE("potential composes over nested partitions") {
  testing::Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const double beta = testing::uniform(rng, 0.1, 5.0) * (i % 2 ? 1.0 : -1.0);
    // Two blocks of sizes 2 and 3; fold each block, then the two block values.
    const auto phi = testing::random_vector(rng, 5, -2.0, 2.0);
    const double a = potential_of_partition({{phi[0], phi[1]}, beta}, FinitePartition::indexed(2));
    const double b =
        potential_of_partition({{phi[2], phi[3], phi[4]}, beta}, FinitePartition::indexed(3));
    const double nested = potential_of_partition({{a, b}, beta}, FinitePartition::indexed(2));
    const double flat = potential_of_partition({phi, beta}, FinitePartition::indexed(5));
    CHECK(std::abs(nested - flat) < 1e-10);
  }
}

TEST_CASE("gibbs distribution from a potential") {
  const auto two = FinitePartition::indexed(2);
  const auto p = gibbs_from_potential({{0.0, 1.0}, 1.0}, two);
  CHECK(p[0] == doctest::Approx(0.7311).epsilon(1e-4));
  CHECK(p[0] == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));
  const auto flat = gibbs_from_potential({{4.0, 4.0, 4.0}, 2.0}, FinitePartition::indexed(3));
  for (double x : flat.weights()) CHECK(x == doctest::Approx(1.0 / 3.0));
  testing::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto phi = testing::random_vector(rng, 4, -3.0, 3.0);
    auto shifted = phi;
    const double c = testing::uniform(rng, -10.0, 10.0);
    for (auto& x : shifted) x += c;
    const auto part = FinitePartition::indexed(4);
    const auto g1 = gibbs_from_potential({phi, 1.3}, part);
    const auto g2 = gibbs_from_potential({shifted, 1.3}, part);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(g1[k] - g2[k]) < 1e-12);
  }
}

TEST_CASE("free energy is minimized by the gibbs distribution for beta > 0") {
  CHECK(free_energy(ProbabilityVector::point_mass(3, 1), {{0.5, -1.0, 2.0}, 2.0}) == -1.0);
  testing::Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 2, 6));
    const double mag = std::exp(testing::uniform(rng, std::log(0.01), std::log(100.0)));
    const double beta = i % 2 ? mag : -mag;
    const CostPotential pot{testing::random_vector(rng, n, -2.0, 2.0), beta};
    const auto part = FinitePartition::indexed(n);
    const auto g = gibbs_from_potential(pot, part);
    const ProbabilityVector q(testing::random_simplex(rng, n));
    const double fg = free_energy(g, pot);
    const double fq = free_energy(q, pot);
    CHECK(std::abs(fg - potential_of_partition(pot, part)) < 1e-9 * (1.0 + std::abs(fg)));
    // F[q] - F[gibbs] = (1/beta) KL(q || gibbs).
    const double kl = testing::naive_kl({q.weights().begin(), q.weights().end()},
                                        {g.weights().begin(), g.weights().end()});
    CHECK(std::abs((fq - fg) - kl / beta) < 1e-9 * (1.0 + std::abs(fq)));
    if (beta > 0) {
      CHECK(fq >= fg - 1e-10);
    } else {
      CHECK(fq <= fg + 1e-10);
    }
  }
}

TEST_CASE("isothermal work") {
  CHECK(isothermal_work(1.0, 3.0) == 0.0);
  CHECK(isothermal_work(0.5, 1.0) == doctest::Approx(1.0));
  CHECK(isothermal_work(0.25, 2.0) == doctest::Approx(4.0));
  CHECK_THROWS(isothermal_work(0.5, 0.0));
  CHECK_THROWS(isothermal_work(0.0, 1.0));
}

}  // namespace
}  // namespace thermodec
