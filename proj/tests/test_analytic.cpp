// Copyright 2026 The Hornphase Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <bit>
#include <cmath>

#include "hornphase/analytic.hpp"

using namespace hornphase;

// High-precision reference values computed independently (40-digit
// arithmetic) and frozen here.
namespace {
constexpr double kFExpMinus1 = 0.536381465581;    // F(e^-1)
constexpr double kFExpMinusTenth = 0.00239352080145;  // F(e^-0.1)
constexpr double kRho0 = 0.793495975377;          // rho_0 at lambda = 1
constexpr double kRho1 = 0.184522853419;          // rho_1 at lambda = 1
}  // namespace

TEST_CASE("f_product fixed values") {
  CHECK(f_product(0.0, 1e-12) == 1.0);
  CHECK(std::abs(f_product(std::exp(-1.0), 1e-9) - kFExpMinus1) < 1e-9);
  CHECK(std::abs(f_product(std::exp(-1.0), 1e-9) - kFExpMinus1) < 1e-6);
  CHECK(std::abs(f_product(std::exp(-0.1), 1e-9) - kFExpMinusTenth) < 1e-6);
}

TEST_CASE("f_product domain errors") {
  CHECK_THROWS_AS(f_product(-0.1, 1e-9), std::domain_error);
  CHECK_THROWS_AS(f_product(1.0, 1e-9), std::domain_error);
  CHECK_THROWS_AS(f_product(1.5, 1e-9), std::domain_error);
  CHECK_THROWS_AS(f_product(0.5, 0.0), std::domain_error);
}

TEST_CASE("f_product is strictly decreasing and stays in (0,1)") {
  double prev = 1.0;
  for (int i = 1; i <= 99; ++i) {
    const double x = 0.01 * i;
    const double v = f_product(x, 1e-12);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("f_series sign pattern follows binary popcount") {
  // (1-x)(1-x^2)(1-x^4) expands with signs +,-,-,+,-,+,+,- on x^0..x^7.
  const int expected[8] = {+1, -1, -1, +1, -1, +1, +1, -1};
  for (unsigned i = 0; i < 8; ++i) {
    CHECK((std::popcount(i) % 2 == 0 ? +1 : -1) == expected[i]);
  }
  CHECK(f_series(0.0, 1) == 1.0);
  CHECK(f_series(0.0, 60) == 1.0);
  CHECK_THROWS_AS(f_series(-0.2, 8), std::domain_error);
}

TEST_CASE("f_series converges to f_product") {
  CHECK(std::abs(f_series(0.5, 64) - f_product(0.5, 1e-12)) <= 1e-10);
  for (int i = 1; i <= 9; ++i) {
    const double x = 0.1 * i;
    const double bound = std::pow(x, 64.0) / (1.0 - x) + 1e-10;
    CHECK(std::abs(f_series(x, 64) - f_product(x, 1e-12)) <= bound);
  }
}

TEST_CASE("sat_prob_limit endpoints and the lambda=1 value") {
  CHECK(sat_prob_limit(1.0) == doctest::Approx(1.0 - kFExpMinus1).epsilon(1e-9));
  CHECK(std::abs(sat_prob_limit(1.0) - 0.463620) < 1e-5);
  CHECK(sat_prob_limit(1e-6) > 0.99999);
  CHECK(sat_prob_limit(50.0) < 1e-18);
  CHECK_THROWS_AS(sat_prob_limit(0.0), std::domain_error);
}

TEST_CASE("partial_pi values and convergence") {
  CHECK(partial_pi(1.0, 0) == 1.0);
  CHECK(partial_pi(1.0, 1) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(partial_pi(1.0, 40) == doctest::Approx(f_product(std::exp(-1.0), 1e-12)).epsilon(1e-12));
}

TEST_CASE("rho distribution values, normalization and shape") {
  const RhoDistribution rho = rho_distribution(1.0, 40);
  CHECK(rho.prob(0) == doctest::Approx(kRho0).epsilon(1e-9));
  CHECK(rho.prob(1) == doctest::Approx(kRho1).epsilon(1e-9));
  for (double lambda : {0.5, 1.0, 2.0}) {
    const RhoDistribution d = rho_distribution(lambda, 40);
    double sum = 0;
    for (double p : d.probabilities) {
      CHECK(p >= 0.0);
      sum += p;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
    CHECK(std::abs(d.tail_mass) <= 1e-9);
  }
  // decays beyond 40 even at the smallest rate the claim covers
  CHECK(std::abs(rho_distribution(0.25, 40).tail_mass) < 1e-12);
  // unimodal then decaying
  const RhoDistribution d2 = rho_distribution(2.0, 40);
  std::size_t mode = 0;
  for (std::size_t k = 0; k < d2.probabilities.size(); ++k) {
    if (d2.probabilities[k] > d2.probabilities[mode]) mode = k;
  }
  for (std::size_t k = mode; k + 1 < d2.probabilities.size(); ++k) {
    CHECK(d2.probabilities[k + 1] <= d2.probabilities[k] + 1e-15);
  }
  CHECK_THROWS_AS(rho_distribution(0.0, 10), std::domain_error);
}

TEST_CASE("acceptance decomposition telescopes to the sat probability") {
  for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    double sum = 0;
    double rate = lambda;
    for (unsigned k = 0; k <= 60; ++k) {
      sum += std::exp(-rate) * partial_pi(lambda, k);
      rate = rate > 745.0 ? rate : 2.0 * rate;
    }
    CHECK(std::abs(sum - sat_prob_limit(lambda)) <= 1e-9);
  }
}

TEST_CASE("g_function closed form") {
  CHECK(g_function(0, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(g_function(-3, 2.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("wobble rescaling for both variants") {
  // n = 16: both log2(16) and log2(4) are integral, so c_n = c.
  CHECK(wobble_c_n(3.0, 16, WobbleVariant::kSqrt) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(wobble_c_n(3.0, 16, WobbleVariant::kLinear) == doctest::Approx(3.0).epsilon(1e-12));
  // n = 20: frac(log2 20) gives 20/16, frac(log2 sqrt(20)) gives sqrt(20)/4.
  CHECK(wobble_c_n(4.0, 20, WobbleVariant::kLinear) == doctest::Approx(3.2).epsilon(1e-12));
  CHECK(wobble_c_n(4.0, 20, WobbleVariant::kSqrt) ==
        doctest::Approx(16.0 / std::sqrt(20.0)).epsilon(1e-12));
  CHECK_THROWS_AS(wobble_c_n(0.0, 16, WobbleVariant::kSqrt), std::domain_error);
  CHECK_THROWS_AS(wobble_c_n(1.0, 1, WobbleVariant::kSqrt), std::domain_error);
}

TEST_CASE("eta telescopes to one") {
  // fixed window -30..30, as long as the left tail fits the tolerance
  for (double c : {0.5, 1.0}) {
    double sum = 0;
    for (int k = -30; k <= 30; ++k) sum += g_function(k - 1, c) - g_function(k, c);
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
  // adaptive support: tails included must reconstruct all mass
  for (double c_like : {0.5, 3.2, 10.0}) {
    for (WobbleVariant variant : {WobbleVariant::kSqrt, WobbleVariant::kLinear}) {
      for (unsigned n : {16u, 20u}) {
        const EtaDistribution eta = wobble_law(c_like, n, variant);
        double sum = eta.left_tail + eta.right_tail;
        for (double p : eta.probabilities) {
          CHECK(p >= 0.0);
          sum += p;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        CHECK(eta.left_tail < 1e-12);
        CHECK(eta.right_tail < 1e-12);
      }
    }
  }
}

TEST_CASE("finite_accept_prob exact cases") {
  CHECK(finite_accept_prob(3, 1, UniverseKind::kStrict) ==
        doctest::Approx(16.0 / 19.0).epsilon(1e-12));
  CHECK(finite_accept_prob(7, 0, UniverseKind::kPadded) == 1.0);
  // Agreement with the exponential of the finite-n rate is sharp ...
  const std::uint64_t m20 = std::uint64_t{1} << 20;
  const double lam20 = static_cast<double>(m20) * 20.0 / universe_size_real(20, UniverseKind::kPadded);
  CHECK(std::abs(finite_accept_prob(20, m20, UniverseKind::kPadded) - std::exp(-lam20)) < 1e-6);
  // ... and the value drifts toward e^-c from there as n grows.
  double prev_gap = 1e9;
  for (unsigned n : {20u, 30u, 40u, 56u}) {
    const std::uint64_t m = std::uint64_t{1} << n;
    const double gap = std::abs(finite_accept_prob(n, m, UniverseKind::kPadded) - std::exp(-1.0));
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("concentration lower bound") {
  CHECK(concentration_lower_bound(100, 90, 1000) == doctest::Approx(768.0).epsilon(1e-12));
  CHECK(concentration_lower_bound(50, 50, 777) == doctest::Approx(777.0).epsilon(1e-12));
  for (std::uint64_t t = 1; t <= 30; ++t) {
    CHECK(concentration_lower_bound(30, t, 500) <= 500.0);
  }
  CHECK_THROWS_AS(concentration_lower_bound(10, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(concentration_lower_bound(10, 11, 5), std::invalid_argument);
}
