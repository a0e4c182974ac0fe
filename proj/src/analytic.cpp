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

#include "hornphase/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace hornphase {

double f_product(double x, double tol) {
  if (!(x >= 0.0) || x >= 1.0) throw std::domain_error("f_product: x must be in [0, 1)");
  if (!(tol > 0.0)) throw std::domain_error("f_product: tol must be positive");
  const double inv = 1.0 / (1.0 - x);
  double product = 1.0;
  double factor = x;  // x^(2^k)
  for (int k = 0; k < 1100; ++k) {
    if (factor * inv < tol) break;
    product *= 1.0 - factor;
    factor *= factor;
  }
  return product;
}

double f_series(double x, unsigned num_terms) {
  if (!(x >= 0.0) || x >= 1.0) throw std::domain_error("f_series: x must be in [0, 1)");
  double sum = 0.0;
  double power = 1.0;  // x^i
  for (unsigned i = 0; i < num_terms; ++i) {
    sum += (std::popcount(i) & 1) ? -power : power;
    power *= x;
  }
  return sum;
}

double sat_prob_limit(double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("sat_prob_limit: lambda must be positive");
  return 1.0 - f_product(std::exp(-lambda), 1e-12);
}

double partial_pi(double lambda, unsigned k) {
  double product = 1.0;
  double rate = lambda;  // 2^i * lambda
  for (unsigned i = 0; i < k; ++i) {
    product *= 1.0 - std::exp(-rate);
    rate *= 2.0;
    if (rate > 745.0) break;  // remaining factors are 1 - 0 exactly
  }
  return product;
}

RhoDistribution rho_distribution(double lambda, unsigned kmax) {
  if (!(lambda > 0.0)) throw std::domain_error("rho_distribution: lambda must be positive");
  RhoDistribution dist;
  dist.lambda = lambda;
  const double denom = sat_prob_limit(lambda);
  double pi = 1.0;      // Pi_k
  double rate = lambda; // 2^k * lambda
  double sum = 0.0;
  for (unsigned k = 0; k <= kmax; ++k) {
    const double rho = std::exp(-rate) * pi / denom;
    dist.probabilities.push_back(rho);
    sum += rho;
    pi *= 1.0 - std::exp(-rate);
    rate = rate > 745.0 ? rate : rate * 2.0;
  }
  dist.tail_mass = std::max(0.0, 1.0 - sum);  // clamp ulp-level negatives
  return dist;
}

double g_function(int k, double c) {
  // sum_{j<=k} 2^j = 2^(k+1)
  return std::exp(-std::ldexp(c, k + 1));
}

double wobble_c_n(double c_like, unsigned n, WobbleVariant variant) {
  if (!(c_like > 0.0)) throw std::domain_error("wobble_c_n: rate must be positive");
  if (n < 2) throw std::domain_error("wobble_c_n: n must be >= 2");
  const double lg = variant == WobbleVariant::kSqrt
                        ? std::log2(std::sqrt(static_cast<double>(n)))
                        : std::log2(static_cast<double>(n));
  const double frac = lg - std::floor(lg);
  return c_like / std::exp2(frac);
}

EtaDistribution wobble_law(double c_like, unsigned n, WobbleVariant variant) {
  EtaDistribution dist;
  dist.c_n = wobble_c_n(c_like, n, variant);
  const double c = dist.c_n;

  // Left tail below kmin is 1 - G(kmin - 1) ~= c * 2^kmin; right tail above
  // kmax is G(kmax) = exp(-c * 2^(kmax+1)).  Truncate both under 1e-12.
  int kmin = static_cast<int>(std::floor(std::log2(1e-12 / c)));
  while (1.0 - g_function(kmin - 1, c) >= 1e-12) --kmin;
  while (kmin < 1024 && 1.0 - g_function(kmin, c) < 1e-12) ++kmin;
  int kmax = kmin;
  while (g_function(kmax, c) >= 1e-12) ++kmax;

  dist.kmin = kmin;
  dist.left_tail = 1.0 - g_function(kmin - 1, c);
  dist.right_tail = g_function(kmax, c);
  double prev = g_function(kmin - 1, c);
  for (int k = kmin; k <= kmax; ++k) {
    const double g = g_function(k, c);
    dist.probabilities.push_back(prev - g);
    prev = g;
  }
  return dist;
}

double finite_accept_prob(unsigned t, std::uint64_t n_clauses, UniverseKind kind) {
  const double p = static_cast<double>(t) / universe_size_real(t, kind);
  // log1p keeps precision when p drops below 1 ulp of 1.0
  return std::exp(static_cast<double>(n_clauses) * std::log1p(-p));
}

double concentration_lower_bound(std::uint64_t n, std::uint64_t t, std::uint64_t big_n) {
  if (t < 1 || t > n || big_n < 1) {
    throw std::invalid_argument("concentration_lower_bound: need 1 <= t <= n and N_n >= 1");
  }
  const double steps = static_cast<double>(n - t);
  return static_cast<double>(big_n) -
         steps * (1.0 + 2.0 * static_cast<double>(big_n - 1) / static_cast<double>(t));
}

}  // namespace hornphase
