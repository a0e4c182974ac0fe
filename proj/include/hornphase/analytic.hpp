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

#pragma once

#include <cstdint>
#include <vector>

#include "hornphase/horn.hpp"

namespace hornphase {

// F(x) = prod_{k>=0} (1 - x^(2^k)) for x in [0, 1), truncated once the tail
// bound x^(2^k) / (1 - x) drops below tol; absolute error < tol.  F is
// strictly decreasing on (0,1) with F(0) = 1 and F(1-) = 0.
double f_product(double x, double tol = 1e-12);

// Taylor expansion of F: sum_{i<num_terms} (-1)^popcount(i) x^i.  Agrees
// with f_product within x^num_terms / (1 - x) plus the product tolerance.
double f_series(double x, unsigned num_terms);

// Limit probability that a random formula at rate lambda is satisfiable:
// 1 - F(e^-lambda).
double sat_prob_limit(double lambda);

// Partial product Pi_k = prod_{i=0}^{k-1} (1 - e^(-2^i * lambda)); the empty
// product (k = 0) is 1 and Pi_k -> F(e^-lambda).
double partial_pi(double lambda, unsigned k);

// Limit law of the iteration count on satisfiable formulas:
//   rho_k = e^(-2^k lambda) * Pi_k / (1 - F(e^-lambda)).
// The product index runs over i = 0..k-1, which makes the telescoping
// identity sum_k e^(-2^k lambda) Pi_k = 1 - F(e^-lambda) exact, so the rho_k
// sum to one.
struct RhoDistribution {
  double lambda = 0;
  std::vector<double> probabilities;  // rho_0 .. rho_kmax
  double tail_mass = 0;               // 1 - sum of the above

  double prob(unsigned k) const { return k < probabilities.size() ? probabilities[k] : 0.0; }
};

RhoDistribution rho_distribution(double lambda, unsigned kmax);

// G(k, c) = exp(-c * sum_{j<=k} 2^j) = exp(-c * 2^(k+1)).
double g_function(int k, double c);

enum class WobbleVariant { kSqrt, kLinear };

// Rescaled rate driving the unsatisfiable-side iteration law:
// c / 2^frac(log2(sqrt(n))) for the sqrt variant (as published) or
// c / 2^frac(log2(n)) for the linear alternative.
double wobble_c_n(double c_like, unsigned n, WobbleVariant variant);

// Limit law of (iterations - floor(log2 n)) on unsatisfiable formulas:
// eta_k = G(k-1, c_n) - G(k, c_n), supported on the integers and summing to
// one by telescoping.  The stored support is truncated where the remaining
// tail mass falls below 1e-12; both truncated tails are reported.
struct EtaDistribution {
  double c_n = 0;
  int kmin = 0;
  std::vector<double> probabilities;  // eta_{kmin} .. eta_{kmin+size-1}
  double left_tail = 0;               // mass at k < kmin
  double right_tail = 0;              // mass at k > kmax

  int kmax() const { return kmin + static_cast<int>(probabilities.size()) - 1; }
  double prob(int k) const {
    const long idx = static_cast<long>(k) - kmin;
    if (idx < 0 || idx >= static_cast<long>(probabilities.size())) return 0.0;
    return probabilities[static_cast<std::size_t>(idx)];
  }
};

EtaDistribution wobble_law(double c_like, unsigned n, WobbleVariant variant);

// Exact probability that a uniform formula of n_clauses clauses over t
// variables contains no positive unit clause: (1 - t/|U(t,kind)|)^n_clauses.
double finite_accept_prob(unsigned t, std::uint64_t n_clauses, UniverseKind kind);

// Lower end y_t of the clause-count concentration interval
//   y_t = N_n - (n - t) * (1 + 2 (N_n - 1) / t)  <=  N_j  <=  N_n.
double concentration_lower_bound(std::uint64_t n, std::uint64_t t, std::uint64_t big_n);

}  // namespace hornphase
