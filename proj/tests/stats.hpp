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

// Test-side statistics helpers: chi-square goodness of fit via the
// regularized incomplete gamma function.  Kept out of the library on
// purpose; only the test suites consume significance levels.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hp_test {

// Regularized upper incomplete gamma Q(a, x): series for small x, modified
// Lentz continued fraction otherwise.
inline double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  const double log_prefactor = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 10000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(log_prefactor);
  }
  double b = x + 1.0 - a;
  double c = 1.0 / 1e-300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(log_prefactor) * h;
}

inline double chi_square_pvalue(double stat, int df) {
  return gamma_q(0.5 * df, 0.5 * stat);
}

struct ChiSquareResult {
  double stat = 0;
  int df = 0;
  double pvalue = 1;
};

// Goodness of fit of observed counts against given cell probabilities.
inline ChiSquareResult chi_square_test(const std::vector<std::uint64_t>& counts,
                                       const std::vector<double>& probs) {
  if (counts.size() != probs.size() || counts.size() < 2) {
    throw std::invalid_argument("chi_square_test: need matching cells");
  }
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  ChiSquareResult r;
  r.df = static_cast<int>(counts.size()) - 1;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = probs[i] * static_cast<double>(total);
    if (!(expected > 0.0)) throw std::invalid_argument("chi_square_test: zero expected cell");
    const double diff = static_cast<double>(counts[i]) - expected;
    r.stat += diff * diff / expected;
  }
  r.pvalue = chi_square_pvalue(r.stat, r.df);
  return r;
}

inline ChiSquareResult chi_square_uniform(const std::vector<std::uint64_t>& counts) {
  return chi_square_test(counts,
                         std::vector<double>(counts.size(), 1.0 / static_cast<double>(counts.size())));
}

}  // namespace hp_test
