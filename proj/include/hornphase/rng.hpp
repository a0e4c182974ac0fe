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

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>

namespace hornphase {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// One step of splitmix64 (Steele/Lea/Flood mixer, Vigna's constants).
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += kGoldenGamma;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-style seedable stream: the generated sequence is a pure function
// of (master_seed, stream_index), bit-identical on every platform.  Distinct
// stream indices give streams that are independent for practical purposes,
// so parallel trials can each own stream_index = trial without coordination.
//
// Seeding: run splitmix64 from master_seed XOR stream_index * golden gamma,
// take four outputs as the xoshiro256** state.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t sm = master_seed ^ (stream_index * kGoldenGamma);
    for (auto& word : s_) word = splitmix64_next(sm);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = kGoldenGamma;
  }

  // xoshiro256** by Blackman & Vigna.
  std::uint64_t next() {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

  // Uniform integer in [0, bound).  Mask rejection, so the result is exactly
  // uniform and the draw sequence is reproducible everywhere.  bound <= 1
  // consumes nothing.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound - 1);
    for (;;) {
      const std::uint64_t v = next() & mask;
      if (v < bound) return v;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  std::array<std::uint64_t, 4> s_;
};

// Exact Binomial(trials, p) sample.
//
// Small-mean case uses CDF inversion from k = 0 (cost O(mean)); the walk is
// valid while pmf(0) stays representable, i.e. -trials*log1p(-p) < ~700.
// Outside that regime it falls back to summing Bernoulli draws, which is slow
// for huge trial counts but exact; none of the chain simulations here leave
// the inversion regime.  Degenerate arguments consume no randomness.
inline std::uint64_t binomial_draw(std::uint64_t trials, double p, RngStream& rng) {
  if (trials == 0 || !(p > 0.0)) return 0;
  if (p >= 1.0) return trials;
  const double log_q = std::log1p(-p);
  if (static_cast<double>(trials) * -log_q < 700.0) {
    const double odds = p / (1.0 - p);
    double pmf = std::exp(static_cast<double>(trials) * log_q);
    double cdf = pmf;
    const double u = rng.next_double();
    std::uint64_t k = 0;
    while (u >= cdf && k < trials) {
      ++k;
      pmf *= odds * static_cast<double>(trials - k + 1) / static_cast<double>(k);
      cdf += pmf;
      if (pmf == 0.0) break;  // numeric tail exhausted
    }
    return k;
  }
  std::uint64_t k = 0;
  for (std::uint64_t i = 0; i < trials; ++i) k += rng.bernoulli(p) ? 1 : 0;
  return k;
}

}  // namespace hornphase
