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

#include "hornphase/generator.hpp"

#include <bit>
#include <cmath>

namespace hornphase {

Rate effective_rate(unsigned n, std::uint64_t m, UniverseKind kind) {
  if (n == 0) throw std::invalid_argument("effective_rate: n must be >= 1");
  const double kappa = kind == UniverseKind::kStrict ? 0.5 : 1.0;
  Rate r;
  r.lambda = static_cast<double>(m) * n / universe_size_real(n, kind);
  r.lambda_limit = static_cast<double>(m) * std::exp2(-static_cast<double>(n)) / kappa;
  return r;
}

double clause_density(unsigned n, std::uint64_t m) {
  return static_cast<double>(m) * std::exp2(-static_cast<double>(n));
}

MaskClause sample_clause_mask(unsigned t, UniverseKind kind, RngStream& rng) {
  if (t == 0) throw std::invalid_argument("sample_clause: t must be >= 1");
  if (t > 64) throw std::invalid_argument("sample_clause_mask: t must be <= 64");
  const std::uint64_t body_mask = t == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << t) - 1;
  for (;;) {
    const Var head = static_cast<Var>(rng.next_below(t + 1));
    const std::uint64_t body = rng.next() & body_mask;
    if (head == 0 && body == 0) continue;
    if (kind == UniverseKind::kStrict && head != 0 && ((body >> (head - 1)) & 1) != 0) continue;
    return {head, body};
  }
}

namespace {

// Shared word-at-a-time body draw so the consumed stream is identical for
// every t; variable i maps to bit (i-1)%64 of word (i-1)/64.
void sample_clause_wide(unsigned t, UniverseKind kind, RngStream& rng, Var& head,
                        std::vector<std::uint64_t>& words) {
  const unsigned nwords = (t + 63) / 64;
  for (;;) {
    head = static_cast<Var>(rng.next_below(std::uint64_t{t} + 1));
    words.clear();
    bool any = false;
    for (unsigned w = 0; w < nwords; ++w) {
      const unsigned take = std::min(64u, t - 64 * w);
      std::uint64_t word = rng.next();
      if (take < 64) word &= (std::uint64_t{1} << take) - 1;
      words.push_back(word);
      any |= word != 0;
    }
    if (head == 0 && !any) continue;
    if (kind == UniverseKind::kStrict && head != 0 &&
        ((words[(head - 1) / 64] >> ((head - 1) % 64)) & 1) != 0) {
      continue;
    }
    return;
  }
}

}  // namespace

HornClause sample_clause(unsigned t, UniverseKind kind, RngStream& rng) {
  if (t == 0) throw std::invalid_argument("sample_clause: t must be >= 1");
  HornClause clause;
  if (t <= 64) {
    const MaskClause mc = sample_clause_mask(t, kind, rng);
    clause.head = mc.head;
    std::uint64_t bits = mc.body;
    while (bits != 0) {
      clause.body.push_back(static_cast<Var>(std::countr_zero(bits)) + 1);
      bits &= bits - 1;
    }
    return clause;
  }
  std::vector<std::uint64_t> words;
  sample_clause_wide(t, kind, rng, clause.head, words);
  for (unsigned w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits != 0) {
      clause.body.push_back(static_cast<Var>(std::countr_zero(bits)) + 1 + 64 * w);
      bits &= bits - 1;
    }
  }
  return clause;
}

std::uint64_t expected_literals(unsigned n, std::uint64_t m) {
  return m * (std::uint64_t{n} / 2 + 1);
}

HornFormula sample_formula(unsigned n, std::uint64_t m, UniverseKind kind, RngStream& rng,
                           const SampleLimits& limits) {
  if (n == 0) throw std::invalid_argument("sample_formula: n must be >= 1");
  if (expected_literals(n, m) > limits.max_expected_literals) {
    throw ResourceLimitError("sample_formula: expected literal footprint " +
                             std::to_string(expected_literals(n, m)) + " exceeds limit " +
                             std::to_string(limits.max_expected_literals));
  }
  HornFormula formula(n);
  formula.reserve(m, expected_literals(n, m));
  if (n <= 64) {
    Var scratch[64];
    for (std::uint64_t i = 0; i < m; ++i) {
      const MaskClause mc = sample_clause_mask(n, kind, rng);
      unsigned len = 0;
      std::uint64_t bits = mc.body;
      while (bits != 0) {
        scratch[len++] = static_cast<Var>(std::countr_zero(bits)) + 1;
        bits &= bits - 1;
      }
      formula.add_clause(mc.head, std::span<const Var>(scratch, len));
    }
    return formula;
  }
  for (std::uint64_t i = 0; i < m; ++i) {
    formula.add_clause(sample_clause(n, kind, rng));
  }
  return formula;
}

std::uint64_t stream_fingerprint(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::uint64_t sm = master_seed ^ (stream_index * kGoldenGamma);
  return splitmix64_next(sm);
}

}  // namespace hornphase
