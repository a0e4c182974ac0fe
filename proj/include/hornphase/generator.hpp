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
#include <stdexcept>

#include "hornphase/horn.hpp"
#include "hornphase/rng.hpp"

namespace hornphase {

// Effective positive-unit arrival rate of the random model Omega(n, m):
// the single parameter every analytic prediction consumes.
//
//   lambda       = m * n / |U(n, kind)|      (expected positive units)
//   lambda_limit = m / (kappa * 2^n),  kappa = 1/2 (strict) or 1 (padded)
//
// For m = c * 2^n the limit is 2c under the strict universe and c under the
// padded one; predictions always take lambda_limit, which keeps the choice
// of universe transparent.
struct Rate {
  double lambda = 0;
  double lambda_limit = 0;
};

Rate effective_rate(unsigned n, std::uint64_t m, UniverseKind kind);

// The clause density c = m / 2^n, reported alongside lambda in outputs.
double clause_density(unsigned n, std::uint64_t m);

// Compact clause for t <= 64: bit i-1 of body set iff variable i is negated.
struct MaskClause {
  Var head = 0;
  std::uint64_t body = 0;
};

// Uniform draw over the clause universe on t variables.  Normative method:
// draw the head uniformly over {absent, x1..xt}, draw the body by one fair
// coin per variable, redraw on (no head, empty body), and under Strict also
// when the head lands in the body.  Expected redraws stay below 2.1.
MaskClause sample_clause_mask(unsigned t, UniverseKind kind, RngStream& rng);  // t <= 64
HornClause sample_clause(unsigned t, UniverseKind kind, RngStream& rng);       // any t >= 1

struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SampleLimits {
  // Guard on m * (n/2 + 1), the expected literal footprint of the formula.
  std::uint64_t max_expected_literals = std::uint64_t{1} << 28;
};

// m independent draws of sample_clause; clause order is draw order and the
// result is a pure function of the stream identity.  Throws
// ResourceLimitError when the expected literal footprint exceeds the limit.
HornFormula sample_formula(unsigned n, std::uint64_t m, UniverseKind kind, RngStream& rng,
                           const SampleLimits& limits = {});

// Expected body-literal footprint used by the resource guard.
std::uint64_t expected_literals(unsigned n, std::uint64_t m);

// First splitmix output of a stream; recorded in trial logs so a single row
// identifies its random source.
std::uint64_t stream_fingerprint(std::uint64_t master_seed, std::uint64_t stream_index);

}  // namespace hornphase
