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
#include "hornphase/rng.hpp"

namespace hornphase {

// Clause-class profile driving the chain: (HN1, HN2, HP1, HP2, E) at stage t.
struct Profile {
  std::uint64_t hn1 = 0;
  std::uint64_t hn2 = 0;
  std::uint64_t hp1 = 0;
  std::uint64_t hp2 = 0;
  std::uint64_t e = 0;
  unsigned t = 0;

  std::uint64_t total() const { return hn1 + hn2 + hp1 + hp2 + e; }
  std::uint64_t nonempty() const { return hn1 + hn2 + hp1 + hp2; }
  friend bool operator==(const Profile&, const Profile&) = default;
};

// Per-stage reveal probabilities of the strict clause universe:
//   p1 = 1/t                      (unit hits the set variable)
//   p2 = 1/(2^(t-1) - 1)          (positive non-unit collapses to a unit)
//   p3 = 1/2                      (a body merely shrinks)
//   p4 = (t-1)/(2^t - t - 1)      (negative non-unit collapses to a unit)
// p2 and p4 have no 1-variable case; at t = 1 they are only ever used with
// zero trials and are pinned to 0.
struct TransitionProbs {
  double p1 = 0, p2 = 0, p3 = 0, p4 = 0;

  static TransitionProbs at_stage(unsigned t);
};

// One transition of the profile chain.  With hp1 > 0:
//   d1p  ~ B(hp1 - 1, p1)          other positive units satisfied
//   d2p  ~ B(hp2,     p1)          positive non-units satisfied
//   d12p ~ B(hp2 - d2p, p2)        positive non-units collapsing to units
//   de   ~ B(hn1,     p1)          negative units emptied
//   d12n ~ B(hn2,     p4)          negative non-units collapsing to units
// and the five components update accordingly.  With hp1 = 0 one clause
// chosen in proportion to the class counts is removed, then every class is
// thinned binomially with probability 1/t.  The stage decrements by one.
Profile profile_step(const Profile& g, RngStream& rng);

// Chain started from the multinomial class split of m uniform clauses over
// n variables; returns the n+1 profiles at stages n, n-1, ..., 0.
std::vector<Profile> profile_trajectory(unsigned n, std::uint64_t m, UniverseKind kind,
                                        RngStream& rng);

// Simplified clause-count chain U: U_n = big_n and
// U_{t-1} = U_t - 1 - B(U_t - 1, 1/t), truncated at zero.  Returns the
// steps+1 values at stages n, n-1, ..., n-steps.
std::vector<std::uint64_t> simple_chain_run(std::uint64_t n, std::uint64_t big_n, unsigned steps,
                                            RngStream& rng);

// Fraction of seeded simple-chain runs that stay inside the concentration
// interval [y, N_n] at every visited stage, with the lower end y evaluated
// once at the window endpoint t = n - steps (run r uses stream r).
double concentration_check(std::uint64_t n, std::uint64_t big_n, unsigned steps, unsigned runs,
                           std::uint64_t master_seed);

// Empirical stochastic-domination comparison between PUR's clause count and
// the third variant's nonempty clause count, both conditioned on surviving
// to the stage (positive unit present throughout, no empty clause made).
struct DominationStage {
  unsigned t = 0;
  std::uint64_t samples_pur = 0;
  std::uint64_t samples_pur3 = 0;
  bool included = false;    // both sides reached the sample floor
  double max_diff = 0;      // max over a of CCDF_pur3(a) - CCDF_pur(a)
  std::vector<std::uint64_t> values;  // union support, ascending
  std::vector<double> ccdf_pur;
  std::vector<double> ccdf_pur3;
};

struct DominationReport {
  double max_violation = 0;        // over included stages; domination predicts <= 0
  std::uint64_t min_samples = 0;   // inclusion floor used
  std::vector<DominationStage> stages;  // t = n down to 1
};

// Runs `runs` independent instrumented PUR and PUR3 trials on fresh random
// formulas (four streams per run) and tabulates per-stage CCDFs.  Stages
// where either side has fewer than min_samples conditioned survivors are
// tabulated but excluded from max_violation, since the estimator noise at
// such depths exceeds any meaningful threshold.
DominationReport domination_check(unsigned n, std::uint64_t m, UniverseKind kind, unsigned runs,
                                  std::uint64_t master_seed, std::uint64_t min_samples = 1000);

}  // namespace hornphase
