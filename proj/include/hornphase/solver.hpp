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
#include <optional>
#include <vector>

#include "hornphase/generator.hpp"
#include "hornphase/horn.hpp"
#include "hornphase/rng.hpp"

namespace hornphase {

enum class SolveStatus { kSatisfiable, kUnsatisfiable };

// What a stage did: PUR accepts/rejects/survives; the instrumented variants
// take the no-unit elimination branch instead of accepting.
enum class StageEvent { kAccept, kReject, kSurvive, kNoUnitBranch };

// Live clause-class census at a stage.
struct StageCounts {
  std::uint64_t hp1 = 0;  // positive unit
  std::uint64_t hp2 = 0;  // positive non-unit
  std::uint64_t hn1 = 0;  // negative unit
  std::uint64_t hn2 = 0;  // negative non-unit
  std::uint64_t e = 0;    // empty (retained by the instrumented variants)

  std::uint64_t total() const { return hp1 + hp2 + hn1 + hn2 + e; }
  std::uint64_t nonempty() const { return hp1 + hp2 + hn1 + hn2; }
  friend bool operator==(const StageCounts&, const StageCounts&) = default;
};

// Snapshot taken at the top of each stage (t = variables still unassigned),
// before the stage acts, plus the action the stage then took.  In a full
// n+1-record trace the stage-0 record is terminal: no positive unit can
// remain, so it carries the no-unit event and no chosen variable.
struct StageRecord {
  unsigned stage = 0;
  StageCounts counts;
  StageEvent event = StageEvent::kAccept;
  Var chosen_var = 0;  // 0 when the stage chose no variable

  friend bool operator==(const StageRecord&, const StageRecord&) = default;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::kSatisfiable;
  unsigned iterations = 0;   // variables assigned true before termination
  unsigned final_stage = 0;  // stage at which the run stopped; iterations = n - final_stage
  std::optional<Assignment> model;                 // present iff satisfiable
  std::optional<std::vector<StageRecord>> trace;   // present iff requested
};

// Randomized positive unit resolution.  Each stage: with no positive unit
// left, accept (variables set so far true, everything else false); otherwise
// pick uniformly among positive-unit clause occurrences, reject if the
// complementary negative unit is present, else set the variable true and
// simplify.  Complete for Horn satisfiability; runs in O(total literal
// occurrences + m).
SolveOutcome pur_solve(const HornFormula& formula, RngStream& rng, bool want_trace = false);

// Deterministic forward-chaining reference (counter-based unit propagation).
// O(total literals); on SAT the model is the forced-true set, which is the
// minimal model.
SolveOutcome unit_prop_solve(const HornFormula& formula);

// Exhaustive oracle for n <= 24: scans assignments by true-set cardinality
// then value, so the first satisfying assignment found is pointwise minimal.
SolveOutcome brute_force_solve(const HornFormula& formula);

// Instrumented no-halt variant: never accepts or rejects.  Without a
// positive unit it removes one uniformly chosen clause and then each
// remaining clause independently with probability 1/t; with one it performs
// PUR's assignment step but keeps clauses that become empty (counted in E).
// Runs all n stages and returns the full n+1-record profile trace.
std::vector<StageRecord> pur2_run(const HornFormula& formula, RngStream& rng);

// As pur2_run, but a stage with a positive unit first deletes every negative
// non-unit clause independently with probability 1/t before assigning.
std::vector<StageRecord> pur3_run(const HornFormula& formula, RngStream& rng);

// Samples Omega(n, m) from formula_rng and runs PUR with solver_rng without
// materializing a HornFormula; identical draws and outcome to
// pur_solve(sample_formula(n, m, kind, formula_rng), solver_rng).
SolveOutcome sample_and_solve(unsigned n, std::uint64_t m, UniverseKind kind,
                              RngStream& formula_rng, RngStream& solver_rng,
                              bool want_trace = false, const SampleLimits& limits = {});

namespace detail {

// Occurrence-list engine, selected automatically for n > 64; exposed here so
// tests can check it against the bitmask engine on small instances.
SolveOutcome pur_solve_occ(const HornFormula& formula, RngStream& rng, bool want_trace);
std::vector<StageRecord> pur2_run_occ(const HornFormula& formula, RngStream& rng);
std::vector<StageRecord> pur3_run_occ(const HornFormula& formula, RngStream& rng);

}  // namespace detail

const char* to_string(SolveStatus status);
const char* to_string(StageEvent event);

}  // namespace hornphase
