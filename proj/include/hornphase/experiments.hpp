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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hornphase/generator.hpp"
#include "hornphase/horn.hpp"
#include "hornphase/solver.hpp"

namespace hornphase {

// Seeded Monte Carlo sweep over (n, rate) cells.  Rates come either as
// densities c (m = round(c * 2^n)) or as explicit clause counts; exactly one
// of the two lists may be nonempty.
struct ExperimentConfig {
  std::vector<unsigned> n_values;
  std::vector<double> c_values;
  std::vector<std::uint64_t> m_values;
  UniverseKind kind = UniverseKind::kStrict;
  std::uint32_t trials = 100;
  std::uint64_t master_seed = 0;
  unsigned workers = 0;  // 0 = HORNPHASE_WORKERS env, else hardware
  std::uint64_t max_expected_literals = std::uint64_t{1} << 28;
  std::string csv_path;   // empty = skip
  std::string json_path;  // empty = skip
  std::string plot_path;  // empty = skip
};

struct TrialRecord {
  unsigned n = 0;
  std::uint64_t m = 0;
  double c = 0;
  double lambda = 0;
  UniverseKind kind = UniverseKind::kStrict;
  std::uint32_t trial = 0;
  std::uint64_t seed = 0;  // fingerprint of the trial's formula stream
  SolveStatus status = SolveStatus::kSatisfiable;
  bool failed = false;     // resource guard tripped; row kept, trial skipped
  std::string error;
  unsigned iterations = 0;
  unsigned final_stage = 0;
  double ms = 0;           // wall time; zeroed in deterministic output mode

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// Aggregation of one (n, m, kind) cell against the analytic predictions.
struct SummaryStats {
  unsigned n = 0;
  std::uint64_t m = 0;
  double c = 0;
  double lambda = 0;
  double lambda_limit = 0;
  UniverseKind kind = UniverseKind::kStrict;
  std::uint64_t trials = 0;
  std::uint64_t failed = 0;
  std::uint64_t sat_count = 0;
  std::uint64_t unsat_count = 0;
  double sat_fraction = 0;
  double ci_halfwidth = 0;  // 1.96 * binomial standard error
  double predicted_sat_limit = 0;
  std::vector<std::uint64_t> iter_hist_sat;    // index = iteration count
  std::vector<std::uint64_t> iter_hist_unsat;
  std::optional<double> tv_sat_rho;            // vs rho(lambda_limit), k <= 40
  std::optional<double> tv_unsat_eta_sqrt;     // vs eta, sqrt c_n variant
  std::optional<double> tv_unsat_eta_linear;   // vs eta, linear c_n variant

  friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

// Runs every (n, rate, trial) cell; trial i draws its formula from stream i
// and its solver randomness from stream i + 2^63, so the record set is a
// pure function of the config regardless of worker count or scheduling.
// Resource-guard failures become failed rows, not aborts.  Records are
// sorted by (n, m, trial).
std::vector<TrialRecord> run_sweep(const ExperimentConfig& config);

// Aggregates the records of a single cell.  Throws std::invalid_argument on
// an empty span or mixed cells.
SummaryStats summarize(std::span<const TrialRecord> records);

// Total variation distance 1/2 * sum |p_i - q_i| over the index-aligned
// union support (the shorter vector is zero-padded).  Both inputs must be
// nonnegative and sum to 1 within 1e-9.
double tv_distance(std::span<const double> p, std::span<const double> q);

// CSV with the exact header
//   n,m,c,lambda,kind,trial,seed,status,iterations,final_stage,ms
// Reals carry 17 significant digits.  Timings are emitted as 0 unless
// include_timings is set, keeping rerun output byte-identical.
std::string to_csv(std::span<const TrialRecord> records, bool include_timings = false);

std::string summary_to_json_text(const SummaryStats& stats);
SummaryStats summary_from_json_text(const std::string& text);
std::string summaries_to_json_text(std::span<const SummaryStats> stats);

// Gnuplot-style whitespace table: c sat_fraction ci_lo ci_hi predicted.
std::string to_plot_data(std::span<const SummaryStats> stats);

// Groups a sorted record list into cells and summarizes each.
std::vector<SummaryStats> summarize_cells(std::span<const TrialRecord> records);

ExperimentConfig config_from_json_text(const std::string& text);

// Worker resolution: HORNPHASE_WORKERS env var wins, then `requested`, then
// hardware concurrency.
unsigned resolve_workers(unsigned requested);

// Index-parallel map; item order of side effects is unspecified but each
// index runs exactly once.
void parallel_for(std::uint64_t count, unsigned workers,
                  const std::function<void(std::uint64_t)>& fn);

}  // namespace hornphase
