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

#include "hornphase/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hornphase/analytic.hpp"

namespace hornphase {

namespace {

constexpr std::uint64_t kSolverStreamOffset = std::uint64_t{1} << 63;

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

unsigned floor_log2(unsigned n) { return static_cast<unsigned>(std::bit_width(n)) - 1; }

}  // namespace

unsigned resolve_workers(unsigned requested) {
  if (const char* env = std::getenv("HORNPHASE_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  if (requested >= 1) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? hw : 1;
}

void parallel_for(std::uint64_t count, unsigned workers,
                  const std::function<void(std::uint64_t)>& fn) {
  if (count == 0) return;
  if (workers <= 1 || count == 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  const unsigned nthreads = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned w = 0; w < nthreads; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

std::vector<TrialRecord> run_sweep(const ExperimentConfig& config) {
  if (config.n_values.empty()) throw std::invalid_argument("run_sweep: no n values");
  if (config.trials < 1) throw std::invalid_argument("run_sweep: need at least one trial");
  if (config.c_values.empty() == config.m_values.empty()) {
    throw std::invalid_argument("run_sweep: give exactly one of c values or m values");
  }

  struct Cell {
    unsigned n;
    std::uint64_t m;
    double c;
  };
  std::vector<Cell> cells;
  for (unsigned n : config.n_values) {
    if (n == 0) throw std::invalid_argument("run_sweep: n must be >= 1");
    if (!config.c_values.empty()) {
      for (double c : config.c_values) {
        const double md = c * std::exp2(static_cast<double>(n));
        if (!(md >= 0) || md > 4.6e18) throw std::invalid_argument("run_sweep: c out of range");
        cells.push_back({n, static_cast<std::uint64_t>(std::llround(md)), c});
      }
    } else {
      for (std::uint64_t m : config.m_values) cells.push_back({n, m, clause_density(n, m)});
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return a.n != b.n ? a.n < b.n : a.m < b.m;
  });

  std::vector<TrialRecord> records(cells.size() * config.trials);
  const unsigned workers = resolve_workers(config.workers);
  const SampleLimits limits{config.max_expected_literals};

  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell cell = cells[ci];
    const Rate rate = effective_rate(cell.n, cell.m, config.kind);
    parallel_for(config.trials, workers, [&, ci, cell, rate](std::uint64_t trial) {
      TrialRecord rec;
      rec.n = cell.n;
      rec.m = cell.m;
      rec.c = cell.c;
      rec.lambda = rate.lambda;
      rec.kind = config.kind;
      rec.trial = static_cast<std::uint32_t>(trial);
      rec.seed = stream_fingerprint(config.master_seed, trial);
      try {
        RngStream formula_rng(config.master_seed, trial);
        RngStream solver_rng(config.master_seed, trial + kSolverStreamOffset);
        const auto start = std::chrono::steady_clock::now();
        const SolveOutcome out =
            sample_and_solve(cell.n, cell.m, config.kind, formula_rng, solver_rng, false, limits);
        rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                           start)
                     .count();
        rec.status = out.status;
        rec.iterations = out.iterations;
        rec.final_stage = out.final_stage;
      } catch (const ResourceLimitError& ex) {
        rec.failed = true;
        rec.error = ex.what();
      }
      records[ci * config.trials + trial] = std::move(rec);
    });
  }
  // Cells were laid out sorted and trials indexed, so records are already
  // ordered by (n, m, trial).
  return records;
}

SummaryStats summarize(std::span<const TrialRecord> records) {
  if (records.empty()) throw std::invalid_argument("summarize: empty cell");
  SummaryStats s;
  s.n = records.front().n;
  s.m = records.front().m;
  s.c = records.front().c;
  s.lambda = records.front().lambda;
  s.kind = records.front().kind;
  const Rate rate = effective_rate(s.n, s.m, s.kind);
  s.lambda_limit = rate.lambda_limit;
  s.iter_hist_sat.assign(s.n + 1, 0);
  s.iter_hist_unsat.assign(s.n + 1, 0);
  for (const TrialRecord& r : records) {
    if (r.n != s.n || r.m != s.m || r.kind != s.kind) {
      throw std::invalid_argument("summarize: records span more than one cell");
    }
    ++s.trials;
    if (r.failed) {
      ++s.failed;
      continue;
    }
    if (r.status == SolveStatus::kSatisfiable) {
      ++s.sat_count;
      ++s.iter_hist_sat[r.iterations];
    } else {
      ++s.unsat_count;
      ++s.iter_hist_unsat[r.iterations];
    }
  }
  const std::uint64_t done = s.sat_count + s.unsat_count;
  if (done == 0) throw std::invalid_argument("summarize: every trial failed");
  s.sat_fraction = static_cast<double>(s.sat_count) / static_cast<double>(done);
  s.ci_halfwidth =
      1.96 * std::sqrt(s.sat_fraction * (1.0 - s.sat_fraction) / static_cast<double>(done));
  // zero-rate cells (m = 0) are trivially satisfiable and have no limit law
  if (s.lambda_limit <= 0.0) {
    s.predicted_sat_limit = 1.0;
    return s;
  }
  s.predicted_sat_limit = sat_prob_limit(s.lambda_limit);

  if (s.sat_count > 0) {
    // Empirical iteration law vs rho(lambda_limit) over k = 0..40 plus a
    // shared tail bin.
    constexpr unsigned kMax = 40;
    const RhoDistribution rho = rho_distribution(s.lambda_limit, kMax);
    std::vector<double> p(kMax + 2, 0.0), q(kMax + 2, 0.0);
    for (unsigned k = 0; k <= s.n; ++k) {
      const double mass =
          static_cast<double>(s.iter_hist_sat[k]) / static_cast<double>(s.sat_count);
      p[std::min(k, kMax + 1)] += mass;
    }
    for (unsigned k = 0; k <= kMax; ++k) q[k] = rho.prob(k);
    q[kMax + 1] = rho.tail_mass;
    s.tv_sat_rho = tv_distance(p, q);
  }
  if (s.unsat_count > 0) {
    const int shift = static_cast<int>(floor_log2(s.n));
    for (const WobbleVariant variant : {WobbleVariant::kSqrt, WobbleVariant::kLinear}) {
      const EtaDistribution eta = wobble_law(s.lambda_limit, s.n, variant);
      const std::size_t span = eta.probabilities.size();
      std::vector<double> p(span + 2, 0.0), q(span + 2, 0.0);
      q[0] = eta.left_tail;
      for (std::size_t i = 0; i < span; ++i) q[i + 1] = eta.probabilities[i];
      q[span + 1] = eta.right_tail;
      for (unsigned it = 0; it <= s.n; ++it) {
        if (s.iter_hist_unsat[it] == 0) continue;
        const double mass =
            static_cast<double>(s.iter_hist_unsat[it]) / static_cast<double>(s.unsat_count);
        const long k = static_cast<long>(it) - shift;
        std::size_t bin;
        if (k < eta.kmin) {
          bin = 0;
        } else if (k > eta.kmax()) {
          bin = span + 1;
        } else {
          bin = static_cast<std::size_t>(k - eta.kmin) + 1;
        }
        p[bin] += mass;
      }
      const double tv = tv_distance(p, q);
      if (variant == WobbleVariant::kSqrt) {
        s.tv_unsat_eta_sqrt = tv;
      } else {
        s.tv_unsat_eta_linear = tv;
      }
    }
  }
  return s;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  double sum_p = 0, sum_q = 0;
  for (double v : p) {
    if (v < 0) throw std::invalid_argument("tv_distance: negative mass");
    sum_p += v;
  }
  for (double v : q) {
    if (v < 0) throw std::invalid_argument("tv_distance: negative mass");
    sum_q += v;
  }
  if (std::abs(sum_p - 1.0) > 1e-9 || std::abs(sum_q - 1.0) > 1e-9) {
    throw std::invalid_argument("tv_distance: distributions must sum to 1 within 1e-9");
  }
  const std::size_t len = std::max(p.size(), q.size());
  double acc = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const double pi = i < p.size() ? p[i] : 0.0;
    const double qi = i < q.size() ? q[i] : 0.0;
    acc += std::abs(pi - qi);
  }
  return 0.5 * acc;
}

std::string to_csv(std::span<const TrialRecord> records, bool include_timings) {
  std::string out = "n,m,c,lambda,kind,trial,seed,status,iterations,final_stage,ms\n";
  for (const TrialRecord& r : records) {
    out += std::to_string(r.n) + ',' + std::to_string(r.m) + ',' + fmt_real(r.c) + ',' +
           fmt_real(r.lambda) + ',' + to_string(r.kind) + ',' + std::to_string(r.trial) + ',' +
           std::to_string(r.seed) + ',';
    out += r.failed ? "ERROR" : to_string(r.status);
    out += ',' + std::to_string(r.iterations) + ',' + std::to_string(r.final_stage) + ',' +
           fmt_real(include_timings ? r.ms : 0.0) + '\n';
  }
  return out;
}

namespace {

nlohmann::json summary_to_json(const SummaryStats& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["m"] = s.m;
  j["c"] = s.c;
  j["lambda"] = s.lambda;
  j["lambda_limit"] = s.lambda_limit;
  j["kind"] = to_string(s.kind);
  j["trials"] = s.trials;
  j["failed"] = s.failed;
  j["sat_count"] = s.sat_count;
  j["unsat_count"] = s.unsat_count;
  j["sat_fraction"] = s.sat_fraction;
  j["ci_halfwidth"] = s.ci_halfwidth;
  j["predicted_sat_limit"] = s.predicted_sat_limit;
  j["iter_hist_sat"] = s.iter_hist_sat;
  j["iter_hist_unsat"] = s.iter_hist_unsat;
  const auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  j["tv_sat_rho"] = opt(s.tv_sat_rho);
  j["tv_unsat_eta_sqrt"] = opt(s.tv_unsat_eta_sqrt);
  j["tv_unsat_eta_linear"] = opt(s.tv_unsat_eta_linear);
  return j;
}

SummaryStats summary_from_json(const nlohmann::json& j) {
  SummaryStats s;
  s.n = j.at("n").get<unsigned>();
  s.m = j.at("m").get<std::uint64_t>();
  s.c = j.at("c").get<double>();
  s.lambda = j.at("lambda").get<double>();
  s.lambda_limit = j.at("lambda_limit").get<double>();
  s.kind = j.at("kind").get<std::string>() == "padded" ? UniverseKind::kPadded
                                                       : UniverseKind::kStrict;
  s.trials = j.at("trials").get<std::uint64_t>();
  s.failed = j.at("failed").get<std::uint64_t>();
  s.sat_count = j.at("sat_count").get<std::uint64_t>();
  s.unsat_count = j.at("unsat_count").get<std::uint64_t>();
  s.sat_fraction = j.at("sat_fraction").get<double>();
  s.ci_halfwidth = j.at("ci_halfwidth").get<double>();
  s.predicted_sat_limit = j.at("predicted_sat_limit").get<double>();
  s.iter_hist_sat = j.at("iter_hist_sat").get<std::vector<std::uint64_t>>();
  s.iter_hist_unsat = j.at("iter_hist_unsat").get<std::vector<std::uint64_t>>();
  const auto opt = [&](const char* key) -> std::optional<double> {
    if (j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
  };
  s.tv_sat_rho = opt("tv_sat_rho");
  s.tv_unsat_eta_sqrt = opt("tv_unsat_eta_sqrt");
  s.tv_unsat_eta_linear = opt("tv_unsat_eta_linear");
  return s;
}

}  // namespace

std::string summary_to_json_text(const SummaryStats& stats) {
  return summary_to_json(stats).dump(2) + "\n";
}

SummaryStats summary_from_json_text(const std::string& text) {
  return summary_from_json(nlohmann::json::parse(text));
}

std::string summaries_to_json_text(std::span<const SummaryStats> stats) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SummaryStats& s : stats) arr.push_back(summary_to_json(s));
  return arr.dump(2) + "\n";
}

std::string to_plot_data(std::span<const SummaryStats> stats) {
  std::string out = "# c sat_fraction ci_lo ci_hi predicted\n";
  unsigned last_n = 0;
  bool first = true;
  for (const SummaryStats& s : stats) {
    if (first || s.n != last_n) {
      out += "# n=" + std::to_string(s.n) + " kind=" + to_string(s.kind) + "\n";
      last_n = s.n;
      first = false;
    }
    out += fmt_real(s.c) + ' ' + fmt_real(s.sat_fraction) + ' ' +
           fmt_real(std::max(0.0, s.sat_fraction - s.ci_halfwidth)) + ' ' +
           fmt_real(std::min(1.0, s.sat_fraction + s.ci_halfwidth)) + ' ' +
           fmt_real(s.predicted_sat_limit) + '\n';
  }
  return out;
}

std::vector<SummaryStats> summarize_cells(std::span<const TrialRecord> records) {
  std::vector<SummaryStats> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= records.size(); ++i) {
    if (i == records.size() || records[i].n != records[begin].n ||
        records[i].m != records[begin].m) {
      out.push_back(summarize(records.subspan(begin, i - begin)));
      begin = i;
    }
  }
  return out;
}

ExperimentConfig config_from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  ExperimentConfig cfg;
  cfg.n_values = j.at("n_values").get<std::vector<unsigned>>();
  if (j.contains("c_values")) cfg.c_values = j.at("c_values").get<std::vector<double>>();
  if (j.contains("m_values")) cfg.m_values = j.at("m_values").get<std::vector<std::uint64_t>>();
  if (j.contains("kind")) {
    cfg.kind = j.at("kind").get<std::string>() == "padded" ? UniverseKind::kPadded
                                                           : UniverseKind::kStrict;
  }
  if (j.contains("trials")) cfg.trials = j.at("trials").get<std::uint32_t>();
  if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  if (j.contains("workers")) cfg.workers = j.at("workers").get<unsigned>();
  if (j.contains("max_expected_literals")) {
    cfg.max_expected_literals = j.at("max_expected_literals").get<std::uint64_t>();
  }
  if (j.contains("outputs")) {
    const auto& o = j.at("outputs");
    if (o.contains("csv")) cfg.csv_path = o.at("csv").get<std::string>();
    if (o.contains("json")) cfg.json_path = o.at("json").get<std::string>();
    if (o.contains("plot")) cfg.plot_path = o.at("plot").get<std::string>();
  }
  return cfg;
}

}  // namespace hornphase
