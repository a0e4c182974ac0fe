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

// hornphase: random Horn-SAT workbench.
//
//   gen      sample a random Horn formula and emit DIMACS
//   solve    run randomized positive unit resolution on a DIMACS file
//   predict  print the analytic limit laws for a given rate
//   sweep    seeded Monte Carlo experiments vs. the predictions
//   chain    Markov-chain simulations (profile / simple / concentration /
//            domination)
//   verify   cross-check the three solvers on random instances
//
// Exit codes: 0 success, 1 usage error, 2 unreadable or invalid input;
// solve returns 10 for satisfiable and 20 for unsatisfiable.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hornphase/analytic.hpp"
#include "hornphase/experiments.hpp"
#include "hornphase/generator.hpp"
#include "hornphase/horn.hpp"
#include "hornphase/markov.hpp"
#include "hornphase/solver.hpp"

namespace {

using namespace hornphase;

constexpr const char* kVersion = "hornphase 1.0.0";

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::fwrite(data.data(), 1, data.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << data;
}

UniverseKind parse_kind(const std::string& name) {
  if (name == "strict") return UniverseKind::kStrict;
  if (name == "padded") return UniverseKind::kPadded;
  throw CLI::ValidationError("--universe", "must be 'strict' or 'padded'");
}

std::uint64_t clauses_from_density(unsigned n, double c) {
  const double md = c * std::exp2(static_cast<double>(n));
  if (!(md >= 0) || md > 4.6e18) throw std::runtime_error("clause density out of range");
  return static_cast<std::uint64_t>(std::llround(md));
}

// ---- gen --------------------------------------------------------------------

struct GenArgs {
  unsigned n = 10;
  std::optional<std::uint64_t> m;
  std::optional<double> c;
  std::string universe = "strict";
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out;
};

int run_gen(const GenArgs& args) {
  const UniverseKind kind = parse_kind(args.universe);
  if (args.m.has_value() == args.c.has_value()) {
    throw CLI::ValidationError("gen", "give exactly one of -m or --c");
  }
  const std::uint64_t m = args.m ? *args.m : clauses_from_density(args.n, *args.c);
  RngStream rng(args.seed, args.stream);
  const HornFormula f = sample_formula(args.n, m, kind, rng);
  const Rate rate = effective_rate(args.n, m, kind);
  char header[256];
  std::snprintf(header, sizeof header,
                "c hornphase gen n=%u m=%llu universe=%s seed=%llu stream=%llu\n"
                "c lambda=%.17g lambda_limit=%.17g c=%.17g\n",
                args.n, static_cast<unsigned long long>(m), to_string(kind),
                static_cast<unsigned long long>(args.seed),
                static_cast<unsigned long long>(args.stream), rate.lambda, rate.lambda_limit,
                clause_density(args.n, m));
  write_output(args.out, header + write_dimacs(f));
  return 0;
}

// ---- solve ------------------------------------------------------------------

struct SolveArgs {
  std::string file;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  bool trace = false;
  bool padded_tolerant = false;
  bool strict_counts = false;
};

int run_solve(const SolveArgs& args) {
  DimacsOptions opts;
  opts.padded_tolerant = args.padded_tolerant;
  opts.strict_clause_count = args.strict_counts;
  std::string warning;
  const HornFormula f = parse_dimacs(read_input(args.file), opts, &warning);
  if (!warning.empty()) std::fprintf(stderr, "c warning: %s\n", warning.c_str());

  RngStream rng(args.seed, args.stream);
  const SolveOutcome out = pur_solve(f, rng, args.trace);
  if (args.trace) {
    for (const StageRecord& r : *out.trace) {
      std::printf(
          "c stage=%u hp1=%llu hp2=%llu hn1=%llu hn2=%llu e=%llu n=%llu event=%s chosen=%u\n",
          r.stage, static_cast<unsigned long long>(r.counts.hp1),
          static_cast<unsigned long long>(r.counts.hp2),
          static_cast<unsigned long long>(r.counts.hn1),
          static_cast<unsigned long long>(r.counts.hn2),
          static_cast<unsigned long long>(r.counts.e),
          static_cast<unsigned long long>(r.counts.total()), to_string(r.event), r.chosen_var);
    }
  }
  std::printf("c iterations %u\nc final-stage %u\n", out.iterations, out.final_stage);
  if (out.status == SolveStatus::kSatisfiable) {
    std::printf("s SATISFIABLE\nv ");
    for (Var v = 1; v <= f.num_vars(); ++v) {
      std::printf("%s%u ", out.model->value(v) ? "" : "-", v);
    }
    std::printf("0\n");
    return 10;
  }
  std::printf("s UNSATISFIABLE\n");
  return 20;
}

// ---- predict ----------------------------------------------------------------

struct PredictArgs {
  double lambda = 1.0;
  std::optional<unsigned> rho_kmax;
  std::optional<unsigned> wobble_n;
  std::string variant = "both";
  bool json = false;
};

int run_predict(const PredictArgs& args) {
  const double x = std::exp(-args.lambda);
  const double f = f_product(x, 1e-12);
  nlohmann::json j;
  j["lambda"] = args.lambda;
  j["x"] = x;
  j["f_product"] = f;
  j["sat_prob_limit"] = 1.0 - f;

  if (args.rho_kmax) {
    const RhoDistribution rho = rho_distribution(args.lambda, *args.rho_kmax);
    j["rho"] = rho.probabilities;
    j["rho_tail_mass"] = rho.tail_mass;
  }
  if (args.wobble_n) {
    for (const auto& [name, variant] :
         {std::pair{"sqrt", WobbleVariant::kSqrt}, std::pair{"linear", WobbleVariant::kLinear}}) {
      if (args.variant != "both" && args.variant != name) continue;
      const EtaDistribution eta = wobble_law(args.lambda, *args.wobble_n, variant);
      nlohmann::json je;
      je["c_n"] = eta.c_n;
      je["kmin"] = eta.kmin;
      je["kmax"] = eta.kmax();
      je["probabilities"] = eta.probabilities;
      j["eta"][name] = je;
    }
  }

  if (args.json) {
    std::printf("%s\n", j.dump(2).c_str());
    return 0;
  }
  std::printf("lambda           %.17g\n", args.lambda);
  std::printf("x=exp(-lambda)   %.17g\n", x);
  std::printf("F(x)             %.17g\n", f);
  std::printf("sat_prob_limit   %.17g\n", 1.0 - f);
  if (args.rho_kmax) {
    const RhoDistribution rho = rho_distribution(args.lambda, *args.rho_kmax);
    for (std::size_t k = 0; k < rho.probabilities.size(); ++k) {
      std::printf("rho[%zu]  %.17g\n", k, rho.probabilities[k]);
    }
    std::printf("rho_tail %.17g\n", rho.tail_mass);
  }
  if (args.wobble_n) {
    for (const auto& [name, variant] :
         {std::pair{"sqrt", WobbleVariant::kSqrt}, std::pair{"linear", WobbleVariant::kLinear}}) {
      if (args.variant != "both" && args.variant != name) continue;
      const EtaDistribution eta = wobble_law(args.lambda, *args.wobble_n, variant);
      std::printf("eta(%s) c_n=%.17g support=[%d,%d]\n", name, eta.c_n, eta.kmin, eta.kmax());
      for (std::size_t i = 0; i < eta.probabilities.size(); ++i) {
        std::printf("eta_%s[%d]  %.17g\n", name, eta.kmin + static_cast<int>(i),
                    eta.probabilities[i]);
      }
    }
  }
  return 0;
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string config;
  ExperimentConfig cfg;
  std::string universe = "strict";
  bool timings = false;
};

int run_sweep_cmd(SweepArgs& args) {
  ExperimentConfig cfg;
  if (!args.config.empty()) {
    cfg = config_from_json_text(read_input(args.config));
  } else {
    cfg = args.cfg;
    cfg.kind = parse_kind(args.universe);
  }
  const std::vector<TrialRecord> records = run_sweep(cfg);
  const std::vector<SummaryStats> stats = summarize_cells(records);
  if (!cfg.csv_path.empty()) write_output(cfg.csv_path, to_csv(records, args.timings));
  if (!cfg.json_path.empty()) write_output(cfg.json_path, summaries_to_json_text(stats));
  if (!cfg.plot_path.empty()) write_output(cfg.plot_path, to_plot_data(stats));
  if (cfg.csv_path.empty() && cfg.json_path.empty() && cfg.plot_path.empty()) {
    write_output("", to_csv(records, args.timings));
  }
  for (const SummaryStats& s : stats) {
    std::fprintf(stderr,
                 "cell n=%u m=%llu lambda=%.6g: sat %.5f +/- %.5f (predicted %.5f, %llu/%llu "
                 "trials)\n",
                 s.n, static_cast<unsigned long long>(s.m), s.lambda_limit, s.sat_fraction,
                 s.ci_halfwidth, s.predicted_sat_limit,
                 static_cast<unsigned long long>(s.sat_count),
                 static_cast<unsigned long long>(s.trials));
  }
  return 0;
}

// ---- chain ------------------------------------------------------------------

struct ChainArgs {
  std::string mode = "profile";
  unsigned n = 12;
  std::optional<std::uint64_t> m;
  std::optional<double> c;
  std::string universe = "strict";
  unsigned runs = 1;
  unsigned steps = 0;
  std::uint64_t big_n = 0;
  std::uint64_t seed = 0;
  std::uint64_t min_samples = 1000;
  std::string out;
};

int run_chain(const ChainArgs& args) {
  const UniverseKind kind = parse_kind(args.universe);
  const auto clause_count = [&]() -> std::uint64_t {
    if (args.m) return *args.m;
    if (args.c) return clauses_from_density(args.n, *args.c);
    throw CLI::ValidationError("chain", "give -m or --c for this mode");
  };

  if (args.mode == "profile") {
    std::string csv = "run,t,hn1,hn2,hp1,hp2,e,n_total\n";
    const std::uint64_t m = clause_count();
    for (unsigned run = 0; run < args.runs; ++run) {
      RngStream rng(args.seed, run);
      for (const Profile& p : profile_trajectory(args.n, m, kind, rng)) {
        char line[160];
        std::snprintf(line, sizeof line, "%u,%u,%llu,%llu,%llu,%llu,%llu,%llu\n", run, p.t,
                      static_cast<unsigned long long>(p.hn1),
                      static_cast<unsigned long long>(p.hn2),
                      static_cast<unsigned long long>(p.hp1),
                      static_cast<unsigned long long>(p.hp2),
                      static_cast<unsigned long long>(p.e),
                      static_cast<unsigned long long>(p.total()));
        csv += line;
      }
    }
    write_output(args.out, csv);
    return 0;
  }
  if (args.mode == "simple") {
    const std::uint64_t start = args.big_n != 0 ? args.big_n : args.n;
    std::string csv = "run,t,u\n";
    for (unsigned run = 0; run < args.runs; ++run) {
      RngStream rng(args.seed, run);
      const auto traj = simple_chain_run(args.n, start, args.steps, rng);
      for (unsigned i = 0; i < traj.size(); ++i) {
        csv += std::to_string(run) + ',' + std::to_string(args.n - i) + ',' +
               std::to_string(traj[i]) + '\n';
      }
    }
    write_output(args.out, csv);
    return 0;
  }
  if (args.mode == "concentration") {
    const std::uint64_t start = args.big_n != 0 ? args.big_n : args.n;
    const double fraction = concentration_check(args.n, start, args.steps, args.runs, args.seed);
    std::printf("concentration n=%u big_n=%llu steps=%u runs=%u fraction=%.6f\n", args.n,
                static_cast<unsigned long long>(start), args.steps, args.runs, fraction);
    return 0;
  }
  if (args.mode == "domination") {
    const DominationReport report =
        domination_check(args.n, clause_count(), kind, args.runs, args.seed, args.min_samples);
    std::printf("domination n=%u runs=%u min_samples=%llu max_violation=%.6f\n", args.n, args.runs,
                static_cast<unsigned long long>(report.min_samples), report.max_violation);
    for (const DominationStage& s : report.stages) {
      std::printf("  t=%u samples=%llu/%llu included=%d max_diff=%.6f\n", s.t,
                  static_cast<unsigned long long>(s.samples_pur),
                  static_cast<unsigned long long>(s.samples_pur3), s.included ? 1 : 0, s.max_diff);
    }
    if (!args.out.empty()) {
      std::string csv = "t,value,ccdf_pur,ccdf_pur3,samples_pur,samples_pur3,included\n";
      for (const DominationStage& s : report.stages) {
        for (std::size_t i = 0; i < s.values.size(); ++i) {
          char line[160];
          std::snprintf(line, sizeof line, "%u,%llu,%.17g,%.17g,%llu,%llu,%d\n", s.t,
                        static_cast<unsigned long long>(s.values[i]), s.ccdf_pur[i],
                        s.ccdf_pur3[i], static_cast<unsigned long long>(s.samples_pur),
                        static_cast<unsigned long long>(s.samples_pur3), s.included ? 1 : 0);
          csv += line;
        }
      }
      write_output(args.out, csv);
    }
    return 0;
  }
  throw CLI::ValidationError("--mode", "must be profile, simple, concentration or domination");
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
  unsigned trials = 1000;
  unsigned nmax = 12;
  unsigned mmax = 200;
  std::uint64_t seed = 0;
};

int run_verify(const VerifyArgs& args) {
  RngStream meta(args.seed, ~std::uint64_t{0});
  unsigned disagreements = 0;
  for (unsigned i = 0; i < args.trials; ++i) {
    const unsigned n = 1 + static_cast<unsigned>(meta.next_below(args.nmax));
    const std::uint64_t m = 1 + meta.next_below(args.mmax);
    const UniverseKind kind = i % 2 == 0 ? UniverseKind::kStrict : UniverseKind::kPadded;
    RngStream formula_rng(args.seed, 2 * i);
    RngStream solver_rng(args.seed, 2 * i + 1);
    const HornFormula f = sample_formula(n, m, kind, formula_rng);
    const SolveOutcome pur = pur_solve(f, solver_rng);
    const SolveOutcome up = unit_prop_solve(f);
    const SolveOutcome brute = n <= 24 ? brute_force_solve(f) : up;
    bool ok = pur.status == up.status && up.status == brute.status;
    if (ok && pur.status == SolveStatus::kSatisfiable) {
      ok = evaluate(f, *pur.model) && *pur.model == *brute.model && *up.model == *brute.model &&
           pur.iterations == up.model->true_count();
    }
    if (!ok) {
      ++disagreements;
      std::fprintf(stderr, "disagreement on trial %u (n=%u m=%llu %s)\n", i, n,
                   static_cast<unsigned long long>(m), to_string(kind));
    }
  }
  std::printf("verify: %u trials, %u disagreements\n", args.trials, disagreements);
  return disagreements == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random Horn satisfiability workbench"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "sample a random Horn formula as DIMACS");
  gen_cmd->add_option("-n", gen.n, "variable count")->required();
  gen_cmd->add_option("-m", gen.m, "clause count");
  gen_cmd->add_option("--c", gen.c, "clause density c (m = round(c*2^n))");
  gen_cmd->add_option("--universe", gen.universe, "strict|padded");
  gen_cmd->add_option("--seed", gen.seed, "master seed");
  gen_cmd->add_option("--stream", gen.stream, "stream index");
  gen_cmd->add_option("-o,--output", gen.out, "output file (default stdout)");

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run PUR on a DIMACS file");
  solve_cmd->add_option("file", solve.file, "DIMACS file ('-' for stdin)")->required();
  solve_cmd->add_option("--seed", solve.seed, "master seed");
  solve_cmd->add_option("--stream", solve.stream, "stream index");
  solve_cmd->add_flag("--trace", solve.trace, "print per-stage profile records");
  solve_cmd->add_flag("--padded-tolerant", solve.padded_tolerant,
                      "accept complementary pairs as padded clauses");
  solve_cmd->add_flag("--strict-counts", solve.strict_counts,
                      "treat clause-count mismatches as errors");

  PredictArgs predict;
  CLI::App* predict_cmd = app.add_subcommand("predict", "print analytic limit laws");
  predict_cmd->add_option("--lambda", predict.lambda, "effective rate")->required();
  predict_cmd->add_option("--rho", predict.rho_kmax, "print rho_0..rho_K");
  predict_cmd->add_option("--wobble", predict.wobble_n, "print eta for this n");
  predict_cmd->add_option("--variant", predict.variant, "sqrt|linear|both");
  predict_cmd->add_flag("--json", predict.json, "JSON output");

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "seeded Monte Carlo experiment sweep");
  sweep_cmd->add_option("--config", sweep.config, "JSON config file");
  sweep_cmd->add_option("-n", sweep.cfg.n_values, "variable counts");
  sweep_cmd->add_option("--c", sweep.cfg.c_values, "clause densities");
  sweep_cmd->add_option("-m", sweep.cfg.m_values, "explicit clause counts");
  sweep_cmd->add_option("--universe", sweep.universe, "strict|padded");
  sweep_cmd->add_option("--trials", sweep.cfg.trials, "trials per cell");
  sweep_cmd->add_option("--seed", sweep.cfg.master_seed, "master seed");
  sweep_cmd->add_option("--workers", sweep.cfg.workers, "worker threads (0 = auto)");
  sweep_cmd->add_option("--mem-lits", sweep.cfg.max_expected_literals,
                        "per-trial expected-literal budget");
  sweep_cmd->add_option("--csv", sweep.cfg.csv_path, "trial records CSV path");
  sweep_cmd->add_option("--json", sweep.cfg.json_path, "summary JSON path");
  sweep_cmd->add_option("--plot", sweep.cfg.plot_path, "plot-data table path");
  sweep_cmd->add_flag("--timings", sweep.timings, "emit real wall times in the CSV");

  ChainArgs chain;
  CLI::App* chain_cmd = app.add_subcommand("chain", "Markov chain simulations");
  chain_cmd->add_option("--mode", chain.mode, "profile|simple|concentration|domination")
      ->required();
  chain_cmd->add_option("-n", chain.n, "variable count / chain length");
  chain_cmd->add_option("-m", chain.m, "clause count");
  chain_cmd->add_option("--c", chain.c, "clause density");
  chain_cmd->add_option("--universe", chain.universe, "strict|padded");
  chain_cmd->add_option("--runs", chain.runs, "number of runs");
  chain_cmd->add_option("--steps", chain.steps, "steps (simple/concentration)");
  chain_cmd->add_option("--big-n", chain.big_n, "initial clause count N_n");
  chain_cmd->add_option("--seed", chain.seed, "master seed");
  chain_cmd->add_option("--min-samples", chain.min_samples,
                        "per-stage sample floor (domination)");
  chain_cmd->add_option("-o,--output", chain.out, "CSV output path");

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "solver cross-check suite");
  verify_cmd->add_option("--trials", verify.trials, "random instances");
  verify_cmd->add_option("--nmax", verify.nmax, "max variable count");
  verify_cmd->add_option("--mmax", verify.mmax, "max clause count");
  verify_cmd->add_option("--seed", verify.seed, "master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (solve_cmd->parsed()) return run_solve(solve);
    if (predict_cmd->parsed()) return run_predict(predict);
    if (sweep_cmd->parsed()) return run_sweep_cmd(sweep);
    if (chain_cmd->parsed()) return run_chain(chain);
    if (verify_cmd->parsed()) return run_verify(verify);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
