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

#include "hornphase/markov.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "hornphase/analytic.hpp"
#include "hornphase/solver.hpp"

namespace hornphase {

TransitionProbs TransitionProbs::at_stage(unsigned t) {
  if (t == 0) throw std::invalid_argument("TransitionProbs: stage must be >= 1");
  TransitionProbs p;
  p.p1 = 1.0 / t;
  p.p3 = 0.5;
  if (t == 1) {
    p.p2 = 0.0;
    p.p4 = 0.0;
  } else {
    p.p2 = 1.0 / (std::exp2(static_cast<double>(t - 1)) - 1.0);
    p.p4 = static_cast<double>(t - 1) /
           (std::exp2(static_cast<double>(t)) - static_cast<double>(t) - 1.0);
  }
  return p;
}

Profile profile_step(const Profile& g, RngStream& rng) {
  if (g.t == 0) throw std::invalid_argument("profile_step: stage must be >= 1");
  const TransitionProbs p = TransitionProbs::at_stage(g.t);
  Profile next;
  next.t = g.t - 1;

  if (g.hp1 > 0) {
    const std::uint64_t d1p = binomial_draw(g.hp1 - 1, p.p1, rng);
    const std::uint64_t d2p = binomial_draw(g.hp2, p.p1, rng);
    const std::uint64_t d12p = binomial_draw(g.hp2 - d2p, p.p2, rng);
    const std::uint64_t de = binomial_draw(g.hn1, p.p1, rng);
    const std::uint64_t d12n = binomial_draw(g.hn2, p.p4, rng);
    next.hp1 = g.hp1 - 1 - d1p + d12p;
    next.hp2 = g.hp2 - d2p - d12p;
    next.hn1 = g.hn1 - de + d12n;
    next.hn2 = g.hn2 - d12n;
    next.e = g.e + de;
    assert(next.total() == g.total() - 1 - d1p - d2p);
    return next;
  }

  // No positive unit: remove one clause in proportion to the class counts,
  // then thin every remaining clause independently with probability 1/t.
  next.hn1 = g.hn1;
  next.hn2 = g.hn2;
  next.hp1 = 0;
  next.hp2 = g.hp2;
  next.e = g.e;
  const std::uint64_t live = next.total();
  if (live > 0) {
    std::uint64_t r = rng.next_below(live);
    if (r < next.hn1) {
      --next.hn1;
    } else if ((r -= next.hn1) < next.hn2) {
      --next.hn2;
    } else if ((r -= next.hn2) < next.hp2) {
      --next.hp2;
    } else {
      --next.e;
    }
  }
  next.hn1 -= binomial_draw(next.hn1, p.p1, rng);
  next.hn2 -= binomial_draw(next.hn2, p.p1, rng);
  next.hp2 -= binomial_draw(next.hp2, p.p1, rng);
  next.e -= binomial_draw(next.e, p.p1, rng);
  return next;
}

std::vector<Profile> profile_trajectory(unsigned n, std::uint64_t m, UniverseKind kind,
                                        RngStream& rng) {
  if (n == 0) throw std::invalid_argument("profile_trajectory: n must be >= 1");
  const ClassCounts cc = class_counts(n, kind);
  const double universe = static_cast<double>(cc.total());

  // Multinomial split of m clauses over the four classes (sequential
  // binomial conditioning, in profile component order).
  Profile g;
  g.t = n;
  std::uint64_t remaining = m;
  double weight_left = universe;
  g.hn1 = binomial_draw(remaining, static_cast<double>(cc.negative_unit) / weight_left, rng);
  remaining -= g.hn1;
  weight_left -= static_cast<double>(cc.negative_unit);
  g.hn2 = binomial_draw(remaining, static_cast<double>(cc.negative_non_unit) / weight_left, rng);
  remaining -= g.hn2;
  weight_left -= static_cast<double>(cc.negative_non_unit);
  g.hp1 = binomial_draw(remaining, static_cast<double>(cc.positive_unit) / weight_left, rng);
  remaining -= g.hp1;
  g.hp2 = remaining;
  g.e = 0;

  std::vector<Profile> out;
  out.reserve(n + 1);
  out.push_back(g);
  for (unsigned t = n; t >= 1; --t) {
    g = profile_step(g, rng);
    out.push_back(g);
  }
  return out;
}

std::vector<std::uint64_t> simple_chain_run(std::uint64_t n, std::uint64_t big_n, unsigned steps,
                                            RngStream& rng) {
  if (big_n < 1) throw std::invalid_argument("simple_chain_run: N_n must be >= 1");
  if (steps > n) throw std::invalid_argument("simple_chain_run: steps must be <= n");
  std::vector<std::uint64_t> out;
  out.reserve(steps + 1);
  std::uint64_t u = big_n;
  out.push_back(u);
  for (unsigned i = 0; i < steps; ++i) {
    const std::uint64_t t = n - i;
    if (u > 0) {
      const std::uint64_t dec = 1 + binomial_draw(u - 1, 1.0 / static_cast<double>(t), rng);
      u = dec >= u ? 0 : u - dec;
    }
    out.push_back(u);
  }
  return out;
}

double concentration_check(std::uint64_t n, std::uint64_t big_n, unsigned steps, unsigned runs,
                           std::uint64_t master_seed) {
  if (runs == 0) throw std::invalid_argument("concentration_check: need at least one run");
  // One interval for the whole window: the lower end is evaluated at the
  // window endpoint t = n - steps and every visited stage must stay inside.
  const double y =
      steps == 0 ? static_cast<double>(big_n)
                 : std::floor(concentration_lower_bound(n, n - steps, big_n));
  unsigned ok = 0;
  for (unsigned run = 0; run < runs; ++run) {
    RngStream rng(master_seed, run);
    const std::vector<std::uint64_t> traj = simple_chain_run(n, big_n, steps, rng);
    bool inside = true;
    for (unsigned i = 0; i < traj.size() && inside; ++i) {
      inside = static_cast<double>(traj[i]) >= y && traj[i] <= big_n;
    }
    ok += inside ? 1 : 0;
  }
  return static_cast<double>(ok) / runs;
}

namespace {

std::vector<double> ccdf_on(const std::vector<std::uint64_t>& sorted_samples,
                            const std::vector<std::uint64_t>& values) {
  // CCDF(a) = Pr[X >= a] evaluated on ascending `values`.
  std::vector<double> out;
  out.reserve(values.size());
  for (std::uint64_t a : values) {
    const auto it = std::lower_bound(sorted_samples.begin(), sorted_samples.end(), a);
    out.push_back(static_cast<double>(sorted_samples.end() - it) /
                  static_cast<double>(sorted_samples.size()));
  }
  return out;
}

}  // namespace

DominationReport domination_check(unsigned n, std::uint64_t m, UniverseKind kind, unsigned runs,
                                  std::uint64_t master_seed, std::uint64_t min_samples) {
  if (n == 0 || n > 16) throw std::invalid_argument("domination_check: need 1 <= n <= 16");
  DominationReport report;
  report.min_samples = min_samples;

  // pools[t] = conditioned clause counts observed at stage t.
  std::vector<std::vector<std::uint64_t>> pool_pur(n + 1), pool_pur3(n + 1);

  for (unsigned run = 0; run < runs; ++run) {
    // Four independent streams per run: formula/solver for each side.
    RngStream f1(master_seed, std::uint64_t{4} * run);
    RngStream s1(master_seed, std::uint64_t{4} * run + 1);
    RngStream f2(master_seed, std::uint64_t{4} * run + 2);
    RngStream s2(master_seed, std::uint64_t{4} * run + 3);

    const HornFormula a = sample_formula(n, m, kind, f1);
    const SolveOutcome out = pur_solve(a, s1, /*want_trace=*/true);
    for (const StageRecord& rec : *out.trace) {
      if (rec.stage >= 1) pool_pur[rec.stage].push_back(rec.counts.total());
    }

    const HornFormula b = sample_formula(n, m, kind, f2);
    const std::vector<StageRecord> trace = pur3_run(b, s2);
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const StageRecord& rec = trace[i];
      // Survival to rec.stage: every earlier stage held a positive unit and
      // no empty clause has been produced.
      if (i > 0 && trace[i - 1].counts.hp1 == 0) break;
      if (rec.counts.e != 0) break;
      if (rec.stage >= 1) pool_pur3[rec.stage].push_back(rec.counts.nonempty());
    }
  }

  for (unsigned t = n; t >= 1; --t) {
    DominationStage stage;
    stage.t = t;
    auto& p1 = pool_pur[t];
    auto& p2 = pool_pur3[t];
    stage.samples_pur = p1.size();
    stage.samples_pur3 = p2.size();
    std::sort(p1.begin(), p1.end());
    std::sort(p2.begin(), p2.end());
    if (!p1.empty() && !p2.empty()) {
      std::vector<std::uint64_t> values;
      values.reserve(p1.size() + p2.size());
      std::merge(p1.begin(), p1.end(), p2.begin(), p2.end(), std::back_inserter(values));
      values.erase(std::unique(values.begin(), values.end()), values.end());
      stage.values = std::move(values);
      stage.ccdf_pur = ccdf_on(p1, stage.values);
      stage.ccdf_pur3 = ccdf_on(p2, stage.values);
      double max_diff = -1.0;
      for (std::size_t i = 0; i < stage.values.size(); ++i) {
        max_diff = std::max(max_diff, stage.ccdf_pur3[i] - stage.ccdf_pur[i]);
      }
      stage.max_diff = max_diff;
      stage.included = p1.size() >= min_samples && p2.size() >= min_samples;
      if (stage.included) report.max_violation = std::max(report.max_violation, max_diff);
    }
    report.stages.push_back(std::move(stage));
  }
  return report;
}

}  // namespace hornphase
