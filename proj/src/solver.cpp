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

#include "hornphase/solver.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace hornphase {

namespace {

enum class Variant { kPur, kPur2, kPur3 };

void bump(StageCounts& counts, ClauseClass c, std::int64_t d) {
  switch (c) {
    case ClauseClass::kPositiveUnit: counts.hp1 += d; break;
    case ClauseClass::kPositiveNonUnit: counts.hp2 += d; break;
    case ClauseClass::kNegativeUnit: counts.hn1 += d; break;
    case ClauseClass::kNegativeNonUnit: counts.hn2 += d; break;
    case ClauseClass::kEmpty: counts.e += d; break;
  }
}

// Clause mechanics over one-word body masks; usable whenever n <= 64.  One
// linear pass per stage keeps the whole state at ~13 bytes per clause.
class MaskEngine {
 public:
  unsigned num_vars = 0;
  StageCounts counts;
  std::vector<std::uint32_t> pool;  // candidate positive-unit clause ids

  explicit MaskEngine(unsigned n) : num_vars(n) { assert(n >= 1 && n <= 64); }

  void reserve(std::size_t m) {
    heads_.reserve(m);
    bodies_.reserve(m);
    alive_.reserve(m);
  }

  void add_clause(Var head, std::uint64_t body) {
    const std::uint32_t c = static_cast<std::uint32_t>(heads_.size());
    heads_.push_back(head);
    bodies_.push_back(body);
    alive_.push_back(1);
    bump(counts, classify(head != 0, std::popcount(body)), +1);
    if (head != 0 && body == 0) pool.push_back(c);
  }

  Var head_of(std::uint32_t c) const { return heads_[c]; }
  bool alive(std::uint32_t c) const { return alive_[c] != 0; }
  std::size_t size() const { return heads_.size(); }

  void compact_pool() {
    std::erase_if(pool, [this](std::uint32_t c) { return alive_[c] == 0; });
  }

  bool has_negative_unit_on(Var x) const {
    const std::uint64_t xbit = std::uint64_t{1} << (x - 1);
    for (std::uint32_t c = 0; c < heads_.size(); ++c) {
      if (alive_[c] && heads_[c] == 0 && bodies_[c] == xbit) return true;
    }
    return false;
  }

  void assign_true(Var x, bool allow_empty) {
    const std::uint64_t xbit = std::uint64_t{1} << (x - 1);
    for (std::uint32_t c = 0; c < heads_.size(); ++c) {
      if (!alive_[c]) continue;
      if (heads_[c] == x) {
        kill(c);
        continue;
      }
      const std::uint64_t body = bodies_[c];
      if ((body & xbit) == 0) continue;
      bump(counts, classify(heads_[c] != 0, std::popcount(body)), -1);
      bodies_[c] = body & ~xbit;
      bump(counts, classify(heads_[c] != 0, std::popcount(bodies_[c])), +1);
      if (bodies_[c] == 0) {
        if (heads_[c] != 0) {
          pool.push_back(c);
        } else {
          assert(allow_empty);
          (void)allow_empty;
        }
      }
    }
  }

  void remove_uniform_and_thin(unsigned t, RngStream& rng) {
    const std::uint64_t live = counts.total();
    if (live > 0) {
      std::uint64_t r = rng.next_below(live);
      for (std::uint32_t c = 0;; ++c) {
        if (!alive_[c]) continue;
        if (r == 0) {
          kill(c);
          break;
        }
        --r;
      }
    }
    const double p = 1.0 / t;
    for (std::uint32_t c = 0; c < heads_.size(); ++c) {
      if (alive_[c] && rng.bernoulli(p)) kill(c);
    }
  }

  void thin_negative_non_units(unsigned t, RngStream& rng) {
    const double p = 1.0 / t;
    for (std::uint32_t c = 0; c < heads_.size(); ++c) {
      if (alive_[c] && heads_[c] == 0 && std::popcount(bodies_[c]) >= 2 && rng.bernoulli(p)) {
        kill(c);
      }
    }
  }

 private:
  void kill(std::uint32_t c) {
    bump(counts, classify(heads_[c] != 0, std::popcount(bodies_[c])), -1);
    alive_[c] = 0;
  }

  std::vector<Var> heads_;
  std::vector<std::uint64_t> bodies_;
  std::vector<std::uint8_t> alive_;
};

// Counter/occurrence-list mechanics for arbitrary n: each body literal is
// visited a constant number of times over a PUR run.
class OccEngine {
 public:
  unsigned num_vars = 0;
  StageCounts counts;
  std::vector<std::uint32_t> pool;

  explicit OccEngine(const HornFormula& f) : num_vars(f.num_vars()) {
    const std::size_t m = f.size();
    const unsigned n = f.num_vars();
    heads_.resize(m);
    body_count_.resize(m);
    alive_.assign(m, 1);
    head_start_.assign(n + 2, 0);
    body_start_.assign(n + 2, 0);
    for (std::size_t i = 0; i < m; ++i) {
      const ClauseView c = f.clause(i);
      heads_[i] = c.head;
      body_count_[i] = static_cast<std::uint32_t>(c.body.size());
      if (c.head != 0) ++head_start_[c.head + 1];
      for (Var v : c.body) ++body_start_[v + 1];
      bump(counts, c.clause_class(), +1);
      if (c.head != 0 && c.body.empty()) pool.push_back(static_cast<std::uint32_t>(i));
    }
    for (unsigned v = 1; v <= n; ++v) {
      head_start_[v + 1] += head_start_[v];
      body_start_[v + 1] += body_start_[v];
    }
    head_occ_.resize(head_start_[n + 1]);
    body_occ_.resize(body_start_[n + 1]);
    std::vector<std::uint64_t> hfill(head_start_.begin(), head_start_.end() - 1);
    std::vector<std::uint64_t> bfill(body_start_.begin(), body_start_.end() - 1);
    for (std::size_t i = 0; i < m; ++i) {
      const ClauseView c = f.clause(i);
      if (c.head != 0) head_occ_[hfill[c.head]++] = static_cast<std::uint32_t>(i);
      for (Var v : c.body) body_occ_[bfill[v]++] = static_cast<std::uint32_t>(i);
    }
  }

  Var head_of(std::uint32_t c) const { return heads_[c]; }
  std::size_t size() const { return heads_.size(); }

  void compact_pool() {
    std::erase_if(pool, [this](std::uint32_t c) { return alive_[c] == 0; });
  }

  bool has_negative_unit_on(Var x) const {
    for (std::uint64_t i = body_start_[x]; i < body_start_[x + 1]; ++i) {
      const std::uint32_t c = body_occ_[i];
      if (alive_[c] && heads_[c] == 0 && body_count_[c] == 1) return true;
    }
    return false;
  }

  void assign_true(Var x, bool allow_empty) {
    for (std::uint64_t i = head_start_[x]; i < head_start_[x + 1]; ++i) {
      const std::uint32_t c = head_occ_[i];
      if (alive_[c]) kill(c);
    }
    for (std::uint64_t i = body_start_[x]; i < body_start_[x + 1]; ++i) {
      const std::uint32_t c = body_occ_[i];
      if (!alive_[c]) continue;
      bump(counts, classify(heads_[c] != 0, body_count_[c]), -1);
      --body_count_[c];
      bump(counts, classify(heads_[c] != 0, body_count_[c]), +1);
      if (body_count_[c] == 0) {
        if (heads_[c] != 0) {
          pool.push_back(c);
        } else {
          assert(allow_empty);
          (void)allow_empty;
        }
      }
    }
  }

  void remove_uniform_and_thin(unsigned t, RngStream& rng) {
    const std::uint64_t live = counts.total();
    if (live > 0) {
      std::uint64_t r = rng.next_below(live);
      for (std::uint32_t c = 0;; ++c) {
        if (!alive_[c]) continue;
        if (r == 0) {
          kill(c);
          break;
        }
        --r;
      }
    }
    const double p = 1.0 / t;
    for (std::uint32_t c = 0; c < heads_.size(); ++c) {
      if (alive_[c] && rng.bernoulli(p)) kill(c);
    }
  }

  void thin_negative_non_units(unsigned t, RngStream& rng) {
    const double p = 1.0 / t;
    for (std::uint32_t c = 0; c < heads_.size(); ++c) {
      if (alive_[c] && heads_[c] == 0 && body_count_[c] >= 2 && rng.bernoulli(p)) kill(c);
    }
  }

 private:
  void kill(std::uint32_t c) {
    bump(counts, classify(heads_[c] != 0, body_count_[c]), -1);
    alive_[c] = 0;
  }

  std::vector<Var> heads_;
  std::vector<std::uint32_t> body_count_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint64_t> head_start_, body_start_;
  std::vector<std::uint32_t> head_occ_, body_occ_;
};

// Shared stage loop for PUR and its instrumented variants.  Both engines
// enumerate clauses in id order everywhere randomness is consumed, so the
// two produce identical draw sequences and outcomes.
template <class Engine>
SolveOutcome run_stages(Engine& eng, RngStream& rng, Variant variant, bool want_trace) {
  const unsigned n = eng.num_vars;
  SolveOutcome out;
  std::vector<StageRecord> trace;
  if (want_trace) trace.reserve(n + 1);
  std::vector<std::uint8_t> assigned(n + 1, 0);
  unsigned iterations = 0;
  bool terminated = false;

  for (unsigned t = n; t >= 1; --t) {
    eng.compact_pool();
    StageRecord rec{t, eng.counts, StageEvent::kAccept, 0};
    if (eng.pool.empty()) {
      if (variant == Variant::kPur) {
        if (want_trace) trace.push_back(rec);
        out.status = SolveStatus::kSatisfiable;
        out.final_stage = t;
        terminated = true;
        break;
      }
      rec.event = StageEvent::kNoUnitBranch;
      if (want_trace) trace.push_back(rec);
      eng.remove_uniform_and_thin(t, rng);
      continue;
    }
    if (variant == Variant::kPur3) eng.thin_negative_non_units(t, rng);
    const std::uint32_t chosen = eng.pool[rng.next_below(eng.pool.size())];
    const Var x = eng.head_of(chosen);
    if (variant == Variant::kPur && eng.has_negative_unit_on(x)) {
      rec.event = StageEvent::kReject;
      rec.chosen_var = x;
      if (want_trace) trace.push_back(rec);
      out.status = SolveStatus::kUnsatisfiable;
      out.final_stage = t;
      terminated = true;
      break;
    }
    rec.event = StageEvent::kSurvive;
    rec.chosen_var = x;
    if (want_trace) trace.push_back(rec);
    assigned[x] = 1;
    ++iterations;
    eng.assign_true(x, /*allow_empty=*/variant != Variant::kPur);
  }

  if (!terminated) {
    // Stage 0: nothing is left to choose (any surviving clause is empty).
    assert(eng.counts.hp1 == 0);
    const StageEvent ev = variant == Variant::kPur ? StageEvent::kAccept
                                                   : StageEvent::kNoUnitBranch;
    if (want_trace) trace.push_back(StageRecord{0, eng.counts, ev, 0});
    out.status = SolveStatus::kSatisfiable;
    out.final_stage = 0;
  }

  out.iterations = iterations;
  assert(variant != Variant::kPur || out.iterations == n - out.final_stage);
  if (variant == Variant::kPur && out.status == SolveStatus::kSatisfiable) {
    Assignment model(n);
    for (Var v = 1; v <= n; ++v) model.set(v, assigned[v] != 0);
    out.model = std::move(model);
  }
  if (want_trace) out.trace = std::move(trace);
  return out;
}

MaskEngine make_mask_engine(const HornFormula& f) {
  MaskEngine eng(f.num_vars());
  eng.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ClauseView c = f.clause(i);
    std::uint64_t body = 0;
    for (Var v : c.body) body |= std::uint64_t{1} << (v - 1);
    eng.add_clause(c.head, body);
  }
  return eng;
}

template <class Fn>
auto with_engine(const HornFormula& f, Fn&& fn) {
  if (f.num_vars() <= 64) {
    MaskEngine eng = make_mask_engine(f);
    return fn(eng);
  }
  OccEngine eng(f);
  return fn(eng);
}

}  // namespace

SolveOutcome pur_solve(const HornFormula& formula, RngStream& rng, bool want_trace) {
  return with_engine(formula, [&](auto& eng) {
    return run_stages(eng, rng, Variant::kPur, want_trace);
  });
}

std::vector<StageRecord> pur2_run(const HornFormula& formula, RngStream& rng) {
  return with_engine(formula, [&](auto& eng) {
    return *run_stages(eng, rng, Variant::kPur2, true).trace;
  });
}

std::vector<StageRecord> pur3_run(const HornFormula& formula, RngStream& rng) {
  return with_engine(formula, [&](auto& eng) {
    return *run_stages(eng, rng, Variant::kPur3, true).trace;
  });
}

SolveOutcome sample_and_solve(unsigned n, std::uint64_t m, UniverseKind kind,
                              RngStream& formula_rng, RngStream& solver_rng, bool want_trace,
                              const SampleLimits& limits) {
  if (n == 0) throw std::invalid_argument("sample_and_solve: n must be >= 1");
  if (expected_literals(n, m) > limits.max_expected_literals) {
    throw ResourceLimitError("sample_and_solve: expected literal footprint exceeds limit");
  }
  if (n > 64) {
    const HornFormula f = sample_formula(n, m, kind, formula_rng, limits);
    return pur_solve(f, solver_rng, want_trace);
  }
  MaskEngine eng(n);
  eng.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    const MaskClause c = sample_clause_mask(n, kind, formula_rng);
    eng.add_clause(c.head, c.body);
  }
  return run_stages(eng, solver_rng, Variant::kPur, want_trace);
}

namespace detail {

SolveOutcome pur_solve_occ(const HornFormula& formula, RngStream& rng, bool want_trace) {
  OccEngine eng(formula);
  return run_stages(eng, rng, Variant::kPur, want_trace);
}

std::vector<StageRecord> pur2_run_occ(const HornFormula& formula, RngStream& rng) {
  OccEngine eng(formula);
  return *run_stages(eng, rng, Variant::kPur2, true).trace;
}

std::vector<StageRecord> pur3_run_occ(const HornFormula& formula, RngStream& rng) {
  OccEngine eng(formula);
  return *run_stages(eng, rng, Variant::kPur3, true).trace;
}

}  // namespace detail

SolveOutcome unit_prop_solve(const HornFormula& formula) {
  const unsigned n = formula.num_vars();
  const std::size_t m = formula.size();
  std::vector<std::uint32_t> body_count(m);
  std::vector<std::uint64_t> body_start(n + 2, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const ClauseView c = formula.clause(i);
    body_count[i] = static_cast<std::uint32_t>(c.body.size());
    for (Var v : c.body) ++body_start[v + 1];
  }
  for (unsigned v = 1; v <= n; ++v) body_start[v + 1] += body_start[v];
  std::vector<std::uint32_t> body_occ(body_start[n + 1]);
  {
    std::vector<std::uint64_t> fill(body_start.begin(), body_start.end() - 1);
    for (std::size_t i = 0; i < m; ++i) {
      for (Var v : formula.clause(i).body) body_occ[fill[v]++] = static_cast<std::uint32_t>(i);
    }
  }

  std::vector<std::uint8_t> forced(n + 1, 0);
  std::vector<Var> queue;
  bool conflict = false;
  for (std::size_t i = 0; i < m && !conflict; ++i) {
    if (body_count[i] != 0) continue;
    const Var h = formula.clause(i).head;
    if (h == 0) {
      conflict = true;  // empty clause (not producible by a valid formula)
    } else if (!forced[h]) {
      forced[h] = 1;
      queue.push_back(h);
    }
  }
  for (std::size_t qi = 0; qi < queue.size() && !conflict; ++qi) {
    const Var v = queue[qi];
    for (std::uint64_t i = body_start[v]; i < body_start[v + 1] && !conflict; ++i) {
      const std::uint32_t c = body_occ[i];
      if (--body_count[c] != 0) continue;
      const Var h = formula.clause(c).head;
      if (h == 0) {
        conflict = true;
      } else if (!forced[h]) {
        forced[h] = 1;
        queue.push_back(h);
      }
    }
  }

  SolveOutcome out;
  out.iterations = static_cast<unsigned>(queue.size());
  out.final_stage = n - out.iterations;
  if (conflict) {
    out.status = SolveStatus::kUnsatisfiable;
    return out;
  }
  out.status = SolveStatus::kSatisfiable;
  Assignment model(n);
  for (Var v = 1; v <= n; ++v) model.set(v, forced[v] != 0);
  out.model = std::move(model);
  return out;
}

SolveOutcome brute_force_solve(const HornFormula& formula) {
  const unsigned n = formula.num_vars();
  if (n > 24) throw std::invalid_argument("brute_force_solve: n must be <= 24");
  const std::size_t m = formula.size();
  std::vector<std::uint32_t> head_bit(m), body_bits(m);
  for (std::size_t i = 0; i < m; ++i) {
    const ClauseView c = formula.clause(i);
    head_bit[i] = c.head != 0 ? std::uint32_t{1} << (c.head - 1) : 0;
    std::uint32_t bits = 0;
    for (Var v : c.body) bits |= std::uint32_t{1} << (v - 1);
    body_bits[i] = bits;
  }
  const auto satisfies = [&](std::uint32_t a) {
    for (std::size_t i = 0; i < m; ++i) {
      if ((head_bit[i] & a) == 0 && (body_bits[i] & ~a) == 0) return false;
    }
    return true;
  };

  const std::uint32_t limit = std::uint32_t{1} << n;
  for (unsigned k = 0; k <= n; ++k) {
    // masks of popcount k in increasing value (Gosper's hack)
    std::uint32_t v = k == 0 ? 0 : (std::uint32_t{1} << k) - 1;
    for (;;) {
      if (satisfies(v)) {
        SolveOutcome out;
        out.status = SolveStatus::kSatisfiable;
        out.iterations = k;
        out.final_stage = n - k;
        Assignment model(n);
        for (Var var = 1; var <= n; ++var) model.set(var, ((v >> (var - 1)) & 1) != 0);
        out.model = std::move(model);
        return out;
      }
      if (k == 0) break;
      const std::uint32_t c = v & (~v + 1);
      const std::uint32_t r = v + c;
      v = (((r ^ v) >> 2) / c) | r;
      if (v >= limit) break;
    }
  }
  SolveOutcome out;
  out.status = SolveStatus::kUnsatisfiable;
  out.iterations = 0;
  out.final_stage = n;
  return out;
}

const char* to_string(SolveStatus status) {
  return status == SolveStatus::kSatisfiable ? "SAT" : "UNSAT";
}

const char* to_string(StageEvent event) {
  switch (event) {
    case StageEvent::kAccept: return "accept";
    case StageEvent::kReject: return "reject";
    case StageEvent::kSurvive: return "survive";
    case StageEvent::kNoUnitBranch: return "no-unit";
  }
  return "?";
}

}  // namespace hornphase
