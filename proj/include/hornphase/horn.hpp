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
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hornphase {

// 1-based variable index; 0 means "no positive literal".
using Var = std::uint32_t;

// Two concrete clause universes are supported.
//
//   Strict: a clause is a set of literals with no complementary pair -- a
//           head in {none, x1..xt} plus a body (negated variables) drawn
//           from the remaining variables.  |U(t)| = (t+2)*2^(t-1) - 1.
//   Padded: head in {none, x1..xt} and body any subset of all t variables,
//           so a tautological pair x v ~x is representable.
//           |U(t)| = (t+1)*2^t - 1.
//
// Both universes exclude the empty clause.
enum class UniverseKind { kStrict, kPadded };

enum class ClauseClass {
  kPositiveUnit,     // head present, empty body
  kPositiveNonUnit,  // head present, nonempty body
  kNegativeUnit,     // no head, single body variable
  kNegativeNonUnit,  // no head, two or more body variables
  kEmpty,            // no literals at all (solver-internal only)
};

// A Horn clause: at most one positive literal (the head) plus a set of
// negated variables (the body, kept sorted and duplicate-free).
struct HornClause {
  Var head = 0;
  std::vector<Var> body;

  friend bool operator==(const HornClause&, const HornClause&) = default;
};

constexpr ClauseClass classify(bool has_head, std::size_t body_size) {
  if (has_head) {
    return body_size == 0 ? ClauseClass::kPositiveUnit : ClauseClass::kPositiveNonUnit;
  }
  if (body_size == 0) return ClauseClass::kEmpty;
  return body_size == 1 ? ClauseClass::kNegativeUnit : ClauseClass::kNegativeNonUnit;
}

inline ClauseClass classify_clause(const HornClause& clause) {
  return classify(clause.head != 0, clause.body.size());
}

// Per-class clause counts of a universe.
struct ClassCounts {
  std::uint64_t positive_unit = 0;
  std::uint64_t positive_non_unit = 0;
  std::uint64_t negative_unit = 0;
  std::uint64_t negative_non_unit = 0;

  std::uint64_t total() const {
    return positive_unit + positive_non_unit + negative_unit + negative_non_unit;
  }
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

// Number of clauses in the universe over t variables.  Exact; throws
// std::invalid_argument for t = 0 and std::overflow_error once the count
// no longer fits in 64 bits (t > 58).
std::uint64_t universe_size(unsigned t, UniverseKind kind);

// Same quantity as a double, valid for any t >= 1 (used in rate formulas).
double universe_size_real(unsigned t, UniverseKind kind);

ClassCounts class_counts(unsigned t, UniverseKind kind);

// Lightweight view into a formula's clause storage.
struct ClauseView {
  Var head = 0;
  std::span<const Var> body;

  ClauseClass clause_class() const { return classify(head != 0, body.size()); }
};

// A Horn formula: an ordered multiset of clauses over variables 1..n.
// Duplicate clauses are kept; clause storage is pooled so large random
// formulas stay one flat allocation.
class HornFormula {
 public:
  explicit HornFormula(unsigned num_vars);

  unsigned num_vars() const { return num_vars_; }
  std::size_t size() const { return heads_.size(); }
  std::uint64_t total_body_literals() const { return pool_.size(); }

  ClauseView clause(std::size_t i) const {
    const std::size_t b = offsets_[i], e = offsets_[i + 1];
    return {heads_[i], std::span<const Var>(pool_.data() + b, e - b)};
  }

  // body must be sorted ascending with no duplicates; indices in [1, n].
  void add_clause(Var head, std::span<const Var> body);
  void add_clause(const HornClause& clause) { add_clause(clause.head, clause.body); }
  void reserve(std::size_t clauses, std::uint64_t body_literals);

  HornClause clause_copy(std::size_t i) const;

  friend bool operator==(const HornFormula&, const HornFormula&) = default;

 private:
  unsigned num_vars_;
  std::vector<Var> heads_;
  std::vector<std::uint64_t> offsets_;  // size() + 1 entries into pool_
  std::vector<Var> pool_;
};

// Total truth assignment for variables 1..n.
class Assignment {
 public:
  explicit Assignment(unsigned num_vars) : values_(num_vars + 1, 0) {}

  unsigned num_vars() const { return static_cast<unsigned>(values_.size() - 1); }
  bool value(Var v) const { return values_[v] != 0; }
  void set(Var v, bool b) { values_[v] = b ? 1 : 0; }
  std::uint64_t true_count() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::uint8_t> values_;  // index 0 unused
};

// True iff every clause is satisfied: head assigned true, or some body
// variable assigned false.  An empty clause list is vacuously true.
bool evaluate(const HornFormula& formula, const Assignment& a);

// ---- DIMACS CNF I/O --------------------------------------------------------

struct DimacsOptions {
  // Accept a clause containing both v and -v as the padded-universe clause
  // (head = v, v in body).  Rejected as non-Horn otherwise.
  bool padded_tolerant = false;
  // Treat a clause-count mismatch against the header as an error instead of
  // a warning.
  bool strict_clause_count = false;
};

class ParseError : public std::runtime_error {
 public:
  enum class Code {
    kMalformedHeader,
    kNonHornClause,
    kComplementaryPair,
    kLiteralOutOfRange,
    kEmptyClauseInInput,
    kClauseCountMismatch,
    kTrailingGarbage,
  };

  ParseError(Code code, std::size_t clause_index, const std::string& message)
      : std::runtime_error(message), code_(code), clause_index_(clause_index) {}

  Code code() const { return code_; }
  // 1-based index of the offending clause; 0 when not clause-specific.
  std::size_t clause_index() const { return clause_index_; }

 private:
  Code code_;
  std::size_t clause_index_;
};

// Parses DIMACS CNF text ('c' comments, one 'p cnf <n> <m>' header, then
// zero-terminated clauses).  Every clause must be Horn.  Duplicate literals
// within a clause are collapsed silently.  CRLF input is tolerated.
// A non-fatal clause-count mismatch is reported through *warning when given.
HornFormula parse_dimacs(std::string_view text, const DimacsOptions& options = {},
                         std::string* warning = nullptr);

// Serializes with LF line endings; each clause prints its positive literal
// first, then body literals ascending.  parse_dimacs(write_dimacs(f)) == f.
std::string write_dimacs(const HornFormula& formula);

const char* to_string(UniverseKind kind);
const char* to_string(ClauseClass c);

}  // namespace hornphase
