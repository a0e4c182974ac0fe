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

#include "hornphase/horn.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace hornphase {

std::uint64_t universe_size(unsigned t, UniverseKind kind) {
  if (t == 0) throw std::invalid_argument("universe_size: variable count must be >= 1");
  if (t > 58) throw std::overflow_error("universe_size: count exceeds 64 bits for t > 58");
  if (kind == UniverseKind::kStrict) {
    return (std::uint64_t{t} + 2) * (std::uint64_t{1} << (t - 1)) - 1;
  }
  return (std::uint64_t{t} + 1) * (std::uint64_t{1} << t) - 1;
}

double universe_size_real(unsigned t, UniverseKind kind) {
  if (t == 0) throw std::invalid_argument("universe_size_real: variable count must be >= 1");
  const double td = static_cast<double>(t);
  if (kind == UniverseKind::kStrict) return (td + 2) * std::exp2(td - 1) - 1;
  return (td + 1) * std::exp2(td) - 1;
}

ClassCounts class_counts(unsigned t, UniverseKind kind) {
  if (t == 0) throw std::invalid_argument("class_counts: variable count must be >= 1");
  if (t > 58) throw std::overflow_error("class_counts: counts exceed 64 bits for t > 58");
  const std::uint64_t pow_t = std::uint64_t{1} << t;
  ClassCounts cc;
  cc.positive_unit = t;
  cc.negative_unit = t;
  cc.negative_non_unit = pow_t - 1 - t;
  cc.positive_non_unit = kind == UniverseKind::kStrict ? std::uint64_t{t} * (pow_t / 2 - 1)
                                                       : std::uint64_t{t} * (pow_t - 1);
  assert(cc.total() == universe_size(t, kind));
  return cc;
}

HornFormula::HornFormula(unsigned num_vars) : num_vars_(num_vars) {
  if (num_vars == 0) throw std::invalid_argument("HornFormula: need at least one variable");
  offsets_.push_back(0);
}

void HornFormula::reserve(std::size_t clauses, std::uint64_t body_literals) {
  heads_.reserve(clauses);
  offsets_.reserve(clauses + 1);
  pool_.reserve(body_literals);
}

void HornFormula::add_clause(Var head, std::span<const Var> body) {
  if (head == 0 && body.empty()) {
    throw std::invalid_argument("add_clause: the empty clause is not representable in a formula");
  }
  if (head > num_vars_) throw std::invalid_argument("add_clause: head variable out of range");
  Var prev = 0;
  for (Var v : body) {
    if (v == 0 || v > num_vars_) throw std::invalid_argument("add_clause: body variable out of range");
    if (v <= prev) throw std::invalid_argument("add_clause: body must be sorted and duplicate-free");
    prev = v;
  }
  heads_.push_back(head);
  pool_.insert(pool_.end(), body.begin(), body.end());
  offsets_.push_back(pool_.size());
}

HornClause HornFormula::clause_copy(std::size_t i) const {
  const ClauseView v = clause(i);
  return HornClause{v.head, std::vector<Var>(v.body.begin(), v.body.end())};
}

std::uint64_t Assignment::true_count() const {
  std::uint64_t n = 0;
  for (std::size_t i = 1; i < values_.size(); ++i) n += values_[i];
  return n;
}

bool evaluate(const HornFormula& formula, const Assignment& a) {
  for (std::size_t i = 0; i < formula.size(); ++i) {
    const ClauseView c = formula.clause(i);
    bool satisfied = c.head != 0 && a.value(c.head);
    if (!satisfied) {
      for (Var v : c.body) {
        if (!a.value(v)) {
          satisfied = true;
          break;
        }
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void skip_space_and_comments() {
    while (!eof()) {
      const char c = text[pos];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos;
      } else if (c == 'c') {
        while (!eof() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  bool next_int(long long& out) {
    skip_space_and_comments();
    if (eof()) return false;
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr == begin) return false;
    pos += static_cast<std::size_t>(ptr - begin);
    return true;
  }
};

}  // namespace

HornFormula parse_dimacs(std::string_view text, const DimacsOptions& options,
                         std::string* warning) {
  Cursor cur{text};
  cur.skip_space_and_comments();
  if (cur.eof() || cur.peek() != 'p') {
    throw ParseError(ParseError::Code::kMalformedHeader, 0, "missing 'p cnf' header");
  }
  ++cur.pos;
  while (!cur.eof() && (cur.peek() == ' ' || cur.peek() == '\t')) ++cur.pos;
  if (text.substr(cur.pos, 3) != "cnf") {
    throw ParseError(ParseError::Code::kMalformedHeader, 0, "header format is not 'p cnf'");
  }
  cur.pos += 3;
  long long n = 0, m = 0;
  if (!cur.next_int(n) || !cur.next_int(m) || n < 1 || m < 0) {
    throw ParseError(ParseError::Code::kMalformedHeader, 0, "bad variable/clause counts in header");
  }

  HornFormula formula(static_cast<unsigned>(n));
  std::vector<Var> body;
  std::vector<Var> positives;
  std::size_t clause_index = 0;
  bool in_clause = false;

  long long lit = 0;
  while (cur.next_int(lit)) {
    if (!in_clause) {
      in_clause = true;
      ++clause_index;
      body.clear();
      positives.clear();
    }
    if (lit == 0) {
      if (positives.empty() && body.empty()) {
        throw ParseError(ParseError::Code::kEmptyClauseInInput, clause_index,
                         "clause " + std::to_string(clause_index) + " is empty");
      }
      if (positives.size() > 1) {
        throw ParseError(ParseError::Code::kNonHornClause, clause_index,
                         "clause " + std::to_string(clause_index) +
                             " has more than one positive literal");
      }
      const Var head = positives.empty() ? 0 : positives.front();
      std::sort(body.begin(), body.end());
      body.erase(std::unique(body.begin(), body.end()), body.end());
      if (head != 0 && std::binary_search(body.begin(), body.end(), head) &&
          !options.padded_tolerant) {
        throw ParseError(ParseError::Code::kComplementaryPair, clause_index,
                         "clause " + std::to_string(clause_index) +
                             " contains a complementary pair (use padded-tolerant mode)");
      }
      formula.add_clause(head, body);
      in_clause = false;
      continue;
    }
    const long long v = lit < 0 ? -lit : lit;
    if (v > n) {
      throw ParseError(ParseError::Code::kLiteralOutOfRange, clause_index,
                       "clause " + std::to_string(clause_index) + ": literal " +
                           std::to_string(lit) + " exceeds " + std::to_string(n) + " variables");
    }
    if (lit > 0) {
      if (std::find(positives.begin(), positives.end(), static_cast<Var>(v)) == positives.end()) {
        positives.push_back(static_cast<Var>(v));
      }
    } else {
      body.push_back(static_cast<Var>(v));
    }
  }
  if (in_clause) {
    throw ParseError(ParseError::Code::kTrailingGarbage, clause_index,
                     "clause " + std::to_string(clause_index) + " is not zero-terminated");
  }
  cur.skip_space_and_comments();
  if (!cur.eof()) {
    throw ParseError(ParseError::Code::kTrailingGarbage, clause_index, "unparsable trailing input");
  }
  if (static_cast<long long>(formula.size()) != m) {
    const std::string msg = "header declares " + std::to_string(m) + " clauses, found " +
                            std::to_string(formula.size());
    if (options.strict_clause_count) {
      throw ParseError(ParseError::Code::kClauseCountMismatch, 0, msg);
    }
    if (warning != nullptr) *warning = msg;
  }
  return formula;
}

std::string write_dimacs(const HornFormula& formula) {
  std::string out = "p cnf " + std::to_string(formula.num_vars()) + " " +
                    std::to_string(formula.size()) + "\n";
  char buf[16];
  for (std::size_t i = 0; i < formula.size(); ++i) {
    const ClauseView c = formula.clause(i);
    if (c.head != 0) {
      std::snprintf(buf, sizeof buf, "%u ", c.head);
      out += buf;
    }
    for (Var v : c.body) {
      std::snprintf(buf, sizeof buf, "-%u ", v);
      out += buf;
    }
    out += "0\n";
  }
  return out;
}

const char* to_string(UniverseKind kind) {
  return kind == UniverseKind::kStrict ? "strict" : "padded";
}

const char* to_string(ClauseClass c) {
  switch (c) {
    case ClauseClass::kPositiveUnit: return "positive-unit";
    case ClauseClass::kPositiveNonUnit: return "positive-non-unit";
    case ClauseClass::kNegativeUnit: return "negative-unit";
    case ClauseClass::kNegativeNonUnit: return "negative-non-unit";
    case ClauseClass::kEmpty: return "empty";
  }
  return "?";
}

}  // namespace hornphase
