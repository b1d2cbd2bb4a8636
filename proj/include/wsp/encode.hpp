// Copyright 2026 The WSP Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WSP_ENCODE_HPP_
#define WSP_ENCODE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wsp/core.hpp"

namespace wsp {

// ---------------------------------------------------------------------------
// Boolean models (UDPB and PBPB)

enum class VarKind {
  kX,         // x_{s,u}: step s goes to user u
  kM,         // M_{s,t}: steps s and t share a user
  kZ,         // z_{c,u}: user u works on the scope of constraint c
  kRep,       // rep_{c,s}: s is the first step of c's scope with its user
  kGroup,     // g_{c,i}: SUAL group i holds
  kSelector,  // a_{c,j}: function j of c's family is chosen
};

struct BoolVar {
  std::string name;
  VarKind kind = VarKind::kX;
  /// kX: (step, user); kM: (step, step); others: (constraint, user/step/index).
  std::uint32_t first = 0;
  std::uint32_t second = 0;
};

struct Term {
  std::int64_t coef = 1;
  std::uint32_t var = 0;
  friend bool operator==(const Term&, const Term&) = default;
};

enum class Relation { kGe, kEq };

/// sum(coef * var) (>= | =) rhs, enforced only when `guard` is true.
struct PbConstraint {
  std::vector<Term> terms;
  Relation rel = Relation::kGe;
  std::int64_t rhs = 0;
  std::optional<std::uint32_t> guard;
  friend bool operator==(const PbConstraint&, const PbConstraint&) = default;
};

class BooleanModel {
 public:
  explicit BooleanModel(Instance source);

  std::uint32_t add_var(BoolVar v);
  void add(PbConstraint c);

  std::size_t var_count() const { return vars_.size(); }
  const BoolVar& var(std::uint32_t i) const { return vars_[i]; }
  std::span<const BoolVar> vars() const { return vars_; }
  std::span<const PbConstraint> constraints() const { return constraints_; }
  std::optional<std::uint32_t> find(const std::string& name) const;

  /// x_{s,u}, absent when u is not authorised for s.
  std::optional<std::uint32_t> x(std::size_t s, std::size_t u) const;
  /// M_{s,t}; PBPB only.
  std::optional<std::uint32_t> m(std::size_t s, std::size_t t) const;
  bool has_pattern_vars() const { return !m_index_.empty(); }

  const Instance& source() const { return source_; }

 private:
  Instance source_;
  std::vector<BoolVar> vars_;
  std::vector<PbConstraint> constraints_;
  std::unordered_map<std::string, std::uint32_t> by_name_;
  std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> x_index_;
  std::vector<std::uint32_t> m_index_;
};

struct EncodeOptions {
  /// Emit the optional transitivity rows of the pattern encoding.
  bool transitivity = true;
  /// AtMost(r, T) over M uses one clause per (r+1)-subset of T while the
  /// subset count stays at or below this; representatives otherwise.
  std::uint64_t subset_threshold = 1000;
};

BooleanModel encode_udpb(const Instance& inst);
BooleanModel encode_pbpb(const Instance& inst, const EncodeOptions& opts = {});

using BoolAssignment = std::vector<bool>;

bool satisfies(const PbConstraint& c, const BoolAssignment& a);
bool satisfies(const BooleanModel& m, const BoolAssignment& a);
/// Index of the first unsatisfied row.
std::optional<std::size_t> first_violated(const BooleanModel& m, const BoolAssignment& a);

/// x from the plan, M from its pattern, auxiliaries by their definitions.
/// Throws InvariantViolation when the plan uses an unauthorised user.
BoolAssignment induced_assignment(const Plan& plan, const BooleanModel& m);

/// Reads the plan off the x variables. Throws unless every step has exactly
/// one true x.
Plan decode(const BoolAssignment& a, const BooleanModel& m);

// ---------------------------------------------------------------------------
// Constraint-satisfaction model

struct CsVar {
  std::string name;
  std::vector<std::uint32_t> domain;
};

enum class CsKind {
  kEq,               // vars[0] == vars[1]
  kNeq,              // vars[0] != vars[1]
  kNotAllDifferent,  // some two of vars share a value
  kAtMostDistinct,   // |{vars}| <= bound
  kAtLeastDistinct,  // |{vars}| >= bound
  kAtLeastOne,       // some of vars (0/1 selectors) equals 1
  kImpliesNotValue,  // vars[0] != bound
};

struct CsConstraint {
  CsKind kind = CsKind::kEq;
  std::vector<std::uint32_t> vars;
  std::int64_t bound = 0;
  /// Selector variable that must equal 1 for the row to apply.
  std::optional<std::uint32_t> guard;
};

/// Variables 0..k-1 are y_s; selectors follow.
struct CsModel {
  std::size_t steps = 0;
  std::vector<CsVar> vars;
  std::vector<CsConstraint> constraints;
};

std::string kind_name(CsKind kind);

CsModel encode_cs(const Instance& inst, const EncodeOptions& opts = {});

bool cs_satisfied(const CsConstraint& c, std::span<const std::uint32_t> values);
/// Also checks every value against its domain.
bool cs_satisfied(const CsModel& m, std::span<const std::uint32_t> values);

/// y from the plan, selectors set the way induced_assignment sets them.
std::vector<std::uint32_t> induced_values(const Plan& plan, const CsModel& m,
                                          const Instance& inst);

Plan decode(std::span<const std::uint32_t> values, const CsModel& m);

// ---------------------------------------------------------------------------
// Emission

/// OPB with 1-based `x<i>` names. Guarded rows are linearised with a big-M
/// coefficient on the guard.
void emit_opb(const BooleanModel& m, std::ostream& out);

/// Clauses over model variables 1..V followed by counter auxiliaries.
struct Cnf {
  std::size_t vars = 0;
  std::vector<std::vector<int>> clauses;
};

/// Sequential-counter compilation of every row. Rows must have unit
/// coefficients; guards become an extra negative literal in each clause.
Cnf compile_cnf(const BooleanModel& m);

void emit_dimacs(const BooleanModel& m, std::ostream& out);
/// Sidecar: one `name index` line per model variable (1-based).
void emit_var_map(const BooleanModel& m, std::ostream& out);
void emit_cs_json(const CsModel& m, std::ostream& out);

}  // namespace wsp

#endif  // WSP_ENCODE_HPP_
