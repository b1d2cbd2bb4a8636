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

#ifndef WSP_ABSORPTION_HPP_
#define WSP_ABSORPTION_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "wsp/core.hpp"
#include "wsp/patterns.hpp"

namespace wsp {

/// Disjunctive set of authorisation functions valid under one pattern. An
/// empty list authorises no plan of that pattern.
struct PAuthorisationFamily {
  std::vector<AuthorisationFunction> functions;

  std::size_t size() const { return functions.size(); }
  bool authorises(const Plan& plan) const;
};

/// Per-pattern family of a single catalogue constraint: one function for UI
/// constraints and SUAL, d for WL, two for ADA.
PAuthorisationFamily family_for_constraint(const Constraint& c,
                                           const Pattern& p, std::size_t k,
                                           std::size_t n);

/// Pairwise step-wise meets; products with an empty step are dropped.
PAuthorisationFamily intersect_families(const PAuthorisationFamily& f1,
                                        const PAuthorisationFamily& f2);

/// Same function sets, ignoring order and duplicates.
bool same_functions(const PAuthorisationFamily& a,
                    const PAuthorisationFamily& b);

/// A constraint outside the catalogue, given only by its scope and a
/// predicate over plans. The predicate may only read steps of the scope.
struct PredicateConstraint {
  std::string name;
  StepMask scope = 0;
  std::function<bool(const Plan&)> holds;
};

/// Size limit for the generic per-scope-assignment absorber.
struct GenericAbsorberLimits {
  std::uint64_t max_scope_assignments = 100000;
};

/// Generic absorber: one function per satisfying assignment of the scope that
/// is consistent with `p`, pinning each scope step to its user. Throws
/// InvariantViolation when n^|T| exceeds the limit.
PAuthorisationFamily generic_family(const PredicateConstraint& c,
                                    const Pattern& p, std::size_t k,
                                    std::size_t n,
                                    const GenericAbsorberLimits& limits = {});

/// The map pattern -> p-authorisation family. It starts from a
/// pattern-independent base family and intersects in absorbed constraints.
/// Families are computed on demand and memoised by canonical pattern; the
/// memo is safe for concurrent readers and writers.
class AuthorisationFamily {
 public:
  AuthorisationFamily(std::size_t k, std::size_t n, PAuthorisationFamily base);
  AuthorisationFamily(const AuthorisationFamily& other);
  AuthorisationFamily& operator=(const AuthorisationFamily&) = delete;

  void absorb(const Constraint& c);
  void absorb(PredicateConstraint c, GenericAbsorberLimits limits = {});

  /// Family at pattern p (p must cover all k steps).
  std::shared_ptr<const PAuthorisationFamily> family_for(const Pattern& p) const;

  std::size_t steps() const { return k_; }
  std::size_t users() const { return n_; }
  std::size_t memo_capacity() const { return memo_capacity_; }
  void set_memo_capacity(std::size_t cap) { memo_capacity_ = cap; }

 private:
  PAuthorisationFamily compute(const Pattern& p) const;

  std::size_t k_;
  std::size_t n_;
  // Base family already met with every pattern-independent constraint.
  PAuthorisationFamily fixed_;
  std::vector<Constraint> pattern_dependent_;
  std::vector<std::pair<PredicateConstraint, GenericAbsorberLimits>> generic_;
  std::size_t memo_capacity_ = 1 << 16;
  mutable std::shared_mutex memo_mutex_;
  mutable std::map<std::vector<std::uint8_t>,
                   std::shared_ptr<const PAuthorisationFamily>>
      memo_;
};

/// WSP-CDA instance: authorisation family plus the constraints left in C.
struct CdaInstance {
  std::size_t k = 0;
  std::size_t n = 0;
  AuthorisationFamily family;
  std::vector<Constraint> residual;
};

/// Folds every non-UI constraint into the family; UI constraints stay
/// residual. The base authorisation enters as a singleton family.
CdaInstance absorb(const Instance& inst);

/// Authorised under the family at the plan's own pattern.
bool plan_authorised_cda(const Plan& plan, const AuthorisationFamily& fam);
bool is_valid_cda(const Plan& plan, const CdaInstance& inst);

/// Branching-factor bounds for one constraint.
struct BranchingReport {
  ConstraintKind kind;
  /// Catalogue bound: 1 for UI and SUAL, 2 for ADA, d for WL.
  std::uint64_t bound = 1;
  /// Symbolic form of the catalogue bound ("1", "2", "d=3").
  std::string symbolic;
  /// Generic bound from scope size t: n^t (saturating).
  std::uint64_t scope_bound = 0;
  std::string scope_symbolic;
  /// Generic bound from the number t of users the constraint names:
  /// (k+1)^t (saturating).
  std::uint64_t user_bound = 0;
  std::string user_symbolic;
  /// Largest family seen over the enumerated patterns.
  std::uint64_t max_family_size_observed = 0;
  /// Patterns examined for the observation (capped).
  std::uint64_t patterns_examined = 0;
};

BranchingReport branching_bound(const Constraint& c, std::size_t k,
                                std::size_t n,
                                std::uint64_t pattern_cap = 5000);

}  // namespace wsp

#endif  // WSP_ABSORPTION_HPP_
