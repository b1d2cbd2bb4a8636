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

#ifndef WSP_CORE_HPP_
#define WSP_CORE_HPP_

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace wsp {

/// Raised when an input breaks a structural invariant (index out of range,
/// malformed constraint, non-canonical pattern, ...).
class InvariantViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct StepId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(StepId, StepId) = default;
};

struct UserId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(UserId, UserId) = default;
};

/// Steps are dense indices below 64, so a set of steps is one machine word.
using StepMask = std::uint64_t;
inline constexpr std::size_t kMaxSteps = 64;

constexpr StepMask step_bit(std::size_t s) { return StepMask{1} << s; }
constexpr StepMask step_bit(StepId s) { return step_bit(s.value); }

StepMask step_mask(std::initializer_list<std::uint32_t> steps);
StepMask step_mask(std::span<const std::uint32_t> steps);
std::vector<std::uint32_t> steps_of(StepMask mask);

template <class F>
void for_each_step(StepMask mask, F&& f) {
  while (mask != 0) {
    const auto s = static_cast<std::size_t>(std::countr_zero(mask));
    f(s);
    mask &= mask - 1;
  }
}

/// Growable bitset over user indices. Sets carry no fixed universe; the
/// missing high words read as zero, so sets built for different n compare
/// and intersect consistently.
class UserSet {
 public:
  UserSet() = default;
  UserSet(std::initializer_list<std::uint32_t> users);

  static UserSet full(std::size_t n);
  static UserSet from_indices(std::span<const std::uint32_t> users);

  bool contains(std::size_t u) const {
    const std::size_t w = u >> 6;
    return w < words_.size() && ((words_[w] >> (u & 63)) & 1U) != 0;
  }
  bool contains(UserId u) const { return contains(u.value); }

  void insert(std::size_t u);
  void erase(std::size_t u);

  std::size_t count() const;
  bool empty() const;
  bool intersects(const UserSet& other) const;
  bool subset_of(const UserSet& other) const;
  /// Largest member plus one, or zero for the empty set.
  std::size_t bound() const;

  UserSet& operator&=(const UserSet& other);
  UserSet& operator|=(const UserSet& other);
  /// Set difference.
  UserSet& operator-=(const UserSet& other);
  friend UserSet operator&(UserSet a, const UserSet& b) { return a &= b; }
  friend UserSet operator|(UserSet a, const UserSet& b) { return a |= b; }
  friend UserSet operator-(UserSet a, const UserSet& b) { return a -= b; }

  /// Users of [0, n) not in this set.
  UserSet complement(std::size_t n) const;

  std::vector<std::uint32_t> to_vector() const;
  std::span<const std::uint64_t> words() const { return words_; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const UserSet& a, const UserSet& b);

 private:
  void trim();
  std::vector<std::uint64_t> words_;
};

/// A : S -> 2^U, stored as one user set per step.
class AuthorisationFunction {
 public:
  AuthorisationFunction() = default;
  explicit AuthorisationFunction(std::vector<UserSet> per_step)
      : per_step_(std::move(per_step)) {}

  static AuthorisationFunction full(std::size_t k, std::size_t n);
  static AuthorisationFunction none(std::size_t k);

  std::size_t steps() const { return per_step_.size(); }
  const UserSet& operator[](std::size_t s) const { return per_step_[s]; }
  UserSet& operator[](std::size_t s) { return per_step_[s]; }
  std::span<const UserSet> per_step() const { return per_step_; }

  /// True when some step has no authorised user at all.
  bool has_empty_step() const;

  friend bool operator==(const AuthorisationFunction&,
                         const AuthorisationFunction&) = default;

 private:
  std::vector<UserSet> per_step_;
};

/// Step-wise intersection.
AuthorisationFunction meet(const AuthorisationFunction& a,
                           const AuthorisationFunction& b);

/// Display names are 1-based ("s1", "u1"); file indices are 0-based.
std::string step_name(std::size_t s);
std::string user_name(std::size_t u);

class Plan {
 public:
  Plan() = default;
  explicit Plan(std::vector<UserId> assignment)
      : assignment_(std::move(assignment)) {}
  static Plan from_indices(std::span<const std::uint32_t> users);
  static Plan from_indices(std::initializer_list<std::uint32_t> users);

  std::size_t size() const { return assignment_.size(); }
  UserId operator[](std::size_t s) const { return assignment_[s]; }
  UserId at(StepId s) const;
  void assign(std::size_t s, UserId u) { assignment_[s] = u; }
  std::span<const UserId> assignment() const { return assignment_; }
  std::vector<std::uint32_t> indices() const;

  friend auto operator<=>(const Plan&, const Plan&) = default;

 private:
  std::vector<UserId> assignment_;
};

struct BindingOfDuty {
  StepId first;
  StepId second;
  friend bool operator==(const BindingOfDuty&, const BindingOfDuty&) = default;
};

struct SeparationOfDuty {
  StepId first;
  StepId second;
  friend bool operator==(const SeparationOfDuty&,
                         const SeparationOfDuty&) = default;
};

/// At most r distinct users over the scope.
struct AtMost {
  std::uint32_t r = 0;
  StepMask scope = 0;
  friend bool operator==(const AtMost&, const AtMost&) = default;
};

/// At least r distinct users over the scope.
struct AtLeast {
  std::uint32_t r = 0;
  StepMask scope = 0;
  friend bool operator==(const AtLeast&, const AtLeast&) = default;
};

/// Super-user at-least: more than h distinct users on the scope, or only
/// super users on the scope.
struct SuperUserAtLeast {
  StepMask scope = 0;
  std::uint32_t h = 0;
  UserSet supers;
  friend bool operator==(const SuperUserAtLeast&,
                         const SuperUserAtLeast&) = default;
};

/// Wang-Li: the whole scope is performed within one of the disjoint teams.
struct WangLi {
  StepMask scope = 0;
  std::vector<UserSet> teams;
  friend bool operator==(const WangLi&, const WangLi&) = default;
};

/// Assignment-dependent authorisation: user of `first` in `if_users`
/// implies user of `second` in `then_users`.
struct AssignmentDependent {
  StepId first;
  StepId second;
  UserSet if_users;
  UserSet then_users;
  friend bool operator==(const AssignmentDependent&,
                         const AssignmentDependent&) = default;
};

using Constraint = std::variant<BindingOfDuty, SeparationOfDuty, AtMost,
                                AtLeast, SuperUserAtLeast, WangLi,
                                AssignmentDependent>;

enum class ConstraintKind { kBoD, kSoD, kAtMost, kAtLeast, kSual, kWl, kAda };

ConstraintKind kind_of(const Constraint& c);
/// Short lower-case tag used in files ("sod", "at_most", ...).
std::string kind_name(ConstraintKind kind);
/// Human readable form with display names, e.g. "SoD(s1,s2)".
std::string describe(const Constraint& c);

/// Steps the constraint talks about.
StepMask scope_of(const Constraint& c);

/// User-independence: BoD, SoD, AtMost, AtLeast.
bool is_ui(const Constraint& c);

/// Throws InvariantViolation unless `c` is well formed for k steps, n users.
void validate(const Constraint& c, std::size_t k, std::size_t n);

/// Plan-level semantics.
bool is_eligible(const Plan& plan, const Constraint& c);
bool is_authorised(const Plan& plan, const AuthorisationFunction& a);

/// Number of distinct users the plan puts on `scope`.
std::size_t distinct_users(const Plan& plan, StepMask scope);

class Instance {
 public:
  Instance() = default;
  /// Validates every index and constraint against (k, n).
  Instance(std::size_t k, std::size_t n, AuthorisationFunction auth,
           std::vector<Constraint> constraints);

  std::size_t steps() const { return k_; }
  std::size_t users() const { return n_; }
  const AuthorisationFunction& auth() const { return auth_; }
  std::span<const Constraint> constraints() const { return constraints_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t k_ = 0;
  std::size_t n_ = 0;
  AuthorisationFunction auth_;
  std::vector<Constraint> constraints_;
};

bool is_valid(const Plan& plan, const Instance& inst);

/// First violated authorisation or constraint as text, or empty when valid.
std::string first_violation(const Plan& plan, const Instance& inst);

}  // namespace wsp

#endif  // WSP_CORE_HPP_
