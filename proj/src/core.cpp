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

#include "wsp/core.hpp"

#include <algorithm>
#include <sstream>

namespace wsp {

StepMask step_mask(std::initializer_list<std::uint32_t> steps) {
  return step_mask(std::span<const std::uint32_t>(steps.begin(), steps.size()));
}

StepMask step_mask(std::span<const std::uint32_t> steps) {
  StepMask mask = 0;
  for (auto s : steps) {
    if (s >= kMaxSteps) {
      throw InvariantViolation("step index " + std::to_string(s) +
                               " exceeds the 64-step limit");
    }
    mask |= step_bit(s);
  }
  return mask;
}

std::vector<std::uint32_t> steps_of(StepMask mask) {
  std::vector<std::uint32_t> out;
  for_each_step(mask, [&](std::size_t s) {
    out.push_back(static_cast<std::uint32_t>(s));
  });
  return out;
}

// ---------------------------------------------------------------------------
// UserSet

UserSet::UserSet(std::initializer_list<std::uint32_t> users) {
  for (auto u : users) insert(u);
}

UserSet UserSet::full(std::size_t n) {
  UserSet s;
  s.words_.assign((n + 63) / 64, ~std::uint64_t{0});
  if (n % 64 != 0) s.words_.back() = (std::uint64_t{1} << (n % 64)) - 1;
  return s;
}

UserSet UserSet::from_indices(std::span<const std::uint32_t> users) {
  UserSet s;
  for (auto u : users) s.insert(u);
  return s;
}

void UserSet::insert(std::size_t u) {
  const std::size_t w = u >> 6;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] |= std::uint64_t{1} << (u & 63);
}

void UserSet::erase(std::size_t u) {
  const std::size_t w = u >> 6;
  if (w < words_.size()) {
    words_[w] &= ~(std::uint64_t{1} << (u & 63));
    trim();
  }
}

std::size_t UserSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool UserSet::empty() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

bool UserSet::intersects(const UserSet& other) const {
  const std::size_t m = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < m; ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

bool UserSet::subset_of(const UserSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint64_t o = i < other.words_.size() ? other.words_[i] : 0;
    if ((words_[i] & ~o) != 0) return false;
  }
  return true;
}

std::size_t UserSet::bound() const {
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (words_[i] != 0) return i * 64 + 64 - std::countl_zero(words_[i]);
  }
  return 0;
}

UserSet& UserSet::operator&=(const UserSet& other) {
  if (words_.size() > other.words_.size()) words_.resize(other.words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  trim();
  return *this;
}

UserSet& UserSet::operator|=(const UserSet& other) {
  if (words_.size() < other.words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t i = 0; i < other.words_.size(); ++i) {
    words_[i] |= other.words_[i];
  }
  return *this;
}

UserSet& UserSet::operator-=(const UserSet& other) {
  const std::size_t m = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < m; ++i) words_[i] &= ~other.words_[i];
  trim();
  return *this;
}

UserSet UserSet::complement(std::size_t n) const {
  return full(n) -= *this;
}

std::vector<std::uint32_t> UserSet::to_vector() const {
  std::vector<std::uint32_t> out;
  for_each([&](std::uint32_t u) { out.push_back(u); });
  return out;
}

void UserSet::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

bool operator==(const UserSet& a, const UserSet& b) {
  const std::size_t m = std::max(a.words_.size(), b.words_.size());
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint64_t x = i < a.words_.size() ? a.words_[i] : 0;
    const std::uint64_t y = i < b.words_.size() ? b.words_[i] : 0;
    if (x != y) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// AuthorisationFunction / Plan

AuthorisationFunction AuthorisationFunction::full(std::size_t k,
                                                  std::size_t n) {
  return AuthorisationFunction(std::vector<UserSet>(k, UserSet::full(n)));
}

AuthorisationFunction AuthorisationFunction::none(std::size_t k) {
  return AuthorisationFunction(std::vector<UserSet>(k));
}

bool AuthorisationFunction::has_empty_step() const {
  return std::any_of(per_step_.begin(), per_step_.end(),
                     [](const UserSet& s) { return s.empty(); });
}

AuthorisationFunction meet(const AuthorisationFunction& a,
                           const AuthorisationFunction& b) {
  if (a.steps() != b.steps()) {
    throw InvariantViolation("meet of authorisation functions over different step sets");
  }
  std::vector<UserSet> out;
  out.reserve(a.steps());
  for (std::size_t s = 0; s < a.steps(); ++s) out.push_back(a[s] & b[s]);
  return AuthorisationFunction(std::move(out));
}

Plan Plan::from_indices(std::span<const std::uint32_t> users) {
  std::vector<UserId> v;
  v.reserve(users.size());
  for (auto u : users) v.push_back(UserId{u});
  return Plan(std::move(v));
}

std::string step_name(std::size_t s) { return "s" + std::to_string(s + 1); }
std::string user_name(std::size_t u) { return "u" + std::to_string(u + 1); }

Plan Plan::from_indices(std::initializer_list<std::uint32_t> users) {
  return from_indices(std::span<const std::uint32_t>(users.begin(), users.size()));
}

UserId Plan::at(StepId s) const {
  if (s.value >= assignment_.size()) {
    throw InvariantViolation("step " + step_name(s.value) + " is outside the plan");
  }
  return assignment_[s.value];
}

std::vector<std::uint32_t> Plan::indices() const {
  std::vector<std::uint32_t> out;
  out.reserve(assignment_.size());
  for (auto u : assignment_) out.push_back(u.value);
  return out;
}

// ---------------------------------------------------------------------------
// Constraints

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string mask_text(StepMask mask) {
  std::string out = "{";
  bool first = true;
  for_each_step(mask, [&](std::size_t s) {
    if (!first) out += ',';
    out += step_name(s);
    first = false;
  });
  return out + '}';
}

std::string users_text(const UserSet& users) {
  std::string out = "{";
  bool first = true;
  users.for_each([&](std::uint32_t u) {
    if (!first) out += ',';
    out += user_name(u);
    first = false;
  });
  return out + '}';
}

void check_step(StepId s, std::size_t k, const char* what) {
  if (s.value >= k) {
    throw InvariantViolation(std::string(what) + ": step " + step_name(s.value) + " out of range (k=" +
                             std::to_string(k) + ")");
  }
}

void check_pair(StepId a, StepId b, std::size_t k, const char* what) {
  check_step(a, k, what);
  check_step(b, k, what);
  if (a == b) {
    throw InvariantViolation(std::string(what) + ": steps must differ");
  }
}

void check_scope(StepMask scope, std::size_t k, const char* what) {
  if (k < kMaxSteps && (scope >> k) != 0) {
    throw InvariantViolation(std::string(what) + ": scope " + mask_text(scope) +
                             " exceeds k=" + std::to_string(k));
  }
}

void check_users(const UserSet& users, std::size_t n, const char* what) {
  if (users.bound() > n) {
    throw InvariantViolation(std::string(what) + ": user " + user_name(users.bound() - 1) +
                             " out of range (n=" + std::to_string(n) + ")");
  }
}

void check_counting(std::uint32_t r, StepMask scope, std::size_t k,
                    const char* what) {
  check_scope(scope, k, what);
  const auto size = static_cast<std::uint32_t>(std::popcount(scope));
  if (size < 2) {
    throw InvariantViolation(std::string(what) +
                             ": scope must contain at least two steps");
  }
  if (r < 1 || r > size) {
    throw InvariantViolation(std::string(what) + ": r=" + std::to_string(r) +
                             " must lie in [1, |T|=" + std::to_string(size) +
                             "]");
  }
}

bool user_in(const UserSet& set, UserId u) { return set.contains(u); }

}  // namespace

ConstraintKind kind_of(const Constraint& c) {
  return std::visit(
      Overloaded{
          [](const BindingOfDuty&) { return ConstraintKind::kBoD; },
          [](const SeparationOfDuty&) { return ConstraintKind::kSoD; },
          [](const AtMost&) { return ConstraintKind::kAtMost; },
          [](const AtLeast&) { return ConstraintKind::kAtLeast; },
          [](const SuperUserAtLeast&) { return ConstraintKind::kSual; },
          [](const WangLi&) { return ConstraintKind::kWl; },
          [](const AssignmentDependent&) { return ConstraintKind::kAda; },
      },
      c);
}

std::string kind_name(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kBoD: return "bod";
    case ConstraintKind::kSoD: return "sod";
    case ConstraintKind::kAtMost: return "at_most";
    case ConstraintKind::kAtLeast: return "at_least";
    case ConstraintKind::kSual: return "sual";
    case ConstraintKind::kWl: return "wl";
    case ConstraintKind::kAda: return "ada";
  }
  return "?";
}

std::string describe(const Constraint& c) {
  return std::visit(
      Overloaded{
          [](const BindingOfDuty& b) {
            return "BoD(" + step_name(b.first.value) + "," + step_name(b.second.value) + ")";
          },
          [](const SeparationOfDuty& s) {
            return "SoD(" + step_name(s.first.value) + "," + step_name(s.second.value) + ")";
          },
          [](const AtMost& a) {
            return "AtMost(" + std::to_string(a.r) + "," + mask_text(a.scope) +
                   ")";
          },
          [](const AtLeast& a) {
            return "AtLeast(" + std::to_string(a.r) + "," +
                   mask_text(a.scope) + ")";
          },
          [](const SuperUserAtLeast& s) {
            return "SUAL(" + mask_text(s.scope) + ",h=" + std::to_string(s.h) +
                   "," + users_text(s.supers) + ")";
          },
          [](const WangLi& w) {
            std::string out = "WL(" + mask_text(w.scope);
            for (const auto& t : w.teams) out += "," + users_text(t);
            return out + ")";
          },
          [](const AssignmentDependent& a) {
            return "ADA(" + step_name(a.first.value) + "," + step_name(a.second.value) + "," +
                   users_text(a.if_users) + "," + users_text(a.then_users) +
                   ")";
          },
      },
      c);
}

StepMask scope_of(const Constraint& c) {
  return std::visit(
      Overloaded{
          [](const BindingOfDuty& b) {
            return step_bit(b.first) | step_bit(b.second);
          },
          [](const SeparationOfDuty& s) {
            return step_bit(s.first) | step_bit(s.second);
          },
          [](const AtMost& a) { return a.scope; },
          [](const AtLeast& a) { return a.scope; },
          [](const SuperUserAtLeast& s) { return s.scope; },
          [](const WangLi& w) { return w.scope; },
          [](const AssignmentDependent& a) {
            return step_bit(a.first) | step_bit(a.second);
          },
      },
      c);
}

bool is_ui(const Constraint& c) {
  switch (kind_of(c)) {
    case ConstraintKind::kBoD:
    case ConstraintKind::kSoD:
    case ConstraintKind::kAtMost:
    case ConstraintKind::kAtLeast:
      return true;
    default:
      return false;
  }
}

void validate(const Constraint& c, std::size_t k, std::size_t n) {
  std::visit(
      Overloaded{
          [&](const BindingOfDuty& b) { check_pair(b.first, b.second, k, "BoD"); },
          [&](const SeparationOfDuty& s) {
            check_pair(s.first, s.second, k, "SoD");
          },
          [&](const AtMost& a) { check_counting(a.r, a.scope, k, "AtMost"); },
          [&](const AtLeast& a) { check_counting(a.r, a.scope, k, "AtLeast"); },
          [&](const SuperUserAtLeast& s) {
            check_scope(s.scope, k, "SUAL");
            if (std::popcount(s.scope) < 2) {
              throw InvariantViolation("SUAL: scope must contain at least two steps");
            }
            if (s.h < 1) throw InvariantViolation("SUAL: h must be positive");
            if (s.supers.empty()) {
              throw InvariantViolation("SUAL: super-user set must be nonempty");
            }
            check_users(s.supers, n, "SUAL");
          },
          [&](const WangLi& w) {
            check_scope(w.scope, k, "WL");
            if (std::popcount(w.scope) < 2) {
              throw InvariantViolation("WL: scope must contain at least two steps");
            }
            if (w.teams.empty()) throw InvariantViolation("WL: needs at least one team");
            UserSet seen;
            for (const auto& t : w.teams) {
              check_users(t, n, "WL");
              if (seen.intersects(t)) {
                throw InvariantViolation("WL: teams must be pairwise disjoint");
              }
              seen |= t;
            }
          },
          [&](const AssignmentDependent& a) {
            check_pair(a.first, a.second, k, "ADA");
            check_users(a.if_users, n, "ADA");
            check_users(a.then_users, n, "ADA");
          },
      },
      c);
}

std::size_t distinct_users(const Plan& plan, StepMask scope) {
  std::vector<std::uint32_t> seen;
  for_each_step(scope, [&](std::size_t s) {
    const auto u = plan.at(StepId{static_cast<std::uint32_t>(s)}).value;
    if (std::find(seen.begin(), seen.end(), u) == seen.end()) seen.push_back(u);
  });
  return seen.size();
}

bool is_eligible(const Plan& plan, const Constraint& c) {
  return std::visit(
      Overloaded{
          [&](const BindingOfDuty& b) {
            return plan.at(b.first) == plan.at(b.second);
          },
          [&](const SeparationOfDuty& s) {
            return plan.at(s.first) != plan.at(s.second);
          },
          [&](const AtMost& a) { return distinct_users(plan, a.scope) <= a.r; },
          [&](const AtLeast& a) { return distinct_users(plan, a.scope) >= a.r; },
          [&](const SuperUserAtLeast& s) {
            if (distinct_users(plan, s.scope) > s.h) return true;
            bool all_super = true;
            for_each_step(s.scope, [&](std::size_t t) {
              all_super = all_super &&
                          user_in(s.supers, plan.at(StepId{static_cast<std::uint32_t>(t)}));
            });
            return all_super;
          },
          [&](const WangLi& w) {
            for (const auto& team : w.teams) {
              bool inside = true;
              for_each_step(w.scope, [&](std::size_t t) {
                inside = inside &&
                         user_in(team, plan.at(StepId{static_cast<std::uint32_t>(t)}));
              });
              if (inside) return true;
            }
            return false;
          },
          [&](const AssignmentDependent& a) {
            return !user_in(a.if_users, plan.at(a.first)) ||
                   user_in(a.then_users, plan.at(a.second));
          },
      },
      c);
}

bool is_authorised(const Plan& plan, const AuthorisationFunction& a) {
  if (plan.size() != a.steps()) {
    throw InvariantViolation("plan covers " + std::to_string(plan.size()) +
                             " steps, authorisation covers " +
                             std::to_string(a.steps()));
  }
  for (std::size_t s = 0; s < plan.size(); ++s) {
    if (!a[s].contains(plan[s])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Instance

Instance::Instance(std::size_t k, std::size_t n, AuthorisationFunction auth,
                   std::vector<Constraint> constraints)
    : k_(k), n_(n), auth_(std::move(auth)), constraints_(std::move(constraints)) {
  if (k_ > kMaxSteps) {
    throw InvariantViolation("k=" + std::to_string(k_) + " exceeds the " +
                             std::to_string(kMaxSteps) + "-step limit");
  }
  if (auth_.steps() != k_) {
    throw InvariantViolation("authorisation lists cover " +
                             std::to_string(auth_.steps()) + " steps, expected " +
                             std::to_string(k_));
  }
  for (std::size_t s = 0; s < k_; ++s) {
    if (auth_[s].bound() > n_) {
      throw InvariantViolation("authorisation of " + step_name(s) + " names user " +
                               user_name(auth_[s].bound() - 1) +
                               " out of range (n=" + std::to_string(n_) + ")");
    }
  }
  for (const auto& c : constraints_) validate(c, k_, n_);
}

namespace {

void check_plan_shape(const Plan& plan, const Instance& inst) {
  if (plan.size() != inst.steps()) {
    throw InvariantViolation("plan has " + std::to_string(plan.size()) +
                             " steps, instance has " +
                             std::to_string(inst.steps()));
  }
  for (std::size_t s = 0; s < plan.size(); ++s) {
    if (plan[s].value >= inst.users()) {
      throw InvariantViolation("plan assigns " + user_name(plan[s].value) + " to " + step_name(s) +
                               " but n=" + std::to_string(inst.users()));
    }
  }
}

}  // namespace

bool is_valid(const Plan& plan, const Instance& inst) {
  check_plan_shape(plan, inst);
  if (!is_authorised(plan, inst.auth())) return false;
  return std::all_of(inst.constraints().begin(), inst.constraints().end(),
                     [&](const Constraint& c) { return is_eligible(plan, c); });
}

std::string first_violation(const Plan& plan, const Instance& inst) {
  check_plan_shape(plan, inst);
  for (const auto& c : inst.constraints()) {
    if (!is_eligible(plan, c)) return "constraint " + describe(c);
  }
  for (std::size_t s = 0; s < plan.size(); ++s) {
    if (!inst.auth()[s].contains(plan[s])) {
      return "authorisation: " + user_name(plan[s].value) + " is not authorised for " +
             step_name(s);
    }
  }
  return {};
}

}  // namespace wsp
