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

#include "wsp/absorption.hpp"

#include <algorithm>
#include <mutex>

namespace wsp {

bool PAuthorisationFamily::authorises(const Plan& plan) const {
  return std::any_of(functions.begin(), functions.end(),
                     [&](const AuthorisationFunction& f) {
                       return is_authorised(plan, f);
                     });
}

PAuthorisationFamily family_for_constraint(const Constraint& c,
                                           const Pattern& p, std::size_t k,
                                           std::size_t n) {
  PAuthorisationFamily out;
  if (is_ui(c)) {
    out.functions.push_back(satisfies(p, c) ? AuthorisationFunction::full(k, n)
                                            : AuthorisationFunction::none(k));
    return out;
  }
  if (const auto* s = std::get_if<SuperUserAtLeast>(&c)) {
    auto f = AuthorisationFunction::full(k, n);
    // Restricting only the scope steps; steps outside T are unconstrained.
    if (blocks_touching(p, s->scope) <= s->h) {
      for_each_step(s->scope, [&](std::size_t t) { f[t] &= s->supers; });
    }
    out.functions.push_back(std::move(f));
    return out;
  }
  if (const auto* w = std::get_if<WangLi>(&c)) {
    for (const auto& team : w->teams) {
      auto f = AuthorisationFunction::full(k, n);
      for_each_step(w->scope, [&](std::size_t t) { f[t] &= team; });
      out.functions.push_back(std::move(f));
    }
    return out;
  }
  const auto& a = std::get<AssignmentDependent>(c);
  auto when_in = AuthorisationFunction::full(k, n);
  when_in[a.first.value] &= a.if_users;
  when_in[a.second.value] &= a.then_users;
  auto when_out = AuthorisationFunction::full(k, n);
  when_out[a.first.value] -= a.if_users;
  out.functions.push_back(std::move(when_in));
  out.functions.push_back(std::move(when_out));
  return out;
}

PAuthorisationFamily intersect_families(const PAuthorisationFamily& f1,
                                        const PAuthorisationFamily& f2) {
  PAuthorisationFamily out;
  out.functions.reserve(f1.size() * f2.size());
  for (const auto& a : f1.functions) {
    for (const auto& b : f2.functions) {
      auto m = meet(a, b);
      if (!m.has_empty_step()) out.functions.push_back(std::move(m));
    }
  }
  return out;
}

bool same_functions(const PAuthorisationFamily& a,
                    const PAuthorisationFamily& b) {
  auto covered = [](const PAuthorisationFamily& x,
                    const PAuthorisationFamily& y) {
    return std::all_of(x.functions.begin(), x.functions.end(),
                       [&](const AuthorisationFunction& f) {
                         return std::find(y.functions.begin(),
                                          y.functions.end(),
                                          f) != y.functions.end();
                       });
  };
  return covered(a, b) && covered(b, a);
}

PAuthorisationFamily generic_family(const PredicateConstraint& c,
                                    const Pattern& p, std::size_t k,
                                    std::size_t n,
                                    const GenericAbsorberLimits& limits) {
  if (p.size() != k) throw InvariantViolation("pattern does not cover all steps");
  const auto scope = steps_of(c.scope);
  std::uint64_t assignments = 1;
  for (std::size_t i = 0; i < scope.size(); ++i) {
    if (assignments > limits.max_scope_assignments / std::max<std::size_t>(n, 1)) {
      assignments = limits.max_scope_assignments + 1;
      break;
    }
    assignments *= n;
  }
  if (assignments > limits.max_scope_assignments) {
    throw InvariantViolation(
        "generic absorption of '" + c.name + "' needs n^|T| = " +
        std::to_string(n) + "^" + std::to_string(scope.size()) +
        " scope assignments, above the limit of " +
        std::to_string(limits.max_scope_assignments));
  }

  // Distinct blocks of p met by the scope, in first-seen order.
  std::vector<std::uint8_t> labels;
  for (auto t : scope) {
    if (std::find(labels.begin(), labels.end(), p[t]) == labels.end()) {
      labels.push_back(p[t]);
    }
  }

  PAuthorisationFamily out;
  if (labels.size() > n) return out;
  std::vector<std::uint32_t> users(k, 0);
  std::vector<std::uint32_t> chosen(labels.size(), 0);
  std::vector<bool> used(n, false);

  // Injective assignments of users to the scope's blocks, lexicographic.
  std::function<void(std::size_t)> place = [&](std::size_t i) {
    if (i == labels.size()) {
      for (auto t : scope) {
        const auto pos = static_cast<std::size_t>(
            std::find(labels.begin(), labels.end(), p[t]) - labels.begin());
        users[t] = chosen[pos];
      }
      const Plan probe = Plan::from_indices(users);
      if (!c.holds(probe)) return;
      auto f = AuthorisationFunction::full(k, n);
      for (auto t : scope) f[t] = UserSet{users[t]};
      out.functions.push_back(std::move(f));
      return;
    }
    for (std::uint32_t u = 0; u < n; ++u) {
      if (used[u]) continue;
      used[u] = true;
      chosen[i] = u;
      place(i + 1);
      used[u] = false;
    }
  };
  place(0);
  return out;
}

// ---------------------------------------------------------------------------
// AuthorisationFamily

AuthorisationFamily::AuthorisationFamily(std::size_t k, std::size_t n,
                                         PAuthorisationFamily base)
    : k_(k), n_(n), fixed_(std::move(base)) {
  for (const auto& f : fixed_.functions) {
    if (f.steps() != k) {
      throw InvariantViolation("base family function covers the wrong step count");
    }
  }
}

AuthorisationFamily::AuthorisationFamily(const AuthorisationFamily& other)
    : k_(other.k_),
      n_(other.n_),
      fixed_(other.fixed_),
      pattern_dependent_(other.pattern_dependent_),
      generic_(other.generic_),
      memo_capacity_(other.memo_capacity_) {}

void AuthorisationFamily::absorb(const Constraint& c) {
  validate(c, k_, n_);
  const auto kind = kind_of(c);
  if (kind == ConstraintKind::kWl || kind == ConstraintKind::kAda) {
    // Pattern-independent: fold into the fixed part once.
    fixed_ = intersect_families(fixed_, family_for_constraint(c, Pattern{}, k_, n_));
  } else {
    pattern_dependent_.push_back(c);
  }
  std::unique_lock lock(memo_mutex_);
  memo_.clear();
}

void AuthorisationFamily::absorb(PredicateConstraint c,
                                 GenericAbsorberLimits limits) {
  generic_.emplace_back(std::move(c), limits);
  std::unique_lock lock(memo_mutex_);
  memo_.clear();
}

PAuthorisationFamily AuthorisationFamily::compute(const Pattern& p) const {
  PAuthorisationFamily f = fixed_;
  for (const auto& c : pattern_dependent_) {
    if (f.functions.empty()) return f;
    f = intersect_families(f, family_for_constraint(c, p, k_, n_));
  }
  for (const auto& [c, limits] : generic_) {
    if (f.functions.empty()) return f;
    f = intersect_families(f, generic_family(c, p, k_, n_, limits));
  }
  return f;
}

std::shared_ptr<const PAuthorisationFamily> AuthorisationFamily::family_for(
    const Pattern& p) const {
  if (p.size() != k_) {
    throw InvariantViolation("pattern covers " + std::to_string(p.size()) +
                             " steps, family expects " + std::to_string(k_));
  }
  if (pattern_dependent_.empty() && generic_.empty()) {
    std::unique_lock lock(memo_mutex_);
    auto& shared = memo_[{}];
    if (!shared) shared = std::make_shared<const PAuthorisationFamily>(fixed_);
    return shared;
  }
  const std::vector<std::uint8_t> key(p.rgs().begin(), p.rgs().end());
  {
    std::shared_lock lock(memo_mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  auto computed = std::make_shared<const PAuthorisationFamily>(compute(p));
  std::unique_lock lock(memo_mutex_);
  if (memo_.size() < memo_capacity_) memo_.emplace(key, computed);
  return computed;
}

CdaInstance absorb(const Instance& inst) {
  CdaInstance out{inst.steps(), inst.users(),
                  AuthorisationFamily(inst.steps(), inst.users(),
                                      PAuthorisationFamily{{inst.auth()}}),
                  {}};
  for (const auto& c : inst.constraints()) {
    if (is_ui(c)) {
      out.residual.push_back(c);
    } else {
      out.family.absorb(c);
    }
  }
  return out;
}

bool plan_authorised_cda(const Plan& plan, const AuthorisationFamily& fam) {
  return fam.family_for(pattern_of(plan))->authorises(plan);
}

bool is_valid_cda(const Plan& plan, const CdaInstance& inst) {
  if (plan.size() != inst.k) {
    throw InvariantViolation("plan length does not match the instance");
  }
  for (std::size_t s = 0; s < plan.size(); ++s) {
    if (plan[s].value >= inst.n) throw InvariantViolation("plan user out of range");
  }
  if (!plan_authorised_cda(plan, inst.family)) return false;
  return std::all_of(inst.residual.begin(), inst.residual.end(),
                     [&](const Constraint& c) { return is_eligible(plan, c); });
}

// ---------------------------------------------------------------------------
// Branching bounds

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

std::size_t users_named(const Constraint& c) {
  if (const auto* s = std::get_if<SuperUserAtLeast>(&c)) return s->supers.count();
  if (const auto* w = std::get_if<WangLi>(&c)) {
    UserSet all;
    for (const auto& t : w->teams) all |= t;
    return all.count();
  }
  if (const auto* a = std::get_if<AssignmentDependent>(&c)) {
    return (a->if_users | a->then_users).count();
  }
  return 0;
}

}  // namespace

BranchingReport branching_bound(const Constraint& c, std::size_t k,
                                std::size_t n, std::uint64_t pattern_cap) {
  BranchingReport r;
  r.kind = kind_of(c);
  switch (r.kind) {
    case ConstraintKind::kWl: {
      const auto d = std::get<WangLi>(c).teams.size();
      r.bound = d;
      r.symbolic = "d=" + std::to_string(d);
      break;
    }
    case ConstraintKind::kAda:
      r.bound = 2;
      r.symbolic = "2";
      break;
    default:
      r.bound = 1;
      r.symbolic = "1";
      break;
  }
  const auto t_steps = static_cast<std::uint64_t>(std::popcount(scope_of(c)));
  r.scope_bound = saturating_pow(n, t_steps);
  r.scope_symbolic = "n^t=" + std::to_string(n) + "^" + std::to_string(t_steps);
  const auto t_users = users_named(c);
  r.user_bound = saturating_pow(k + 1, t_users);
  r.user_symbolic =
      "(k+1)^t=" + std::to_string(k + 1) + "^" + std::to_string(t_users);

  PatternStream stream(k);
  while (r.patterns_examined < pattern_cap && stream.advance()) {
    ++r.patterns_examined;
    r.max_family_size_observed =
        std::max<std::uint64_t>(r.max_family_size_observed,
                                family_for_constraint(c, stream.current(), k, n).size());
  }
  return r;
}

}  // namespace wsp
