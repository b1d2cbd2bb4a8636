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

#include "wsp/encode.hpp"

#include <algorithm>
#include <numeric>

namespace wsp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string join_name(const char* prefix, std::initializer_list<std::uint32_t> parts) {
  std::string out = prefix;
  for (const auto p : parts) {
    out += '_';
    out += std::to_string(p);
  }
  return out;
}

/// One way of satisfying a non-UI constraint, as per-step user restrictions.
struct Alternative {
  std::vector<std::pair<std::uint32_t, UserSet>> allowed;
};

/// The selector alternatives shared by all three encodings. SUAL has two
/// groups (few users on the scope / many users) with one function each; WL
/// and ADA have one group with d resp. 2 functions.
std::vector<Alternative> alternatives_of(const Constraint& c, std::size_t n) {
  std::vector<Alternative> out;
  std::visit(
      Overloaded{
          [&](const SuperUserAtLeast& s) {
            Alternative few;
            for (const auto t : steps_of(s.scope)) few.allowed.emplace_back(t, s.supers);
            out.push_back(std::move(few));
            out.emplace_back();
          },
          [&](const WangLi& w) {
            for (const auto& team : w.teams) {
              Alternative alt;
              for (const auto t : steps_of(w.scope)) alt.allowed.emplace_back(t, team);
              out.push_back(std::move(alt));
            }
          },
          [&](const AssignmentDependent& a) {
            Alternative taken;
            taken.allowed.emplace_back(a.first.value, a.if_users);
            taken.allowed.emplace_back(a.second.value, a.then_users);
            Alternative not_taken;
            not_taken.allowed.emplace_back(a.first.value, a.if_users.complement(n));
            out.push_back(std::move(taken));
            out.push_back(std::move(not_taken));
          },
          [](const auto&) {},
      },
      c);
  return out;
}

bool consistent(const Alternative& alt, const Plan& plan) {
  return std::all_of(alt.allowed.begin(), alt.allowed.end(), [&](const auto& r) {
    return r.second.contains(plan[r.first]);
  });
}

/// Index of the alternative induced by a plan: for SUAL the group the plan
/// falls in, otherwise the first consistent function (or the first one when
/// none is, which leaves a violated row as it should).
std::size_t induced_choice(const Constraint& c, const Plan& plan,
                           const std::vector<Alternative>& alts) {
  if (const auto* s = std::get_if<SuperUserAtLeast>(&c)) {
    return distinct_users(plan, s->scope) <= s->h ? 0 : 1;
  }
  for (std::size_t j = 0; j < alts.size(); ++j) {
    if (consistent(alts[j], plan)) return j;
  }
  return 0;
}

PbConstraint ge(std::vector<Term> terms, std::int64_t rhs,
                std::optional<std::uint32_t> guard = std::nullopt) {
  return PbConstraint{std::move(terms), Relation::kGe, rhs, guard};
}

PbConstraint eq(std::vector<Term> terms, std::int64_t rhs) {
  return PbConstraint{std::move(terms), Relation::kEq, rhs, std::nullopt};
}

/// Authorised users of any scope step, ascending.
std::vector<std::uint32_t> scope_users(const Instance& inst, StepMask scope) {
  UserSet users;
  for_each_step(scope, [&](std::size_t s) { users |= inst.auth()[s]; });
  return users.to_vector();
}

class Encoder {
 public:
  Encoder(const Instance& inst, bool pattern_vars, const EncodeOptions& opts)
      : inst_(inst), model_(inst), pattern_(pattern_vars), opts_(opts) {}

  BooleanModel run() {
    add_x();
    if (pattern_) add_m();
    for (std::size_t i = 0; i < inst_.constraints().size(); ++i) {
      add_constraint(static_cast<std::uint32_t>(i), inst_.constraints()[i]);
    }
    return std::move(model_);
  }

 private:
  std::uint32_t x(std::size_t s, std::size_t u) const { return *model_.x(s, u); }
  std::optional<std::uint32_t> maybe_x(std::size_t s, std::size_t u) const {
    return model_.x(s, u);
  }
  std::uint32_t m(std::size_t s, std::size_t t) const { return *model_.m(s, t); }

  void add_x() {
    for (std::uint32_t s = 0; s < inst_.steps(); ++s) {
      inst_.auth()[s].for_each([&](std::uint32_t u) {
        model_.add_var({join_name("x", {s, u}), VarKind::kX, s, u});
      });
    }
    for (std::uint32_t s = 0; s < inst_.steps(); ++s) {
      std::vector<Term> row;
      inst_.auth()[s].for_each([&](std::uint32_t u) { row.push_back({1, x(s, u)}); });
      model_.add(eq(std::move(row), 1));
    }
  }

  void add_m() {
    const auto k = static_cast<std::uint32_t>(inst_.steps());
    for (std::uint32_t s = 0; s < k; ++s) {
      for (std::uint32_t t = 0; t < k; ++t) {
        model_.add_var({join_name("M", {s, t}), VarKind::kM, s, t});
      }
    }
    for (std::uint32_t s = 0; s < k; ++s) {
      for (std::uint32_t t = s + 1; t < k; ++t) {
        model_.add(eq({{1, m(s, t)}, {-1, m(t, s)}}, 0));
      }
    }
    for (std::uint32_t s = 0; s < k; ++s) model_.add(eq({{1, m(s, s)}}, 1));
    if (opts_.transitivity) {
      for (std::uint32_t a = 0; a < k; ++a) {
        for (std::uint32_t b = 0; b < k; ++b) {
          for (std::uint32_t c = 0; c < k; ++c) {
            if (a == b || b == c || a == c) continue;
            // M_ab & M_bc -> M_ac
            model_.add(ge({{-1, m(a, b)}, {-1, m(b, c)}, {1, m(a, c)}}, -1));
            // !M_ab & M_bc -> !M_ac
            model_.add(ge({{1, m(a, b)}, {-1, m(b, c)}, {-1, m(a, c)}}, -1));
          }
        }
      }
    }
    for (std::uint32_t s = 0; s < k; ++s) {
      for (std::uint32_t t = s + 1; t < k; ++t) {
        const auto users = (inst_.auth()[s] | inst_.auth()[t]).to_vector();
        for (const auto u : users) {
          const auto xs = maybe_x(s, u);
          const auto xt = maybe_x(t, u);
          // M_st -> x_su = x_tu, one implication per direction.
          if (xs) model_.add(ge(implies_equal(m(s, t), *xs, xt), -1));
          if (xt) model_.add(ge(implies_equal(m(s, t), *xt, xs), -1));
          // !M_st -> !x_su | !x_tu
          if (xs && xt) model_.add(ge({{1, m(s, t)}, {-1, *xs}, {-1, *xt}}, -1));
        }
      }
    }
  }

  /// Row for M & x_from -> x_to; a missing x_to reads as false.
  static std::vector<Term> implies_equal(std::uint32_t mv, std::uint32_t from,
                                         std::optional<std::uint32_t> to) {
    std::vector<Term> t{{-1, mv}, {-1, from}};
    if (to) t.push_back({1, *to});
    return t;
  }

  void add_constraint(std::uint32_t ci, const Constraint& c) {
    std::visit(
        Overloaded{
            [&](const BindingOfDuty& b) { add_bod(b.first.value, b.second.value); },
            [&](const SeparationOfDuty& s) { add_sod(s.first.value, s.second.value); },
            [&](const AtMost& a) { add_at_most(ci, a.scope, a.r); },
            [&](const AtLeast& a) {
              add_distinct_bound(ci, a.scope, a.r, true, std::nullopt);
            },
            [&](const SuperUserAtLeast& s) { add_sual(ci, c, s); },
            [&](const auto&) { add_selectors(ci, c); },
        },
        c);
  }

  void add_bod(std::uint32_t s, std::uint32_t t) {
    if (pattern_) {
      model_.add(eq({{1, m(s, t)}}, 1));
      return;
    }
    for (const auto u : (inst_.auth()[s] | inst_.auth()[t]).to_vector()) {
      const auto xs = maybe_x(s, u);
      const auto xt = maybe_x(t, u);
      if (xs && xt) {
        model_.add(eq({{1, *xs}, {-1, *xt}}, 0));
      } else {
        model_.add(eq({{1, xs ? *xs : *xt}}, 0));
      }
    }
  }

  void add_sod(std::uint32_t s, std::uint32_t t) {
    if (pattern_) {
      model_.add(eq({{1, m(s, t)}}, 0));
      return;
    }
    (inst_.auth()[s] & inst_.auth()[t]).for_each([&](std::uint32_t u) {
      model_.add(ge({{-1, x(s, u)}, {-1, x(t, u)}}, -1));
    });
  }

  void add_at_most(std::uint32_t ci, StepMask scope, std::uint32_t r) {
    const auto steps = steps_of(scope);
    if (r >= steps.size()) return;
    if (pattern_ && subset_count(steps.size(), r + 1) <= opts_.subset_threshold) {
      // Every (r+1)-subset of the scope holds a pair sharing a user.
      std::vector<std::uint32_t> pick(r + 1);
      std::iota(pick.begin(), pick.end(), 0U);
      while (true) {
        std::vector<Term> row;
        for (std::size_t i = 0; i < pick.size(); ++i) {
          for (std::size_t j = i + 1; j < pick.size(); ++j) {
            row.push_back({1, m(steps[pick[i]], steps[pick[j]])});
          }
        }
        model_.add(ge(std::move(row), 1));
        if (!next_subset(pick, steps.size())) break;
      }
      return;
    }
    add_distinct_bound(ci, scope, r, false, std::nullopt);
  }

  static std::uint64_t subset_count(std::size_t n, std::size_t r) {
    if (r > n) return 0;
    std::uint64_t c = 1;
    for (std::size_t i = 1; i <= r; ++i) c = c * (n - r + i) / i;
    return c;
  }

  static bool next_subset(std::vector<std::uint32_t>& pick, std::size_t n) {
    const std::size_t r = pick.size();
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == n - r + i - 1) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
    return true;
  }

  /// Variables counting the distinct users on a scope: z_{c,u} in UDPB,
  /// rep_{c,s} in PBPB. Created once per constraint.
  const std::vector<Term>& counters(std::uint32_t ci, StepMask scope) {
    auto& terms = counters_[ci];
    if (!terms.empty()) return terms;
    if (pattern_) {
      const auto steps = steps_of(scope);
      for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto s = steps[i];
        const auto rep = model_.add_var({join_name("rep", {ci, s}), VarKind::kRep, ci, s});
        // rep_s <-> no earlier scope step shares s's user
        std::vector<Term> cover{{1, rep}};
        for (std::size_t j = 0; j < i; ++j) {
          model_.add(ge({{-1, rep}, {-1, m(s, steps[j])}}, -1));
          cover.push_back({1, m(s, steps[j])});
        }
        model_.add(ge(std::move(cover), 1));
        terms.push_back({1, rep});
      }
    } else {
      for (const auto u : scope_users(inst_, scope)) {
        const auto z = model_.add_var({join_name("z", {ci, u}), VarKind::kZ, ci, u});
        // z_u <-> some scope step goes to u
        std::vector<Term> cover{{-1, z}};
        for_each_step(scope, [&](std::size_t s) {
          if (const auto xv = maybe_x(s, u)) {
            model_.add(ge({{1, z}, {-1, *xv}}, 0));
            cover.push_back({1, *xv});
          }
        });
        model_.add(ge(std::move(cover), 0));
        terms.push_back({1, z});
      }
    }
    return terms;
  }

  void add_distinct_bound(std::uint32_t ci, StepMask scope, std::int64_t bound,
                          bool at_least, std::optional<std::uint32_t> guard) {
    auto terms = counters(ci, scope);
    if (at_least) {
      model_.add(ge(std::move(terms), bound, guard));
    } else {
      for (auto& t : terms) t.coef = -t.coef;
      model_.add(ge(std::move(terms), -bound, guard));
    }
  }

  void add_sual(std::uint32_t ci, const Constraint& c, const SuperUserAtLeast& s) {
    const auto g0 = model_.add_var({join_name("g", {ci, 0}), VarKind::kGroup, ci, 0});
    const auto g1 = model_.add_var({join_name("g", {ci, 1}), VarKind::kGroup, ci, 1});
    model_.add(ge({{1, g0}, {1, g1}}, 1));
    add_distinct_bound(ci, s.scope, s.h, false, g0);
    add_distinct_bound(ci, s.scope, s.h + 1, true, g1);
    // Each group has a single function, so g doubles as its selector.
    restrict_by(g0, alternatives_of(c, inst_.users())[0]);
  }

  void add_selectors(std::uint32_t ci, const Constraint& c) {
    const auto alts = alternatives_of(c, inst_.users());
    std::vector<Term> any;
    for (std::uint32_t j = 0; j < alts.size(); ++j) {
      const auto a = model_.add_var({join_name("a", {ci, j}), VarKind::kSelector, ci, j});
      any.push_back({1, a});
      restrict_by(a, alts[j]);
    }
    model_.add(ge(std::move(any), 1));
  }

  /// selector -> !x_{s,u} for every authorised u outside the allowed set.
  void restrict_by(std::uint32_t selector, const Alternative& alt) {
    for (const auto& [s, allowed] : alt.allowed) {
      (inst_.auth()[s] - allowed).for_each([&](std::uint32_t u) {
        model_.add(ge({{-1, selector}, {-1, x(s, u)}}, -1));
      });
    }
  }

  const Instance& inst_;
  BooleanModel model_;
  bool pattern_;
  EncodeOptions opts_;
  std::unordered_map<std::uint32_t, std::vector<Term>> counters_;
};

std::int64_t lhs(const PbConstraint& c, const BoolAssignment& a) {
  std::int64_t sum = 0;
  for (const auto& t : c.terms) sum += a.at(t.var) ? t.coef : 0;
  return sum;
}

}  // namespace

// ---------------------------------------------------------------------------
// BooleanModel

BooleanModel::BooleanModel(Instance source)
    : source_(std::move(source)), x_index_(source_.steps()) {}

std::uint32_t BooleanModel::add_var(BoolVar v) {
  const auto index = static_cast<std::uint32_t>(vars_.size());
  if (!by_name_.emplace(v.name, index).second) {
    throw InvariantViolation("duplicate variable " + v.name);
  }
  if (v.kind == VarKind::kX) {
    x_index_.at(v.first).emplace(v.second, index);
  } else if (v.kind == VarKind::kM) {
    const auto k = source_.steps();
    if (m_index_.empty()) m_index_.assign(k * k, UINT32_MAX);
    m_index_.at(v.first * k + v.second) = index;
  }
  vars_.push_back(std::move(v));
  return index;
}

void BooleanModel::add(PbConstraint c) {
  for (const auto& t : c.terms) {
    if (t.var >= vars_.size()) throw InvariantViolation("row uses an unknown variable");
  }
  if (c.guard && *c.guard >= vars_.size()) {
    throw InvariantViolation("row guarded by an unknown variable");
  }
  constraints_.push_back(std::move(c));
}

std::optional<std::uint32_t> BooleanModel::find(const std::string& name) const {
  const auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> BooleanModel::x(std::size_t s, std::size_t u) const {
  if (s >= x_index_.size()) return std::nullopt;
  const auto it = x_index_[s].find(static_cast<std::uint32_t>(u));
  if (it == x_index_[s].end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> BooleanModel::m(std::size_t s, std::size_t t) const {
  const auto k = source_.steps();
  if (m_index_.empty() || s >= k || t >= k) return std::nullopt;
  const auto v = m_index_[s * k + t];
  if (v == UINT32_MAX) return std::nullopt;
  return v;
}

BooleanModel encode_udpb(const Instance& inst) {
  return Encoder(inst, false, EncodeOptions{}).run();
}

BooleanModel encode_pbpb(const Instance& inst, const EncodeOptions& opts) {
  return Encoder(inst, true, opts).run();
}

bool satisfies(const PbConstraint& c, const BoolAssignment& a) {
  if (c.guard && !a.at(*c.guard)) return true;
  const auto sum = lhs(c, a);
  return c.rel == Relation::kEq ? sum == c.rhs : sum >= c.rhs;
}

bool satisfies(const BooleanModel& m, const BoolAssignment& a) {
  return !first_violated(m, a).has_value();
}

std::optional<std::size_t> first_violated(const BooleanModel& m,
                                          const BoolAssignment& a) {
  if (a.size() != m.var_count()) {
    throw InvariantViolation("assignment has " + std::to_string(a.size()) +
                             " values for " + std::to_string(m.var_count()) +
                             " variables");
  }
  const auto rows = m.constraints();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!satisfies(rows[i], a)) return i;
  }
  return std::nullopt;
}

BoolAssignment induced_assignment(const Plan& plan, const BooleanModel& m) {
  const Instance& inst = m.source();
  if (plan.size() != inst.steps()) {
    throw InvariantViolation("plan covers " + std::to_string(plan.size()) +
                             " steps, model has " + std::to_string(inst.steps()));
  }
  for (std::size_t s = 0; s < plan.size(); ++s) {
    if (!m.x(s, plan[s].value)) {
      throw InvariantViolation("plan puts unauthorised user " + user_name(plan[s].value) +
                               " on step " + step_name(s));
    }
  }
  std::unordered_map<std::uint32_t, std::size_t> choice;
  for (std::size_t i = 0; i < inst.constraints().size(); ++i) {
    const auto& c = inst.constraints()[i];
    if (is_ui(c)) continue;
    choice[static_cast<std::uint32_t>(i)] =
        induced_choice(c, plan, alternatives_of(c, inst.users()));
  }

  BoolAssignment out(m.var_count(), false);
  for (std::uint32_t i = 0; i < m.var_count(); ++i) {
    const auto& v = m.var(i);
    switch (v.kind) {
      case VarKind::kX:
        out[i] = plan[v.first].value == v.second;
        break;
      case VarKind::kM:
        out[i] = plan[v.first] == plan[v.second];
        break;
      case VarKind::kZ: {
        const auto scope = scope_of(inst.constraints()[v.first]);
        bool used = false;
        for_each_step(scope, [&](std::size_t s) { used = used || plan[s].value == v.second; });
        out[i] = used;
        break;
      }
      case VarKind::kRep: {
        const auto scope = scope_of(inst.constraints()[v.first]);
        bool first = true;
        for_each_step(scope, [&](std::size_t s) {
          if (s < v.second && plan[s] == plan[v.second]) first = false;
        });
        out[i] = first;
        break;
      }
      case VarKind::kGroup:
      case VarKind::kSelector:
        out[i] = choice.at(v.first) == v.second;
        break;
    }
  }
  return out;
}

Plan decode(const BoolAssignment& a, const BooleanModel& m) {
  const auto k = m.source().steps();
  if (a.size() != m.var_count()) {
    throw InvariantViolation("assignment size does not match the model");
  }
  std::vector<std::optional<std::uint32_t>> user(k);
  for (std::uint32_t i = 0; i < m.var_count(); ++i) {
    const auto& v = m.var(i);
    if (v.kind != VarKind::kX || !a[i]) continue;
    if (user[v.first]) {
      throw InvariantViolation("step " + step_name(v.first) +
                               " has more than one user set");
    }
    user[v.first] = v.second;
  }
  std::vector<std::uint32_t> out(k);
  for (std::size_t s = 0; s < k; ++s) {
    if (!user[s]) throw InvariantViolation("step " + step_name(s) + " has no user set");
    out[s] = *user[s];
  }
  return Plan::from_indices(out);
}

// ---------------------------------------------------------------------------
// CS model

std::string kind_name(CsKind kind) {
  switch (kind) {
    case CsKind::kEq: return "eq";
    case CsKind::kNeq: return "neq";
    case CsKind::kNotAllDifferent: return "not_all_different";
    case CsKind::kAtMostDistinct: return "at_most_distinct";
    case CsKind::kAtLeastDistinct: return "at_least_distinct";
    case CsKind::kAtLeastOne: return "at_least_one";
    case CsKind::kImpliesNotValue: return "implies_not_value";
  }
  return "?";
}

namespace {

CsConstraint cs_row(CsKind kind, std::vector<std::uint32_t> vars, std::int64_t bound = 0,
                    std::optional<std::uint32_t> guard = std::nullopt) {
  return CsConstraint{kind, std::move(vars), bound, guard};
}

}  // namespace

CsModel encode_cs(const Instance& inst, const EncodeOptions& opts) {
  CsModel model;
  model.steps = inst.steps();
  for (std::uint32_t s = 0; s < inst.steps(); ++s) {
    model.vars.push_back({join_name("y", {s}), inst.auth()[s].to_vector()});
  }
  auto selector = [&](std::uint32_t ci, std::uint32_t j, const char* prefix) {
    const auto index = static_cast<std::uint32_t>(model.vars.size());
    model.vars.push_back({join_name(prefix, {ci, j}), {0, 1}});
    return index;
  };
  auto restrict_by = [&](std::uint32_t sel, const Alternative& alt) {
    for (const auto& [s, allowed] : alt.allowed) {
      (inst.auth()[s] - allowed).for_each([&](std::uint32_t u) {
        model.constraints.push_back(cs_row(CsKind::kImpliesNotValue, {s}, u, sel));
      });
    }
  };

  for (std::uint32_t ci = 0; ci < inst.constraints().size(); ++ci) {
    const auto& c = inst.constraints()[ci];
    std::visit(
        Overloaded{
            [&](const BindingOfDuty& b) {
              model.constraints.push_back(cs_row(CsKind::kEq, {b.first.value, b.second.value}));
            },
            [&](const SeparationOfDuty& s) {
              model.constraints.push_back(cs_row(CsKind::kNeq, {s.first.value, s.second.value}));
            },
            [&](const AtMost& a) {
              const auto steps = steps_of(a.scope);
              if (a.r >= steps.size()) return;
              // Enumerated scenarios: no (r+1)-subset may be all different.
              std::uint64_t count = 1;
              for (std::size_t i = 1; i <= a.r + 1; ++i) {
                count = count * (steps.size() - a.r - 1 + i) / i;
              }
              if (count > opts.subset_threshold) {
                model.constraints.push_back(cs_row(CsKind::kAtMostDistinct, steps, a.r));
                return;
              }
              std::vector<std::uint32_t> pick(a.r + 1);
              std::iota(pick.begin(), pick.end(), 0U);
              while (true) {
                std::vector<std::uint32_t> vars;
                for (const auto i : pick) vars.push_back(steps[i]);
                model.constraints.push_back(cs_row(CsKind::kNotAllDifferent, vars));
                std::size_t i = pick.size();
                while (i > 0 && pick[i - 1] == steps.size() - pick.size() + i - 1) --i;
                if (i == 0) break;
                ++pick[i - 1];
                for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
              }
            },
            [&](const AtLeast& a) {
              model.constraints.push_back(cs_row(CsKind::kAtLeastDistinct, steps_of(a.scope), a.r));
            },
            [&](const SuperUserAtLeast& s) {
              const auto g0 = selector(ci, 0, "g");
              const auto g1 = selector(ci, 1, "g");
              const auto steps = steps_of(s.scope);
              model.constraints.push_back(cs_row(CsKind::kAtLeastOne, {g0, g1}));
              model.constraints.push_back(cs_row(CsKind::kAtMostDistinct, steps, s.h, g0));
              model.constraints.push_back(cs_row(CsKind::kAtLeastDistinct, steps, s.h + 1, g1));
              restrict_by(g0, alternatives_of(c, inst.users())[0]);
            },
            [&](const auto&) {
              const auto alts = alternatives_of(c, inst.users());
              std::vector<std::uint32_t> any;
              for (std::uint32_t j = 0; j < alts.size(); ++j) {
                any.push_back(selector(ci, j, "a"));
                restrict_by(any.back(), alts[j]);
              }
              model.constraints.push_back(cs_row(CsKind::kAtLeastOne, any));
            },
        },
        c);
  }
  return model;
}

bool cs_satisfied(const CsConstraint& c, std::span<const std::uint32_t> values) {
  if (c.guard && values[*c.guard] != 1) return true;
  auto distinct = [&] {
    std::vector<std::uint32_t> seen;
    for (const auto v : c.vars) seen.push_back(values[v]);
    std::sort(seen.begin(), seen.end());
    return static_cast<std::int64_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
  };
  switch (c.kind) {
    case CsKind::kEq: return values[c.vars[0]] == values[c.vars[1]];
    case CsKind::kNeq: return values[c.vars[0]] != values[c.vars[1]];
    case CsKind::kNotAllDifferent:
      return distinct() < static_cast<std::int64_t>(c.vars.size());
    case CsKind::kAtMostDistinct: return distinct() <= c.bound;
    case CsKind::kAtLeastDistinct: return distinct() >= c.bound;
    case CsKind::kAtLeastOne:
      return std::any_of(c.vars.begin(), c.vars.end(),
                         [&](std::uint32_t v) { return values[v] == 1; });
    case CsKind::kImpliesNotValue:
      return values[c.vars[0]] != static_cast<std::uint32_t>(c.bound);
  }
  return false;
}

bool cs_satisfied(const CsModel& m, std::span<const std::uint32_t> values) {
  if (values.size() != m.vars.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& d = m.vars[i].domain;
    if (!std::binary_search(d.begin(), d.end(), values[i])) return false;
  }
  return std::all_of(m.constraints.begin(), m.constraints.end(),
                     [&](const CsConstraint& c) { return cs_satisfied(c, values); });
}

std::vector<std::uint32_t> induced_values(const Plan& plan, const CsModel& m,
                                          const Instance& inst) {
  std::vector<std::uint32_t> out = plan.indices();
  out.resize(m.vars.size(), 0);
  std::size_t next = m.steps;
  for (const auto& c : inst.constraints()) {
    if (is_ui(c)) continue;
    const auto alts = alternatives_of(c, inst.users());
    const auto chosen = induced_choice(c, plan, alts);
    for (std::size_t j = 0; j < alts.size(); ++j) out.at(next++) = j == chosen ? 1 : 0;
  }
  return out;
}

Plan decode(std::span<const std::uint32_t> values, const CsModel& m) {
  if (values.size() < m.steps) {
    throw InvariantViolation("CS solution covers fewer than " +
                             std::to_string(m.steps) + " steps");
  }
  for (std::size_t s = 0; s < m.steps; ++s) {
    const auto& d = m.vars[s].domain;
    if (!std::binary_search(d.begin(), d.end(), values[s])) {
      throw InvariantViolation("y_" + std::to_string(s) + " = " +
                               std::to_string(values[s]) + " is outside its domain");
    }
  }
  return Plan::from_indices(values.subspan(0, m.steps));
}

}  // namespace wsp
