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

#include "wsp/solver.hpp"

#include <algorithm>

#include "solver_internal.hpp"
#include "wsp/matching.hpp"
#include "wsp/patterns.hpp"

namespace wsp {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kSat: return "SAT";
    case Verdict::kUnsat: return "UNSAT";
    case Verdict::kBudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

namespace detail {

std::optional<Plan> match_family(const CdaInstance& inst, const Pattern& p,
                                 SolveStats& stats) {
  const auto family = inst.family.family_for(p);
  for (const auto& f : family->functions) {
    ++stats.matchings_computed;
    const auto m = max_matching(build_gp(p, f, inst.n));
    if (m.saturating()) return plan_from_matching(p, m);
  }
  return std::nullopt;
}

ScanOutcome scan_patterns(const CdaInstance& inst, PatternStream stream,
                          const BudgetGuard& guard, SolveStats& stats,
                          const std::function<bool()>& cancelled) {
  while (stream.advance()) {
    ++stats.patterns_visited;
    ++stats.nodes_expanded;
    if (guard.patterns_exceeded(stats.patterns_visited)) {
      return {ScanStatus::kBudget, std::nullopt};
    }
    if ((stats.patterns_visited & 255U) == 0) {
      if (guard.time_exceeded()) return {ScanStatus::kBudget, std::nullopt};
      if (cancelled && cancelled()) {
        return {ScanStatus::kCancelled, std::nullopt};
      }
    }
    const Pattern& p = stream.current();
    const bool eligible =
        std::all_of(inst.residual.begin(), inst.residual.end(),
                    [&](const Constraint& c) { return satisfies(p, c); });
    if (!eligible) continue;
    if (auto plan = match_family(inst, p, stats)) {
      return {ScanStatus::kFound, std::move(plan)};
    }
  }
  return {ScanStatus::kExhausted, std::nullopt};
}

SolveResult solve_pattern_enum_serial(const CdaInstance& inst,
                                      const Budget& budget) {
  const BudgetGuard guard(budget);
  SolveResult result;
  auto outcome = scan_patterns(inst, PatternStream(inst.k), guard, result.stats);
  switch (outcome.status) {
    case ScanStatus::kFound:
      result.verdict = Verdict::kSat;
      result.plan = std::move(outcome.plan);
      break;
    case ScanStatus::kExhausted:
      // k = 0 has the single empty plan.
      if (inst.k == 0) {
        result.verdict = Verdict::kSat;
        result.plan = Plan{};
      } else {
        result.verdict = Verdict::kUnsat;
      }
      break;
    default:
      result.verdict = Verdict::kBudgetExceeded;
      break;
  }
  result.stats.wall_millis = guard.elapsed_millis();
  return result;
}

}  // namespace detail

SolveResult solve_pattern_enum(const Instance& inst, const SolveOptions& opts) {
  return solve_pattern_enum(absorb(inst), opts);
}

SolveResult solve_pattern_enum(const CdaInstance& inst, const SolveOptions& opts) {
  if (opts.jobs > 1) {
    return detail::solve_pattern_enum_parallel(inst, opts.budget, opts.jobs);
  }
  return detail::solve_pattern_enum_serial(inst, opts.budget);
}

SolveResult solve_backtracking(const Instance& inst, const SolveOptions& opts) {
  if (opts.jobs > 1) {
    return detail::solve_backtracking_parallel(inst, opts.budget, opts.jobs);
  }
  return detail::solve_backtracking_serial(inst, opts.budget);
}

// ---------------------------------------------------------------------------
// Brute force

namespace {

std::uint64_t plan_space(std::size_t k, std::size_t n, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n == 0) return 0;
    if (total > cap / n) {
      throw InvariantViolation("brute force needs n^k = " + std::to_string(n) +
                               "^" + std::to_string(k) +
                               " plans, above the cap of " + std::to_string(cap));
    }
    total *= n;
  }
  return total;
}

/// Calls `visit(plan)` for every plan in lexicographic order until it returns
/// false. Returns false when the budget ran out.
template <class Visit>
bool for_each_plan(std::size_t k, std::size_t n, const BruteForceOptions& opts,
                   const detail::BudgetGuard& guard, SolveStats& stats,
                   Visit&& visit) {
  plan_space(k, n, opts.max_plans);
  if (k > 0 && n == 0) return true;
  std::vector<UserId> users(k, UserId{0});
  while (true) {
    ++stats.nodes_expanded;
    if (guard.nodes_exceeded(stats.nodes_expanded)) return false;
    if ((stats.nodes_expanded & 4095U) == 0 && guard.time_exceeded()) return false;
    if (!visit(Plan(users))) return true;
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++users[i].value < n) break;
      users[i].value = 0;
      if (i == 0) return true;
    }
    if (k == 0) return true;
  }
}

}  // namespace

SolveResult solve_bruteforce(const Instance& inst, const BruteForceOptions& opts) {
  const detail::BudgetGuard guard(opts.budget);
  SolveResult result;
  std::optional<Plan> found;
  const bool finished = for_each_plan(
      inst.steps(), inst.users(), opts, guard, result.stats, [&](Plan plan) {
        if (is_valid(plan, inst)) {
          found = std::move(plan);
          return false;
        }
        return true;
      });
  if (found) {
    result.verdict = Verdict::kSat;
    result.plan = std::move(found);
  } else {
    result.verdict = finished ? Verdict::kUnsat : Verdict::kBudgetExceeded;
  }
  result.stats.wall_millis = guard.elapsed_millis();
  return result;
}

std::uint64_t count_valid_plans(const Instance& inst, const BruteForceOptions& opts) {
  const detail::BudgetGuard guard(opts.budget);
  SolveStats stats;
  std::uint64_t count = 0;
  const bool finished =
      for_each_plan(inst.steps(), inst.users(), opts, guard, stats, [&](Plan plan) {
        count += is_valid(plan, inst) ? 1 : 0;
        return true;
      });
  if (!finished) throw InvariantViolation("budget exceeded while counting plans");
  return count;
}

std::vector<Plan> valid_plans(const Instance& inst, const BruteForceOptions& opts) {
  const detail::BudgetGuard guard(opts.budget);
  SolveStats stats;
  std::vector<Plan> out;
  const bool finished =
      for_each_plan(inst.steps(), inst.users(), opts, guard, stats, [&](Plan plan) {
        if (is_valid(plan, inst)) out.push_back(std::move(plan));
        return true;
      });
  if (!finished) throw InvariantViolation("budget exceeded while listing plans");
  return out;
}

std::vector<Plan> valid_plans(const CdaInstance& inst, const BruteForceOptions& opts) {
  const detail::BudgetGuard guard(opts.budget);
  SolveStats stats;
  std::vector<Plan> out;
  const bool finished =
      for_each_plan(inst.k, inst.n, opts, guard, stats, [&](Plan plan) {
        if (is_valid_cda(plan, inst)) out.push_back(std::move(plan));
        return true;
      });
  if (!finished) throw InvariantViolation("budget exceeded while listing plans");
  return out;
}

bool verify(const Plan& plan, const Instance& inst) { return is_valid(plan, inst); }

}  // namespace wsp
