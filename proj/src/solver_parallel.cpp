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

// OpenMP kernels. Both split the search into prefix tasks in the serial
// visiting order and keep the lowest-index success, so without budgets the
// returned plan is the one the serial reference returns.

#include <atomic>
#include <limits>

#ifdef WSP_HAVE_OPENMP
#include <omp.h>
#endif

#include "backtrack_search.hpp"
#include "solver_internal.hpp"

namespace wsp::detail {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// Lowers `best` to `index` if smaller.
void publish(std::atomic<std::size_t>& best, std::size_t index) {
  std::size_t cur = best.load();
  while (index < cur && !best.compare_exchange_weak(cur, index)) {
  }
}

void accumulate(SolveStats& into, const SolveStats& part) {
  into.patterns_visited += part.patterns_visited;
  into.matchings_computed += part.matchings_computed;
  into.nodes_expanded += part.nodes_expanded;
}

void set_threads(unsigned jobs) {
#ifdef WSP_HAVE_OPENMP
  omp_set_dynamic(0);
  omp_set_num_threads(static_cast<int>(jobs));
#else
  (void)jobs;
#endif
}

/// Cross-task stop state: lowest winning task and global budget.
class SharedStop {
 public:
  SharedStop(const BudgetGuard& guard, const Budget& budget)
      : guard_(guard), budget_(budget) {}

  /// Polled by task `idx` roughly every `chunk` units of work.
  bool should_stop(std::size_t idx, std::uint64_t chunk,
                   std::uint64_t Budget::*limit) {
    if (budget_.*limit != 0 && work_.fetch_add(chunk) + chunk > budget_.*limit) {
      budget_hit_.store(true);
    }
    if (guard_.time_exceeded()) budget_hit_.store(true);
    return best_.load() < idx || budget_hit_.load();
  }

  bool skip(std::size_t idx) const { return best_.load() < idx || budget_hit_.load(); }
  void found(std::size_t idx) { publish(best_, idx); }
  void budget_hit() { budget_hit_.store(true); }
  std::size_t best() const { return best_.load(); }
  bool budget_was_hit() const { return budget_hit_.load(); }

 private:
  const BudgetGuard& guard_;
  Budget budget_;
  std::atomic<std::size_t> best_{kNone};
  std::atomic<bool> budget_hit_{false};
  std::atomic<std::uint64_t> work_{0};
};

}  // namespace

SolveResult solve_pattern_enum_parallel(const CdaInstance& inst,
                                        const Budget& budget, unsigned jobs) {
  if (inst.k < 2) return solve_pattern_enum_serial(inst, budget);
  const BudgetGuard guard(budget);
  const std::size_t depth = inst.k > 6 ? 5 : inst.k - 1;
  const auto tasks = PatternStream(inst.k).split(depth);
  const auto count = static_cast<std::ptrdiff_t>(tasks.size());

  std::vector<ScanOutcome> outcomes(tasks.size());
  std::vector<SolveStats> stats(tasks.size());
  SharedStop stop(guard, budget);
  const BudgetGuard unlimited(Budget{});

  set_threads(jobs);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (stop.skip(idx)) {
      outcomes[idx].status = ScanStatus::kCancelled;
      continue;
    }
    outcomes[idx] = scan_patterns(inst, tasks[idx], unlimited, stats[idx], [&, idx] {
      return stop.should_stop(idx, 256, &Budget::max_patterns);
    });
    if (outcomes[idx].status == ScanStatus::kFound) stop.found(idx);
  }

  SolveResult result;
  for (const auto& s : stats) accumulate(result.stats, s);
  if (const auto winner = stop.best(); winner != kNone) {
    result.verdict = Verdict::kSat;
    result.plan = outcomes[winner].plan;
  } else if (stop.budget_was_hit()) {
    result.verdict = Verdict::kBudgetExceeded;
  } else {
    result.verdict = Verdict::kUnsat;
  }
  result.stats.wall_millis = guard.elapsed_millis();
  return result;
}

SolveResult solve_backtracking_parallel(const Instance& inst, const Budget& budget,
                                        unsigned jobs) {
  if (inst.steps() < 2) return solve_backtracking_serial(inst, budget);
  const BudgetGuard guard(budget);
  const BacktrackProblem problem(inst);
  const BudgetGuard unlimited(Budget{});

  std::vector<std::vector<std::uint8_t>> tasks;
  {
    SolveStats scratch;
    BacktrackSearch probe(problem, unlimited, scratch);
    for (std::size_t depth = 1; depth < problem.k; ++depth) {
      tasks = probe.frontier(depth);
      if (tasks.size() >= 8 * static_cast<std::size_t>(jobs)) break;
    }
  }

  const auto count = static_cast<std::ptrdiff_t>(tasks.size());
  std::vector<SearchStatus> status(tasks.size(), SearchStatus::kCancelled);
  std::vector<std::optional<Plan>> plans(tasks.size());
  std::vector<SolveStats> stats(tasks.size());
  SharedStop stop(guard, budget);

  set_threads(jobs);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (stop.skip(idx)) continue;
    BacktrackSearch search(problem, unlimited, stats[idx], [&, idx] {
      return stop.should_stop(idx, 1024, &Budget::max_nodes);
    });
    status[idx] = search.run(tasks[idx]);
    if (status[idx] == SearchStatus::kFound) {
      plans[idx] = search.plan();
      stop.found(idx);
    }
  }

  SolveResult result;
  for (const auto& s : stats) accumulate(result.stats, s);
  if (const auto winner = stop.best(); winner != kNone) {
    result.verdict = Verdict::kSat;
    result.plan = plans[winner];
  } else if (stop.budget_was_hit()) {
    result.verdict = Verdict::kBudgetExceeded;
  } else {
    result.verdict = Verdict::kUnsat;
  }
  result.stats.wall_millis = guard.elapsed_millis();
  return result;
}

}  // namespace wsp::detail
