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

#ifndef WSP_SOLVER_HPP_
#define WSP_SOLVER_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsp/absorption.hpp"
#include "wsp/core.hpp"

namespace wsp {

enum class Verdict { kSat, kUnsat, kBudgetExceeded };

std::string to_string(Verdict v);

struct SolveStats {
  std::uint64_t patterns_visited = 0;
  std::uint64_t matchings_computed = 0;
  std::uint64_t nodes_expanded = 0;
  double wall_millis = 0.0;
};

struct SolveResult {
  Verdict verdict = Verdict::kUnsat;
  std::optional<Plan> plan;
  SolveStats stats;
};

/// Zero means unlimited.
struct Budget {
  std::uint64_t max_millis = 0;
  std::uint64_t max_patterns = 0;
  std::uint64_t max_nodes = 0;
};

struct SolveOptions {
  Budget budget;
  /// Worker count; 1 runs the serial reference path.
  unsigned jobs = 1;
};

/// Pattern Basic Algorithm with context-dependent authorisations: walks every
/// pattern in lexicographic order, filters by the residual UI constraints and
/// tries a saturating matching for each member of the absorbed family.
SolveResult solve_pattern_enum(const Instance& inst, const SolveOptions& opts = {});
SolveResult solve_pattern_enum(const CdaInstance& inst, const SolveOptions& opts = {});

/// Depth-first search over pattern prefixes with UI-constraint and matching
/// pruning; non-UI constraints are resolved at the leaves through their
/// families.
SolveResult solve_backtracking(const Instance& inst, const SolveOptions& opts = {});

struct BruteForceOptions {
  Budget budget;
  std::uint64_t max_plans = 10'000'000;
};

/// Exhaustive search over all n^k plans. Throws InvariantViolation when
/// n^k exceeds the plan cap.
SolveResult solve_bruteforce(const Instance& inst, const BruteForceOptions& opts = {});
std::uint64_t count_valid_plans(const Instance& inst, const BruteForceOptions& opts = {});
std::vector<Plan> valid_plans(const Instance& inst, const BruteForceOptions& opts = {});
std::vector<Plan> valid_plans(const CdaInstance& inst, const BruteForceOptions& opts = {});

bool verify(const Plan& plan, const Instance& inst);

namespace detail {

/// Wall-clock and counter budget shared by the solvers.
class BudgetGuard {
 public:
  explicit BudgetGuard(const Budget& b)
      : budget_(b), start_(std::chrono::steady_clock::now()) {}

  bool time_exceeded() const {
    return budget_.max_millis != 0 &&
           elapsed_millis() >= static_cast<double>(budget_.max_millis);
  }
  bool patterns_exceeded(std::uint64_t visited) const {
    return budget_.max_patterns != 0 && visited > budget_.max_patterns;
  }
  bool nodes_exceeded(std::uint64_t nodes) const {
    return budget_.max_nodes != 0 && nodes > budget_.max_nodes;
  }
  double elapsed_millis() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
};

SolveResult solve_pattern_enum_serial(const CdaInstance& inst, const Budget& budget);
SolveResult solve_pattern_enum_parallel(const CdaInstance& inst, const Budget& budget,
                                        unsigned jobs);
SolveResult solve_backtracking_serial(const Instance& inst, const Budget& budget);
SolveResult solve_backtracking_parallel(const Instance& inst, const Budget& budget,
                                        unsigned jobs);

}  // namespace detail

}  // namespace wsp

#endif  // WSP_SOLVER_HPP_
