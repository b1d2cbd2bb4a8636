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

#ifndef WSP_SRC_SOLVER_INTERNAL_HPP_
#define WSP_SRC_SOLVER_INTERNAL_HPP_

#include <functional>
#include <optional>

#include "wsp/patterns.hpp"
#include "wsp/solver.hpp"

namespace wsp::detail {

enum class ScanStatus { kFound, kExhausted, kBudget, kCancelled };

struct ScanOutcome {
  ScanStatus status = ScanStatus::kExhausted;
  std::optional<Plan> plan;
};

/// One Algorithm-2 pass over a pattern range. `cancelled`, when set, is
/// polled every few hundred patterns.
ScanOutcome scan_patterns(const CdaInstance& inst, PatternStream stream,
                          const BudgetGuard& guard, SolveStats& stats,
                          const std::function<bool()>& cancelled = {});

/// Try each member of the family at `p`; counts matchings.
std::optional<Plan> match_family(const CdaInstance& inst, const Pattern& p,
                                 SolveStats& stats);

}  // namespace wsp::detail

#endif  // WSP_SRC_SOLVER_INTERNAL_HPP_
