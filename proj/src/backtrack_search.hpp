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

#ifndef WSP_SRC_BACKTRACK_SEARCH_HPP_
#define WSP_SRC_BACKTRACK_SEARCH_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wsp/solver.hpp"

namespace wsp::detail {

/// Read-only search tables derived from an instance; shared by all workers.
struct BacktrackProblem {
  struct UiCheck {
    ConstraintKind kind;
    std::uint32_t first = 0;
    std::uint32_t second = 0;
    std::uint32_t r = 0;
    StepMask scope = 0;
  };
  struct SualCheck {
    StepMask scope = 0;
    std::uint32_t h = 0;
    std::vector<std::uint64_t> supers;  // words
  };
  /// One alternative of a WL/ADA family: restrictions (step, users) to meet.
  struct Alternative {
    std::vector<std::pair<std::uint32_t, std::vector<std::uint64_t>>> restrict;
  };
  struct LeafChoice {
    std::vector<Alternative> alternatives;
  };

  explicit BacktrackProblem(const Instance& inst);

  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t words = 0;
  std::vector<std::uint32_t> order;
  /// Relaxed per-step authorisation, k * words.
  std::vector<std::uint64_t> eff;
  std::vector<UiCheck> ui;
  std::vector<std::vector<std::uint32_t>> ui_by_step;
  std::vector<SualCheck> sual;
  /// SUAL checks that become decidable once this step is placed.
  std::vector<std::vector<std::uint32_t>> sual_by_last_step;
  std::vector<LeafChoice> leaf_choices;
};

enum class SearchStatus { kFound, kExhausted, kBudget, kCancelled };

/// Worker-local depth-first search state.
class BacktrackSearch {
 public:
  BacktrackSearch(const BacktrackProblem& problem, const BudgetGuard& guard,
                  SolveStats& stats, std::function<bool()> cancelled = {});

  /// Searches the subtree below the given choice prefix (block labels for
  /// the first steps of the static order).
  SearchStatus run(std::span<const std::uint8_t> prefix = {});

  /// Valid prefixes of the given depth, in search order.
  std::vector<std::vector<std::uint8_t>> frontier(std::size_t depth);

  const std::optional<Plan>& plan() const { return plan_; }

 private:
  struct Frame {
    std::size_t blocks = 0;
    std::vector<std::uint64_t> adj;         // blocks * words
    std::vector<std::uint32_t> block_user;  // per block
    std::vector<std::uint64_t> matched;     // words
  };

  bool ui_ok(std::uint32_t step) const;
  bool place(std::size_t depth, std::uint32_t step, std::uint8_t label);
  bool restore_block(Frame& f, std::size_t block);
  bool augment(Frame& f, std::size_t block);
  bool try_block(Frame& f, std::size_t block);
  SearchStatus descend(std::size_t depth);
  bool tick();
  bool leaf(std::size_t depth);
  bool leaf_choose(std::size_t choice, Frame& f);
  void collect(std::size_t depth, std::size_t target,
               std::vector<std::uint8_t>& path,
               std::vector<std::vector<std::uint8_t>>& out);

  const BacktrackProblem& p_;
  const BudgetGuard& guard_;
  SolveStats& stats_;
  std::function<bool()> cancelled_;
  std::vector<Frame> frames_;
  std::vector<Frame> leaf_frames_;
  std::vector<std::int16_t> label_;  // per step, -1 when unassigned
  std::vector<std::uint64_t> visited_;
  std::optional<Plan> plan_;
  SearchStatus stop_ = SearchStatus::kExhausted;
};

}  // namespace wsp::detail

#endif  // WSP_SRC_BACKTRACK_SEARCH_HPP_
