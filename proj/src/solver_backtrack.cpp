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

#include <algorithm>
#include <bit>
#include <limits>

#include "backtrack_search.hpp"

namespace wsp::detail {

namespace {

constexpr std::uint32_t kNoUser = std::numeric_limits<std::uint32_t>::max();

std::vector<std::uint64_t> to_words(const UserSet& set, std::size_t words) {
  std::vector<std::uint64_t> out(words, 0);
  const auto src = set.words();
  std::copy_n(src.begin(), std::min(words, src.size()), out.begin());
  return out;
}

bool any_bits(const std::uint64_t* a, std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) {
    if (a[w] != 0) return true;
  }
  return false;
}

bool has_bit(const std::uint64_t* a, std::uint32_t u) {
  return ((a[u >> 6] >> (u & 63)) & 1U) != 0;
}

}  // namespace

BacktrackProblem::BacktrackProblem(const Instance& inst)
    : k(inst.steps()), n(inst.users()), words((inst.users() + 63) / 64) {
  std::vector<std::size_t> degree(k, 0);
  for (const auto& c : inst.constraints()) {
    for_each_step(scope_of(c), [&](std::size_t s) { ++degree[s]; });
  }
  order.resize(k);
  for (std::uint32_t s = 0; s < k; ++s) order[s] = s;
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return degree[a] > degree[b];
  });
  std::vector<std::size_t> pos(k);
  for (std::size_t i = 0; i < k; ++i) pos[order[i]] = i;

  std::vector<UserSet> relaxed(inst.auth().per_step().begin(),
                               inst.auth().per_step().end());
  ui_by_step.resize(k);
  sual_by_last_step.resize(k);
  for (const auto& c : inst.constraints()) {
    if (is_ui(c)) {
      UiCheck check{kind_of(c)};
      if (const auto* b = std::get_if<BindingOfDuty>(&c)) {
        check.first = b->first.value;
        check.second = b->second.value;
      } else if (const auto* s = std::get_if<SeparationOfDuty>(&c)) {
        check.first = s->first.value;
        check.second = s->second.value;
      } else if (const auto* m = std::get_if<AtMost>(&c)) {
        check.r = m->r;
      } else if (const auto* l = std::get_if<AtLeast>(&c)) {
        check.r = l->r;
      }
      check.scope = scope_of(c);
      const auto idx = static_cast<std::uint32_t>(ui.size());
      ui.push_back(check);
      for_each_step(check.scope, [&](std::size_t s) { ui_by_step[s].push_back(idx); });
    } else if (const auto* s = std::get_if<SuperUserAtLeast>(&c)) {
      std::size_t last = 0;
      for_each_step(s->scope, [&](std::size_t t) { last = std::max(last, pos[t]); });
      sual_by_last_step[order[last]].push_back(static_cast<std::uint32_t>(sual.size()));
      sual.push_back({s->scope, s->h, to_words(s->supers, words)});
    } else if (const auto* w = std::get_if<WangLi>(&c)) {
      UserSet any_team;
      LeafChoice choice;
      for (const auto& team : w->teams) {
        any_team |= team;
        Alternative alt;
        for_each_step(w->scope, [&](std::size_t t) {
          alt.restrict.emplace_back(static_cast<std::uint32_t>(t), to_words(team, words));
        });
        choice.alternatives.push_back(std::move(alt));
      }
      for_each_step(w->scope, [&](std::size_t t) { relaxed[t] &= any_team; });
      leaf_choices.push_back(std::move(choice));
    } else {
      const auto& a = std::get<AssignmentDependent>(c);
      LeafChoice choice;
      Alternative inside;
      inside.restrict.emplace_back(a.first.value, to_words(a.if_users, words));
      inside.restrict.emplace_back(a.second.value, to_words(a.then_users, words));
      Alternative outside;
      outside.restrict.emplace_back(a.first.value,
                                    to_words(a.if_users.complement(n), words));
      choice.alternatives.push_back(std::move(inside));
      choice.alternatives.push_back(std::move(outside));
      leaf_choices.push_back(std::move(choice));
    }
  }
  eff.assign(k * words, 0);
  for (std::size_t s = 0; s < k; ++s) {
    const auto w = to_words(relaxed[s], words);
    std::copy(w.begin(), w.end(), eff.begin() + static_cast<std::ptrdiff_t>(s * words));
  }
}

// ---------------------------------------------------------------------------

BacktrackSearch::BacktrackSearch(const BacktrackProblem& problem,
                                 const BudgetGuard& guard, SolveStats& stats,
                                 std::function<bool()> cancelled)
    : p_(problem), guard_(guard), stats_(stats), cancelled_(std::move(cancelled)) {
  auto make_frame = [&] {
    Frame f;
    f.adj.assign(p_.k * p_.words, 0);
    f.block_user.assign(p_.k, kNoUser);
    f.matched.assign(p_.words, 0);
    return f;
  };
  frames_.resize(p_.k + 1);
  for (auto& f : frames_) f = make_frame();
  leaf_frames_.resize(p_.leaf_choices.size() + 1);
  for (auto& f : leaf_frames_) f = make_frame();
  label_.assign(p_.k, -1);
  visited_.assign(p_.words, 0);
}

bool BacktrackSearch::ui_ok(std::uint32_t step) const {
  for (auto idx : p_.ui_by_step[step]) {
    const auto& c = p_.ui[idx];
    switch (c.kind) {
      case ConstraintKind::kSoD: {
        const auto a = label_[c.first];
        const auto b = label_[c.second];
        if (a >= 0 && b >= 0 && a == b) return false;
        break;
      }
      case ConstraintKind::kBoD: {
        const auto a = label_[c.first];
        const auto b = label_[c.second];
        if (a >= 0 && b >= 0 && a != b) return false;
        break;
      }
      case ConstraintKind::kAtMost:
      case ConstraintKind::kAtLeast: {
        std::uint64_t labels = 0;
        std::uint32_t open = 0;
        for_each_step(c.scope, [&](std::size_t s) {
          if (label_[s] >= 0) {
            labels |= std::uint64_t{1} << label_[s];
          } else {
            ++open;
          }
        });
        const auto used = static_cast<std::uint32_t>(std::popcount(labels));
        if (c.kind == ConstraintKind::kAtMost && used > c.r) return false;
        if (c.kind == ConstraintKind::kAtLeast && used + open < c.r) return false;
        break;
      }
      default:
        break;
    }
  }
  return true;
}

bool BacktrackSearch::try_block(Frame& f, std::size_t block) {
  const std::size_t W = p_.words;
  std::uint64_t* adj = &f.adj[block * W];
  for (std::size_t w = 0; w < W; ++w) {
    const std::uint64_t free = adj[w] & ~f.matched[w];
    if (free != 0) {
      const auto u = static_cast<std::uint32_t>(w * 64 + std::countr_zero(free));
      f.block_user[block] = u;
      f.matched[w] |= std::uint64_t{1} << (u & 63);
      return true;
    }
  }
  for (std::size_t w = 0; w < W; ++w) {
    std::uint64_t cand = adj[w] & ~visited_[w];
    while (cand != 0) {
      const auto u = static_cast<std::uint32_t>(w * 64 + std::countr_zero(cand));
      cand &= cand - 1;
      if (has_bit(visited_.data(), u)) continue;
      visited_[w] |= std::uint64_t{1} << (u & 63);
      std::size_t owner = f.blocks;
      for (std::size_t b = 0; b < f.blocks; ++b) {
        if (f.block_user[b] == u) {
          owner = b;
          break;
        }
      }
      if (owner == f.blocks || owner == block) continue;
      if (try_block(f, owner)) {
        f.block_user[block] = u;
        return true;
      }
    }
  }
  return false;
}

bool BacktrackSearch::augment(Frame& f, std::size_t block) {
  std::fill(visited_.begin(), visited_.end(), 0);
  return try_block(f, block);
}

bool BacktrackSearch::restore_block(Frame& f, std::size_t block) {
  const std::uint32_t u = f.block_user[block];
  if (u != kNoUser && has_bit(&f.adj[block * p_.words], u)) return true;
  if (u != kNoUser) {
    f.matched[u >> 6] &= ~(std::uint64_t{1} << (u & 63));
    f.block_user[block] = kNoUser;
  }
  return augment(f, block);
}

bool BacktrackSearch::place(std::size_t depth, std::uint32_t step, std::uint8_t label) {
  const std::size_t W = p_.words;
  const Frame& from = frames_[depth];
  Frame& f = frames_[depth + 1];
  f.blocks = from.blocks;
  std::copy_n(from.adj.begin(), from.blocks * W, f.adj.begin());
  std::copy_n(from.block_user.begin(), from.blocks, f.block_user.begin());
  std::copy(from.matched.begin(), from.matched.end(), f.matched.begin());

  const std::uint64_t* e = &p_.eff[step * W];
  std::uint64_t* adj = &f.adj[label * W];
  if (label == f.blocks) {
    ++f.blocks;
    std::copy_n(e, W, adj);
    f.block_user[label] = kNoUser;
  } else {
    for (std::size_t w = 0; w < W; ++w) adj[w] &= e[w];
  }
  if (!any_bits(adj, W) || !restore_block(f, label)) return false;

  for (auto idx : p_.sual_by_last_step[step]) {
    const auto& c = p_.sual[idx];
    std::uint64_t labels = 0;
    for_each_step(c.scope, [&](std::size_t s) { labels |= std::uint64_t{1} << label_[s]; });
    if (static_cast<std::uint32_t>(std::popcount(labels)) > c.h) continue;
    std::uint64_t lost = 0;
    for (std::uint64_t rest = labels; rest != 0; rest &= rest - 1) {
      const auto b = static_cast<std::size_t>(std::countr_zero(rest));
      std::uint64_t* badj = &f.adj[b * W];
      for (std::size_t w = 0; w < W; ++w) badj[w] &= c.supers[w];
      if (!any_bits(badj, W)) return false;
      const auto u = f.block_user[b];
      if (u != kNoUser && !has_bit(badj, u)) {
        f.matched[u >> 6] &= ~(std::uint64_t{1} << (u & 63));
        f.block_user[b] = kNoUser;
        lost |= std::uint64_t{1} << b;
      }
    }
    for (; lost != 0; lost &= lost - 1) {
      if (!augment(f, static_cast<std::size_t>(std::countr_zero(lost)))) return false;
    }
  }
  return true;
}

bool BacktrackSearch::tick() {
  ++stats_.nodes_expanded;
  if (guard_.nodes_exceeded(stats_.nodes_expanded)) {
    stop_ = SearchStatus::kBudget;
    return false;
  }
  if ((stats_.nodes_expanded & 1023U) == 0) {
    if (guard_.time_exceeded()) {
      stop_ = SearchStatus::kBudget;
      return false;
    }
    if (cancelled_ && cancelled_()) {
      stop_ = SearchStatus::kCancelled;
      return false;
    }
  }
  return true;
}

bool BacktrackSearch::leaf_choose(std::size_t choice, Frame& f) {
  if (choice == p_.leaf_choices.size()) {
    ++stats_.matchings_computed;
    std::vector<UserId> users(p_.k);
    for (std::size_t s = 0; s < p_.k; ++s) {
      users[s] = UserId{f.block_user[static_cast<std::size_t>(label_[s])]};
    }
    plan_ = Plan(std::move(users));
    return true;
  }
  const std::size_t W = p_.words;
  Frame& g = leaf_frames_[choice + 1];
  for (const auto& alt : p_.leaf_choices[choice].alternatives) {
    g.blocks = f.blocks;
    std::copy_n(f.adj.begin(), f.blocks * W, g.adj.begin());
    std::copy_n(f.block_user.begin(), f.blocks, g.block_user.begin());
    std::copy(f.matched.begin(), f.matched.end(), g.matched.begin());
    bool ok = true;
    std::uint64_t touched = 0;
    for (const auto& [step, users] : alt.restrict) {
      const auto b = static_cast<std::size_t>(label_[step]);
      std::uint64_t* badj = &g.adj[b * W];
      for (std::size_t w = 0; w < W; ++w) badj[w] &= users[w];
      if (!any_bits(badj, W)) {
        ok = false;
        break;
      }
      touched |= std::uint64_t{1} << b;
    }
    if (!ok) continue;
    std::uint64_t lost = 0;
    for (std::uint64_t rest = touched; rest != 0; rest &= rest - 1) {
      const auto b = static_cast<std::size_t>(std::countr_zero(rest));
      const auto u = g.block_user[b];
      if (u != kNoUser && !has_bit(&g.adj[b * W], u)) {
        g.matched[u >> 6] &= ~(std::uint64_t{1} << (u & 63));
        g.block_user[b] = kNoUser;
        lost |= std::uint64_t{1} << b;
      }
    }
    for (; ok && lost != 0; lost &= lost - 1) {
      ok = augment(g, static_cast<std::size_t>(std::countr_zero(lost)));
    }
    if (ok && leaf_choose(choice + 1, g)) return true;
  }
  return false;
}

bool BacktrackSearch::leaf(std::size_t depth) {
  ++stats_.patterns_visited;
  Frame& f = frames_[depth];
  if (p_.leaf_choices.empty()) return leaf_choose(0, f);
  Frame& g = leaf_frames_[0];
  g.blocks = f.blocks;
  std::copy_n(f.adj.begin(), f.blocks * p_.words, g.adj.begin());
  std::copy_n(f.block_user.begin(), f.blocks, g.block_user.begin());
  std::copy(f.matched.begin(), f.matched.end(), g.matched.begin());
  return leaf_choose(0, g);
}

SearchStatus BacktrackSearch::descend(std::size_t depth) {
  if (depth == p_.k) return leaf(depth) ? SearchStatus::kFound : SearchStatus::kExhausted;
  const std::uint32_t step = p_.order[depth];
  const std::size_t open = frames_[depth].blocks;
  for (std::size_t label = 0; label <= open; ++label) {
    if (!tick()) return stop_;
    label_[step] = static_cast<std::int16_t>(label);
    if (ui_ok(step) && place(depth, step, static_cast<std::uint8_t>(label))) {
      const auto r = descend(depth + 1);
      if (r != SearchStatus::kExhausted) {
        if (r != SearchStatus::kFound) label_[step] = -1;
        return r;
      }
    }
    label_[step] = -1;
  }
  return SearchStatus::kExhausted;
}

SearchStatus BacktrackSearch::run(std::span<const std::uint8_t> prefix) {
  plan_.reset();
  std::fill(label_.begin(), label_.end(), std::int16_t{-1});
  frames_[0].blocks = 0;
  std::fill(frames_[0].matched.begin(), frames_[0].matched.end(), 0);
  for (std::size_t d = 0; d < prefix.size(); ++d) {
    const auto step = p_.order[d];
    label_[step] = prefix[d];
    if (!ui_ok(step) || !place(d, step, prefix[d])) return SearchStatus::kExhausted;
  }
  return descend(prefix.size());
}

void BacktrackSearch::collect(std::size_t depth, std::size_t target,
                              std::vector<std::uint8_t>& path,
                              std::vector<std::vector<std::uint8_t>>& out) {
  if (depth == target) {
    out.push_back(path);
    return;
  }
  const std::uint32_t step = p_.order[depth];
  const std::size_t open = frames_[depth].blocks;
  for (std::size_t label = 0; label <= open; ++label) {
    label_[step] = static_cast<std::int16_t>(label);
    if (ui_ok(step) && place(depth, step, static_cast<std::uint8_t>(label))) {
      path.push_back(static_cast<std::uint8_t>(label));
      collect(depth + 1, target, path, out);
      path.pop_back();
    }
    label_[step] = -1;
  }
}

std::vector<std::vector<std::uint8_t>> BacktrackSearch::frontier(std::size_t depth) {
  std::fill(label_.begin(), label_.end(), std::int16_t{-1});
  frames_[0].blocks = 0;
  std::fill(frames_[0].matched.begin(), frames_[0].matched.end(), 0);
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<std::uint8_t> path;
  collect(0, std::min(depth, p_.k), path, out);
  return out;
}

// ---------------------------------------------------------------------------

SolveResult solve_backtracking_serial(const Instance& inst, const Budget& budget) {
  const BudgetGuard guard(budget);
  const BacktrackProblem problem(inst);
  SolveResult result;
  BacktrackSearch search(problem, guard, result.stats);
  switch (search.run()) {
    case SearchStatus::kFound:
      result.verdict = Verdict::kSat;
      result.plan = search.plan();
      break;
    case SearchStatus::kExhausted:
      result.verdict = Verdict::kUnsat;
      break;
    default:
      result.verdict = Verdict::kBudgetExceeded;
      break;
  }
  result.stats.wall_millis = guard.elapsed_millis();
  return result;
}

}  // namespace wsp::detail
