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

#include "wsp/matching.hpp"

#include <limits>

namespace wsp {

std::size_t Matching::size() const {
  std::size_t c = 0;
  for (const auto& u : block_to_user) c += u.has_value() ? 1 : 0;
  return c;
}

BlockUserGraph build_gp(const Pattern& p, const AuthorisationFunction& a,
                        std::size_t n) {
  if (p.size() != a.steps()) {
    throw InvariantViolation("pattern and authorisation cover different step sets");
  }
  BlockUserGraph g;
  g.users = n;
  g.block_adjacency.assign(p.block_count(), UserSet::full(n));
  for (std::size_t s = 0; s < p.size(); ++s) g.block_adjacency[p[s]] &= a[s];
  return g;
}

namespace {

constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BlockUserGraph& g)
      : adj_(g.block_count()),
        block_mate_(g.block_count(), kNil),
        user_mate_(g.users, kNil),
        dist_(g.block_count()) {
    for (std::size_t b = 0; b < g.block_count(); ++b) {
      g.block_adjacency[b].for_each([&](std::uint32_t u) {
        if (u < g.users) adj_[b].push_back(u);
      });
    }
  }

  Matching run() {
    while (bfs()) {
      for (std::size_t b = 0; b < adj_.size(); ++b) {
        if (block_mate_[b] == kNil) dfs(static_cast<std::uint32_t>(b));
      }
    }
    Matching m;
    m.block_to_user.resize(adj_.size());
    for (std::size_t b = 0; b < adj_.size(); ++b) {
      if (block_mate_[b] != kNil) m.block_to_user[b] = UserId{block_mate_[b]};
    }
    return m;
  }

 private:
  static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

  // Layers blocks by alternating-path distance from the free blocks; true if
  // some free user is reachable.
  bool bfs() {
    std::vector<std::uint32_t> queue;
    queue.reserve(adj_.size());
    for (std::size_t b = 0; b < adj_.size(); ++b) {
      if (block_mate_[b] == kNil) {
        dist_[b] = 0;
        queue.push_back(static_cast<std::uint32_t>(b));
      } else {
        dist_[b] = kInf;
      }
    }
    bool reachable_free = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto b = queue[head];
      for (auto u : adj_[b]) {
        const auto next = user_mate_[u];
        if (next == kNil) {
          reachable_free = true;
        } else if (dist_[next] == kInf) {
          dist_[next] = dist_[b] + 1;
          queue.push_back(next);
        }
      }
    }
    return reachable_free;
  }

  bool dfs(std::uint32_t b) {
    for (auto u : adj_[b]) {
      const auto next = user_mate_[u];
      if (next == kNil || (dist_[next] == dist_[b] + 1 && dfs(next))) {
        block_mate_[b] = u;
        user_mate_[u] = b;
        return true;
      }
    }
    dist_[b] = kInf;
    return false;
  }

  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint32_t> block_mate_;
  std::vector<std::uint32_t> user_mate_;
  std::vector<std::uint32_t> dist_;
};

}  // namespace

Matching max_matching(const BlockUserGraph& g) { return HopcroftKarp(g).run(); }

std::optional<Plan> plan_from_matching(const Pattern& p, const Matching& m) {
  if (m.block_to_user.size() != p.block_count() || !m.saturating()) {
    return std::nullopt;
  }
  std::vector<UserId> users(p.size());
  for (std::size_t s = 0; s < p.size(); ++s) users[s] = *m.block_to_user[p[s]];
  return Plan(std::move(users));
}

std::optional<Plan> authorised_plan_for(const Pattern& p,
                                        const AuthorisationFunction& a,
                                        std::size_t n) {
  return plan_from_matching(p, max_matching(build_gp(p, a, n)));
}

}  // namespace wsp
