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

#ifndef WSP_MATCHING_HPP_
#define WSP_MATCHING_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "wsp/core.hpp"
#include "wsp/patterns.hpp"

namespace wsp {

/// G_p: blocks of a pattern on one side, users on the other. Block b is
/// adjacent to u iff u is authorised for every step of b.
struct BlockUserGraph {
  std::vector<UserSet> block_adjacency;
  std::size_t users = 0;

  std::size_t block_count() const { return block_adjacency.size(); }
};

struct Matching {
  std::vector<std::optional<UserId>> block_to_user;

  std::size_t size() const;
  bool saturating() const { return size() == block_to_user.size(); }
};

BlockUserGraph build_gp(const Pattern& p, const AuthorisationFunction& a,
                        std::size_t n);

/// Maximum-cardinality matching by Hopcroft-Karp. Blocks are processed in
/// ascending label order and users in ascending index order, so the result
/// is reproducible.
Matching max_matching(const BlockUserGraph& g);

/// Plan with pattern `p` built from a saturating matching of G_p, if any.
std::optional<Plan> plan_from_matching(const Pattern& p, const Matching& m);
std::optional<Plan> authorised_plan_for(const Pattern& p,
                                        const AuthorisationFunction& a,
                                        std::size_t n);

}  // namespace wsp

#endif  // WSP_MATCHING_HPP_
