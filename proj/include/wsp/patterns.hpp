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

#ifndef WSP_PATTERNS_HPP_
#define WSP_PATTERNS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsp/core.hpp"

namespace wsp {

/// A set partition of the steps, stored as a restricted growth string:
/// rgs[0] == 0 and rgs[i] <= 1 + max(rgs[0..i-1]). Steps with equal labels
/// share a block. A pattern may also describe only a prefix of the steps.
class Pattern {
 public:
  Pattern() = default;

  /// Throws InvariantViolation if `rgs` is not in canonical form.
  static Pattern from_rgs(std::vector<std::uint8_t> rgs);
  /// Parses the comma-separated text form, e.g. "0,1,0,2".
  static Pattern parse(std::string_view text);

  std::size_t size() const { return rgs_.size(); }
  std::size_t block_count() const { return blocks_; }
  std::uint8_t operator[](std::size_t step) const { return rgs_[step]; }
  std::span<const std::uint8_t> rgs() const { return rgs_; }
  std::string to_string() const;

  friend auto operator<=>(const Pattern&, const Pattern&) = default;

 private:
  friend class PatternStream;
  friend Pattern extend(const Pattern&, std::size_t);
  friend Pattern pattern_of(const Plan&);

  std::vector<std::uint8_t> rgs_;
  std::size_t blocks_ = 0;
};

/// Canonical pattern of a plan: steps share a block iff they share a user.
Pattern pattern_of(const Plan& plan);

/// Appends one step to a prefix, either into block `choice` or, when
/// choice == block_count(), into a new block.
Pattern extend(const Pattern& prefix, std::size_t choice);

/// Block b of the result holds the steps labelled b.
std::vector<StepMask> blocks(const Pattern& p);

/// Number of distinct blocks the pattern uses on `scope`.
std::size_t blocks_touching(const Pattern& p, StepMask scope);

/// Pattern-level satisfaction of a UI constraint. Throws for non-UI kinds.
bool satisfies(const Pattern& p, const Constraint& c);

/// Lexicographic stream over all patterns of k steps that start with a fixed
/// prefix (the empty prefix gives every pattern). Copyable, so a range can be
/// split into independent prefix streams for parallel workers.
class PatternStream {
 public:
  explicit PatternStream(std::size_t k);
  PatternStream(std::size_t k, const Pattern& prefix);

  /// Moves to the next pattern; the first call yields the first pattern.
  /// Returns false once the range is exhausted.
  bool advance();
  const Pattern& current() const { return current_; }

  /// Prefix streams of length `depth` covering this stream's range, in
  /// lexicographic order.
  std::vector<PatternStream> split(std::size_t depth) const;

 private:
  std::size_t k_;
  std::size_t fixed_;
  bool started_ = false;
  bool done_ = false;
  Pattern current_;
  std::vector<std::uint8_t> prefix_max_;
};

/// All patterns of k steps in lexicographic RGS order (k = 0 gives none).
std::vector<Pattern> enumerate_patterns(std::size_t k);

/// All length-`depth` prefixes in lexicographic order.
std::vector<Pattern> pattern_prefixes(std::size_t depth);

__extension__ using BellNumber = unsigned __int128;

/// Bell number B_k for 0 <= k <= 30 via the Bell triangle.
BellNumber bell(int k);
std::string to_string(BellNumber value);

}  // namespace wsp

#endif  // WSP_PATTERNS_HPP_
