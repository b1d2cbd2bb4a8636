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

#include "wsp/patterns.hpp"

#include <algorithm>
#include <charconv>

namespace wsp {

Pattern Pattern::from_rgs(std::vector<std::uint8_t> rgs) {
  Pattern p;
  std::size_t next_label = 0;
  for (std::size_t i = 0; i < rgs.size(); ++i) {
    if (rgs[i] > next_label) {
      throw InvariantViolation("label " + std::to_string(rgs[i]) +
                               " at position " + std::to_string(i) +
                               " breaks restricted growth");
    }
    if (rgs[i] == next_label) ++next_label;
  }
  if (rgs.size() > kMaxSteps) {
    throw InvariantViolation("pattern longer than the 64-step limit");
  }
  p.rgs_ = std::move(rgs);
  p.blocks_ = next_label;
  return p;
}

Pattern Pattern::parse(std::string_view text) {
  std::vector<std::uint8_t> rgs;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    unsigned value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value > 255) {
      throw InvariantViolation("bad pattern token '" + std::string(token) + "'");
    }
    rgs.push_back(static_cast<std::uint8_t>(value));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return from_rgs(std::move(rgs));
}

std::string Pattern::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rgs_.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(rgs_[i]);
  }
  return out;
}

Pattern pattern_of(const Plan& plan) {
  Pattern p;
  p.rgs_.reserve(plan.size());
  std::vector<UserId> seen;
  for (std::size_t s = 0; s < plan.size(); ++s) {
    const auto it = std::find(seen.begin(), seen.end(), plan[s]);
    if (it == seen.end()) {
      p.rgs_.push_back(static_cast<std::uint8_t>(seen.size()));
      seen.push_back(plan[s]);
    } else {
      p.rgs_.push_back(static_cast<std::uint8_t>(it - seen.begin()));
    }
  }
  p.blocks_ = seen.size();
  return p;
}

Pattern extend(const Pattern& prefix, std::size_t choice) {
  if (choice > prefix.blocks_) {
    throw InvariantViolation("block label " + std::to_string(choice) +
                             " exceeds block count " +
                             std::to_string(prefix.blocks_));
  }
  if (prefix.size() >= kMaxSteps) {
    throw InvariantViolation("pattern longer than the 64-step limit");
  }
  Pattern p = prefix;
  p.rgs_.push_back(static_cast<std::uint8_t>(choice));
  if (choice == prefix.blocks_) ++p.blocks_;
  return p;
}

std::vector<StepMask> blocks(const Pattern& p) {
  std::vector<StepMask> out(p.block_count(), 0);
  for (std::size_t s = 0; s < p.size(); ++s) out[p[s]] |= step_bit(s);
  return out;
}

std::size_t blocks_touching(const Pattern& p, StepMask scope) {
  std::uint64_t labels = 0;
  for_each_step(scope, [&](std::size_t s) { labels |= std::uint64_t{1} << p[s]; });
  return static_cast<std::size_t>(std::popcount(labels));
}

bool satisfies(const Pattern& p, const Constraint& c) {
  if (const auto* b = std::get_if<BindingOfDuty>(&c)) {
    return p[b->first.value] == p[b->second.value];
  }
  if (const auto* s = std::get_if<SeparationOfDuty>(&c)) {
    return p[s->first.value] != p[s->second.value];
  }
  if (const auto* a = std::get_if<AtMost>(&c)) {
    return blocks_touching(p, a->scope) <= a->r;
  }
  if (const auto* a = std::get_if<AtLeast>(&c)) {
    return blocks_touching(p, a->scope) >= a->r;
  }
  throw InvariantViolation("pattern-level check of non-UI constraint " +
                           describe(c));
}

// ---------------------------------------------------------------------------
// PatternStream

PatternStream::PatternStream(std::size_t k) : PatternStream(k, Pattern{}) {}

PatternStream::PatternStream(std::size_t k, const Pattern& prefix)
    : k_(k), fixed_(prefix.size()) {
  if (prefix.size() > k) {
    throw InvariantViolation("prefix longer than the pattern");
  }
  if (k > kMaxSteps) {
    throw InvariantViolation("pattern longer than the 64-step limit");
  }
  current_ = prefix;
  current_.rgs_.resize(k, 0);
  if (k > 0 && prefix.size() == 0) current_.blocks_ = 1;
  prefix_max_.resize(k);
  done_ = (k == 0);
}

bool PatternStream::advance() {
  if (done_) return false;
  auto& b = current_.rgs_;
  if (!started_) {
    started_ = true;
    std::uint8_t m = 0;
    for (std::size_t i = 0; i < k_; ++i) {
      m = std::max(m, b[i]);
      prefix_max_[i] = m;
    }
    current_.blocks_ = static_cast<std::size_t>(m) + 1;
    return true;
  }
  std::size_t i = k_;
  const std::size_t lowest = std::max<std::size_t>(fixed_, 1);
  while (i-- > lowest) {
    if (b[i] <= prefix_max_[i - 1]) break;
  }
  if (i + 1 == lowest || i < lowest || k_ <= lowest) {
    done_ = true;
    return false;
  }
  ++b[i];
  prefix_max_[i] = std::max(prefix_max_[i - 1], b[i]);
  for (std::size_t j = i + 1; j < k_; ++j) {
    b[j] = 0;
    prefix_max_[j] = prefix_max_[i];
  }
  current_.blocks_ = static_cast<std::size_t>(prefix_max_[k_ - 1]) + 1;
  return true;
}

std::vector<PatternStream> PatternStream::split(std::size_t depth) const {
  depth = std::clamp(depth, fixed_, k_);
  Pattern prefix;
  prefix.rgs_.assign(current_.rgs_.begin(), current_.rgs_.begin() + static_cast<std::ptrdiff_t>(fixed_));
  prefix.blocks_ = prefix.rgs_.empty()
                       ? 0
                       : static_cast<std::size_t>(*std::max_element(
                             prefix.rgs_.begin(), prefix.rgs_.end())) + 1;
  std::vector<PatternStream> out;
  if (k_ == 0) return out;
  PatternStream heads(depth, prefix);
  while (heads.advance()) out.emplace_back(k_, heads.current());
  return out;
}

std::vector<Pattern> enumerate_patterns(std::size_t k) {
  std::vector<Pattern> out;
  PatternStream stream(k);
  while (stream.advance()) out.push_back(stream.current());
  return out;
}

std::vector<Pattern> pattern_prefixes(std::size_t depth) {
  return enumerate_patterns(depth);
}

// ---------------------------------------------------------------------------
// Bell numbers

BellNumber bell(int k) {
  if (k < 0 || k > 30) {
    throw InvariantViolation("bell(k) supports 0 <= k <= 30, got " +
                             std::to_string(k));
  }
  if (k == 0) return 1;
  // Row r of the Bell triangle starts with B_r and ends with B_{r+1}.
  std::vector<BellNumber> row{1};
  for (int r = 1; r < k; ++r) {
    std::vector<BellNumber> next;
    next.reserve(row.size() + 1);
    next.push_back(row.back());
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.back();
}

std::string to_string(BellNumber value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out += static_cast<char>('0' + static_cast<int>(value % 10));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace wsp
