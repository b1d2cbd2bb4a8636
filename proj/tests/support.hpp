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

// Fixtures, random instance builders and independent oracles for the tests.

#ifndef WSP_TESTS_SUPPORT_HPP_
#define WSP_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wsp/core.hpp"
#include "wsp/patterns.hpp"

namespace wsp::test {

#ifndef WSP_FIXTURE_DIR
#define WSP_FIXTURE_DIR "tests/fixtures"
#endif

inline std::string fixture(const std::string& name) {
  return std::string(WSP_FIXTURE_DIR) + "/" + name;
}

/// The purchase-order workflow: 6 steps, 8 users, 4 SoD and 1 BoD (0-based).
inline Instance running_example() {
  std::vector<UserSet> auth{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {2, 3, 4, 7}, {4, 5, 6}};
  std::vector<Constraint> cs{
      SeparationOfDuty{StepId{0}, StepId{1}}, SeparationOfDuty{StepId{0}, StepId{3}},
      SeparationOfDuty{StepId{2}, StepId{4}}, SeparationOfDuty{StepId{3}, StepId{5}},
      BindingOfDuty{StepId{0}, StepId{2}},
  };
  return Instance(6, 8, AuthorisationFunction(std::move(auth)), std::move(cs));
}

/// The reference plan of the running example.
inline Plan running_example_plan() { return Plan::from_indices({0, 1, 0, 3, 2, 4}); }

// ---------------------------------------------------------------------------
// Random instances (std::mt19937_64, independent of the library generator)

enum class Mix { kSod, kBod, kAtMost, kAtLeast, kSual, kWl, kAda, kMixed };

inline const char* mix_name(Mix m) {
  switch (m) {
    case Mix::kSod: return "sod";
    case Mix::kBod: return "bod";
    case Mix::kAtMost: return "at_most";
    case Mix::kAtLeast: return "at_least";
    case Mix::kSual: return "sual";
    case Mix::kWl: return "wl";
    case Mix::kAda: return "ada";
    case Mix::kMixed: return "mixed";
  }
  return "?";
}

inline const std::vector<Mix>& all_mixes() {
  static const std::vector<Mix> v{Mix::kSod,  Mix::kBod, Mix::kAtMost, Mix::kAtLeast,
                                  Mix::kSual, Mix::kWl,  Mix::kAda,    Mix::kMixed};
  return v;
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::vector<std::uint32_t> distinct(std::size_t n, std::size_t count) {
    std::vector<std::uint32_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<std::uint32_t>(i);
    std::shuffle(all.begin(), all.end(), rng_);
    all.resize(count);
    std::sort(all.begin(), all.end());
    return all;
  }

  UserSet users(std::size_t n, double p) {
    UserSet out;
    for (std::size_t u = 0; u < n; ++u) {
      if (coin(p)) out.insert(u);
    }
    return out;
  }

  StepMask scope(std::size_t k, std::size_t size) {
    StepMask m = 0;
    for (const auto s : distinct(k, size)) m |= step_bit(s);
    return m;
  }

  Constraint constraint(Mix kind, std::size_t k, std::size_t n) {
    switch (kind) {
      case Mix::kSod:
      case Mix::kBod: {
        const auto p = distinct(k, 2);
        if (kind == Mix::kSod) return SeparationOfDuty{StepId{p[0]}, StepId{p[1]}};
        return BindingOfDuty{StepId{p[0]}, StepId{p[1]}};
      }
      case Mix::kAtMost:
      case Mix::kAtLeast: {
        const auto size = uniform(2, k);
        const auto r = static_cast<std::uint32_t>(uniform(1, size));
        if (kind == Mix::kAtMost) return AtMost{r, scope(k, size)};
        return AtLeast{r, scope(k, size)};
      }
      case Mix::kSual: {
        UserSet supers = users(n, 0.4);
        if (supers.empty()) supers.insert(uniform(0, n - 1));
        return SuperUserAtLeast{scope(k, uniform(2, k)),
                                static_cast<std::uint32_t>(uniform(1, 3)), supers};
      }
      case Mix::kWl: {
        const auto teams = uniform(1, std::min<std::size_t>(3, n));
        std::vector<UserSet> t(teams);
        for (std::size_t u = 0; u < n; ++u) {
          const auto slot = uniform(0, teams);  // teams == unassigned
          if (slot < teams) t[slot].insert(u);
        }
        return WangLi{scope(k, uniform(2, k)), t};
      }
      case Mix::kAda: {
        const auto p = distinct(k, 2);
        return AssignmentDependent{StepId{p[0]}, StepId{p[1]}, users(n, 0.5), users(n, 0.5)};
      }
      case Mix::kMixed: break;
    }
    return constraint(static_cast<Mix>(uniform(0, 6)), k, n);
  }

  /// k in [2, max_k], n in [1, max_n], density-`p` authorisations and 1-3
  /// constraints of the requested mix.
  Instance instance(Mix kind, std::size_t max_k, std::size_t max_n, double p = 0.6) {
    const auto k = uniform(2, max_k);
    const auto n = uniform(1, max_n);
    std::vector<UserSet> auth(k);
    for (auto& a : auth) a = users(n, p);
    std::vector<Constraint> cs;
    const auto count = uniform(1, 3);
    for (std::size_t i = 0; i < count; ++i) cs.push_back(constraint(kind, k, n));
    return Instance(k, n, AuthorisationFunction(std::move(auth)), std::move(cs));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Oracles

/// Bell numbers by the Bell triangle, in plain 64-bit arithmetic (k <= 25).
inline std::vector<std::uint64_t> bell_triangle(std::size_t max_k) {
  std::vector<std::uint64_t> out{1};
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 1; i <= max_k; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (const auto v : row) next.push_back(next.back() + v);
    out.push_back(next.front());
    row = std::move(next);
  }
  return out;
}

/// B_{m+1} = sum_i C(m, i) B_i.
inline std::vector<std::uint64_t> bell_binomial(std::size_t max_k) {
  std::vector<std::uint64_t> b{1};
  for (std::size_t m = 0; m < max_k; ++m) {
    std::uint64_t c = 1;
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i <= m; ++i) {
      sum += c * b[i];
      c = c * (m - i) / (i + 1);
    }
    b.push_back(sum);
  }
  return b;
}

/// Every set partition of k steps by recursive insertion, as canonical
/// label vectors (sorted).
inline std::vector<std::vector<std::uint8_t>> partitions_by_insertion(std::size_t k) {
  std::vector<std::vector<std::vector<std::size_t>>> parts{{}};
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<std::vector<std::vector<std::size_t>>> next;
    for (const auto& p : parts) {
      for (std::size_t b = 0; b <= p.size(); ++b) {
        auto q = p;
        if (b == q.size()) q.emplace_back();
        q[b].push_back(s);
        next.push_back(std::move(q));
      }
    }
    parts = std::move(next);
  }
  std::vector<std::vector<std::uint8_t>> out;
  for (const auto& p : parts) {
    std::vector<int> label(k, -1);
    int next_label = 0;
    // Blocks ordered by their smallest step.
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& block : sorted) {
      for (const auto s : block) label[s] = next_label;
      ++next_label;
    }
    out.emplace_back(label.begin(), label.end());
  }
  std::sort(out.begin(), out.end());
  if (k == 0) out.clear();
  return out;
}

/// A plan with pattern p whose block i goes to user i.
inline Plan canonical_plan(const Pattern& p) {
  std::vector<std::uint32_t> users(p.rgs().begin(), p.rgs().end());
  return Plan::from_indices(users);
}

/// True when some injective block -> user map respects the authorisation.
inline bool saturating_exists(const std::vector<StepMask>& block_steps,
                              const AuthorisationFunction& a, std::size_t n) {
  std::vector<UserSet> allowed;
  for (const auto mask : block_steps) {
    UserSet u = UserSet::full(n);
    for_each_step(mask, [&](std::size_t s) { u &= a[s]; });
    allowed.push_back(u);
  }
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> place = [&](std::size_t b) {
    if (b == allowed.size()) return true;
    for (std::size_t u = 0; u < n; ++u) {
      if (used[u] || !allowed[b].contains(u)) continue;
      used[u] = true;
      if (place(b + 1)) return true;
      used[u] = false;
    }
    return false;
  };
  return place(0);
}

/// All n^k plans in lexicographic order.
inline void for_each_plan(std::size_t k, std::size_t n,
                          const std::function<void(const Plan&)>& visit) {
  if (n == 0 && k > 0) return;
  std::vector<std::uint32_t> u(k, 0);
  while (true) {
    visit(Plan::from_indices(u));
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++u[i] < n) break;
      u[i] = 0;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

inline std::set<Plan> valid_plan_set(const Instance& inst) {
  std::set<Plan> out;
  for_each_plan(inst.steps(), inst.users(), [&](const Plan& p) {
    bool ok = true;
    for (std::size_t s = 0; s < p.size() && ok; ++s) ok = inst.auth()[s].contains(p[s]);
    for (const auto& c : inst.constraints()) ok = ok && is_eligible(p, c);
    if (ok) out.insert(p);
  });
  return out;
}

}  // namespace wsp::test

#endif  // WSP_TESTS_SUPPORT_HPP_
