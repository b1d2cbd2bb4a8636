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

#include "wsp/generator.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace wsp {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw InvariantViolation("below(0) has no values");
  if (bound == 1) return 0;
  const int bits = std::bit_width(bound - 1);
  while (true) {
    const std::uint64_t v = next() >> (64 - bits);
    if (v < bound) return v;
  }
}

std::vector<std::uint32_t> SplitMix64::sample(std::uint32_t n, std::uint32_t count) {
  if (count > n) {
    throw InvariantViolation("cannot draw " + std::to_string(count) +
                             " distinct values from " + std::to_string(n));
  }
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0U);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::uint32_t>(below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  SplitMix64 g(seed ^ (salt * 0xD1B54A32D192ED03ULL));
  g.next();
  return g.next();
}

namespace {

enum Stream : std::uint64_t { kAuth = 1, kSod, kAm3, kSual, kWl, kAda };

void require(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation("generator: " + what);
}

UserSet users_of(const std::vector<std::uint32_t>& v) { return UserSet::from_indices(v); }

StepMask steps_mask(const std::vector<std::uint32_t>& v) {
  StepMask m = 0;
  for (const auto s : v) m |= step_bit(s);
  return m;
}

/// Each user gets a uniformly sized random step list.
AuthorisationFunction draw_auth(std::size_t k, std::size_t n, SplitMix64& rng) {
  std::vector<UserSet> per_step(k);
  const std::uint64_t max_size = std::max<std::size_t>(1, k / 2);
  for (std::uint32_t u = 0; u < n; ++u) {
    const auto size = static_cast<std::uint32_t>(rng.between(1, max_size));
    for (const auto s : rng.sample(static_cast<std::uint32_t>(k), size)) {
      per_step[s].insert(u);
    }
  }
  return AuthorisationFunction(std::move(per_step));
}

}  // namespace

void check_spec(const GenSpec& spec) {
  const auto& c = spec.counts;
  require(spec.k >= 1, "k must be at least 1");
  require(spec.k <= kMaxSteps, "k must be at most " + std::to_string(kMaxSteps));
  require(spec.n >= 1, "n must be at least 1");
  require(c.sod <= spec.k * (spec.k - 1) / 2,
          "sod count exceeds k(k-1)/2 = " + std::to_string(spec.k * (spec.k - 1) / 2));
  require(c.am3 == 0 || spec.k >= 5, "am3 needs k >= 5 (scope of 5 steps)");
  require(c.sual == 0 || spec.k >= 5, "sual needs k >= 5 (scope of 5 steps)");
  require(c.sual == 0 || spec.n >= 5, "sual needs n >= 5 (5 super users)");
  require(c.wl == 0 || spec.k >= 2, "wl needs k >= 2 (scope of 2 steps)");
  require(c.wl == 0 || spec.n >= 4, "wl needs n >= 4 (teams of n/4 users)");
  require(c.ada == 0 || spec.k >= 2, "ada needs k >= 2");
  require(c.ada == 0 || spec.n >= 2, "ada needs n >= 2 (sets of n/2 users)");
}

GeneratedInstance generate(const GenSpec& spec) {
  check_spec(spec);
  const auto k = static_cast<std::uint32_t>(spec.k);
  const auto n = static_cast<std::uint32_t>(spec.n);

  GeneratedInstance out;
  out.meta.seed = spec.seed;

  AuthorisationFunction auth;
  for (std::uint32_t attempt = 0;; ++attempt) {
    SplitMix64 rng(mix_seed(mix_seed(spec.seed, attempt), kAuth));
    auth = draw_auth(k, n, rng);
    if (!auth.has_empty_step()) {
      out.meta.regenerations = attempt;
      break;
    }
    require(attempt < 10000, "could not authorise every step in 10000 draws");
  }
  const std::uint64_t base = mix_seed(spec.seed, out.meta.regenerations);

  std::vector<Constraint> cs;
  {
    SplitMix64 rng(mix_seed(base, kSod));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t a = 0; a < k; ++a) {
      for (std::uint32_t b = a + 1; b < k; ++b) pairs.emplace_back(a, b);
    }
    for (const auto i : rng.sample(static_cast<std::uint32_t>(pairs.size()), spec.counts.sod)) {
      cs.push_back(SeparationOfDuty{StepId{pairs[i].first}, StepId{pairs[i].second}});
    }
  }
  {
    SplitMix64 rng(mix_seed(base, kAm3));
    for (std::uint32_t i = 0; i < spec.counts.am3; ++i) {
      cs.push_back(AtMost{3, steps_mask(rng.sample(k, 5))});
    }
  }
  {
    SplitMix64 rng(mix_seed(base, kSual));
    for (std::uint32_t i = 0; i < spec.counts.sual; ++i) {
      const auto scope = steps_mask(rng.sample(k, 5));
      cs.push_back(SuperUserAtLeast{scope, 3, users_of(rng.sample(n, 5))});
    }
  }
  {
    SplitMix64 rng(mix_seed(base, kWl));
    const std::uint32_t team = n / 4;
    for (std::uint32_t i = 0; i < spec.counts.wl; ++i) {
      const auto scope = steps_mask(rng.sample(k, 2));
      const auto users = rng.sample(n, 2 * team);
      std::vector<std::uint32_t> t1(users.begin(), users.begin() + team);
      std::vector<std::uint32_t> t2(users.begin() + team, users.end());
      cs.push_back(WangLi{scope, {users_of(t1), users_of(t2)}});
    }
  }
  {
    SplitMix64 rng(mix_seed(base, kAda));
    const std::uint32_t half = n / 2;
    for (std::uint32_t i = 0; i < spec.counts.ada; ++i) {
      const auto steps = rng.sample(k, 2);
      const auto u1 = users_of(rng.sample(n, half));
      const auto u2 = users_of(rng.sample(n, half));
      cs.push_back(AssignmentDependent{StepId{steps[0]}, StepId{steps[1]}, u1, u2});
    }
  }
  out.instance = Instance(k, n, std::move(auth), std::move(cs));
  return out;
}

// ---------------------------------------------------------------------------
// Families and calibration

std::string family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kSod: return "sod";
    case FamilyKind::kAm3: return "am3";
    case FamilyKind::kSual: return "sual";
    case FamilyKind::kWl: return "wl";
    case FamilyKind::kAda: return "ada";
  }
  return "?";
}

FamilyKind parse_family(const std::string& name) {
  if (name == "sod" || name == "wsp") return FamilyKind::kSod;
  if (name == "am3") return FamilyKind::kAm3;
  if (name == "sual") return FamilyKind::kSual;
  if (name == "wl") return FamilyKind::kWl;
  if (name == "ada") return FamilyKind::kAda;
  throw InvariantViolation("unknown family '" + name +
                           "' (expected wsp, sod, am3, sual, wl or ada)");
}

namespace {

std::uint32_t& count_of(GenCounts& c, FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kSod: return c.sod;
    case FamilyKind::kAm3: return c.am3;
    case FamilyKind::kSual: return c.sual;
    case FamilyKind::kWl: return c.wl;
    case FamilyKind::kAda: return c.ada;
  }
  return c.sod;
}

std::string format_rate(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", r);
  return buf;
}

}  // namespace

std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index) {
  return mix_seed(master, 0x5EED0000ULL + index);
}

double sat_rate(const GenSpec& base, std::uint32_t samples, std::uint64_t master,
                unsigned jobs, const Budget& budget) {
  if (samples == 0) return 0.0;
  check_spec(base);
  std::vector<char> sat(samples, 0);
  const auto count = static_cast<std::ptrdiff_t>(samples);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs) if (jobs > 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    GenSpec spec = base;
    spec.seed = sample_seed(master, static_cast<std::uint64_t>(i));
    const auto inst = generate(spec);
    const auto result = solve_backtracking(inst.instance, SolveOptions{budget, 1});
    sat[static_cast<std::size_t>(i)] = result.verdict == Verdict::kSat ? 1 : 0;
  }
  return static_cast<double>(std::accumulate(sat.begin(), sat.end(), 0)) / samples;
}

PTCalibration calibrate_count(const GenSpec& base, FamilyKind varied,
                              const CalibrateOptions& opts) {
  if (opts.samples < 20) throw InvariantViolation("calibration needs at least 20 samples");
  if (!(0.0 < opts.lo && opts.lo < opts.hi && opts.hi < 1.0)) {
    throw InvariantViolation("calibration band must satisfy 0 < lo < hi < 1");
  }
  const auto k = base.k;
  const auto cap = static_cast<std::uint32_t>(k * (k - 1) / 2);
  PTCalibration out;
  out.samples = opts.samples;
  std::vector<std::optional<double>> memo(cap + 1);
  auto rate = [&](std::uint32_t e) {
    if (!memo[e]) {
      GenSpec spec = base;
      count_of(spec.counts, varied) += e;
      memo[e] = sat_rate(spec, opts.samples, opts.master_seed, opts.jobs, opts.budget);
      ++out.probes;
    }
    return *memo[e];
  };

  // Smallest e with rate(e) <= hi.
  if (rate(cap) > opts.hi) {
    throw InvariantViolation("calibration: SAT rate " + format_rate(rate(cap)) + " at " +
                             family_name(varied) + " count " + std::to_string(cap) +
                             " is still above " + format_rate(opts.hi));
  }
  std::uint32_t lo_e = 0;
  std::uint32_t hi_e = cap;
  if (rate(0) <= opts.hi) {
    hi_e = 0;
  } else {
    // Invariant: rate(lo_e) > hi >= rate(hi_e).
    while (hi_e - lo_e > 1) {
      const std::uint32_t mid = lo_e + (hi_e - lo_e) / 2;
      (rate(mid) > opts.hi ? lo_e : hi_e) = mid;
    }
  }
  if (rate(hi_e) < opts.lo) {
    std::string msg = "calibration: no " + family_name(varied) + " count has a SAT rate in [" +
                      format_rate(opts.lo) + ", " + format_rate(opts.hi) + "]; rate is ";
    if (hi_e > 0) msg += format_rate(rate(hi_e - 1)) + " at " + std::to_string(hi_e - 1) + " and ";
    msg += format_rate(rate(hi_e)) + " at " + std::to_string(hi_e);
    throw InvariantViolation(msg);
  }
  out.e_value = hi_e;
  out.sat_rate = rate(hi_e);
  return out;
}

PTCalibration calibrate_pt(std::size_t k, std::size_t n, const CalibrateOptions& opts) {
  GenSpec base{k, n, {}, 0};
  base.counts.am3 = static_cast<std::uint32_t>(k);
  return calibrate_count(base, FamilyKind::kSod, opts);
}

std::uint32_t three_quarters(std::uint32_t e) {
  // round(3e/4) with ties (remainder 2) going down.
  const std::uint32_t q = 3 * e / 4;
  const std::uint32_t rem = 3 * e % 4;
  return rem > 2 ? q + 1 : q;
}

GenSpec family_spec(FamilyKind kind, std::size_t k, std::size_t n, std::uint32_t e_sod,
                    std::uint32_t e_kind) {
  GenSpec spec{k, n, {}, 0};
  spec.counts.am3 = static_cast<std::uint32_t>(k);
  if (kind == FamilyKind::kSod) {
    spec.counts.sod = e_sod;
    return spec;
  }
  spec.counts.sod = three_quarters(e_sod);
  count_of(spec.counts, kind) += e_kind;
  return spec;
}

GeneratedInstance FamilyStream::next() {
  GenSpec spec = base_;
  spec.seed = sample_seed(master_, index_++);
  auto out = generate(spec);
  out.meta.family = kind_ == FamilyKind::kSod ? "wsp" : family_name(kind_);
  return out;
}

FamilyStream make_family(FamilyKind kind, std::size_t k, std::size_t n,
                         std::uint64_t master_seed, std::uint32_t e_sod,
                         std::optional<std::uint32_t> e_kind, const CalibrateOptions& opts) {
  if (kind != FamilyKind::kSod && !e_kind) {
    e_kind = calibrate_count(family_spec(kind, k, n, e_sod, 0), kind, opts).e_value;
  }
  return FamilyStream(kind, family_spec(kind, k, n, e_sod, e_kind.value_or(0)), master_seed);
}

}  // namespace wsp
