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

#include <doctest.h>

#include <map>

#include "support.hpp"
#include "wsp/generator.hpp"
#include "wsp/solver.hpp"

using namespace wsp;

TEST_CASE("SplitMix64 reference values") {
  // First outputs for seed 1234567 of the reference implementation.
  SplitMix64 g(1234567);
  CHECK(g.next() == 6457827717110365317ULL);
  CHECK(g.next() == 3203168211198807973ULL);
  CHECK(g.next() == 9817491932198370423ULL);
}

TEST_CASE("below and sample stay in range and look uniform") {
  SplitMix64 g(9);
  std::map<std::uint64_t, int> hist;
  for (int i = 0; i < 60000; ++i) ++hist[g.below(6)];
  CHECK(hist.size() == 6);
  for (const auto& [v, c] : hist) {
    CHECK(v < 6);
    CHECK(c > 9400);
    CHECK(c < 10600);
  }
  for (int i = 0; i < 200; ++i) {
    auto s = g.sample(20, 7);
    CHECK(s.size() == 7);
    std::sort(s.begin(), s.end());
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    CHECK(s.back() < 20);
  }
  CHECK(g.sample(5, 5).size() == 5);
}

TEST_CASE("generate is deterministic and respects the counts") {
  GenSpec spec{10, 100, {12, 10, 2, 2, 3}, 77};
  const auto a = generate(spec);
  const auto b = generate(spec);
  CHECK(a.instance == b.instance);
  std::map<ConstraintKind, int> kinds;
  for (const auto& c : a.instance.constraints()) ++kinds[kind_of(c)];
  CHECK(kinds[ConstraintKind::kSoD] == 12);
  CHECK(kinds[ConstraintKind::kAtMost] == 10);
  CHECK(kinds[ConstraintKind::kSual] == 2);
  CHECK(kinds[ConstraintKind::kWl] == 2);
  CHECK(kinds[ConstraintKind::kAda] == 3);
  CHECK_FALSE(a.instance.auth().has_empty_step());
  for (std::size_t s = 0; s < 10; ++s) CHECK(a.instance.auth()[s].count() >= 1);
  // SoD pairs are distinct.
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const auto& c : a.instance.constraints()) {
    if (const auto* sod = std::get_if<SeparationOfDuty>(&c)) {
      CHECK(pairs.insert({sod->first.value, sod->second.value}).second);
    }
  }
  spec.seed = 78;
  CHECK_FALSE(generate(spec).instance == a.instance);
}

TEST_CASE("per-user authorisation sizes average (1 + floor(k/2)) / 2") {
  for (const std::size_t k : {2U, 5U, 10U, 16U}) {
    const auto g = generate(GenSpec{k, 10000, {}, 5});
    std::size_t total = 0;
    for (std::size_t s = 0; s < k; ++s) total += g.instance.auth()[s].count();
    const double mean = static_cast<double>(total) / 10000.0;
    const double want = (1.0 + static_cast<double>(std::max<std::size_t>(1, k / 2))) / 2.0;
    CAPTURE(k);
    CHECK(std::abs(mean - want) <= 0.02 * want);
  }
}

TEST_CASE("raising one count only appends constraints of that kind") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenSpec lo{8, 40, {3, 8, 0, 0, 0}, seed};
    GenSpec hi = lo;
    hi.counts.sod = 9;
    const auto a = generate(lo).instance;
    const auto b = generate(hi).instance;
    CHECK(a.auth() == b.auth());
    for (const auto& c : a.constraints()) {
      CHECK(std::find(b.constraints().begin(), b.constraints().end(), c) != b.constraints().end());
    }
    // Nested instances: SAT can only be lost.
    if (solve_backtracking(b).verdict == Verdict::kSat) {
      CHECK(solve_backtracking(a).verdict == Verdict::kSat);
    }
  }
}

TEST_CASE("generation spec validation") {
  CHECK_THROWS_AS(check_spec(GenSpec{0, 10, {}, 0}), InvariantViolation);
  CHECK_THROWS_AS(check_spec(GenSpec{4, 0, {}, 0}), InvariantViolation);
  CHECK_THROWS_AS(check_spec(GenSpec{4, 10, {7, 0, 0, 0, 0}, 0}), InvariantViolation);
  CHECK_NOTHROW(check_spec(GenSpec{4, 10, {6, 0, 0, 0, 0}, 0}));
}

TEST_CASE("three_quarters rounds half down") {
  CHECK(three_quarters(0) == 0);
  CHECK(three_quarters(2) == 1);  // 1.5
  CHECK(three_quarters(4) == 3);
  CHECK(three_quarters(6) == 4);  // 4.5
  CHECK(three_quarters(14) == 10);  // 10.5
  CHECK(three_quarters(15) == 11);  // 11.25
}

TEST_CASE("families") {
  CHECK(parse_family("wsp") == FamilyKind::kSod);
  CHECK(parse_family("sod") == FamilyKind::kSod);
  CHECK(parse_family("ada") == FamilyKind::kAda);
  CHECK_THROWS(parse_family("bogus"));
  const auto spec = family_spec(FamilyKind::kWl, 8, 80, 14, 3);
  CHECK(spec.counts.am3 == 8);
  CHECK(spec.counts.sod == 10);
  CHECK(spec.counts.wl == 3);
  FamilyStream a(FamilyKind::kSod, family_spec(FamilyKind::kSod, 6, 30, 5, 0), 4);
  FamilyStream b(FamilyKind::kSod, family_spec(FamilyKind::kSod, 6, 30, 5, 0), 4);
  for (int i = 0; i < 5; ++i) {
    const auto x = a.next();
    const auto y = b.next();
    CHECK(x.instance == y.instance);
    CHECK(x.meta.seed == sample_seed(4, static_cast<std::uint64_t>(i)));
    CHECK(x.meta.family == "wsp");
  }
  CHECK(a.drawn() == 5);
}

TEST_CASE("calibration lands in the band at small size") {
  CalibrateOptions opts;
  opts.samples = 60;
  opts.lo = 0.3;
  opts.hi = 0.7;
  const auto r = calibrate_pt(6, 30, opts);
  CHECK(r.sat_rate >= 0.3);
  CHECK(r.sat_rate <= 0.7);
  GenSpec spec = family_spec(FamilyKind::kSod, 6, 30, r.e_value, 0);
  CHECK(sat_rate(spec, 60, opts.master_seed) == doctest::Approx(r.sat_rate));
}
