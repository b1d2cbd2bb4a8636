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

// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "../../tools/cli.hpp"
#include "../support.hpp"
#include "wsp/absorption.hpp"
#include "wsp/encode.hpp"
#include "wsp/generator.hpp"
#include "wsp/io.hpp"
#include "wsp/solver.hpp"

using namespace wsp;

namespace {

// Pinned thresholds.
constexpr double kGoldenMaxSeconds = 1.0;
constexpr int kOracleInstancesPerMix = 200;
constexpr std::size_t kOracleMaxK = 5;
constexpr std::size_t kOracleMaxN = 8;
constexpr double kOracleMaxSeconds = 300.0;
constexpr int kAbsorbInstancesPerKind = 100;
constexpr int kEncodeInstancesPerKind = 50;
constexpr std::size_t kEncodeMaxK = 3;
constexpr std::size_t kEncodeMaxN = 3;
constexpr int kPatternCountMaxK = 10;
constexpr int kBellOracleMaxK = 15;
constexpr std::size_t kScalingSeeds = 15;  // >= 9 required
constexpr double kK12MedianMaxSeconds = 10.0;
constexpr double kScalingMaxRatio = 20.0;
constexpr double kTimingFloorMillis = 20.0;  // repeat a solve until this much time accrues
constexpr std::uint32_t kPtResamples = 200;
constexpr double kPtLo = 0.3;
constexpr double kPtHi = 0.7;
constexpr double kPtMaxSeconds = 600.0;
constexpr std::uint64_t kPtFreshMaster = 0x5eed'f00d;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s - %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// Criterion 8 is checked on every pattern-enum solve made below.
std::uint64_t work_checks = 0;
std::uint64_t work_violations = 0;

std::uint64_t work_bound(const Instance& inst) {
  auto bound = static_cast<std::uint64_t>(bell(static_cast<int>(inst.steps())));
  for (const auto& c : inst.constraints()) {
    if (is_ui(c)) continue;
    if (const auto* wl = std::get_if<WangLi>(&c)) {
      bound *= wl->teams.size();
    } else if (std::holds_alternative<AssignmentDependent>(c)) {
      bound *= 2;
    }
  }
  return bound;
}

SolveResult pattern_enum_checked(const Instance& inst) {
  auto r = solve_pattern_enum(inst);
  ++work_checks;
  if (r.stats.matchings_computed > work_bound(inst)) ++work_violations;
  return r;
}

// ---------------------------------------------------------------------------

void criterion1() {
  const auto t0 = Clock::now();
  const auto inst = load_instance(test::fixture("running_example.json")).instance;
  const auto plan = load_plan(test::fixture("running_example_plan.json"));
  const bool pe = pattern_enum_checked(inst).verdict == Verdict::kSat;
  const bool bt = solve_backtracking(inst).verdict == Verdict::kSat;
  const bool bf = solve_bruteforce(inst).verdict == Verdict::kSat;
  const bool valid = is_valid(plan, inst);
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << "pattern-enum " << (pe ? "SAT" : "not SAT") << ", backtrack " << (bt ? "SAT" : "not SAT")
    << ", bruteforce " << (bf ? "SAT" : "not SAT") << ", reference plan " << (valid ? "valid" : "invalid")
    << ", " << secs << " s (limit " << kGoldenMaxSeconds << " s)";
  report(1, pe && bt && bf && valid && secs < kGoldenMaxSeconds, d.str());
}

void criterion2() {
  const auto t0 = Clock::now();
  test::Random rng(2002);
  int total = 0;
  int disagreements = 0;
  int sat = 0;
  for (const auto kind : test::all_mixes()) {
    for (int i = 0; i < kOracleInstancesPerMix; ++i) {
      const auto inst = rng.instance(kind, kOracleMaxK, kOracleMaxN, 0.5);
      const auto a = pattern_enum_checked(inst);
      const auto b = solve_backtracking(inst);
      const auto c = solve_bruteforce(inst);
      const bool agree = a.verdict == b.verdict && b.verdict == c.verdict &&
                         c.verdict != Verdict::kBudgetExceeded &&
                         (!a.plan || is_valid(*a.plan, inst)) &&
                         (!b.plan || is_valid(*b.plan, inst));
      ++total;
      disagreements += agree ? 0 : 1;
      sat += c.verdict == Verdict::kSat ? 1 : 0;
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << total << " instances (" << kOracleInstancesPerMix << " per mix x 8 mixes, k<=" << kOracleMaxK
    << ", n<=" << kOracleMaxN << ", " << sat << " SAT), " << disagreements << " disagreements, "
    << secs << " s (limit " << kOracleMaxSeconds << " s)";
  report(2, disagreements == 0 && secs < kOracleMaxSeconds, d.str());
}

void criterion3() {
  test::Random rng(3003);
  int total = 0;
  int plan_mismatch = 0;
  int size_violations = 0;
  for (const auto kind : {test::Mix::kSual, test::Mix::kWl, test::Mix::kAda}) {
    for (int i = 0; i < kAbsorbInstancesPerKind; ++i) {
      const auto inst = rng.instance(kind, kOracleMaxK, kOracleMaxN, 0.5);
      const auto cda = absorb(inst);
      const auto absorbed = valid_plans(cda);
      const auto original = valid_plans(inst);
      ++total;
      if (std::set<Plan>(absorbed.begin(), absorbed.end()) !=
          std::set<Plan>(original.begin(), original.end())) {
        ++plan_mismatch;
      }
      for (const auto& c : inst.constraints()) {
        std::size_t cap = 1;
        if (const auto* wl = std::get_if<WangLi>(&c)) cap = wl->teams.size();
        if (std::holds_alternative<AssignmentDependent>(c)) cap = 2;
        for (const auto& p : enumerate_patterns(inst.steps())) {
          if (family_for_constraint(c, p, inst.steps(), inst.users()).size() > cap) ++size_violations;
        }
      }
      pattern_enum_checked(inst);
    }
  }
  std::ostringstream d;
  d << total << " instances (" << kAbsorbInstancesPerKind << " per SUAL/WL/ADA), " << plan_mismatch
    << " plan-set mismatches, " << size_violations << " family-size violations";
  report(3, plan_mismatch == 0 && size_violations == 0, d.str());
}

void criterion4() {
  bool ok = true;
  std::ostringstream d;
  for (std::uint32_t dd = 2; dd <= 4; ++dd) {
    std::vector<UserSet> teams;
    for (std::uint32_t i = 0; i < dd; ++i) teams.push_back(UserSet{2 * i, 2 * i + 1});
    const Instance inst(2, 2 * dd, AuthorisationFunction::full(2, 2 * dd),
                        {WangLi{step_mask({0, 1}), teams}});
    const auto cda = absorb(inst);
    const auto got = valid_plans(cda);
    const auto want = test::valid_plan_set(inst);
    const auto fam = cda.family.family_for(Pattern::parse("0,1"));
    const bool same = std::set<Plan>(got.begin(), got.end()) == want;
    ok = ok && same && fam->size() == dd && want.size() == 4 * dd;
    d << "WL d=" << dd << ": " << got.size() << " plans, family " << fam->size() << "; ";
  }
  const Instance ada(2, 3, AuthorisationFunction::full(2, 3),
                     {AssignmentDependent{StepId{0}, StepId{1}, {0}, {1}}});
  const auto cda = absorb(ada);
  const auto got = valid_plans(cda);
  const std::set<Plan> got_set(got.begin(), got.end());
  const auto cross = Plan::from_indices({0, 2});
  const bool rejected = !is_valid_cda(cross, cda) && got_set.count(cross) == 0;
  const bool same = got_set == test::valid_plan_set(ada);
  const auto fam = cda.family.family_for(Pattern::parse("0,1"));
  ok = ok && rejected && same && fam->size() == 2 &&
       is_valid_cda(Plan::from_indices({0, 1}), cda) && is_valid_cda(Plan::from_indices({1, 2}), cda);
  d << "ADA: " << got.size() << " plans, family " << fam->size() << ", cross plan (u1,u3) "
    << (rejected ? "rejected" : "accepted");
  report(4, ok, d.str());
}

struct EncodeTally {
  int instances = 0;
  int plans = 0;
  int udpb = 0;
  int pbpb = 0;
  int cs = 0;
  int roundtrip = 0;
  int pattern_rows = 0;
};

void check_encoding(const Instance& inst, EncodeTally& t) {
  const auto valid = test::valid_plan_set(inst);
  const auto udpb = encode_udpb(inst);
  const auto pbpb = encode_pbpb(inst);
  const auto cs = encode_cs(inst);
  test::for_each_plan(inst.steps(), inst.users(), [&](const Plan& plan) {
    if (!is_authorised(plan, inst.auth())) return;
    ++t.plans;
    const bool ok = valid.count(plan) != 0;
    const auto a = induced_assignment(plan, udpb);
    const auto b = induced_assignment(plan, pbpb);
    if (satisfies(udpb, a) != ok) ++t.udpb;
    if (satisfies(pbpb, b) != ok) ++t.pbpb;
    if (!(decode(a, udpb) == plan) || !(decode(b, pbpb) == plan)) ++t.roundtrip;
    const auto values = induced_values(plan, cs, inst);
    if (!(decode(std::span<const std::uint32_t>(values), cs) == plan)) ++t.roundtrip;
    if (ok) {
      // Pattern rows: M agrees with the plan and every pattern row holds.
      for (std::size_t s = 0; s < inst.steps(); ++s) {
        for (std::size_t u = 0; u < inst.steps(); ++u) {
          if (b[*pbpb.m(s, u)] != (plan[s] == plan[u])) ++t.pattern_rows;
        }
      }
      for (const auto& row : pbpb.constraints()) {
        bool touches_m = false;
        for (const auto& term : row.terms) touches_m = touches_m || pbpb.var(term.var).kind == VarKind::kM;
        if (touches_m && !satisfies(row, b)) ++t.pattern_rows;
      }
    }
  });
  // CS: the solution set, decoded, is exactly the valid-plan set.
  std::set<Plan> decoded;
  std::vector<std::uint32_t> values(cs.vars.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == cs.vars.size()) {
      if (cs_satisfied(cs, values)) decoded.insert(decode(std::span<const std::uint32_t>(values), cs));
      return;
    }
    for (const auto v : cs.vars[i].domain) {
      values[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  if (decoded != valid) ++t.cs;
  ++t.instances;
}

void criterion5() {
  test::Random rng(5005);
  EncodeTally t;
  for (const auto kind : test::all_mixes()) {
    for (int i = 0; i < kEncodeInstancesPerKind; ++i) {
      check_encoding(rng.instance(kind, kEncodeMaxK, kEncodeMaxN, 0.7), t);
    }
  }
  std::ostringstream d;
  d << t.instances << " instances (" << kEncodeInstancesPerKind << " per kind, k<=" << kEncodeMaxK
    << ", n<=" << kEncodeMaxN << "), " << t.plans << " authorised plans; mismatches: udpb " << t.udpb
    << ", pbpb " << t.pbpb << ", cs " << t.cs << ", decode/induce " << t.roundtrip
    << ", pattern rows " << t.pattern_rows;
  report(5, t.udpb + t.pbpb + t.cs + t.roundtrip + t.pattern_rows == 0, d.str());
}

void criterion6() {
  bool ok = true;
  for (int k = 0; k <= kPatternCountMaxK; ++k) {
    ok = ok && enumerate_patterns(static_cast<std::size_t>(k)).size() ==
                   (k == 0 ? 0U : static_cast<std::size_t>(bell(k)));
  }
  const auto tri = test::bell_triangle(kBellOracleMaxK);
  for (int k = 0; k <= kBellOracleMaxK; ++k) {
    ok = ok && bell(k) == static_cast<BellNumber>(tri[static_cast<std::size_t>(k)]);
  }
  ok = ok && tri[10] == 115975 && bell(10) == 115975;
  std::ostringstream d;
  d << "pattern counts k=1.." << kPatternCountMaxK << " match bell(k); bell(k) matches the triangle for k<="
    << kBellOracleMaxK << "; bell(10)=" << to_string(bell(10));
  report(6, ok, d.str());
}

/// Per-instance backtracking time: repeated until kTimingFloorMillis accrue.
double timed_backtrack_millis(const Instance& inst) {
  int reps = 0;
  const auto t0 = Clock::now();
  double elapsed = 0.0;
  do {
    const auto r = solve_backtracking(inst);
    if (r.verdict == Verdict::kBudgetExceeded) return -1.0;
    ++reps;
    elapsed = seconds_since(t0) * 1000.0;
  } while (elapsed < kTimingFloorMillis);
  return elapsed / reps;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<double> family_times(std::size_t k, std::size_t n, std::uint32_t& e_out) {
  CalibrateOptions opts;
  const auto cal = calibrate_pt(k, n, opts);
  e_out = cal.e_value;
  FamilyStream fam(FamilyKind::kSod, family_spec(FamilyKind::kSod, k, n, cal.e_value, 0), 7);
  std::vector<double> times;
  for (std::size_t i = 0; i < kScalingSeeds; ++i) times.push_back(timed_backtrack_millis(fam.next().instance));
  return times;
}

void criterion7() {
  std::uint32_t e12 = 0;
  std::uint32_t e100 = 0;
  std::uint32_t e1000 = 0;
  const auto t12 = family_times(12, 120, e12);
  const auto t100 = family_times(10, 100, e100);
  const auto t1000 = family_times(10, 1000, e1000);
  const bool budget_ok = std::none_of(t12.begin(), t12.end(), [](double x) { return x < 0; });
  const double m12 = median(t12);
  const double m100 = median(t100);
  const double m1000 = median(t1000);
  const double ratio = m1000 / m100;
  std::ostringstream d;
  d << kScalingSeeds << " seeds per point; k=12 n=120 (e=" << e12 << ") median " << m12
    << " ms (limit " << kK12MedianMaxSeconds * 1000 << " ms); k=10 median n=100 (e=" << e100
    << ") " << m100 << " ms, n=1000 (e=" << e1000 << ") " << m1000 << " ms, ratio " << ratio
    << " (limit " << kScalingMaxRatio << ")";
  report(7, budget_ok && m12 < kK12MedianMaxSeconds * 1000 && ratio <= kScalingMaxRatio, d.str());
}

void criterion8() {
  std::ostringstream d;
  d << work_checks << " pattern-enum solves checked against bell(k) * prod(m_i), " << work_violations
    << " violations";
  report(8, work_checks > 0 && work_violations == 0, d.str());
}

void criterion9() {
  const auto t0 = Clock::now();
  CalibrateOptions opts;
  const auto cal = calibrate_pt(8, 80, opts);
  const auto spec = family_spec(FamilyKind::kSod, 8, 80, cal.e_value, 0);
  const double rate = sat_rate(spec, kPtResamples, kPtFreshMaster);
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << "e=" << cal.e_value << " (calibration rate " << cal.sat_rate << "), re-measured rate " << rate
    << " over " << kPtResamples << " fresh seeds (band [" << kPtLo << ", " << kPtHi << "]), " << secs
    << " s (limit " << kPtMaxSeconds << " s)";
  report(9, rate >= kPtLo && rate <= kPtHi && secs < kPtMaxSeconds, d.str());
}

std::string cli_out(const std::vector<std::string>& args, int& code) {
  std::ostringstream out;
  std::ostringstream err;
  code = cli::run(args, out, err);
  return out.str();
}

void criterion10() {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "wsp-acceptance-determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  bool ok = true;
  int code = 0;
  std::vector<std::string> checked;
  const auto twice = [&](const std::string& what, const std::vector<std::string>& args) {
    int c1 = 0;
    int c2 = 0;
    const auto a = cli_out(args, c1);
    const auto b = cli_out(args, c2);
    const bool same = a == b && c1 == c2 && !a.empty();
    ok = ok && same;
    checked.push_back(what + (same ? "" : " (differs)"));
  };
  const std::vector<std::string> gen{"generate", "--k",   "10",   "--n",  "100", "--sod", "18",
                                     "--am3",    "10",    "--sual", "1",  "--wl", "1",
                                     "--ada",    "1",     "--seed", "42", "--stdout"};
  twice("generate", gen);
  const auto inst = (dir / "inst.json").string();
  write_file(inst, cli_out(gen, code));
  ok = ok && code == cli::kOk;
  twice("solve pattern-enum", {"solve", inst, "--algorithm", "pattern-enum", "--jobs", "1"});
  twice("solve backtrack", {"solve", inst, "--algorithm", "backtrack", "--jobs", "1"});
  twice("encode udpb/opb", {"encode", inst, "--repr", "udpb", "--format", "opb"});
  twice("encode pbpb/dimacs", {"encode", inst, "--repr", "pbpb", "--format", "dimacs"});
  twice("encode cs/json", {"encode", inst, "--repr", "cs", "--format", "json"});
  // File outputs, including the variable map.
  std::vector<std::string> files;
  for (const auto* tag : {"a", "b"}) {
    const auto out = (dir / (std::string("m_") + tag + ".opb")).string();
    cli_out({"encode", inst, "--repr", "pbpb", "--format", "opb", "--out", out}, code);
    files.push_back(read_file(out) + read_file(out + ".map"));
  }
  const bool files_same = files[0] == files[1];
  ok = ok && files_same;
  checked.push_back(std::string("encode files") + (files_same ? "" : " (differs)"));
  fs::remove_all(dir);
  std::ostringstream d;
  d << "byte-identical across two runs:";
  for (const auto& c : checked) d << ' ' << c << ';';
  report(10, ok, d.str());
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<void()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}};
  for (const auto& [id, run] : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      report(id, false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
