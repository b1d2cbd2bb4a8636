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

// Serial reference kernels against their OpenMP counterparts on a calibrated
// WSP(k, ratio*k) family. Prints one CSV row per instance and kernel, then
// median speedups.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "wsp/generator.hpp"
#include "wsp/solver.hpp"

#ifdef WSP_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

using wsp::SolveOptions;
using wsp::SolveResult;

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

template <class Solve>
double time_millis(Solve&& solve, SolveResult& last) {
  const auto t0 = std::chrono::steady_clock::now();
  last = solve();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs parallel solver kernels"};
  std::size_t k = 11;
  std::size_t ratio = 10;
  std::size_t seeds = 5;
  unsigned jobs = 0;
  std::uint64_t master = 1;
  std::uint64_t max_millis = 60000;
  app.add_option("--k", k, "Steps")->capture_default_str();
  app.add_option("--ratio", ratio, "n = ratio * k")->capture_default_str();
  app.add_option("--seeds", seeds, "Instances")->capture_default_str();
  app.add_option("--jobs", jobs, "Parallel workers (default: all threads)");
  app.add_option("--seed", master, "Master seed")->capture_default_str();
  app.add_option("--max-millis", max_millis, "Per-solve budget")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

#ifdef WSP_HAVE_OPENMP
  if (jobs == 0) jobs = static_cast<unsigned>(omp_get_max_threads());
#endif
  jobs = std::max(jobs, 2U);
  const std::size_t n = ratio * k;

  wsp::CalibrateOptions cal;
  cal.jobs = jobs;
  const auto pt = wsp::calibrate_pt(k, n, cal);
  auto family = wsp::make_family(wsp::FamilyKind::kSod, k, n, master, pt.e_value);

  SolveOptions serial;
  serial.budget.max_millis = max_millis;
  SolveOptions parallel = serial;
  parallel.jobs = jobs;

  std::printf("k,n,e,seed,kernel,verdict,serial_millis,parallel_millis,same_plan\n");
  std::vector<double> speedup_pe;
  std::vector<double> speedup_bt;
  for (std::size_t i = 0; i < seeds; ++i) {
    const auto g = family.next();
    for (const char* kernel : {"pattern-enum", "backtrack"}) {
      const bool pe = std::string(kernel) == "pattern-enum";
      const auto run = [&](const SolveOptions& o) {
        return pe ? wsp::solve_pattern_enum(g.instance, o) : wsp::solve_backtracking(g.instance, o);
      };
      SolveResult a;
      SolveResult b;
      const double ts = time_millis([&] { return run(serial); }, a);
      const double tp = time_millis([&] { return run(parallel); }, b);
      std::printf("%zu,%zu,%u,%llu,%s,%s,%.3f,%.3f,%s\n", k, n, pt.e_value,
                  static_cast<unsigned long long>(g.meta.seed), kernel, wsp::to_string(a.verdict).c_str(),
                  ts, tp, a.plan == b.plan ? "yes" : "no");
      if (a.verdict != wsp::Verdict::kBudgetExceeded && tp > 0) {
        (pe ? speedup_pe : speedup_bt).push_back(ts / tp);
      }
    }
  }
  std::fprintf(stderr, "workers %u: median speedup pattern-enum %.2fx, backtrack %.2fx\n", jobs,
               median(speedup_pe), median(speedup_bt));
  return 0;
}
