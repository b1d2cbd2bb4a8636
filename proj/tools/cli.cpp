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

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "wsp/absorption.hpp"
#include "wsp/encode.hpp"
#include "wsp/generator.hpp"
#include "wsp/io.hpp"
#include "wsp/patterns.hpp"
#include "wsp/solver.hpp"

namespace wsp::cli {

namespace fs = std::filesystem;

namespace {

/// Usage problems detected after flag parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "6..12" or "6,8,10".
std::vector<std::size_t> parse_list(const std::string& text, const char* flag) {
  std::vector<std::size_t> out;
  try {
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const auto lo = std::stoul(text.substr(0, dots));
      const auto hi = std::stoul(text.substr(dots + 2));
      if (lo > hi) throw UsageError(std::string(flag) + ": empty range " + text);
      for (auto v = lo; v <= hi; ++v) out.push_back(v);
      return out;
    }
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(std::stoul(item));
  } catch (const std::logic_error&) {
    throw UsageError(std::string(flag) + ": cannot parse '" + text + "'");
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": no values");
  return out;
}

std::string join(const std::vector<std::uint32_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Calibration lookup shared by generate, calibrate and bench.

struct CalibrationSettings {
  std::string cache_dir;
  std::uint32_t samples = 200;
  double lo = 0.4;
  double hi = 0.6;
  std::uint64_t master_seed = 1;
  unsigned jobs = 1;
  bool refresh = false;
};

class Calibrator {
 public:
  Calibrator(const CalibrationSettings& s, std::ostream& err) : s_(s), err_(err) {}

  /// e_{k,n}: SoD count of the WSP(k, n) family.
  std::uint32_t e_sod(std::size_t k, std::size_t n) {
    return lookup("wsp", k, n, [&] { return calibrate_pt(k, n, options()); });
  }

  /// Kind-specific count with SoD fixed at 0.75 e_{k,n}.
  std::uint32_t e_kind(FamilyKind kind, std::size_t k, std::size_t n) {
    const auto e = e_sod(k, n);
    return lookup(family_name(kind), k, n, [&] {
      return calibrate_count(family_spec(kind, k, n, e, 0), kind, options());
    });
  }

 private:
  CalibrateOptions options() const {
    CalibrateOptions o;
    o.samples = s_.samples;
    o.lo = s_.lo;
    o.hi = s_.hi;
    o.master_seed = s_.master_seed;
    o.jobs = s_.jobs;
    return o;
  }

  fs::path dir() const { return s_.cache_dir.empty() ? default_cache_dir() : fs::path(s_.cache_dir); }

  template <class Compute>
  std::uint32_t lookup(const std::string& family, std::size_t k, std::size_t n, Compute compute) {
    if (!s_.refresh) {
      if (const auto rec = load_calibration(dir(), family, k, n)) return rec->e_value;
    }
    err_ << "calibrating " << family << " at k=" << k << " n=" << n << " ...\n";
    const auto cal = compute();
    CalibrationRecord rec{k, n, family, cal.e_value, cal.samples, s_.lo, s_.hi, s_.master_seed};
    store_calibration(dir(), rec);
    err_ << "  e=" << cal.e_value << " sat_rate=" << cal.sat_rate << "\n";
    last_rate_ = cal.sat_rate;
    return cal.e_value;
  }

  CalibrationSettings s_;
  std::ostream& err_;

 public:
  std::optional<double> last_rate_;
};

void add_calibration_flags(CLI::App* cmd, CalibrationSettings& s) {
  cmd->add_option("--cache-dir", s.cache_dir, "Calibration cache (default $WSP_CACHE_DIR or .wsp-cache)");
  cmd->add_option("--samples", s.samples, "Instances per calibration probe")->capture_default_str();
  cmd->add_option("--lo", s.lo, "Lower end of the SAT-rate band")->capture_default_str();
  cmd->add_option("--hi", s.hi, "Upper end of the SAT-rate band")->capture_default_str();
  cmd->add_option("--calibration-seed", s.master_seed, "Master seed of calibration samples")
      ->capture_default_str();
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::size_t k = 0;
  std::size_t n = 0;
  GenCounts counts;
  std::uint64_t seed = 1;
  std::uint32_t count = 1;
  std::string out_dir = ".";
  std::string family;
  bool to_stdout = false;
  CalibrationSettings cal;
};

std::string spec_file_name(const GenSpec& spec) {
  const auto& c = spec.counts;
  std::ostringstream name;
  name << "wsp_k" << spec.k << "_n" << spec.n << "_sod" << c.sod << "_am3" << c.am3 << "_sual"
       << c.sual << "_wl" << c.wl << "_ada" << c.ada << "_seed" << spec.seed << ".json";
  return name.str();
}

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::string, GeneratedInstance>> made;
  if (!a.family.empty()) {
    const auto kind = parse_family(a.family);
    Calibrator cal(a.cal, err);
    const auto e = cal.e_sod(a.k, a.n);
    const std::optional<std::uint32_t> ek =
        kind == FamilyKind::kSod ? std::nullopt : std::optional(cal.e_kind(kind, a.k, a.n));
    auto stream = make_family(kind, a.k, a.n, a.seed, e, ek);
    for (std::uint32_t i = 0; i < a.count; ++i) {
      auto inst = stream.next();
      std::ostringstream name;
      name << inst.meta.family << "_k" << a.k << "_n" << a.n << "_m" << a.seed << "_i" << i
           << ".json";
      made.emplace_back(name.str(), std::move(inst));
    }
  } else {
    for (std::uint32_t i = 0; i < a.count; ++i) {
      const GenSpec spec{a.k, a.n, a.counts, a.seed + i};
      made.emplace_back(spec_file_name(spec), generate(spec));
    }
  }
  for (const auto& [name, inst] : made) {
    const auto text = instance_to_json(inst.instance, inst.meta);
    if (a.to_stdout) {
      out << text;
    } else {
      const auto path = fs::path(a.out_dir) / name;
      write_file(path, text);
      out << path.string() << "\n";
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string instance;
  std::string algorithm = "backtrack";
  Budget budget;
  unsigned jobs = 1;
  std::string plan_out;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const auto file = load_instance(a.instance);
  const SolveOptions opts{a.budget, std::max(1U, a.jobs)};
  SolveResult r;
  if (a.algorithm == "pattern-enum") {
    r = solve_pattern_enum(file.instance, opts);
  } else if (a.algorithm == "backtrack") {
    r = solve_backtracking(file.instance, opts);
  } else {
    r = solve_bruteforce(file.instance, BruteForceOptions{a.budget});
  }
  out << "verdict " << to_string(r.verdict) << "\n";
  if (r.plan) {
    out << "plan " << join(r.plan->indices()) << "\n";
    if (!a.plan_out.empty()) write_file(a.plan_out, plan_to_json(*r.plan));
  }
  out << "patterns_visited " << r.stats.patterns_visited << "\n"
      << "matchings_computed " << r.stats.matchings_computed << "\n"
      << "nodes_expanded " << r.stats.nodes_expanded << "\n";
  err << "millis " << r.stats.wall_millis << "\n";
  switch (r.verdict) {
    case Verdict::kSat: return kSat;
    case Verdict::kUnsat: return kUnsat;
    case Verdict::kBudgetExceeded: return kBudgetExceeded;
  }
  return kError;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& instance, const std::string& plan_path, std::ostream& out) {
  const auto file = load_instance(instance);
  const auto plan = load_plan(plan_path);
  const auto& inst = file.instance;
  if (plan.size() != inst.steps()) {
    throw FormatError("plan has " + std::to_string(plan.size()) + " steps, instance has " +
                      std::to_string(inst.steps()));
  }
  for (std::size_t s = 0; s < plan.size(); ++s) {
    if (plan[s].value >= inst.users()) {
      throw FormatError("plan assigns user index " + std::to_string(plan[s].value) +
                        " but n=" + std::to_string(inst.users()));
    }
  }
  const auto violation = first_violation(plan, inst);
  if (violation.empty()) {
    out << "valid\n";
    return kOk;
  }
  out << "invalid: " << violation << "\n";
  return kInvalidPlan;
}

// ---------------------------------------------------------------------------
// encode

struct EncodeArgs {
  std::string instance;
  std::string repr = "pbpb";
  std::string format = "opb";
  std::string out;
  std::string map;
  bool no_transitivity = false;
};

int cmd_encode(const EncodeArgs& a, std::ostream& out) {
  const bool boolean = a.repr == "udpb" || a.repr == "pbpb";
  if (boolean && a.format == "json") {
    throw UsageError("--repr " + a.repr + " needs --format opb or dimacs");
  }
  if (!boolean && a.format != "json") {
    throw UsageError("--repr cs needs --format json");
  }
  const auto file = load_instance(a.instance);
  EncodeOptions opts;
  opts.transitivity = !a.no_transitivity;

  std::ostringstream model_text;
  std::ostringstream map_text;
  if (boolean) {
    const auto model =
        a.repr == "udpb" ? encode_udpb(file.instance) : encode_pbpb(file.instance, opts);
    if (a.format == "opb") {
      emit_opb(model, model_text);
    } else {
      emit_dimacs(model, model_text);
    }
    emit_var_map(model, map_text);
  } else {
    emit_cs_json(encode_cs(file.instance, opts), model_text);
  }

  if (a.out.empty()) {
    out << model_text.str();
    if (!a.map.empty() && boolean) write_file(a.map, map_text.str());
    return kOk;
  }
  write_file(a.out, model_text.str());
  out << a.out << "\n";
  if (boolean) {
    const auto map_path = a.map.empty() ? a.out + ".map" : a.map;
    write_file(map_path, map_text.str());
    out << map_path << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// inspect

BellNumber saturating_mul(BellNumber a, BellNumber b) {
  const BellNumber max = ~BellNumber{0};
  if (a != 0 && b > max / a) return max;
  return a * b;
}

int cmd_inspect(const std::string& instance, bool as_json, std::ostream& out) {
  const auto file = load_instance(instance);
  const auto& inst = file.instance;
  const auto k = inst.steps();
  const auto n = inst.users();

  nlohmann::ordered_json doc;
  doc["k"] = k;
  doc["n"] = n;
  doc["constraints"] = inst.constraints().size();
  std::size_t non_ui = 0;
  BellNumber product = 1;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& c : inst.constraints()) {
    const auto report = branching_bound(c, k, n, 0);
    if (!is_ui(c)) {
      ++non_ui;
      product = saturating_mul(product, report.bound);
    }
    rows.push_back({{"constraint", describe(c)},
                    {"ui", is_ui(c)},
                    {"branching_bound", report.bound},
                    {"symbolic", report.symbolic}});
  }
  const BellNumber b = k <= 30 ? bell(static_cast<int>(k)) : ~BellNumber{0};
  doc["ui"] = inst.constraints().size() - non_ui;
  doc["non_ui"] = non_ui;
  doc["bell"] = k <= 30 ? to_string(b) : "overflow";
  doc["family_bound"] = to_string(product);
  doc["work_bound"] = k <= 30 ? to_string(saturating_mul(b, product)) : "overflow";
  doc["per_constraint"] = rows;

  if (as_json) {
    out << doc.dump(2) << "\n";
    return kOk;
  }
  for (const char* key : {"k", "n", "constraints", "ui", "non_ui"}) {
    out << key << ' ' << doc[key].dump() << "\n";
  }
  for (const char* key : {"bell", "family_bound", "work_bound"}) {
    out << key << ' ' << doc[key].get<std::string>() << "\n";
  }
  for (const auto& row : rows) {
    out << "constraint " << row["constraint"].get<std::string>()
        << (row["ui"].get<bool>() ? " ui" : " non-ui") << " m=" << row["branching_bound"].dump()
        << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// calibrate

struct CalibrateArgs {
  std::size_t k = 0;
  std::size_t n = 0;
  std::string family = "wsp";
  CalibrationSettings cal;
};

int cmd_calibrate(CalibrateArgs a, std::ostream& out, std::ostream& err) {
  const auto kind = parse_family(a.family);
  Calibrator cal(a.cal, err);
  std::uint32_t e = 0;
  if (kind == FamilyKind::kSod) {
    // A forced refresh applies to the requested family only.
    e = cal.e_sod(a.k, a.n);
  } else {
    auto base = a.cal;
    base.refresh = false;
    const auto e_sod = Calibrator(base, err).e_sod(a.k, a.n);
    e = cal.e_kind(kind, a.k, a.n);
    out << "e_sod " << e_sod << "\n";
  }
  out << "family " << (kind == FamilyKind::kSod ? "wsp" : family_name(kind)) << "\n"
      << "e_value " << e << "\n";
  if (cal.last_rate_) out << "sat_rate " << *cal.last_rate_ << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::string family = "wsp";
  std::string ks;
  std::string ns;
  std::size_t ratio = 10;
  std::uint32_t seeds = 5;
  std::uint64_t seed = 1;
  std::string algorithms = "backtrack";
  Budget budget;
  unsigned jobs = 1;
  std::string out;
  std::optional<std::uint32_t> e_value;
  std::optional<std::uint32_t> e_kind;
  CalibrationSettings cal;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (const char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

template <class T>
T lower_median(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const auto kind = parse_family(a.family);
  const auto family = kind == FamilyKind::kSod ? std::string("wsp") : family_name(kind);
  std::vector<std::string> algorithms;
  {
    std::stringstream in(a.algorithms);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item != "pattern-enum" && item != "backtrack" && item != "bruteforce") {
        throw UsageError("--algorithm: unknown algorithm '" + item + "'");
      }
      algorithms.push_back(item);
    }
  }
  if (a.ks.empty()) throw UsageError("--k is required");
  const auto ks = parse_list(a.ks, "--k");
  const auto ns = a.ns.empty() ? std::vector<std::size_t>{} : parse_list(a.ns, "--n");
  std::vector<std::pair<std::size_t, std::size_t>> points;
  for (const auto k : ks) {
    if (ns.empty()) {
      points.emplace_back(k, a.ratio * k);
    } else {
      for (const auto n : ns) points.emplace_back(k, n);
    }
  }

  std::ostringstream csv;
  csv << "k,n,family,seed,algorithm,verdict,millis,patterns_visited,nodes_expanded\n";
  struct Group {
    std::vector<double> millis;
    std::vector<std::uint64_t> patterns;
    std::vector<std::uint64_t> nodes;
    std::map<std::string, int> verdicts;
  };
  std::vector<std::pair<std::string, Group>> groups;
  Calibrator cal(a.cal, err);

  for (const auto& [k, n] : points) {
    const auto e = a.e_value ? *a.e_value : cal.e_sod(k, n);
    std::optional<std::uint32_t> ek;
    if (kind != FamilyKind::kSod) ek = a.e_kind ? *a.e_kind : cal.e_kind(kind, k, n);
    auto stream = make_family(kind, k, n, a.seed, e, ek);
    std::vector<GeneratedInstance> insts;
    for (std::uint32_t i = 0; i < a.seeds; ++i) insts.push_back(stream.next());
    for (const auto& alg : algorithms) {
      Group g;
      for (const auto& gi : insts) {
        const SolveOptions opts{a.budget, std::max(1U, a.jobs)};
        SolveResult r;
        if (alg == "pattern-enum") {
          r = solve_pattern_enum(gi.instance, opts);
        } else if (alg == "backtrack") {
          r = solve_backtracking(gi.instance, opts);
        } else {
          r = solve_bruteforce(gi.instance, BruteForceOptions{a.budget});
        }
        const auto verdict = to_string(r.verdict);
        csv << k << ',' << n << ',' << family << ',' << gi.meta.seed << ',' << alg << ','
            << verdict << ',' << r.stats.wall_millis << ',' << r.stats.patterns_visited << ','
            << r.stats.nodes_expanded << "\n";
        g.millis.push_back(r.stats.wall_millis);
        g.patterns.push_back(r.stats.patterns_visited);
        g.nodes.push_back(r.stats.nodes_expanded);
        ++g.verdicts[verdict];
      }
      std::ostringstream key;
      key << k << ',' << n << ',' << family << ",median," << alg;
      groups.emplace_back(key.str(), std::move(g));
    }
  }
  // Summary rows: lower median of each column; the verdict field tallies.
  for (const auto& [key, g] : groups) {
    if (g.millis.empty()) continue;
    std::string tally;
    for (const auto& [v, c] : g.verdicts) {
      if (!tally.empty()) tally += ' ';
      tally += v + "=" + std::to_string(c);
    }
    csv << key << ',' << csv_field(tally) << ',' << lower_median(g.millis) << ','
        << lower_median(g.patterns) << ',' << lower_median(g.nodes) << "\n";
  }

  if (a.out.empty()) {
    out << csv.str();
  } else {
    write_file(a.out, csv.str());
    out << a.out << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workflow satisfiability toolkit", "wsp"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Draw random instances");
  g->add_option("--k", gen.k, "Steps")->required();
  g->add_option("--n", gen.n, "Users")->required();
  g->add_option("--sod", gen.counts.sod, "SoD constraints");
  g->add_option("--am3", gen.counts.am3, "At-most-3 constraints (scope 5)");
  g->add_option("--sual", gen.counts.sual, "SUAL constraints");
  g->add_option("--wl", gen.counts.wl, "WL constraints");
  g->add_option("--ada", gen.counts.ada, "ADA constraints");
  g->add_option("--seed", gen.seed, "Seed (family mode: master seed)")->capture_default_str();
  g->add_option("--count", gen.count, "Number of instances")->capture_default_str();
  g->add_option("--out-dir", gen.out_dir, "Output directory")->capture_default_str();
  g->add_option("--family", gen.family, "Draw from a calibrated family: wsp, am3, sual, wl, ada");
  g->add_flag("--stdout", gen.to_stdout, "Print instances instead of writing files");
  g->add_option("--jobs", gen.cal.jobs, "Workers for calibration");
  add_calibration_flags(g, gen.cal);

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Solve an instance (exit 10 SAT, 20 UNSAT, 30 budget)");
  s->add_option("instance", sol.instance, "Instance JSON")->required();
  s->add_option("--algorithm", sol.algorithm, "pattern-enum, backtrack or bruteforce")
      ->check(CLI::IsMember({"pattern-enum", "backtrack", "bruteforce"}))
      ->capture_default_str();
  s->add_option("--max-millis", sol.budget.max_millis, "Wall-clock budget");
  s->add_option("--max-patterns", sol.budget.max_patterns, "Pattern budget");
  s->add_option("--max-nodes", sol.budget.max_nodes, "Search-node budget");
  s->add_option("--jobs", sol.jobs, "Worker threads")->capture_default_str();
  s->add_option("--plan-out", sol.plan_out, "Write the plan JSON here");

  std::string verify_instance;
  std::string verify_plan;
  auto* v = app.add_subcommand("verify", "Check a plan (exit 0 valid, 2 invalid)");
  v->add_option("instance", verify_instance, "Instance JSON")->required();
  v->add_option("plan", verify_plan, "Plan JSON")->required();

  EncodeArgs enc;
  auto* e = app.add_subcommand("encode", "Write a UDPB, PBPB or CS model");
  e->add_option("instance", enc.instance, "Instance JSON")->required();
  e->add_option("--repr", enc.repr, "udpb, pbpb or cs")
      ->check(CLI::IsMember({"udpb", "pbpb", "cs"}))
      ->capture_default_str();
  e->add_option("--format", enc.format, "opb, dimacs or json")
      ->check(CLI::IsMember({"opb", "dimacs", "json"}))
      ->capture_default_str();
  e->add_option("--out", enc.out, "Model file (stdout when omitted)");
  e->add_option("--map", enc.map, "Variable map file (default <out>.map)");
  e->add_flag("--no-transitivity", enc.no_transitivity, "Skip the optional transitivity rows");

  std::string inspect_instance;
  bool inspect_json = false;
  auto* in = app.add_subcommand("inspect", "Report branching bounds and the work bound");
  in->add_option("instance", inspect_instance, "Instance JSON")->required();
  in->add_flag("--json", inspect_json, "JSON output");

  CalibrateArgs calib;
  auto* c = app.add_subcommand("calibrate", "Find the phase-transition constraint count");
  c->add_option("--k", calib.k, "Steps")->required();
  c->add_option("--n", calib.n, "Users")->required();
  c->add_option("--family", calib.family, "wsp, am3, sual, wl or ada")->capture_default_str();
  c->add_option("--jobs", calib.cal.jobs, "Worker threads");
  c->add_flag("--refresh", calib.cal.refresh, "Ignore a cached value");
  add_calibration_flags(c, calib.cal);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time solvers over family slices (CSV)");
  b->add_option("--family", bench.family, "wsp, am3, sual, wl or ada")->capture_default_str();
  b->add_option("--k", bench.ks, "Steps: list (6,8) or range (6..12)")->required();
  b->add_option("--n", bench.ns, "Users: list or range (default ratio*k)");
  b->add_option("--ratio", bench.ratio, "n = ratio * k when --n is absent")->capture_default_str();
  b->add_option("--seeds", bench.seeds, "Instances per point")->capture_default_str();
  b->add_option("--seed", bench.seed, "Master seed")->capture_default_str();
  b->add_option("--algorithm", bench.algorithms, "Comma-separated algorithms")
      ->capture_default_str();
  b->add_option("--max-millis", bench.budget.max_millis, "Per-instance wall-clock budget");
  b->add_option("--jobs", bench.jobs, "Solver worker threads");
  b->add_option("--out", bench.out, "CSV file (stdout when omitted)");
  b->add_option("--e-value", bench.e_value, "SoD count e instead of calibrating");
  b->add_option("--e-kind", bench.e_kind, "Kind-specific count instead of calibrating");
  add_calibration_flags(b, bench.cal);

  std::vector<std::string> argv_store{"wsp"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << "\nRun 'wsp --help' for usage.\n";
    return kError;
  }

  try {
    if (g->parsed()) return cmd_generate(gen, out, err);
    if (s->parsed()) return cmd_solve(sol, out, err);
    if (v->parsed()) return cmd_verify(verify_instance, verify_plan, out);
    if (e->parsed()) return cmd_encode(enc, out);
    if (in->parsed()) return cmd_inspect(inspect_instance, inspect_json, out);
    if (c->parsed()) return cmd_calibrate(calib, out, err);
    if (b->parsed()) return cmd_bench(bench, out, err);
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return kError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace wsp::cli
