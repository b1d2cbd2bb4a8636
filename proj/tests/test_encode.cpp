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
#include <sstream>

#include "support.hpp"
#include "wsp/encode.hpp"

using namespace wsp;

namespace {

// ---------------------------------------------------------------------------
// Independent readers for the emitted formats.

struct OpbRow {
  std::vector<std::pair<std::int64_t, std::size_t>> terms;  // (coef, 0-based var)
  bool equality = false;
  std::int64_t rhs = 0;
};

std::vector<OpbRow> parse_opb(const std::string& text, std::size_t& declared_vars) {
  std::vector<OpbRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t declared_rows = 0;
  while (std::getline(in, line)) {
    if (line.rfind("*", 0) == 0) {
      std::sscanf(line.c_str(), "* #variable= %zu #constraint= %zu", &declared_vars, &declared_rows);
      continue;
    }
    std::istringstream ls(line);
    OpbRow row;
    std::string tok;
    while (ls >> tok) {
      if (tok == ">=" || tok == "=") {
        row.equality = tok == "=";
        ls >> row.rhs;
        ls >> tok;
        REQUIRE(tok == ";");
        break;
      }
      std::string var;
      ls >> var;
      REQUIRE(var.size() > 1);
      REQUIRE(var[0] == 'x');
      row.terms.emplace_back(std::stoll(tok), std::stoull(var.substr(1)) - 1);
    }
    rows.push_back(std::move(row));
  }
  CHECK(rows.size() == declared_rows);
  return rows;
}

bool opb_satisfied(const std::vector<OpbRow>& rows, const BoolAssignment& a) {
  for (const auto& r : rows) {
    std::int64_t sum = 0;
    for (const auto& [c, v] : r.terms) sum += a.at(v) ? c : 0;
    if (r.equality ? sum != r.rhs : sum < r.rhs) return false;
  }
  return true;
}

/// Plain DPLL with unit propagation.
class Dpll {
 public:
  explicit Dpll(const Cnf& cnf) : cnf_(cnf), value_(cnf.vars + 1, 0) {}

  bool solve(const std::vector<int>& assumptions) {
    std::fill(value_.begin(), value_.end(), 0);
    for (const int l : assumptions) {
      const int v = std::abs(l);
      const int want = l > 0 ? 1 : -1;
      if (value_[v] == -want) return false;
      value_[v] = want;
    }
    return search();
  }

 private:
  bool search() {
    std::vector<int> trail;
    const auto undo = [&] {
      for (const int v : trail) value_[v] = 0;
    };
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : cnf_.clauses) {
        int unassigned = 0;
        int last = 0;
        bool sat = false;
        for (const int l : clause) {
          const int v = value_[std::abs(l)];
          if (v == 0) {
            ++unassigned;
            last = l;
          } else if ((v > 0) == (l > 0)) {
            sat = true;
            break;
          }
        }
        if (sat) continue;
        if (unassigned == 0) {
          undo();
          return false;
        }
        if (unassigned == 1) {
          value_[std::abs(last)] = last > 0 ? 1 : -1;
          trail.push_back(std::abs(last));
          changed = true;
        }
      }
    }
    std::size_t pick = 0;
    for (std::size_t v = 1; v < value_.size() && pick == 0; ++v) {
      if (value_[v] == 0) pick = v;
    }
    if (pick == 0) return true;
    for (const int guess : {1, -1}) {
      value_[pick] = guess;
      if (search()) return true;
    }
    value_[pick] = 0;
    undo();
    return false;
  }

  const Cnf& cnf_;
  std::vector<int> value_;
};

/// x literals fixing the plan, 1-based as in the CNF.
std::vector<int> plan_literals(const Plan& plan, const BooleanModel& m) {
  std::vector<int> lits;
  for (std::uint32_t i = 0; i < m.var_count(); ++i) {
    const auto& v = m.var(i);
    if (v.kind != VarKind::kX) continue;
    const bool on = plan[v.first].value == v.second;
    lits.push_back(on ? static_cast<int>(i) + 1 : -(static_cast<int>(i) + 1));
  }
  return lits;
}

std::vector<Plan> authorised_plans(const Instance& inst) {
  std::vector<Plan> out;
  test::for_each_plan(inst.steps(), inst.users(), [&](const Plan& p) {
    if (is_authorised(p, inst.auth())) out.push_back(p);
  });
  return out;
}

void for_each_cs_solution(const CsModel& m, const std::function<void(const std::vector<std::uint32_t>&)>& f) {
  std::vector<std::uint32_t> values(m.vars.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == m.vars.size()) {
      if (cs_satisfied(m, values)) f(values);
      return;
    }
    for (const auto v : m.vars[i].domain) {
      values[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

void check_boolean_model(const BooleanModel& model, const Instance& inst) {
  const auto valid = test::valid_plan_set(inst);
  std::ostringstream opb;
  emit_opb(model, opb);
  std::size_t declared = 0;
  const auto rows = parse_opb(opb.str(), declared);
  CHECK(declared == model.var_count());
  const auto cnf = compile_cnf(model);
  Dpll dpll(cnf);
  for (const auto& plan : authorised_plans(inst)) {
    const bool ok = valid.count(plan) != 0;
    const auto a = induced_assignment(plan, model);
    CHECK(satisfies(model, a) == ok);
    CHECK(opb_satisfied(rows, a) == ok);
    CHECK(dpll.solve(plan_literals(plan, model)) == ok);
    CHECK(decode(a, model) == plan);
    if (model.has_pattern_vars()) {
      for (std::size_t s = 0; s < inst.steps(); ++s) {
        for (std::size_t t = 0; t < inst.steps(); ++t) {
          CHECK(a[*model.m(s, t)] == (plan[s] == plan[t]));
        }
      }
    }
  }
  CHECK(dpll.solve({}) == !valid.empty());
}

}  // namespace

TEST_CASE("Boolean models accept exactly the valid plans") {
  test::Random rng(51);
  for (const auto kind : test::all_mixes()) {
    CAPTURE(test::mix_name(kind));
    for (int round = 0; round < 15; ++round) {
      const auto inst = rng.instance(kind, 3, 3, 0.7);
      check_boolean_model(encode_udpb(inst), inst);
      check_boolean_model(encode_pbpb(inst), inst);
      EncodeOptions no_trans;
      no_trans.transitivity = false;
      no_trans.subset_threshold = 0;
      check_boolean_model(encode_pbpb(inst, no_trans), inst);
    }
  }
}

TEST_CASE("UDPB creates x only for authorised pairs") {
  const auto inst = test::running_example();
  const auto m = encode_udpb(inst);
  CHECK_FALSE(m.has_pattern_vars());
  std::size_t pairs = 0;
  for (std::size_t s = 0; s < inst.steps(); ++s) pairs += inst.auth()[s].count();
  std::size_t xs = 0;
  for (const auto& v : m.vars()) xs += v.kind == VarKind::kX ? 1 : 0;
  CHECK(xs == pairs);
  CHECK(m.x(0, 0).has_value());
  CHECK_FALSE(m.x(0, 7).has_value());
  CHECK(m.find("x_0_1") == m.x(0, 1));
  const auto p = encode_pbpb(inst);
  CHECK(p.m(2, 3).has_value());
  CHECK(p.var_count() >= xs + inst.steps() * inst.steps());
}

TEST_CASE("CS models decode to exactly the valid plans") {
  test::Random rng(52);
  for (const auto kind : test::all_mixes()) {
    CAPTURE(test::mix_name(kind));
    for (int round = 0; round < 15; ++round) {
      const auto inst = rng.instance(kind, 3, 3, 0.7);
      const auto model = encode_cs(inst);
      std::set<Plan> decoded;
      for_each_cs_solution(model, [&](const std::vector<std::uint32_t>& v) {
        decoded.insert(decode(std::span<const std::uint32_t>(v), model));
      });
      const auto valid = test::valid_plan_set(inst);
      CHECK(decoded == valid);
      for (const auto& plan : valid) {
        const auto values = induced_values(plan, model, inst);
        CHECK(cs_satisfied(model, values));
        CHECK(decode(std::span<const std::uint32_t>(values), model) == plan);
      }
    }
  }
}

TEST_CASE("AtMost(2) over three steps and three users has 21 plans") {
  const Instance inst(3, 3, AuthorisationFunction::full(3, 3), {AtMost{2, step_mask({0, 1, 2})}});
  const auto model = encode_cs(inst);
  std::size_t count = 0;
  for_each_cs_solution(model, [&](const std::vector<std::uint32_t>&) { ++count; });
  CHECK(count == 21);
  std::size_t induced = 0;
  const auto pbpb = encode_pbpb(inst);
  for (const auto& plan : authorised_plans(inst)) {
    induced += satisfies(pbpb, induced_assignment(plan, pbpb)) ? 1 : 0;
  }
  CHECK(induced == 21);
}

TEST_CASE("emitters are byte-stable and consistent") {
  const auto inst = test::running_example();
  const auto m = encode_pbpb(inst);
  std::ostringstream a;
  std::ostringstream b;
  emit_opb(m, a);
  emit_opb(encode_pbpb(inst), b);
  CHECK(a.str() == b.str());
  std::ostringstream dimacs;
  emit_dimacs(m, dimacs);
  const auto cnf = compile_cnf(m);
  CHECK(dimacs.str().rfind("p cnf " + std::to_string(cnf.vars) + " " +
                               std::to_string(cnf.clauses.size()) + "\n",
                           0) == 0);
  std::ostringstream map;
  emit_var_map(m, map);
  std::istringstream lines(map.str());
  std::string name;
  std::size_t index = 0;
  std::size_t expected = 1;
  while (lines >> name >> index) {
    CHECK(index == expected);
    CHECK(m.find(name) == static_cast<std::uint32_t>(index - 1));
    ++expected;
  }
  CHECK(expected == m.var_count() + 1);
  std::ostringstream cs;
  emit_cs_json(encode_cs(inst), cs);
  CHECK(cs.str().find("\"neq\"") != std::string::npos);
}

TEST_CASE("induced_assignment rejects unauthorised plans") {
  const auto inst = test::running_example();
  const auto m = encode_udpb(inst);
  CHECK_THROWS_AS(induced_assignment(Plan::from_indices({7, 1, 0, 3, 2, 4}), m), InvariantViolation);
  BoolAssignment none(m.var_count(), false);
  CHECK_THROWS_AS(decode(none, m), InvariantViolation);
}

namespace {

std::size_t count_models(const BooleanModel& m) {
  REQUIRE(m.var_count() <= 24);
  std::size_t count = 0;
  BoolAssignment a(m.var_count());
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m.var_count()); ++bits) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = ((bits >> i) & 1U) != 0;
    count += satisfies(m, a) ? 1 : 0;
  }
  return count;
}

}  // namespace

TEST_CASE("exhaustive Boolean enumeration of small models") {
  const Instance sod(2, 2, AuthorisationFunction::full(2, 2), {SeparationOfDuty{StepId{0}, StepId{1}}});
  CHECK(encode_udpb(sod).var_count() == 4);
  CHECK(count_models(encode_udpb(sod)) == 2);
  CHECK(count_models(encode_pbpb(sod)) == 2);
  const Instance am(3, 3, AuthorisationFunction::full(3, 3), {AtMost{2, step_mask({0, 1, 2})}});
  // 3^3 plans minus the 6 injective ones; auxiliaries are determined by x.
  CHECK(count_models(encode_pbpb(am)) == 21);
  CHECK(count_models(encode_udpb(am)) == 21);
}

TEST_CASE("WL with teams {u0,u1} and {u2} has five CS solutions") {
  const Instance inst(2, 3, AuthorisationFunction::full(2, 3), {WangLi{step_mask({0, 1}), {{0, 1}, {2}}}});
  const auto model = encode_cs(inst);
  std::set<std::vector<std::uint32_t>> plans;
  for_each_cs_solution(model, [&](const std::vector<std::uint32_t>& v) {
    plans.insert({v.begin(), v.begin() + 2});
  });
  CHECK(plans.size() == 5);
}

TEST_CASE("emitted OPB parses back to the model rows") {
  test::Random rng(53);
  for (int round = 0; round < 30; ++round) {
    const auto inst = rng.instance(static_cast<test::Mix>(rng.uniform(0, 3)), 5, 5, 0.6);
    for (const auto& m : {encode_udpb(inst), encode_pbpb(inst)}) {
      std::ostringstream out;
      emit_opb(m, out);
      std::size_t declared = 0;
      const auto rows = parse_opb(out.str(), declared);
      REQUIRE(rows.size() == m.constraints().size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& want = m.constraints()[i];
        REQUIRE_FALSE(want.guard.has_value());
        CHECK(rows[i].equality == (want.rel == Relation::kEq));
        CHECK(rows[i].rhs == want.rhs);
        REQUIRE(rows[i].terms.size() == want.terms.size());
        for (std::size_t j = 0; j < want.terms.size(); ++j) {
          CHECK(rows[i].terms[j].first == want.terms[j].coef);
          CHECK(rows[i].terms[j].second == want.terms[j].var);
        }
      }
    }
  }
}

TEST_CASE("PBPB row count on the running example follows the closed form") {
  const auto inst = test::running_example();
  const std::size_t k = inst.steps();
  // exactly-one + symmetry + reflexivity + transitivity (two rows per
  // ordered triple) + linking + one row per SoD/BoD.
  std::size_t linking = 0;
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t t = s + 1; t < k; ++t) {
      (inst.auth()[s] | inst.auth()[t]).for_each([&](std::uint32_t u) {
        const bool in_s = inst.auth()[s].contains(u);
        const bool in_t = inst.auth()[t].contains(u);
        linking += (in_s ? 1 : 0) + (in_t ? 1 : 0) + (in_s && in_t ? 1 : 0);
      });
    }
  }
  const std::size_t expected =
      k + k * (k - 1) / 2 + k + 2 * k * (k - 1) * (k - 2) + linking + inst.constraints().size();
  std::ostringstream out;
  emit_opb(encode_pbpb(inst), out);
  CHECK(out.str().rfind("* #variable= " + std::to_string(encode_pbpb(inst).var_count()) +
                            " #constraint= " + std::to_string(expected) + "\n",
                        0) == 0);
}
