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

#include <json.hpp>
#include <ostream>

#include "wsp/encode.hpp"

namespace wsp {

namespace {

/// A row as sum(coef * var) >= rhs, guard already folded in.
struct GeRow {
  std::vector<Term> terms;
  std::int64_t rhs = 0;
  std::optional<std::uint32_t> guard;
};

std::vector<GeRow> as_ge_rows(const PbConstraint& c) {
  std::vector<GeRow> out{{c.terms, c.rhs, c.guard}};
  if (c.rel == Relation::kEq) {
    GeRow upper{c.terms, -c.rhs, c.guard};
    for (auto& t : upper.terms) t.coef = -t.coef;
    out.push_back(std::move(upper));
  }
  return out;
}

/// g -> (sum >= rhs) as sum - M*g >= rhs - M with M = rhs - min(sum).
GeRow linearise(GeRow row) {
  if (!row.guard) return row;
  std::int64_t min_sum = 0;
  for (const auto& t : row.terms) min_sum += std::min<std::int64_t>(t.coef, 0);
  const std::int64_t big = row.rhs - min_sum;
  if (big > 0) {
    row.terms.push_back({-big, *row.guard});
    row.rhs -= big;
  }
  row.guard.reset();
  return row;
}

void write_term(std::ostream& out, const Term& t) {
  out << (t.coef >= 0 ? "+" : "") << t.coef << " x" << (t.var + 1);
}

class CnfBuilder {
 public:
  explicit CnfBuilder(std::size_t vars) { cnf_.vars = vars; }

  /// sum of literals >= bound under an optional guard literal (1-based).
  void at_least(std::vector<int> lits, std::int64_t bound, std::optional<int> guard) {
    const auto size = static_cast<std::int64_t>(lits.size());
    if (bound <= 0) return;
    if (bound > size) {
      clause({}, guard);
      return;
    }
    if (bound == 1) {
      clause(std::move(lits), guard);
      return;
    }
    // At most size - bound of the negated literals.
    for (auto& l : lits) l = -l;
    at_most(lits, size - bound, guard);
  }

  Cnf take() { return std::move(cnf_); }

 private:
  void clause(std::vector<int> lits, std::optional<int> guard) {
    if (guard) lits.push_back(-*guard);
    cnf_.clauses.push_back(std::move(lits));
  }

  int fresh() { return static_cast<int>(++cnf_.vars); }

  /// Sinz's sequential counter: s[i][j] is "at least j+1 of the first i+1
  /// literals are true".
  void at_most(const std::vector<int>& y, std::int64_t bound, std::optional<int> guard) {
    const std::size_t n = y.size();
    if (static_cast<std::size_t>(bound) >= n) return;
    if (bound == 0) {
      for (const int l : y) clause({-l}, guard);
      return;
    }
    const auto kk = static_cast<std::size_t>(bound);
    std::vector<std::vector<int>> s(n - 1, std::vector<int>(kk));
    for (auto& row : s) {
      for (auto& v : row) v = fresh();
    }
    clause({-y[0], s[0][0]}, guard);
    for (std::size_t j = 1; j < kk; ++j) clause({-s[0][j]}, guard);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      clause({-y[i], s[i][0]}, guard);
      clause({-s[i - 1][0], s[i][0]}, guard);
      for (std::size_t j = 1; j < kk; ++j) {
        clause({-y[i], -s[i - 1][j - 1], s[i][j]}, guard);
        clause({-s[i - 1][j], s[i][j]}, guard);
      }
      clause({-y[i], -s[i - 1][kk - 1]}, guard);
    }
    clause({-y[n - 1], -s[n - 2][kk - 1]}, guard);
  }

  Cnf cnf_;
};

}  // namespace

void emit_opb(const BooleanModel& m, std::ostream& out) {
  std::size_t count = 0;
  for (const auto& c : m.constraints()) {
    count += (c.rel == Relation::kEq && c.guard) ? 2 : 1;
  }
  out << "* #variable= " << m.var_count() << " #constraint= " << count << "\n";
  for (const auto& c : m.constraints()) {
    if (c.rel == Relation::kEq && !c.guard) {
      for (const auto& t : c.terms) {
        write_term(out, t);
        out << ' ';
      }
      out << "= " << c.rhs << " ;\n";
      continue;
    }
    for (auto row : as_ge_rows(c)) {
      row = linearise(std::move(row));
      for (const auto& t : row.terms) {
        write_term(out, t);
        out << ' ';
      }
      out << ">= " << row.rhs << " ;\n";
    }
  }
}

Cnf compile_cnf(const BooleanModel& m) {
  CnfBuilder builder(m.var_count());
  for (const auto& c : m.constraints()) {
    std::optional<int> guard;
    if (c.guard) guard = static_cast<int>(*c.guard) + 1;
    for (const auto& row : as_ge_rows(c)) {
      std::vector<int> lits;
      std::int64_t bound = row.rhs;
      for (const auto& t : row.terms) {
        const int v = static_cast<int>(t.var) + 1;
        if (t.coef == 1) {
          lits.push_back(v);
        } else if (t.coef == -1) {
          // -x = (1 - x) - 1
          lits.push_back(-v);
          bound += 1;
        } else {
          throw InvariantViolation("CNF compilation needs unit coefficients");
        }
      }
      builder.at_least(std::move(lits), bound, guard);
    }
  }
  return builder.take();
}

void emit_dimacs(const BooleanModel& m, std::ostream& out) {
  const auto cnf = compile_cnf(m);
  out << "p cnf " << cnf.vars << ' ' << cnf.clauses.size() << "\n";
  for (const auto& clause : cnf.clauses) {
    for (const int l : clause) out << l << ' ';
    out << "0\n";
  }
}

void emit_var_map(const BooleanModel& m, std::ostream& out) {
  for (std::uint32_t i = 0; i < m.var_count(); ++i) {
    out << m.var(i).name << ' ' << (i + 1) << "\n";
  }
}

void emit_cs_json(const CsModel& m, std::ostream& out) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["vars"] = ordered_json::array();
  for (const auto& v : m.vars) {
    doc["vars"].push_back({{"name", v.name}, {"domain", v.domain}});
  }
  doc["constraints"] = ordered_json::array();
  for (const auto& c : m.constraints) {
    ordered_json args;
    args["vars"] = c.vars;
    switch (c.kind) {
      case CsKind::kAtMostDistinct:
      case CsKind::kAtLeastDistinct:
        args["bound"] = c.bound;
        break;
      case CsKind::kImpliesNotValue:
        args["value"] = c.bound;
        break;
      default:
        break;
    }
    if (c.guard) args["guard"] = *c.guard;
    doc["constraints"].push_back({{"kind", kind_name(c.kind)}, {"args", args}});
  }
  out << doc.dump(2) << "\n";
}

}  // namespace wsp
