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

#include "wsp/io.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace wsp {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ordered_json steps_json(StepMask mask) { return steps_of(mask); }

ordered_json constraint_json(const Constraint& c) {
  ordered_json j;
  j["kind"] = kind_name(kind_of(c));
  std::visit(Overloaded{
                 [&](const BindingOfDuty& b) {
                   j["steps"] = {b.first.value, b.second.value};
                 },
                 [&](const SeparationOfDuty& s) {
                   j["steps"] = {s.first.value, s.second.value};
                 },
                 [&](const AtMost& a) {
                   j["r"] = a.r;
                   j["scope"] = steps_json(a.scope);
                 },
                 [&](const AtLeast& a) {
                   j["r"] = a.r;
                   j["scope"] = steps_json(a.scope);
                 },
                 [&](const SuperUserAtLeast& s) {
                   j["scope"] = steps_json(s.scope);
                   j["h"] = s.h;
                   j["supers"] = s.supers.to_vector();
                 },
                 [&](const WangLi& w) {
                   j["scope"] = steps_json(w.scope);
                   j["teams"] = ordered_json::array();
                   for (const auto& t : w.teams) j["teams"].push_back(t.to_vector());
                 },
                 [&](const AssignmentDependent& a) {
                   j["s1"] = a.first.value;
                   j["s2"] = a.second.value;
                   j["u1"] = a.if_users.to_vector();
                   j["u2"] = a.then_users.to_vector();
                 },
             },
             c);
  return j;
}

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) throw FormatError(where + ": expected an object");
  const auto it = obj.find(name);
  if (it == obj.end()) throw FormatError(where + ": missing field '" + name + "'");
  return *it;
}

std::uint32_t index_of(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
      v.get<std::int64_t>() > std::int64_t{UINT32_MAX}) {
    throw FormatError(where + ": expected a non-negative integer");
  }
  return v.get<std::uint32_t>();
}

std::vector<std::uint32_t> indices_of(const json& v, const std::string& where) {
  if (!v.is_array()) throw FormatError(where + ": expected an array");
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(index_of(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

StepMask scope_from(const json& v, std::size_t k, const std::string& where) {
  StepMask mask = 0;
  for (const auto s : indices_of(v, where)) {
    if (s >= k) throw FormatError(where + ": step " + std::to_string(s) + " out of range");
    if ((mask & step_bit(s)) != 0) {
      throw FormatError(where + ": step " + std::to_string(s) + " repeated");
    }
    mask |= step_bit(s);
  }
  return mask;
}

std::pair<StepId, StepId> step_pair(const json& obj, std::size_t k, const std::string& where) {
  const auto steps = indices_of(field(obj, "steps", where), where + ".steps");
  if (steps.size() != 2) throw FormatError(where + ".steps: expected two steps");
  for (const auto s : steps) {
    if (s >= k) throw FormatError(where + ".steps: step " + std::to_string(s) + " out of range");
  }
  return {StepId{steps[0]}, StepId{steps[1]}};
}

Constraint constraint_from(const json& obj, std::size_t k, const std::string& where) {
  const auto& kind_v = field(obj, "kind", where);
  if (!kind_v.is_string()) throw FormatError(where + ".kind: expected a string");
  const auto kind = kind_v.get<std::string>();
  auto users = [&](const char* name) {
    return UserSet::from_indices(indices_of(field(obj, name, where), where + "." + name));
  };
  auto scope = [&] { return scope_from(field(obj, "scope", where), k, where + ".scope"); };
  auto number = [&](const char* name) {
    return index_of(field(obj, name, where), where + "." + name);
  };
  if (kind == "bod") {
    const auto [a, b] = step_pair(obj, k, where);
    return BindingOfDuty{a, b};
  }
  if (kind == "sod") {
    const auto [a, b] = step_pair(obj, k, where);
    return SeparationOfDuty{a, b};
  }
  if (kind == "at_most") return AtMost{number("r"), scope()};
  if (kind == "at_least") return AtLeast{number("r"), scope()};
  if (kind == "sual") return SuperUserAtLeast{scope(), number("h"), users("supers")};
  if (kind == "wl") {
    WangLi w{scope(), {}};
    const auto& teams = field(obj, "teams", where);
    if (!teams.is_array()) throw FormatError(where + ".teams: expected an array");
    for (std::size_t i = 0; i < teams.size(); ++i) {
      w.teams.push_back(UserSet::from_indices(
          indices_of(teams[i], where + ".teams[" + std::to_string(i) + "]")));
    }
    return w;
  }
  if (kind == "ada") {
    const auto s1 = number("s1");
    const auto s2 = number("s2");
    if (s1 >= k || s2 >= k) throw FormatError(where + ": ada step out of range");
    return AssignmentDependent{StepId{s1}, StepId{s2}, users("u1"), users("u2")};
  }
  throw FormatError(where + ".kind: unknown constraint kind '" + kind + "'");
}

json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(what + " is not valid JSON: " + e.what());
  }
}

}  // namespace

std::string instance_to_json(const Instance& inst, const std::optional<InstanceMeta>& meta) {
  ordered_json doc;
  doc["k"] = inst.steps();
  doc["n"] = inst.users();
  doc["auth"] = ordered_json::array();
  for (const auto& users : inst.auth().per_step()) doc["auth"].push_back(users.to_vector());
  doc["constraints"] = ordered_json::array();
  for (const auto& c : inst.constraints()) doc["constraints"].push_back(constraint_json(c));
  if (meta) {
    ordered_json m;
    m["seed"] = meta->seed;
    m["generator"] = meta->generator;
    m["family"] = meta->family;
    m["regenerations"] = meta->regenerations;
    doc["meta"] = m;
  }
  return doc.dump(2) + "\n";
}

InstanceFile instance_from_json(const std::string& text) {
  const json doc = parse(text, "instance");
  const auto k = index_of(field(doc, "k", "instance"), "instance.k");
  const auto n = index_of(field(doc, "n", "instance"), "instance.n");
  if (k > kMaxSteps) {
    throw FormatError("instance.k: " + std::to_string(k) + " exceeds the limit of " +
                      std::to_string(kMaxSteps));
  }
  const auto& auth_v = field(doc, "auth", "instance");
  if (!auth_v.is_array() || auth_v.size() != k) {
    throw FormatError("instance.auth: expected one user list per step (" + std::to_string(k) +
                      ")");
  }
  std::vector<UserSet> per_step;
  for (std::size_t s = 0; s < k; ++s) {
    const std::string where = "instance.auth[" + std::to_string(s) + "]";
    const auto users = indices_of(auth_v[s], where);
    for (const auto u : users) {
      if (u >= n) throw FormatError(where + ": user " + std::to_string(u) + " out of range");
    }
    per_step.push_back(UserSet::from_indices(users));
  }
  std::vector<Constraint> constraints;
  if (const auto it = doc.find("constraints"); it != doc.end()) {
    if (!it->is_array()) throw FormatError("instance.constraints: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      constraints.push_back(
          constraint_from((*it)[i], k, "instance.constraints[" + std::to_string(i) + "]"));
    }
  }
  InstanceFile out;
  try {
    out.instance = Instance(k, n, AuthorisationFunction(std::move(per_step)),
                            std::move(constraints));
  } catch (const InvariantViolation& e) {
    throw FormatError(std::string("instance: ") + e.what());
  }
  if (const auto it = doc.find("meta"); it != doc.end() && it->is_object()) {
    InstanceMeta meta;
    if (it->contains("seed") && (*it)["seed"].is_number_unsigned()) {
      meta.seed = (*it)["seed"].get<std::uint64_t>();
    }
    if (it->contains("generator") && (*it)["generator"].is_string()) {
      meta.generator = (*it)["generator"].get<std::string>();
    }
    if (it->contains("family") && (*it)["family"].is_string()) {
      meta.family = (*it)["family"].get<std::string>();
    }
    if (it->contains("regenerations") && (*it)["regenerations"].is_number_unsigned()) {
      meta.regenerations = (*it)["regenerations"].get<std::uint32_t>();
    }
    out.meta = meta;
  }
  return out;
}

std::string plan_to_json(const Plan& plan) {
  ordered_json doc;
  doc["assignment"] = plan.indices();
  return doc.dump(2) + "\n";
}

Plan plan_from_json(const std::string& text) {
  const json doc = parse(text, "plan");
  return Plan::from_indices(indices_of(field(doc, "assignment", "plan"), "plan.assignment"));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw FormatError("write to " + path.string() + " failed");
}

InstanceFile load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_file(path));
}

Plan load_plan(const std::filesystem::path& path) { return plan_from_json(read_file(path)); }

std::string calibration_to_json(const CalibrationRecord& rec) {
  ordered_json doc;
  doc["k"] = rec.k;
  doc["n"] = rec.n;
  doc["family"] = rec.family;
  doc["e_value"] = rec.e_value;
  doc["samples"] = rec.samples;
  doc["band"] = {rec.lo, rec.hi};
  doc["master_seed"] = rec.master_seed;
  return doc.dump(2) + "\n";
}

CalibrationRecord calibration_from_json(const std::string& text) {
  const json doc = parse(text, "calibration");
  try {
    CalibrationRecord rec;
    rec.k = doc.at("k").get<std::size_t>();
    rec.n = doc.at("n").get<std::size_t>();
    rec.family = doc.at("family").get<std::string>();
    rec.e_value = doc.at("e_value").get<std::uint32_t>();
    rec.samples = doc.at("samples").get<std::uint32_t>();
    rec.lo = doc.at("band").at(0).get<double>();
    rec.hi = doc.at("band").at(1).get<double>();
    rec.master_seed = doc.at("master_seed").get<std::uint64_t>();
    return rec;
  } catch (const json::exception& e) {
    throw FormatError(std::string("calibration: ") + e.what());
  }
}

std::filesystem::path default_cache_dir() {
  if (const char* dir = std::getenv("WSP_CACHE_DIR"); dir != nullptr && *dir != '\0') {
    return dir;
  }
  return ".wsp-cache";
}

std::filesystem::path calibration_path(const std::filesystem::path& dir, const std::string& family,
                                       std::size_t k, std::size_t n) {
  return dir / (family + "_k" + std::to_string(k) + "_n" + std::to_string(n) + ".json");
}

std::optional<CalibrationRecord> load_calibration(const std::filesystem::path& dir,
                                                  const std::string& family, std::size_t k,
                                                  std::size_t n) {
  const auto path = calibration_path(dir, family, k, n);
  if (!std::filesystem::exists(path)) return std::nullopt;
  return calibration_from_json(read_file(path));
}

void store_calibration(const std::filesystem::path& dir, const CalibrationRecord& rec) {
  write_file(calibration_path(dir, rec.family, rec.k, rec.n), calibration_to_json(rec));
}

}  // namespace wsp
