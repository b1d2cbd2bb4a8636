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

#ifndef WSP_IO_HPP_
#define WSP_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "wsp/core.hpp"
#include "wsp/generator.hpp"

namespace wsp {

/// Malformed or unreadable input files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceFile {
  Instance instance;
  std::optional<InstanceMeta> meta;
};

/// Instance JSON: {k, n, auth: [[users] per step], constraints: [...], meta}.
/// Output is byte-stable: fixed key order, two-space indent, LF endings.
std::string instance_to_json(const Instance& inst, const std::optional<InstanceMeta>& meta = {});
InstanceFile instance_from_json(const std::string& text);

std::string plan_to_json(const Plan& plan);
Plan plan_from_json(const std::string& text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

InstanceFile load_instance(const std::filesystem::path& path);
Plan load_plan(const std::filesystem::path& path);

struct CalibrationRecord {
  std::size_t k = 0;
  std::size_t n = 0;
  std::string family;
  std::uint32_t e_value = 0;
  std::uint32_t samples = 0;
  double lo = 0.4;
  double hi = 0.6;
  std::uint64_t master_seed = 0;
  friend bool operator==(const CalibrationRecord&, const CalibrationRecord&) = default;
};

std::string calibration_to_json(const CalibrationRecord& rec);
CalibrationRecord calibration_from_json(const std::string& text);

/// `$WSP_CACHE_DIR`, or `.wsp-cache` when unset.
std::filesystem::path default_cache_dir();
std::filesystem::path calibration_path(const std::filesystem::path& dir, const std::string& family,
                                       std::size_t k, std::size_t n);
std::optional<CalibrationRecord> load_calibration(const std::filesystem::path& dir,
                                                  const std::string& family, std::size_t k,
                                                  std::size_t n);
void store_calibration(const std::filesystem::path& dir, const CalibrationRecord& rec);

}  // namespace wsp

#endif  // WSP_IO_HPP_
