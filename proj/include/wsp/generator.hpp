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

#ifndef WSP_GENERATOR_HPP_
#define WSP_GENERATOR_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsp/core.hpp"
#include "wsp/solver.hpp"

namespace wsp {

/// SplitMix64 (Steele, Lea, Flood 2014).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, bound) by rejection on the high bits; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  /// `count` distinct values of [0, n) by partial Fisher-Yates, in draw order.
  std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t count);

 private:
  std::uint64_t state_;
};

/// Independent seed for a named sub-stream.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

struct GenCounts {
  std::uint32_t sod = 0;
  std::uint32_t am3 = 0;
  std::uint32_t sual = 0;
  std::uint32_t wl = 0;
  std::uint32_t ada = 0;
  friend bool operator==(const GenCounts&, const GenCounts&) = default;
};

struct GenSpec {
  std::size_t k = 0;
  std::size_t n = 0;
  GenCounts counts;
  std::uint64_t seed = 0;
};

struct InstanceMeta {
  std::uint64_t seed = 0;
  /// Extra draws needed because a step ended up with no authorised user.
  std::uint32_t regenerations = 0;
  std::string family;
  std::string generator = "wsp-gen/1";
};

struct GeneratedInstance {
  Instance instance;
  InstanceMeta meta;
};

/// Throws InvariantViolation naming the offending parameter.
void check_spec(const GenSpec& spec);

/// Deterministic in `spec`. Every constraint kind draws from its own
/// sub-stream, so raising one count only appends constraints of that kind.
GeneratedInstance generate(const GenSpec& spec);

enum class FamilyKind { kSod, kAm3, kSual, kWl, kAda };

std::string family_name(FamilyKind kind);
/// Accepts "sod", "wsp" (same family), "am3", "sual", "wl", "ada".
FamilyKind parse_family(const std::string& name);

struct CalibrateOptions {
  std::uint32_t samples = 200;
  double lo = 0.4;
  double hi = 0.6;
  std::uint64_t master_seed = 1;
  unsigned jobs = 1;
  /// Per-instance budget; a budget-exceeded sample counts as not SAT.
  Budget budget;
};

struct PTCalibration {
  std::uint32_t e_value = 0;
  double sat_rate = 0.0;
  std::uint32_t samples = 0;
  /// Number of rate estimates made during the search.
  std::uint32_t probes = 0;
};

/// Seed of the i-th instance drawn under a master seed.
std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index);

/// SAT rate of `samples` instances with seeds sample_seed(master, 0..).
double sat_rate(const GenSpec& base, std::uint32_t samples, std::uint64_t master,
                unsigned jobs = 1, const Budget& budget = {});

/// Integer bisection on the count of `varied` (added to base's count of that
/// kind), assuming the SAT rate does not increase with the count. Returns the
/// smallest count in [0, k(k-1)/2] whose rate lies in [lo, hi].
PTCalibration calibrate_count(const GenSpec& base, FamilyKind varied,
                              const CalibrateOptions& opts);

/// Calibrates e_{k,n}: the SoD count over k AM3 constraints.
PTCalibration calibrate_pt(std::size_t k, std::size_t n, const CalibrateOptions& opts);

/// 0.75 * e, rounded to nearest with ties down.
std::uint32_t three_quarters(std::uint32_t e);

/// Base spec of a family. WSP(k,n) is k AM3 + e SoD; other kinds add
/// `e_kind` constraints of their kind to k AM3 + 0.75 e SoD.
GenSpec family_spec(FamilyKind kind, std::size_t k, std::size_t n, std::uint32_t e_sod,
                    std::uint32_t e_kind);

/// Lazily drawn family members.
class FamilyStream {
 public:
  FamilyStream(FamilyKind kind, GenSpec base, std::uint64_t master_seed)
      : kind_(kind), base_(base), master_(master_seed) {}

  GeneratedInstance next();
  std::uint64_t drawn() const { return index_; }

 private:
  FamilyKind kind_;
  GenSpec base_;
  std::uint64_t master_;
  std::uint64_t index_ = 0;
};

/// `e_kind` defaults to calibrating with SoD fixed at 0.75 e_sod; SoD
/// families ignore it.
FamilyStream make_family(FamilyKind kind, std::size_t k, std::size_t n,
                         std::uint64_t master_seed, std::uint32_t e_sod,
                         std::optional<std::uint32_t> e_kind = std::nullopt,
                         const CalibrateOptions& opts = {});

}  // namespace wsp

#endif  // WSP_GENERATOR_HPP_
