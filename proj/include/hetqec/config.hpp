// Copyright 2026 The hetqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HETQEC_CONFIG_HPP
#define HETQEC_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hetqec/code.hpp"
#include "hetqec/decoder.hpp"
#include "hetqec/noise.hpp"

namespace hetqec {

inline constexpr int kConfigSchemaVersion = 1;

enum class RegimeKind { kHomogeneous, kA, kB };

std::string to_string(RegimeKind kind);

/// Replaces the default trial count for every point matching all the
/// fields that are set.
struct TrialOverride {
  std::optional<int> d;
  std::optional<PlacementStrategy> placement;
  std::optional<double> p;
  std::uint64_t trials = 0;
};

struct ExperimentConfig {
  int schema_version = kConfigSchemaVersion;
  RegimeKind regime = RegimeKind::kHomogeneous;
  Deformation deformation = Deformation::kXy;
  std::vector<int> distances;
  std::vector<PlacementStrategy> placements;
  /// Homogeneous and regime A: one sweep per value.
  std::vector<Bias> eta;
  /// Regime A: p_noisy / p_quiet.
  double ratio = 10.0;
  /// Regime B.
  Bias eta_low = Bias::finite(10.0);
  std::vector<Bias> eta_high;
  /// p for homogeneous and regime B, p_noisy for regime A.
  std::vector<double> p_values;
  std::uint64_t trials = 10000;
  std::vector<TrialOverride> trial_overrides;
  std::size_t chi = 16;
  DecodeMethod method = DecodeMethod::kTn;
  std::uint64_t seed = 1;
  std::optional<std::size_t> noisy_count;
  std::string csv_path;
  std::string sidecar_path;
  /// The document the config was parsed from.
  nlohmann::json source;

  std::uint64_t trials_for(int d, std::optional<PlacementStrategy> placement, double p) const;
};

/// Every problem found in a config, reported together.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

/// Prefixes relative paths with $HETQEC_OUTPUT_DIR when it is set.
std::string resolve_output_path(const std::string& path);

}  // namespace hetqec

#endif  // HETQEC_CONFIG_HPP
