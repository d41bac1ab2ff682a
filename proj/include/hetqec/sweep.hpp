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

#ifndef HETQEC_SWEEP_HPP
#define HETQEC_SWEEP_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hetqec/config.hpp"
#include "hetqec/montecarlo.hpp"

namespace hetqec {

struct PlannedPoint {
  ExperimentPoint label;
  StreamKey key;
  std::uint64_t trials = 0;
  RegimeParams regime;
  std::optional<PlacementSpec> placement;
};

/// Identity of a point within a results table, used for resuming.
std::string point_identity(const ExperimentPoint& point);

/// Points in output order: bias values, placements, distances, p values.
std::vector<PlannedPoint> plan_sweep(const ExperimentConfig& config);

struct SweepFailure {
  std::string point;
  std::optional<std::uint64_t> trial;
  std::string message;
};

struct SweepResult {
  std::vector<ExperimentPoint> points;
  std::vector<SweepFailure> failures;
  /// Points taken from an existing table instead of being run.
  std::size_t resumed = 0;
};

struct SweepOptions {
  /// Called after each newly computed point.
  std::function<void(const ExperimentPoint&)> on_point;
  bool log_progress = false;
};

/// Runs every planned point in memory.
SweepResult sweep(const ExperimentConfig& config, const SweepOptions& options = {});

/// Runs the sweep, appending one CSV row per finished point and writing
/// the sidecar. With resume, rows already present in the CSV are kept and
/// their points skipped; a trailing partial line is discarded.
SweepResult run_sweep_to_files(const ExperimentConfig& config, const std::string& csv_path,
                               const std::string& sidecar_path, bool resume, const SweepOptions& options = {});

}  // namespace hetqec

#endif  // HETQEC_SWEEP_HPP
