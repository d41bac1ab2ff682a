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

#ifndef HETQEC_MONTECARLO_HPP
#define HETQEC_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetqec/code.hpp"
#include "hetqec/decoder.hpp"
#include "hetqec/noise.hpp"

namespace hetqec {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for k successes in n trials.
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double conf = 0.95);

struct Tally {
  std::uint64_t trials = 0;
  std::uint64_t fail_x = 0;
  std::uint64_t fail_y = 0;
  std::uint64_t fail_z = 0;

  std::uint64_t failures() const { return fail_x + fail_y + fail_z; }
  Tally& operator+=(const Tally& o);
  friend bool operator==(const Tally&, const Tally&) = default;
};

/// Identifies the random streams of one point; chi and the bias values are
/// deliberately absent so runs differing only in those share their draws.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t d = 0;
  std::uint64_t p_index = 0;
  std::uint64_t placement = 0;
};

/// Thrown when a decode fails inside a trial loop.
class TrialError : public std::runtime_error {
 public:
  TrialError(std::uint64_t trial, const std::string& what)
      : std::runtime_error("trial " + std::to_string(trial) + ": " + what), trial_(trial) {}
  std::uint64_t trial() const { return trial_; }

 private:
  std::uint64_t trial_;
};

/// Runs trials [0, trials) with an OpenMP loop; the result does not depend
/// on the thread count.
Tally run_trials(const CodeInstance& code, const NoiseModel& model, const StreamKey& key, std::uint64_t trials,
                 const DecodeOptions& options);

/// Single-threaded reference for run_trials.
Tally run_trials_serial(const CodeInstance& code, const NoiseModel& model, const StreamKey& key,
                        std::uint64_t trials, const DecodeOptions& options);

/// One row of the results table.
struct ExperimentPoint {
  std::string regime;
  std::string placement;
  Deformation deformation = Deformation::kXy;
  int d = 0;
  std::string eta_low;
  std::string eta_high;
  double p_quiet = 0.0;
  double p_noisy = 0.0;
  double p = 0.0;
  std::size_t chi = 0;
  std::uint64_t seed = 0;
  Tally tally;

  double p_fail() const;
  Interval wilson(double conf = 0.95) const { return wilson_interval(tally.failures(), tally.trials, conf); }
};

ExperimentPoint run_point(const CodeInstance& code, const NoiseModel& model, const ExperimentPoint& label,
                          const StreamKey& key, std::uint64_t trials, const DecodeOptions& options);

enum class BoundKind { kEstimate, kLowerBound, kUpperBound, kUndetermined };

std::string to_string(BoundKind kind);

struct RatioEntry {
  int d = 0;
  double ratio = 0.0;
  Interval ci;
  BoundKind kind = BoundKind::kEstimate;
};

/// Per-distance p_L(numerator) / p_L(denominator).
struct RatioSeries {
  std::vector<RatioEntry> entries;
};

/// Log-scale delta-method interval for independent binomials. A zero
/// denominator tally yields a lower bound from its Wilson upper limit.
RatioSeries improvement_ratio(const std::vector<ExperimentPoint>& boundary,
                              const std::vector<ExperimentPoint>& bulk, double conf = 0.95);

struct LogicalBias {
  double eta = 0.0;
  Interval ci;
  BoundKind kind = BoundKind::kEstimate;
};

/// eta_L = fail_z / (fail_x + fail_y). Conditional on the failure count,
/// fail_z is binomial; its Wilson interval maps to one for eta_L.
LogicalBias logical_bias(const ExperimentPoint& point, double conf = 0.95);

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"regime",   "placement", "deformation", "d",      "eta_low",
                                             "eta_high", "p_quiet",   "p_noisy",     "p",      "chi",
                                             "trials",   "fail_x",    "fail_y",      "fail_z", "p_fail",
                                             "wilson_lo", "wilson_hi", "seed"};
  return cols;
}

std::string csv_header();
std::string csv_row(const ExperimentPoint& point);

/// Parses a results table; throws ParameterError naming the line on
/// malformed input.
std::vector<ExperimentPoint> read_points_csv(std::istream& in);
std::vector<ExperimentPoint> read_points_csv_file(const std::string& path);

}  // namespace hetqec

#endif  // HETQEC_MONTECARLO_HPP
