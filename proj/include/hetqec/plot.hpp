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

#ifndef HETQEC_PLOT_HPP
#define HETQEC_PLOT_HPP

#include <string>
#include <vector>

#include "hetqec/montecarlo.hpp"

namespace hetqec {

enum class PlotKind { kFailureVsP, kRatioVsD, kDisaggregated };

PlotKind parse_plot_kind(const std::string& text);
std::string to_string(PlotKind kind);

struct PlotSeries {
  std::string name;
  struct Point {
    double x = 0.0;
    double y = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    /// Drawn hollow: y is a bound, not an estimate.
    bool bound = false;
  };
  std::vector<Point> points;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = true;
  std::string tag;
  std::vector<PlotSeries> series;
};

/// Deterministic SVG text.
std::string render_svg(const PlotSpec& spec);

/// Builds the figure of the given kind from results rows. Throws
/// ParameterError when the selection yields nothing to draw.
PlotSpec build_plot(const std::vector<ExperimentPoint>& points, PlotKind kind);

/// Short stable hash of a byte string, as 16 hex digits.
std::string content_hash(const std::string& bytes);

}  // namespace hetqec

#endif  // HETQEC_PLOT_HPP
