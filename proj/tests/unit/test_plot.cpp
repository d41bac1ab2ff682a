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

#include "hetqec/plot.hpp"

#include <gtest/gtest.h>

#include "hetqec/errors.hpp"

namespace hetqec {
namespace {

ExperimentPoint point(const std::string& placement, int d, double p, std::uint64_t trials, std::uint64_t x,
                      std::uint64_t y, std::uint64_t z, const std::string& eta = "100") {
  ExperimentPoint pt;
  pt.regime = "A";
  pt.placement = placement;
  pt.d = d;
  pt.eta_low = pt.eta_high = eta;
  pt.p_noisy = pt.p = p;
  pt.p_quiet = p / 10;
  pt.chi = 16;
  pt.seed = 1;
  pt.tally = {trials, x, y, z};
  return pt;
}

std::vector<ExperimentPoint> sample_points() {
  std::vector<ExperimentPoint> pts;
  for (int d : {5, 7, 9}) {
    for (double p : {0.2, 0.3}) {
      pts.push_back(point("BoundaryNoisy", d, p, 10000, 300 / d, 280 / d, d == 9 ? 0 : 1));
      pts.push_back(point("BulkNoisy", d, p, 100000, 40 / d, 30 / d, 0));
    }
  }
  return pts;
}

TEST(Plot, FailureCurvesPerDistance) {
  const auto spec = build_plot(sample_points(), PlotKind::kFailureVsP);
  EXPECT_EQ(spec.series.size(), 6u);
  EXPECT_TRUE(spec.log_y);
  for (const auto& s : spec.series) {
    EXPECT_EQ(s.points.size(), 2u);
    for (const auto& p : s.points) {
      EXPECT_LE(p.lo, p.y);
      EXPECT_GE(p.hi, p.y);
    }
  }
}

TEST(Plot, RatioPairsPlacements) {
  const auto spec = build_plot(sample_points(), PlotKind::kRatioVsD);
  ASSERT_EQ(spec.series.size(), 2u);
  EXPECT_EQ(spec.series[0].points.size(), 3u);
}

TEST(Plot, DisaggregatedClassesMarkZeroCountsAsBounds) {
  std::vector<ExperimentPoint> pts;
  for (const auto& p : sample_points()) {
    if (p.placement == "BoundaryNoisy" && p.p == 0.2) pts.push_back(p);
  }
  const auto spec = build_plot(pts, PlotKind::kDisaggregated);
  ASSERT_EQ(spec.series.size(), 3u);
  bool bound = false;
  for (const auto& s : spec.series) {
    for (const auto& p : s.points) bound = bound || p.bound;
  }
  EXPECT_TRUE(bound);
}

TEST(Plot, SvgIsDeterministicAndTagged) {
  auto spec = build_plot(sample_points(), PlotKind::kFailureVsP);
  spec.tag = "csv 0123456789abcdef";
  const std::string a = render_svg(spec);
  EXPECT_EQ(a, render_svg(spec));
  EXPECT_EQ(a.rfind("<svg", 0), 0u);
  EXPECT_NE(a.find("csv 0123456789abcdef"), std::string::npos);
  EXPECT_NE(a.find("</svg>"), std::string::npos);
}

TEST(Plot, Errors) {
  EXPECT_THROW(build_plot({}, PlotKind::kFailureVsP), ParameterError);
  EXPECT_THROW(parse_plot_kind("pie"), ParameterError);
  EXPECT_EQ(parse_plot_kind("ratio-vs-d"), PlotKind::kRatioVsD);
  EXPECT_EQ(to_string(PlotKind::kDisaggregated), "disaggregated");
}

TEST(Plot, ContentHash) {
  EXPECT_EQ(content_hash("abc"), content_hash("abc"));
  EXPECT_NE(content_hash("abc"), content_hash("abd"));
  EXPECT_EQ(content_hash("").size(), 16u);
}

}  // namespace
}  // namespace hetqec
