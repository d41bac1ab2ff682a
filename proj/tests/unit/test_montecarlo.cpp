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

#include "hetqec/montecarlo.hpp"

#include <cmath>
#include <sstream>

#include <gsl/gsl_randist.h>
#include <gtest/gtest.h>
#include <omp.h>

#include "hetqec/errors.hpp"

namespace hetqec {
namespace {

// Closed-form Wilson score bounds.
Interval wilson_oracle(double k, double n, double z) {
  const double ph = k / n;
  const double den = 1 + z * z / n;
  const double centre = (ph + z * z / (2 * n)) / den;
  const double half = z * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / den;
  return {centre - half, centre + half};
}

TEST(Wilson, KnownValues) {
  const auto w = wilson_interval(50, 100);
  EXPECT_NEAR(w.lo, 0.4038, 5e-5);
  EXPECT_NEAR(w.hi, 0.5962, 5e-5);
  const auto o = wilson_oracle(50, 100, 1.959963984540054);
  EXPECT_NEAR(w.lo, o.lo, 1e-12);
  EXPECT_NEAR(w.hi, o.hi, 1e-12);
  for (std::uint64_t k : {1u, 7u, 33u, 99u}) {
    const auto a = wilson_interval(k, 100, 0.99);
    const auto b = wilson_oracle(static_cast<double>(k), 100, 2.5758293035489004);
    EXPECT_NEAR(a.lo, b.lo, 1e-12);
    EXPECT_NEAR(a.hi, b.hi, 1e-12);
  }
}

TEST(Wilson, Edges) {
  EXPECT_EQ(wilson_interval(0, 100).lo, 0.0);
  EXPECT_GT(wilson_interval(0, 100).hi, 0.0);
  EXPECT_EQ(wilson_interval(100, 100).hi, 1.0);
  EXPECT_THROW(wilson_interval(1, 0), ParameterError);
  EXPECT_THROW(wilson_interval(5, 4), ParameterError);
  EXPECT_THROW(wilson_interval(1, 4, 1.0), ParameterError);
}

// 10^4 replicates of n = 1000 Bernoulli draws. The score interval is not
// conservative at every p (its exact coverage at p = 0.5, n = 1000 is
// 0.9463), so the floor is nominal minus one percentage point.
TEST(Wilson, CoverageOnSimulatedData) {
  constexpr int kReplicates = 10000;
  constexpr int kDraws = 1000;
  const double allowance = 0.01;
  for (double p : {0.01, 0.1, 0.5}) {
    CounterRng rng(static_cast<std::uint64_t>(p * 1e6));
    int covered = 0;
    for (int r = 0; r < kReplicates; ++r) {
      std::uint64_t k = 0;
      for (int i = 0; i < kDraws; ++i) k += rng.uniform() < p;
      const auto w = wilson_interval(k, kDraws);
      covered += w.lo <= p && p <= w.hi;
    }
    EXPECT_GE(static_cast<double>(covered) / kReplicates, 0.95 - allowance) << "p=" << p;

    double exact = 0.0;
    for (std::uint64_t k = 0; k <= kDraws; ++k) {
      const auto w = wilson_interval(k, kDraws);
      if (w.lo <= p && p <= w.hi) exact += gsl_ran_binomial_pdf(static_cast<unsigned>(k), p, kDraws);
    }
    EXPECT_GE(exact, 0.95 - allowance) << "p=" << p;
  }
}

struct Fixture {
  CodeInstance code;
  NoiseModel model;
};

Fixture depolarizing(int d, double p) {
  auto code = build_code(d, Deformation::kXy);
  auto model = build_noise_model(code, HomogeneousParams{p, Bias::finite(0.5)}, std::nullopt);
  return {std::move(code), std::move(model)};
}

TEST(Trials, ParallelMatchesSerialForAnyThreadCount) {
  const auto f = depolarizing(5, 0.12);
  const StreamKey key{7, 5, 3, 0};
  const Tally serial = run_trials_serial(f.code, f.model, key, 600, {});
  EXPECT_EQ(serial.trials, 600u);
  EXPECT_GT(serial.failures(), 0u);
  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 3, 8}) {
    omp_set_num_threads(threads);
    EXPECT_EQ(run_trials(f.code, f.model, key, 600, {}), serial) << threads << " threads";
  }
  omp_set_num_threads(saved);
}

TEST(Trials, StreamsDependOnKey) {
  const auto f = depolarizing(3, 0.2);
  const Tally a = run_trials(f.code, f.model, {1, 3, 0, 0}, 2000, {});
  const Tally b = run_trials(f.code, f.model, {2, 3, 0, 0}, 2000, {});
  EXPECT_NE(a, b);
  EXPECT_EQ(a, run_trials(f.code, f.model, {1, 3, 0, 0}, 2000, {}));
}

TEST(Trials, ZeroNoiseNeverFails) {
  const auto f = depolarizing(5, 0.0);
  ExperimentPoint label;
  const auto pt = run_point(f.code, f.model, label, {1, 5, 0, 0}, 500, {});
  EXPECT_EQ(pt.tally.failures(), 0u);
  EXPECT_EQ(pt.p_fail(), 0.0);
  EXPECT_EQ(pt.wilson().lo, 0.0);
  EXPECT_GT(pt.wilson().hi, 0.0);
  EXPECT_LT(pt.wilson().hi, 0.01);
  EXPECT_EQ(pt.chi, 16u);
  EXPECT_EQ(pt.d, 5);
  EXPECT_THROW(run_point(f.code, f.model, label, {1, 5, 0, 0}, 0, {}), ParameterError);
}

TEST(Trials, ExactMethodRecordsChiZero) {
  const auto f = depolarizing(3, 0.1);
  DecodeOptions opt;
  opt.method = DecodeMethod::kExact;
  const auto pt = run_point(f.code, f.model, {}, {1, 3, 0, 0}, 200, opt);
  EXPECT_EQ(pt.chi, 0u);
  EXPECT_EQ(pt.tally, run_trials(f.code, f.model, {1, 3, 0, 0}, 200, {}));
}

TEST(Trials, LargerCodeFailsLessBelowThreshold) {
  const auto f3 = depolarizing(3, 0.1);
  const auto f5 = depolarizing(5, 0.1);
  const Tally t3 = run_trials(f3.code, f3.model, {1, 3, 0, 0}, 10000, {});
  const Tally t5 = run_trials(f5.code, f5.model, {1, 5, 0, 0}, 10000, {});
  EXPECT_LT(wilson_interval(t5.failures(), t5.trials).hi, wilson_interval(t3.failures(), t3.trials).lo);
}

TEST(Trials, TallyConservation) {
  const auto f = depolarizing(3, 0.3);
  const Tally t = run_trials(f.code, f.model, {4, 3, 0, 0}, 3000, {});
  EXPECT_EQ(t.trials, 3000u);
  EXPECT_LE(t.failures(), t.trials);
  EXPECT_GT(t.fail_x, 0u);
  EXPECT_GT(t.fail_y, 0u);
  EXPECT_GT(t.fail_z, 0u);
  Tally sum;
  sum += run_trials(f.code, f.model, {4, 3, 0, 0}, 1000, {});
  sum += t;
  EXPECT_EQ(sum.trials, 4000u);
  EXPECT_EQ(sum.failures(), t.failures() + run_trials(f.code, f.model, {4, 3, 0, 0}, 1000, {}).failures());
}

ExperimentPoint with_tally(int d, std::uint64_t trials, std::uint64_t x, std::uint64_t y, std::uint64_t z) {
  ExperimentPoint p;
  p.d = d;
  p.tally = {trials, x, y, z};
  return p;
}

TEST(Ratio, IdenticalTalliesGiveOne) {
  const std::vector<ExperimentPoint> a{with_tally(5, 1000, 10, 10, 5), with_tally(7, 1000, 4, 3, 1)};
  const auto r = improvement_ratio(a, a);
  ASSERT_EQ(r.entries.size(), 2u);
  for (const auto& e : r.entries) {
    EXPECT_DOUBLE_EQ(e.ratio, 1.0);
    EXPECT_EQ(e.kind, BoundKind::kEstimate);
    EXPECT_LT(e.ci.lo, 1.0);
    EXPECT_GT(e.ci.hi, 1.0);
  }
}

TEST(Ratio, ZeroTalliesBecomeBounds) {
  const auto r = improvement_ratio({with_tally(9, 10000, 50, 50, 0)}, {with_tally(9, 1000000, 0, 0, 0)});
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].kind, BoundKind::kLowerBound);
  EXPECT_NEAR(r.entries[0].ratio, 0.01 / wilson_interval(0, 1000000).hi, 1e-9);
  const auto u = improvement_ratio({with_tally(9, 1000, 0, 0, 0)}, {with_tally(9, 1000, 1, 0, 0)});
  EXPECT_EQ(u.entries[0].kind, BoundKind::kUpperBound);
  const auto n = improvement_ratio({with_tally(9, 1000, 0, 0, 0)}, {with_tally(9, 1000, 0, 0, 0)});
  EXPECT_EQ(n.entries[0].kind, BoundKind::kUndetermined);
  EXPECT_THROW(improvement_ratio({with_tally(5, 10, 1, 0, 0)}, {with_tally(7, 10, 1, 0, 0)}), ParameterError);
}

TEST(LogicalBias, EqualClassesGiveOneHalf) {
  const auto b = logical_bias(with_tally(5, 1000, 20, 20, 20));
  EXPECT_DOUBLE_EQ(b.eta, 0.5);
  EXPECT_EQ(b.kind, BoundKind::kEstimate);
  EXPECT_LT(b.ci.lo, 0.5);
  EXPECT_GT(b.ci.hi, 0.5);
}

TEST(LogicalBias, ZeroDenominatorIsFlagged) {
  const auto b = logical_bias(with_tally(5, 1000, 0, 0, 12));
  EXPECT_EQ(b.kind, BoundKind::kLowerBound);
  EXPECT_TRUE(std::isinf(b.ci.hi));
  EXPECT_GT(b.eta, 0.0);
  EXPECT_EQ(logical_bias(with_tally(5, 1000, 0, 0, 0)).kind, BoundKind::kUndetermined);
}

TEST(Csv, RowsRoundTrip) {
  ExperimentPoint p;
  p.regime = "B";
  p.placement = "BulkNoisy";
  p.d = 7;
  p.eta_low = "10";
  p.eta_high = "inf";
  p.p_quiet = p.p_noisy = p.p = 0.31;
  p.chi = 16;
  p.seed = 99;
  p.tally = {1234, 5, 6, 7};
  std::istringstream in(csv_header() + "\n" + csv_row(p) + "\n" + csv_row(p) + "\n");
  const auto rows = read_points_csv(in);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(csv_row(rows[1]), csv_row(p));
  EXPECT_EQ(rows[0].tally, p.tally);
  EXPECT_EQ(rows[0].eta_high, "inf");
  const auto header = csv_header();
  EXPECT_EQ(header, "regime,placement,deformation,d,eta_low,eta_high,p_quiet,p_noisy,p,chi,trials,fail_x,fail_y,"
                    "fail_z,p_fail,wilson_lo,wilson_hi,seed");
}

TEST(Csv, MalformedInputReportsLine) {
  ExperimentPoint p;
  p.regime = "homogeneous";
  p.placement = "none";
  p.d = 3;
  p.eta_low = p.eta_high = "0.5";
  p.p = 0.1;
  p.tally = {10, 1, 0, 0};
  const std::string good = csv_header() + "\n" + csv_row(p) + "\n";
  const auto message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_points_csv(in);
    } catch (const ParameterError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message(good + "homogeneous,none,XY,3\n").find("line 3"), std::string::npos);
  std::string bad_number = csv_row(p);
  bad_number.replace(bad_number.find(",10,"), 4, ",ten,");
  EXPECT_NE(message(good + bad_number).find("line 3"), std::string::npos);
  EXPECT_NE(message("regime,d\nA,3\n").find("missing column"), std::string::npos);
  EXPECT_NE(message("").find("empty"), std::string::npos);
}

}  // namespace
}  // namespace hetqec
