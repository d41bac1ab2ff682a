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

#ifndef HETQEC_THRESHOLD_HPP
#define HETQEC_THRESHOLD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetqec/montecarlo.hpp"

namespace hetqec {

/// One (d, p) sample. p_fail may be any value in [0, 1], which lets
/// noiseless synthetic curves be fitted; sigma is derived from the Wilson
/// half-width at `trials`.
struct FitPoint {
  int d = 0;
  double p = 0.0;
  double p_fail = 0.0;
  std::uint64_t trials = 0;
};

FitPoint to_fit_point(const ExperimentPoint& point);
std::vector<FitPoint> to_fit_points(const std::vector<ExperimentPoint>& points);

/// Standard deviation implied by the 95% Wilson half-width.
double fit_sigma(const FitPoint& point);

struct Crossing {
  int d1 = 0;
  int d2 = 0;
  double p = 0.0;
};

/// Linear-interpolated crossings of every pair of distance curves over
/// their common p values.
std::vector<Crossing> crossing_scan(const std::vector<FitPoint>& points);

struct FitOptions {
  /// Polynomial order of the scaling ansatz, 2 or 3.
  int order = 2;
  /// Points with |p - p_c| <= window * p_c enter the fit.
  double window = 0.30;
  int bootstrap_resamples = 200;
  std::uint64_t bootstrap_seed = 20240601;
  std::vector<double> nu_starts{0.8, 1.0, 1.5, 2.0};
};

struct FitResult {
  double p_th = 0.0;
  double nu = 0.0;
  /// A, B, C (and D for order 3).
  std::vector<double> coefficients;
  double stderr_p_th = 0.0;
  double residual_norm = 0.0;
  std::size_t n_points = 0;
  bool converged = false;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double crossing_estimate = 0.0;
};

/// No pair of curves crosses inside the sampled range.
class NoCrossing : public std::runtime_error {
 public:
  /// above: the threshold lies above the range (larger codes do better
  /// everywhere), so `bound` is a lower bound on p_th.
  NoCrossing(bool above, double bound);
  bool above() const { return above_; }
  double bound() const { return bound_; }
  /// "> 0.4" or "< 0.1".
  std::string bound_text() const;

 private:
  bool above_;
  double bound_;
};

class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite-size scaling fit of p_fail = sum_k c_k x^k, x = (p - p_th) d^(1/nu).
FitResult fit_threshold(const std::vector<FitPoint>& points, const FitOptions& options = {});
FitResult fit_threshold(const std::vector<ExperimentPoint>& points, const FitOptions& options = {});

}  // namespace hetqec

#endif  // HETQEC_THRESHOLD_HPP
