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

#include "hetqec/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include <Eigen/Dense>
#include <fmt/format.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_randist.h>
#include <gsl/gsl_rng.h>

#include "hetqec/errors.hpp"
#include "hetqec/rng.hpp"

namespace hetqec {

namespace {

constexpr double kZ95 = 1.959963984540054;

struct Sample {
  double d;
  double p;
  double y;
  double w;
};

/// Weighted least squares of y on the polynomial basis for fixed (p_th, nu).
struct Projection {
  double chi2 = std::numeric_limits<double>::infinity();
  Eigen::VectorXd coef;
  bool full_rank = false;
};

Projection project(const std::vector<Sample>& s, int order, double p_th, double nu) {
  Projection out;
  if (!(nu > 0.0) || !std::isfinite(p_th)) return out;
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd a(n, order + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = (s[i].p - p_th) * std::pow(s[i].d, 1.0 / nu);
    const double sw = std::sqrt(s[i].w);
    double xk = 1.0;
    for (int k = 0; k <= order; ++k) {
      a(i, k) = sw * xk;
      xk *= x;
    }
    b(i) = sw * s[i].y;
  }
  if (!a.allFinite()) return out;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  out.full_rank = qr.rank() == order + 1;
  out.coef = qr.solve(b);
  out.chi2 = (a * out.coef - b).squaredNorm();
  return out;
}

struct Objective {
  const std::vector<Sample>* samples;
  int order;
  double p_scale;
};

double objective_fn(const gsl_vector* v, void* params) {
  const auto* o = static_cast<const Objective*>(params);
  const double p_th = gsl_vector_get(v, 0) * o->p_scale;
  const double nu = std::exp(gsl_vector_get(v, 1));
  const double chi2 = project(*o->samples, o->order, p_th, nu).chi2;
  return std::isfinite(chi2) ? chi2 : 1e300;
}

struct Minimum {
  double p_th = 0.0;
  double nu = 0.0;
  double chi2 = std::numeric_limits<double>::infinity();
  double size = std::numeric_limits<double>::infinity();
};

Minimum simplex(const std::vector<Sample>& samples, int order, double p_scale, double p0, double nu0, double step_p) {
  Objective obj{&samples, order, p_scale};
  gsl_multimin_function f{&objective_fn, 2, &obj};
  gsl_vector* x = gsl_vector_alloc(2);
  gsl_vector* step = gsl_vector_alloc(2);
  gsl_vector_set(x, 0, p0 / p_scale);
  gsl_vector_set(x, 1, std::log(nu0));
  gsl_vector_set(step, 0, step_p / p_scale);
  gsl_vector_set(step, 1, 0.3);
  gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
  gsl_multimin_fminimizer_set(m, &f, x, step);
  Minimum best;
  // Restart once from the optimum so a collapsed simplex cannot stall early.
  for (int round = 0; round < 2; ++round) {
    for (int it = 0; it < 20000; ++it) {
      if (gsl_multimin_fminimizer_iterate(m) != GSL_SUCCESS) break;
      if (gsl_multimin_fminimizer_size(m) < 1e-12) break;
    }
    if (round == 0) {
      gsl_vector_memcpy(x, gsl_multimin_fminimizer_x(m));
      gsl_vector_set(step, 0, 0.01 * step_p / p_scale);
      gsl_vector_set(step, 1, 0.01);
      gsl_multimin_fminimizer_set(m, &f, x, step);
    }
  }
  best.p_th = gsl_vector_get(gsl_multimin_fminimizer_x(m), 0) * p_scale;
  best.nu = std::exp(gsl_vector_get(gsl_multimin_fminimizer_x(m), 1));
  best.chi2 = gsl_multimin_fminimizer_minimum(m);
  best.size = gsl_multimin_fminimizer_size(m);
  gsl_multimin_fminimizer_free(m);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return best;
}

double wilson_half_width(double phat, double n) {
  const double z2 = kZ95 * kZ95;
  return kZ95 / (n + z2) * std::sqrt(n * phat * (1.0 - phat) + z2 / 4.0);
}

std::vector<FitPoint> merge(const std::vector<FitPoint>& points) {
  std::map<std::pair<int, double>, std::pair<double, std::uint64_t>> acc;
  for (const auto& p : points) {
    if (p.trials == 0) throw ParameterError(fmt::format("fit point d={} p={} has no trials", p.d, p.p));
    if (!std::isfinite(p.p_fail) || p.p_fail < 0.0 || p.p_fail > 1.0) {
      throw ParameterError(fmt::format("fit point d={} p={} has invalid p_fail {}", p.d, p.p, p.p_fail));
    }
    auto& a = acc[{p.d, p.p}];
    a.first += p.p_fail * static_cast<double>(p.trials);
    a.second += p.trials;
  }
  std::vector<FitPoint> out;
  for (const auto& [key, a] : acc) {
    out.push_back(FitPoint{key.first, key.second, a.first / static_cast<double>(a.second), a.second});
  }
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct CoreFit {
  Minimum best;
  Projection proj;
};

CoreFit fit_core(const std::vector<Sample>& samples, int order, const std::vector<double>& p_starts,
                 const std::vector<double>& nu_starts, double p_scale, double step_p) {
  CoreFit out;
  for (double p0 : p_starts) {
    for (double nu0 : nu_starts) {
      const Minimum m = simplex(samples, order, p_scale, p0, nu0, step_p);
      if (m.chi2 < out.best.chi2) out.best = m;
    }
  }
  out.proj = project(samples, order, out.best.p_th, out.best.nu);
  return out;
}

}  // namespace

FitPoint to_fit_point(const ExperimentPoint& point) {
  return FitPoint{point.d, point.p, point.p_fail(), point.tally.trials};
}

std::vector<FitPoint> to_fit_points(const std::vector<ExperimentPoint>& points) {
  std::vector<FitPoint> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(to_fit_point(p));
  return out;
}

double fit_sigma(const FitPoint& point) {
  return wilson_half_width(point.p_fail, static_cast<double>(point.trials)) / kZ95;
}

std::vector<Crossing> crossing_scan(const std::vector<FitPoint>& points) {
  std::map<int, std::map<double, double>> curves;
  for (const auto& p : merge(points)) curves[p.d][p.p] = p.p_fail;
  std::vector<Crossing> out;
  for (auto i = curves.begin(); i != curves.end(); ++i) {
    for (auto j = std::next(i); j != curves.end(); ++j) {
      std::vector<std::pair<double, double>> diff;  // (p, f_large - f_small)
      for (const auto& [p, f] : i->second) {
        auto it = j->second.find(p);
        if (it != j->second.end()) diff.emplace_back(p, it->second - f);
      }
      for (std::size_t k = 0; k < diff.size(); ++k) {
        const auto [p0, g0] = diff[k];
        if (g0 == 0.0) {
          // A touching point counts only where the order actually reverses.
          const bool before = k > 0 && diff[k - 1].second != 0.0;
          const bool after = k + 1 < diff.size() && diff[k + 1].second != 0.0;
          if (before && after && (diff[k - 1].second < 0) != (diff[k + 1].second < 0)) {
            out.push_back({i->first, j->first, p0});
          }
          continue;
        }
        if (k + 1 < diff.size()) {
          const auto [p1, g1] = diff[k + 1];
          if (g1 != 0.0 && (g0 < 0) != (g1 < 0)) out.push_back({i->first, j->first, p0 + (p1 - p0) * g0 / (g0 - g1)});
        }
      }
    }
  }
  return out;
}

NoCrossing::NoCrossing(bool above, double bound)
    : std::runtime_error(fmt::format("no crossing in the sampled range; threshold {} {}", above ? ">" : "<", bound)),
      above_(above),
      bound_(bound) {}

std::string NoCrossing::bound_text() const { return fmt::format("{} {}", above_ ? ">" : "<", bound_); }

FitResult fit_threshold(const std::vector<FitPoint>& raw, const FitOptions& options) {
  if (options.order != 2 && options.order != 3) throw ParameterError("ansatz order must be 2 or 3");
  if (!(options.window > 0.0)) throw ParameterError("fit window must be positive");
  const std::vector<FitPoint> points = merge(raw);
  std::set<int> ds;
  for (const auto& p : points) ds.insert(p.d);
  if (ds.size() < 2) throw DegenerateFit("threshold fit needs at least two distances");

  const std::vector<Crossing> crossings = crossing_scan(points);
  if (crossings.empty()) {
    // Compare the largest and smallest distance where both were sampled.
    const int dmin = *ds.begin(), dmax = *ds.rbegin();
    std::map<double, double> small, large;
    for (const auto& p : points) {
      if (p.d == dmin) small[p.p] = p.p_fail;
      if (p.d == dmax) large[p.p] = p.p_fail;
    }
    double below = 0, above = 0, pmin = 1, pmax = 0;
    for (const auto& [p, f] : small) {
      auto it = large.find(p);
      if (it == large.end()) continue;
      (it->second <= f ? below : above) += 1;
      pmin = std::min(pmin, p);
      pmax = std::max(pmax, p);
    }
    if (below + above == 0) throw DegenerateFit("distance curves share no p values");
    if (below >= above) throw NoCrossing(true, pmax);
    throw NoCrossing(false, pmin);
  }
  std::vector<double> cps;
  for (const auto& c : crossings) cps.push_back(c.p);
  const double pc = median(cps);

  FitResult result;
  result.crossing_estimate = pc;
  result.window_lo = pc * (1.0 - options.window);
  result.window_hi = pc * (1.0 + options.window);
  std::vector<FitPoint> used;
  for (const auto& p : points) {
    if (p.p >= result.window_lo && p.p <= result.window_hi) used.push_back(p);
  }
  std::set<int> used_d;
  std::set<double> used_p;
  for (const auto& p : used) {
    used_d.insert(p.d);
    used_p.insert(p.p);
  }
  const std::size_t nparams = static_cast<std::size_t>(options.order) + 3;
  if (used_d.size() < 2 || used_p.size() < 3 || used.size() <= nparams) {
    throw DegenerateFit(fmt::format("fit window [{:.4g}, {:.4g}] holds {} points over {} distances and {} p values",
                                    result.window_lo, result.window_hi, used.size(), used_d.size(), used_p.size()));
  }

  std::vector<Sample> samples;
  for (const auto& p : used) {
    const double sigma = fit_sigma(p);
    if (!(sigma > 0.0)) throw DegenerateFit("zero uncertainty on a fit point");
    samples.push_back({static_cast<double>(p.d), p.p, p.p_fail, 1.0 / (sigma * sigma)});
  }
  const double p_scale = result.window_hi - result.window_lo;
  const double step_p = 0.1 * p_scale;

  std::vector<double> p_starts(cps.begin(), cps.end());
  p_starts.push_back(pc);
  std::sort(p_starts.begin(), p_starts.end());
  p_starts.erase(std::unique(p_starts.begin(), p_starts.end()), p_starts.end());

  const CoreFit core = fit_core(samples, options.order, p_starts, options.nu_starts, p_scale, step_p);
  if (!core.proj.full_rank) throw DegenerateFit("scaling fit is rank deficient at the optimum");
  if (!(core.best.p_th > 0.0 && core.best.p_th < 1.0)) {
    throw DegenerateFit(fmt::format("fitted threshold {} lies outside (0, 1)", core.best.p_th));
  }
  result.p_th = core.best.p_th;
  result.nu = core.best.nu;
  result.coefficients.assign(core.proj.coef.data(), core.proj.coef.data() + core.proj.coef.size());
  result.residual_norm = std::sqrt(core.best.chi2);
  result.n_points = samples.size();
  result.converged = core.best.size < 1e-8;

  const int nb = options.bootstrap_resamples;
  if (nb > 1) {
    std::vector<double> boot(static_cast<std::size_t>(nb), std::numeric_limits<double>::quiet_NaN());
#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < nb; ++b) {
      gsl_rng* rng = gsl_rng_alloc(gsl_rng_mt19937);
      gsl_rng_set(rng, static_cast<unsigned long>(fold_key(mix64(options.bootstrap_seed), static_cast<std::uint64_t>(b))));
      std::vector<Sample> rs = samples;
      bool ok = true;
      for (std::size_t i = 0; i < rs.size(); ++i) {
        const FitPoint& fp = used[i];
        const auto n = static_cast<unsigned int>(std::min<std::uint64_t>(fp.trials, std::numeric_limits<unsigned int>::max()));
        const unsigned int k = gsl_ran_binomial(rng, fp.p_fail, n);
        FitPoint bp{fp.d, fp.p, static_cast<double>(k) / n, n};
        const double sigma = fit_sigma(bp);
        if (!(sigma > 0.0)) ok = false;
        rs[i].y = bp.p_fail;
        rs[i].w = 1.0 / (sigma * sigma);
      }
      gsl_rng_free(rng);
      if (!ok) continue;
      const CoreFit f = fit_core(rs, options.order, {result.p_th}, {result.nu}, p_scale, step_p);
      if (f.proj.full_rank && f.best.p_th > 0.0 && f.best.p_th < 1.0) boot[static_cast<std::size_t>(b)] = f.best.p_th;
    }
    double sum = 0, sum2 = 0;
    int count = 0;
    for (double v : boot) {
      if (!std::isfinite(v)) continue;
      sum += v;
      sum2 += v * v;
      ++count;
    }
    if (count > 1) {
      const double mean = sum / count;
      result.stderr_p_th = std::sqrt(std::max(0.0, (sum2 - count * mean * mean) / (count - 1)));
    }
  }
  return result;
}

FitResult fit_threshold(const std::vector<ExperimentPoint>& points, const FitOptions& options) {
  return fit_threshold(to_fit_points(points), options);
}

}  // namespace hetqec
