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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <gsl/gsl_cdf.h>

#include "hetqec/errors.hpp"
#include "hetqec/rng.hpp"

namespace hetqec {

namespace {

double z_quantile(double conf) {
  if (!(conf > 0.0 && conf < 1.0)) throw ParameterError("confidence level must lie in (0, 1)");
  return gsl_cdf_ugaussian_Pinv(1.0 - (1.0 - conf) / 2.0);
}

struct TrialRunner {
  const CodeInstance& code;
  const NoiseModel& model;
  const StreamKey& key;
  const DecodeOptions& options;
  Decoder decoder;
  PauliOp zero_correction;

  TrialRunner(const CodeInstance& c, const NoiseModel& m, const StreamKey& k, const DecodeOptions& o)
      : code(c), model(m), key(k), options(o), decoder(c, m) {
    zero_correction = decoder.decode(Syndrome(code.num_stabilizers(), 0), options).op;
  }

  void run(std::uint64_t t, Tally& tally) const {
    CounterRng rng(trial_stream_key(key.seed, key.d, key.p_index, key.placement, t));
    const PauliOp e = sample_error(model, rng);
    const Syndrome s = syndrome(code, e);
    const bool quiet = std::all_of(s.begin(), s.end(), [](std::uint8_t b) { return b == 0; });
    const PauliOp residual = quiet ? e * zero_correction : e * decoder.decode(s, options).op;
    ++tally.trials;
    switch (logical_class(code, residual)) {
      case Letter::X: ++tally.fail_x; break;
      case Letter::Y: ++tally.fail_y; break;
      case Letter::Z: ++tally.fail_z; break;
      case Letter::I: break;
    }
  }
};

std::string fmt_double(double v) { return fmt::format("{}", v); }

}  // namespace

Interval wilson_interval(std::uint64_t k, std::uint64_t n, double conf) {
  if (n == 0) throw ParameterError("wilson_interval needs n >= 1");
  if (k > n) throw ParameterError(fmt::format("wilson_interval: k = {} exceeds n = {}", k, n));
  const double z = z_quantile(conf);
  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  const double z2 = z * z;
  const double centre = (kk + z2 / 2.0) / (nn + z2);
  const double half = z / (nn + z2) * std::sqrt(kk * (nn - kk) / nn + z2 / 4.0);
  Interval iv{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (k == 0) iv.lo = 0.0;
  if (k == n) iv.hi = 1.0;
  return iv;
}

Tally& Tally::operator+=(const Tally& o) {
  trials += o.trials;
  fail_x += o.fail_x;
  fail_y += o.fail_y;
  fail_z += o.fail_z;
  return *this;
}

Tally run_trials(const CodeInstance& code, const NoiseModel& model, const StreamKey& key, std::uint64_t trials,
                 const DecodeOptions& options) {
  const TrialRunner runner(code, model, key, options);
  Tally total;
  std::uint64_t first_bad = std::numeric_limits<std::uint64_t>::max();
  std::string message;
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel
  {
    Tally local;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t t = 0; t < count; ++t) {
      try {
        runner.run(static_cast<std::uint64_t>(t), local);
      } catch (const std::exception& ex) {
#pragma omp critical(hetqec_trial_error)
        if (static_cast<std::uint64_t>(t) < first_bad) {
          first_bad = static_cast<std::uint64_t>(t);
          message = ex.what();
        }
      }
    }
#pragma omp critical(hetqec_tally_merge)
    total += local;
  }
  if (first_bad != std::numeric_limits<std::uint64_t>::max()) throw TrialError(first_bad, message);
  return total;
}

Tally run_trials_serial(const CodeInstance& code, const NoiseModel& model, const StreamKey& key,
                        std::uint64_t trials, const DecodeOptions& options) {
  const TrialRunner runner(code, model, key, options);
  Tally total;
  for (std::uint64_t t = 0; t < trials; ++t) {
    try {
      runner.run(t, total);
    } catch (const std::exception& ex) {
      throw TrialError(t, ex.what());
    }
  }
  return total;
}

double ExperimentPoint::p_fail() const {
  return tally.trials == 0 ? 0.0 : static_cast<double>(tally.failures()) / static_cast<double>(tally.trials);
}

ExperimentPoint run_point(const CodeInstance& code, const NoiseModel& model, const ExperimentPoint& label,
                          const StreamKey& key, std::uint64_t trials, const DecodeOptions& options) {
  if (trials < 1) throw ParameterError("run_point needs trials >= 1");
  ExperimentPoint out = label;
  out.d = code.distance();
  out.deformation = code.deformation();
  out.seed = key.seed;
  out.chi = options.method == DecodeMethod::kTn ? options.chi : 0;
  out.tally = run_trials(code, model, key, trials, options);
  return out;
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kEstimate: return "estimate";
    case BoundKind::kLowerBound: return "lower_bound";
    case BoundKind::kUpperBound: return "upper_bound";
    case BoundKind::kUndetermined: return "undetermined";
  }
  return "estimate";
}

RatioSeries improvement_ratio(const std::vector<ExperimentPoint>& boundary, const std::vector<ExperimentPoint>& bulk,
                              double conf) {
  std::map<int, const ExperimentPoint*> num, den;
  for (const auto& p : boundary) num[p.d] = &p;
  for (const auto& p : bulk) den[p.d] = &p;
  if (num.size() != boundary.size() || den.size() != bulk.size()) {
    throw ParameterError("improvement_ratio: duplicate distance in a series");
  }
  std::vector<int> dn, dd;
  for (auto& [d, _] : num) dn.push_back(d);
  for (auto& [d, _] : den) dd.push_back(d);
  if (dn != dd) throw ParameterError("improvement_ratio: the two series cover different distances");

  const double z = z_quantile(conf);
  RatioSeries out;
  for (int d : dn) {
    const ExperimentPoint& a = *num[d];
    const ExperimentPoint& b = *den[d];
    RatioEntry e;
    e.d = d;
    const std::uint64_t ka = a.tally.failures(), kb = b.tally.failures();
    const double pa = a.p_fail(), pb = b.p_fail();
    if (ka > 0 && kb > 0) {
      e.ratio = pa / pb;
      const double var = (1.0 - pa) / static_cast<double>(ka) + (1.0 - pb) / static_cast<double>(kb);
      const double half = z * std::sqrt(var);
      e.ci = {e.ratio * std::exp(-half), e.ratio * std::exp(half)};
    } else if (ka > 0) {
      e.kind = BoundKind::kLowerBound;
      e.ratio = pa / b.wilson(conf).hi;
      e.ci = {e.ratio, std::numeric_limits<double>::infinity()};
    } else if (kb > 0) {
      e.kind = BoundKind::kUpperBound;
      e.ratio = a.wilson(conf).hi / pb;
      e.ci = {0.0, e.ratio};
    } else {
      e.kind = BoundKind::kUndetermined;
      e.ratio = std::numeric_limits<double>::quiet_NaN();
      e.ci = {0.0, std::numeric_limits<double>::infinity()};
    }
    out.entries.push_back(e);
  }
  return out;
}

LogicalBias logical_bias(const ExperimentPoint& point, double conf) {
  const std::uint64_t fz = point.tally.fail_z, fxy = point.tally.fail_x + point.tally.fail_y;
  LogicalBias out;
  if (fz + fxy == 0) {
    out.kind = BoundKind::kUndetermined;
    out.eta = std::numeric_limits<double>::quiet_NaN();
    out.ci = {0.0, std::numeric_limits<double>::infinity()};
    return out;
  }
  const Interval theta = wilson_interval(fz, fz + fxy, conf);
  auto odds = [](double t) { return t >= 1.0 ? std::numeric_limits<double>::infinity() : t / (1.0 - t); };
  out.ci = {odds(theta.lo), odds(theta.hi)};
  if (fxy == 0) {
    out.kind = BoundKind::kLowerBound;
    out.eta = out.ci.lo;
  } else {
    out.eta = static_cast<double>(fz) / static_cast<double>(fxy);
  }
  return out;
}

std::string csv_header() {
  std::string h;
  for (const auto& c : csv_columns()) h += (h.empty() ? "" : ",") + c;
  return h;
}

std::string csv_row(const ExperimentPoint& p) {
  const Interval w = p.wilson();
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", p.regime, p.placement,
                     to_string(p.deformation), p.d, p.eta_low, p.eta_high, fmt_double(p.p_quiet),
                     fmt_double(p.p_noisy), fmt_double(p.p), p.chi, p.tally.trials, p.tally.fail_x, p.tally.fail_y,
                     p.tally.fail_z, fmt_double(p.p_fail()), fmt_double(w.lo), fmt_double(w.hi), p.seed);
}

std::vector<ExperimentPoint> read_points_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t> col;
  std::vector<ExperimentPoint> out;
  auto split = [](const std::string& s) {
    std::vector<std::string> f;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (!s.empty() && s.back() == ',') f.emplace_back();
    return f;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line);
    if (col.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i) col[fields[i]] = i;
      for (const auto& c : csv_columns()) {
        if (col.find(c) == col.end()) throw ParameterError(fmt::format("line {}: missing column '{}'", line_no, c));
      }
      continue;
    }
    if (fields.size() != col.size()) {
      throw ParameterError(fmt::format("line {}: expected {} fields, found {}", line_no, col.size(), fields.size()));
    }
    auto field = [&](const char* name) -> const std::string& { return fields[col.at(name)]; };
    auto num = [&](const char* name) {
      const std::string& s = field(name);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParameterError(fmt::format("line {}: column '{}' is not a number: '{}'", line_no, name, s));
      }
      return v;
    };
    auto count = [&](const char* name) {
      const std::string& s = field(name);
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParameterError(fmt::format("line {}: column '{}' is not a non-negative integer: '{}'", line_no, name, s));
      }
      return v;
    };
    ExperimentPoint p;
    p.regime = field("regime");
    p.placement = field("placement");
    try {
      p.deformation = parse_deformation(field("deformation"));
    } catch (const std::exception& ex) {
      throw ParameterError(fmt::format("line {}: {}", line_no, ex.what()));
    }
    p.d = static_cast<int>(count("d"));
    p.eta_low = field("eta_low");
    p.eta_high = field("eta_high");
    p.p_quiet = num("p_quiet");
    p.p_noisy = num("p_noisy");
    p.p = num("p");
    p.chi = count("chi");
    p.tally.trials = count("trials");
    p.tally.fail_x = count("fail_x");
    p.tally.fail_y = count("fail_y");
    p.tally.fail_z = count("fail_z");
    p.seed = count("seed");
    if (p.tally.trials == 0 || p.tally.failures() > p.tally.trials) {
      throw ParameterError(fmt::format("line {}: inconsistent tallies", line_no));
    }
    out.push_back(std::move(p));
  }
  if (col.empty()) throw ParameterError("empty CSV: no header line");
  return out;
}

std::vector<ExperimentPoint> read_points_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open CSV '" + path + "'");
  return read_points_csv(in);
}

}  // namespace hetqec
