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

#include "hetqec/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "hetqec/errors.hpp"
#include "hetqec/rng.hpp"

namespace hetqec {

namespace {

std::uint64_t placement_stream_index(std::optional<PlacementStrategy> s) {
  return s ? static_cast<std::uint64_t>(*s) + 1 : 0;
}

std::string describe_point(const ExperimentPoint& p) {
  return fmt::format("regime={} placement={} d={} eta_low={} eta_high={} p={} chi={}", p.regime, p.placement, p.d,
                     p.eta_low, p.eta_high, p.p, p.chi);
}

class PointRunner {
 public:
  explicit PointRunner(const ExperimentConfig& config) : config_(config) {}

  ExperimentPoint run(const PlannedPoint& plan) {
    auto it = codes_.find(plan.label.d);
    if (it == codes_.end()) it = codes_.emplace(plan.label.d, build_code(plan.label.d, config_.deformation)).first;
    const CodeInstance& code = it->second;
    const NoiseModel model = build_noise_model(code, plan.regime, plan.placement);
    DecodeOptions options;
    options.method = config_.method;
    options.chi = config_.chi;
    return run_point(code, model, plan.label, plan.key, plan.trials, options);
  }

 private:
  const ExperimentConfig& config_;
  std::map<int, CodeInstance> codes_;
};

SweepResult execute(const ExperimentConfig& config, const std::set<std::string>& done,
                    const std::vector<ExperimentPoint>& existing, const SweepOptions& options,
                    const std::function<void(const ExperimentPoint&)>& sink) {
  SweepResult result;
  std::map<std::string, const ExperimentPoint*> by_id;
  for (const auto& p : existing) by_id[point_identity(p)] = &p;
  const auto plan = plan_sweep(config);
  PointRunner runner(config);
  std::size_t index = 0;
  for (const auto& pp : plan) {
    ++index;
    const std::string id = point_identity(pp.label);
    if (done.count(id)) {
      result.points.push_back(*by_id.at(id));
      ++result.resumed;
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      ExperimentPoint point = runner.run(pp);
      if (sink) sink(point);
      if (options.on_point) options.on_point(point);
      if (options.log_progress) {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        fmt::print(stderr, "[{}/{}] {} trials={} failures={} p_fail={:.4g} ({:.1f}s)\n", index, plan.size(),
                   describe_point(point), point.tally.trials, point.tally.failures(), point.p_fail(), secs);
      }
      result.points.push_back(std::move(point));
    } catch (const TrialError& ex) {
      result.failures.push_back({describe_point(pp.label), ex.trial(), ex.what()});
      if (options.log_progress) fmt::print(stderr, "[{}/{}] FAILED {}: {}\n", index, plan.size(), describe_point(pp.label), ex.what());
    } catch (const std::exception& ex) {
      result.failures.push_back({describe_point(pp.label), std::nullopt, ex.what()});
      if (options.log_progress) fmt::print(stderr, "[{}/{}] FAILED {}: {}\n", index, plan.size(), describe_point(pp.label), ex.what());
    }
  }
  return result;
}

}  // namespace

std::string point_identity(const ExperimentPoint& p) {
  return fmt::format("{}|{}|{}|{}|{}|{}|{}|{}|{}|{}", p.regime, p.placement, to_string(p.deformation), p.d, p.eta_low,
                     p.eta_high, p.p, p.chi, p.seed, p.tally.trials);
}

std::vector<PlannedPoint> plan_sweep(const ExperimentConfig& config) {
  std::vector<PlannedPoint> out;
  const std::size_t chi = config.method == DecodeMethod::kTn ? config.chi : 0;
  auto add = [&](std::optional<PlacementStrategy> placement, const std::string& eta_low, const std::string& eta_high,
                 auto make_regime) {
    for (int d : config.distances) {
      for (std::size_t pi = 0; pi < config.p_values.size(); ++pi) {
        const double p = config.p_values[pi];
        PlannedPoint pp;
        pp.label.regime = to_string(config.regime);
        pp.label.placement = placement ? to_string(*placement) : "none";
        pp.label.deformation = config.deformation;
        pp.label.d = d;
        pp.label.eta_low = eta_low;
        pp.label.eta_high = eta_high;
        pp.label.p = p;
        pp.label.chi = chi;
        pp.label.seed = config.seed;
        pp.trials = config.trials_for(d, placement, p);
        pp.label.tally.trials = pp.trials;
        pp.key = StreamKey{config.seed, static_cast<std::uint64_t>(d), pi, placement_stream_index(placement)};
        make_regime(pp, p);
        if (placement) {
          pp.placement = PlacementSpec{*placement, config.noisy_count, fold_key(mix64(config.seed), static_cast<std::uint64_t>(d))};
        }
        out.push_back(std::move(pp));
      }
    }
  };
  switch (config.regime) {
    case RegimeKind::kHomogeneous:
      for (const Bias& eta : config.eta) {
        add(std::nullopt, eta.to_string(), eta.to_string(), [&](PlannedPoint& pp, double p) {
          pp.regime = HomogeneousParams{p, eta};
          pp.label.p_noisy = pp.label.p_quiet = p;
        });
      }
      break;
    case RegimeKind::kA:
      for (const Bias& eta : config.eta) {
        for (PlacementStrategy s : config.placements) {
          add(s, eta.to_string(), eta.to_string(), [&](PlannedPoint& pp, double p) {
            pp.regime = RegimeAParams{p, config.ratio, eta};
            pp.label.p_noisy = p;
            pp.label.p_quiet = p / config.ratio;
          });
        }
      }
      break;
    case RegimeKind::kB:
      for (const Bias& eta_high : config.eta_high) {
        for (PlacementStrategy s : config.placements) {
          add(s, config.eta_low.to_string(), eta_high.to_string(), [&](PlannedPoint& pp, double p) {
            pp.regime = RegimeBParams{p, config.eta_low, eta_high};
            pp.label.p_noisy = pp.label.p_quiet = p;
          });
        }
      }
      break;
  }
  return out;
}

SweepResult sweep(const ExperimentConfig& config, const SweepOptions& options) {
  return execute(config, {}, {}, options, nullptr);
}

SweepResult run_sweep_to_files(const ExperimentConfig& config, const std::string& csv_path,
                               const std::string& sidecar_path, bool resume, const SweepOptions& options) {
  namespace fs = std::filesystem;
  for (const auto& path : {csv_path, sidecar_path}) {
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
  }

  std::vector<ExperimentPoint> existing;
  std::set<std::string> done;
  bool have_header = false;
  if (resume && fs::exists(csv_path)) {
    std::string text;
    {
      std::ifstream in(csv_path, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    const auto last_nl = text.rfind('\n');
    const std::string kept = last_nl == std::string::npos ? std::string() : text.substr(0, last_nl + 1);
    if (kept.size() != text.size()) {
      std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
      out << kept;
    }
    if (!kept.empty()) {
      if (kept.substr(0, kept.find('\n')) != csv_header()) {
        throw ParameterError("existing CSV '" + csv_path + "' has a different header; refusing to append");
      }
      std::istringstream in(kept);
      existing = read_points_csv(in);
      for (const auto& p : existing) done.insert(point_identity(p));
      have_header = true;
    }
  }

  {
    nlohmann::json side;
    side["version"] = HETQEC_VERSION;
    side["config"] = config.source;
    side["columns"] = csv_columns();
    side["csv"] = std::filesystem::path(csv_path).filename().string();
    std::ofstream out(sidecar_path, std::ios::trunc);
    out << side.dump(2) << "\n";
  }

  std::ofstream csv(csv_path, resume ? std::ios::app : std::ios::trunc);
  if (!csv) throw ParameterError("cannot write CSV '" + csv_path + "'");
  if (!have_header) csv << csv_header() << "\n" << std::flush;
  auto sink = [&](const ExperimentPoint& p) { csv << csv_row(p) << "\n" << std::flush; };
  return execute(config, done, existing, options, sink);
}

}  // namespace hetqec
