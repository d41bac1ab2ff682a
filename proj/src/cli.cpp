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

#include "hetqec/cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <omp.h>

#include "hetqec/code.hpp"
#include "hetqec/config.hpp"
#include "hetqec/decoder.hpp"
#include "hetqec/errors.hpp"
#include "hetqec/noise.hpp"
#include "hetqec/plot.hpp"
#include "hetqec/sweep.hpp"
#include "hetqec/threshold.hpp"
#include "hetqec/verify.hpp"

namespace hetqec {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

struct ModelArgs {
  std::string regime = "homogeneous";
  double p = 0.1;
  std::string eta = "0.5";
  double ratio = 10.0;
  std::string eta_low = "10";
  std::string eta_high = "100";
  std::string placement = "BulkNoisy";
  std::optional<std::size_t> noisy_count;
  std::uint64_t placement_seed = 0;

  NoiseModel build(const CodeInstance& code) const {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
    const PlacementSpec spec{parse_placement(placement), noisy_count, placement_seed};
    if (regime == "homogeneous") return build_noise_model(code, HomogeneousParams{p, Bias::parse(eta)}, std::nullopt);
    if (regime == "A") return build_noise_model(code, RegimeAParams{p, ratio, Bias::parse(eta)}, spec);
    if (regime == "B") {
      return build_noise_model(code, RegimeBParams{p, Bias::parse(eta_low), Bias::parse(eta_high)}, spec);
    }
    throw ParameterError("regime must be homogeneous, A or B");
  }
};

void add_model_options(CLI::App* app, ModelArgs& m) {
  app->add_option("--regime", m.regime, "homogeneous, A or B")->capture_default_str();
  app->add_option("--p", m.p, "Error rate (p_noisy in regime A)")->capture_default_str();
  app->add_option("--eta", m.eta, "Bias for homogeneous and regime A; number or inf")->capture_default_str();
  app->add_option("--ratio", m.ratio, "Regime A p_noisy / p_quiet")->capture_default_str();
  app->add_option("--eta-low", m.eta_low, "Regime B low bias")->capture_default_str();
  app->add_option("--eta-high", m.eta_high, "Regime B high bias")->capture_default_str();
  app->add_option("--placement", m.placement, "BulkNoisy, BoundaryNoisy or Random")->capture_default_str();
  app->add_option("--noisy-count", m.noisy_count, "Number of noisy-type qubits");
  app->add_option("--placement-seed", m.placement_seed, "Seed for Random placement")->capture_default_str();
}

int cmd_build_code(int d, const std::string& deformation, const std::string& output, std::ostream& out) {
  const CodeInstance code = build_code(d, parse_deformation(deformation));
  const std::string doc = describe(code).dump(2) + "\n";
  if (output.empty()) {
    out << doc;
  } else {
    write_file(resolve_output_path(output), doc);
  }
  return kExitOk;
}

int cmd_decode_one(int d, const std::string& deformation, const ModelArgs& margs, const std::string& syndrome_bits,
                   const std::string& method, std::size_t chi, bool allow_large, std::ostream& out) {
  const CodeInstance code = build_code(d, parse_deformation(deformation));
  const NoiseModel model = margs.build(code);
  const Syndrome s = parse_syndrome(syndrome_bits);
  if (s.size() != code.num_stabilizers()) {
    throw DimensionError(fmt::format("syndrome has {} bits, the code has {} stabilizers", s.size(), code.num_stabilizers()));
  }
  DecodeOptions opt;
  opt.method = parse_decode_method(method);
  opt.chi = chi;
  opt.allow_large_exact = allow_large;
  const Correction c = Decoder(code, model).decode(s, opt);
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(v > 0 ? "inf" : "-inf"); };
  json doc;
  doc["chosen_class"] = std::string(1, letter_char(c.chosen_class));
  doc["log_pi"] = json::array({num(c.likelihoods.at(Letter::I)), num(c.likelihoods.at(Letter::X)),
                               num(c.likelihoods.at(Letter::Y)), num(c.likelihoods.at(Letter::Z))});
  doc["log_pi_order"] = "IXYZ";
  doc["correction"] = c.op.to_string();
  doc["discarded_weight"] = c.likelihoods.discarded_weight;
  doc["method"] = to_string(c.likelihoods.method);
  if (c.likelihoods.method == DecodeMethod::kTn) doc["chi"] = c.likelihoods.chi;
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_run(const std::string& config_path, bool fresh, bool quiet, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = load_config(config_path);
  const std::string csv = resolve_output_path(cfg.csv_path);
  const std::string sidecar = resolve_output_path(cfg.sidecar_path);
  SweepOptions opt;
  opt.log_progress = !quiet;
  const SweepResult r = run_sweep_to_files(cfg, csv, sidecar, !fresh, opt);
  out << fmt::format("{} points ({} resumed) written to {}\n", r.points.size(), r.resumed, csv);
  for (const auto& f : r.failures) {
    err << fmt::format("point failed: {}{}: {}\n", f.point, f.trial ? fmt::format(" (trial {})", *f.trial) : "", f.message);
  }
  return r.failures.empty() ? kExitOk : kExitRuntime;
}

struct Filters {
  std::string regime, placement, eta_low, eta_high;
  std::optional<double> p;
  std::optional<std::size_t> chi;

  bool keep(const ExperimentPoint& pt) const {
    if (!regime.empty() && pt.regime != regime) return false;
    if (!placement.empty() && pt.placement != to_string(parse_placement(placement))) return false;
    if (!eta_low.empty() && pt.eta_low != Bias::parse(eta_low).to_string()) return false;
    if (!eta_high.empty() && pt.eta_high != Bias::parse(eta_high).to_string()) return false;
    if (p && std::abs(pt.p - *p) > 1e-12) return false;
    if (chi && pt.chi != *chi) return false;
    return true;
  }
};

void add_filter_options(CLI::App* app, Filters& f) {
  app->add_option("--regime", f.regime, "Keep rows of this regime");
  app->add_option("--placement", f.placement, "Keep rows of this placement");
  app->add_option("--eta-low", f.eta_low, "Keep rows with this eta_low");
  app->add_option("--eta-high", f.eta_high, "Keep rows with this eta_high");
  app->add_option("--p", f.p, "Keep rows with this p");
  app->add_option("--chi", f.chi, "Keep rows with this chi");
}

std::vector<ExperimentPoint> load_filtered(const std::string& csv, const Filters& f) {
  std::vector<ExperimentPoint> kept;
  for (auto& p : read_points_csv_file(csv)) {
    if (f.keep(p)) kept.push_back(std::move(p));
  }
  return kept;
}

int cmd_fit(const std::string& csv, const Filters& filters, const FitOptions& fo, const std::string& json_out,
            const std::string& csv_out, std::ostream& out) {
  const auto points = load_filtered(csv, filters);
  using Key = std::tuple<std::string, std::string, std::string, std::string, std::string, std::size_t>;
  std::map<Key, std::vector<ExperimentPoint>> groups;
  for (const auto& p : points) groups[{p.regime, p.placement, to_string(p.deformation), p.eta_low, p.eta_high, p.chi}].push_back(p);

  json rows = json::array();
  std::string table = "regime,placement,deformation,eta_low,eta_high,chi,status,p_th,stderr,nu,window_lo,window_hi,n_points,converged,bound\n";
  for (const auto& [key, pts] : groups) {
    const auto& [regime, placement, def, eta_low, eta_high, chi] = key;
    json row{{"regime", regime}, {"placement", placement}, {"deformation", def},
             {"eta_low", eta_low}, {"eta_high", eta_high}, {"chi", chi}};
    const std::string prefix = fmt::format("{},{},{},{},{},{}", regime, placement, def, eta_low, eta_high, chi);
    try {
      const FitResult r = fit_threshold(pts, fo);
      row["p_th"] = r.p_th;
      row["stderr"] = r.stderr_p_th;
      row["nu"] = r.nu;
      const char* names[] = {"A", "B", "C", "D"};
      for (std::size_t i = 0; i < r.coefficients.size(); ++i) row[names[i]] = r.coefficients[i];
      row["window"] = {r.window_lo, r.window_hi};
      row["n_points"] = r.n_points;
      row["converged"] = r.converged;
      table += fmt::format("{},fit,{},{},{},{},{},{},{},\n", prefix, r.p_th, r.stderr_p_th, r.nu, r.window_lo, r.window_hi,
                           r.n_points, r.converged);
    } catch (const NoCrossing& nc) {
      row["bound"] = nc.bound_text();
      table += fmt::format("{},bound,,,,,,,,{}\n", prefix, nc.bound_text());
    } catch (const DegenerateFit& df) {
      row["error"] = df.what();
      table += fmt::format("{},degenerate,,,,,,,,\n", prefix);
    }
    rows.push_back(row);
  }
  const std::string doc = rows.dump(2) + "\n";
  out << doc;
  if (!json_out.empty()) write_file(resolve_output_path(json_out), doc);
  if (!csv_out.empty()) write_file(resolve_output_path(csv_out), table);
  return kExitOk;
}

int cmd_plot(const std::string& csv, const std::string& kind_text, const Filters& filters, std::string output,
             std::ostream& out) {
  const PlotKind kind = parse_plot_kind(kind_text);
  const auto points = load_filtered(csv, filters);
  PlotSpec spec = build_plot(points, kind);
  std::string tag = "csv " + content_hash(read_file(csv));
  const std::string sidecar = csv + ".json";
  if (std::filesystem::exists(sidecar)) tag += " config " + content_hash(read_file(sidecar));
  spec.tag = tag;
  const std::string svg = render_svg(spec);
  if (output.empty()) output = to_string(kind) + ".svg";
  const std::string path = resolve_output_path(output);
  write_file(path, svg);
  out << "wrote " << path << "\n";
  return kExitOk;
}

int cmd_verify(std::size_t chi, std::ostream& out) {
  bool ok = true;
  for (const auto& c : verify_d3_oracle(chi)) {
    out << fmt::format("[{}] {} ({})\n", c.pass ? "PASS" : "FAIL", c.name, c.detail);
    ok = ok && c.pass;
  }
  out << (ok ? "verify: all checks passed\n" : "verify: FAILED\n");
  return ok ? kExitOk : kExitRuntime;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heterogeneous XY surface code simulation and decoding"};
  app.name("hetqec");
  app.set_version_flag("--version", HETQEC_VERSION);
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);

  int d = 0;
  std::string deformation = "xy";
  std::string output;

  auto* build = app.add_subcommand("build-code", "Print the JSON description of a code");
  build->add_option("--d", d, "Odd code distance >= 3")->required();
  build->add_option("--deformation", deformation, "css or xy")->capture_default_str();
  build->add_option("--output", output, "Write to this file instead of stdout");

  ModelArgs margs;
  std::string syndrome_bits, method = "tn";
  std::size_t chi = 16;
  bool allow_large = false;
  auto* dec = app.add_subcommand("decode-one", "Decode a single syndrome");
  dec->add_option("--d", d, "Odd code distance >= 3")->required();
  dec->add_option("--deformation", deformation, "css or xy")->capture_default_str();
  add_model_options(dec, margs);
  dec->add_option("--syndrome", syndrome_bits, "Bit string, one bit per stabilizer")->required();
  dec->add_option("--method", method, "tn or exact")->capture_default_str();
  dec->add_option("--chi", chi, "Bond cap")->capture_default_str()->check(CLI::PositiveNumber);
  dec->add_flag("--allow-large-exact", allow_large, "Permit exact decoding at d = 5");

  std::string config_path;
  bool fresh = false, quiet = false;
  auto* run = app.add_subcommand("run", "Run a sweep config");
  run->add_option("config", config_path, "Config JSON")->required();
  run->add_flag("--fresh", fresh, "Overwrite the CSV instead of resuming");
  run->add_flag("--quiet", quiet, "No progress lines");

  std::string csv_path, json_out, csv_out;
  Filters filters;
  FitOptions fo;
  auto* fit = app.add_subcommand("fit-threshold", "Fit thresholds per group of a results CSV");
  fit->add_option("csv", csv_path, "Results CSV")->required();
  add_filter_options(fit, filters);
  fit->add_option("--window", fo.window, "Relative fit window around the crossing")->capture_default_str();
  fit->add_option("--order", fo.order, "Ansatz order, 2 or 3")->capture_default_str()->check(CLI::IsMember({2, 3}));
  fit->add_option("--bootstrap", fo.bootstrap_resamples, "Bootstrap resamples")->capture_default_str();
  fit->add_option("--seed", fo.bootstrap_seed, "Bootstrap seed")->capture_default_str();
  fit->add_option("--json-out", json_out, "Also write the JSON here");
  fit->add_option("--csv-out", csv_out, "Write the thresholds table here");

  std::string kind;
  Filters pfilters;
  auto* plot = app.add_subcommand("plot", "Render an SVG figure from a results CSV");
  plot->add_option("csv", csv_path, "Results CSV")->required();
  plot->add_option("--kind", kind, "failure-vs-p, ratio-vs-d or disaggregated")->required();
  plot->add_option("--output", output, "SVG path (default <kind>.svg)");
  add_filter_options(plot, pfilters);

  auto* verify = app.add_subcommand("verify", "Check the tensor-network decoder against exact decoding at d = 3");
  verify->add_option("--chi", chi, "Bond cap")->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (build->parsed()) return cmd_build_code(d, deformation, output, out);
    if (dec->parsed()) return cmd_decode_one(d, deformation, margs, syndrome_bits, method, chi, allow_large, out);
    if (run->parsed()) return cmd_run(config_path, fresh, quiet, out, err);
    if (fit->parsed()) return cmd_fit(csv_path, filters, fo, json_out, csv_out, out);
    if (plot->parsed()) return cmd_plot(csv_path, kind, pfilters, output, out);
    if (verify->parsed()) return cmd_verify(chi, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace hetqec
