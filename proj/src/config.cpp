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

#include "hetqec/config.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "hetqec/errors.hpp"

namespace hetqec {

namespace {

using nlohmann::json;

class Checker {
 public:
  explicit Checker(const json& doc) : doc_(doc) {}

  void fail(std::string msg) { problems_.push_back(std::move(msg)); }
  std::vector<std::string>& problems() { return problems_; }

  const json* get(const char* key, bool required) {
    seen_.insert(key);
    auto it = doc_.find(key);
    if (it == doc_.end()) {
      if (required) fail(fmt::format("missing required key '{}'", key));
      return nullptr;
    }
    return &*it;
  }

  void forbid(const char* key, const std::string& why) {
    seen_.insert(key);
    if (doc_.contains(key)) fail(fmt::format("key '{}' is not allowed {}", key, why));
  }

  void check_unknown() {
    for (auto it = doc_.begin(); it != doc_.end(); ++it) {
      if (!seen_.count(it.key())) fail(fmt::format("unknown key '{}'", it.key()));
    }
  }

 private:
  const json& doc_;
  std::set<std::string> seen_;
  std::vector<std::string> problems_;
};

std::optional<Bias> parse_bias_json(const json& v, const std::string& where, Checker& c) {
  try {
    if (v.is_string()) return Bias::parse(v.get<std::string>());
    if (v.is_number()) return Bias::finite(v.get<double>());
    c.fail(fmt::format("{}: expected a positive number or \"inf\"", where));
  } catch (const std::exception& ex) {
    c.fail(fmt::format("{}: {}", where, ex.what()));
  }
  return std::nullopt;
}

std::vector<Bias> parse_bias_list(const json& v, const std::string& where, Checker& c) {
  std::vector<Bias> out;
  if (v.is_array()) {
    if (v.empty()) c.fail(where + ": list is empty");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (auto b = parse_bias_json(v[i], fmt::format("{}[{}]", where, i), c)) out.push_back(*b);
    }
  } else if (auto b = parse_bias_json(v, where, c)) {
    out.push_back(*b);
  }
  return out;
}

bool is_count(const json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); }

}  // namespace

std::string to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::kHomogeneous: return "homogeneous";
    case RegimeKind::kA: return "A";
    case RegimeKind::kB: return "B";
  }
  return "homogeneous";
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::invalid_argument([&] {
        std::string s = fmt::format("config has {} problem(s):", problems.size());
        for (const auto& p : problems) s += "\n  - " + p;
        return s;
      }()),
      problems_(std::move(problems)) {}

std::uint64_t ExperimentConfig::trials_for(int d, std::optional<PlacementStrategy> placement, double p) const {
  std::uint64_t t = trials;
  for (const auto& o : trial_overrides) {
    if (o.d && *o.d != d) continue;
    if (o.placement && (!placement || *o.placement != *placement)) continue;
    if (o.p && std::abs(*o.p - p) > 1e-12) continue;
    t = o.trials;
  }
  return t;
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError({"config must be a JSON object"});
  ExperimentConfig cfg;
  cfg.source = doc;
  Checker c(doc);

  if (const json* v = c.get("schema_version", true)) {
    if (!v->is_number_integer() || v->get<int>() != kConfigSchemaVersion) {
      c.fail(fmt::format("schema_version must be {}", kConfigSchemaVersion));
    }
  }

  bool regime_ok = false;
  if (const json* v = c.get("regime", true)) {
    const std::string r = v->is_string() ? v->get<std::string>() : "";
    if (r == "homogeneous") {
      cfg.regime = RegimeKind::kHomogeneous;
      regime_ok = true;
    } else if (r == "A") {
      cfg.regime = RegimeKind::kA;
      regime_ok = true;
    } else if (r == "B") {
      cfg.regime = RegimeKind::kB;
      regime_ok = true;
    } else {
      c.fail("regime must be one of \"homogeneous\", \"A\", \"B\"");
    }
  }

  if (const json* v = c.get("deformation", false)) {
    try {
      cfg.deformation = parse_deformation(v->is_string() ? v->get<std::string>() : "");
    } catch (const std::exception& ex) {
      c.fail(std::string("deformation: ") + ex.what());
    }
  }

  if (const json* v = c.get("distances", true)) {
    if (!v->is_array()) {
      c.fail("distances must be a list of odd integers >= 3");
    } else {
      for (std::size_t i = 0; i < v->size(); ++i) {
        const json& e = (*v)[i];
        if (!e.is_number_integer() || e.get<int>() < 3 || e.get<int>() % 2 == 0) {
          c.fail(fmt::format("distances[{}]: expected an odd integer >= 3, got {}", i, e.dump()));
        } else {
          cfg.distances.push_back(e.get<int>());
        }
      }
    }
  }

  if (const json* v = c.get("p_values", true)) {
    if (!v->is_array()) {
      c.fail("p_values must be a list of numbers in (0, 1)");
    } else {
      for (std::size_t i = 0; i < v->size(); ++i) {
        const json& e = (*v)[i];
        if (!e.is_number() || !(e.get<double>() > 0.0 && e.get<double>() < 1.0)) {
          c.fail(fmt::format("p_values[{}]: expected a number in (0, 1), got {}", i, e.dump()));
        } else {
          cfg.p_values.push_back(e.get<double>());
        }
      }
    }
  }

  const bool hetero = regime_ok && cfg.regime != RegimeKind::kHomogeneous;
  if (regime_ok && !hetero) {
    c.forbid("placements", "for the homogeneous regime");
  } else if (const json* v = c.get("placements", hetero)) {
    if (!v->is_array() || v->empty()) {
      c.fail("placements must be a non-empty list");
    } else {
      for (std::size_t i = 0; i < v->size(); ++i) {
        try {
          cfg.placements.push_back(parse_placement((*v)[i].is_string() ? (*v)[i].get<std::string>() : ""));
        } catch (const std::exception& ex) {
          c.fail(fmt::format("placements[{}]: {}", i, ex.what()));
        }
      }
    }
  }

  if (regime_ok) {
    if (cfg.regime == RegimeKind::kB) {
      c.forbid("eta", "for regime B (use eta_low and eta_high)");
      c.forbid("ratio", "for regime B");
      if (const json* v = c.get("eta_low", false)) {
        if (auto b = parse_bias_json(*v, "eta_low", c)) cfg.eta_low = *b;
      }
      if (const json* v = c.get("eta_high", false)) {
        cfg.eta_high = parse_bias_list(*v, "eta_high", c);
      } else {
        cfg.eta_high = {Bias::finite(100.0)};
      }
    } else {
      c.forbid("eta_low", "outside regime B");
      c.forbid("eta_high", "outside regime B");
      if (const json* v = c.get("eta", cfg.regime == RegimeKind::kHomogeneous)) {
        cfg.eta = parse_bias_list(*v, "eta", c);
      } else if (cfg.regime == RegimeKind::kA) {
        cfg.eta = {Bias::finite(10.0)};
      }
      if (cfg.regime == RegimeKind::kA) {
        if (const json* v = c.get("ratio", false)) {
          if (!v->is_number() || !(v->get<double>() >= 1.0)) {
            c.fail("ratio must be a number >= 1");
          } else {
            cfg.ratio = v->get<double>();
          }
        }
      } else {
        c.forbid("ratio", "for the homogeneous regime");
      }
    }
  }

  if (const json* v = c.get("trials", false)) {
    if (!is_count(*v) || v->get<std::uint64_t>() < 1) {
      c.fail("trials must be a positive integer");
    } else {
      cfg.trials = v->get<std::uint64_t>();
    }
  }

  if (const json* v = c.get("trial_overrides", false)) {
    if (!v->is_array()) {
      c.fail("trial_overrides must be a list");
    } else {
      for (std::size_t i = 0; i < v->size(); ++i) {
        const json& e = (*v)[i];
        const std::string where = fmt::format("trial_overrides[{}]", i);
        if (!e.is_object()) {
          c.fail(where + ": expected an object");
          continue;
        }
        TrialOverride o;
        for (auto it = e.begin(); it != e.end(); ++it) {
          const std::string& k = it.key();
          if (k == "d") {
            if (!it->is_number_integer()) c.fail(where + ".d: expected an integer");
            else o.d = it->get<int>();
          } else if (k == "placement") {
            try {
              o.placement = parse_placement(it->is_string() ? it->get<std::string>() : "");
            } catch (const std::exception& ex) {
              c.fail(where + ".placement: " + ex.what());
            }
          } else if (k == "p") {
            if (!it->is_number()) c.fail(where + ".p: expected a number");
            else o.p = it->get<double>();
          } else if (k == "trials") {
            if (!is_count(*it) || it->get<std::uint64_t>() < 1) c.fail(where + ".trials: expected a positive integer");
            else o.trials = it->get<std::uint64_t>();
          } else {
            c.fail(where + ": unknown key '" + k + "'");
          }
        }
        if (!e.contains("trials")) c.fail(where + ": missing 'trials'");
        cfg.trial_overrides.push_back(o);
      }
    }
  }

  if (const json* v = c.get("chi", false)) {
    if (!is_count(*v) || v->get<std::uint64_t>() < 1) {
      c.fail("chi must be a positive integer");
    } else {
      cfg.chi = v->get<std::size_t>();
    }
  }

  if (const json* v = c.get("method", false)) {
    try {
      cfg.method = parse_decode_method(v->is_string() ? v->get<std::string>() : "");
    } catch (const std::exception& ex) {
      c.fail(std::string("method: ") + ex.what());
    }
  }
  if (cfg.method == DecodeMethod::kExact) {
    for (int d : cfg.distances) {
      if (d > 3) c.fail(fmt::format("method \"exact\" supports only d = 3 in sweeps, got d = {}", d));
    }
  }

  if (const json* v = c.get("seed", false)) {
    if (!is_count(*v)) c.fail("seed must be a non-negative integer");
    else cfg.seed = v->get<std::uint64_t>();
  }

  if (const json* v = c.get("noisy_count", false)) {
    if (!is_count(*v)) c.fail("noisy_count must be a non-negative integer");
    else cfg.noisy_count = v->get<std::size_t>();
    for (int d : cfg.distances) {
      if (cfg.noisy_count && *cfg.noisy_count > static_cast<std::size_t>(d) * d) {
        c.fail(fmt::format("noisy_count {} exceeds the {} qubits at d = {}", *cfg.noisy_count, d * d, d));
      }
    }
  }

  if (const json* v = c.get("output", true)) {
    if (!v->is_object() || !v->contains("csv") || !(*v)["csv"].is_string()) {
      c.fail("output must be an object with a string 'csv' path");
    } else {
      cfg.csv_path = (*v)["csv"].get<std::string>();
      cfg.sidecar_path = cfg.csv_path + ".json";
      for (auto it = v->begin(); it != v->end(); ++it) {
        if (it.key() == "sidecar") {
          if (!it->is_string()) c.fail("output.sidecar must be a string");
          else cfg.sidecar_path = it->get<std::string>();
        } else if (it.key() != "csv") {
          c.fail("output: unknown key '" + it.key() + "'");
        }
      }
    }
  }

  c.check_unknown();
  if (!c.problems().empty()) throw ConfigError(std::move(c.problems()));
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config '" + path + "'"});
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& ex) {
    throw ConfigError({fmt::format("'{}' is not valid JSON: {}", path, ex.what())});
  }
  return parse_config(doc);
}

std::string resolve_output_path(const std::string& path) {
  const char* dir = std::getenv("HETQEC_OUTPUT_DIR");
  const std::filesystem::path p(path);
  if (dir == nullptr || *dir == '\0' || p.is_absolute()) return path;
  return (std::filesystem::path(dir) / p).string();
}

}  // namespace hetqec
