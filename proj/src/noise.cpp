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

#include "hetqec/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "hetqec/errors.hpp"

namespace hetqec {

Bias Bias::finite(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ParameterError(fmt::format("bias must be positive and finite (or symbolic inf), got {}", eta));
  }
  return Bias(eta, false);
}

Bias Bias::parse(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return infinite();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParameterError("cannot parse bias '" + text + "'");
  }
  if (used != text.size()) throw ParameterError("cannot parse bias '" + text + "'");
  return finite(v);
}

std::string Bias::to_string() const { return infinite_ ? "inf" : fmt::format("{}", value_); }

double BiasedChannel::prob(Letter l) const {
  switch (l) {
    case Letter::I: return 1.0 - p;
    case Letter::X: return px;
    case Letter::Y: return py;
    case Letter::Z: return pz;
  }
  return 0.0;
}

BiasedChannel make_channel(double p, Bias eta) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(fmt::format("error probability {} outside [0, 1]", p));
  BiasedChannel ch;
  ch.p = p;
  ch.eta = eta;
  if (eta.is_infinite()) {
    ch.pz = p;
    ch.px = ch.py = 0.0;
  } else {
    const double e = eta.value();
    ch.pz = p * e / (1.0 + e);
    ch.px = ch.py = p / (2.0 * (1.0 + e));
  }
  return ch;
}

std::string to_string(PlacementStrategy s) {
  switch (s) {
    case PlacementStrategy::kBulkNoisy: return "BulkNoisy";
    case PlacementStrategy::kBoundaryNoisy: return "BoundaryNoisy";
    case PlacementStrategy::kRandom: return "Random";
  }
  return "?";
}

PlacementStrategy parse_placement(const std::string& text) {
  if (text == "BulkNoisy" || text == "Bulk-Noisy") return PlacementStrategy::kBulkNoisy;
  if (text == "BoundaryNoisy" || text == "Boundary-Noisy") return PlacementStrategy::kBoundaryNoisy;
  if (text == "Random") return PlacementStrategy::kRandom;
  throw ParameterError("unknown placement '" + text + "' (expected BulkNoisy, BoundaryNoisy or Random)");
}

std::vector<QubitType> assign_placement(const CodeInstance& code, const PlacementSpec& spec) {
  const std::size_t n = code.num_qubits();
  const std::size_t noisy = spec.noisy_count.value_or((n + 1) / 2);
  if (noisy > n) throw ParameterError(fmt::format("noisy_count {} exceeds {} qubits", noisy, n));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& geo = code.geometry();
  switch (spec.strategy) {
    case PlacementStrategy::kBulkNoisy:
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return geo[a].degree > geo[b].degree; });
      break;
    case PlacementStrategy::kBoundaryNoisy:
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return geo[a].degree < geo[b].degree; });
      break;
    case PlacementStrategy::kRandom: {
      // Fisher-Yates from the placement seed; fixed for the whole experiment.
      CounterRng rng(mix64(spec.seed ^ 0x706c6163656d656eULL));
      for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
      break;
    }
  }
  std::vector<QubitType> types(n, QubitType::kQuiet);
  for (std::size_t i = 0; i < noisy; ++i) types[order[i]] = QubitType::kNoisy;
  return types;
}

std::string regime_name(const RegimeParams& regime) {
  switch (regime.index()) {
    case 0: return "homogeneous";
    case 1: return "A";
    default: return "B";
  }
}

namespace {

std::array<double, 4> letter_table(const BiasedChannel& ch) {
  std::array<double, 4> t{};
  for (Letter l : {Letter::I, Letter::X, Letter::Y, Letter::Z}) t[static_cast<std::size_t>(l)] = ch.prob(l);
  return t;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(fmt::format("{} = {} outside [0, 1]", what, p));
}

}  // namespace

NoiseModel build_noise_model_from_types(const RegimeParams& regime, std::vector<QubitType> types) {
  NoiseModel model;
  model.regime_ = regime;
  const std::size_t n = types.size();
  model.channels_.resize(n);
  if (const auto* h = std::get_if<HomogeneousParams>(&regime)) {
    check_probability(h->p, "p");
    const BiasedChannel ch = make_channel(h->p, h->eta);
    std::fill(model.channels_.begin(), model.channels_.end(), ch);
  } else if (const auto* a = std::get_if<RegimeAParams>(&regime)) {
    check_probability(a->p_noisy, "p_noisy");
    if (!(a->ratio >= 1.0) || !std::isfinite(a->ratio)) {
      throw ParameterError(fmt::format("regime A ratio must be finite and >= 1, got {}", a->ratio));
    }
    const BiasedChannel noisy = make_channel(a->p_noisy, a->eta);
    const BiasedChannel quiet = make_channel(a->p_noisy / a->ratio, a->eta);
    for (std::size_t q = 0; q < n; ++q) model.channels_[q] = types[q] == QubitType::kNoisy ? noisy : quiet;
  } else {
    const auto& b = std::get<RegimeBParams>(regime);
    check_probability(b.p, "p");
    const BiasedChannel low = make_channel(b.p, b.eta_low);
    const BiasedChannel high = make_channel(b.p, b.eta_high);
    for (std::size_t q = 0; q < n; ++q) model.channels_[q] = types[q] == QubitType::kNoisy ? low : high;
  }
  model.types_ = std::move(types);
  model.probs_.reserve(n);
  for (const auto& ch : model.channels_) model.probs_.push_back(letter_table(ch));
  return model;
}

NoiseModel build_noise_model(const CodeInstance& code, const RegimeParams& regime,
                             const std::optional<PlacementSpec>& placement) {
  std::vector<QubitType> types;
  if (std::holds_alternative<HomogeneousParams>(regime)) {
    types.assign(code.num_qubits(), QubitType::kNoisy);
  } else {
    if (!placement) throw ParameterError("heterogeneous regimes need a placement");
    types = assign_placement(code, *placement);
  }
  return build_noise_model_from_types(regime, std::move(types));
}

PauliOp sample_error(const NoiseModel& model, CounterRng& rng) {
  const std::size_t n = model.num_qubits();
  PauliOp e(n);
  for (std::size_t q = 0; q < n; ++q) {
    const double u = rng.uniform();
    const auto& ch = model.channels()[q];
    if (u >= ch.p) continue;
    if (u < ch.pz) {
      e.set_letter(q, Letter::Z);
    } else if (u < ch.pz + ch.px) {
      e.set_letter(q, Letter::X);
    } else {
      e.set_letter(q, Letter::Y);
    }
  }
  return e;
}

std::string channel_table_csv(const CodeInstance& code, const NoiseModel& model) {
  std::string out = "qubit,row,col,degree,type,p,eta,p_x,p_y,p_z\n";
  for (std::size_t q = 0; q < model.num_qubits(); ++q) {
    const auto& g = code.geometry()[q];
    const auto& ch = model.channels()[q];
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", q, g.row, g.col, g.degree,
                       model.types()[q] == QubitType::kNoisy ? "noisy" : "quiet", ch.p, ch.eta.to_string(), ch.px,
                       ch.py, ch.pz);
  }
  return out;
}

}  // namespace hetqec
