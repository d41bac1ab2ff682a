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

#ifndef HETQEC_NOISE_HPP
#define HETQEC_NOISE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hetqec/code.hpp"
#include "hetqec/pauli.hpp"
#include "hetqec/rng.hpp"

namespace hetqec {

/// Bias ratio p_Z / (p_X + p_Y): a positive finite value or symbolic infinity.
class Bias {
 public:
  static Bias finite(double eta);
  static Bias infinite() { return Bias(0.0, true); }
  /// Accepts a decimal number or "inf".
  static Bias parse(const std::string& text);

  bool is_infinite() const { return infinite_; }
  double value() const { return value_; }
  std::string to_string() const;

  friend bool operator==(const Bias&, const Bias&) = default;

 private:
  Bias(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

struct BiasedChannel {
  double p = 0.0;
  Bias eta = Bias::finite(0.5);
  double px = 0.0;
  double py = 0.0;
  double pz = 0.0;

  /// Probability of a letter, I included.
  double prob(Letter l) const;
};

BiasedChannel make_channel(double p, Bias eta);

enum class PlacementStrategy { kBulkNoisy, kBoundaryNoisy, kRandom };

std::string to_string(PlacementStrategy s);
PlacementStrategy parse_placement(const std::string& text);

struct PlacementSpec {
  PlacementStrategy strategy = PlacementStrategy::kBulkNoisy;
  /// Defaults to ceil(d^2 / 2).
  std::optional<std::size_t> noisy_count;
  std::uint64_t seed = 0;
};

/// kNoisy is the noisy type in regime A and the low-bias type in regime B.
enum class QubitType : std::uint8_t { kNoisy, kQuiet };

std::vector<QubitType> assign_placement(const CodeInstance& code, const PlacementSpec& spec);

struct HomogeneousParams {
  double p = 0.0;
  Bias eta = Bias::finite(0.5);
};

/// Same bias, p_noisy = ratio * p_quiet.
struct RegimeAParams {
  double p_noisy = 0.0;
  double ratio = 10.0;
  Bias eta = Bias::finite(10.0);
};

/// Same total rate, eta_low on noisy-type qubits and eta_high on quiet-type.
struct RegimeBParams {
  double p = 0.0;
  Bias eta_low = Bias::finite(10.0);
  Bias eta_high = Bias::finite(100.0);
};

using RegimeParams = std::variant<HomogeneousParams, RegimeAParams, RegimeBParams>;

std::string regime_name(const RegimeParams& regime);

class NoiseModel {
 public:
  const std::vector<BiasedChannel>& channels() const { return channels_; }
  const std::vector<QubitType>& types() const { return types_; }
  const RegimeParams& regime() const { return regime_; }
  std::size_t num_qubits() const { return channels_.size(); }

  /// Per-qubit probabilities indexed by Letter value (I, X, Z, Y).
  const std::array<double, 4>& letter_probs(std::size_t q) const { return probs_[q]; }

 private:
  friend NoiseModel build_noise_model(const CodeInstance&, const RegimeParams&, const std::optional<PlacementSpec>&);
  friend NoiseModel build_noise_model_from_types(const RegimeParams&, std::vector<QubitType>);

  std::vector<BiasedChannel> channels_;
  std::vector<QubitType> types_;
  std::vector<std::array<double, 4>> probs_;
  RegimeParams regime_;
};

/// Homogeneous regimes ignore the placement; heterogeneous regimes require it.
NoiseModel build_noise_model(const CodeInstance& code, const RegimeParams& regime,
                             const std::optional<PlacementSpec>& placement);

/// Builds a model from an explicit type vector.
NoiseModel build_noise_model_from_types(const RegimeParams& regime, std::vector<QubitType> types);

/// Draws each qubit independently from its own channel.
PauliOp sample_error(const NoiseModel& model, CounterRng& rng);

/// CSV table: qubit,row,col,degree,type,p,eta,p_x,p_y,p_z
std::string channel_table_csv(const CodeInstance& code, const NoiseModel& model);

}  // namespace hetqec

#endif  // HETQEC_NOISE_HPP
