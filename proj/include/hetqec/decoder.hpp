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

#ifndef HETQEC_DECODER_HPP
#define HETQEC_DECODER_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hetqec/code.hpp"
#include "hetqec/noise.hpp"
#include "hetqec/pauli.hpp"
#include "hetqec/tensor.hpp"

namespace hetqec {

enum class DecodeMethod { kExact, kTn };

std::string to_string(DecodeMethod method);
DecodeMethod parse_decode_method(const std::string& text);

struct CosetLikelihoods {
  /// Natural-log coset probabilities indexed by Letter value (I, X, Z, Y).
  /// -inf marks an empty coset.
  std::array<double, 4> log_pi{};
  DecodeMethod method = DecodeMethod::kExact;
  std::size_t chi = 0;
  double discarded_weight = 0.0;

  double at(Letter l) const { return log_pi[static_cast<std::size_t>(l)]; }
};

struct Correction {
  PauliOp op;
  Letter chosen_class = Letter::I;
  CosetLikelihoods likelihoods;
};

struct DecodeOptions {
  DecodeMethod method = DecodeMethod::kTn;
  std::size_t chi = 16;
  /// Lets the exact method run at d = 5 (2^24 group elements).
  bool allow_large_exact = false;
  SvdBackend backend = SvdBackend::kGram;
};

/// Log-likelihoods closer than this are treated as tied.
inline constexpr double kTieTolerance = 1e-9;

/// Argmax with ties broken in the order I < X < Z < Y.
Letter choose_class(const CosetLikelihoods& likelihoods);

/// Maximum-likelihood decoder for one (code, noise model) pair. All methods
/// are const and safe to call concurrently.
class Decoder {
 public:
  Decoder(const CodeInstance& code, const NoiseModel& model);

  const CodeInstance& code() const { return code_; }

  /// Sums the probability of every element of each coset.
  CosetLikelihoods exact(const Syndrome& s, bool allow_large = false) const;

  /// Boundary-MPS contraction at bond cap chi.
  CosetLikelihoods tn(const Syndrome& s, std::size_t chi, SvdBackend backend = SvdBackend::kGram) const;

  Correction decode(const Syndrome& s, const DecodeOptions& options = {}) const;

  /// Largest bond extent reached by an uncapped contraction of the
  /// all-identity network; a chi at or above it makes tn() exact.
  std::size_t exact_bond_extent() const;

 private:
  struct Site {
    enum Kind : std::uint8_t { kEmpty, kQubit, kFace } kind = kEmpty;
    std::size_t index = 0;
  };

  int columns() const { return 2 * code_.distance() - 1; }
  int rows() const { return 2 * code_.distance() - 1; }
  const Site& site(int u, int vi) const { return sites_[static_cast<std::size_t>(u * rows() + vi)]; }
  std::size_t horizontal_extent(int u, int vi) const;
  std::size_t vertical_extent(int u, int vi) const;
  MpoColumn column(int u, const std::vector<Letter>& base, bool reversed) const;

  CodeInstance code_;
  std::vector<std::array<double, 4>> probs_;
  std::vector<Site> sites_;
  /// Per qubit: stabilizer index and letter on the up, in, out, down legs;
  /// index -1 when the face is absent.
  struct QubitLegs {
    std::array<int, 4> stab{-1, -1, -1, -1};
    std::array<Letter, 4> letter{Letter::I, Letter::I, Letter::I, Letter::I};
  };
  std::vector<QubitLegs> legs_;
};

CosetLikelihoods exact_coset_likelihoods(const CodeInstance& code, const NoiseModel& model, const Syndrome& s,
                                         bool allow_large = false);
CosetLikelihoods tn_coset_likelihoods(const CodeInstance& code, const NoiseModel& model, const Syndrome& s,
                                      std::size_t chi);
Correction decode(const CodeInstance& code, const NoiseModel& model, const Syndrome& s,
                  const DecodeOptions& options = {});

}  // namespace hetqec

#endif  // HETQEC_DECODER_HPP
