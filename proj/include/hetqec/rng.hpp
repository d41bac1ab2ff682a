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

#ifndef HETQEC_RNG_HPP
#define HETQEC_RNG_HPP

#include <cstdint>
#include <limits>

namespace hetqec {

/// SplitMix64 output function (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Folds one more word into a stream key: key' = mix64(key ^ mix64(word + golden)).
constexpr std::uint64_t fold_key(std::uint64_t key, std::uint64_t word) {
  return mix64(key ^ mix64(word + 0x9e3779b97f4a7c15ULL));
}

/// Key of one Monte Carlo trial:
///   fold(fold(fold(fold(mix64(seed), d), p_index), placement), trial).
/// Trials are order-independent: any schedule reproduces the same draws.
constexpr std::uint64_t trial_stream_key(std::uint64_t seed, std::uint64_t d, std::uint64_t p_index,
                                         std::uint64_t placement, std::uint64_t trial) {
  std::uint64_t k = mix64(seed);
  k = fold_key(k, d);
  k = fold_key(k, p_index);
  k = fold_key(k, placement);
  return fold_key(k, trial);
}

/// Counter-based stream: the i-th output is mix64(key + i * golden), i.e. a
/// SplitMix64 sequence started at `key`. Satisfies
/// UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) : state_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

inline std::uint64_t CounterRng::below(std::uint64_t bound) {
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t v;
  do {
    v = (*this)();
  } while (v >= limit);
  return v % bound;
}

}  // namespace hetqec

#endif  // HETQEC_RNG_HPP
