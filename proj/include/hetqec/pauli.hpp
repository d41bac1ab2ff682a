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

#ifndef HETQEC_PAULI_HPP
#define HETQEC_PAULI_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hetqec {

/// Single-qubit Pauli letter. The underlying value packs the symplectic
/// bits as (x | z << 1).
enum class Letter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

constexpr Letter letter_from_bits(bool x, bool z) {
  return static_cast<Letter>(static_cast<unsigned>(x) | (static_cast<unsigned>(z) << 1));
}
constexpr bool x_bit(Letter l) { return (static_cast<unsigned>(l) & 1u) != 0; }
constexpr bool z_bit(Letter l) { return (static_cast<unsigned>(l) & 2u) != 0; }
constexpr Letter operator*(Letter a, Letter b) {
  return static_cast<Letter>(static_cast<unsigned>(a) ^ static_cast<unsigned>(b));
}

char letter_char(Letter l);
Letter letter_from_char(char c);

/// An n-qubit Pauli operator modulo phase in binary symplectic form. Bits are
/// packed 64 per word; bits beyond n in the last word are always zero.
class PauliOp {
 public:
  PauliOp() = default;
  explicit PauliOp(std::size_t num_qubits);

  /// Parses a letter string such as "IXYZ" (qubit 0 first).
  static PauliOp parse(std::string_view text);
  static PauliOp from_letters(std::span<const Letter> letters);
  /// The operator acting as `letter` on each qubit in `support`.
  static PauliOp uniform(std::size_t num_qubits, std::span<const std::size_t> support, Letter letter);

  std::size_t num_qubits() const { return n_; }
  bool x(std::size_t q) const { return (xs_[q >> 6] >> (q & 63)) & 1u; }
  bool z(std::size_t q) const { return (zs_[q >> 6] >> (q & 63)) & 1u; }

  /// Letter on qubit q; throws std::out_of_range when q >= n.
  Letter letter_at(std::size_t q) const;
  void set_letter(std::size_t q, Letter letter);

  std::size_t weight() const;
  bool is_identity() const;

  std::span<const std::uint64_t> x_words() const { return xs_; }
  std::span<const std::uint64_t> z_words() const { return zs_; }

  /// In-place product with `other` (componentwise XOR).
  PauliOp& operator*=(const PauliOp& other);

  std::string to_string() const;

  friend bool operator==(const PauliOp&, const PauliOp&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> zs_;
};

PauliOp multiply(const PauliOp& a, const PauliOp& b);
inline PauliOp operator*(const PauliOp& a, const PauliOp& b) { return multiply(a, b); }

/// Symplectic form: 1 iff a and b anticommute.
bool symplectic_form(const PauliOp& a, const PauliOp& b);
inline bool commutes(const PauliOp& a, const PauliOp& b) { return !symplectic_form(a, b); }

inline std::size_t weight(const PauliOp& a) { return a.weight(); }
inline Letter letter_at(const PauliOp& a, std::size_t q) { return a.letter_at(q); }

}  // namespace hetqec

#endif  // HETQEC_PAULI_HPP
