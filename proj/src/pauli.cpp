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

#include "hetqec/pauli.hpp"

#include <bit>
#include <stdexcept>

#include "hetqec/errors.hpp"

namespace hetqec {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

void require_same_size(const PauliOp& a, const PauliOp& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("Pauli size mismatch: " + std::to_string(a.num_qubits()) + " vs " +
                         std::to_string(b.num_qubits()));
  }
}

}  // namespace

char letter_char(Letter l) {
  switch (l) {
    case Letter::I: return 'I';
    case Letter::X: return 'X';
    case Letter::Y: return 'Y';
    case Letter::Z: return 'Z';
  }
  return '?';
}

Letter letter_from_char(char c) {
  switch (c) {
    case 'I': case '_': return Letter::I;
    case 'X': return Letter::X;
    case 'Y': return Letter::Y;
    case 'Z': return Letter::Z;
    default: throw ParameterError(std::string("not a Pauli letter: '") + c + "'");
  }
}

PauliOp::PauliOp(std::size_t num_qubits)
    : n_(num_qubits), xs_(word_count(num_qubits), 0), zs_(word_count(num_qubits), 0) {}

PauliOp PauliOp::parse(std::string_view text) {
  PauliOp out(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) out.set_letter(q, letter_from_char(text[q]));
  return out;
}

PauliOp PauliOp::from_letters(std::span<const Letter> letters) {
  PauliOp out(letters.size());
  for (std::size_t q = 0; q < letters.size(); ++q) out.set_letter(q, letters[q]);
  return out;
}

PauliOp PauliOp::uniform(std::size_t num_qubits, std::span<const std::size_t> support, Letter letter) {
  PauliOp out(num_qubits);
  for (std::size_t q : support) out.set_letter(q, letter);
  return out;
}

Letter PauliOp::letter_at(std::size_t q) const {
  if (q >= n_) {
    throw std::out_of_range("qubit " + std::to_string(q) + " out of range for n=" + std::to_string(n_));
  }
  return letter_from_bits(x(q), z(q));
}

void PauliOp::set_letter(std::size_t q, Letter letter) {
  if (q >= n_) {
    throw std::out_of_range("qubit " + std::to_string(q) + " out of range for n=" + std::to_string(n_));
  }
  const std::uint64_t mask = std::uint64_t{1} << (q & 63);
  auto& xw = xs_[q >> 6];
  auto& zw = zs_[q >> 6];
  xw = x_bit(letter) ? (xw | mask) : (xw & ~mask);
  zw = z_bit(letter) ? (zw | mask) : (zw & ~mask);
}

std::size_t PauliOp::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < xs_.size(); ++i) w += std::popcount(xs_[i] | zs_[i]);
  return w;
}

bool PauliOp::is_identity() const {
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if ((xs_[i] | zs_[i]) != 0) return false;
  }
  return true;
}

PauliOp& PauliOp::operator*=(const PauliOp& other) {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    xs_[i] ^= other.xs_[i];
    zs_[i] ^= other.zs_[i];
  }
  return *this;
}

std::string PauliOp::to_string() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = letter_char(letter_from_bits(x(q), z(q)));
  return s;
}

PauliOp multiply(const PauliOp& a, const PauliOp& b) {
  PauliOp out = a;
  out *= b;
  return out;
}

bool symplectic_form(const PauliOp& a, const PauliOp& b) {
  require_same_size(a, b);
  const auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < ax.size(); ++i) acc ^= (ax[i] & bz[i]) ^ (az[i] & bx[i]);
  return (std::popcount(acc) & 1) != 0;
}

}  // namespace hetqec
