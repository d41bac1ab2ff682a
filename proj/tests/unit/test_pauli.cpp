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

#include <gtest/gtest.h>

#include "hetqec/errors.hpp"
#include "hetqec/rng.hpp"

namespace hetqec {
namespace {

TEST(Pauli, LetterBitsAreTotal) {
  EXPECT_EQ(letter_from_bits(false, false), Letter::I);
  EXPECT_EQ(letter_from_bits(true, false), Letter::X);
  EXPECT_EQ(letter_from_bits(true, true), Letter::Y);
  EXPECT_EQ(letter_from_bits(false, true), Letter::Z);
}

TEST(Pauli, MultiplyIsXor) {
  EXPECT_EQ(PauliOp::parse("X") * PauliOp::parse("Z"), PauliOp::parse("Y"));
  EXPECT_EQ(PauliOp::parse("XX") * PauliOp::parse("ZZ"), PauliOp::parse("YY"));
  const auto a = PauliOp::parse("XYZIZYX");
  EXPECT_TRUE((a * a).is_identity());
  EXPECT_THROW(PauliOp::parse("XX") * PauliOp::parse("XXX"), DimensionError);
}

TEST(Pauli, SymplecticForm) {
  EXPECT_FALSE(commutes(PauliOp::parse("X"), PauliOp::parse("Z")));
  EXPECT_TRUE(commutes(PauliOp(5), PauliOp::parse("XYZYX")));
  EXPECT_TRUE(commutes(PauliOp::parse("XX"), PauliOp::parse("ZZ")));
  EXPECT_THROW(symplectic_form(PauliOp(2), PauliOp(3)), DimensionError);
}

TEST(Pauli, Weight) {
  EXPECT_EQ(weight(PauliOp(9)), 0u);
  PauliOp y(9);
  y.set_letter(4, Letter::Y);
  EXPECT_EQ(weight(y), 1u);
  EXPECT_EQ(weight(PauliOp::parse("XX")), 2u);
}

TEST(Pauli, LetterAt) {
  const auto op = PauliOp::parse("IYZ");
  EXPECT_EQ(letter_at(op, 0), Letter::I);
  EXPECT_EQ(letter_at(op, 1), Letter::Y);
  EXPECT_EQ(letter_at(op, 2), Letter::Z);
  EXPECT_THROW(letter_at(op, 3), std::out_of_range);
}

TEST(Pauli, ParseRejectsUnknownLetters) { EXPECT_THROW(PauliOp::parse("XQ"), ParameterError); }

// Random operators spanning several 64-bit words.
TEST(Pauli, PropertiesAgainstLetterwiseRules) {
  CounterRng rng(7);
  const char letters[] = {'I', 'X', 'Z', 'Y'};
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.below(150);
    std::string a(n, 'I'), b(n, 'I');
    for (std::size_t q = 0; q < n; ++q) {
      a[q] = letters[rng.below(4)];
      b[q] = letters[rng.below(4)];
    }
    const auto pa = PauliOp::parse(a), pb = PauliOp::parse(b);
    ASSERT_EQ(pa.to_string(), a);
    int anti = 0;
    std::size_t wa = 0;
    std::string prod(n, 'I');
    for (std::size_t q = 0; q < n; ++q) {
      anti += a[q] != 'I' && b[q] != 'I' && a[q] != b[q];
      wa += a[q] != 'I';
      prod[q] = letter_char(letter_from_char(a[q]) * letter_from_char(b[q]));
    }
    EXPECT_EQ(commutes(pa, pb), anti % 2 == 0);
    EXPECT_EQ(pa.weight(), wa);
    EXPECT_EQ((pa * pb).to_string(), prod);
    EXPECT_EQ(pa * pb, pb * pa);
  }
}

}  // namespace
}  // namespace hetqec
