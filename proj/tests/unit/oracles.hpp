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

// Test-only reference routines that avoid the library's bit-packed paths.
#ifndef HETQEC_TESTS_ORACLES_HPP
#define HETQEC_TESTS_ORACLES_HPP

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "hetqec/code.hpp"

namespace hetqec::oracle {

/// Two single-qubit letters anticommute iff both are non-identity and differ.
inline bool letters_anticommute(char a, char b) { return a != 'I' && b != 'I' && a != b; }

inline bool strings_commute(const std::string& a, const std::string& b) {
  int n = 0;
  for (std::size_t q = 0; q < a.size(); ++q) n += letters_anticommute(a[q], b[q]);
  return n % 2 == 0;
}

inline char letter_product(char a, char b) {
  if (a == 'I') return b;
  if (b == 'I') return a;
  if (a == b) return 'I';
  for (char c : {'X', 'Y', 'Z'}) {
    if (c != a && c != b) return c;
  }
  return 'I';
}

inline std::string string_product(const std::string& a, const std::string& b) {
  std::string r(a.size(), 'I');
  for (std::size_t q = 0; q < a.size(); ++q) r[q] = letter_product(a[q], b[q]);
  return r;
}

inline int string_weight(const std::string& a) {
  int w = 0;
  for (char c : a) w += c != 'I';
  return w;
}

inline std::vector<std::string> stabilizer_strings(const CodeInstance& code) {
  std::vector<std::string> out;
  for (const auto& s : code.stabilizers()) out.push_back(s.op.to_string());
  return out;
}

/// Every element of the stabilizer group, by enumeration of generator subsets.
inline std::set<std::string> stabilizer_group(const CodeInstance& code) {
  const auto gens = stabilizer_strings(code);
  std::set<std::string> group;
  const std::size_t k = gens.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::string e(code.num_qubits(), 'I');
    for (std::size_t i = 0; i < k; ++i) {
      if ((mask >> i) & 1u) e = string_product(e, gens[i]);
    }
    group.insert(e);
  }
  return group;
}

inline std::string syndrome_string(const CodeInstance& code, const std::string& error) {
  std::string s;
  for (const auto& g : stabilizer_strings(code)) s += strings_commute(g, error) ? '0' : '1';
  return s;
}

}  // namespace hetqec::oracle

#endif  // HETQEC_TESTS_ORACLES_HPP
