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

#ifndef HETQEC_VERIFY_HPP
#define HETQEC_VERIFY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hetqec/code.hpp"
#include "hetqec/noise.hpp"

namespace hetqec {

struct NamedModel {
  std::string name;
  RegimeParams regime;
  std::optional<PlacementSpec> placement;
};

/// The three d = 3 reference models: depolarizing p = 0.1; regime A with
/// eta = 100, p_noisy = 0.2, ratio 10, BulkNoisy; regime B with
/// eta_high = 100, p = 0.3, BulkNoisy.
std::vector<NamedModel> reference_models();

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs exact enumeration and the tensor-network decoder on every d = 3
/// syndrome of the XY code for each reference model: argmax agreement,
/// log-likelihood agreement, normalization and syndrome consistency.
std::vector<VerifyCheck> verify_d3_oracle(std::size_t chi = 16);

}  // namespace hetqec

#endif  // HETQEC_VERIFY_HPP
