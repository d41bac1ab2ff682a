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

#include "hetqec/verify.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "hetqec/decoder.hpp"

namespace hetqec {

std::vector<NamedModel> reference_models() {
  const PlacementSpec bulk{PlacementStrategy::kBulkNoisy, std::nullopt, 0};
  return {
      {"depolarizing p=0.1", HomogeneousParams{0.1, Bias::finite(0.5)}, std::nullopt},
      {"regime A eta=100 p_noisy=0.2 ratio=10 BulkNoisy", RegimeAParams{0.2, 10.0, Bias::finite(100.0)}, bulk},
      {"regime B eta_high=100 p=0.3 BulkNoisy", RegimeBParams{0.3, Bias::finite(10.0), Bias::finite(100.0)}, bulk},
  };
}

std::vector<VerifyCheck> verify_d3_oracle(std::size_t chi) {
  const CodeInstance code = build_code(3, Deformation::kXy);
  const std::size_t m = code.num_stabilizers();
  std::vector<VerifyCheck> out;
  for (const auto& nm : reference_models()) {
    const NoiseModel model = build_noise_model(code, nm.regime, nm.placement);
    const Decoder dec(code, model);
    std::size_t argmax_mismatch = 0, syndrome_mismatch = 0, inf_mismatch = 0;
    double max_diff = 0.0, total = 0.0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
      Syndrome s(m);
      for (std::size_t i = 0; i < m; ++i) s[i] = static_cast<std::uint8_t>((bits >> i) & 1u);
      const CosetLikelihoods ex = dec.exact(s);
      const CosetLikelihoods tn = dec.tn(s, chi);
      if (choose_class(ex) != choose_class(tn)) ++argmax_mismatch;
      for (std::size_t l = 0; l < 4; ++l) {
        total += std::exp(ex.log_pi[l]);
        const bool fa = std::isfinite(ex.log_pi[l]), fb = std::isfinite(tn.log_pi[l]);
        if (fa != fb) {
          ++inf_mismatch;
        } else if (fa) {
          max_diff = std::max(max_diff, std::abs(ex.log_pi[l] - tn.log_pi[l]));
        }
      }
      DecodeOptions opt;
      opt.chi = chi;
      if (syndrome(code, dec.decode(s, opt).op) != s) ++syndrome_mismatch;
    }
    out.push_back({nm.name + ": argmax agreement", argmax_mismatch == 0,
                   fmt::format("{} of {} syndromes differ", argmax_mismatch, std::uint64_t{1} << m)});
    out.push_back({nm.name + ": log-likelihood agreement", max_diff <= 1e-6 && inf_mismatch == 0,
                   fmt::format("max |delta log pi| = {:.3e}, {} empty-coset mismatches", max_diff, inf_mismatch)});
    out.push_back({nm.name + ": normalization", std::abs(total - 1.0) <= 1e-10,
                   fmt::format("sum of coset probabilities = {:.15f}", total)});
    out.push_back({nm.name + ": syndrome consistency", syndrome_mismatch == 0,
                   fmt::format("{} corrections with the wrong syndrome", syndrome_mismatch)});
  }
  return out;
}

}  // namespace hetqec
