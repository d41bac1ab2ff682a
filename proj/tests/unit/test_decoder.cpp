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

#include "hetqec/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <gtest/gtest.h>

#include "hetqec/errors.hpp"
#include "hetqec/verify.hpp"
#include "oracles.hpp"

namespace hetqec {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Syndrome syndrome_from_bits(std::uint64_t bits, std::size_t m) {
  Syndrome s(m);
  for (std::size_t i = 0; i < m; ++i) s[i] = static_cast<std::uint8_t>((bits >> i) & 1u);
  return s;
}

NoiseModel depolarizing(const CodeInstance& code, double p) {
  return build_noise_model(code, HomogeneousParams{p, Bias::finite(0.5)}, std::nullopt);
}

// Coset probabilities by summing every one of the 4^9 errors, keyed by
// syndrome string and indexed by Letter value.
std::map<std::string, std::array<double, 4>> brute_force_cosets(const CodeInstance& code, const NoiseModel& model) {
  const auto group = oracle::stabilizer_group(code);
  std::array<std::string, 4> reps;
  for (Letter l : {Letter::I, Letter::X, Letter::Z, Letter::Y}) {
    reps[static_cast<std::size_t>(l)] = code.logical_representative(l).to_string();
  }
  std::map<std::string, std::array<double, 4>> out;
  const char letters[] = {'I', 'X', 'Z', 'Y'};
  std::string e(9, 'I');
  for (unsigned word = 0; word < (1u << 18); ++word) {
    double prob = 1.0;
    for (unsigned q = 0; q < 9; ++q) {
      const unsigned l = (word >> (2 * q)) & 3u;
      e[q] = letters[l];
      prob *= model.letter_probs(q)[l];
    }
    const std::string s = oracle::syndrome_string(code, e);
    const std::string t = pure_error(code, parse_syndrome(s)).to_string();
    const std::string residual = oracle::string_product(e, t);
    int cls = -1;
    for (int c = 0; c < 4; ++c) {
      if (group.count(oracle::string_product(residual, reps[c]))) cls = c;
    }
    EXPECT_GE(cls, 0);
    auto [it, fresh] = out.try_emplace(s, std::array<double, 4>{});
    it->second[cls] += prob;
  }
  return out;
}

TEST(ExactDecoder, MatchesBruteForceCosetSums) {
  const auto code = build_code(3, Deformation::kXy);
  const auto model = build_noise_model(code, RegimeAParams{0.25, 10.0, Bias::finite(3.0)},
                                       PlacementSpec{PlacementStrategy::kBoundaryNoisy, std::nullopt, 0});
  const auto oracle_sums = brute_force_cosets(code, model);
  ASSERT_EQ(oracle_sums.size(), 256u);
  const Decoder dec(code, model);
  for (const auto& [s, probs] : oracle_sums) {
    const auto ex = dec.exact(parse_syndrome(s));
    for (std::size_t l = 0; l < 4; ++l) {
      EXPECT_NEAR(ex.log_pi[l], std::log(probs[l]), 1e-10) << s << " class " << l;
    }
  }
}

TEST(TnDecoder, AgreesWithExactOnEveryD3Syndrome) {
  const auto code = build_code(3, Deformation::kXy);
  for (const auto& nm : reference_models()) {
    const Decoder dec(code, build_noise_model(code, nm.regime, nm.placement));
    double total = 0.0;
    for (std::uint64_t bits = 0; bits < 256; ++bits) {
      const auto s = syndrome_from_bits(bits, 8);
      const auto ex = dec.exact(s);
      const auto tn = dec.tn(s, 16);
      ASSERT_EQ(choose_class(ex), choose_class(tn)) << nm.name << " syndrome " << bits;
      for (std::size_t l = 0; l < 4; ++l) {
        if (std::isinf(ex.log_pi[l])) {
          EXPECT_EQ(tn.log_pi[l], kNegInf);
        } else {
          EXPECT_NEAR(tn.log_pi[l], ex.log_pi[l], 1e-6);
        }
        total += std::exp(ex.log_pi[l]);
      }
      EXPECT_EQ(tn.discarded_weight, 0.0);
    }
    EXPECT_NEAR(total, 1.0, 1e-10) << nm.name;
  }
}

TEST(TnDecoder, ExactAndTnCorrectionsAgree) {
  for (auto def : {Deformation::kCss, Deformation::kXy}) {
    const auto code = build_code(3, def);
    const Decoder dec(code, depolarizing(code, 0.1));
    DecodeOptions exact_opt;
    exact_opt.method = DecodeMethod::kExact;
    for (std::uint64_t bits = 0; bits < 256; ++bits) {
      const auto s = syndrome_from_bits(bits, 8);
      const auto a = dec.decode(s, exact_opt);
      const auto b = dec.decode(s);
      EXPECT_EQ(a.op, b.op) << bits;
      EXPECT_EQ(syndrome(code, b.op), s);
      EXPECT_EQ(b.op, pure_error(code, s) * code.logical_representative(b.chosen_class));
    }
  }
}

TEST(TnDecoder, MatchesExactAtDistanceFive) {
  const auto code = build_code(5, Deformation::kXy);
  const auto model = build_noise_model(code, RegimeBParams{0.3, Bias::finite(10), Bias::finite(100)},
                                       PlacementSpec{PlacementStrategy::kBoundaryNoisy, std::nullopt, 0});
  const Decoder dec(code, model);
  CounterRng rng(3);
  for (int rep = 0; rep < 2; ++rep) {
    const auto s = syndrome(code, sample_error(model, rng));
    const auto ex = dec.exact(s, true);
    const auto tn = dec.tn(s, 16);
    EXPECT_EQ(choose_class(ex), choose_class(tn));
    for (std::size_t l = 0; l < 4; ++l) EXPECT_NEAR(tn.log_pi[l], ex.log_pi[l], 1e-9);
  }
}

TEST(TnDecoder, SvdBackendsAgree) {
  const auto code = build_code(7, Deformation::kXy);
  const auto model = depolarizing(code, 0.15);
  const Decoder dec(code, model);
  CounterRng rng(4);
  for (int rep = 0; rep < 5; ++rep) {
    const auto s = syndrome(code, sample_error(model, rng));
    const auto a = dec.tn(s, 16, SvdBackend::kGram);
    const auto b = dec.tn(s, 16, SvdBackend::kJacobi);
    for (std::size_t l = 0; l < 4; ++l) EXPECT_NEAR(a.log_pi[l], b.log_pi[l], 1e-8);
  }
}

TEST(TnDecoder, ExactBondExtents) {
  const std::map<int, std::size_t> frozen{{3, 2}, {5, 8}, {7, 32}};
  for (auto [d, extent] : frozen) {
    const auto code = build_code(d, Deformation::kXy);
    EXPECT_EQ(Decoder(code, depolarizing(code, 0.1)).exact_bond_extent(), extent) << "d=" << d;
  }
}

// The lowest-weight coset dominates and the gap grows with slope equal to
// the weight difference (3 at d = 3) in log(1/p).
TEST(TnDecoder, LowNoiseFavoursIdentity) {
  const auto code = build_code(3, Deformation::kCss);
  const Syndrome zero(8, 0);
  const auto gap = [&](double p) {
    const auto c = Decoder(code, depolarizing(code, p)).tn(zero, 16);
    EXPECT_EQ(choose_class(c), Letter::I);
    return c.at(Letter::I) - std::max({c.at(Letter::X), c.at(Letter::Z), c.at(Letter::Y)});
  };
  const double g4 = gap(1e-4), g6 = gap(1e-6);
  EXPECT_GT(g6, g4);
  EXPECT_NEAR((g6 - g4) / std::log(100.0), 3.0, 0.01);
  EXPECT_TRUE(decode(code, depolarizing(code, 1e-3), zero).op.is_identity());
}

TEST(TnDecoder, CorrectsEverySingleQubitError) {
  const auto code = build_code(3, Deformation::kCss);
  const auto model = depolarizing(code, 0.05);
  const Decoder dec(code, model);
  DecodeOptions exact_opt;
  exact_opt.method = DecodeMethod::kExact;
  for (std::size_t q = 0; q < 9; ++q) {
    for (Letter l : {Letter::X, Letter::Z, Letter::Y}) {
      PauliOp e(9);
      e.set_letter(q, l);
      const auto s = syndrome(code, e);
      for (const auto& opt : {DecodeOptions{}, exact_opt}) {
        const auto c = dec.decode(s, opt);
        EXPECT_EQ(logical_class(code, c.op * e), Letter::I) << "qubit " << q << " " << letter_char(l);
      }
    }
  }
}

TEST(TnDecoder, PureDephasingUsesSentinelsNotNan) {
  for (int d : {3, 5}) {
    const auto code = build_code(d, Deformation::kXy);
    const auto model = build_noise_model(code, HomogeneousParams{0.2, Bias::infinite()}, std::nullopt);
    const Decoder dec(code, model);
    CounterRng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
      const auto s = syndrome(code, sample_error(model, rng));
      const auto tn = dec.tn(s, 16);
      int finite = 0;
      for (double v : tn.log_pi) {
        EXPECT_FALSE(std::isnan(v));
        finite += std::isfinite(v);
      }
      EXPECT_GE(finite, 1);
      if (d == 3) {
        // Empty cosets come out as -inf or as rounding residue far below the best class.
        const auto ex = dec.exact(s);
        EXPECT_EQ(choose_class(ex), choose_class(tn));
        const double best = *std::max_element(tn.log_pi.begin(), tn.log_pi.end());
        for (std::size_t l = 0; l < 4; ++l) {
          if (std::isinf(ex.log_pi[l])) {
            EXPECT_LT(tn.log_pi[l], best + std::log(1e-12));
          } else {
            EXPECT_NEAR(tn.log_pi[l], ex.log_pi[l], 1e-9);
          }
        }
      }
    }
  }
}

TEST(TnDecoder, Preconditions) {
  const auto code5 = build_code(5, Deformation::kXy);
  const Decoder dec5(code5, depolarizing(code5, 0.1));
  EXPECT_THROW(dec5.exact(Syndrome(24, 0)), PreconditionError);
  const auto code7 = build_code(7, Deformation::kXy);
  EXPECT_THROW(Decoder(code7, depolarizing(code7, 0.1)).exact(Syndrome(48, 0), true), PreconditionError);
  EXPECT_THROW(dec5.tn(Syndrome(23, 0), 16), DimensionError);
  EXPECT_THROW(dec5.tn(Syndrome(24, 0), 0), ParameterError);
  const auto code3 = build_code(3, Deformation::kXy);
  EXPECT_THROW(Decoder(code5, depolarizing(code3, 0.1)), DimensionError);
  EXPECT_THROW(parse_decode_method("bp"), ParameterError);
}

TEST(ChooseClass, TieBreakOrder) {
  CosetLikelihoods c;
  c.log_pi = {-1.0, -1.0, -1.0, -1.0};
  EXPECT_EQ(choose_class(c), Letter::I);
  c.log_pi = {-2.0, -1.0, -1.0 + 1e-12, -1.0};
  EXPECT_EQ(choose_class(c), Letter::X);
  c.log_pi = {-2.0, -3.0, -1.0, -1.0};
  EXPECT_EQ(choose_class(c), Letter::Z);
  c.log_pi = {kNegInf, kNegInf, kNegInf, -5.0};
  EXPECT_EQ(choose_class(c), Letter::Y);
  c.log_pi = {-1.0, -1.0 + 1e-6, -3.0, -3.0};
  EXPECT_EQ(choose_class(c), Letter::X);
}

}  // namespace
}  // namespace hetqec
