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

#include <random>

#include <benchmark/benchmark.h>

#include "hetqec/code.hpp"
#include "hetqec/decoder.hpp"
#include "hetqec/montecarlo.hpp"
#include "hetqec/noise.hpp"
#include "hetqec/tensor.hpp"

namespace {

using namespace hetqec;

NoiseModel regime_b(const CodeInstance& code) {
  return build_noise_model(code, RegimeBParams{0.3, Bias::finite(10.0), Bias::finite(100.0)},
                           PlacementSpec{PlacementStrategy::kBulkNoisy, std::nullopt, 0});
}

template <bool Parallel>
void BM_RunTrials(benchmark::State& state) {
  const CodeInstance code = build_code(static_cast<int>(state.range(0)), Deformation::kXy);
  const NoiseModel model = regime_b(code);
  const StreamKey key{1, static_cast<std::uint64_t>(state.range(0)), 0, 0};
  DecodeOptions options;
  const std::uint64_t trials = 64;
  for (auto _ : state) {
    const Tally t = Parallel ? run_trials(code, model, key, trials, options)
                             : run_trials_serial(code, model, key, trials, options);
    benchmark::DoNotOptimize(t.fail_x);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * trials));
}
BENCHMARK(BM_RunTrials<false>)->Name("run_trials/serial")->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunTrials<true>)->Name("run_trials/openmp")->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_Svd(benchmark::State& state, SvdBackend backend) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> data(n * 4 * n);
  for (auto& x : data) x = u(rng);
  const DenseTensor m({n, 4 * n}, data);
  for (auto _ : state) benchmark::DoNotOptimize(svd_truncate(m, 16, backend).discarded_weight);
}
BENCHMARK_CAPTURE(BM_Svd, gram, SvdBackend::kGram)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_Svd, jacobi, SvdBackend::kJacobi)->Arg(16)->Arg(64);

void BM_TnDecode(benchmark::State& state, SvdBackend backend) {
  const CodeInstance code = build_code(static_cast<int>(state.range(0)), Deformation::kXy);
  const Decoder decoder(code, regime_b(code));
  Syndrome s(code.num_stabilizers(), 0);
  for (std::size_t i = 0; i < s.size(); i += 3) s[i] = 1;
  for (auto _ : state) benchmark::DoNotOptimize(decoder.tn(s, 16, backend).log_pi[0]);
}
BENCHMARK_CAPTURE(BM_TnDecode, gram, SvdBackend::kGram)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TnDecode, jacobi, SvdBackend::kJacobi)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
