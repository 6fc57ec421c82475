// SPDX-License-Identifier: Apache-2.0
//
// xlmimo - link-level simulator for XL-MIMO antenna selection
// Copyright (C) 2026 The xlmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "xlmimo/engine.hpp"
#include "xlmimo/estimation.hpp"
#include "xlmimo/ldl.hpp"
#include "xlmimo/selection.hpp"

using namespace xlmimo;

namespace {

CMatrix random_matrix(int rows, int cols, std::uint64_t seed)
{
    RandomStream rng(seed, 0, Stage::test);
    CMatrix A(rows, cols);
    for (Eigen::Index i = 0; i < A.size(); ++i)
        A.data()[i] = rng.complex_normal();
    return A;
}

void BM_RankAntennas(benchmark::State &state)
{
    const CMatrix H = random_matrix(100, static_cast<int>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(rank_antennas(H));
}
BENCHMARK(BM_RankAntennas)->Arg(4)->Arg(40);

void BM_LdlSolve(benchmark::State &state)
{
    const int K = static_cast<int>(state.range(0));
    const CMatrix B = random_matrix(2 * K, K, 2);
    const CMatrix G = B.adjoint() * B;
    const CVector e = CVector::Unit(K, 0);
    for (auto _ : state)
    {
        const LdlFactorization f(G);
        benchmark::DoNotOptimize(f.solve(e));
    }
}
BENCHMARK(BM_LdlSolve)->Arg(4)->Arg(16)->Arg(40);

void BM_CombineZf(benchmark::State &state)
{
    const int K = static_cast<int>(state.range(0));
    const int N = static_cast<int>(state.range(1));
    const CMatrix H = random_matrix(100, K, 3);
    std::vector<int> D(N);
    std::iota(D.begin(), D.end(), 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(combine_zf(H, D, 0));
}
BENCHMARK(BM_CombineZf)->Args({4, 6})->Args({4, 100})->Args({40, 60});

void BM_PilotPhase(benchmark::State &state)
{
    const int K = static_cast<int>(state.range(0));
    const CMatrix H = random_matrix(100, K, 4);
    const PilotCodebook pilots = pilot_codebook(K, K);
    RandomStream rng(1, 0, Stage::pilot_noise);
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_pilot_phase(H, pilots, 0.1, 1e-13, rng));
}
BENCHMARK(BM_PilotPhase)->Arg(4)->Arg(40);

void BM_PrepareRealization(benchmark::State &state)
{
    SystemConfig cfg;
    cfg.K = static_cast<int>(state.range(0));
    std::uint64_t index = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(prepare_realization(cfg, index++));
}
BENCHMARK(BM_PrepareRealization)->Arg(4)->Arg(40);

void BM_EvaluatePoint(benchmark::State &state)
{
    SystemConfig cfg;
    cfg.K = static_cast<int>(state.range(0));
    const int N = static_cast<int>(state.range(1));
    const Scheme scheme = state.range(2) ? Scheme::zf : Scheme::mr;
    const FrameStructure frame = derive_frame(cfg);
    const RealizationState s = prepare_realization(cfg, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_point(s, cfg, frame, N, scheme, true));
}
BENCHMARK(BM_EvaluatePoint)
    ->Args({4, 1, 0})
    ->Args({4, 100, 0})
    ->Args({4, 6, 1})
    ->Args({40, 50, 0})
    ->Args({40, 60, 1});

} // namespace

BENCHMARK_MAIN();
