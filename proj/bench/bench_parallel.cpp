/* Copyright 2026 The hoca Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

// Serial versus OpenMP timings for the parallel kernels.
#include "hoca/audit.hpp"
#include "hoca/graphs.hpp"
#include "hoca/sampling.hpp"
#include "hoca/transfer.hpp"

#include <benchmark/benchmark.h>

using namespace hoca;

namespace {

void transfer_tree_sum(benchmark::State& state)
{
    const bool parallel = state.range(0) != 0;
    TransferContext ctx(2, 4);
    const auto basis = polyvector_basis(2, 1);
    std::vector<PolyVector> in{basis[1], basis[2], basis[3]};
    for (auto _ : state)
        benchmark::DoNotOptimize(ctx.psi_raw(in, parallel));
}
BENCHMARK(transfer_tree_sum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void graph_evaluation(benchmark::State& state)
{
    const bool parallel = state.range(0) != 0;
    Sampler s(3);
    const std::vector<int> degs{2, 2};
    const auto graphs = enumerate_graphs(degs, 2, true);
    std::vector<PolyVector> in{s.homogeneous_polyvector(3, 3, 2, 3), s.homogeneous_polyvector(3, 3, 2, 3)};
    for (auto _ : state)
        for (const auto& g : graphs)
            benchmark::DoNotOptimize(evaluate_graph_op(g, in, parallel));
}
BENCHMARK(graph_evaluation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void audit(benchmark::State& state)
{
    const bool parallel = state.range(0) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_audit(42, parallel));
}
BENCHMARK(audit)->Arg(0)->Arg(1)->Unit(benchmark::kSecond)->Iterations(1);

} // namespace

BENCHMARK_MAIN();
