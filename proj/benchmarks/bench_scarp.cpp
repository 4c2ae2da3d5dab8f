// Copyright 2026 The SCARP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "scarp/branch_and_cut.hpp"
#include "scarp/formulation.hpp"
#include "scarp/generate.hpp"
#include "scarp/repair.hpp"
#include "scarp/simplex.hpp"
#include "scarp/structure.hpp"

namespace {

using namespace scarp;

const OrchardSpec& spec_named(const std::string& name) {
  static const std::vector<OrchardSpec> specs = reference_orchards();
  for (const OrchardSpec& s : specs)
    if (s.name == name) return s;
  throw Error("no reference orchard " + name);
}

void BM_AllPairsShortestPaths(benchmark::State& state) {
  const char* names[] = {"A", "D", "G"};
  const Instance g = generate_orchard(spec_named(names[state.range(0)]));
  for (auto _ : state) benchmark::DoNotOptimize(dijkstra_all(g));
  state.SetLabel(g.name());
}
BENCHMARK(BM_AllPairsShortestPaths)->DenseRange(0, 2);

void BM_RootRelaxation(benchmark::State& state) {
  const char* names[] = {"A", "B", "LD_1"};
  const Instance g = generate_orchard(spec_named(names[state.range(0)]));
  const Model m = build_large(g, dijkstra_all(g));
  DenseSimplex lp;
  long iterations = 0;
  for (auto _ : state) {
    const LpResult r = lp.solve(m);
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["pivots"] = static_cast<double>(iterations);
  state.SetLabel(g.name());
}
BENCHMARK(BM_RootRelaxation)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const Instance g = counterexample_instance();
  const auto f = state.range(0) == 0 ? Formulation::kBasic : Formulation::kLarge;
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_solve(g, f));
}
BENCHMARK(BM_Oracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CycleCancellation(benchmark::State& state) {
  // Dense random spray among robots so the incidence graph has many cycles.
  const int robots = static_cast<int>(state.range(0));
  const int edges = 2 * robots;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> amount(0.5, 2.0);
  SprayMatrix y(static_cast<size_t>(robots), std::vector<double>(static_cast<size_t>(edges)));
  for (auto& row : y)
    for (double& v : row) v = amount(rng);
  for (auto _ : state) benchmark::DoNotOptimize(cancel_cycles(y));
}
BENCHMARK(BM_CycleCancellation)->RangeMultiplier(2)->Range(4, 32);

void BM_GreedyRouting(benchmark::State& state) {
  const Instance g = generate_orchard(spec_named("D"));
  const ShortestPathTable spt = dijkstra_all(g);
  const Model m = build_basic(g);
  DenseSimplex lp;
  const LpResult root = lp.solve(m);
  std::vector<double> lower;
  std::vector<double> upper;
  for (const Column& c : m.columns) {
    lower.push_back(c.lower);
    upper.push_back(c.upper);
  }
  for (auto _ : state) benchmark::DoNotOptimize(greedy_routing(m, g, spt, root.x, lower, upper));
}
BENCHMARK(BM_GreedyRouting)->Unit(benchmark::kMicrosecond);

void BM_SolveCounterexample(benchmark::State& state) {
  const Instance g = counterexample_instance();
  const Model m = build_basic(g);
  SolveParams params;
  params.repair = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(solve(m, g, params).ub);
}
BENCHMARK(BM_SolveCounterexample)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
