// Copyright 2026 The RSC Authors.
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

#include <vector>

#include "rsc/clustering.h"
#include "rsc/dcsbm.h"
#include "rsc/harness.h"
#include "rsc/random.h"
#include "rsc/sparse_graph.h"
#include "rsc/spectral.h"

namespace rsc {
namespace {

DcsbmParams PlantedModel(int n, double avg_degree) {
  DcsbmParams p;
  p.num_blocks = 3;
  p.membership = BalancedMembership(n, 3);
  p.block_matrix = CalibratePlantedPartition(3, n, 3.0, avg_degree);
  p.theta = PowerLawTheta(p.membership, 3, 2.5, 1.0, 7);
  return p;
}

void BM_SampleGraph(benchmark::State& state) {
  const DcsbmParams p = PlantedModel(static_cast<int>(state.range(0)), 8.0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SampleGraph(p, ++seed).graph.num_edges());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleGraph)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

void BM_LaplacianMatvec(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SparseGraph g = SampleGraph(PlantedModel(n, 20.0), 1).graph;
  const RegLaplacianOp op(g, g.AverageDegree(), 1.0 / n);
  std::vector<double> x(n, 1.0), y(n);
  for (auto _ : state) {
    op.Apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * (g.volume() + n));
}
BENCHMARK(BM_LaplacianMatvec)->RangeMultiplier(4)->Range(1024, 16384);

void BM_TopKEigen(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SparseGraph g = SampleGraph(PlantedModel(n, 8.0), 2).graph;
  const RegLaplacianOp op(g, g.AverageDegree());
  EigenOptions options;
  options.method = state.range(1) ? EigenMethod::kLanczos : EigenMethod::kDense;
  for (auto _ : state) {
    benchmark::DoNotOptimize(TopKEigen(op, 3, options).values[0]);
  }
}
BENCHMARK(BM_TopKEigen)
    ->ArgsProduct({{300, 900}, {0, 1}})
    ->Args({4096, 1})
    ->Unit(benchmark::kMillisecond);

void BM_KMeans(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  Eigen::MatrixXd points(n, 3);
  for (int i = 0; i < n; ++i) {
    for (int d = 0; d < 3; ++d) points(i, d) = (i % 3 == d) + 0.3 * StandardNormal(rng);
  }
  KMeansOptions options;
  options.restarts = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(KMeans(points, 3, options).inertia);
  }
}
BENCHMARK(BM_KMeans)->ArgsProduct({{900, 4096}, {1, 20}})->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  const SparseGraph g = SampleGraph(Experiment1Model(2.0, 1), 1).graph;
  PipelineConfig config;
  config.method = static_cast<Method>(state.range(0));
  config.num_clusters = 3;
  config.isolated = IsolatedPolicy::kDrop;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunPipeline(g, config).labels.data());
  }
  state.SetLabel(std::string(MethodName(config.method)));
}
BENCHMARK(BM_Pipeline)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace rsc

BENCHMARK_MAIN();
