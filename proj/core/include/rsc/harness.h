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

#ifndef RSC_HARNESS_H_
#define RSC_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rsc/dcsbm.h"
#include "rsc/sparse_graph.h"

namespace rsc {

// Harness-only method: RSC scored on the high-leverage set S of the
// thresholded variant.
inline constexpr std::string_view kRscOnS = "RSC_ON_S";

enum class Experiment { kDegreeHeterogeneity, kSparsity };

std::string_view ExperimentName(Experiment which);

struct ExperimentSpec {
  Experiment which = Experiment::kDegreeHeterogeneity;
  // Pareto exponents for the heterogeneity sweep, average degrees for the
  // sparsity sweep.
  std::vector<double> grid;
  int reps = 30;
  std::vector<std::string> methods;
  std::uint64_t seed = 1;
  int workers = 1;
  int kmeans_restarts = 20;
  bool keep_labels = false;

  void Validate() const;
};

// beta in {2, ..., 3.5}, 30 reps, all six methods.
ExperimentSpec DefaultExperiment1();
// average degree in {10, 21, 30}, 50 reps, the five pipelines.
ExperimentSpec DefaultExperiment2();

// K = 3, 300 nodes per block, SNR 3, expected average degree 8, Pareto theta
// with x_min = 1.
DcsbmParams Experiment1Model(double beta, std::uint64_t theta_seed);
// K = 3, N = 1500, SNR 3, uniform theta.
DcsbmParams Experiment2Model(double avg_degree);

// The model a replicate with this seed sampled from; lets persisted labels be
// re-scored against their ground truth.
DcsbmParams ReplicateModel(Experiment which, double grid_value,
                           std::uint64_t replicate_seed);

struct ResultRow {
  std::string experiment;
  std::string method;
  double grid_value = 0.0;
  int replicate = 0;
  std::uint64_t seed = 0;
  double rate = 0.0;
  int misclustered = 0;
  int evaluated = 0;  // nodes scored (|S| for RSC_ON_S)
  bool degenerate = false;
  double runtime_ms = 0.0;
  std::string status = "ok";
  std::vector<int> labels;  // filled when keep_labels
};

// Rows come back ordered by (grid index, replicate, method order in spec),
// independent of the number of workers.
std::vector<ResultRow> RunExperiment(const ExperimentSpec& spec);

struct MethodSummary {
  std::string method;
  double grid_value = 0.0;
  int reps = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation
};
std::vector<MethodSummary> Summarize(std::span<const ResultRow> rows);

struct CsvOptions {
  bool include_timing = false;
  bool include_labels = false;
};
// Columns: experiment,method,grid,replicate,seed,rate,misclustered,evaluated,
// degenerate,status[,runtime_ms][,labels]
void WriteResultsCsv(std::ostream& out, std::span<const ResultRow> rows,
                     const CsvOptions& options = {});
// Columns: method,grid,reps,mean_rate,sd_rate
void WriteSummaryCsv(std::ostream& out, std::span<const MethodSummary> rows);

// Edges (source/target) and node (id, value) pairs pulled out of a GML file.
struct GmlContents {
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::pair<std::string, std::string>> node_values;
};
GmlContents ExtractGml(std::istream& in);

// "node-id label" per line, whitespace or comma separated; '#' comments.
std::vector<std::pair<std::string, std::string>> ReadLabels(std::istream& in);

struct BlogOptions {
  std::vector<double> tau_grid;
  double top_fraction = 0.9;
  std::uint64_t seed = 1;
  int kmeans_restarts = 20;
};

struct BlogTauResult {
  double tau = 0.0;
  int misclustered = 0;
  bool degenerate = false;
};

struct BlogReport {
  int input_nodes = 0;
  int component_size = 0;
  double average_degree = 0.0;
  int sc_largest_block = 0;
  int sc_misclustered = 0;
  bool sc_degenerate = false;
  std::vector<BlogTauResult> rsc;
  double default_tau = 0.0;
  int rsc_default_misclustered = 0;
  int top_size = 0;
  int top_misclustered = 0;
};

// Largest connected component, SC, RSC over the tau grid and at the average
// degree, and RSC restricted to the top `top_fraction` of nodes by leverage.
// Labels must name exactly two classes.
BlogReport RunBlog(const SparseGraph& graph,
                   std::span<const std::pair<std::string, std::string>> labels,
                   const BlogOptions& options);
void WriteBlogReport(std::ostream& out, const BlogReport& report);

// TSV of population eigenvector rows before and after projection:
// node, block, x_1..x_K, xstar_1..xstar_K. Requires K <= 3.
void EmitStarScatter(const DcsbmParams& params, double tau, std::ostream& out);

}  // namespace rsc

#endif  // RSC_HARNESS_H_
