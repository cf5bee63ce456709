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

#include "rsc/harness.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "rsc/clustering.h"
#include "rsc/error.h"
#include "rsc/evaluation.h"
#include "rsc/parallel.h"
#include "rsc/random.h"
#include "rsc/text_format.h"

namespace rsc {
namespace {

constexpr int kBlocks = 3;
constexpr double kSnr = 3.0;
constexpr std::uint64_t kThetaStream = 0x7e7a;
constexpr std::uint64_t kGraphStream = 0x9a9b;

std::vector<std::string> AllMethods(Experiment which) {
  std::vector<std::string> out = {"SC", "RSC", "RSC_WP", "T_RSC", "SCP"};
  if (which == Experiment::kDegreeHeterogeneity) out.emplace_back(kRscOnS);
  return out;
}

bool KnownMethod(std::string_view name) {
  return name == kRscOnS || ParseMethod(name).has_value();
}

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string_view ExperimentName(Experiment which) {
  return which == Experiment::kDegreeHeterogeneity ? "exp1" : "exp2";
}

void ExperimentSpec::Validate() const {
  if (reps < 1) throw InvalidArgument("reps must be >= 1");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  if (kmeans_restarts < 1) throw InvalidArgument("k-means restarts must be >= 1");
  for (const auto& m : methods) {
    if (!KnownMethod(m)) throw InvalidArgument("unknown method '" + m + "'");
  }
  for (double g : grid) {
    if (which == Experiment::kDegreeHeterogeneity && !(g > 1.0)) {
      throw InvalidArgument("Pareto exponent must be > 1");
    }
    if (which == Experiment::kSparsity && !(g > 0.0)) {
      throw InvalidArgument("average degree must be positive");
    }
  }
}

ExperimentSpec DefaultExperiment1() {
  ExperimentSpec spec;
  spec.which = Experiment::kDegreeHeterogeneity;
  spec.grid = {2.0, 2.25, 2.5, 2.75, 3.0, 3.25, 3.5};
  spec.reps = 30;
  spec.methods = AllMethods(spec.which);
  return spec;
}

ExperimentSpec DefaultExperiment2() {
  ExperimentSpec spec;
  spec.which = Experiment::kSparsity;
  spec.grid = {10.0, 21.0, 30.0};
  spec.reps = 50;
  spec.methods = AllMethods(spec.which);
  return spec;
}

DcsbmParams Experiment1Model(double beta, std::uint64_t theta_seed) {
  DcsbmParams params;
  params.num_blocks = kBlocks;
  params.membership = BalancedMembership(kBlocks * 300, kBlocks);
  params.block_matrix =
      CalibratePlantedPartition(kBlocks, kBlocks * 300, kSnr, 8.0);
  params.theta =
      PowerLawTheta(params.membership, kBlocks, beta, 1.0, theta_seed);
  return params;
}

DcsbmParams Experiment2Model(double avg_degree) {
  constexpr int n = 1500;
  DcsbmParams params;
  params.num_blocks = kBlocks;
  params.membership = BalancedMembership(n, kBlocks);
  params.block_matrix = CalibratePlantedPartition(kBlocks, n, kSnr, avg_degree);
  params.theta.assign(n, 1.0 / (n / kBlocks));
  return params;
}

DcsbmParams ReplicateModel(Experiment which, double grid_value,
                           std::uint64_t replicate_seed) {
  return which == Experiment::kDegreeHeterogeneity
             ? Experiment1Model(grid_value,
                                DeriveSeed(replicate_seed, kThetaStream))
             : Experiment2Model(grid_value);
}

namespace {

struct Scored {
  MisclusterReport report;
  int evaluated = 0;
};

Scored ScoreSubset(std::span<const int> labels, std::span<const int> truth,
                   std::span<const int> subset, int k) {
  std::vector<int> est, tru;
  est.reserve(subset.size());
  tru.reserve(subset.size());
  for (int i : subset) {
    est.push_back(labels[i]);
    tru.push_back(truth[i]);
  }
  return {MisclusterPermutation(est, tru, k), static_cast<int>(subset.size())};
}

std::vector<ResultRow> RunReplicate(const ExperimentSpec& spec, double grid,
                                    int replicate, std::uint64_t seed) {
  const DcsbmParams params = ReplicateModel(spec.which, grid, seed);
  const SampledGraph sample = SampleGraph(params, DeriveSeed(seed, kGraphStream));
  const SparseGraph& graph = sample.graph;
  const int n = graph.num_nodes();

  PipelineConfig base;
  base.num_clusters = params.num_blocks;
  base.tau = TauPolicy::AverageDegree();
  base.gamma = 1.0;
  base.kmeans_restarts = spec.kmeans_restarts;
  base.seed = seed;
  base.isolated = IsolatedPolicy::kDrop;

  // The thresholded run backs both T_RSC and RSC_ON_S.
  std::optional<ClusterResult> thresholded;
  double thresholded_ms = 0.0;
  std::string thresholded_error;

  std::vector<ResultRow> rows;
  for (const std::string& name : spec.methods) {
    ResultRow row;
    row.experiment = std::string(ExperimentName(spec.which));
    row.method = name;
    row.grid_value = grid;
    row.replicate = replicate;
    row.seed = seed;
    row.evaluated = n;
    try {
      const bool on_s = name == kRscOnS;
      const Method method = on_s ? Method::kThresholdedRSC : *ParseMethod(name);
      const ClusterResult* result = nullptr;
      std::optional<ClusterResult> local;
      if (method == Method::kThresholdedRSC) {
        if (!thresholded && thresholded_error.empty()) {
          const auto start = std::chrono::steady_clock::now();
          PipelineConfig config = base;
          config.method = method;
          try {
            thresholded = RunPipeline(graph, config);
          } catch (const Error& e) {
            thresholded_error = e.what();
          }
          thresholded_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
        }
        if (!thresholded) throw Error(thresholded_error);
        result = &*thresholded;
        row.runtime_ms = thresholded_ms;
      } else {
        const auto start = std::chrono::steady_clock::now();
        PipelineConfig config = base;
        config.method = method;
        local = RunPipeline(graph, config);
        row.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        result = &*local;
      }
      Scored scored;
      if (on_s) {
        scored = ScoreSubset(result->labels, params.membership,
                             *result->thresholded_set, params.num_blocks);
      } else {
        scored = {MisclusterPermutation(result->labels, params.membership,
                                        params.num_blocks),
                  n};
      }
      row.rate = scored.report.rate;
      row.misclustered = scored.report.count;
      row.evaluated = scored.evaluated;
      row.degenerate = scored.report.degenerate;
      if (spec.keep_labels) row.labels = result->labels;
    } catch (const Error& e) {
      row.status = e.what();
      row.rate = 1.0;
      row.misclustered = n;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> RunExperiment(const ExperimentSpec& spec_in) {
  ExperimentSpec spec = spec_in;
  const ExperimentSpec defaults = spec.which == Experiment::kDegreeHeterogeneity
                                      ? DefaultExperiment1()
                                      : DefaultExperiment2();
  if (spec.grid.empty()) spec.grid = defaults.grid;
  if (spec.methods.empty()) spec.methods = defaults.methods;
  spec.Validate();

  const std::size_t tasks = spec.grid.size() * static_cast<std::size_t>(spec.reps);
  std::vector<std::vector<ResultRow>> slots(tasks);
  ParallelFor(tasks, spec.workers, [&](std::size_t t) {
    const std::size_t g = t / spec.reps;
    const int r = static_cast<int>(t % spec.reps);
    const std::uint64_t seed = DeriveSeed(spec.seed, g * 1000003ULL + r);
    slots[t] = RunReplicate(spec, spec.grid[g], r, seed);
  });
  std::vector<ResultRow> rows;
  for (auto& slot : slots) {
    for (auto& row : slot) rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MethodSummary> Summarize(std::span<const ResultRow> rows) {
  std::vector<MethodSummary> out;
  std::vector<std::vector<double>> values;
  for (const ResultRow& row : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const MethodSummary& s) {
      return s.method == row.method && s.grid_value == row.grid_value;
    });
    if (it == out.end()) {
      out.push_back({row.method, row.grid_value, 0, 0.0, 0.0});
      values.emplace_back();
      it = out.end() - 1;
    }
    values[it - out.begin()].push_back(row.rate);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& v = values[i];
    out[i].reps = static_cast<int>(v.size());
    out[i].mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - out[i].mean) * (x - out[i].mean);
    out[i].sd = v.size() > 1 ? std::sqrt(ss / (v.size() - 1)) : 0.0;
  }
  return out;
}

void WriteResultsCsv(std::ostream& out, std::span<const ResultRow> rows,
                     const CsvOptions& options) {
  out << "experiment,method,grid,replicate,seed,rate,misclustered,evaluated,"
         "degenerate,status";
  if (options.include_timing) out << ",runtime_ms";
  if (options.include_labels) out << ",labels";
  out << '\n';
  for (const ResultRow& r : rows) {
    out << r.experiment << ',' << r.method << ',' << FormatDouble(r.grid_value)
        << ',' << r.replicate << ',' << r.seed << ',' << FormatDouble(r.rate)
        << ',' << r.misclustered << ',' << r.evaluated << ','
        << (r.degenerate ? 1 : 0) << ',' << CsvField(r.status);
    if (options.include_timing) out << ',' << FormatDouble(r.runtime_ms);
    if (options.include_labels) {
      out << ',';
      for (std::size_t i = 0; i < r.labels.size(); ++i) {
        out << (i ? ";" : "") << r.labels[i];
      }
    }
    out << '\n';
  }
}

void WriteSummaryCsv(std::ostream& out, std::span<const MethodSummary> rows) {
  out << "method,grid,reps,mean_rate,sd_rate\n";
  for (const MethodSummary& s : rows) {
    out << s.method << ',' << FormatDouble(s.grid_value) << ',' << s.reps << ','
        << FormatDouble(s.mean) << ',' << FormatDouble(s.sd) << '\n';
  }
}

namespace {

// Splits GML into tokens: '[' and ']' stand alone, quoted strings are one
// token without their quotes.
std::vector<std::string> GmlTokens(std::istream& in) {
  std::vector<std::string> tokens;
  std::string current;
  char c;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  while (in.get(c)) {
    if (c == '"') {
      flush();
      std::string quoted;
      while (in.get(c) && c != '"') quoted += c;
      if (c != '"') throw ParseError("unterminated string in GML");
      tokens.push_back(std::move(quoted));
    } else if (c == '[' || c == ']') {
      flush();
      tokens.emplace_back(1, c);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      current += c;
    }
  }
  flush();
  return tokens;
}

}  // namespace

GmlContents ExtractGml(std::istream& in) {
  const std::vector<std::string> tokens = GmlTokens(in);
  GmlContents out;
  // Stack of open list keys; fields are read only at depth "graph > node|edge".
  std::vector<std::string> stack;
  std::map<std::string, std::string> fields;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (tok == "]") {
      if (stack.empty()) throw ParseError("unbalanced ']' in GML");
      const std::string closed = stack.back();
      stack.pop_back();
      if (closed == "edge") {
        if (!fields.count("source") || !fields.count("target")) {
          throw ParseError("GML edge without source/target");
        }
        out.edges.emplace_back(fields["source"], fields["target"]);
      } else if (closed == "node" && fields.count("id")) {
        out.node_values.emplace_back(fields["id"], fields.count("value")
                                                       ? fields["value"]
                                                       : std::string());
      }
      if (closed == "edge" || closed == "node") fields.clear();
      continue;
    }
    if (i + 1 >= tokens.size()) break;
    if (tokens[i + 1] == "[") {
      stack.push_back(tok);
      ++i;
      continue;
    }
    if (!stack.empty() && (stack.back() == "node" || stack.back() == "edge")) {
      fields[tok] = tokens[i + 1];
    }
    ++i;
  }
  if (!stack.empty()) throw ParseError("unbalanced '[' in GML");
  return out;
}

std::vector<std::pair<std::string, std::string>> ReadLabels(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::replace(line.begin(), line.end(), ',', ' ');
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::string id, label, extra;
    if (!(tokens >> id >> label) || (tokens >> extra)) {
      throw ParseError("label line " + std::to_string(line_no) +
                       ": expected 'node label'");
    }
    out.emplace_back(std::move(id), std::move(label));
  }
  return out;
}

BlogReport RunBlog(const SparseGraph& graph,
                   std::span<const std::pair<std::string, std::string>> labels,
                   const BlogOptions& options) {
  if (!(options.top_fraction > 0.0 && options.top_fraction <= 1.0)) {
    throw InvalidArgument("top fraction must lie in (0, 1]");
  }
  std::map<std::string, std::string> label_of;
  for (const auto& [id, label] : labels) label_of[id] = label;

  BlogReport report;
  report.input_nodes = graph.num_nodes();
  const Subgraph lcc = LargestConnectedComponent(graph);
  const SparseGraph& g = lcc.graph;
  const int n = g.num_nodes();
  report.component_size = n;
  report.average_degree = g.AverageDegree();

  std::vector<std::string> classes;
  std::vector<int> truth(n);
  for (int i = 0; i < n; ++i) {
    auto it = label_of.find(g.NodeName(i));
    if (it == label_of.end()) {
      throw InvalidArgument("no label for node '" + g.NodeName(i) + "'");
    }
    classes.push_back(it->second);
  }
  std::vector<std::string> distinct = classes;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() != 2) {
    throw InvalidArgument("blog analysis needs exactly two label classes");
  }
  for (int i = 0; i < n; ++i) truth[i] = classes[i] == distinct[0] ? 0 : 1;

  PipelineConfig config;
  config.num_clusters = 2;
  config.kmeans_restarts = options.kmeans_restarts;
  config.seed = options.seed;

  config.method = Method::kSC;
  const ClusterResult sc = RunPipeline(g, config);
  const int ones = static_cast<int>(std::count(sc.labels.begin(), sc.labels.end(), 1));
  report.sc_largest_block = std::max(ones, n - ones);
  const MisclusterReport sc_report = MisclusterPermutation(sc.labels, truth, 2);
  report.sc_misclustered = sc_report.count;
  report.sc_degenerate = sc_report.degenerate;

  config.method = Method::kRSC;
  for (double tau : options.tau_grid) {
    config.tau = TauPolicy::Explicit(tau);
    const ClusterResult r = RunPipeline(g, config);
    const MisclusterReport m = MisclusterPermutation(r.labels, truth, 2);
    report.rsc.push_back({tau, m.count, m.degenerate});
  }

  config.tau = TauPolicy::AverageDegree();
  const ClusterResult rsc = RunPipeline(g, config);
  report.default_tau = rsc.tau;
  report.rsc_default_misclustered =
      MisclusterPermutation(rsc.labels, truth, 2).count;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return rsc.leverage[a] > rsc.leverage[b];
  });
  const int top = static_cast<int>(std::lround(options.top_fraction * n));
  order.resize(top);
  std::sort(order.begin(), order.end());
  Eigen::MatrixXd points(top, 2);
  std::vector<int> top_truth(top);
  for (int r = 0; r < top; ++r) {
    points.row(r) = rsc.x_star.row(order[r]);
    top_truth[r] = truth[order[r]];
  }
  KMeansOptions km;
  km.restarts = options.kmeans_restarts;
  km.seed = DeriveSeed(options.seed, 0x70b);
  const KMeansResult fit = KMeans(points, 2, km);
  report.top_size = top;
  report.top_misclustered = MisclusterPermutation(fit.labels, top_truth, 2).count;
  return report;
}

void WriteBlogReport(std::ostream& out, const BlogReport& r) {
  out << "input_nodes\t" << r.input_nodes << '\n'
      << "component_size\t" << r.component_size << '\n'
      << "average_degree\t" << FormatDouble(r.average_degree) << '\n'
      << "sc_largest_block\t" << r.sc_largest_block << '\n'
      << "sc_misclustered\t" << r.sc_misclustered << '\n'
      << "sc_degenerate\t" << (r.sc_degenerate ? 1 : 0) << '\n';
  for (const BlogTauResult& t : r.rsc) {
    out << "rsc_tau=" << FormatDouble(t.tau) << '\t' << t.misclustered << '\n';
  }
  out << "rsc_default_tau\t" << FormatDouble(r.default_tau) << '\n'
      << "rsc_default_misclustered\t" << r.rsc_default_misclustered << '\n'
      << "top_leverage_size\t" << r.top_size << '\n'
      << "top_leverage_misclustered\t" << r.top_misclustered << '\n';
}

void EmitStarScatter(const DcsbmParams& params, double tau, std::ostream& out) {
  const int k = params.num_blocks;
  if (k > 3) throw InvalidArgument("scatter output supports K <= 3");
  const PopulationEigen pop = ComputePopulationEigen(params, tau);
  out << "node\tblock";
  for (int c = 0; c < k; ++c) out << "\tx" << c + 1;
  for (int c = 0; c < k; ++c) out << "\txstar" << c + 1;
  out << '\n';
  for (int i = 0; i < params.num_nodes(); ++i) {
    out << i << '\t' << params.membership[i];
    for (int c = 0; c < k; ++c) out << '\t' << FormatDouble(pop.vectors(i, c));
    for (int c = 0; c < k; ++c) out << '\t' << FormatDouble(pop.normalized(i, c));
    out << '\n';
  }
}

}  // namespace rsc
