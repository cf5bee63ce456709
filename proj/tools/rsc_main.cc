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

// rsc: command-line front end for spectral clustering experiments.
//
//   rsc cluster --edges graph.txt --k 2 --method RSC --tau avg
//   rsc exp1 --reps 10 --out exp1.csv
//   rsc exp2 --reps 15 --out exp2.csv
//   rsc blog --gml polblogs.gml
//   rsc star --beta 2 --out star.tsv
//   rsc verify --reps 100

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rsc/clustering.h"
#include "rsc/dcsbm.h"
#include "rsc/error.h"
#include "rsc/evaluation.h"
#include "rsc/harness.h"
#include "rsc/sparse_graph.h"
#include "rsc/text_format.h"

namespace {

// Writes to --out when given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw rsc::Error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void Finish() {
    stream().flush();
    if (!stream()) throw rsc::Error("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rsc::Error("cannot open '" + path + "'");
  return in;
}

rsc::TauPolicy ParseTau(const std::string& text) {
  if (text == "avg") return rsc::TauPolicy::AverageDegree();
  return rsc::TauPolicy::Explicit(rsc::ParseDouble(text));
}

std::vector<double> ParseGrid(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    out.push_back(rsc::ParseDouble(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

struct CommonFlags {
  std::uint64_t seed = 1;
  std::string out;
};

struct ClusterFlags {
  std::string edges;
  int k = 2;
  std::string method = "RSC";
  std::string tau = "avg";
  double gamma = 1.0;
  bool drop_isolated = false;
};

int RunCluster(const ClusterFlags& f, const CommonFlags& c) {
  auto in = OpenInput(f.edges);
  const auto edges = rsc::ReadEdgeList(in);
  const rsc::SparseGraph graph = rsc::SparseGraph::FromEdgeList(edges);

  rsc::PipelineConfig config;
  const auto method = rsc::ParseMethod(f.method);
  if (!method) throw rsc::InvalidArgument("unknown method '" + f.method + "'");
  config.method = *method;
  config.num_clusters = f.k;
  config.tau = ParseTau(f.tau);
  config.gamma = f.gamma;
  config.seed = c.seed;
  config.isolated =
      f.drop_isolated ? rsc::IsolatedPolicy::kDrop : rsc::IsolatedPolicy::kError;
  const rsc::ClusterResult result = rsc::RunPipeline(graph, config);

  Output out(c.out);
  out.stream() << "node,label,leverage\n";
  for (int i = 0; i < graph.num_nodes(); ++i) {
    out.stream() << graph.NodeName(i) << ',' << result.labels[i] << ','
                 << rsc::FormatDouble(result.leverage[i]) << '\n';
  }
  out.Finish();
  std::cerr << "nodes=" << graph.num_nodes() << " edges=" << graph.num_edges()
            << " tau=" << rsc::FormatDouble(result.tau)
            << " dropped=" << result.dropped_nodes.size() << '\n';
  return 0;
}

struct ExperimentFlags {
  int reps = 0;
  std::string grid;
  std::vector<std::string> methods;
  int workers = 1;
  bool timing = false;
  bool emit_labels = false;
  std::string summary;
};

int RunExperimentCommand(rsc::Experiment which, const ExperimentFlags& f,
                         const CommonFlags& c) {
  rsc::ExperimentSpec spec = which == rsc::Experiment::kDegreeHeterogeneity
                                 ? rsc::DefaultExperiment1()
                                 : rsc::DefaultExperiment2();
  if (f.reps > 0) spec.reps = f.reps;
  if (!f.grid.empty()) spec.grid = ParseGrid(f.grid);
  if (!f.methods.empty()) spec.methods = f.methods;
  spec.seed = c.seed;
  spec.workers = f.workers;
  spec.keep_labels = f.emit_labels;
  const auto rows = rsc::RunExperiment(spec);

  Output out(c.out);
  rsc::WriteResultsCsv(out.stream(), rows, {f.timing, f.emit_labels});
  out.Finish();

  const auto summary = rsc::Summarize(rows);
  if (f.summary.empty()) {
    rsc::WriteSummaryCsv(std::cerr, summary);
  } else {
    Output s(f.summary);
    rsc::WriteSummaryCsv(s.stream(), summary);
    s.Finish();
  }
  return 0;
}

struct BlogFlags {
  std::string gml;
  std::string edges;
  std::string labels;
  std::string tau_grid = "1,5,10,15,20,25,30";
  int restarts = 20;
};

int RunBlogCommand(const BlogFlags& f, const CommonFlags& c) {
  std::vector<std::pair<std::string, std::string>> edges, labels;
  if (!f.gml.empty()) {
    auto in = OpenInput(f.gml);
    rsc::GmlContents gml = rsc::ExtractGml(in);
    edges = std::move(gml.edges);
    labels = std::move(gml.node_values);
  } else {
    if (f.edges.empty() || f.labels.empty()) {
      throw rsc::InvalidArgument("blog needs --gml or both --edges and --labels");
    }
    auto e = OpenInput(f.edges);
    edges = rsc::ReadEdgeList(e);
    auto l = OpenInput(f.labels);
    labels = rsc::ReadLabels(l);
  }
  const rsc::SparseGraph graph = rsc::SparseGraph::FromEdgeList(edges);
  rsc::BlogOptions options;
  options.tau_grid = ParseGrid(f.tau_grid);
  options.seed = c.seed;
  options.kmeans_restarts = f.restarts;
  const rsc::BlogReport report = rsc::RunBlog(graph, labels, options);
  Output out(c.out);
  rsc::WriteBlogReport(out.stream(), report);
  out.Finish();
  return 0;
}

struct StarFlags {
  double beta = 2.0;
  double tau = 8.0;
  bool uniform = false;
  std::string model;
};

int RunStar(const StarFlags& f, const CommonFlags& c) {
  rsc::DcsbmParams params;
  if (!f.model.empty()) {
    auto in = OpenInput(f.model);
    params = rsc::ReadModel(in);
  } else if (f.uniform) {
    params = rsc::Experiment2Model(8.0);
  } else {
    params = rsc::Experiment1Model(f.beta, c.seed);
  }
  Output out(c.out);
  rsc::EmitStarScatter(params, f.tau, out.stream());
  out.Finish();
  return 0;
}

struct VerifyFlags {
  double beta = 2.0;
  std::string tau = "8";
  double epsilon = 0.1;
  int reps = 100;
  std::string model;
};

int RunVerify(const VerifyFlags& f, const CommonFlags& c) {
  rsc::DcsbmParams params;
  if (!f.model.empty()) {
    auto in = OpenInput(f.model);
    params = rsc::ReadModel(in);
  } else {
    params = rsc::Experiment1Model(f.beta, c.seed);
  }
  const rsc::PopulationModel population = rsc::BuildPopulationModel(params);
  double tau = 0.0;
  if (f.tau == "avg") {
    tau = population.expected_degree.mean();
  } else {
    tau = rsc::ParseDouble(f.tau);
  }
  const auto conc =
      rsc::CheckConcentration(params, tau, f.epsilon, f.reps, c.seed);
  const auto eig =
      rsc::CheckEigenvectorBound(params, tau, f.epsilon, f.reps, c.seed);
  Output out(c.out);
  auto& os = out.stream();
  os << "nodes\t" << params.num_nodes() << '\n'
     << "tau\t" << rsc::FormatDouble(tau) << '\n'
     << "min_expected_degree\t" << rsc::FormatDouble(conc.min_expected_degree)
     << '\n'
     << "concentration_bound\t" << rsc::FormatDouble(conc.bound) << '\n'
     << "concentration_assumption\t" << conc.assumptions_met << '\n'
     << "concentration_holding\t" << conc.holding << '/' << f.reps << '\n'
     << "lambda_k\t" << rsc::FormatDouble(eig.lambda_k) << '\n'
     << "eigenvector_bound\t" << rsc::FormatDouble(eig.bound) << '\n'
     << "eigenvector_gap_assumption\t" << eig.gap_assumption << '\n'
     << "eigenvector_holding\t" << eig.holding << '/' << f.reps << '\n'
     << "mean_eigenvector_error\t" << rsc::FormatDouble(eig.mean_error) << '\n'
     << "mean_normalized_error\t"
     << rsc::FormatDouble(eig.mean_error_normalized) << '\n';
  out.Finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized spectral clustering toolkit"};
  app.require_subcommand(1);
  CommonFlags common;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", common.seed, "Base random seed");
    cmd->add_option("--out", common.out, "Output path (default stdout)");
  };

  ClusterFlags cluster;
  auto* cluster_cmd = app.add_subcommand("cluster", "Cluster one edge-list graph");
  cluster_cmd->add_option("--edges", cluster.edges, "Edge list file")->required();
  cluster_cmd->add_option("--k", cluster.k, "Number of clusters");
  cluster_cmd->add_option("--method", cluster.method, "SC, RSC, RSC_WP, T_RSC or SCP");
  cluster_cmd->add_option("--tau", cluster.tau, "Regularizer, number or 'avg'");
  cluster_cmd->add_option("--gamma", cluster.gamma, "Leverage threshold for T_RSC");
  cluster_cmd->add_flag("--drop-isolated", cluster.drop_isolated,
                        "Cluster around isolated nodes instead of failing");
  add_common(cluster_cmd);

  ExperimentFlags exp;
  auto add_experiment = [&](CLI::App* cmd) {
    cmd->add_option("--reps", exp.reps, "Replicates per grid value");
    cmd->add_option("--grid", exp.grid, "Comma-separated grid values");
    cmd->add_option("--method", exp.methods, "Restrict to these methods");
    cmd->add_option("--workers", exp.workers, "Worker threads");
    cmd->add_flag("--timing", exp.timing, "Add a runtime_ms column");
    cmd->add_flag("--emit-labels", exp.emit_labels, "Add a labels column");
    cmd->add_option("--summary", exp.summary, "Summary CSV path (default stderr)");
    add_common(cmd);
  };
  auto* exp1_cmd = app.add_subcommand("exp1", "Degree heterogeneity sweep");
  add_experiment(exp1_cmd);
  auto* exp2_cmd = app.add_subcommand("exp2", "Sparsity sweep");
  add_experiment(exp2_cmd);

  BlogFlags blog;
  auto* blog_cmd = app.add_subcommand("blog", "Political blogs analysis");
  blog_cmd->add_option("--gml", blog.gml, "GML file with node values");
  blog_cmd->add_option("--edges", blog.edges, "Edge list file");
  blog_cmd->add_option("--labels", blog.labels, "Node label file");
  blog_cmd->add_option("--tau-grid", blog.tau_grid, "Comma-separated tau values");
  blog_cmd->add_option("--restarts", blog.restarts, "k-means restarts");
  add_common(blog_cmd);

  StarFlags star;
  auto* star_cmd = app.add_subcommand("star", "Population eigenvector scatter");
  star_cmd->add_option("--beta", star.beta, "Pareto exponent for theta");
  star_cmd->add_option("--tau", star.tau, "Regularizer");
  star_cmd->add_flag("--uniform", star.uniform, "Uniform theta");
  star_cmd->add_option("--model", star.model, "Model file");
  add_common(star_cmd);

  VerifyFlags verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check concentration bounds");
  verify_cmd->add_option("--beta", verify.beta, "Pareto exponent for theta");
  verify_cmd->add_option("--tau", verify.tau, "Regularizer, number or 'avg'");
  verify_cmd->add_option("--epsilon", verify.epsilon, "Failure probability");
  verify_cmd->add_option("--reps", verify.reps, "Sampled graphs");
  verify_cmd->add_option("--model", verify.model, "Model file");
  add_common(verify_cmd);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*cluster_cmd) return RunCluster(cluster, common);
    if (*exp1_cmd) {
      return RunExperimentCommand(rsc::Experiment::kDegreeHeterogeneity, exp,
                                  common);
    }
    if (*exp2_cmd) return RunExperimentCommand(rsc::Experiment::kSparsity, exp, common);
    if (*blog_cmd) return RunBlogCommand(blog, common);
    if (*star_cmd) return RunStar(star, common);
    if (*verify_cmd) return RunVerify(verify, common);
  } catch (const rsc::Error& e) {
    std::cerr << "rsc: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
