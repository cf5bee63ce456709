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

// Acceptance suite. Prints one PASS, FAIL or SKIP line per criterion and
// exits non-zero if any criterion fails.
//
//   acceptance_test [--polblogs path/to/polblogs.gml] [--only N]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "rsc/clustering.h"
#include "rsc/dcsbm.h"
#include "rsc/evaluation.h"
#include "rsc/harness.h"
#include "rsc/sparse_graph.h"
#include "rsc/spectral.h"
#include "rsc/text_format.h"

namespace rsc {
namespace {

using testing::OracleEigen;
using testing::OracleExpectedAdjacency;
using testing::OracleNormalized;
using testing::OraclePermutationErrors;
using testing::RandomModel;

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome Verdict(bool ok, std::string detail) {
  return {ok ? Status::kPass : Status::kFail, std::move(detail)};
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Population mean expected degree, the model analogue of M / N.
double ExpectedAverageDegree(const DcsbmParams& p) {
  return p.BlockTotals().sum() / p.num_nodes();
}

// Random model with N <= 300 and K in {2, 3, 4}; tau cycles over
// {0, 1, M/N}.
struct ModelCase {
  DcsbmParams params;
  double tau;
};

ModelCase RandomCase(std::mt19937_64& gen, int index) {
  const int k = 2 + index % 3;
  const int n = 20 + static_cast<int>(gen() % 281);
  ModelCase c{RandomModel(gen, n, k, 4.0 + (gen() % 40)), 0.0};
  switch (index % 3) {
    case 0: c.tau = 0.0; break;
    case 1: c.tau = 1.0; break;
    default: c.tau = ExpectedAverageDegree(c.params); break;
  }
  return c;
}

// 1. Factored population Laplacian equals the direct normalization.
Outcome FactorizationExact() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 gen(101);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const ModelCase c = RandomCase(gen, t);
    const Eigen::MatrixXd direct =
        OracleNormalized(OracleExpectedAdjacency(c.params), c.tau);
    worst = std::max(worst, (PopulationLaplacianFactored(c.params, c.tau) - direct)
                                .cwiseAbs()
                                .maxCoeff());
  }
  const double secs = Seconds(start);
  return Verdict(worst <= 1e-10 && secs < 10.0,
                 "100 models, max |diff| = " + Num(worst) + " (<= 1e-10), " +
                     Num(secs) + " s (< 10 s)");
}

// 2. Rank K, block-constant orthogonal normalized rows, explicit leverage.
Outcome PopulationStructure() {
  std::mt19937_64 gen(102);
  double trailing = 0.0, within = 0.0, across = 0.0, leverage = 0.0;
  for (int t = 0; t < 30; ++t) {
    const ModelCase c = RandomCase(gen, t);
    const DcsbmParams& p = c.params;
    const int k = p.num_blocks;
    const int n = p.num_nodes();
    const auto dense = OracleEigen(OracleNormalized(OracleExpectedAdjacency(p), c.tau));
    trailing = std::max(trailing, dense.values.tail(n - k).cwiseAbs().maxCoeff());

    const PopulationEigen pop = ComputePopulationEigen(p, c.tau);
    std::vector<int> first(k, -1);
    for (int i = 0; i < n; ++i) {
      int& f = first[p.membership[i]];
      if (f < 0) f = i;
      within = std::max(within,
                        (pop.normalized.row(i) - pop.normalized.row(f)).cwiseAbs().maxCoeff());
    }
    for (int s = 0; s < k; ++s) {
      for (int u = s + 1; u < k; ++u) {
        across = std::max(across,
                          std::abs(pop.normalized.row(first[s]).dot(pop.normalized.row(first[u]))));
      }
    }
    const Eigen::VectorXd tt = ThetaTau(p, c.tau);
    Eigen::VectorXd block_sum = Eigen::VectorXd::Zero(k);
    for (int i = 0; i < n; ++i) block_sum[p.membership[i]] += tt[i];
    for (int i = 0; i < n; ++i) {
      const double formula = tt[i] / block_sum[p.membership[i]];
      leverage = std::max(leverage,
                          std::abs(dense.vectors.row(i).head(k).squaredNorm() - formula));
    }
  }
  return Verdict(trailing < 1e-9 && within <= 1e-10 && across <= 1e-10 && leverage <= 1e-10,
                 "30 models, trailing eig " + Num(trailing) + " (< 1e-9), within-block " +
                     Num(within) + ", cross-block dot " + Num(across) +
                     " (<= 1e-10), leverage formula " + Num(leverage) + " (<= 1e-10)");
}

// 3. RSC on the exact population Laplacian recovers the partition.
Outcome PopulationPerfection() {
  std::mt19937_64 gen(103);
  int worst = 0;
  for (int t = 0; t < 20; ++t) {
    const ModelCase c = RandomCase(gen, t);
    const DenseSymmetricOperator op(PopulationLaplacian(c.params, c.tau));
    PipelineConfig config;
    config.method = Method::kRSC;
    config.num_clusters = c.params.num_blocks;
    config.seed = t;
    const ClusterResult r = ClusterOperator(op, config, c.tau);
    worst = std::max(worst, OraclePermutationErrors(r.labels, c.params.membership,
                                                    c.params.num_blocks));
  }
  return Verdict(worst == 0, "20 models, worst misclustered count " + std::to_string(worst));
}

// 4. Lanczos against a dense eigensolve on sampled graphs.
Outcome EigensolverOracle() {
  std::mt19937_64 gen(104);
  double value_err = 0.0, projector = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int k = 2 + t % 3;
    const int n = 100 + static_cast<int>(gen() % 413);
    const DcsbmParams p = RandomModel(gen, n, k, 8.0 + (gen() % 25));
    const SparseGraph g = SampleGraph(p, gen()).graph;
    const RegLaplacianOp op(g, g.AverageDegree());
    const auto dense = OracleEigen(op.ToDense());
    EigenOptions options;
    options.method = EigenMethod::kLanczos;
    options.seed = t;
    const EigenBasis basis = TopKEigen(op, k, options);
    value_err = std::max(value_err,
                         (basis.values - dense.values.head(k)).cwiseAbs().maxCoeff());
    projector = std::max(projector, ProjectorDistance(basis.vectors, dense.vectors.leftCols(k)));
  }
  return Verdict(value_err <= 1e-8 && projector <= 1e-6,
                 "50 graphs, eigenvalue error " + Num(value_err) +
                     " (<= 1e-8), projector distance " + Num(projector) + " (<= 1e-6)");
}

// 5. Concentration of the regularized Laplacian.
Outcome ConcentrationHolds() {
  const double hand = 4.0 * std::sqrt(3.0 * std::log(36000.0) / 40.0);
  const bool formula = std::abs(ConcentrationBound(900, 0.1, 40.0) - hand) < 1e-12 &&
                       std::abs(hand - 3.55) < 0.005;
  const DcsbmParams p = Experiment1Model(2.0, 105);
  const double tau = ExpectedAverageDegree(p);
  const ConcentrationSummary s = CheckConcentration(p, tau, 0.1, 100, 105);
  double worst = 0.0;
  for (const BoundCheck& c : s.checks) worst = std::max(worst, c.observed);
  return Verdict(formula && s.holding >= 95,
                 std::to_string(s.holding) + "/100 within bound " + Num(s.bound) +
                     " (tau = " + Num(tau) + ", delta = " + Num(s.min_expected_degree) +
                     ", max observed " + Num(worst) + ", assumption " +
                     (s.assumptions_met ? "met" : "not met") + "); bound(40) = " + Num(hand));
}

// 6. Closed-form lambda_K of the four-parameter model.
Outcome FourParameterLambda() {
  double worst = 0.0;
  const double pr[3][2] = {{0.5, 0.1}, {0.2, 0.05}, {0.9, 0.3}};
  for (const auto& [p_in, r_out] : pr) {
    for (int k : {2, 3, 4}) {
      const int s = 20;
      DcsbmParams p;
      p.num_blocks = k;
      p.membership = BalancedMembership(k * s, k);
      p.theta.assign(k * s, 1.0 / s);
      p.block_matrix = Eigen::MatrixXd::Constant(k, k, r_out * s * s);
      p.block_matrix.diagonal().setConstant(p_in * s * s);
      const auto dense = OracleEigen(OracleNormalized(OracleExpectedAdjacency(p), 0.0));
      worst = std::max(worst, std::abs(dense.values[k - 1] - LambdaKFourParam(p_in, r_out, s, k)));
    }
  }
  return Verdict(worst <= 1e-10, "3x3 grid, max |diff| = " + Num(worst) + " (<= 1e-10)");
}

using RateTable = std::map<std::pair<std::string, double>, std::vector<double>>;

RateTable Rates(const std::vector<ResultRow>& rows) {
  RateTable table;
  for (const ResultRow& r : rows) table[{r.method, r.grid_value}].push_back(r.rate);
  return table;
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

double Variance(const std::vector<double>& v) {
  const double m = Mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

// Paired comparison: mean(worse - better) exceeds two standard errors.
bool LowerAtTwoSigma(const std::vector<double>& better, const std::vector<double>& worse,
                     std::string* detail) {
  std::vector<double> d(better.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = worse[i] - better[i];
  const double se = std::sqrt(Variance(d) / d.size());
  *detail = "gap " + Num(Mean(d)) + " vs 2se " + Num(2.0 * se);
  return Mean(d) > 2.0 * se;
}

// 7. Degree heterogeneity sweep orderings.
Outcome Experiment1Orderings() {
  const auto start = std::chrono::steady_clock::now();
  ExperimentSpec spec = DefaultExperiment1();
  spec.reps = 10;
  const RateTable t = Rates(RunExperiment(spec));
  const double secs = Seconds(start);
  bool ok = secs < 600.0;
  std::string detail;
  for (double beta : {2.0, 2.5}) {
    for (const char* other : {"SC", "RSC_WP"}) {
      std::string d;
      const bool lower = LowerAtTwoSigma(t.at({"RSC", beta}), t.at({other, beta}), &d);
      ok = ok && lower;
      detail += "beta " + Num(beta) + " RSC<" + other + " " + (lower ? "yes" : "no") +
                " (" + d + "); ";
    }
  }
  int on_s_better = 0;
  for (double beta : spec.grid) {
    on_s_better += Mean(t.at({std::string(kRscOnS), beta})) <= Mean(t.at({"RSC", beta}));
  }
  ok = ok && on_s_better == static_cast<int>(spec.grid.size());
  detail += "RSC on S <= RSC at " + std::to_string(on_s_better) + "/" +
            std::to_string(spec.grid.size()) + " betas; " + Num(secs) + " s (< 600 s)";
  return Verdict(ok, detail);
}

// 8. Sparsity sweep: methods agree when dense, SC least stable when sparse.
Outcome Experiment2Comparisons() {
  ExperimentSpec spec = DefaultExperiment2();
  spec.reps = 15;
  const RateTable t = Rates(RunExperiment(spec));
  double lo = 1.0, hi = 0.0;
  for (const std::string& m : spec.methods) {
    lo = std::min(lo, Mean(t.at({m, 30.0})));
    hi = std::max(hi, Mean(t.at({m, 30.0})));
  }
  const bool comparable = hi - lo <= 0.05;
  const double sc_var = Variance(t.at({"SC", 10.0}));
  bool sc_largest = true;
  std::string variances;
  for (const std::string& m : spec.methods) {
    const double v = Variance(t.at({m, 10.0}));
    variances += m + " " + Num(v) + " ";
    if (m != "SC") sc_largest = sc_largest && sc_var > v;
  }
  return Verdict(comparable && sc_largest,
                 "degree 30 spread of means " + Num(hi - lo) + " (<= 0.05); degree 10 " +
                     "variances " + variances + "(SC largest: " + (sc_largest ? "yes" : "no") +
                     ")");
}

// 9. Political blogs network.
Outcome BlogNetwork(const std::string& path) {
  if (path.empty() || !std::filesystem::exists(path)) {
    return {Status::kSkip, "political blogs GML not found at '" + path +
                               "'; download polblogs.gml and pass --polblogs"};
  }
  std::ifstream in(path);
  GmlContents gml = ExtractGml(in);
  const SparseGraph graph = SparseGraph::FromEdgeList(gml.edges);
  BlogOptions options;
  options.tau_grid = {1, 5, 10, 15, 20, 25, 30};
  const BlogReport r = RunBlog(graph, gml.node_values, options);
  const double sc_share = static_cast<double>(r.sc_largest_block) / r.component_size;
  bool rsc_ok = r.rsc_default_misclustered >= 60 && r.rsc_default_misclustered <= 100;
  const bool ok = r.component_size == 1222 && sc_share >= 0.93 && rsc_ok &&
                  r.top_misclustered >= 30 && r.top_misclustered <= 60;
  std::string grid;
  for (const BlogTauResult& t : r.rsc) grid += Num(t.tau) + ":" + std::to_string(t.misclustered) + " ";
  return Verdict(ok, "component " + std::to_string(r.component_size) + " (1222), SC share " +
                         Num(sc_share) + " (>= 0.93), RSC(avg degree " + Num(r.default_tau) +
                         ") " + std::to_string(r.rsc_default_misclustered) +
                         " ([60,100]), top-leverage " + std::to_string(r.top_misclustered) +
                         "/" + std::to_string(r.top_size) + " ([30,60]); tau grid " + grid);
}

// 10. Byte-identical CSV for identical seeds.
Outcome Determinism() {
  bool ok = true;
  std::string detail;
  for (Experiment which : {Experiment::kDegreeHeterogeneity, Experiment::kSparsity}) {
    ExperimentSpec spec = which == Experiment::kDegreeHeterogeneity ? DefaultExperiment1()
                                                                    : DefaultExperiment2();
    spec.grid = {spec.grid.front(), spec.grid.back()};
    spec.reps = 3;
    spec.keep_labels = true;
    auto csv = [&] {
      std::ostringstream out;
      WriteResultsCsv(out, RunExperiment(spec), {false, true});
      return out.str();
    };
    const std::string a = csv();
    const std::string b = csv();
    spec.workers = 4;
    const std::string c = csv();
    const bool same = a == b && a == c;
    ok = ok && same;
    detail += std::string(ExperimentName(which)) + " " + std::to_string(a.size()) + " bytes " +
              (same ? "identical" : "DIFFER") + "; ";
  }
  return Verdict(ok, detail + "runs 1, 2 and a 4-worker run compared");
}

}  // namespace
}  // namespace rsc

int main(int argc, char** argv) {
  std::string polblogs;
  int only = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::strcmp(argv[i], "--polblogs") == 0) polblogs = argv[i + 1];
    if (std::strcmp(argv[i], "--only") == 0) only = std::atoi(argv[i + 1]);
  }
  using rsc::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"population Laplacian factorization", rsc::FactorizationExact},
      {"population eigenstructure", rsc::PopulationStructure},
      {"population perfect recovery", rsc::PopulationPerfection},
      {"Lanczos vs dense eigensolver", rsc::EigensolverOracle},
      {"Laplacian concentration bound", rsc::ConcentrationHolds},
      {"four-parameter lambda_K", rsc::FourParameterLambda},
      {"degree heterogeneity sweep", rsc::Experiment1Orderings},
      {"sparsity sweep", rsc::Experiment2Comparisons},
      {"political blogs network", [&] { return rsc::BlogNetwork(polblogs); }},
      {"deterministic CSV", rsc::Determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && only != static_cast<int>(i + 1)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {rsc::Status::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == rsc::Status::kPass   ? "PASS"
                      : o.status == rsc::Status::kSkip ? "SKIP"
                                                       : "FAIL";
    failures += o.status == rsc::Status::kFail;
    std::printf("%s [%zu] %s: %s\n", tag, i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
