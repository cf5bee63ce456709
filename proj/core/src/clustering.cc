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

#include "rsc/clustering.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rsc/error.h"
#include "rsc/random.h"

namespace rsc {
namespace {

constexpr std::uint64_t kEigenStream = 0xe16e;
constexpr std::uint64_t kKMeansStream = 0x4b3a;

// k-means++ seeding: first centre uniform, then proportional to D^2.
Eigen::MatrixXd SeedPlusPlus(const Eigen::MatrixXd& points, int k, Rng& rng) {
  const auto n = points.rows();
  Eigen::MatrixXd centroids(k, points.cols());
  Eigen::VectorXd dist2 =
      Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  auto first = static_cast<Eigen::Index>(UniformIndex(rng, n));
  centroids.row(0) = points.row(first);
  for (int c = 1; c < k; ++c) {
    for (Eigen::Index i = 0; i < n; ++i) {
      dist2[i] = std::min(dist2[i],
                          (points.row(i) - centroids.row(c - 1)).squaredNorm());
    }
    const double total = dist2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double target = UniformUnit(rng) * total;
      pick = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        target -= dist2[i];
        if (target < 0.0 && dist2[i] > 0.0) {
          pick = i;
          break;
        }
      }
      // Rounding can leave target >= 0 after the scan.
      for (Eigen::Index i = n - 1; pick < 0; --i) {
        if (dist2[i] > 0.0) pick = i;
      }
    } else {
      pick = static_cast<Eigen::Index>(UniformIndex(rng, n));
    }
    centroids.row(c) = points.row(pick);
  }
  return centroids;
}

struct LloydRun {
  std::vector<int> labels;
  Eigen::MatrixXd centroids;
  double inertia;
  int iterations;
  std::vector<double> trace;
};

double Assign(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
              std::vector<int>& labels, Eigen::VectorXd& dist2) {
  double inertia = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
      const double d = (points.row(i) - centroids.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    labels[i] = best;
    dist2[i] = best_d;
    inertia += best_d;
  }
  return inertia;
}

// Centroids become cluster means; empty clusters move to the farthest point.
void Update(const Eigen::MatrixXd& points, const std::vector<int>& labels,
            Eigen::VectorXd dist2, Eigen::MatrixXd& centroids) {
  const auto k = centroids.rows();
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
  std::vector<int> counts(k, 0);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    sums.row(labels[i]) += points.row(i);
    ++counts[labels[i]];
  }
  for (Eigen::Index c = 0; c < k; ++c) {
    if (counts[c] > 0) {
      centroids.row(c) = sums.row(c) / counts[c];
    } else {
      Eigen::Index far = 0;
      dist2.maxCoeff(&far);
      centroids.row(c) = points.row(far);
      dist2[far] = -1.0;
    }
  }
}

LloydRun Lloyd(const Eigen::MatrixXd& points, int k,
               const KMeansOptions& options, std::uint64_t seed) {
  Rng rng(seed);
  LloydRun run;
  run.centroids = SeedPlusPlus(points, k, rng);
  run.labels.assign(points.rows(), 0);
  Eigen::VectorXd dist2(points.rows());
  double previous = std::numeric_limits<double>::infinity();
  run.iterations = 0;
  while (true) {
    const double inertia = Assign(points, run.centroids, run.labels, dist2);
    run.trace.push_back(inertia);
    ++run.iterations;
    const bool settled = inertia == 0.0 ||
                         (std::isfinite(previous) &&
                          previous - inertia <= options.rel_tol * previous);
    if (settled || run.iterations >= options.max_iter) break;
    previous = inertia;
    Update(points, run.labels, dist2, run.centroids);
  }
  // Final means for the final assignment.
  Update(points, run.labels, dist2, run.centroids);
  run.inertia = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    run.inertia += (points.row(i) - run.centroids.row(run.labels[i])).squaredNorm();
  }
  return run;
}

}  // namespace

KMeansResult KMeans(const Eigen::MatrixXd& points, int k,
                    const KMeansOptions& options) {
  if (k < 1 || points.rows() < k) {
    throw InvalidArgument("k-means needs 1 <= K <= number of points (K = " +
                          std::to_string(k) + ", N = " +
                          std::to_string(points.rows()) + ")");
  }
  if (options.restarts < 1 || options.max_iter < 1) {
    throw InvalidArgument("k-means restarts and max_iter must be positive");
  }
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < options.restarts; ++r) {
    LloydRun run = Lloyd(points, k, options, DeriveSeed(options.seed, r));
    if (run.inertia < best.inertia) {
      best.labels = std::move(run.labels);
      best.centroids = std::move(run.centroids);
      best.inertia = run.inertia;
      best.iterations = run.iterations;
      best.best_restart = r;
      best.inertia_trace = std::move(run.trace);
    }
  }
  return best;
}

int NearestCentroid(const Eigen::MatrixXd& centroids,
                    const Eigen::Ref<const Eigen::RowVectorXd>& point) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    const double d = (point - centroids.row(c)).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kSC: return "SC";
    case Method::kRSC: return "RSC";
    case Method::kRSCWithoutProjection: return "RSC_WP";
    case Method::kThresholdedRSC: return "T_RSC";
    case Method::kSCP: return "SCP";
  }
  return "?";
}

std::optional<Method> ParseMethod(std::string_view name) {
  for (Method m : {Method::kSC, Method::kRSC, Method::kRSCWithoutProjection,
                   Method::kThresholdedRSC, Method::kSCP}) {
    if (MethodName(m) == name) return m;
  }
  return std::nullopt;
}

void PipelineConfig::Validate() const {
  if (num_clusters < 1) throw InvalidArgument("K must be positive");
  if (tau.kind == TauPolicy::Kind::kExplicit &&
      (!(tau.value >= 0.0) || !std::isfinite(tau.value))) {
    throw InvalidArgument("explicit tau must be finite and non-negative");
  }
  if (!(tau.multiplier >= 0.0)) {
    throw InvalidArgument("tau multiplier must be non-negative");
  }
  if (!(gamma >= 0.0)) throw InvalidArgument("gamma must be non-negative");
  if (kmeans_restarts < 1 || kmeans_max_iter < 1) {
    throw InvalidArgument("k-means restarts and iterations must be positive");
  }
}

double ResolveTau(const PipelineConfig& config, const SparseGraph& graph) {
  if (config.method == Method::kSC || config.method == Method::kSCP) return 0.0;
  if (config.tau.kind == TauPolicy::Kind::kExplicit) return config.tau.value;
  return config.tau.multiplier * graph.AverageDegree();
}

double ResolvePerturbation(const PipelineConfig& config,
                           const SparseGraph& graph) {
  if (config.method != Method::kSCP || graph.num_nodes() == 0) return 0.0;
  const double n = graph.num_nodes();
  return static_cast<double>(graph.volume()) / (n * n);
}

ClusterResult ClusterOperator(const SymmetricOperator& op,
                              const PipelineConfig& config, double tau,
                              double perturb_a) {
  config.Validate();
  const int n = op.dim();
  const int k = config.num_clusters;

  EigenOptions eigen = config.eigen;
  eigen.seed = DeriveSeed(config.seed, kEigenStream);

  ClusterResult result;
  result.tau = tau;
  result.perturb_a = perturb_a;
  result.eigenbasis = TopKEigen(op, k, eigen);
  const Eigen::MatrixXd& x = result.eigenbasis.vectors;
  result.leverage = RowSquaredNorms(x);
  RowNormalized normalized = RowNormalize(x);
  result.x_star = std::move(normalized.rows);
  result.zero_rows = std::move(normalized.zero_rows);

  const bool project = config.method != Method::kRSCWithoutProjection &&
                       config.method != Method::kSCP;
  const Eigen::MatrixXd& points = project ? result.x_star : x;

  KMeansOptions km;
  km.restarts = config.kmeans_restarts;
  km.max_iter = config.kmeans_max_iter;
  km.seed = DeriveSeed(config.seed, kKMeansStream);

  if (config.method == Method::kThresholdedRSC) {
    const double threshold = config.gamma / std::sqrt(static_cast<double>(n));
    std::vector<int> kept;
    for (int i = 0; i < n; ++i) {
      if (std::sqrt(result.leverage[i]) >= threshold) kept.push_back(i);
    }
    if (static_cast<int>(kept.size()) < k) {
      throw InvalidArgument("threshold removed too many nodes: |S| = " +
                            std::to_string(kept.size()) + " < K = " +
                            std::to_string(k));
    }
    Eigen::MatrixXd subset(kept.size(), points.cols());
    for (std::size_t r = 0; r < kept.size(); ++r) subset.row(r) = points.row(kept[r]);
    KMeansResult fit = KMeans(subset, k, km);
    result.labels.assign(n, -1);
    for (std::size_t r = 0; r < kept.size(); ++r) result.labels[kept[r]] = fit.labels[r];
    for (int i = 0; i < n; ++i) {
      if (result.labels[i] == -1) {
        result.labels[i] = NearestCentroid(fit.centroids, points.row(i));
      }
    }
    result.centroids = std::move(fit.centroids);
    result.inertia = fit.inertia;
    result.thresholded_set = std::move(kept);
    return result;
  }

  KMeansResult fit = KMeans(points, k, km);
  result.labels = std::move(fit.labels);
  result.centroids = std::move(fit.centroids);
  result.inertia = fit.inertia;
  return result;
}

namespace {

// Re-embeds a result computed on a subgraph into the parent's node set.
ClusterResult Expand(ClusterResult sub, const std::vector<int>& kept, int n) {
  ClusterResult out = std::move(sub);
  const auto k = out.eigenbasis.vectors.cols();
  Eigen::MatrixXd vectors = Eigen::MatrixXd::Zero(n, k);
  Eigen::MatrixXd x_star = Eigen::MatrixXd::Zero(n, k);
  Eigen::VectorXd leverage = Eigen::VectorXd::Zero(n);
  std::vector<int> labels(n, 0);
  std::vector<char> is_kept(n, 0);
  for (std::size_t r = 0; r < kept.size(); ++r) {
    vectors.row(kept[r]) = out.eigenbasis.vectors.row(r);
    x_star.row(kept[r]) = out.x_star.row(r);
    leverage[kept[r]] = out.leverage[r];
    labels[kept[r]] = out.labels[r];
    is_kept[kept[r]] = 1;
  }
  std::vector<int> zero_rows;
  for (int z : out.zero_rows) zero_rows.push_back(kept[z]);
  for (int i = 0; i < n; ++i) {
    if (!is_kept[i]) {
      out.dropped_nodes.push_back(i);
      zero_rows.push_back(i);
    }
  }
  std::sort(zero_rows.begin(), zero_rows.end());
  if (out.thresholded_set) {
    for (int& v : *out.thresholded_set) v = kept[v];
  }
  out.eigenbasis.vectors = std::move(vectors);
  out.x_star = std::move(x_star);
  out.leverage = std::move(leverage);
  out.labels = std::move(labels);
  out.zero_rows = std::move(zero_rows);
  return out;
}

}  // namespace

ClusterResult RunPipeline(const SparseGraph& graph,
                          const PipelineConfig& config) {
  config.Validate();
  if (graph.num_nodes() == 0) throw InvalidArgument("graph is empty");
  const double tau = ResolveTau(config, graph);
  const double perturb_a = ResolvePerturbation(config, graph);
  const bool undefined_at_zero = tau + perturb_a * graph.num_nodes() <= 0.0;
  if (config.isolated == IsolatedPolicy::kDrop && undefined_at_zero) {
    bool any_isolated = false;
    for (int i = 0; i < graph.num_nodes() && !any_isolated; ++i) {
      any_isolated = graph.Degree(i) == 0;
    }
    if (any_isolated) {
      Subgraph sub = DropIsolated(graph);
      if (sub.graph.num_nodes() < config.num_clusters) {
        throw InvalidArgument("fewer than K non-isolated nodes");
      }
      RegLaplacianOp op(sub.graph, tau, perturb_a);
      return Expand(ClusterOperator(op, config, tau, perturb_a),
                    sub.parent_index, graph.num_nodes());
    }
  }
  RegLaplacianOp op(graph, tau, perturb_a);
  return ClusterOperator(op, config, tau, perturb_a);
}

ClusterResult RunThresholdedRsc(const SparseGraph& graph,
                                const PipelineConfig& config) {
  if (config.method != Method::kThresholdedRSC) {
    throw InvalidArgument("RunThresholdedRsc requires method T_RSC");
  }
  return RunPipeline(graph, config);
}

}  // namespace rsc
