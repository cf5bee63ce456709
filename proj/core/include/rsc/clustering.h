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

#ifndef RSC_CLUSTERING_H_
#define RSC_CLUSTERING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rsc/linear_operator.h"
#include "rsc/sparse_graph.h"
#include "rsc/spectral.h"

namespace rsc {

struct KMeansOptions {
  int restarts = 20;
  int max_iter = 100;
  // Lloyd stops once (previous - current) <= rel_tol * previous.
  double rel_tol = 1e-6;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  std::vector<int> labels;      // 0-based cluster index per point
  Eigen::MatrixXd centroids;    // K x dim
  double inertia = 0.0;         // sum of squared distances to own centroid
  int iterations = 0;
  int best_restart = 0;
  // Inertia after every assignment step of the winning restart.
  std::vector<double> inertia_trace;
};

// Best of `restarts` k-means++ seeded Lloyd runs (lowest inertia, earliest
// restart on ties). A cluster that empties is re-seeded at the point farthest
// from its assigned centroid. Assignment ties go to the lowest cluster index.
KMeansResult KMeans(const Eigen::MatrixXd& points, int k,
                    const KMeansOptions& options = {});

// Index of the nearest centroid row; lowest index on ties.
int NearestCentroid(const Eigen::MatrixXd& centroids,
                    const Eigen::Ref<const Eigen::RowVectorXd>& point);

enum class Method {
  kSC,                     // tau = 0, row-normalized
  kRSC,                    // regularized, row-normalized
  kRSCWithoutProjection,   // regularized, raw eigenvector rows
  kThresholdedRSC,         // k-means on high-leverage nodes only
  kSCP,                    // tau = 0 on A + a 11^T, raw rows
};

std::string_view MethodName(Method method);
std::optional<Method> ParseMethod(std::string_view name);

struct TauPolicy {
  enum class Kind { kAverageDegree, kExplicit };
  Kind kind = Kind::kAverageDegree;
  double value = 0.0;       // used by kExplicit
  double multiplier = 1.0;  // applied on top of the average degree

  static TauPolicy AverageDegree(double multiplier = 1.0) {
    return {Kind::kAverageDegree, 0.0, multiplier};
  }
  static TauPolicy Explicit(double tau) { return {Kind::kExplicit, tau, 1.0}; }
};

enum class IsolatedPolicy {
  kError,  // IsolatedNodeError when the operator is undefined
  kDrop,   // cluster the rest; dropped nodes get label 0 and a zero row
};

struct PipelineConfig {
  Method method = Method::kRSC;
  int num_clusters = 2;
  TauPolicy tau = TauPolicy::AverageDegree();
  double gamma = 1.0;
  int kmeans_restarts = 20;
  int kmeans_max_iter = 100;
  std::uint64_t seed = 0;
  EigenOptions eigen;
  IsolatedPolicy isolated = IsolatedPolicy::kError;

  void Validate() const;
};

// tau actually used: 0 for SC and SCP, the policy value otherwise.
double ResolveTau(const PipelineConfig& config, const SparseGraph& graph);
// a = M / N^2 for SCP, 0 otherwise.
double ResolvePerturbation(const PipelineConfig& config,
                           const SparseGraph& graph);

struct ClusterResult {
  std::vector<int> labels;  // 0-based, length N
  EigenBasis eigenbasis;
  Eigen::MatrixXd x_star;    // row-normalized eigenvectors
  Eigen::VectorXd leverage;  // ||X_i||^2
  // Nodes passed to k-means by the thresholded variant.
  std::optional<std::vector<int>> thresholded_set;
  Eigen::MatrixXd centroids;  // k-means centroids in the clustered space
  std::vector<int> zero_rows;
  std::vector<int> dropped_nodes;
  double inertia = 0.0;
  double tau = 0.0;
  double perturb_a = 0.0;
};

// Full pipeline on a graph: build the (regularized or perturbed) Laplacian,
// take the top-K eigenvectors, optionally project rows to the unit sphere
// and run k-means.
ClusterResult RunPipeline(const SparseGraph& graph,
                          const PipelineConfig& config);

// Thresholded variant: k-means on S = {i : ||X_i|| >= gamma / sqrt(N)}, then
// every node outside S joins its nearest centroid. Throws InvalidArgument if
// |S| < K.
ClusterResult RunThresholdedRsc(const SparseGraph& graph,
                                const PipelineConfig& config);

// Steps after operator construction, for any symmetric operator (e.g. an
// exact population Laplacian). `tau` and `perturb_a` are recorded only.
ClusterResult ClusterOperator(const SymmetricOperator& op,
                              const PipelineConfig& config, double tau = 0.0,
                              double perturb_a = 0.0);

}  // namespace rsc

#endif  // RSC_CLUSTERING_H_
