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

#ifndef RSC_EVALUATION_H_
#define RSC_EVALUATION_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rsc/clustering.h"
#include "rsc/dcsbm.h"
#include "rsc/linear_operator.h"
#include "rsc/spectral.h"

namespace rsc {

struct MisclusterReport {
  double rate = 0.0;
  int count = 0;
  // matching[estimated label] = true label; empty when not applicable.
  std::vector<int> matching;
  // An estimated block held more than 95% of the nodes, so every node is
  // counted as misclustered.
  bool degenerate = false;
};

// Share of an estimated block above which a clustering is declared degenerate.
inline constexpr double kDegenerateShare = 0.95;

// Minimum Hamming disagreement over all K! relabelings of `estimated`. Labels
// are 0-based and must lie in [0, K). K <= 8.
MisclusterReport MisclusterPermutation(std::span<const int> estimated,
                                       std::span<const int> truth, int k);

// Misclustered set defined through population centroids: node i is
// misclustered iff its aligned empirical centroid C_i O^T is strictly farther
// from its own population centroid than from the population centroid of some
// node in another block. O is the orthogonal Procrustes alignment of the
// empirical row-normalized eigenvectors onto the population ones.
struct CentroidMisclustering {
  MisclusterReport summary;
  std::vector<int> misclustered;
  // Nodes violating the sufficient condition ||C_i O^T - pop_i|| < 1/sqrt(2).
  std::vector<int> outside_sufficient;
  Eigen::MatrixXd alignment;
  // Population k-means centroid of every node, N x K.
  Eigen::MatrixXd population_centroids;
};

CentroidMisclustering MisclusterByCentroids(const DcsbmParams& params,
                                            double tau,
                                            const Eigen::MatrixXd& x_star,
                                            std::span<const int> labels,
                                            const Eigen::MatrixXd& centroids,
                                            std::uint64_t seed);
CentroidMisclustering MisclusterByCentroids(const DcsbmParams& params,
                                            double tau,
                                            const ClusterResult& empirical,
                                            std::uint64_t seed);

// Squared row norms of the eigenvector matrix.
Eigen::VectorXd LeverageScores(const EigenBasis& basis);

// lambda_K of the population Laplacian of the four-parameter blockmodel
// SBM(p, r, s, K): (K r / (p - r) + 1)^{-1}. Requires p > r > 0.
double LambdaKFourParam(double p, double r, int s, int k);

// delta = min_i theta_i W_{z_i}.
double MinExpectedDegree(const DcsbmParams& params);

// 4 sqrt(3 ln(4N/eps) / (delta + tau)).
double ConcentrationBound(int n, double epsilon, double delta_plus_tau);
// delta + tau > 3 ln N + 3 ln(4 / eps).
bool ConcentrationAssumption(int n, double epsilon, double delta_plus_tau);

// (32 sqrt(3) / lambda_K) sqrt(K ln(4N/eps) / (delta + tau)).
double EigenvectorBound(int k, int n, double epsilon, double delta_plus_tau,
                        double lambda_k);
// sqrt(K ln(4N/eps) / (delta + tau)) <= lambda_K / (8 sqrt(3)).
bool EigenvectorGapAssumption(int k, int n, double epsilon,
                              double delta_plus_tau, double lambda_k);

struct BoundCheck {
  double observed = 0.0;
  double bound = 0.0;
  bool holds = false;
  double epsilon = 0.0;
  bool assumptions_met = false;
};

struct ConcentrationSummary {
  std::vector<BoundCheck> checks;
  double bound = 0.0;
  double min_expected_degree = 0.0;
  bool assumptions_met = false;
  int holding = 0;
  double fraction_holding = 0.0;
};

// Samples `reps` graphs and compares ||L_tau - pop L_tau|| to the
// concentration bound. The spectral norm uses a dense eigensolve for
// N <= 512 and power iteration otherwise.
ConcentrationSummary CheckConcentration(const DcsbmParams& params, double tau,
                                        double epsilon, int reps,
                                        std::uint64_t seed);

struct EigenvectorCheck {
  BoundCheck frobenius;       // ||X - pop X O||_F against the explicit bound
  double error_normalized = 0.0;  // ||X* - pop X* O||_F
  double min_row_norm = 0.0;      // m
  // error_normalized <= frobenius.observed / m
  bool normalized_chain_holds = false;
};

struct EigenvectorSummary {
  std::vector<EigenvectorCheck> checks;
  double bound = 0.0;
  double lambda_k = 0.0;
  double min_expected_degree = 0.0;
  bool gap_assumption = false;
  bool degree_assumption = false;
  int holding = 0;
  double fraction_holding = 0.0;
  double mean_error = 0.0;
  double mean_error_normalized = 0.0;
};

EigenvectorSummary CheckEigenvectorBound(const DcsbmParams& params, double tau,
                                         double epsilon, int reps,
                                         std::uint64_t seed);

// a - b as an operator; both must outlive it.
class DifferenceOperator final : public SymmetricOperator {
 public:
  DifferenceOperator(const SymmetricOperator& a, const SymmetricOperator& b);
  int dim() const override { return a_->dim(); }
  using SymmetricOperator::Apply;
  void Apply(std::span<const double> x, std::span<double> y) const override;

 private:
  const SymmetricOperator* a_;
  const SymmetricOperator* b_;
};

}  // namespace rsc

#endif  // RSC_EVALUATION_H_
