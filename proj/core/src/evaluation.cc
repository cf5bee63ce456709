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

#include "rsc/evaluation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "rsc/error.h"
#include "rsc/random.h"

namespace rsc {

MisclusterReport MisclusterPermutation(std::span<const int> estimated,
                                       std::span<const int> truth, int k) {
  if (estimated.size() != truth.size()) {
    throw InvalidArgument("label sequences differ in length");
  }
  if (k < 1) throw InvalidArgument("K must be positive");
  if (k > 8) {
    throw InvalidArgument("exact permutation matching supports K <= 8");
  }
  const auto n = static_cast<int>(truth.size());
  std::vector<int> confusion(static_cast<std::size_t>(k * k), 0);
  std::vector<int> block_counts(k, 0);
  for (int i = 0; i < n; ++i) {
    if (estimated[i] < 0 || estimated[i] >= k || truth[i] < 0 ||
        truth[i] >= k) {
      throw InvalidArgument("label out of range [0, K)");
    }
    ++confusion[estimated[i] * k + truth[i]];
    ++block_counts[estimated[i]];
  }
  MisclusterReport report;
  if (n == 0) return report;
  const int largest = *std::max_element(block_counts.begin(), block_counts.end());
  if (largest > kDegenerateShare * n) {
    report.degenerate = true;
    report.count = n;
    report.rate = 1.0;
    return report;
  }
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  int best = -1;
  do {
    int agree = 0;
    for (int e = 0; e < k; ++e) agree += confusion[e * k + perm[e]];
    if (agree > best) {
      best = agree;
      report.matching = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  report.count = n - best;
  report.rate = static_cast<double>(report.count) / n;
  return report;
}

CentroidMisclustering MisclusterByCentroids(const DcsbmParams& params,
                                            double tau,
                                            const Eigen::MatrixXd& x_star,
                                            std::span<const int> labels,
                                            const Eigen::MatrixXd& centroids,
                                            std::uint64_t seed) {
  const int n = params.num_nodes();
  const int k = params.num_blocks;
  if (x_star.rows() != n || x_star.cols() != k ||
      static_cast<int>(labels.size()) != n || centroids.cols() != k) {
    throw InvalidArgument("empirical clustering does not match the model shape");
  }
  const PopulationEigen population = ComputePopulationEigen(params, tau);

  KMeansOptions km;
  km.seed = seed;
  const KMeansResult pop_fit = KMeans(population.normalized, k, km);

  CentroidMisclustering out;
  out.population_centroids.resize(n, k);
  for (int i = 0; i < n; ++i) {
    out.population_centroids.row(i) = pop_fit.centroids.row(pop_fit.labels[i]);
  }
  // Distinct (block, population cluster) pairs stand in for "every j".
  std::set<std::pair<int, int>> reps;
  std::vector<int> representative;
  std::vector<int> rep_block;
  for (int j = 0; j < n; ++j) {
    if (reps.emplace(params.membership[j], pop_fit.labels[j]).second) {
      representative.push_back(j);
      rep_block.push_back(params.membership[j]);
    }
  }

  out.alignment = ProcrustesAlign(x_star, population.normalized);
  const double sufficient = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    const int label = labels[i];
    if (label < 0 || label >= centroids.rows()) {
      throw InvalidArgument("label has no centroid");
    }
    const Eigen::RowVectorXd aligned =
        centroids.row(label) * out.alignment.transpose();
    const double own = (aligned - out.population_centroids.row(i)).norm();
    if (own >= sufficient) out.outside_sufficient.push_back(i);
    for (std::size_t r = 0; r < representative.size(); ++r) {
      if (rep_block[r] == params.membership[i]) continue;
      const double other =
          (aligned - out.population_centroids.row(representative[r])).norm();
      if (own > other) {
        out.misclustered.push_back(i);
        break;
      }
    }
  }
  out.summary.count = static_cast<int>(out.misclustered.size());
  out.summary.rate = n == 0 ? 0.0 : static_cast<double>(out.summary.count) / n;
  return out;
}

CentroidMisclustering MisclusterByCentroids(const DcsbmParams& params,
                                            double tau,
                                            const ClusterResult& empirical,
                                            std::uint64_t seed) {
  return MisclusterByCentroids(params, tau, empirical.x_star, empirical.labels,
                               empirical.centroids, seed);
}

Eigen::VectorXd LeverageScores(const EigenBasis& basis) {
  return RowSquaredNorms(basis.vectors);
}

double LambdaKFourParam(double p, double r, int s, int k) {
  if (!(p > r) || !(r > 0.0)) throw InvalidArgument("need p > r > 0");
  if (s < 1 || k < 1) throw InvalidArgument("need s >= 1 and K >= 1");
  return 1.0 / (k * (r / (p - r)) + 1.0);
}

double MinExpectedDegree(const DcsbmParams& params) {
  const Eigen::VectorXd w = params.BlockTotals();
  double delta = std::numeric_limits<double>::infinity();
  for (int i = 0; i < params.num_nodes(); ++i) {
    delta = std::min(delta, params.theta[i] * w[params.membership[i]]);
  }
  return delta;
}

double ConcentrationBound(int n, double epsilon, double delta_plus_tau) {
  if (n < 1 || !(epsilon > 0.0) || !(delta_plus_tau > 0.0)) {
    throw InvalidArgument("bound needs N >= 1, eps > 0, delta + tau > 0");
  }
  return 4.0 * std::sqrt(3.0 * std::log(4.0 * n / epsilon) / delta_plus_tau);
}

bool ConcentrationAssumption(int n, double epsilon, double delta_plus_tau) {
  return delta_plus_tau > 3.0 * std::log(static_cast<double>(n)) +
                              3.0 * std::log(4.0 / epsilon);
}

double EigenvectorBound(int k, int n, double epsilon, double delta_plus_tau,
                        double lambda_k) {
  if (!(lambda_k > 0.0)) throw InvalidArgument("lambda_K must be positive");
  const double c = 32.0 * std::sqrt(3.0);
  return c / lambda_k *
         std::sqrt(k * std::log(4.0 * n / epsilon) / delta_plus_tau);
}

bool EigenvectorGapAssumption(int k, int n, double epsilon,
                              double delta_plus_tau, double lambda_k) {
  return std::sqrt(k * std::log(4.0 * n / epsilon) / delta_plus_tau) <=
         lambda_k / (8.0 * std::sqrt(3.0));
}

DifferenceOperator::DifferenceOperator(const SymmetricOperator& a,
                                       const SymmetricOperator& b)
    : a_(&a), b_(&b) {
  if (a.dim() != b.dim()) throw InvalidArgument("operator dimensions differ");
}

void DifferenceOperator::Apply(std::span<const double> x,
                               std::span<double> y) const {
  CheckDims(x, y);
  std::vector<double> tmp(x.size());
  a_->Apply(x, y);
  b_->Apply(x, tmp);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] -= tmp[i];
}

ConcentrationSummary CheckConcentration(const DcsbmParams& params, double tau,
                                        double epsilon, int reps,
                                        std::uint64_t seed) {
  if (reps < 1) throw InvalidArgument("reps must be >= 1");
  params.Validate(/*require_positive_definite=*/false);
  const int n = params.num_nodes();
  ConcentrationSummary out;
  out.min_expected_degree = MinExpectedDegree(params);
  const double dt = out.min_expected_degree + tau;
  out.bound = ConcentrationBound(n, epsilon, dt);
  out.assumptions_met = ConcentrationAssumption(n, epsilon, dt);
  const PopulationLaplacianOp population(params, tau);
  for (int r = 0; r < reps; ++r) {
    const SampledGraph sample = SampleGraph(params, DeriveSeed(seed, r));
    const RegLaplacianOp empirical(sample.graph, tau);
    const DifferenceOperator diff(empirical, population);
    SpectralNormOptions opts;
    opts.seed = DeriveSeed(seed, 0x5000 + r);
    BoundCheck check;
    check.observed = SymmetricSpectralNorm(diff, opts);
    check.bound = out.bound;
    check.holds = check.observed <= check.bound;
    check.epsilon = epsilon;
    check.assumptions_met = out.assumptions_met;
    out.holding += check.holds ? 1 : 0;
    out.checks.push_back(check);
  }
  out.fraction_holding = static_cast<double>(out.holding) / reps;
  return out;
}

EigenvectorSummary CheckEigenvectorBound(const DcsbmParams& params, double tau,
                                         double epsilon, int reps,
                                         std::uint64_t seed) {
  if (reps < 1) throw InvalidArgument("reps must be >= 1");
  const int n = params.num_nodes();
  const int k = params.num_blocks;
  const PopulationEigen population = ComputePopulationEigen(params, tau);
  const Eigen::VectorXd pop_norms = population.vectors.rowwise().norm();

  EigenvectorSummary out;
  out.lambda_k = population.values[k - 1];
  out.min_expected_degree = MinExpectedDegree(params);
  const double dt = out.min_expected_degree + tau;
  out.bound = EigenvectorBound(k, n, epsilon, dt, out.lambda_k);
  out.gap_assumption = EigenvectorGapAssumption(k, n, epsilon, dt, out.lambda_k);
  out.degree_assumption = ConcentrationAssumption(n, epsilon, dt);

  for (int r = 0; r < reps; ++r) {
    const SampledGraph sample = SampleGraph(params, DeriveSeed(seed, r));
    const RegLaplacianOp op(sample.graph, tau);
    EigenOptions eig;
    eig.seed = DeriveSeed(seed, 0x6000 + r);
    const EigenBasis basis = TopKEigen(op, k, eig);
    // O^T minimizes ||pop O^T - X||_F, so pop * O^T is the aligned population.
    const Eigen::MatrixXd o = ProcrustesAlign(population.vectors, basis.vectors);
    const Eigen::MatrixXd aligned = population.vectors * o.transpose();
    const Eigen::MatrixXd aligned_star = population.normalized * o.transpose();
    const RowNormalized x_star = RowNormalize(basis.vectors);

    EigenvectorCheck check;
    check.frobenius.observed = (basis.vectors - aligned).norm();
    check.frobenius.bound = out.bound;
    check.frobenius.holds = check.frobenius.observed <= out.bound;
    check.frobenius.epsilon = epsilon;
    check.frobenius.assumptions_met = out.gap_assumption && out.degree_assumption;
    check.error_normalized = (x_star.rows - aligned_star).norm();
    const Eigen::VectorXd emp_norms = basis.vectors.rowwise().norm();
    check.min_row_norm = std::min(emp_norms.minCoeff(), pop_norms.minCoeff());
    check.normalized_chain_holds =
        check.min_row_norm == 0.0 ||
        check.error_normalized <=
            check.frobenius.observed / check.min_row_norm * (1.0 + 1e-12) + 1e-12;
    out.holding += check.frobenius.holds ? 1 : 0;
    out.mean_error += check.frobenius.observed / reps;
    out.mean_error_normalized += check.error_normalized / reps;
    out.checks.push_back(check);
  }
  out.fraction_holding = static_cast<double>(out.holding) / reps;
  return out;
}

}  // namespace rsc
