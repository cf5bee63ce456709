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

#include "rsc/spectral.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "rsc/dcsbm.h"
#include "rsc/error.h"
#include "rsc/sparse_graph.h"

namespace rsc {
namespace {

using testing::OracleEigen;
using testing::RandomModel;

Eigen::MatrixXd RandomOrthogonal(std::mt19937_64& gen, int k) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) m(i, j) = normal(gen);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ() * Eigen::MatrixXd::Identity(k, k);
}

TEST(TopKEigenTest, TriangleTopPair) {
  const std::vector<std::pair<int, int>> pairs = {{0, 1}, {1, 2}, {2, 0}};
  const SparseGraph g = SparseGraph::FromIndexPairs(3, pairs);
  const RegLaplacianOp op(g, 0.0);
  for (EigenMethod method : {EigenMethod::kDense, EigenMethod::kLanczos}) {
    EigenOptions options;
    options.method = method;
    const EigenBasis basis = TopKEigen(op, 1, options);
    EXPECT_NEAR(basis.values[0], 1.0, 1e-12);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(basis.vectors(i, 0), 1.0 / std::sqrt(3.0), 1e-10);
  }
}

TEST(TopKEigenTest, LanczosMatchesDenseOnSampledGraph) {
  std::mt19937_64 gen(31);
  const DcsbmParams p = RandomModel(gen, 200, 3, 15.0);
  const SparseGraph g = SampleGraph(p, 8).graph;
  const RegLaplacianOp op(g, g.AverageDegree());
  const auto dense = OracleEigen(op.ToDense());
  EigenOptions options;
  options.method = EigenMethod::kLanczos;
  options.seed = 3;
  const EigenBasis basis = TopKEigen(op, 3, options);
  EXPECT_FALSE(basis.dense);
  for (int c = 0; c < 3; ++c) {
    EXPECT_NEAR(basis.values[c], dense.values[c], 1e-8);
    EXPECT_LE(basis.residuals[c], 1e-8);
  }
  EXPECT_LT(ProjectorDistance(basis.vectors, dense.vectors.leftCols(3)), 1e-6);
}

TEST(TopKEigenTest, LanczosFindsRepeatedPopulationEigenvalues) {
  // Symmetric four-parameter model: eigenvalue lambda_2 = lambda_3.
  DcsbmParams p;
  p.num_blocks = 3;
  p.membership = BalancedMembership(600, 3);
  p.theta.assign(600, 1.0 / 200.0);
  p.block_matrix = CalibratePlantedPartition(3, 600, 3.0, 10.0);
  const PopulationLaplacianOp op(p, 10.0);
  const PopulationEigen pop = ComputePopulationEigen(p, 10.0);
  EigenOptions options;
  options.method = EigenMethod::kLanczos;
  const EigenBasis basis = TopKEigen(op, 3, options);
  for (int c = 0; c < 3; ++c) EXPECT_NEAR(basis.values[c], pop.values[c], 1e-8);
  EXPECT_LT(ProjectorDistance(basis.vectors, pop.vectors), 1e-6);
}

TEST(TopKEigenTest, ExhaustedRestartsReportResiduals) {
  std::mt19937_64 gen(32);
  const DcsbmParams p = RandomModel(gen, 300, 2, 10.0);
  const SparseGraph g = SampleGraph(p, 2).graph;
  const RegLaplacianOp op(g, 5.0);
  EigenOptions options;
  options.method = EigenMethod::kLanczos;
  options.krylov_dim = 8;
  options.max_restarts = 0;
  options.tol = 1e-14;
  try {
    TopKEigen(op, 2, options);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.residuals().size(), 2u);
  }
}

TEST(TopKEigenTest, RejectsBadK) {
  const DenseSymmetricOperator op(Eigen::MatrixXd::Identity(3, 3));
  EXPECT_THROW(TopKEigen(op, 0), InvalidArgument);
  EXPECT_THROW(TopKEigen(op, 4), InvalidArgument);
}

TEST(RowNormalizeTest, Examples) {
  Eigen::MatrixXd x(3, 2);
  x << 3, 4, 0, 0, 0.6, 0.8;
  const RowNormalized r = RowNormalize(x);
  EXPECT_NEAR(r.rows(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(r.rows(0, 1), 0.8, 1e-15);
  EXPECT_EQ(r.rows.row(1).norm(), 0.0);
  EXPECT_EQ(r.zero_rows, std::vector<int>{1});
  EXPECT_NEAR((r.rows.row(2) - x.row(2)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(RowSquaredNorms(x)[0], 25.0, 1e-12);
}

TEST(ProcrustesTest, RecoversRandomRotation) {
  std::mt19937_64 gen(41);
  std::normal_distribution<double> normal;
  for (int k : {2, 3, 5}) {
    Eigen::MatrixXd x(50, k);
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < k; ++j) x(i, j) = normal(gen);
    }
    const Eigen::MatrixXd rot = RandomOrthogonal(gen, k);
    const Eigen::MatrixXd y = x * rot.transpose();
    const Eigen::MatrixXd o = ProcrustesAlign(x, y);
    EXPECT_LT((o - rot).norm(), 1e-8);
    EXPECT_LT((ProcrustesAlign(x, x) - Eigen::MatrixXd::Identity(k, k)).norm(), 1e-10);
    // Alignment never increases error.
    Eigen::MatrixXd noisy = y;
    for (int i = 0; i < 50; ++i) noisy(i, 0) += normal(gen);
    const Eigen::MatrixXd o2 = ProcrustesAlign(x, noisy);
    EXPECT_LE((x * o2.transpose() - noisy).norm(), (x - noisy).norm() + 1e-12);
  }
}

TEST(ProjectorDistanceTest, MatchesExplicitProjectors) {
  std::mt19937_64 gen(42);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(20, 3), b(20, 3);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 3; ++j) {
      a(i, j) = normal(gen);
      b(i, j) = normal(gen);
    }
  }
  const Eigen::MatrixXd qa = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ() *
                             Eigen::MatrixXd::Identity(20, 3);
  const Eigen::MatrixXd qb = Eigen::HouseholderQR<Eigen::MatrixXd>(b).householderQ() *
                             Eigen::MatrixXd::Identity(20, 3);
  const double direct = (qa * qa.transpose() - qb * qb.transpose()).norm();
  EXPECT_NEAR(ProjectorDistance(qa, qb), direct, 1e-10);
  EXPECT_NEAR(ProjectorDistance(qa, qa * RandomOrthogonal(gen, 3)), 0.0, 1e-7);
}

TEST(SpectralNormTest, PowerIterationMatchesDense) {
  std::mt19937_64 gen(43);
  const DcsbmParams p = RandomModel(gen, 700, 3, 10.0);
  const SparseGraph g = SampleGraph(p, 4).graph;
  const RegLaplacianOp op(g, 3.0);
  const auto dense = OracleEigen(op.ToDense());
  const double exact =
      std::max(std::abs(dense.values[0]), std::abs(dense.values[dense.values.size() - 1]));
  SpectralNormOptions options;
  options.dense_threshold = 0;
  options.rel_tol = 1e-9;
  EXPECT_NEAR(SymmetricSpectralNorm(op, options), exact, 1e-6);
  options.dense_threshold = 1000;
  EXPECT_NEAR(SymmetricSpectralNorm(op, options), exact, 1e-12);
}

}  // namespace
}  // namespace rsc
