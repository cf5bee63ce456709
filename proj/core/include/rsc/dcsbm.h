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

#ifndef RSC_DCSBM_H_
#define RSC_DCSBM_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rsc/linear_operator.h"
#include "rsc/sparse_graph.h"

namespace rsc {

// Degree-corrected stochastic blockmodel: P(i ~ j) = theta_i theta_j B(z_i, z_j).
//
// Block labels are 0-based. Under the identifiability constraint (theta sums
// to one inside every block) B(s, t) is the expected number of edges between
// blocks s != t, and twice the expected count inside a block when s == t.
struct DcsbmParams {
  int num_blocks = 0;
  Eigen::MatrixXd block_matrix;
  std::vector<int> membership;
  std::vector<double> theta;

  int num_nodes() const { return static_cast<int>(membership.size()); }

  // Shapes, label range, non-empty blocks, theta > 0, B symmetric and
  // non-negative. Enough for sampling.
  void ValidateStructure() const;
  // Adds the per-block theta sum constraint (1e-12) and, optionally, positive
  // definiteness of B.
  void Validate(bool require_positive_definite = true) const;

  // W_s = sum_t B(s, t): expected total degree of block s.
  Eigen::VectorXd BlockTotals() const;
  // Number of nodes per block.
  std::vector<int> BlockSizes() const;
};

// Contiguous blocks; the first n % k blocks receive one extra node.
std::vector<int> BalancedMembership(int n, int k);

// Expected adjacency (with the diagonal theta_i^2 B(z_i, z_i) term), expected
// degrees D_ii = theta_i W_{z_i}, and the block totals W.
struct PopulationModel {
  Eigen::MatrixXd adjacency;
  Eigen::VectorXd expected_degree;
  Eigen::VectorXd block_totals;
};
PopulationModel BuildPopulationModel(const DcsbmParams& params);

// theta^tau_i = theta_i^2 / (theta_i + tau / W_{z_i}).
Eigen::VectorXd ThetaTau(const DcsbmParams& params, double tau);
// theta^tau_i = theta_i D_ii / (D_ii + tau); equal to ThetaTau.
Eigen::VectorXd ThetaTauFromDegrees(const DcsbmParams& params, double tau);

// D_tau^{-1/2} A D_tau^{-1/2} from the expected adjacency.
Eigen::MatrixXd PopulationLaplacian(const DcsbmParams& params, double tau);
// Theta_tau^{1/2} Z B_L Z^T Theta_tau^{1/2} with B_L = D_B^{-1/2} B D_B^{-1/2}.
Eigen::MatrixXd PopulationLaplacianFactored(const DcsbmParams& params,
                                            double tau);

// The factored population Laplacian as an implicit operator, O(N K) per
// application.
class PopulationLaplacianOp final : public SymmetricOperator {
 public:
  PopulationLaplacianOp(const DcsbmParams& params, double tau);

  int dim() const override { return static_cast<int>(membership_.size()); }
  using SymmetricOperator::Apply;
  void Apply(std::span<const double> x, std::span<double> y) const override;

 private:
  std::vector<int> membership_;
  Eigen::VectorXd sqrt_theta_tau_;
  Eigen::MatrixXd block_laplacian_;
};

// Closed-form top-K eigendecomposition of the population Laplacian, via the
// K x K matrix C = S^{1/2} B_L S^{1/2} where S = Z^T Theta_tau Z.
struct PopulationEigen {
  Eigen::VectorXd values;      // descending, all positive
  Eigen::MatrixXd vectors;     // N x K, orthonormal columns
  Eigen::MatrixXd normalized;  // row-normalized vectors; equals Z U
  Eigen::MatrixXd rotation;    // U, K x K orthogonal
};
PopulationEigen ComputePopulationEigen(const DcsbmParams& params, double tau);

struct SampledGraph {
  SparseGraph graph;
  // Pairs whose theta_i theta_j B exceeded 1 and were clamped.
  std::int64_t clamped_pairs = 0;
};

// Independent Bernoulli(min(1, theta_i theta_j B)) edge for every i < j.
SampledGraph SampleGraph(const DcsbmParams& params, std::uint64_t seed);

// Pareto draws x_min * u^{-1/(beta-1)}, density proportional to x^{-beta}.
std::vector<double> ParetoDraws(int n, double beta, double x_min,
                                std::uint64_t seed);

// Pareto draws normalized to sum to one within each block.
std::vector<double> PowerLawTheta(std::span<const int> membership,
                                  int num_blocks, double beta, double x_min,
                                  std::uint64_t seed);

// Planted-partition B with b_in on the diagonal and b_out elsewhere, chosen so
// that expected in-block edges / out-block edges == snr and the expected
// average degree is avg_degree.
Eigen::MatrixXd CalibratePlantedPartition(int num_blocks, int num_nodes,
                                          double snr, double avg_degree);

// Key-value text serialization. Membership is run-length encoded as
// `label*count` tokens; floats use shortest round-trip decimal.
void WriteModel(std::ostream& out, const DcsbmParams& params);
DcsbmParams ReadModel(std::istream& in);

}  // namespace rsc

#endif  // RSC_DCSBM_H_
