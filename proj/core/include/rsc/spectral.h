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

#ifndef RSC_SPECTRAL_H_
#define RSC_SPECTRAL_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rsc/linear_operator.h"

namespace rsc {

// Top-K eigenpairs, algebraically largest first.
struct EigenBasis {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // n x K, orthonormal columns
  // ||L v_k - lambda_k v_k||_2 for every returned pair.
  std::vector<double> residuals;
  int restarts = 0;
  bool dense = false;
};

enum class EigenMethod {
  kAuto,     // dense for n <= dense_threshold, Lanczos otherwise
  kDense,
  kLanczos,
};

struct EigenOptions {
  double tol = 1e-8;
  int max_restarts = 200;
  std::uint64_t seed = 0;
  EigenMethod method = EigenMethod::kAuto;
  int dense_threshold = 512;
  // Krylov subspace size; 0 selects min(n, max(4K + 20, 60)).
  int krylov_dim = 0;
};

// K algebraically largest eigenpairs of a symmetric operator.
//
// The iterative path is thick-restart Lanczos with full (classical
// Gram-Schmidt, applied twice) reorthogonalization. When the Krylov space
// becomes invariant a fresh random direction is injected, which recovers
// repeated eigenvalues of low-rank operators. Eigenvector signs are fixed so
// the largest-magnitude entry of each vector is positive.
//
// Throws ConvergenceError carrying the best residual estimates when
// `max_restarts` is exhausted.
EigenBasis TopKEigen(const SymmetricOperator& op, int k,
                     const EigenOptions& options = {});

struct RowNormalized {
  Eigen::MatrixXd rows;
  // Rows whose norm was below 1e-12; left as zero.
  std::vector<int> zero_rows;
};
RowNormalized RowNormalize(const Eigen::MatrixXd& x);

// Squared Euclidean norm of every row.
Eigen::VectorXd RowSquaredNorms(const Eigen::MatrixXd& x);

// Orthogonal O minimizing ||X O^T - Y||_F, from the SVD of Y^T X.
Eigen::MatrixXd ProcrustesAlign(const Eigen::MatrixXd& x,
                                const Eigen::MatrixXd& y);

// ||X X^T - Y Y^T||_F without forming the n x n projectors.
double ProjectorDistance(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

struct SpectralNormOptions {
  double rel_tol = 1e-6;
  int max_iter = 20000;
  std::uint64_t seed = 0;
  // Dense symmetric eigensolve when n <= dense_threshold.
  int dense_threshold = 512;
};

// Largest |eigenvalue| of a symmetric operator by power iteration.
double SymmetricSpectralNorm(const SymmetricOperator& op,
                             const SpectralNormOptions& options = {});

}  // namespace rsc

#endif  // RSC_SPECTRAL_H_
