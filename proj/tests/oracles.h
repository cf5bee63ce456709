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

// Model generators and brute-force oracles shared by the tests. Everything
// here is computed from definitions with plain loops so it does not share
// code paths with the library.

#ifndef RSC_TESTS_ORACLES_H_
#define RSC_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "rsc/dcsbm.h"

namespace rsc::testing {

// Random valid DC-SBM: blocks of random sizes, theta normalized per block,
// and a diagonally dominant (hence positive definite) B scaled so the
// expected average degree is near `avg_degree`.
inline DcsbmParams RandomModel(std::mt19937_64& gen, int n, int k,
                               double avg_degree = 12.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  DcsbmParams p;
  p.num_blocks = k;
  p.membership.resize(n);
  for (int i = 0; i < n; ++i) p.membership[i] = i < k ? i : static_cast<int>(gen() % k);
  std::shuffle(p.membership.begin(), p.membership.end(), gen);
  p.theta.resize(n);
  std::vector<double> sums(k, 0.0);
  for (int i = 0; i < n; ++i) {
    p.theta[i] = 0.2 + unit(gen);
    sums[p.membership[i]] += p.theta[i];
  }
  for (int i = 0; i < n; ++i) p.theta[i] /= sums[p.membership[i]];
  Eigen::MatrixXd b(k, k);
  for (int s = 0; s < k; ++s) {
    for (int t = 0; t <= s; ++t) b(s, t) = b(t, s) = 0.4 * unit(gen) / k;
  }
  for (int s = 0; s < k; ++s) b(s, s) = 1.0 + unit(gen);
  // Sum of expected degrees is sum_{s,t} B_st (theta sums to one per block).
  const double scale = avg_degree * n / b.sum();
  p.block_matrix = b * scale;
  return p;
}

// Expected adjacency theta_i theta_j B_{z_i z_j}, diagonal included.
inline Eigen::MatrixXd OracleExpectedAdjacency(const DcsbmParams& p) {
  const int n = p.num_nodes();
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a(i, j) = p.theta[i] * p.theta[j] *
                p.block_matrix(p.membership[i], p.membership[j]);
    }
  }
  return a;
}

// D_tau^{-1/2} A D_tau^{-1/2} straight from the definition.
inline Eigen::MatrixXd OracleNormalized(const Eigen::MatrixXd& a, double tau) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd l(n, n);
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = a.row(i).sum() + tau;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) l(i, j) = a(i, j) / std::sqrt(d[i] * d[j]);
  }
  return l;
}

// Eigenpairs sorted by descending eigenvalue.
struct DenseEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

inline DenseEigen OracleEigen(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  return {solver.eigenvalues().reverse(),
          solver.eigenvectors().rowwise().reverse()};
}

// Smallest Hamming disagreement over every relabeling, by enumeration.
inline int OraclePermutationErrors(const std::vector<int>& est,
                                   const std::vector<int>& truth, int k) {
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  int best = static_cast<int>(est.size());
  do {
    int errors = 0;
    for (std::size_t i = 0; i < est.size(); ++i) errors += perm[est[i]] != truth[i];
    best = std::min(best, errors);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace rsc::testing

#endif  // RSC_TESTS_ORACLES_H_
