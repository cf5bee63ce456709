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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rsc/error.h"
#include "rsc/random.h"

namespace rsc {
namespace {

void ApplyCol(const SymmetricOperator& op, const double* x, double* y) {
  const auto n = static_cast<std::size_t>(op.dim());
  op.Apply(std::span<const double>(x, n), std::span<double>(y, n));
}

// Largest-magnitude entry positive; first index wins ties.
void FixSigns(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, c) < 0.0) vectors.col(c) *= -1.0;
  }
}

std::vector<double> Residuals(const SymmetricOperator& op,
                              const Eigen::VectorXd& values,
                              const Eigen::MatrixXd& vectors) {
  std::vector<double> out(values.size());
  Eigen::VectorXd av(op.dim());
  for (Eigen::Index c = 0; c < values.size(); ++c) {
    ApplyCol(op, vectors.col(c).data(), av.data());
    out[c] = (av - values[c] * vectors.col(c)).norm();
  }
  return out;
}

EigenBasis DenseTopK(const SymmetricOperator& op, int k) {
  Eigen::MatrixXd dense = op.ToDense();
  dense = 0.5 * (dense + dense.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense);
  if (eig.info() != Eigen::Success) throw Error("dense eigensolve failed");
  EigenBasis out;
  out.values = eig.eigenvalues().tail(k).reverse();
  out.vectors = eig.eigenvectors().rightCols(k).rowwise().reverse();
  FixSigns(out.vectors);
  out.residuals = Residuals(op, out.values, out.vectors);
  out.dense = true;
  return out;
}

Eigen::VectorXd RandomUnit(int n, Rng& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = StandardNormal(rng);
  return v / v.norm();
}

// Orthogonalizes w against the first `cols` columns of basis (CGS2) and
// returns the accumulated coefficients.
Eigen::VectorXd Orthogonalize(const Eigen::MatrixXd& basis, Eigen::Index cols,
                              Eigen::Ref<Eigen::VectorXd> w) {
  const auto v = basis.leftCols(cols);
  Eigen::VectorXd h = v.transpose() * w;
  w.noalias() -= v * h;
  const Eigen::VectorXd h2 = v.transpose() * w;
  w.noalias() -= v * h2;
  return h + h2;
}

EigenBasis LanczosTopK(const SymmetricOperator& op, int k,
                       const EigenOptions& options) {
  const int n = op.dim();
  int m = options.krylov_dim > 0 ? options.krylov_dim
                                 : std::max(4 * k + 20, 60);
  m = std::min(m, n);
  if (m <= k && m < n) m = std::min(n, k + 1);

  Rng rng(options.seed);
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, m + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  basis.col(0) = RandomUnit(n, rng);

  Eigen::VectorXd w(n);
  std::vector<double> best(k, std::numeric_limits<double>::infinity());
  int locked = 0;
  double scale = 0.0;

  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    double beta = 0.0;
    for (int j = locked; j < m; ++j) {
      ApplyCol(op, basis.col(j).data(), w.data());
      const Eigen::VectorXd coeff = Orthogonalize(basis, j + 1, w);
      h.col(j).head(j + 1) = coeff;
      h.row(j).head(j + 1) = coeff.transpose();
      scale = std::max(scale, coeff.cwiseAbs().maxCoeff());
      beta = w.norm();
      if (j + 1 == n) {
        beta = 0.0;  // the basis spans the whole space
        break;
      }
      if (beta > 1e-12 * std::max(scale, 1e-300)) {
        basis.col(j + 1) = w / beta;
      } else {
        // Invariant subspace: continue from a fresh orthogonal direction.
        beta = 0.0;
        Eigen::VectorXd fresh = RandomUnit(n, rng);
        Orthogonalize(basis, j + 1, fresh);
        basis.col(j + 1) = fresh / fresh.norm();
      }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    if (eig.info() != Eigen::Success) throw Error("projected eigensolve failed");
    const Eigen::VectorXd theta = eig.eigenvalues().reverse();
    const Eigen::MatrixXd s = eig.eigenvectors().rowwise().reverse();

    bool estimates_ok = true;
    for (int i = 0; i < k; ++i) {
      const double r = beta * std::abs(s(m - 1, i));
      best[i] = std::min(best[i], r);
      estimates_ok = estimates_ok && r <= options.tol;
    }
    if (estimates_ok) {
      EigenBasis out;
      out.values = theta.head(k);
      out.vectors = basis.leftCols(m) * s.leftCols(k);
      FixSigns(out.vectors);
      out.residuals = Residuals(op, out.values, out.vectors);
      out.restarts = restart;
      const bool ok = std::all_of(out.residuals.begin(), out.residuals.end(),
                                  [&](double r) { return r <= options.tol; });
      if (ok) return out;
    }

    // Thick restart: keep the leading Ritz vectors plus the residual direction.
    const int keep = std::min(m - 1, k + (m - k) / 2);
    if (keep <= 0 || beta == 0.0) {
      // Nothing to extend; only reachable if residual checks failed after an
      // exact decomposition, i.e. the operator is not symmetric.
      break;
    }
    const Eigen::VectorXd residual = basis.col(m);
    const Eigen::MatrixXd ritz = basis.leftCols(m) * s.leftCols(keep);
    basis.leftCols(keep) = ritz;
    basis.col(keep) = residual;
    h.setZero();
    for (int i = 0; i < keep; ++i) h(i, i) = theta[i];
    locked = keep;
  }
  throw ConvergenceError("Lanczos did not converge after " +
                             std::to_string(options.max_restarts) + " restarts",
                         best);
}

}  // namespace

EigenBasis TopKEigen(const SymmetricOperator& op, int k,
                     const EigenOptions& options) {
  const int n = op.dim();
  if (k < 1 || k > n) {
    throw InvalidArgument("need 1 <= K <= n, got K = " + std::to_string(k) +
                          ", n = " + std::to_string(n));
  }
  if (!(options.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const bool dense =
      options.method == EigenMethod::kDense ||
      (options.method == EigenMethod::kAuto && n <= options.dense_threshold);
  return dense ? DenseTopK(op, k) : LanczosTopK(op, k, options);
}

RowNormalized RowNormalize(const Eigen::MatrixXd& x) {
  RowNormalized out{x, {}};
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double norm = x.row(i).norm();
    if (norm < 1e-12) {
      out.rows.row(i).setZero();
      out.zero_rows.push_back(static_cast<int>(i));
    } else {
      out.rows.row(i) /= norm;
    }
  }
  return out;
}

Eigen::VectorXd RowSquaredNorms(const Eigen::MatrixXd& x) {
  return x.rowwise().squaredNorm();
}

Eigen::MatrixXd ProcrustesAlign(const Eigen::MatrixXd& x,
                                const Eigen::MatrixXd& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw InvalidArgument("Procrustes alignment needs equal shapes");
  }
  // ||X O^T - Y||^2 = const - 2 tr(O X^T Y); with Y^T X = P S Q^T the
  // maximizer is O = P Q^T. Full SVD completes rank-deficient factors.
  const Eigen::MatrixXd cross = y.transpose() * x;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

double ProjectorDistance(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.rows() != y.rows()) {
    throw InvalidArgument("projector distance needs equal row counts");
  }
  const double xx = (x.transpose() * x).squaredNorm();
  const double yy = (y.transpose() * y).squaredNorm();
  const double xy = (x.transpose() * y).squaredNorm();
  return std::sqrt(std::max(0.0, xx + yy - 2.0 * xy));
}

double SymmetricSpectralNorm(const SymmetricOperator& op,
                             const SpectralNormOptions& options) {
  const int n = op.dim();
  if (n == 0) return 0.0;
  if (n <= options.dense_threshold) {
    Eigen::MatrixXd dense = op.ToDense();
    dense = 0.5 * (dense + dense.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense,
                                                       Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
  }
  Rng rng(options.seed);
  Eigen::VectorXd x = RandomUnit(n, rng);
  Eigen::VectorXd y(n);
  double previous = 0.0;
  for (int it = 0; it < options.max_iter; ++it) {
    ApplyCol(op, x.data(), y.data());
    const double estimate = y.norm();
    if (estimate == 0.0) return 0.0;
    x = y / estimate;
    if (it > 0 && std::abs(estimate - previous) <= options.rel_tol * estimate) {
      return estimate;
    }
    previous = estimate;
  }
  return previous;
}

}  // namespace rsc
