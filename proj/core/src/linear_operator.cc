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

#include "rsc/linear_operator.h"

#include <cmath>
#include <string>

#include "rsc/error.h"

namespace rsc {

void SymmetricOperator::CheckDims(std::span<const double> x,
                                  std::span<double> y) const {
  const auto n = static_cast<std::size_t>(dim());
  if (x.size() != n || y.size() != n) {
    throw InvalidArgument("operator of dimension " + std::to_string(n) +
                          " applied to vectors of size " +
                          std::to_string(x.size()) + " -> " +
                          std::to_string(y.size()));
  }
}

Eigen::MatrixXd SymmetricOperator::ToDense() const {
  const int n = dim();
  Eigen::MatrixXd out(n, n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd col(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    Apply(std::span<const double>(e.data(), n), std::span<double>(col.data(), n));
    out.col(j) = col;
    e[j] = 0.0;
  }
  return out;
}

Eigen::VectorXd SymmetricOperator::Apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(dim());
  Apply(std::span<const double>(x.data(), x.size()),
        std::span<double>(y.data(), y.size()));
  return y;
}

DenseSymmetricOperator::DenseSymmetricOperator(Eigen::MatrixXd matrix)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw InvalidArgument("dense operator must be square");
  }
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if ((matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidArgument("dense operator must be symmetric");
  }
}

void DenseSymmetricOperator::Apply(std::span<const double> x,
                                   std::span<double> y) const {
  CheckDims(x, y);
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::Map<Eigen::VectorXd>(y.data(), n).noalias() =
      matrix_ * Eigen::Map<const Eigen::VectorXd>(x.data(), n);
}

}  // namespace rsc
