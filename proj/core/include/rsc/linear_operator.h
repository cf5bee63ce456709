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

#ifndef RSC_LINEAR_OPERATOR_H_
#define RSC_LINEAR_OPERATOR_H_

#include <span>

#include <Eigen/Dense>

namespace rsc {

// A real symmetric linear map R^n -> R^n known only through its action.
// Implementations must be immutable after construction so that Apply can be
// called concurrently.
class SymmetricOperator {
 public:
  virtual ~SymmetricOperator() = default;

  virtual int dim() const = 0;

  // y <- Op * x. Throws InvalidArgument on size mismatch.
  virtual void Apply(std::span<const double> x, std::span<double> y) const = 0;

  // Dense n x n materialization. The default applies the operator to every
  // unit vector, which is O(n) applications.
  virtual Eigen::MatrixXd ToDense() const;

  Eigen::VectorXd Apply(const Eigen::VectorXd& x) const;

 protected:
  void CheckDims(std::span<const double> x, std::span<double> y) const;
};

// Wraps an explicit symmetric matrix. Symmetry is checked to 1e-12 relative to
// the largest entry.
class DenseSymmetricOperator final : public SymmetricOperator {
 public:
  explicit DenseSymmetricOperator(Eigen::MatrixXd matrix);

  int dim() const override { return static_cast<int>(matrix_.rows()); }
  using SymmetricOperator::Apply;
  void Apply(std::span<const double> x, std::span<double> y) const override;
  Eigen::MatrixXd ToDense() const override { return matrix_; }

  const Eigen::MatrixXd& matrix() const { return matrix_; }

 private:
  Eigen::MatrixXd matrix_;
};

}  // namespace rsc

#endif  // RSC_LINEAR_OPERATOR_H_
