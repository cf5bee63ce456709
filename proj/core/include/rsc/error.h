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

#ifndef RSC_ERROR_H_
#define RSC_ERROR_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace rsc {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition or argument validation failure.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A degree-zero node makes D^{-1/2} undefined (tau = 0 and no perturbation).
class IsolatedNodeError : public Error {
 public:
  IsolatedNodeError(int node, std::string message)
      : Error(std::move(message)), node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

// Eigensolver ran out of restarts. Carries the best residual per wanted pair.
class ConvergenceError : public Error {
 public:
  ConvergenceError(std::string message, std::vector<double> residuals)
      : Error(std::move(message)), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

// Malformed input file or stream.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace rsc

#endif  // RSC_ERROR_H_
