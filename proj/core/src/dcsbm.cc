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

#include "rsc/dcsbm.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "rsc/error.h"
#include "rsc/random.h"
#include "rsc/text_format.h"

namespace rsc {

void DcsbmParams::ValidateStructure() const {
  const int k = num_blocks;
  if (k < 1) throw InvalidArgument("need at least one block");
  if (block_matrix.rows() != k || block_matrix.cols() != k) {
    throw InvalidArgument("block matrix must be K x K");
  }
  if (theta.size() != membership.size()) {
    throw InvalidArgument("theta and membership lengths differ");
  }
  std::vector<int> sizes(k, 0);
  for (int z : membership) {
    if (z < 0 || z >= k) throw InvalidArgument("block label out of range");
    ++sizes[z];
  }
  for (int s = 0; s < k; ++s) {
    if (sizes[s] == 0) {
      throw InvalidArgument("block " + std::to_string(s) + " is empty");
    }
  }
  for (double t : theta) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw InvalidArgument("theta must be positive and finite");
    }
  }
  for (int s = 0; s < k; ++s) {
    for (int t = 0; t < k; ++t) {
      const double b = block_matrix(s, t);
      if (!(b >= 0.0) || !std::isfinite(b)) {
        throw InvalidArgument("block matrix entries must be finite and >= 0");
      }
      if (b != block_matrix(t, s)) {
        throw InvalidArgument("block matrix must be symmetric");
      }
    }
  }
}

void DcsbmParams::Validate(bool require_positive_definite) const {
  ValidateStructure();
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(num_blocks);
  for (std::size_t i = 0; i < theta.size(); ++i) sums[membership[i]] += theta[i];
  for (int s = 0; s < num_blocks; ++s) {
    if (std::abs(sums[s] - 1.0) > 1e-12) {
      throw InvalidArgument("theta in block " + std::to_string(s) +
                            " sums to " + FormatDouble(sums[s]) +
                            ", expected 1");
    }
  }
  if (require_positive_definite) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
        block_matrix, Eigen::EigenvaluesOnly);
    if (!(eig.eigenvalues().minCoeff() > 0.0)) {
      throw InvalidArgument("block matrix is not positive definite");
    }
  }
}

Eigen::VectorXd DcsbmParams::BlockTotals() const {
  return block_matrix.rowwise().sum();
}

std::vector<int> DcsbmParams::BlockSizes() const {
  std::vector<int> sizes(num_blocks, 0);
  for (int z : membership) ++sizes[z];
  return sizes;
}

std::vector<int> BalancedMembership(int n, int k) {
  if (k < 1 || n < k) throw InvalidArgument("need 1 <= k <= n");
  std::vector<int> z;
  z.reserve(n);
  for (int s = 0; s < k; ++s) {
    const int size = n / k + (s < n % k ? 1 : 0);
    z.insert(z.end(), size, s);
  }
  return z;
}

namespace {

Eigen::VectorXd PositiveBlockTotals(const DcsbmParams& params) {
  Eigen::VectorXd w = params.BlockTotals();
  for (int s = 0; s < w.size(); ++s) {
    if (!(w[s] > 0.0)) {
      throw InvalidArgument("block " + std::to_string(s) +
                            " has non-positive total expected degree");
    }
  }
  return w;
}

void CheckTau(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw InvalidArgument("tau must be finite and non-negative");
  }
}

}  // namespace

PopulationModel BuildPopulationModel(const DcsbmParams& params) {
  params.Validate(/*require_positive_definite=*/false);
  const int n = params.num_nodes();
  PopulationModel model;
  model.block_totals = params.BlockTotals();
  model.adjacency.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      model.adjacency(i, j) =
          params.theta[i] * params.theta[j] *
          params.block_matrix(params.membership[i], params.membership[j]);
    }
  }
  model.expected_degree.resize(n);
  for (int i = 0; i < n; ++i) {
    model.expected_degree[i] =
        params.theta[i] * model.block_totals[params.membership[i]];
  }
  return model;
}

Eigen::VectorXd ThetaTau(const DcsbmParams& params, double tau) {
  CheckTau(tau);
  const Eigen::VectorXd w = PositiveBlockTotals(params);
  Eigen::VectorXd out(params.num_nodes());
  for (int i = 0; i < params.num_nodes(); ++i) {
    const double t = params.theta[i];
    out[i] = t * t / (t + tau / w[params.membership[i]]);
  }
  return out;
}

Eigen::VectorXd ThetaTauFromDegrees(const DcsbmParams& params, double tau) {
  CheckTau(tau);
  const Eigen::VectorXd w = PositiveBlockTotals(params);
  Eigen::VectorXd out(params.num_nodes());
  for (int i = 0; i < params.num_nodes(); ++i) {
    const double d = params.theta[i] * w[params.membership[i]];
    out[i] = params.theta[i] * d / (d + tau);
  }
  return out;
}

Eigen::MatrixXd PopulationLaplacian(const DcsbmParams& params, double tau) {
  CheckTau(tau);
  PopulationModel model = BuildPopulationModel(params);
  PositiveBlockTotals(params);
  const Eigen::VectorXd inv_sqrt =
      (model.expected_degree.array() + tau).rsqrt().matrix();
  return inv_sqrt.asDiagonal() * model.adjacency * inv_sqrt.asDiagonal();
}

namespace {

Eigen::MatrixXd BlockLaplacian(const DcsbmParams& params) {
  const Eigen::VectorXd inv_sqrt_w = PositiveBlockTotals(params).array().rsqrt();
  return inv_sqrt_w.asDiagonal() * params.block_matrix *
         inv_sqrt_w.asDiagonal();
}

}  // namespace

Eigen::MatrixXd PopulationLaplacianFactored(const DcsbmParams& params,
                                            double tau) {
  params.Validate(/*require_positive_definite=*/false);
  const Eigen::MatrixXd bl = BlockLaplacian(params);
  const Eigen::VectorXd root = ThetaTau(params, tau).cwiseSqrt();
  const int n = params.num_nodes();
  Eigen::MatrixXd out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      out(i, j) =
          root[i] * root[j] * bl(params.membership[i], params.membership[j]);
    }
  }
  return out;
}

PopulationLaplacianOp::PopulationLaplacianOp(const DcsbmParams& params,
                                             double tau)
    : membership_(params.membership) {
  params.Validate(/*require_positive_definite=*/false);
  block_laplacian_ = BlockLaplacian(params);
  sqrt_theta_tau_ = ThetaTau(params, tau).cwiseSqrt();
}

void PopulationLaplacianOp::Apply(std::span<const double> x,
                                  std::span<double> y) const {
  CheckDims(x, y);
  const auto k = block_laplacian_.rows();
  Eigen::VectorXd block_sums = Eigen::VectorXd::Zero(k);
  for (std::size_t i = 0; i < x.size(); ++i) {
    block_sums[membership_[i]] += sqrt_theta_tau_[i] * x[i];
  }
  const Eigen::VectorXd mixed = block_laplacian_ * block_sums;
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = sqrt_theta_tau_[i] * mixed[membership_[i]];
  }
}

PopulationEigen ComputePopulationEigen(const DcsbmParams& params, double tau) {
  params.Validate(/*require_positive_definite=*/true);
  const int k = params.num_blocks;
  const int n = params.num_nodes();
  const Eigen::VectorXd theta_tau = ThetaTau(params, tau);
  Eigen::VectorXd block_mass = Eigen::VectorXd::Zero(k);
  for (int i = 0; i < n; ++i) block_mass[params.membership[i]] += theta_tau[i];

  const Eigen::VectorXd root_mass = block_mass.cwiseSqrt();
  Eigen::MatrixXd c =
      root_mass.asDiagonal() * BlockLaplacian(params) * root_mass.asDiagonal();
  c = 0.5 * (c + c.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
  if (eig.info() != Eigen::Success) throw Error("K x K eigensolve failed");

  PopulationEigen out;
  out.values = eig.eigenvalues().reverse();
  out.rotation = eig.eigenvectors().rowwise().reverse();
  if (!(out.values[k - 1] > 0.0)) {
    throw InvalidArgument("population Laplacian has a non-positive top-K "
                          "eigenvalue; B must be positive definite");
  }
  out.vectors.resize(n, k);
  out.normalized.resize(n, k);
  for (int i = 0; i < n; ++i) {
    const int z = params.membership[i];
    out.normalized.row(i) = out.rotation.row(z);
    out.vectors.row(i) =
        std::sqrt(theta_tau[i] / block_mass[z]) * out.rotation.row(z);
  }
  return out;
}

SampledGraph SampleGraph(const DcsbmParams& params, std::uint64_t seed) {
  params.ValidateStructure();
  const int n = params.num_nodes();
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  std::int64_t clamped = 0;
  for (int i = 0; i < n; ++i) {
    const double ti = params.theta[i];
    const auto row = params.block_matrix.row(params.membership[i]);
    for (int j = i + 1; j < n; ++j) {
      const double p = ti * params.theta[j] * row[params.membership[j]];
      if (p > 1.0) ++clamped;
      if (UniformUnit(rng) < p) edges.emplace_back(i, j);
    }
  }
  return {SparseGraph::FromIndexPairs(n, edges), clamped};
}

std::vector<double> ParetoDraws(int n, double beta, double x_min,
                                std::uint64_t seed) {
  if (!(beta > 1.0)) throw InvalidArgument("Pareto exponent beta must be > 1");
  if (!(x_min > 0.0)) throw InvalidArgument("x_min must be positive");
  if (n < 0) throw InvalidArgument("negative draw count");
  Rng rng(seed);
  const double exponent = -1.0 / (beta - 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = x_min * std::pow(UniformOpenZero(rng), exponent);
  return x;
}

std::vector<double> PowerLawTheta(std::span<const int> membership,
                                  int num_blocks, double beta, double x_min,
                                  std::uint64_t seed) {
  std::vector<double> theta =
      ParetoDraws(static_cast<int>(membership.size()), beta, x_min, seed);
  std::vector<double> sums(num_blocks, 0.0);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (membership[i] < 0 || membership[i] >= num_blocks) {
      throw InvalidArgument("block label out of range");
    }
    sums[membership[i]] += theta[i];
  }
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] /= sums[membership[i]];
  // Second pass absorbs the rounding of the first so block sums hit 1 to
  // within a few ulps.
  std::fill(sums.begin(), sums.end(), 0.0);
  for (std::size_t i = 0; i < theta.size(); ++i) sums[membership[i]] += theta[i];
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] /= sums[membership[i]];
  return theta;
}

Eigen::MatrixXd CalibratePlantedPartition(int num_blocks, int num_nodes,
                                          double snr, double avg_degree) {
  if (!(snr > 0.0) || !(avg_degree > 0.0)) {
    throw InvalidArgument("snr and average degree must be positive");
  }
  if (num_blocks < 2 || num_nodes < num_blocks) {
    throw InvalidArgument("planted partition needs K >= 2 and N >= K");
  }
  // in/out edge ratio: (K b_in / 2) / (K (K - 1) / 2 * b_out) = snr
  // degree total:      K b_in + K (K - 1) b_out = N * avg_degree
  const double k = num_blocks;
  const double b_out = num_nodes * avg_degree / (k * (k - 1.0) * (snr + 1.0));
  const double b_in = snr * (k - 1.0) * b_out;
  if (!(b_out > 0.0) || !(b_in > 0.0) || !std::isfinite(b_in)) {
    throw InvalidArgument("planted partition calibration is infeasible");
  }
  Eigen::MatrixXd b = Eigen::MatrixXd::Constant(num_blocks, num_blocks, b_out);
  b.diagonal().setConstant(b_in);
  return b;
}

void WriteModel(std::ostream& out, const DcsbmParams& params) {
  params.ValidateStructure();
  out << "# dcsbm model v1\n";
  out << "K " << params.num_blocks << '\n';
  out << "N " << params.num_nodes() << '\n';
  out << 'z';
  for (std::size_t i = 0; i < params.membership.size();) {
    std::size_t j = i;
    while (j < params.membership.size() &&
           params.membership[j] == params.membership[i]) {
      ++j;
    }
    out << ' ' << params.membership[i] << '*' << (j - i);
    i = j;
  }
  out << "\nB";
  for (int s = 0; s < params.num_blocks; ++s) {
    for (int t = 0; t < params.num_blocks; ++t) {
      out << ' ' << FormatDouble(params.block_matrix(s, t));
    }
  }
  out << "\ntheta";
  for (double t : params.theta) out << ' ' << FormatDouble(t);
  out << '\n';
}

DcsbmParams ReadModel(std::istream& in) {
  std::map<std::string, std::vector<std::string>> fields;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::string key, tok;
    tokens >> key;
    auto& values = fields[key];
    if (!values.empty()) throw ParseError("duplicate model key '" + key + "'");
    while (tokens >> tok) values.push_back(tok);
  }
  auto require = [&](const std::string& key) -> const std::vector<std::string>& {
    auto it = fields.find(key);
    if (it == fields.end()) throw ParseError("model is missing key '" + key + "'");
    return it->second;
  };
  auto single = [&](const std::string& key) {
    const auto& v = require(key);
    if (v.size() != 1) throw ParseError("key '" + key + "' takes one value");
    return ParseInt(v[0]);
  };

  DcsbmParams params;
  params.num_blocks = static_cast<int>(single("K"));
  const long long n = single("N");
  if (params.num_blocks < 1 || n < 0) throw ParseError("bad K or N");
  for (const auto& run : require("z")) {
    const auto star = run.find('*');
    if (star == std::string::npos) throw ParseError("bad z run '" + run + "'");
    const auto label = ParseInt(std::string_view(run).substr(0, star));
    const auto count = ParseInt(std::string_view(run).substr(star + 1));
    if (count < 0 || static_cast<long long>(params.membership.size()) + count > n) {
      throw ParseError("z runs exceed N");
    }
    params.membership.insert(params.membership.end(), count,
                             static_cast<int>(label));
  }
  if (static_cast<long long>(params.membership.size()) != n) {
    throw ParseError("z runs do not cover N nodes");
  }
  const auto& b = require("B");
  const auto k = static_cast<std::size_t>(params.num_blocks);
  if (b.size() != k * k) throw ParseError("B needs K*K entries");
  params.block_matrix.resize(params.num_blocks, params.num_blocks);
  for (std::size_t idx = 0; idx < b.size(); ++idx) {
    params.block_matrix(static_cast<Eigen::Index>(idx / k),
                        static_cast<Eigen::Index>(idx % k)) = ParseDouble(b[idx]);
  }
  const auto& theta = require("theta");
  if (static_cast<long long>(theta.size()) != n) {
    throw ParseError("theta needs N entries");
  }
  for (const auto& t : theta) params.theta.push_back(ParseDouble(t));
  params.ValidateStructure();
  return params;
}

}  // namespace rsc
