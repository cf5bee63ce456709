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

#include "rsc/sparse_graph.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "rsc/error.h"

namespace rsc {
namespace {

// Builds symmetric CSR from (i, j) index pairs: drops loops, dedups, sorts.
void BuildCsr(int n, std::span<const std::pair<int, int>> edges,
              std::vector<std::int64_t>& offsets, std::vector<int>& cols) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    ++counts[u + 1];
    ++counts[v + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  std::vector<int> raw(static_cast<std::size_t>(counts.back()));
  std::vector<std::int64_t> cursor(counts.begin(), counts.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    raw[cursor[u]++] = v;
    raw[cursor[v]++] = u;
  }
  offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  cols.clear();
  cols.reserve(raw.size());
  for (int i = 0; i < n; ++i) {
    auto first = raw.begin() + counts[i];
    auto last = raw.begin() + counts[i + 1];
    std::sort(first, last);
    last = std::unique(first, last);
    cols.insert(cols.end(), first, last);
    offsets[i + 1] = static_cast<std::int64_t>(cols.size());
  }
}

}  // namespace

SparseGraph::SparseGraph(std::vector<std::int64_t> row_offsets,
                         std::vector<int> col_indices,
                         std::vector<std::string> node_names)
    : row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      node_names_(std::move(node_names)) {
  Validate();
  BuildNameIndex();
}

void SparseGraph::Validate() const {
  if (row_offsets_.empty() || row_offsets_.front() != 0) {
    throw InvalidArgument("row_offsets must start with 0");
  }
  const int n = num_nodes();
  if (static_cast<std::int64_t>(col_indices_.size()) != row_offsets_.back()) {
    throw InvalidArgument("row_offsets[n] must equal the number of entries");
  }
  if (!node_names_.empty() && static_cast<int>(node_names_.size()) != n) {
    throw InvalidArgument("node_names must be empty or have one entry per node");
  }
  for (int i = 0; i < n; ++i) {
    if (row_offsets_[i + 1] < row_offsets_[i]) {
      throw InvalidArgument("row_offsets must be non-decreasing");
    }
    const auto nbrs = Neighbors(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const int j = nbrs[k];
      if (j < 0 || j >= n) throw InvalidArgument("neighbor index out of range");
      if (j == i) throw InvalidArgument("self-loop at node " + std::to_string(i));
      if (k > 0 && nbrs[k - 1] >= j) {
        throw InvalidArgument("neighbor list of node " + std::to_string(i) +
                              " not strictly increasing");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j : Neighbors(i)) {
      if (!HasEdge(j, i)) {
        throw InvalidArgument("adjacency not symmetric at (" +
                              std::to_string(i) + ", " + std::to_string(j) +
                              ")");
      }
    }
  }
}

void SparseGraph::BuildNameIndex() {
  name_index_.clear();
  name_index_.reserve(node_names_.size());
  for (std::size_t i = 0; i < node_names_.size(); ++i) {
    if (!name_index_.emplace(node_names_[i], static_cast<int>(i)).second) {
      throw InvalidArgument("duplicate node name '" + node_names_[i] + "'");
    }
  }
}

SparseGraph SparseGraph::FromEdgeList(
    std::span<const std::pair<std::string, std::string>> edges) {
  std::unordered_map<std::string, int> index;
  std::vector<std::string> names;
  auto intern = [&](const std::string& id) {
    auto [it, inserted] = index.emplace(id, static_cast<int>(names.size()));
    if (inserted) names.push_back(id);
    return it->second;
  };
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    const int u = intern(a);
    const int v = intern(b);
    pairs.emplace_back(u, v);
  }
  std::vector<std::int64_t> offsets;
  std::vector<int> cols;
  BuildCsr(static_cast<int>(names.size()), pairs, offsets, cols);
  return SparseGraph(std::move(offsets), std::move(cols), std::move(names));
}

SparseGraph SparseGraph::FromIndexPairs(
    int n, std::span<const std::pair<int, int>> edges) {
  if (n < 0) throw InvalidArgument("node count must be non-negative");
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InvalidArgument("edge endpoint out of range");
    }
  }
  std::vector<std::int64_t> offsets;
  std::vector<int> cols;
  BuildCsr(n, edges, offsets, cols);
  return SparseGraph(std::move(offsets), std::move(cols));
}

double SparseGraph::AverageDegree() const {
  const int n = num_nodes();
  return n == 0 ? 0.0 : static_cast<double>(volume()) / n;
}

std::vector<int> SparseGraph::Degrees() const {
  std::vector<int> d(num_nodes());
  for (int i = 0; i < num_nodes(); ++i) d[i] = Degree(i);
  return d;
}

bool SparseGraph::HasEdge(int i, int j) const {
  const auto nbrs = Neighbors(i);
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

std::string SparseGraph::NodeName(int i) const {
  return node_names_.empty() ? std::to_string(i) : node_names_[i];
}

std::optional<int> SparseGraph::FindNode(std::string_view name) const {
  if (node_names_.empty()) {
    int idx = 0;
    const auto* end = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(name.data(), end, idx);
    if (ec != std::errc() || ptr != end || idx < 0 || idx >= num_nodes()) {
      return std::nullopt;
    }
    return idx;
  }
  auto it = name_index_.find(std::string(name));
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

SparseGraph SparseGraph::InducedSubgraph(std::span<const int> nodes) const {
  std::vector<int> local(num_nodes(), -1);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k] < 0 || nodes[k] >= num_nodes()) {
      throw InvalidArgument("subgraph node out of range");
    }
    if (local[nodes[k]] != -1) throw InvalidArgument("repeated subgraph node");
    local[nodes[k]] = static_cast<int>(k);
  }
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (int j : Neighbors(nodes[k])) {
      if (local[j] > static_cast<int>(k)) {
        pairs.emplace_back(static_cast<int>(k), local[j]);
      }
    }
  }
  std::vector<std::int64_t> offsets;
  std::vector<int> cols;
  BuildCsr(static_cast<int>(nodes.size()), pairs, offsets, cols);
  std::vector<std::string> names;
  if (has_names()) {
    names.reserve(nodes.size());
    for (int v : nodes) names.push_back(node_names_[v]);
  }
  return SparseGraph(std::move(offsets), std::move(cols), std::move(names));
}

Eigen::MatrixXd SparseGraph::ToDenseAdjacency() const {
  const int n = num_nodes();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j : Neighbors(i)) a(i, j) = 1.0;
  }
  return a;
}

Subgraph DropIsolated(const SparseGraph& graph) {
  std::vector<int> keep;
  for (int i = 0; i < graph.num_nodes(); ++i) {
    if (graph.Degree(i) > 0) keep.push_back(i);
  }
  return {graph.InducedSubgraph(keep), std::move(keep)};
}

Subgraph LargestConnectedComponent(const SparseGraph& graph) {
  const int n = graph.num_nodes();
  std::vector<int> component(n, -1);
  std::vector<int> sizes;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (component[s] != -1) continue;
    const int c = static_cast<int>(sizes.size());
    sizes.push_back(0);
    component[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      ++sizes[c];
      for (int v : graph.Neighbors(u)) {
        if (component[v] == -1) {
          component[v] = c;
          stack.push_back(v);
        }
      }
    }
  }
  if (sizes.empty()) return {SparseGraph(), {}};
  const int best = static_cast<int>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<int> keep;
  keep.reserve(sizes[best]);
  for (int i = 0; i < n; ++i) {
    if (component[i] == best) keep.push_back(i);
  }
  return {graph.InducedSubgraph(keep), std::move(keep)};
}

std::vector<std::pair<std::string, std::string>> ReadEdgeList(
    std::istream& in) {
  std::vector<std::pair<std::string, std::string>> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::string a, b, extra;
    if (!(tokens >> a >> b) || (tokens >> extra)) {
      throw ParseError("edge list line " + std::to_string(line_no) +
                       ": expected two tokens, got '" + line + "'");
    }
    edges.emplace_back(std::move(a), std::move(b));
  }
  return edges;
}

std::vector<std::pair<std::string, std::string>> ReadEdgeListFile(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list '" + path + "'");
  return ReadEdgeList(in);
}

RegLaplacianOp::RegLaplacianOp(const SparseGraph& graph, double tau,
                               double perturb_a)
    : graph_(&graph), tau_(tau), perturb_a_(perturb_a) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw InvalidArgument("tau must be finite and non-negative");
  }
  if (!(perturb_a >= 0.0) || !std::isfinite(perturb_a)) {
    throw InvalidArgument("perturbation weight must be finite and non-negative");
  }
  const int n = graph.num_nodes();
  const double shift = perturb_a * n + tau;
  scale_.resize(n);
  for (int i = 0; i < n; ++i) {
    const double d = graph.Degree(i) + shift;
    if (d <= 0.0) {
      throw IsolatedNodeError(
          i, "node " + graph.NodeName(i) +
                 " has degree 0 and tau = 0; drop isolated nodes or regularize");
    }
    scale_[i] = 1.0 / std::sqrt(d);
  }
}

void RegLaplacianOp::Apply(std::span<const double> x,
                           std::span<double> y) const {
  CheckDims(x, y);
  const int n = dim();
  const auto& offsets = graph_->row_offsets();
  const auto& cols = graph_->col_indices();
  double rank_one = 0.0;
  if (perturb_a_ > 0.0) {
    for (int i = 0; i < n; ++i) rank_one += scale_[i] * x[i];
    rank_one *= perturb_a_;
  }
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (auto k = offsets[i]; k < offsets[i + 1]; ++k) {
      const int j = cols[k];
      acc += scale_[j] * x[j];
    }
    y[i] = scale_[i] * (acc + rank_one);
  }
}

Eigen::MatrixXd RegLaplacianOp::ToDense() const {
  const int n = dim();
  Eigen::MatrixXd out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) out(i, j) = perturb_a_ * scale_[i] * scale_[j];
  }
  for (int i = 0; i < n; ++i) {
    for (int j : graph_->Neighbors(i)) out(i, j) += scale_[i] * scale_[j];
  }
  return out;
}

}  // namespace rsc
