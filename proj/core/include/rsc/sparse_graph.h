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

#ifndef RSC_SPARSE_GRAPH_H_
#define RSC_SPARSE_GRAPH_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rsc/linear_operator.h"

namespace rsc {

// Undirected, unweighted simple graph in compressed sparse row form.
//
// Invariants (checked on construction):
//  - symmetric: j in N(i) iff i in N(j)
//  - no self-loops, no duplicates, neighbor lists sorted ascending
//  - row_offsets non-decreasing with row_offsets[n] == 2|E|
//
// Nodes may carry external string names. Names are assigned dense indices in
// first-seen order when a graph is built from an edge list.
class SparseGraph {
 public:
  SparseGraph() : row_offsets_{0} {}

  // Takes ownership of CSR arrays. `node_names` is either empty or of size n.
  SparseGraph(std::vector<std::int64_t> row_offsets,
              std::vector<int> col_indices,
              std::vector<std::string> node_names = {});

  // Symmetrizes, drops self-loops and collapses duplicates. Nodes that only
  // appear in self-loops are kept as isolated nodes.
  static SparseGraph FromEdgeList(
      std::span<const std::pair<std::string, std::string>> edges);

  // Same cleanup as FromEdgeList over integer ids in [0, n). Unnamed.
  static SparseGraph FromIndexPairs(int n,
                                    std::span<const std::pair<int, int>> edges);

  int num_nodes() const { return static_cast<int>(row_offsets_.size()) - 1; }
  std::int64_t num_edges() const { return row_offsets_.back() / 2; }
  // M = sum of degrees = 2|E|.
  std::int64_t volume() const { return row_offsets_.back(); }
  // M / N, or 0 for the empty graph.
  double AverageDegree() const;

  std::span<const int> Neighbors(int i) const {
    return {col_indices_.data() + row_offsets_[i],
            col_indices_.data() + row_offsets_[i + 1]};
  }
  int Degree(int i) const {
    return static_cast<int>(row_offsets_[i + 1] - row_offsets_[i]);
  }
  std::vector<int> Degrees() const;
  bool HasEdge(int i, int j) const;

  const std::vector<std::int64_t>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& col_indices() const { return col_indices_; }

  bool has_names() const { return !node_names_.empty(); }
  const std::vector<std::string>& node_names() const { return node_names_; }
  // External name of node i; its decimal index for unnamed graphs.
  std::string NodeName(int i) const;
  std::optional<int> FindNode(std::string_view name) const;

  // Subgraph induced by `nodes` (in the given order). Names carried over.
  SparseGraph InducedSubgraph(std::span<const int> nodes) const;

  Eigen::MatrixXd ToDenseAdjacency() const;

  friend bool operator==(const SparseGraph& a, const SparseGraph& b) {
    return a.row_offsets_ == b.row_offsets_ &&
           a.col_indices_ == b.col_indices_;
  }

 private:
  void Validate() const;
  void BuildNameIndex();

  std::vector<std::int64_t> row_offsets_;
  std::vector<int> col_indices_;
  std::vector<std::string> node_names_;
  std::unordered_map<std::string, int> name_index_;
};

// A subgraph plus the index in the parent graph of each of its nodes.
struct Subgraph {
  SparseGraph graph;
  std::vector<int> parent_index;
};

Subgraph DropIsolated(const SparseGraph& graph);

// Ties between equally large components go to the one containing the lowest
// node index. Nodes keep their relative order.
Subgraph LargestConnectedComponent(const SparseGraph& graph);

// Edge-list text: one edge per line, two whitespace-separated tokens. Lines
// starting with '#' and blank lines are skipped. Throws ParseError naming the
// offending line otherwise.
std::vector<std::pair<std::string, std::string>> ReadEdgeList(
    std::istream& in);
std::vector<std::pair<std::string, std::string>> ReadEdgeListFile(
    const std::string& path);

// L = D_tau^{-1/2} (A + a 11^T) D_tau^{-1/2} with D_tau = diag(d_i + a n + tau).
// The rank-one term is applied implicitly, so Apply costs O(|E| + n).
//
// Holds a non-owning pointer to `graph`, which must outlive the operator.
class RegLaplacianOp final : public SymmetricOperator {
 public:
  // Throws IsolatedNodeError when tau == 0, perturb_a == 0 and some node has
  // degree zero; InvalidArgument for negative parameters.
  RegLaplacianOp(const SparseGraph& graph, double tau, double perturb_a = 0.0);

  int dim() const override { return graph_->num_nodes(); }
  using SymmetricOperator::Apply;
  void Apply(std::span<const double> x, std::span<double> y) const override;
  Eigen::MatrixXd ToDense() const override;

  const SparseGraph& graph() const { return *graph_; }
  double tau() const { return tau_; }
  double perturb_a() const { return perturb_a_; }
  // scale_i = (d_i + a n + tau)^{-1/2}
  std::span<const double> scale() const { return scale_; }

 private:
  const SparseGraph* graph_;
  double tau_;
  double perturb_a_;
  std::vector<double> scale_;
};

}  // namespace rsc

#endif  // RSC_SPARSE_GRAPH_H_
