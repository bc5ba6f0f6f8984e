// Copyright 2026 The incestfree Authors
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

// Information-flow DAGs over event-indexed nodes.
//
// Nodes are numbered 1..N in causal order: an edge (m, n) means the action
// (or belief) of node m reaches node n, and always m < n. With this
// numbering the adjacency matrix A (A(m,n) = 1 for an edge m -> n) is
// strictly upper triangular and the reachability matrix T is unit upper
// triangular, so every per-node quantity below is exact integer arithmetic.
//
// Public node ids are 1-based. The Matrix accessors are 0-based, so
// adjacency()(m - 1, n - 1) is the entry for the edge m -> n.

#ifndef INCESTFREE_GRAPH_HPP_
#define INCESTFREE_GRAPH_HPP_

#include <cstdint>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "incestfree/matrix.hpp"

namespace incestfree {

using NodeId = int;
using Edge = std::pair<NodeId, NodeId>;
using NodeSet = std::set<NodeId>;

struct NodeCoordinates {
  int agent = 1;         // s in 1..S
  int epoch = 1;         // k >= 1
  int agents_total = 1;  // S
  friend bool operator==(const NodeCoordinates&,
                         const NodeCoordinates&) = default;
};

// n = s + S (k - 1).
NodeId NodeIndex(int agent, int epoch, int agents_total);
NodeCoordinates NodeCoords(NodeId node, int agents_total);

// Reachability closure of a strictly upper triangular 0/1 matrix, with unit
// diagonal. Throws kDomain if the input is not square, binary and strictly
// upper triangular.
Matrix<int> TransitiveClosure(const Matrix<int>& adjacency);

class InfoFlowGraph {
 public:
  // Throws kDagOrder for an edge with m >= n and kDomain for an edge
  // outside 1..n_nodes. Duplicate edges are merged.
  InfoFlowGraph(int n_nodes, std::span<const Edge> edges);
  InfoFlowGraph(int n_nodes, std::initializer_list<Edge> edges)
      : InfoFlowGraph(n_nodes, std::span<const Edge>(edges.begin(),
                                                      edges.size())) {}

  int n_nodes() const noexcept { return n_nodes_; }
  // Sorted, deduplicated.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Matrix<int>& adjacency() const noexcept { return adjacency_; }
  const Matrix<int>& closure() const noexcept { return closure_; }

  bool HasEdge(NodeId from, NodeId to) const;
  // True for from == to.
  bool Reaches(NodeId from, NodeId to) const;

  // Direct predecessors (H_n).
  NodeSet OneHop(NodeId node) const;
  // All strict ancestors (F_n); the node itself is excluded.
  NodeSet MultiHop(NodeId node) const;
  NodeSet Children(NodeId node) const;

  // Fair-rating weights: the integer solution w of T_{n-1} w = t_n where
  // t_n is column n of T above the diagonal. Length n - 1 (empty for n = 1).
  const std::vector<std::int64_t>& Weights(NodeId node) const;

  // Every nonzero weight sits on a direct predecessor.
  bool IsAchievable(NodeId node) const;
  bool AllAchievable() const;

  // Nodes at which naive fusion of the direct predecessors double counts
  // some ancestor, i.e. w_n differs from the indicator of H_n.
  NodeSet IncestNodes() const;

  // Number of distinct directed paths from -> to (1 when from == to).
  std::int64_t PathCount(NodeId from, NodeId to) const;
  // Full path-count matrix (I - A)^{-1}, 0-based.
  const Matrix<std::int64_t>& PathCounts() const noexcept {
    return path_counts_;
  }

  // Subgraph induced on nodes 1..k.
  InfoFlowGraph Prefix(int k) const;

 private:
  void CheckNode(NodeId node) const;

  int n_nodes_;
  std::vector<Edge> edges_;
  Matrix<int> adjacency_;
  Matrix<int> closure_;
  Matrix<std::int64_t> path_counts_;
  std::vector<std::vector<std::int64_t>> weights_;  // indexed by node - 1
};

// Nodes outside `recruits` whose beliefs enter the fair-rating
// reconstruction (nonzero w_n entries) of some recruit.
NodeSet MinimalExtraNodes(const InfoFlowGraph& graph, const NodeSet& recruits);

}  // namespace incestfree

#endif  // INCESTFREE_GRAPH_HPP_
