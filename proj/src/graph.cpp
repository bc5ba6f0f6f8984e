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

#include "incestfree/graph.hpp"

#include <algorithm>
#include <string>

#include "incestfree/errors.hpp"

namespace incestfree {
namespace {

std::string EdgeText(const Edge& e) {
  return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

std::int64_t CheckedAdd(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorKind::kCapacity, "integer overflow in graph arithmetic");
  }
  return out;
}

std::int64_t CheckedSub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw Error(ErrorKind::kCapacity, "integer overflow in graph arithmetic");
  }
  return out;
}

}  // namespace

NodeId NodeIndex(int agent, int epoch, int agents_total) {
  if (agents_total < 1 || agent < 1 || agent > agents_total || epoch < 1) {
    throw Error(ErrorKind::kDomain,
                "node index needs 1 <= s <= S and k >= 1 (got s=" +
                    std::to_string(agent) + ", k=" + std::to_string(epoch) +
                    ", S=" + std::to_string(agents_total) + ")");
  }
  return agent + agents_total * (epoch - 1);
}

NodeCoordinates NodeCoords(NodeId node, int agents_total) {
  if (node < 1 || agents_total < 1) {
    throw Error(ErrorKind::kDomain, "node coordinates need n >= 1 and S >= 1");
  }
  return {(node - 1) % agents_total + 1, (node - 1) / agents_total + 1,
          agents_total};
}

Matrix<int> TransitiveClosure(const Matrix<int>& adjacency) {
  const std::size_t n = adjacency.rows();
  if (adjacency.cols() != n) {
    throw Error(ErrorKind::kDomain, "adjacency matrix must be square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const int v = adjacency(i, j);
      if (v != 0 && v != 1) {
        throw Error(ErrorKind::kDomain, "adjacency matrix must be 0/1");
      }
      if (v == 1 && j <= i) {
        throw Error(ErrorKind::kDomain,
                    "adjacency matrix must be strictly upper triangular (entry " +
                        std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ")");
      }
    }
  }
  // Node numbering is a topological order, so one sweep from the last node
  // backwards sees every successor's row already closed.
  Matrix<int> closure(n, n, 0);
  for (std::size_t i = n; i-- > 0;) {
    closure(i, i) = 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (adjacency(i, j) == 0) continue;
      for (std::size_t k = j; k < n; ++k) closure(i, k) |= closure(j, k);
    }
  }
  return closure;
}

InfoFlowGraph::InfoFlowGraph(int n_nodes, std::span<const Edge> edges)
    : n_nodes_(n_nodes) {
  if (n_nodes < 0) {
    throw Error(ErrorKind::kDomain, "n_nodes must be nonnegative");
  }
  for (const Edge& e : edges) {
    if (e.first >= e.second) {
      throw Error(ErrorKind::kDagOrder,
                  "edge " + EdgeText(e) + " violates causal order m < n");
    }
    if (e.first < 1 || e.second > n_nodes) {
      throw Error(ErrorKind::kDomain, "edge " + EdgeText(e) +
                                          " references a node outside 1.." +
                                          std::to_string(n_nodes));
    }
  }
  edges_.assign(edges.begin(), edges.end());
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  const auto n = static_cast<std::size_t>(n_nodes);
  adjacency_ = Matrix<int>(n, n, 0);
  for (const Edge& e : edges_) adjacency_(e.first - 1, e.second - 1) = 1;
  closure_ = TransitiveClosure(adjacency_);

  path_counts_ = Matrix<std::int64_t>(n, n, 0);
  for (std::size_t i = n; i-- > 0;) {
    path_counts_(i, i) = 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (adjacency_(i, j) == 0) continue;
      for (std::size_t k = j; k < n; ++k) {
        path_counts_(i, k) = CheckedAdd(path_counts_(i, k), path_counts_(j, k));
      }
    }
  }

  // Back substitution on the unit upper triangular system T_{n-1} w = t_n.
  weights_.resize(n);
  for (std::size_t node = 0; node < n; ++node) {
    std::vector<std::int64_t>& w = weights_[node];
    w.assign(node, 0);
    for (std::size_t j = node; j-- > 0;) {
      std::int64_t acc = closure_(j, node);
      for (std::size_t m = j + 1; m < node; ++m) {
        if (closure_(j, m) != 0) acc = CheckedSub(acc, w[m]);
      }
      w[j] = acc;
    }
  }
}

void InfoFlowGraph::CheckNode(NodeId node) const {
  if (node < 1 || node > n_nodes_) {
    throw Error(ErrorKind::kDomain, "node " + std::to_string(node) +
                                        " outside 1.." +
                                        std::to_string(n_nodes_));
  }
}

bool InfoFlowGraph::HasEdge(NodeId from, NodeId to) const {
  CheckNode(from);
  CheckNode(to);
  return adjacency_(from - 1, to - 1) != 0;
}

bool InfoFlowGraph::Reaches(NodeId from, NodeId to) const {
  CheckNode(from);
  CheckNode(to);
  return closure_(from - 1, to - 1) != 0;
}

NodeSet InfoFlowGraph::OneHop(NodeId node) const {
  CheckNode(node);
  NodeSet out;
  for (NodeId m = 1; m < node; ++m) {
    if (adjacency_(m - 1, node - 1) != 0) out.insert(m);
  }
  return out;
}

NodeSet InfoFlowGraph::MultiHop(NodeId node) const {
  CheckNode(node);
  NodeSet out;
  for (NodeId m = 1; m < node; ++m) {
    if (closure_(m - 1, node - 1) != 0) out.insert(m);
  }
  return out;
}

NodeSet InfoFlowGraph::Children(NodeId node) const {
  CheckNode(node);
  NodeSet out;
  for (NodeId m = node + 1; m <= n_nodes_; ++m) {
    if (adjacency_(node - 1, m - 1) != 0) out.insert(m);
  }
  return out;
}

const std::vector<std::int64_t>& InfoFlowGraph::Weights(NodeId node) const {
  CheckNode(node);
  return weights_[node - 1];
}

bool InfoFlowGraph::IsAchievable(NodeId node) const {
  const auto& w = Weights(node);
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] != 0 && adjacency_(j, node - 1) == 0) return false;
  }
  return true;
}

bool InfoFlowGraph::AllAchievable() const {
  for (NodeId n = 1; n <= n_nodes_; ++n) {
    if (!IsAchievable(n)) return false;
  }
  return true;
}

NodeSet InfoFlowGraph::IncestNodes() const {
  NodeSet out;
  for (NodeId n = 1; n <= n_nodes_; ++n) {
    const auto& w = weights_[n - 1];
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j] != adjacency_(j, n - 1)) {
        out.insert(n);
        break;
      }
    }
  }
  return out;
}

std::int64_t InfoFlowGraph::PathCount(NodeId from, NodeId to) const {
  CheckNode(from);
  CheckNode(to);
  return path_counts_(from - 1, to - 1);
}

InfoFlowGraph InfoFlowGraph::Prefix(int k) const {
  if (k < 0 || k > n_nodes_) {
    throw Error(ErrorKind::kDomain, "prefix length outside 0.." +
                                        std::to_string(n_nodes_));
  }
  std::vector<Edge> kept;
  for (const Edge& e : edges_) {
    if (e.second <= k) kept.push_back(e);
  }
  return InfoFlowGraph(k, kept);
}

NodeSet MinimalExtraNodes(const InfoFlowGraph& graph,
                          const NodeSet& recruits) {
  if (recruits.empty()) {
    throw Error(ErrorKind::kDomain, "recruit set must be nonempty");
  }
  NodeSet extra;
  for (NodeId n : recruits) {
    const auto& w = graph.Weights(n);
    for (std::size_t j = 0; j < w.size(); ++j) {
      const NodeId m = static_cast<NodeId>(j) + 1;
      if (w[j] != 0 && !recruits.contains(m)) extra.insert(m);
    }
  }
  return extra;
}

}  // namespace incestfree
