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

#include <random>

#include "doctest.h"
#include "incestfree/errors.hpp"
#include "incestfree/graph.hpp"
#include "oracles.hpp"

using namespace incestfree;

namespace {

InfoFlowGraph Appendix() {
  return InfoFlowGraph(8, {{1, 3}, {1, 4}, {1, 7}, {2, 4}, {3, 5}, {4, 6},
                           {5, 7}, {6, 7}, {6, 8}});
}

Matrix<int> Leading(const Matrix<int>& m, std::size_t k) { return m.leading(k); }

}  // namespace

TEST_CASE("node index round trip") {
  CHECK(NodeIndex(1, 1, 2) == 1);
  CHECK(NodeIndex(2, 3, 2) == 6);
  CHECK(NodeIndex(1, 4, 2) == 7);
  for (int S = 1; S <= 4; ++S) {
    for (int n = 1; n <= 20; ++n) {
      const NodeCoordinates c = NodeCoords(n, S);
      CHECK(NodeIndex(c.agent, c.epoch, S) == n);
    }
  }
  CHECK_THROWS_AS(NodeIndex(0, 1, 2), Error);
  CHECK_THROWS_AS(NodeIndex(3, 1, 2), Error);
  CHECK_THROWS_AS(NodeIndex(1, 0, 2), Error);
}

TEST_CASE("appendix adjacency and closure") {
  const InfoFlowGraph g = Appendix();
  const Matrix<int> A7{{0, 0, 1, 1, 0, 0, 1}, {0, 0, 0, 1, 0, 0, 0},
                       {0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 1, 0},
                       {0, 0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 1},
                       {0, 0, 0, 0, 0, 0, 0}};
  const Matrix<int> T7{{1, 0, 1, 1, 1, 1, 1}, {0, 1, 0, 1, 0, 1, 1},
                       {0, 0, 1, 0, 1, 0, 1}, {0, 0, 0, 1, 0, 1, 1},
                       {0, 0, 0, 0, 1, 0, 1}, {0, 0, 0, 0, 0, 1, 1},
                       {0, 0, 0, 0, 0, 0, 1}};
  CHECK(Leading(g.adjacency(), 7) == A7);
  CHECK(Leading(g.closure(), 7) == T7);
  CHECK(g.OneHop(7) == NodeSet{1, 5, 6});
  CHECK(g.MultiHop(7) == NodeSet{1, 2, 3, 4, 5, 6});
  CHECK(g.OneHop(1).empty());
  CHECK(g.MultiHop(2).empty());
}

TEST_CASE("appendix weights") {
  const InfoFlowGraph g = Appendix();
  using W = std::vector<std::int64_t>;
  CHECK(g.Weights(2) == W{0});
  CHECK(g.Weights(3) == W{1, 0});
  CHECK(g.Weights(4) == W{1, 1, 0});
  CHECK(g.Weights(5) == W{0, 0, 1, 0});
  CHECK(g.Weights(6) == W{0, 0, 0, 1, 0});
  CHECK(g.Weights(7) == W{-1, 0, 0, 0, 1, 1});
  CHECK(g.Weights(1).empty());
  CHECK(g.IsAchievable(7));
  CHECK(g.AllAchievable());
}

TEST_CASE("deleting edge (1,7) breaks achievability at node 7") {
  const InfoFlowGraph g(8, {{1, 3}, {1, 4}, {2, 4}, {3, 5}, {4, 6}, {5, 7},
                            {6, 7}, {6, 8}});
  CHECK(g.Weights(7)[0] == -1);
  CHECK_FALSE(g.IsAchievable(7));
  CHECK_FALSE(g.AllAchievable());
}

TEST_CASE("graph construction errors and trivial cases") {
  CHECK_THROWS_AS(InfoFlowGraph(3, {{3, 2}}), Error);
  try {
    InfoFlowGraph(3, {{2, 2}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDagOrder);
  }
  CHECK_THROWS_AS(InfoFlowGraph(3, {{1, 4}}), Error);
  CHECK_THROWS_AS(InfoFlowGraph(-1, {}), Error);

  const InfoFlowGraph empty(4, {});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(empty.closure()(i, j) == (i == j ? 1 : 0));
  for (int n = 2; n <= 4; ++n) {
    for (auto w : empty.Weights(n)) CHECK(w == 0);
    CHECK(empty.IsAchievable(n));
  }

  const InfoFlowGraph dup(3, {{1, 2}, {1, 2}, {2, 3}});
  CHECK(dup.edges().size() == 2);

  const InfoFlowGraph chain(3, {{1, 2}, {2, 3}});
  CHECK(chain.closure()(0, 1) == 1);
  CHECK(chain.closure()(0, 2) == 1);
  CHECK(chain.closure()(1, 2) == 1);
  CHECK(chain.closure()(2, 0) == 0);
}

TEST_CASE("transitive closure rejects non-triangular input") {
  CHECK_THROWS_AS(TransitiveClosure(Matrix<int>{{0, 0}, {1, 0}}), Error);
  CHECK_THROWS_AS(TransitiveClosure(Matrix<int>{{1, 0}, {0, 0}}), Error);
  CHECK_THROWS_AS(TransitiveClosure(Matrix<int>{{0, 2}, {0, 0}}), Error);
  CHECK(TransitiveClosure(Matrix<int>(3, 3, 0)) ==
        Matrix<int>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

TEST_CASE("random graphs: closure, path counts, weights, prefix") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const auto edges = oracle::RandomDag(rng, n, 0.35);
    const InfoFlowGraph g(n, edges);
    REQUIRE(g.closure() == oracle::NeumannClosure(g.adjacency()));
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b)
        CHECK(g.PathCount(a, b) == oracle::CountPaths(edges, a, b));
    // T_{n-1} w_n = t_n as an exact integer identity.
    for (int k = 2; k <= n; ++k) {
      const auto& w = g.Weights(k);
      for (int i = 0; i < k - 1; ++i) {
        std::int64_t lhs = 0;
        for (int j = 0; j < k - 1; ++j) lhs += g.closure()(i, j) * w[j];
        CHECK(lhs == g.closure()(i, k - 1));
      }
    }
    for (int k = 1; k <= n; ++k) {
      const InfoFlowGraph p = g.Prefix(k);
      CHECK(p.adjacency() == g.adjacency().leading(k));
      CHECK(p.closure() == g.closure().leading(k));
    }
  }
}

TEST_CASE("named-network incest nodes") {
  const InfoFlowGraph corporate(
      10, {{1, 2}, {1, 3}, {1, 10}, {2, 4}, {2, 5}, {2, 8}, {3, 6}, {3, 7},
           {3, 9}, {4, 8}, {5, 8}, {6, 9}, {7, 9}, {8, 10}, {9, 10}});
  CHECK(corporate.IncestNodes() == NodeSet{8, 9, 10});
  const InfoFlowGraph mesh(9, {{1, 2}, {1, 6}, {2, 3}, {2, 5}, {3, 4}, {4, 5},
                               {4, 9}, {5, 6}, {5, 8}, {6, 7}, {7, 8}, {8, 9}});
  CHECK(mesh.IncestNodes() == NodeSet{5, 6, 8, 9});
}

TEST_CASE("minimal extra nodes") {
  InfoFlowGraph star(8, {});
  {
    std::vector<Edge> e;
    for (int m = 2; m <= 7; ++m) {
      e.emplace_back(1, m);
      e.emplace_back(m, 8);
    }
    star = InfoFlowGraph(8, e);
  }
  CHECK(MinimalExtraNodes(star, {2, 3, 4, 5, 6, 7, 8}) == NodeSet{1});
  CHECK(MinimalExtraNodes(star, {1, 2, 3, 4, 5, 6, 7, 8}).empty());
  const InfoFlowGraph chain(3, {{1, 2}, {2, 3}});
  CHECK(MinimalExtraNodes(chain, {3}) == NodeSet{2});
  CHECK_THROWS_AS(MinimalExtraNodes(chain, {}), Error);
}

TEST_CASE("dropping any extra node breaks the weight identity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);
    const InfoFlowGraph g(n, oracle::RandomDag(rng, n, 0.4));
    NodeSet recruits;
    for (int k = 1; k <= n; ++k)
      if (rng() % 3 == 0) recruits.insert(k);
    recruits.insert(n);
    for (NodeId m : MinimalExtraNodes(g, recruits)) {
      bool broken = false;
      for (NodeId r : recruits) {
        auto w = g.Weights(r);
        if (m >= r || w[m - 1] == 0) continue;
        w[m - 1] = 0;
        for (int i = 0; i < r - 1 && !broken; ++i) {
          std::int64_t lhs = 0;
          for (int j = 0; j < r - 1; ++j) lhs += g.closure()(i, j) * w[j];
          broken = lhs != g.closure()(i, r - 1);
        }
      }
      CHECK(broken);
    }
  }
}
