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

// Reference computations for the tests. Everything here is written from the
// definitions (path sums, brute-force enumeration, closed-form demand) and
// shares no code paths with the library beyond its data types.

#ifndef INCESTFREE_TESTS_ORACLES_HPP_
#define INCESTFREE_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "incestfree/belief.hpp"
#include "incestfree/graph.hpp"
#include "incestfree/matrix.hpp"

namespace oracle {

using incestfree::Belief;
using incestfree::Edge;
using incestfree::LearningModel;
using incestfree::Matrix;

// sgn(I + A + A^2 + ... + A^{n-1}) by repeated integer products.
inline Matrix<int> NeumannClosure(const Matrix<int>& A) {
  const std::size_t n = A.rows();
  Matrix<long long> power(n, n, 0);
  Matrix<long long> sum(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) power(i, i) = sum(i, i) = 1;
  for (std::size_t p = 1; p < n; ++p) {
    Matrix<long long> next(n, n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (power(i, k))
          for (std::size_t j = 0; j < n; ++j) next(i, j) += power(i, k) * A(k, j);
    power = next;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum(i, j) += power(i, j);
  }
  Matrix<int> T(n, n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) T(i, j) = sum(i, j) > 0 ? 1 : 0;
  return T;
}

// Number of directed paths by depth-first enumeration.
inline long long CountPaths(const std::vector<Edge>& edges, int from, int to) {
  if (from == to) return 1;
  long long total = 0;
  for (const auto& [m, n] : edges) {
    if (m == from) total += CountPaths(edges, n, to);
  }
  return total;
}

// Random DAG on n nodes: each forward pair gets an edge with probability p.
inline std::vector<Edge> RandomDag(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int m = 1; m <= n; ++m)
    for (int k = m + 1; k <= n; ++k)
      if (coin(rng)) edges.emplace_back(m, k);
  return edges;
}

inline std::vector<double> RandomSimplex(std::mt19937_64& rng, int size,
                                         double floor = 0.05) {
  std::uniform_real_distribution<double> u(floor, 1.0);
  std::vector<double> v(size);
  double s = 0.0;
  for (double& x : v) s += (x = u(rng));
  for (double& x : v) x /= s;
  return v;
}

// Rows proportional to exp(theta_i phi_y) with theta, phi increasing: every
// 2x2 minor is nonnegative.
inline Matrix<double> RandomTp2(std::mt19937_64& rng, int X, int Y) {
  std::uniform_real_distribution<double> step(0.1, 1.0);
  std::vector<double> theta(X), phi(Y);
  double acc = 0.0;
  for (double& t : theta) t = (acc += step(rng));
  acc = 0.0;
  for (double& f : phi) f = (acc += step(rng));
  Matrix<double> B(X, Y, 0.0);
  for (int i = 0; i < X; ++i) {
    double s = 0.0;
    for (int y = 0; y < Y; ++y) s += (B(i, y) = std::exp(theta[i] * phi[y]));
    for (int y = 0; y < Y; ++y) B(i, y) /= s;
  }
  return B;
}

// c(x, a) = (s_x - t_a)^2 + f(x) + g(a) with s, t increasing. The cross
// difference is -2 (s_{x+1} - s_x)(t_{a+1} - t_a) <= 0.
inline Matrix<double> RandomSubmodularCost(std::mt19937_64& rng, int X, int A) {
  std::uniform_real_distribution<double> step(0.1, 1.0), shift(-1.0, 1.0);
  std::vector<double> s(X), t(A), f(X), g(A);
  double acc = 0.0;
  for (double& v : s) v = (acc += step(rng));
  acc = 0.0;
  for (double& v : t) v = (acc += step(rng));
  for (double& v : f) v = shift(rng);
  for (double& v : g) v = shift(rng);
  Matrix<double> c(X, A, 0.0);
  for (int x = 0; x < X; ++x)
    for (int a = 0; a < A; ++a) c(x, a) = (s[x] - t[a]) * (s[x] - t[a]) + f[x] + g[a];
  return c;
}

inline Matrix<double> RandomStochastic(std::mt19937_64& rng, int X, int Y) {
  Matrix<double> B(X, Y, 0.0);
  for (int i = 0; i < X; ++i) {
    const auto row = RandomSimplex(rng, Y);
    for (int y = 0; y < Y; ++y) B(i, y) = row[y];
  }
  return B;
}

inline Matrix<double> RandomCost(std::mt19937_64& rng, int X, int A) {
  std::uniform_real_distribution<double> u(0.0, 3.0);
  Matrix<double> c(X, A, 0.0);
  for (int x = 0; x < X; ++x)
    for (int a = 0; a < A; ++a) c(x, a) = u(rng);
  return c;
}

inline LearningModel MakeModel(Matrix<double> B, Matrix<double> cost,
                               std::vector<double> prior) {
  LearningModel m;
  m.states = static_cast<int>(B.rows());
  m.observations = static_cast<int>(B.cols());
  m.actions = static_cast<int>(cost.cols());
  m.observation = std::move(B);
  m.cost = std::move(cost);
  m.prior = Belief(std::move(prior));
  return m;
}

// Lowest-index minimizer of the expected cost.
inline int Argmin(const std::vector<double>& belief, const Matrix<double>& c) {
  int best = 0;
  double best_value = 0.0;
  for (std::size_t a = 0; a < c.cols(); ++a) {
    double v = 0.0;
    for (std::size_t i = 0; i < belief.size(); ++i) v += c(i, a) * belief[i];
    if (a == 0 || v < best_value - 1e-12 * (1.0 + std::abs(best_value))) {
      best = static_cast<int>(a);
      best_value = v;
    }
  }
  return best + 1;
}

inline std::vector<double> Normalize(std::vector<double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  for (double& x : v) x /= s;
  return v;
}

// Calls f(y) for every y in {1..Y}^n.
template <class F>
void ForEachSequence(int n, int Y, F f) {
  std::vector<int> y(n, 1);
  for (;;) {
    f(static_cast<const std::vector<int>&>(y));
    int i = 0;
    while (i < n && y[i] == Y) y[i++] = 1;
    if (i == n) return;
    ++y[i];
  }
}

inline double SequenceLikelihood(const LearningModel& m, int x,
                                 const std::vector<int>& y) {
  double p = m.prior[x];
  for (int v : y) p *= m.observation(x, v - 1);
  return p;
}

// Social learning on a DAG, solved by enumeration. For each node n and
// every observation sequence, agents act on P(x | actions of all their
// ancestors, own observation); the returned table holds, per node, the
// posterior P(x | actions of F_n) for the sequence `observed`, together
// with the actions taken along `observed`.
struct SocialOracle {
  std::vector<std::vector<double>> fused;  // [n - 1][x]
  std::vector<int> actions;                // [n - 1]
};

inline SocialOracle SocialLearningByEnumeration(
    const incestfree::InfoFlowGraph& g, const LearningModel& m,
    const std::vector<int>& observed) {
  const int N = g.n_nodes();
  const int X = m.states;
  std::vector<std::vector<int>> sequences;
  ForEachSequence(N, m.observations,
                  [&](const std::vector<int>& y) { sequences.push_back(y); });
  const std::size_t S = sequences.size();
  std::vector<std::vector<int>> acts(S, std::vector<int>(N, 0));
  std::size_t observed_index = 0;
  for (std::size_t s = 0; s < S; ++s)
    if (sequences[s] == observed) observed_index = s;

  SocialOracle out;
  for (int n = 1; n <= N; ++n) {
    std::vector<int> anc;
    for (int a = 1; a < n; ++a)
      if (CountPaths(g.edges(), a, n) > 0) anc.push_back(a);
    // Mass per (ancestor action signature, own observation).
    std::map<std::vector<int>, std::vector<double>> by_sig, by_sig_y;
    std::vector<std::vector<int>> sig(S), sig_y(S);
    for (std::size_t s = 0; s < S; ++s) {
      for (int a : anc) sig[s].push_back(acts[s][a - 1]);
      sig_y[s] = sig[s];
      sig_y[s].push_back(sequences[s][n - 1]);
      auto& m1 = by_sig[sig[s]];
      auto& m2 = by_sig_y[sig_y[s]];
      m1.resize(X, 0.0);
      m2.resize(X, 0.0);
      for (int x = 0; x < X; ++x) {
        const double p = SequenceLikelihood(m, x, sequences[s]);
        m1[x] += p;
        m2[x] += p;
      }
    }
    for (std::size_t s = 0; s < S; ++s) {
      acts[s][n - 1] = Argmin(Normalize(by_sig_y[sig_y[s]]), m.cost);
    }
    out.fused.push_back(Normalize(by_sig[sig[observed_index]]));
    out.actions.push_back(acts[observed_index][n - 1]);
  }
  return out;
}

// Protocol 2 in the probability domain.
inline std::vector<std::vector<double>> PollBeliefs(
    const incestfree::InfoFlowGraph& g, const LearningModel& m,
    const std::vector<int>& y) {
  const int N = g.n_nodes();
  const int X = m.states;
  std::vector<std::vector<double>> pi(N);
  for (int n = 1; n <= N; ++n) {
    std::vector<double> v(X, 1.0);
    bool root = true;
    for (const auto& [a, b] : g.edges()) {
      if (b != n) continue;
      root = false;
      for (int x = 0; x < X; ++x) v[x] *= pi[a - 1][x];
    }
    for (int x = 0; x < X; ++x) {
      if (root) v[x] = m.prior[x];
      v[x] *= m.observation(x, y[n - 1] - 1);
    }
    pi[n - 1] = Normalize(v);
  }
  return pi;
}

inline double Tv(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / 2.0;
}

// P(x | beliefs of `recruits` equal those produced by `observed`), by full
// joint enumeration over every node's observation.
inline std::vector<double> PollPosteriorByEnumeration(
    const incestfree::InfoFlowGraph& g, const LearningModel& m,
    const std::vector<int>& recruits, const std::vector<int>& observed) {
  const auto target = PollBeliefs(g, m, observed);
  std::vector<double> mass(m.states, 0.0);
  ForEachSequence(g.n_nodes(), m.observations, [&](const std::vector<int>& y) {
    const auto pi = PollBeliefs(g, m, y);
    for (int r : recruits)
      if (Tv(pi[r - 1], target[r - 1]) > 1e-9) return;
    for (int x = 0; x < m.states; ++x) mass[x] += SequenceLikelihood(m, x, y);
  });
  return Normalize(mass);
}

// P(x | y_m, m in nodes) directly.
inline std::vector<double> PosteriorGiven(const LearningModel& m,
                                          const std::vector<int>& y,
                                          const std::vector<int>& nodes) {
  std::vector<double> p(m.states);
  for (int x = 0; x < m.states; ++x) {
    p[x] = m.prior[x];
    for (int n : nodes) p[x] *= m.observation(x, y[n - 1] - 1);
  }
  return Normalize(p);
}

// Cobb-Douglas demand a_i = alpha_i I / p_i.
inline std::vector<double> CobbDouglasDemand(const std::vector<double>& alpha,
                                             const std::vector<double>& p,
                                             double budget) {
  std::vector<double> a(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) a[i] = alpha[i] * budget / p[i];
  return a;
}

}  // namespace oracle

#endif  // INCESTFREE_TESTS_ORACLES_HPP_
