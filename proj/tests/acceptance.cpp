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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "incestfree/graph.hpp"
#include "incestfree/harness.hpp"
#include "incestfree/incest_removal.hpp"
#include "incestfree/polling.hpp"
#include "incestfree/revealed_prefs.hpp"
#include "incestfree/social_learning.hpp"
#include "oracles.hpp"

using namespace incestfree;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int Workers() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::string Sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string Fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::vector<int> DrawObservations(std::mt19937_64& rng, const LearningModel& m,
                                  int n) {
  const int x = SampleIndex(rng, m.prior.probs());
  std::vector<int> y(n);
  for (int& v : y) v = SampleIndex(rng, m.observation.row(x - 1));
  return y;
}

double MaxDiff(const Belief& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Outcome AppendixGolden() {
  const InfoFlowGraph g = BuildNamedNetwork("appendix");
  const Matrix<int> A7{{0, 0, 1, 1, 0, 0, 1}, {0, 0, 0, 1, 0, 0, 0},
                       {0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 1, 0},
                       {0, 0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 1},
                       {0, 0, 0, 0, 0, 0, 0}};
  const Matrix<int> T7{{1, 0, 1, 1, 1, 1, 1}, {0, 1, 0, 1, 0, 1, 1},
                       {0, 0, 1, 0, 1, 0, 1}, {0, 0, 0, 1, 0, 1, 1},
                       {0, 0, 0, 0, 1, 0, 1}, {0, 0, 0, 0, 0, 1, 1},
                       {0, 0, 0, 0, 0, 0, 1}};
  using W = std::vector<std::int64_t>;
  const std::vector<W> weights{{0}, {1, 0}, {1, 1, 0}, {0, 0, 1, 0},
                               {0, 0, 0, 1, 0}, {-1, 0, 0, 0, 1, 1}};
  bool ok = g.adjacency().leading(7) == A7 && g.closure().leading(7) == T7 &&
            g.OneHop(7) == NodeSet{1, 5, 6} &&
            g.MultiHop(7) == NodeSet{1, 2, 3, 4, 5, 6} && g.IsAchievable(7);
  for (int n = 2; n <= 7; ++n) ok = ok && g.Weights(n) == weights[n - 2];
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (e != Edge{1, 7}) edges.push_back(e);
  const InfoFlowGraph cut(g.n_nodes(), edges);
  const bool flipped = !cut.IsAchievable(7);
  return {ok && flipped, std::string("golden matrices ") + (ok ? "match" : "differ") +
                             ", deleting (1,7) " +
                             (flipped ? "breaks" : "keeps") + " achievability"};
}

Outcome ExtremeExample() {
  const ExtremeExampleResult r = RunExtremeExample();
  const bool pass = std::abs(r.naive - 0.2000) <= 5e-4 &&
                    std::abs(r.exact - 0.9961) <= 5e-4 &&
                    std::abs(r.incestious - 0.5544) <= 5e-4;
  return {pass, "naive " + Fixed(r.naive) + " (0.2000), exact " + Fixed(r.exact) +
                    " (0.9961), incestious " + Fixed(r.incestious) + " (0.5544)"};
}

Outcome SocialLearningTables() {
  struct Expect {
    const char* network;
    NodeId node;
    double naive, fair;
  };
  const Expect table[] = {
      {"corporate", 8, 0.3666, 0.2782}, {"corporate", 9, 0.3520, 0.2652},
      {"corporate", 10, 0.3119, 0.1376}, {"mesh", 5, 0.3246, 0.2799},
      {"mesh", 6, 0.3420, 0.2542},      {"mesh", 7, 0.3312, 0.2404},
      {"mesh", 8, 0.3149, 0.2267},      {"mesh", 9, 0.3134, 0.2200}};
  std::map<std::string, SimReport> reports;
  for (const char* name : {"corporate", "mesh"}) {
    ExperimentConfig c = DefaultSocialLearningConfig(name);
    c.workers = Workers();
    reports[name] = RunExperiment(c);
  }
  bool pass = true;
  double worst = 0.0;
  std::ostringstream detail;
  for (const Expect& e : table) {
    const SimReport& r = reports[e.network];
    const double naive = r.Mse(e.node, "naive"), fair = r.Mse(e.node, "fair");
    worst = std::max({worst, std::abs(naive - e.naive), std::abs(fair - e.fair)});
    if (!(fair < naive)) pass = false;
    detail << e.network << " " << e.node << ": " << Fixed(naive) << "/" << Fixed(fair)
           << "; ";
  }
  if (worst > 0.08) pass = false;
  detail << "max deviation " << Fixed(worst);
  return {pass, detail.str()};
}

Outcome PollingTables() {
  struct Expect {
    const char* network;
    NodeSet recruits;  // empty for the naive estimator
    double mse;
  };
  auto range = [](int lo, int hi) {
    NodeSet s;
    for (int k = lo; k <= hi; ++k) s.insert(k);
    return s;
  };
  const std::vector<Expect> table{
      {"corporate_no_110", {8, 9, 10}, 0.0250}, {"corporate_no_110", range(4, 10), 0.0230},
      {"corporate_no_110", range(2, 10), 0.0161}, {"corporate_no_110", range(1, 10), 0.0118},
      {"corporate_no_110", {}, 0.0513},           {"mesh", {4, 8, 9}, 0.0314},
      {"mesh", {2, 4, 8, 9}, 0.0178},             {"mesh", range(1, 9), 0.0170},
      {"mesh", {}, 0.0431}};
  std::map<std::string, SimReport> reports;
  for (const char* name : {"corporate_no_110", "mesh"}) {
    ExperimentConfig c = DefaultPollingConfig(name);
    c.workers = Workers();
    reports[name] = RunExperiment(c);
  }
  bool pass = true;
  double worst = 0.0;
  std::ostringstream detail;
  for (const Expect& e : table) {
    const SimReport& r = reports[e.network];
    const double got = e.recruits.empty() ? r.NaivePollMse() : r.PollMse(e.recruits);
    worst = std::max(worst, std::abs(got - e.mse));
    detail << (e.recruits.empty() ? "naive" : "{" + FormatNodeSet(e.recruits) + "}")
           << " " << Fixed(got) << "; ";
  }
  if (worst > 0.01) pass = false;
  // Nested recruit sets never increase the error.
  bool monotone = true;
  for (const auto& [name, r] : reports) {
    const ExperimentConfig c = DefaultPollingConfig(name);
    for (const NodeSet& small : c.recruit_sets)
      for (const NodeSet& big : c.recruit_sets)
        if (small != big && std::includes(big.begin(), big.end(), small.begin(), small.end()) &&
            r.PollMse(big) > r.PollMse(small) + 1e-9)
          monotone = false;
  }
  detail << "max deviation " << Fixed(worst) << ", monotone " << (monotone ? "yes" : "no");
  return {pass && monotone, detail.str()};
}

Outcome IncestiousOracle() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const InfoFlowGraph g(n, oracle::RandomDag(rng, n, 0.5));
    const LearningModel m = oracle::MakeModel(oracle::RandomStochastic(rng, 2, 2),
                                              Matrix<double>(2, 2, 0.0),
                                              oracle::RandomSimplex(rng, 2));
    NodeSet recruits{n};
    for (int k = 1; k < n; ++k)
      if (rng() % 2) recruits.insert(k);
    const auto y = DrawObservations(rng, m, n);
    const auto beliefs = RunProtocol2(g, m, y);
    std::vector<Belief> given;
    for (NodeId k : recruits) given.push_back(beliefs[k - 1]);
    const auto truth = oracle::PollPosteriorByEnumeration(
        g, m, std::vector<int>(recruits.begin(), recruits.end()), y);
    worst = std::max(worst, MaxDiff(PosteriorFromIncestious(g, m, recruits, given), truth));
  }
  return {worst <= 1e-9, "200 polls, max deviation " + Sci(worst)};
}

Outcome FairRatingOracle() {
  std::mt19937_64 rng(77);
  double worst = 0.0;
  int done = 0;
  while (done < 100) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const InfoFlowGraph g(n, oracle::RandomDag(rng, n, 0.4));
    if (!g.AllAchievable()) continue;
    const int X = 2 + static_cast<int>(rng() % 2);
    const int Y = 2 + static_cast<int>(rng() % 2);
    const int A = 2 + static_cast<int>(rng() % 2);
    const LearningModel m = oracle::MakeModel(oracle::RandomStochastic(rng, X, Y),
                                              oracle::RandomCost(rng, X, A),
                                              oracle::RandomSimplex(rng, X));
    const auto y = DrawObservations(rng, m, n);
    const auto truth = oracle::SocialLearningByEnumeration(g, m, y);
    const auto fair = RunProtocol1(g, m, y, FusionMode::kFairRating);
    for (int k = 0; k < n; ++k)
      worst = std::max(worst, MaxDiff(fair.nodes[k].fused_prior, truth.fused[k]));
    ++done;
  }
  return {worst <= 1e-9, "100 achievable DAGs, max deviation " + Sci(worst)};
}

Outcome Monotonicity() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> step(0.0, 1.0);
  int violations = 0;
  for (int model = 0; model < 200; ++model) {
    const int X = 2 + static_cast<int>(rng() % 4);
    const int Y = 2 + static_cast<int>(rng() % 4);
    const int A = 2 + static_cast<int>(rng() % 4);
    const Matrix<double> B = oracle::RandomTp2(rng, X, Y);
    const Matrix<double> c = oracle::RandomSubmodularCost(rng, X, A);
    auto act = [&](const Belief& pi, int y) {
      return MyopicAction(BayesPrivate(pi, y, B), c);
    };
    for (int pair = 0; pair < 50; ++pair) {
      const Belief lo(oracle::RandomSimplex(rng, X));
      // Multiplying by an increasing positive vector moves up in MLR order.
      std::vector<double> w(X);
      double acc = 1.0;
      for (double& v : w) v = (acc += step(rng));
      std::vector<double> up(X);
      for (int i = 0; i < X; ++i) up[i] = lo[i] * w[i];
      const Belief hi = Belief::Normalized(up);
      if (!MlrDominates(hi, lo)) ++violations;
      for (int y = 1; y <= Y; ++y) {
        if (act(hi, y) < act(lo, y)) ++violations;
        if (y > 1 && act(lo, y) < act(lo, y - 1)) ++violations;
        if (y > 1 && act(hi, y) < act(hi, y - 1)) ++violations;
      }
    }
  }
  return {violations == 0, "200 models, " + std::to_string(violations) + " violations"};
}

Outcome Cascades() {
  const LearningModel m = BinaryModel(0.8, Belief::Uniform(2));
  int detected = 0;
  for (int run = 0; run < 1000; ++run) {
    auto rng = RunStream(1, run);
    const auto y = DrawObservations(rng, m, 100);
    if (DetectCascade(RunSocialLearning(m, y), m)) ++detected;
  }
  return {detected >= 999, std::to_string(detected) + "/1000 runs cascade within 100 steps"};
}

Outcome AfriatEquivalence() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.1, 3.0), income(5.0, 20.0);
  int mismatches = 0, bad_certificates = 0, not_maximized = 0, consistent = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int T = 1 + static_cast<int>(rng() % 12);
    const int m = (trial % 4 == 0) ? 2 : 1 + static_cast<int>(rng() % 4);
    Matrix<double> P(T, m, 0.0), A(T, m, 0.0);
    std::vector<double> alpha = oracle::RandomSimplex(rng, m);
    const bool rational = trial % 2 == 0;
    for (int t = 0; t < T; ++t) {
      std::vector<double> p(m);
      for (double& v : p) v = u(rng);
      const auto demand = oracle::CobbDouglasDemand(alpha, p, income(rng));
      for (int i = 0; i < m; ++i) {
        P(t, i) = p[i];
        A(t, i) = rational ? demand[i] : u(rng);
      }
    }
    const ChoiceDataset d(P, A);
    const bool garp = GarpCheck(d).consistent;
    const auto cert = AfriatSolve(d);
    if (garp != cert.has_value()) ++mismatches;
    if (!cert) continue;
    ++consistent;
    if (AfriatViolation(d, *cert) > 1e-8) ++bad_certificates;
    if (m != 2) continue;
    const PiecewiseUtility util(d, *cert);
    for (int t = 0; t < T; ++t) {
      const double I = d.Budget(t), p1 = P(t, 0), p2 = P(t, 1);
      double best = -1e300;
      for (int k = 0; k <= 2000; ++k) {
        const double a1 = (I / p1) * k / 2000.0;
        const std::vector<double> a{a1, (I - p1 * a1) / p2};
        best = std::max(best, util(a));
      }
      const double at = util(d.responses().row(t));
      if (at < best - 1e-8 * std::max(1.0, std::abs(best))) ++not_maximized;
    }
  }
  return {mismatches == 0 && bad_certificates == 0 && not_maximized == 0,
          "500 datasets (" + std::to_string(consistent) + " consistent), " +
              std::to_string(mismatches) + " mismatches, " +
              std::to_string(bad_certificates) + " bad certificates, " +
              std::to_string(not_maximized) + " unrationalized points"};
}

Outcome ArRecovery() {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> driver(1.0, 20.0);
  bool pass = true;
  std::ostringstream detail;
  for (double b : {0.4358, 0.8132, 0.3825}) {
    std::vector<double> a(300), clean{50.0}, noisy{50.0};
    for (double& v : a) v = driver(rng);
    for (std::size_t t = 0; t + 1 < a.size(); ++t) {
      clean.push_back(clean.back() + b * a[t]);
      noisy.push_back(noisy.back() + b * a[t] * (1.0 + 0.01 * noise(rng)));
    }
    const double exact = ArFit(clean, a).b;
    const double fitted = ArFit(noisy, a).b;
    const bool ok = std::abs(exact - b) <= 1e-12 * b && std::abs(fitted - b) <= 0.05 * b;
    pass = pass && ok;
    detail << b << ": noiseless " << exact << ", noisy " << Fixed(fitted) << "; ";
  }
  return {pass, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"appendix graph golden values", AppendixGolden},
      {"extreme polling example", ExtremeExample},
      {"social learning MSE tables", SocialLearningTables},
      {"expectation polling MSE tables", PollingTables},
      {"posterior from incestious beliefs vs joint enumeration", IncestiousOracle},
      {"fair rating vs enumeration on achievable DAGs", FairRatingOracle},
      {"monotone actions under TP2 and submodular costs", Monotonicity},
      {"cascades in the binary model", Cascades},
      {"GARP and Afriat agree", AfriatEquivalence},
      {"AR coefficient recovery", ArRecovery}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %zu: %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
