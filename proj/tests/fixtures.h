// Copyright 2026 The sopm Authors.
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

// Shared fixtures and brute-force oracles for the tests.

#ifndef SOPM_TESTS_FIXTURES_H_
#define SOPM_TESTS_FIXTURES_H_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sopm/graph.h"
#include "sopm/instance.h"
#include "sopm/random.h"

namespace sopm::testing {

// Path 1-2-3-4 with unit weights.
inline RawNetwork PathNetwork() {
  RawNetwork net;
  net.node_count = 4;
  net.edges = {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}};
  net.p = 1;
  return net;
}

inline Instance PathInstance(std::vector<int> clients, std::vector<int> sites,
                             int p, double d1, double d2) {
  Instance inst;
  inst.clients = std::move(clients);
  inst.sites = std::move(sites);
  inst.shortest = AllPairsShortest(PathNetwork());
  inst.euclidean = inst.shortest;
  inst.p = p;
  inst.d1 = d1;
  inst.d2 = d2;
  return inst;
}

// J={1,4}, I={2,3}, p=1, no conflicts.
inline Instance T1() { return PathInstance({2, 3}, {1, 4}, 1, 0.0, 0.0); }

// J={1,2,4}, I={3}, p=2, sites 1 and 2 conflict.
inline Instance T2() { return PathInstance({3}, {1, 2, 4}, 2, 1.5, 0.5); }

// Instance from explicit 1-based distance tables; unspecified pairs get
// `fill`. Keys are unordered.
inline Instance TableInstance(
    int n, std::vector<int> clients, std::vector<int> sites, int p, double d1,
    double d2, const std::vector<std::tuple<int, int, double>>& s,
    const std::vector<std::tuple<int, int, double>>& euc, double fill) {
  Instance inst;
  inst.clients = std::move(clients);
  inst.sites = std::move(sites);
  inst.p = p;
  inst.d1 = d1;
  inst.d2 = d2;
  inst.shortest = DistanceMatrix(n);
  inst.euclidean = DistanceMatrix(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      inst.shortest.SetSymmetric(a, b, fill);
      inst.euclidean.SetSymmetric(a, b, fill);
    }
  }
  for (auto [a, b, v] : s) inst.shortest.SetSymmetric(a - 1, b - 1, v);
  for (auto [a, b, v] : euc) inst.euclidean.SetSymmetric(a - 1, b - 1, v);
  return inst;
}

// Site 1 conflicts with 2, 3, 4; no other conflicts. Client 5.
inline Instance StarInstance() {
  return TableInstance(5, {5}, {1, 2, 3, 4}, 1, 2.0, 0.5, {},
                       {{1, 2, 1.0}, {1, 3, 1.0}, {1, 4, 1.0}}, 5.0);
}

// Sites a=1, b=2, j=3, e=4 with a, b, j mutually conflicting; clients 5..8.
// Optimum {3, 4} with cost 8. Site 3 is the rank-2 choice of two clients with
// different closer sets, so it carries three merged variables.
inline Instance CobraTrap() {
  return TableInstance(
      8, {5, 6, 7, 8}, {1, 2, 3, 4}, 2, 2.0, 5.0,
      {{5, 3, 1}, {5, 1, 5}, {5, 2, 6}, {5, 4, 7},
       {6, 1, 1}, {6, 3, 2}, {6, 2, 8}, {6, 4, 9},
       {7, 2, 1}, {7, 3, 2}, {7, 1, 8}, {7, 4, 9},
       {8, 1, 1}, {8, 2, 2}, {8, 3, 3}, {8, 4, 9}},
      {{1, 3, 1.0}, {2, 3, 1.0}, {1, 2, 1.0}}, 10.0);
}

// Random connected network: random spanning tree plus `extra` edges.
inline RawNetwork RandomNetwork(std::mt19937_64& rng, int n, int extra, int p,
                                int max_weight = 20) {
  std::uniform_int_distribution<int> weight(1, max_weight);
  RawNetwork net;
  net.node_count = n;
  net.p = p;
  std::set<std::pair<int, int>> seen;
  auto add = [&](int u, int v) {
    if (u == v) return;
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) return;
    net.edges.push_back({u, v, weight(rng)});
  };
  for (int v = 2; v <= n; ++v) {
    add(std::uniform_int_distribution<int>(1, v - 1)(rng), v);
  }
  std::uniform_int_distribution<int> node(1, n);
  for (int k = 0; k < extra; ++k) add(node(rng), node(rng));
  std::sort(net.edges.begin(), net.edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  return net;
}

inline std::string ToOrLib(const RawNetwork& net) {
  std::string out = std::to_string(net.node_count) + " " +
                    std::to_string(net.edges.size()) + " " +
                    std::to_string(net.p) + "\n";
  for (const Edge& e : net.edges) {
    out += std::to_string(e.u) + " " + std::to_string(e.v) + " " +
           std::to_string(static_cast<long long>(e.weight)) + "\n";
  }
  return out;
}

inline DistanceMatrix FloydWarshall(const RawNetwork& net) {
  const int n = net.node_count;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const Edge& e : net.edges) {
    d[e.u - 1][e.v - 1] = std::min(d[e.u - 1][e.v - 1], double(e.weight));
    d[e.v - 1][e.u - 1] = std::min(d[e.v - 1][e.u - 1], double(e.weight));
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  DistanceMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.set(i, j, d[i][j]);
  }
  return out;
}

inline Graph RandomGraph(std::mt19937_64& rng, int n, double density) {
  Graph g(n);
  std::bernoulli_distribution edge(density);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (edge(rng)) g.AddEdge(a, b);
    }
  }
  return g;
}

// Exhaustive maximum clique size over all vertex subsets.
inline int BruteMaxClique(const Graph& g) {
  const int n = g.size();
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      if (!(mask >> a & 1)) continue;
      for (int b = a + 1; b < n && ok; ++b) {
        if ((mask >> b & 1) && !g.Adjacent(a, b)) ok = false;
      }
    }
    if (ok) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

inline int BruteMaxIndependent(const Graph& g, const std::vector<int>& nodes) {
  const int n = static_cast<int>(nodes.size());
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      if (!(mask >> a & 1)) continue;
      for (int b = a + 1; b < n && ok; ++b) {
        if ((mask >> b & 1) && g.Adjacent(nodes[a], nodes[b])) ok = false;
      }
    }
    if (ok) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

// Calls f on every k-subset of `items` in lexicographic order.
inline void ForEachSubset(const std::vector<int>& items, int k,
                          const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(cur.size()) == k) {
      f(cur);
      return;
    }
    for (std::size_t i = start; i < items.size(); ++i) {
      if (items.size() - i < k - cur.size()) break;
      cur.push_back(items[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// A generated instance on a random network, n in [n_lo, n_hi], p in
// [1, p_hi]. Deterministic in `seed`.
inline Instance RandomInstance(std::uint64_t seed, int n_lo, int n_hi,
                               int p_hi, int generator_case) {
  std::mt19937_64 rng(seed);
  const int n = std::uniform_int_distribution<int>(n_lo, n_hi)(rng);
  const int p = std::uniform_int_distribution<int>(1, std::min(p_hi, n - 2))(rng);
  const RawNetwork net = RandomNetwork(rng, n, n, p);
  GeneratorConfig cfg;
  cfg.generator_case = generator_case;
  cfg.seed = seed;
  return GenerateInstance(net, cfg);
}

}  // namespace sopm::testing

#endif  // SOPM_TESTS_FIXTURES_H_
