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

#include "sopm/graph.h"

#include <algorithm>
#include <cassert>

namespace sopm {

void Graph::AddEdge(int a, int b) {
  assert(a != b);
  adj_[std::size_t(a) * n_ + b] = 1;
  adj_[std::size_t(b) * n_ + a] = 1;
}

int Graph::Degree(int v) const {
  int d = 0;
  for (int u = 0; u < n_; ++u) d += Adjacent(v, u);
  return d;
}

int Graph::EdgeCount() const {
  int e = 0;
  for (int v = 0; v < n_; ++v) e += Degree(v);
  return e / 2;
}

std::vector<int> Graph::Neighbors(int v) const {
  std::vector<int> out;
  for (int u = 0; u < n_; ++u) {
    if (Adjacent(v, u)) out.push_back(u);
  }
  return out;
}

Graph Graph::Induced(const std::vector<int>& nodes) const {
  Graph h(static_cast<int>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (Adjacent(nodes[i], nodes[j])) {
        h.AddEdge(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return h;
}

Graph Graph::Complement() const {
  Graph h(n_);
  for (int a = 0; a < n_; ++a) {
    for (int b = a + 1; b < n_; ++b) {
      if (!Adjacent(a, b)) h.AddEdge(a, b);
    }
  }
  return h;
}

namespace {

// Bron-Kerbosch with Tomita pivoting. `visit` is called with every maximal
// clique (unsorted) and returns nothing; `prune` may cut branches that cannot
// beat the best clique seen so far.
class BronKerbosch {
 public:
  explicit BronKerbosch(const Graph& g) : g_(g) {}

  template <typename Visit, typename Prune>
  void Run(Visit&& visit, Prune&& prune) {
    std::vector<int> p(g_.size());
    for (int v = 0; v < g_.size(); ++v) p[v] = v;
    std::vector<int> r, x;
    Expand(r, p, x, visit, prune);
  }

 private:
  template <typename Visit, typename Prune>
  void Expand(std::vector<int>& r, std::vector<int> p, std::vector<int> x,
              Visit& visit, Prune& prune) {
    if (p.empty()) {
      if (x.empty()) visit(r);
      return;
    }
    if (prune(r.size() + p.size())) return;

    // Pivot u in P u X maximising |P n N(u)|; ties go to the smaller vertex.
    int pivot = -1;
    int best = -1;
    auto consider = [&](int u) {
      int c = 0;
      for (int v : p) c += g_.Adjacent(u, v);
      if (c > best || (c == best && u < pivot)) {
        best = c;
        pivot = u;
      }
    };
    for (int u : p) consider(u);
    for (int u : x) consider(u);

    std::vector<int> branch;
    for (int v : p) {
      if (!g_.Adjacent(pivot, v)) branch.push_back(v);
    }
    for (int v : branch) {
      std::vector<int> np, nx;
      for (int w : p) {
        if (g_.Adjacent(v, w)) np.push_back(w);
      }
      for (int w : x) {
        if (g_.Adjacent(v, w)) nx.push_back(w);
      }
      r.push_back(v);
      Expand(r, std::move(np), std::move(nx), visit, prune);
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  }

  const Graph& g_;
};

// Upper bound on the independence number of `p`: the number of cliques in a
// greedy clique cover.
int CliqueCoverBound(const Graph& g, const std::vector<int>& p) {
  std::vector<std::vector<int>> cover;
  for (int v : p) {
    bool placed = false;
    for (auto& clique : cover) {
      bool ok = true;
      for (int u : clique) {
        if (!g.Adjacent(u, v)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        clique.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) cover.push_back({v});
  }
  return static_cast<int>(cover.size());
}

bool SearchIndependent(const Graph& g, int k, std::vector<int>& chosen,
                       std::vector<int> p, std::vector<int>* witness) {
  if (static_cast<int>(chosen.size()) >= k) {
    if (witness != nullptr) {
      *witness = chosen;
      std::sort(witness->begin(), witness->end());
    }
    return true;
  }
  while (!p.empty()) {
    if (static_cast<int>(chosen.size() + p.size()) < k) return false;
    if (static_cast<int>(chosen.size()) + CliqueCoverBound(g, p) < k) {
      return false;
    }
    // Branch on the vertex with fewest neighbours among the candidates.
    std::size_t pick = 0;
    int pick_degree = -1;
    for (std::size_t i = 0; i < p.size(); ++i) {
      int d = 0;
      for (int u : p) d += g.Adjacent(p[i], u);
      if (pick_degree < 0 || d < pick_degree) {
        pick_degree = d;
        pick = i;
      }
    }
    const int v = p[pick];
    std::vector<int> rest;
    for (int u : p) {
      if (u != v && !g.Adjacent(u, v)) rest.push_back(u);
    }
    chosen.push_back(v);
    if (SearchIndependent(g, k, chosen, std::move(rest), witness)) return true;
    chosen.pop_back();
    p.erase(p.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return static_cast<int>(chosen.size()) >= k;
}

}  // namespace

std::vector<std::vector<int>> MaximalCliques(const Graph& g) {
  std::vector<std::vector<int>> out;
  if (g.size() == 0) return out;
  BronKerbosch bk(g);
  bk.Run(
      [&](const std::vector<int>& r) {
        std::vector<int> c = r;
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
      },
      [](std::size_t) { return false; });
  return out;
}

std::vector<int> BronKerboschMaxClique(const Graph& g) {
  std::vector<int> best;
  if (g.size() == 0) return best;
  BronKerbosch bk(g);
  bk.Run(
      [&](const std::vector<int>& r) {
        std::vector<int> c = r;
        std::sort(c.begin(), c.end());
        if (c.size() > best.size() || (c.size() == best.size() && c < best)) {
          best = std::move(c);
        }
      },
      // Strict comparison keeps equal-size branches alive for the tie-break.
      [&](std::size_t reachable) { return reachable < best.size(); });
  return best;
}

int MaxIndependentSetSize(const Graph& g, const std::vector<int>& nodes) {
  if (nodes.empty()) return 0;
  return static_cast<int>(
      BronKerboschMaxClique(g.Induced(nodes).Complement()).size());
}

bool HasIndependentSet(const Graph& g, int k, std::vector<int>* witness) {
  if (k <= 0) {
    if (witness != nullptr) witness->clear();
    return true;
  }
  std::vector<int> p(g.size());
  for (int v = 0; v < g.size(); ++v) p[v] = v;
  std::vector<int> chosen;
  return SearchIndependent(g, k, chosen, std::move(p), witness);
}

}  // namespace sopm
