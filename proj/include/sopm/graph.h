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

#ifndef SOPM_GRAPH_H_
#define SOPM_GRAPH_H_

#include <cstdint>
#include <vector>

namespace sopm {

// Simple undirected graph on vertices 0..n-1 backed by an adjacency matrix.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(std::size_t(n) * n, 0) {}

  int size() const { return n_; }
  void AddEdge(int a, int b);
  bool Adjacent(int a, int b) const {
    return adj_[std::size_t(a) * n_ + b] != 0;
  }
  int Degree(int v) const;
  int EdgeCount() const;
  std::vector<int> Neighbors(int v) const;

  // Subgraph induced by `nodes`; vertex i of the result is nodes[i].
  Graph Induced(const std::vector<int>& nodes) const;
  Graph Complement() const;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> adj_;
};

// Maximum clique found by Bron-Kerbosch enumeration of maximal cliques with
// Tomita pivoting. Among maximum cliques the lexicographically smallest
// sorted vertex list is returned. Empty graph yields an empty clique.
std::vector<int> BronKerboschMaxClique(const Graph& g);

// Every maximal clique of `g`, each sorted, in enumeration order.
std::vector<std::vector<int>> MaximalCliques(const Graph& g);

// Cardinality of a maximum independent set of the subgraph induced by
// `nodes`, as the maximum clique of its complement.
int MaxIndependentSetSize(const Graph& g, const std::vector<int>& nodes);

// Early-exit branch and bound: does `g` contain an independent set of at
// least `k` vertices? On success `witness` (if non-null) receives one, sorted.
bool HasIndependentSet(const Graph& g, int k,
                       std::vector<int>* witness = nullptr);

}  // namespace sopm

#endif  // SOPM_GRAPH_H_
