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

#include "sopm/instance.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <queue>
#include <sstream>

#include "json.hpp"
#include "sopm/error.h"
#include "sopm/graph.h"

namespace sopm {

namespace {

constexpr int kInstanceFormatVersion = 1;

bool IsBlank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

// Parses exactly `count` integers from `line`.
bool ReadInts(const std::string& line, int count, long long* out) {
  std::istringstream ss(line);
  for (int i = 0; i < count; ++i) {
    if (!(ss >> out[i])) return false;
  }
  std::string extra;
  return !(ss >> extra);
}

void CheckConnected(const RawNetwork& net) {
  std::vector<std::vector<int>> adj(net.node_count + 1);
  for (const Edge& e : net.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(net.node_count + 1, 0);
  std::vector<int> stack = {1};
  seen[1] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  if (reached != net.node_count) {
    throw ValidationError("network is disconnected: " +
                          std::to_string(net.node_count - reached) +
                          " node(s) unreachable from node 1");
  }
}

}  // namespace

RawNetwork ParseOrLib(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      if (!IsBlank(out)) return true;
    }
    return false;
  };

  if (!next_content_line(line)) throw ParseError(0, "missing header line");
  long long header[3];
  if (!ReadInts(line, 3, header)) {
    throw ParseError(line_no, "header must be three integers \"n m p\"");
  }
  const long long n = header[0], m = header[1], p = header[2];
  if (n < 1 || m < 0 || p < 1) {
    throw ParseError(line_no, "header values out of range");
  }

  std::map<std::pair<int, int>, int> best;
  for (long long k = 0; k < m; ++k) {
    if (!next_content_line(line)) {
      throw ParseError(0, "expected " + std::to_string(m) +
                              " edge lines, found " + std::to_string(k));
    }
    long long e[3];
    if (!ReadInts(line, 3, e)) {
      throw ParseError(line_no, "edge line must be three integers \"u v w\"");
    }
    if (e[0] < 1 || e[0] > n || e[1] < 1 || e[1] > n) {
      throw ParseError(line_no, "node id out of range 1.." + std::to_string(n));
    }
    if (e[0] == e[1]) throw ParseError(line_no, "self-loop edge");
    if (e[2] < 0 || e[2] > std::numeric_limits<int>::max()) {
      throw ParseError(line_no, "edge weight must be a nonnegative integer");
    }
    const int u = static_cast<int>(std::min(e[0], e[1]));
    const int v = static_cast<int>(std::max(e[0], e[1]));
    auto [it, inserted] = best.emplace(std::make_pair(u, v), int(e[2]));
    if (!inserted) it->second = std::min(it->second, int(e[2]));
  }
  if (next_content_line(line)) {
    throw ParseError(line_no, "unexpected content after the last edge line");
  }

  RawNetwork net;
  net.node_count = static_cast<int>(n);
  net.p = static_cast<int>(p);
  for (const auto& [key, w] : best) net.edges.push_back({key.first, key.second, w});
  if (net.p >= net.node_count) {
    throw ValidationError("p must be smaller than the node count");
  }
  CheckConnected(net);
  return net;
}

RawNetwork ParseOrLib(const std::string& text) {
  std::istringstream in(text);
  return ParseOrLib(in);
}

DistanceMatrix AllPairsShortest(const RawNetwork& net) {
  const int n = net.node_count;
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const Edge& e : net.edges) {
    adj[e.u - 1].emplace_back(e.v - 1, e.weight);
    adj[e.v - 1].emplace_back(e.u - 1, e.weight);
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  DistanceMatrix out(n);
  using Item = std::pair<double, int>;
  for (int src = 0; src < n; ++src) {
    std::vector<double> dist(n, kInf);
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[src] = 0.0;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[v]) continue;
      for (auto [u, w] : adj[v]) {
        if (d + w < dist[u]) {
          dist[u] = d + w;
          heap.emplace(dist[u], u);
        }
      }
    }
    for (int t = 0; t < n; ++t) {
      if (dist[t] == kInf) {
        throw ValidationError("no path between nodes " +
                              std::to_string(src + 1) + " and " +
                              std::to_string(t + 1));
      }
      out.set(src, t, dist[t]);
    }
  }
  return out;
}

DistanceMatrix SynthesizeEuclidean(const DistanceMatrix& s, RandomStream& rng) {
  const int n = s.size();
  DistanceMatrix euc(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double hi = s.at(i, j);
      euc.SetSymmetric(i, j, rng.Uniform(hi / 2.0, hi));
    }
  }
  return euc;
}

int RoundedShare(int n, int percent) { return (n * percent * 2 + 100) / 200; }

NodeSplit SplitNodes(const RawNetwork& net, int generator_case,
                     RandomStream& rng) {
  if (generator_case != 1 && generator_case != 2) {
    throw ParameterError("case must be 1 or 2");
  }
  const int n = net.node_count;
  if (n - 1 <= net.p) {
    throw GenerationError("split", "need more than p=" + std::to_string(net.p) +
                                       " sites and at least one client, but "
                                       "the network has only " +
                                       std::to_string(n) + " nodes");
  }
  std::vector<int> nodes(n);
  for (int i = 0; i < n; ++i) nodes[i] = i + 1;
  const int site_count = RoundedShare(n, generator_case == 1 ? 80 : 20);

  // Partial Fisher-Yates: the first site_count entries become the sites.
  for (int i = 0; i < site_count; ++i) {
    const std::size_t j = i + rng.UniformIndex(std::size_t(n - i));
    std::swap(nodes[i], nodes[j]);
  }
  NodeSplit split;
  split.sites.assign(nodes.begin(), nodes.begin() + site_count);
  split.clients.assign(nodes.begin() + site_count, nodes.end());
  std::sort(split.sites.begin(), split.sites.end());
  std::sort(split.clients.begin(), split.clients.end());

  while (static_cast<int>(split.sites.size()) <= net.p) {
    const std::size_t k = rng.UniformIndex(split.clients.size());
    const int promoted = split.clients[k];
    split.clients.erase(split.clients.begin() + static_cast<std::ptrdiff_t>(k));
    split.sites.insert(
        std::lower_bound(split.sites.begin(), split.sites.end(), promoted),
        promoted);
  }
  return split;
}

ThresholdRanges ComputeThresholdRanges(const DistanceMatrix& euc,
                                       const std::vector<int>& clients,
                                       const std::vector<int>& sites) {
  if (sites.size() < 2 || clients.empty()) {
    throw GenerationError("thresholds",
                          "need at least two sites and one client");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double mn1 = kInf, mx1 = -kInf, mn2 = kInf, mx2 = -kInf;
  for (std::size_t a = 0; a < sites.size(); ++a) {
    for (std::size_t b = a + 1; b < sites.size(); ++b) {
      const double d = euc.at(sites[a] - 1, sites[b] - 1);
      mn1 = std::min(mn1, d);
      mx1 = std::max(mx1, d);
    }
    for (int c : clients) {
      const double d = euc.at(sites[a] - 1, c - 1);
      mn2 = std::min(mn2, d);
      mx2 = std::max(mx2, d);
    }
  }
  return {mn1, mn1 + (mx1 - mn1) / 10.0, mn2, mn2 + (mx2 - mn2) / 10.0};
}

Thresholds SampleThresholds(const DistanceMatrix& euc,
                            const std::vector<int>& clients,
                            const std::vector<int>& sites, RandomStream& rng) {
  const ThresholdRanges r = ComputeThresholdRanges(euc, clients, sites);
  Thresholds t;
  t.d1 = rng.Uniform(r.d1_lo, r.d1_hi);
  t.d2 = rng.Uniform(r.d2_lo, r.d2_hi);
  return t;
}

bool CheckFeasibility(const Instance& inst) {
  std::vector<int> allowed;
  for (int j : inst.sites) {
    bool forbidden = false;
    for (int k : inst.clients) {
      if (inst.euc(j, k) <= inst.d2) {
        forbidden = true;
        break;
      }
    }
    if (!forbidden) allowed.push_back(j);
  }
  if (static_cast<int>(allowed.size()) < inst.p) return false;
  Graph g(static_cast<int>(allowed.size()));
  for (std::size_t a = 0; a < allowed.size(); ++a) {
    for (std::size_t b = a + 1; b < allowed.size(); ++b) {
      if (inst.euc(allowed[a], allowed[b]) <= inst.d1) {
        g.AddEdge(static_cast<int>(a), static_cast<int>(b));
      }
    }
  }
  return HasIndependentSet(g, inst.p);
}

int RepairToFeasibility(Instance& inst, RandomStream& rng,
                        int max_repair_steps) {
  int steps = 0;
  while (!CheckFeasibility(inst)) {
    if (steps >= max_repair_steps) {
      throw GenerationError(
          "feasibility repair",
          "still infeasible after " + std::to_string(steps) +
              " step(s) with |J|=" + std::to_string(inst.sites.size()) +
              ", |I|=" + std::to_string(inst.clients.size()));
    }
    if (inst.clients.size() <= 1) {
      throw GenerationError("feasibility repair",
                            "promoting another site would leave no clients "
                            "after " + std::to_string(steps) + " step(s)");
    }
    const std::size_t k = rng.UniformIndex(inst.clients.size());
    const int promoted = inst.clients[k];
    inst.clients.erase(inst.clients.begin() + static_cast<std::ptrdiff_t>(k));
    inst.sites.insert(
        std::lower_bound(inst.sites.begin(), inst.sites.end(), promoted),
        promoted);
    const Thresholds t =
        SampleThresholds(inst.euclidean, inst.clients, inst.sites, rng);
    inst.d1 = t.d1;
    inst.d2 = t.d2;
    ++steps;
  }
  return steps;
}

Instance GenerateInstance(const RawNetwork& net, const GeneratorConfig& cfg) {
  if (cfg.max_repair_steps < 1) {
    throw ParameterError("max_repair_steps must be at least 1");
  }
  SeededStream rng(cfg.seed);
  Instance inst;
  inst.p = net.p;
  inst.seed = cfg.seed;
  inst.generator_case = cfg.generator_case;
  NodeSplit split = SplitNodes(net, cfg.generator_case, rng);
  inst.clients = std::move(split.clients);
  inst.sites = std::move(split.sites);
  inst.shortest = AllPairsShortest(net);
  inst.euclidean = SynthesizeEuclidean(inst.shortest, rng);
  const Thresholds t =
      SampleThresholds(inst.euclidean, inst.clients, inst.sites, rng);
  inst.d1 = t.d1;
  inst.d2 = t.d2;
  inst.repair_steps = RepairToFeasibility(inst, rng, cfg.max_repair_steps);
  return inst;
}

void ValidateInstance(const Instance& inst) {
  const int n = inst.shortest.size();
  if (inst.euclidean.size() != n) {
    throw ValidationError("matrix dimensions differ");
  }
  std::vector<int> seen(n + 1, 0);
  for (const auto* set : {&inst.clients, &inst.sites}) {
    if (!std::is_sorted(set->begin(), set->end())) {
      throw ValidationError("client and site lists must be sorted");
    }
    for (int v : *set) {
      if (v < 1 || v > n) {
        throw ValidationError("node id " + std::to_string(v) + " out of range");
      }
      if (seen[v]++) {
        throw ValidationError("node " + std::to_string(v) +
                              " is listed twice (clients and sites must be "
                              "disjoint)");
      }
    }
  }
  if (static_cast<int>(inst.clients.size() + inst.sites.size()) != n) {
    throw ValidationError("clients and sites must cover every node");
  }
  if (inst.p < 1 || static_cast<int>(inst.sites.size()) <= inst.p) {
    throw ValidationError("need 1 <= p < |J|");
  }
  if (inst.generator_case != 1 && inst.generator_case != 2) {
    throw ValidationError("case must be 1 or 2");
  }
  for (const DistanceMatrix* m : {&inst.shortest, &inst.euclidean}) {
    for (int i = 0; i < n; ++i) {
      if (m->at(i, i) != 0.0) throw ValidationError("nonzero diagonal");
      for (int j = 0; j < n; ++j) {
        if (m->at(i, j) != m->at(j, i)) {
          throw ValidationError("matrix is not symmetric");
        }
        if (!(m->at(i, j) >= 0.0) || !std::isfinite(m->at(i, j))) {
          throw ValidationError("distances must be finite and nonnegative");
        }
      }
    }
  }
}

std::string FormatReal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

void WriteIntList(std::ostream& out, const std::vector<int>& v) {
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v[i];
  }
  out << ']';
}

void WriteMatrix(std::ostream& out, const DistanceMatrix& m) {
  out << "[\n";
  for (int i = 0; i < m.size(); ++i) {
    out << "    [";
    for (int j = 0; j < m.size(); ++j) {
      if (j) out << ", ";
      out << FormatReal(m.at(i, j));
    }
    out << ']' << (i + 1 < m.size() ? ",\n" : "\n");
  }
  out << "  ]";
}

using nlohmann::json;

const json& Field(const json& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw LoadError(key, "missing field");
  return *it;
}

long long IntField(const json& doc, const std::string& key) {
  const json& v = Field(doc, key);
  if (!v.is_number_integer()) throw LoadError(key, "expected an integer");
  return v.get<long long>();
}

double RealField(const json& doc, const std::string& key) {
  const json& v = Field(doc, key);
  if (!v.is_number()) throw LoadError(key, "expected a number");
  return v.get<double>();
}

std::vector<int> IdList(const json& doc, const std::string& key) {
  const json& v = Field(doc, key);
  if (!v.is_array()) throw LoadError(key, "expected a list of node ids");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) {
      throw LoadError(key + "[" + std::to_string(i) + "]",
                      "expected an integer node id");
    }
    out.push_back(v[i].get<int>());
  }
  return out;
}

DistanceMatrix MatrixField(const json& doc, const std::string& key, int n) {
  const json& v = Field(doc, key);
  if (!v.is_array() || static_cast<int>(v.size()) != n) {
    throw LoadError(key, "expected " + std::to_string(n) + " rows");
  }
  DistanceMatrix m(n);
  for (int i = 0; i < n; ++i) {
    const std::string row_path = key + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || static_cast<int>(v[i].size()) != n) {
      throw LoadError(row_path, "expected " + std::to_string(n) + " entries");
    }
    for (int j = 0; j < n; ++j) {
      const json& x = v[i][j];
      const std::string path = row_path + "[" + std::to_string(j) + "]";
      if (!x.is_number()) throw LoadError(path, "expected a number");
      const double d = x.get<double>();
      if (!(d >= 0.0) || !std::isfinite(d)) {
        throw LoadError(path, "distance must be finite and nonnegative");
      }
      if (i == j && d != 0.0) throw LoadError(path, "diagonal must be zero");
      m.set(i, j, d);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (m.at(i, j) != m.at(j, i)) {
        throw LoadError(key + "[" + std::to_string(i) + "][" +
                            std::to_string(j) + "]",
                        "matrix is not symmetric");
      }
    }
  }
  return m;
}

}  // namespace

void SaveInstance(const Instance& inst, std::ostream& out) {
  out << "{\n";
  out << "  \"version\": " << kInstanceFormatVersion << ",\n";
  out << "  \"case\": " << inst.generator_case << ",\n";
  out << "  \"seed\": " << inst.seed << ",\n";
  out << "  \"p\": " << inst.p << ",\n";
  out << "  \"num_clients\": " << inst.clients.size() << ",\n";
  out << "  \"num_sites\": " << inst.sites.size() << ",\n";
  out << "  \"repair_steps\": " << inst.repair_steps << ",\n";
  out << "  \"clients\": ";
  WriteIntList(out, inst.clients);
  out << ",\n  \"sites\": ";
  WriteIntList(out, inst.sites);
  out << ",\n  \"d1\": " << FormatReal(inst.d1) << ",\n";
  out << "  \"d2\": " << FormatReal(inst.d2) << ",\n";
  out << "  \"shortest\": ";
  WriteMatrix(out, inst.shortest);
  out << ",\n  \"euclidean\": ";
  WriteMatrix(out, inst.euclidean);
  out << "\n}\n";
}

std::string SaveInstance(const Instance& inst) {
  std::ostringstream out;
  SaveInstance(inst, out);
  return out.str();
}

Instance LoadInstance(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw LoadError("$", std::string("not a valid document: ") + e.what());
  }
  if (!doc.is_object()) throw LoadError("$", "expected an object");
  if (IntField(doc, "version") != kInstanceFormatVersion) {
    throw LoadError("version", "unsupported format version");
  }
  Instance inst;
  inst.generator_case = static_cast<int>(IntField(doc, "case"));
  if (inst.generator_case != 1 && inst.generator_case != 2) {
    throw LoadError("case", "must be 1 or 2");
  }
  {
    const json& seed = Field(doc, "seed");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
      throw LoadError("seed", "expected an integer");
    }
    inst.seed = seed.get<std::uint64_t>();
  }
  inst.p = static_cast<int>(IntField(doc, "p"));
  if (doc.contains("repair_steps")) {
    inst.repair_steps = static_cast<int>(IntField(doc, "repair_steps"));
  }
  inst.clients = IdList(doc, "clients");
  inst.sites = IdList(doc, "sites");
  inst.d1 = RealField(doc, "d1");
  inst.d2 = RealField(doc, "d2");
  const int n = static_cast<int>(inst.clients.size() + inst.sites.size());
  inst.shortest = MatrixField(doc, "shortest", n);
  inst.euclidean = MatrixField(doc, "euclidean", n);
  for (const char* key : {"num_clients", "num_sites"}) {
    if (doc.contains(key)) {
      const auto expect = std::string(key) == "num_clients"
                              ? inst.clients.size()
                              : inst.sites.size();
      if (IntField(doc, key) != static_cast<long long>(expect)) {
        throw LoadError(key, "does not match the list length");
      }
    }
  }
  try {
    ValidateInstance(inst);
  } catch (const ValidationError& e) {
    throw LoadError("$", e.what());
  }
  return inst;
}

Instance LoadInstanceText(const std::string& text) {
  std::istringstream in(text);
  return LoadInstance(in);
}

Instance LoadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path, "cannot open file");
  return LoadInstance(in);
}

}  // namespace sopm
