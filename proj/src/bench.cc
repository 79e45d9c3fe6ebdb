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

#include "sopm/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "sopm/error.h"

namespace sopm {

namespace {

using Clock = std::chrono::steady_clock;

double MsSince(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

struct Task {
  int instance;
  BaseModel base;
  DistanceEncoding distance;
  int r;
  int rep;
};

BenchRecord RunCell(const BenchInstance& bi, const Task& task,
                    const BenchConfig& config) {
  BenchRecord rec;
  rec.instance = bi.id;
  rec.generator_case = bi.instance.generator_case;
  rec.base = task.base;
  rec.distance = task.distance;
  rec.r = task.r;
  rec.rep = task.rep;
  const auto t0 = Clock::now();
  try {
    const int r = ClampRankCutoff(bi.instance, task.base, task.r);
    const MilpModel m = BuildFormulation(bi.instance, task.base, task.distance, r);
    rec.build_ms = MsSince(t0);
    const ModelStats stats = ComputeModelStats(m);
    rec.vars = stats.variables;
    rec.cons = stats.constraints;
    const auto t1 = Clock::now();
    const SolveResult res = BranchAndBound(m, config.budget);
    rec.solve_ms = MsSince(t1);
    rec.status = StatusName(res.status);
    rec.has_objective = res.has_incumbent;
    rec.objective = res.objective;
    rec.bb_nodes = res.bb_nodes;
    rec.lp_iters = res.lp_iterations;
  } catch (const InfeasibleModelError& e) {
    if (rec.build_ms < 0) rec.build_ms = MsSince(t0);
    rec.solve_ms = 0.0;
    rec.status = StatusName(SolveStatus::kInfeasible);
    rec.message = e.what();
  } catch (const std::exception& e) {
    if (rec.build_ms < 0) rec.build_ms = MsSince(t0);
    rec.solve_ms = 0.0;
    rec.status = "error";
    rec.message = e.what();
  }
  rec.time_ms = rec.build_ms + rec.solve_ms;
  return rec;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

constexpr const char* kCsvHeader =
    "instance,case,base,distance,r,rep,status,objective,time_ms,bb_nodes,"
    "lp_iters,vars,cons";

}  // namespace

std::vector<BenchRecord> RunMatrix(
    const std::vector<BenchInstance>& instances,
    const std::vector<BaseModel>& bases,
    const std::vector<DistanceEncoding>& distances,
    const std::vector<int>& r_values, int repetitions,
    const BenchConfig& config) {
  if (instances.empty() || bases.empty() || distances.empty() ||
      r_values.empty() || repetitions < 1) {
    throw ParameterError("benchmark selections must be nonempty");
  }
  std::vector<Task> tasks;
  for (int i = 0; i < static_cast<int>(instances.size()); ++i) {
    for (BaseModel b : bases) {
      for (DistanceEncoding d : distances) {
        for (int r : r_values) {
          for (int rep = 0; rep < repetitions; ++rep) {
            tasks.push_back({i, b, d, r, rep});
          }
        }
      }
    }
  }
  std::vector<BenchRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < tasks.size();) {
      records[k] = RunCell(instances[tasks[k].instance], tasks[k], config);
    }
  };
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return records;
}

void WriteRecordsCsv(const std::vector<BenchRecord>& records,
                     std::ostream& out) {
  out << kCsvHeader << "\n";
  for (const BenchRecord& r : records) {
    out << CsvField(r.instance) << ',' << r.generator_case << ','
        << BaseName(r.base) << ',' << DistanceName(r.distance) << ',' << r.r
        << ',' << r.rep << ',' << r.status << ','
        << (r.has_objective ? FormatReal(r.objective) : "") << ','
        << Fixed(r.time_ms, 3) << ',' << r.bb_nodes << ',' << r.lp_iters << ','
        << r.vars << ',' << r.cons << "\n";
  }
}

std::vector<BenchRecord> ReadRecordsCsv(std::istream& in) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw ParseError(0, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError(1, "unexpected CSV header");
  std::vector<BenchRecord> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != 13) throw ParseError(line_no, "expected 13 fields");
    BenchRecord r;
    try {
      r.instance = f[0];
      r.generator_case = std::stoi(f[1]);
      r.base = ParseBase(f[2]);
      r.distance = ParseDistance(f[3]);
      r.r = std::stoi(f[4]);
      r.rep = std::stoi(f[5]);
      r.status = f[6];
      r.has_objective = !f[7].empty();
      if (r.has_objective) r.objective = std::stod(f[7]);
      r.time_ms = std::stod(f[8]);
      r.bb_nodes = std::stoll(f[9]);
      r.lp_iters = std::stoll(f[10]);
      r.vars = std::stoi(f[11]);
      r.cons = std::stoi(f[12]);
    } catch (const std::exception& e) {
      throw ParseError(line_no, std::string("bad field: ") + e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CellSummary> Summarize(const std::vector<BenchRecord>& records) {
  std::vector<std::string> order;
  std::map<std::string, int> row_of;
  struct Acc {
    int count = 0;
    double time = 0.0, build = 0.0, solve = 0.0;
    bool split = true;
    int generator_case = 1;
  };
  std::map<std::tuple<int, int, int>, Acc> acc;
  for (const BenchRecord& r : records) {
    auto [it, inserted] =
        row_of.emplace(r.instance, static_cast<int>(order.size()));
    if (inserted) order.push_back(r.instance);
    Acc& a = acc[{it->second, static_cast<int>(r.base),
                  static_cast<int>(r.distance)}];
    ++a.count;
    a.time += r.time_ms;
    a.generator_case = r.generator_case;
    if (r.build_ms < 0 || r.solve_ms < 0) {
      a.split = false;
    } else {
      a.build += r.build_ms;
      a.solve += r.solve_ms;
    }
  }
  std::vector<CellSummary> cells;
  for (const auto& [key, a] : acc) {
    CellSummary c;
    c.instance = order[std::get<0>(key)];
    c.generator_case = a.generator_case;
    c.base = static_cast<BaseModel>(std::get<1>(key));
    c.distance = static_cast<DistanceEncoding>(std::get<2>(key));
    c.count = a.count;
    c.mean_time_ms = a.time / a.count;
    if (a.split) {
      c.mean_build_ms = a.build / a.count;
      c.mean_solve_ms = a.solve / a.count;
    }
    cells.push_back(std::move(c));
  }
  // Flag the fastest cell of each instance row (first in column order on ties).
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t j = i;
    std::size_t best = i;
    while (j < cells.size() && cells[j].instance == cells[i].instance) {
      if (cells[j].mean_time_ms < cells[best].mean_time_ms) best = j;
      ++j;
    }
    cells[best].best = true;
    i = j;
  }
  return cells;
}

std::string ReportCsv(const std::vector<CellSummary>& cells) {
  std::ostringstream out;
  out << "instance,case,base,distance,label,count,mean_time_ms,best\n";
  for (const CellSummary& c : cells) {
    out << CsvField(c.instance) << ',' << c.generator_case << ','
        << BaseName(c.base) << ',' << DistanceName(c.distance) << ','
        << FormulationLabel(c.base, c.distance) << ',' << c.count << ','
        << Fixed(c.mean_time_ms, 3) << ',' << (c.best ? 1 : 0) << "\n";
  }
  return out.str();
}

namespace {

std::string Pad(const std::string& s, std::size_t width, bool left) {
  if (s.size() >= width) return s;
  return left ? s + std::string(width - s.size(), ' ')
              : std::string(width - s.size(), ' ') + s;
}

std::string PivotTable(const std::vector<CellSummary>& cells,
                       double CellSummary::*field, const std::string& title,
                       bool flag_best) {
  std::vector<std::pair<int, int>> columns;
  std::vector<std::string> rows;
  for (const CellSummary& c : cells) {
    const std::pair<int, int> col{static_cast<int>(c.base),
                                  static_cast<int>(c.distance)};
    if (std::find(columns.begin(), columns.end(), col) == columns.end()) {
      columns.push_back(col);
    }
    if (rows.empty() || rows.back() != c.instance) rows.push_back(c.instance);
  }
  std::sort(columns.begin(), columns.end());

  std::size_t first_width = title.size();
  for (const std::string& r : rows) first_width = std::max(first_width, r.size());
  first_width = std::max<std::size_t>(first_width, 7);  // "Average"
  std::vector<std::string> header = {Pad(title, first_width, true)};
  for (auto [b, d] : columns) {
    header.push_back(FormulationLabel(static_cast<BaseModel>(b),
                                      static_cast<DistanceEncoding>(d)));
  }

  std::vector<std::vector<std::string>> body;
  std::vector<double> sum(columns.size(), 0.0);
  std::vector<int> count(columns.size(), 0);
  for (const std::string& r : rows) {
    std::vector<std::string> line = {Pad(r, first_width, true)};
    for (std::size_t k = 0; k < columns.size(); ++k) {
      std::string cell = "-";
      for (const CellSummary& c : cells) {
        if (c.instance == r && static_cast<int>(c.base) == columns[k].first &&
            static_cast<int>(c.distance) == columns[k].second) {
          const double v = c.*field;
          cell = Fixed(v, 2) + (flag_best && c.best ? "*" : "");
          sum[k] += v;
          ++count[k];
        }
      }
      line.push_back(cell);
    }
    body.push_back(std::move(line));
  }
  std::vector<std::string> avg = {Pad("Average", first_width, true)};
  for (std::size_t k = 0; k < columns.size(); ++k) {
    avg.push_back(count[k] ? Fixed(sum[k] / count[k], 2) : "-");
  }
  body.push_back(std::move(avg));

  std::size_t width = 0;
  for (std::size_t k = 1; k < header.size(); ++k) {
    width = std::max(width, header[k].size());
  }
  for (const auto& line : body) {
    for (std::size_t k = 1; k < line.size(); ++k) {
      width = std::max(width, line[k].size());
    }
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& line) {
    out << line[0];
    for (std::size_t k = 1; k < line.size(); ++k) {
      out << "  " << Pad(line[k], width, false);
    }
    out << "\n";
  };
  emit(header);
  for (std::size_t k = 0; k + 1 < body.size(); ++k) emit(body[k]);
  out << std::string(first_width + columns.size() * (width + 2), '-') << "\n";
  emit(body.back());
  return out.str();
}

}  // namespace

std::string ReportTable(const std::vector<CellSummary>& cells,
                        const ReportOptions& options) {
  if (cells.empty()) return "(no records)\n";
  std::string out =
      PivotTable(cells, &CellSummary::mean_time_ms, "time_ms", true);
  if (options.split_timing) {
    const bool available =
        std::all_of(cells.begin(), cells.end(), [](const CellSummary& c) {
          return c.mean_build_ms >= 0 && c.mean_solve_ms >= 0;
        });
    if (!available) {
      out += "\nbuild/solve split unavailable for these records\n";
    } else {
      out += "\n" +
             PivotTable(cells, &CellSummary::mean_build_ms, "build_ms", false);
      out += "\n" +
             PivotTable(cells, &CellSummary::mean_solve_ms, "solve_ms", false);
    }
  }
  return out;
}

}  // namespace sopm
