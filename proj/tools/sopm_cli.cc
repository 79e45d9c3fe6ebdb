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


// sopm: generate instances, emit and solve the p-median models, benchmark.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sopm/bench.h"
#include "sopm/error.h"
#include "sopm/external.h"
#include "sopm/formulations.h"
#include "sopm/instance.h"
#include "sopm/model_io.h"
#include "sopm/solver.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSolver = 3;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sopm::LoadError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or stdout when empty.
void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sopm::Error("cannot write " + path);
  out << text;
}

std::string Number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string SiteList(const std::vector<int>& sites) {
  std::string out;
  for (int j : sites) out += (out.empty() ? "" : " ") + std::to_string(j);
  return out;
}

void PrintResult(const sopm::SolveResult& res) {
  std::cout << "status: " << sopm::StatusName(res.status) << "\n";
  if (res.has_incumbent) {
    std::cout << "objective: " << Number(res.objective) << "\n";
    std::cout << "open_sites: " << SiteList(res.open_sites) << "\n";
  }
  std::cout << "bb_nodes: " << res.bb_nodes << "\n";
  std::cout << "lp_iterations: " << res.lp_iterations << "\n";
}

int ExitFor(const sopm::SolveResult& res) {
  switch (res.status) {
    case sopm::SolveStatus::kOptimal: return kExitOk;
    case sopm::SolveStatus::kInfeasible: return kExitData;
    case sopm::SolveStatus::kBudgetExceeded: return kExitSolver;
  }
  return kExitSolver;
}

struct Options {
  std::string input;
  int generator_case = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::vector<std::string> instances;
  std::vector<std::string> bases = {"rs"};
  std::vector<std::string> distances = {"d1"};
  std::vector<int> r_values = {50};
  std::string format = "mps";
  std::string external;
  long long max_nodes = 1000000;
  double max_time_ms = 600000.0;
  int jobs = 1;
  int reps = 1;
  int max_repair = 1000;
  double max_subsets = 2e6;
  bool split = false;
  bool csv = false;
};

sopm::SolverBudget Budget(const Options& o) {
  sopm::SolverBudget b;
  b.max_nodes = o.max_nodes;
  b.max_time_ms = o.max_time_ms;
  return b;
}

sopm::MilpModel BuildSelected(const sopm::Instance& inst, const Options& o) {
  const sopm::BaseModel base = sopm::ParseBase(o.bases.front());
  const sopm::DistanceEncoding d = sopm::ParseDistance(o.distances.front());
  const int r = sopm::ClampRankCutoff(inst, base, o.r_values.front());
  return sopm::BuildFormulation(inst, base, d, r);
}

int RunGenerate(const Options& o) {
  const sopm::RawNetwork net = sopm::ParseOrLib(ReadFile(o.input));
  sopm::GeneratorConfig cfg;
  cfg.generator_case = o.generator_case;
  cfg.seed = o.seed;
  cfg.max_repair_steps = o.max_repair;
  Emit(o.out, sopm::SaveInstance(sopm::GenerateInstance(net, cfg)));
  return kExitOk;
}

int RunBuild(const Options& o) {
  const sopm::Instance inst = sopm::LoadInstanceFile(o.instances.front());
  const sopm::MilpModel m = BuildSelected(inst, o);
  Emit(o.out, o.format == "lp" ? sopm::WriteLp(m) : sopm::WriteMps(m));
  return kExitOk;
}

int RunSolve(const Options& o) {
  const sopm::Instance inst = sopm::LoadInstanceFile(o.instances.front());
  const sopm::MilpModel m = BuildSelected(inst, o);
  const sopm::SolveResult res =
      o.external.empty() ? sopm::BranchAndBound(m, Budget(o))
                         : sopm::ExternalSolve(inst, m, o.external, Budget(o));
  PrintResult(res);
  return ExitFor(res);
}

int RunOracle(const Options& o) {
  const sopm::Instance inst = sopm::LoadInstanceFile(o.instances.front());
  sopm::OracleOptions opts;
  opts.max_subsets = o.max_subsets;
  const sopm::SolveResult res = sopm::EnumerateOracle(inst, opts);
  PrintResult(res);
  return ExitFor(res);
}

int RunBench(const Options& o) {
  std::vector<sopm::BenchInstance> instances;
  for (const std::string& path : o.instances) {
    instances.push_back({std::filesystem::path(path).stem().string(),
                         sopm::LoadInstanceFile(path)});
  }
  std::vector<sopm::BaseModel> bases;
  for (const std::string& b : o.bases) bases.push_back(sopm::ParseBase(b));
  std::vector<sopm::DistanceEncoding> distances;
  for (const std::string& d : o.distances) {
    distances.push_back(sopm::ParseDistance(d));
  }
  sopm::BenchConfig cfg;
  cfg.budget = Budget(o);
  cfg.jobs = o.jobs;
  const std::vector<sopm::BenchRecord> records =
      sopm::RunMatrix(instances, bases, distances, o.r_values, o.reps, cfg);
  std::ostringstream csv;
  sopm::WriteRecordsCsv(records, csv);
  Emit(o.out, csv.str());
  for (const sopm::BenchRecord& r : records) {
    if (!r.message.empty()) {
      std::cerr << r.instance << " " << sopm::FormulationLabel(r.base, r.distance)
                << " rep " << r.rep << ": " << r.message << "\n";
    }
  }
  return kExitOk;
}

int RunReport(const Options& o) {
  std::istringstream in(ReadFile(o.input));
  const std::vector<sopm::CellSummary> cells =
      sopm::Summarize(sopm::ReadRecordsCsv(in));
  sopm::ReportOptions opts;
  opts.split_timing = o.split;
  Emit(o.out, o.csv ? sopm::ReportCsv(cells) : sopm::ReportTable(cells, opts));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-median models with minimum-distance constraints"};
  app.require_subcommand(1);
  Options o;

  const auto bases = CLI::IsMember({"rs", "rrr", "cobra"});
  const auto distances = CLI::IsMember({"d1", "d2", "d3", "d4"});

  auto* generate = app.add_subcommand("generate", "build an instance from an OR-Library file");
  generate->add_option("--input", o.input, "OR-Library pmed file")
      ->required()->check(CLI::ExistingFile);
  generate->add_option("--case", o.generator_case, "1: 80% sites, 2: 20% sites")
      ->check(CLI::IsMember({1, 2}));
  generate->add_option("--seed", o.seed);
  generate->add_option("--max-repair", o.max_repair, "repair step budget")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--out", o.out, "output path (default stdout)");

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--base", o.bases)->expected(1)->check(bases);
    sub->add_option("--distance", o.distances)->expected(1)->check(distances);
    sub->add_option("--r", o.r_values, "rank cutoff")
        ->expected(1)->check(CLI::PositiveNumber);
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--max-nodes", o.max_nodes)->check(CLI::NonNegativeNumber);
    sub->add_option("--max-time-ms", o.max_time_ms)
        ->check(CLI::NonNegativeNumber);
  };

  auto* build = app.add_subcommand("build", "write a model file");
  build->add_option("--instance", o.instances)->expected(1)->required()
      ->check(CLI::ExistingFile);
  add_model(build);
  build->add_option("--format", o.format)->check(CLI::IsMember({"mps", "lp"}));
  build->add_option("--out", o.out, "output path (default stdout)");

  auto* solve = app.add_subcommand("solve", "solve one formulation");
  solve->add_option("--instance", o.instances)->expected(1)->required()
      ->check(CLI::ExistingFile);
  add_model(solve);
  add_budget(solve);
  solve->add_option("--external", o.external,
                    "command template with {model}, {solution}, {time_limit}");

  auto* oracle = app.add_subcommand("oracle", "solve by subset enumeration");
  oracle->add_option("--instance", o.instances)->expected(1)->required()
      ->check(CLI::ExistingFile);
  oracle->add_option("--max-subsets", o.max_subsets)
      ->check(CLI::PositiveNumber);

  auto* bench = app.add_subcommand("bench", "run the formulation matrix");
  bench->add_option("--instance", o.instances, "instance files")
      ->required()->check(CLI::ExistingFile);
  bench->add_option("--base", o.bases)->check(bases);
  bench->add_option("--distance", o.distances)->check(distances);
  bench->add_option("--r", o.r_values)->check(CLI::PositiveNumber);
  bench->add_option("--reps", o.reps)->check(CLI::PositiveNumber);
  bench->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
  add_budget(bench);
  bench->add_option("--out", o.out, "CSV path (default stdout)");

  auto* report = app.add_subcommand("report", "summarise a bench CSV");
  report->add_option("--input", o.input)->required()->check(CLI::ExistingFile);
  report->add_flag("--csv", o.csv, "emit CSV instead of a table");
  report->add_flag("--split", o.split, "add build and solve tables");
  report->add_option("--out", o.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  // Bench defaults to the whole matrix when nothing is selected.
  if (bench->parsed()) {
    if (bench->count("--base") == 0) o.bases = {"rs", "rrr", "cobra"};
    if (bench->count("--distance") == 0) o.distances = {"d1", "d2", "d3", "d4"};
  }

  try {
    if (generate->parsed()) return RunGenerate(o);
    if (build->parsed()) return RunBuild(o);
    if (solve->parsed()) return RunSolve(o);
    if (oracle->parsed()) return RunOracle(o);
    if (bench->parsed()) return RunBench(o);
    if (report->parsed()) return RunReport(o);
  } catch (const sopm::ExternalSolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const sopm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
