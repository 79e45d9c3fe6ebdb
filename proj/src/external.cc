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

#include "sopm/external.h"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sopm/error.h"
#include "sopm/model_io.h"

namespace sopm {

namespace {

namespace fs = std::filesystem;

void ReplaceAll(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos;
       pos += to.size()) {
    s.replace(pos, from.size(), to);
  }
}

// Temporary directory removed on scope exit.
class ScratchDir {
 public:
  ScratchDir() {
    std::string tmpl = (fs::temp_directory_path() / "sopm-XXXXXX").string();
    if (mkdtemp(tmpl.data()) == nullptr) {
      throw ExternalSolverError("cannot create a temporary directory", "");
    }
    path_ = tmpl;
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

std::vector<int> ParseSolutionFile(const MilpModel& m, const std::string& text,
                                   double* reported_objective,
                                   bool* has_objective) {
  std::vector<int> x(m.num_variables(), 0);
  *has_objective = false;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string name, value_text, extra;
    if (!(ss >> name)) continue;
    const std::string where = "solution line " + std::to_string(line_no);
    if (!(ss >> value_text) || (ss >> extra)) {
      throw ExternalSolverError(where + ": expected \"<name> <value>\"", text);
    }
    char* end = nullptr;
    const double value = std::strtod(value_text.c_str(), &end);
    if (end == value_text.c_str() || *end != '\0' || !std::isfinite(value)) {
      throw ExternalSolverError(where + ": bad value '" + value_text + "'",
                                text);
    }
    if (name == "=obj=") {
      *reported_objective = value;
      *has_objective = true;
      continue;
    }
    const int v = m.FindVariable(name);
    if (v < 0) {
      throw ExternalSolverError(where + ": unknown variable '" + name + "'",
                                text);
    }
    const double rounded = std::round(value);
    if ((rounded != 0.0 && rounded != 1.0) ||
        std::abs(value - rounded) > 1e-6) {
      throw ExternalSolverError(
          where + ": value of " + name + " is not binary", text);
    }
    x[v] = static_cast<int>(rounded);
  }
  return x;
}

SolveResult ExternalSolve(const Instance& inst, const MilpModel& m,
                          const std::string& command_template,
                          const SolverBudget& budget) {
  if (command_template.find("{model}") == std::string::npos ||
      command_template.find("{solution}") == std::string::npos) {
    throw ParameterError(
        "external command must contain {model} and {solution} placeholders");
  }
  const auto start = std::chrono::steady_clock::now();
  ScratchDir dir;
  const fs::path model_path = dir.path() / "model.mps";
  const fs::path solution_path = dir.path() / "model.sol";
  {
    std::ofstream out(model_path);
    WriteMps(m, out);
    if (!out) throw ExternalSolverError("cannot write " + model_path.string(), "");
  }
  std::string command = command_template;
  ReplaceAll(command, "{model}", model_path.string());
  ReplaceAll(command, "{solution}", solution_path.string());
  ReplaceAll(command, "{time_limit}",
             std::to_string(std::max(1.0, budget.max_time_ms / 1000.0)));

  std::string output;
  // The newline ends any trailing comment in the template.
  FILE* pipe = popen(("{ " + command + "\n} 2>&1").c_str(), "r");
  if (pipe == nullptr) throw ExternalSolverError("cannot run: " + command, "");
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof(buf), pipe)) > 0;) {
    output.append(buf, n);
  }
  const int status = pclose(pipe);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    const int code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status)
                                                         : -1;
    throw ExternalSolverError(
        "external solver exited with status " + std::to_string(code) + ": " +
            output,
        output);
  }
  std::ifstream sol(solution_path);
  if (!sol) {
    throw ExternalSolverError("external solver wrote no solution file", output);
  }
  std::stringstream text;
  text << sol.rdbuf();

  SolveResult result;
  double reported = 0.0;
  bool has_reported = false;
  std::vector<int> x;
  try {
    x = ParseSolutionFile(m, text.str(), &reported, &has_reported);
  } catch (const ExternalSolverError& e) {
    throw ExternalSolverError(e.what(), output + e.output());
  }
  const std::vector<double> xr(x.begin(), x.end());
  if (!AssignmentFeasible(m, xr, 1e-6)) {
    throw ExternalSolverError("external solution violates a model row", output);
  }
  result.assignment = std::move(x);
  result.has_incumbent = true;
  result.objective = ObjectiveValue(m, xr);
  result.open_sites = OpenSites(m, result.assignment);
  const SolutionCheck check = ValidateSolution(inst, result.open_sites);
  if (!check.feasible) {
    throw ExternalSolverError("external solution rejected: " + check.reason,
                              output);
  }
  if (has_reported &&
      std::abs(reported - result.objective) >
          1e-6 * std::max(1.0, std::abs(result.objective))) {
    throw ExternalSolverError(
        "reported objective " + FormatReal(reported) +
            " does not match the assignment's " + FormatReal(result.objective),
        output);
  }
  result.status = SolveStatus::kOptimal;
  result.wall_time_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return result;
}

}  // namespace sopm
