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

#ifndef SOPM_ERROR_H_
#define SOPM_ERROR_H_

#include <stdexcept>
#include <string>

namespace sopm {

// Base class for every error raised by the library. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line` is 1-based; 0 means end-of-input.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(Format(line, what)), line_(line) {}
  int line() const { return line_; }

 private:
  static std::string Format(int line, const std::string& what) {
    if (line <= 0) return "parse error at end-of-input: " + what;
    return "parse error at line " + std::to_string(line) + ": " + what;
  }
  int line_;
};

// Structurally well-formed data that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Instance generation failed; `stage` names the generator step.
class GenerationError : public Error {
 public:
  GenerationError(std::string stage, const std::string& what)
      : Error("generation failed in " + stage + ": " + what),
        stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Instance file schema violation; `path` is the offending field path.
class LoadError : public Error {
 public:
  LoadError(std::string path, const std::string& what)
      : Error("instance file error at '" + path + "': " + what),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Out-of-range builder or solver parameter.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A model cannot be built because the reduced instance is trivially
// infeasible (fewer than p admissible sites).
class InfeasibleModelError : public Error {
 public:
  using Error::Error;
};

// Enumeration oracle refused to run (search space above its cap).
class OracleCapError : public Error {
 public:
  using Error::Error;
};

// External solver run failed; `output` carries the captured process output.
class ExternalSolverError : public Error {
 public:
  ExternalSolverError(const std::string& what, std::string output)
      : Error(what), output_(std::move(output)) {}
  const std::string& output() const { return output_; }

 private:
  std::string output_;
};

}  // namespace sopm

#endif  // SOPM_ERROR_H_
