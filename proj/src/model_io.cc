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

#include "sopm/model_io.h"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "sopm/error.h"
#include "sopm/instance.h"

namespace sopm {

namespace {

// Appends `field` so that it starts at 1-based column `column`, or after a
// single blank when the line is already past that column.
void Put(std::string& line, int column, const std::string& field) {
  const std::size_t start = static_cast<std::size_t>(column - 1);
  if (line.size() < start) {
    line.append(start - line.size(), ' ');
  } else if (!line.empty()) {
    line.push_back(' ');
  }
  line += field;
}

char SenseCode(Sense s) {
  switch (s) {
    case Sense::kLe:
      return 'L';
    case Sense::kGe:
      return 'G';
    case Sense::kEq:
      return 'E';
  }
  return '?';
}

constexpr const char* kObjectiveRow = "OBJ";

}  // namespace

void WriteMps(const MilpModel& m, std::ostream& out) {
  const ModelMetadata& meta = m.metadata();
  out << "* sopm-meta base=" << (meta.base.empty() ? "-" : meta.base)
      << " distance=" << (meta.distance.empty() ? "-" : meta.distance)
      << " r=" << meta.r << " p=" << meta.p
      << " fingerprint=" << (meta.fingerprint.empty() ? "-" : meta.fingerprint)
      << "\n";
  std::string line = "NAME";
  Put(line, 15, "SOPM");
  out << line << "\nROWS\n";
  line.clear();
  Put(line, 2, "N");
  Put(line, 5, kObjectiveRow);
  out << line << "\n";
  for (const Constraint& c : m.constraints()) {
    line.clear();
    Put(line, 2, std::string(1, SenseCode(c.sense)));
    Put(line, 5, c.name);
    out << line << "\n";
  }

  // Column-major view of the rows.
  std::vector<std::vector<std::pair<int, double>>> by_column(m.num_variables());
  for (int r = 0; r < m.num_constraints(); ++r) {
    for (const Term& t : m.constraints()[r].terms) {
      by_column[t.var].emplace_back(r, t.coef);
    }
  }
  out << "COLUMNS\n";
  line.clear();
  Put(line, 5, "MARKER");
  Put(line, 15, "'MARKER'");
  Put(line, 40, "'INTORG'");
  out << line << "\n";
  for (int v = 0; v < m.num_variables(); ++v) {
    const Variable& var = m.variables()[v];
    line.clear();
    Put(line, 5, var.name);
    Put(line, 15, kObjectiveRow);
    Put(line, 25, FormatReal(var.objective));
    out << line << "\n";
    for (auto [r, coef] : by_column[v]) {
      line.clear();
      Put(line, 5, var.name);
      Put(line, 15, m.constraints()[r].name);
      Put(line, 25, FormatReal(coef));
      out << line << "\n";
    }
  }
  line.clear();
  Put(line, 5, "MARKER");
  Put(line, 15, "'MARKER'");
  Put(line, 40, "'INTEND'");
  out << line << "\n";

  out << "RHS\n";
  for (const Constraint& c : m.constraints()) {
    if (c.rhs == 0.0) continue;
    line.clear();
    Put(line, 5, "RHS");
    Put(line, 15, c.name);
    Put(line, 25, FormatReal(c.rhs));
    out << line << "\n";
  }
  out << "BOUNDS\n";
  for (const Variable& var : m.variables()) {
    line.clear();
    Put(line, 2, "BV");
    Put(line, 5, "BND");
    Put(line, 15, var.name);
    out << line << "\n";
  }
  out << "ENDATA\n";
}

std::string WriteMps(const MilpModel& m) {
  std::ostringstream out;
  WriteMps(m, out);
  return out.str();
}

namespace {

double ParseNumber(const std::string& token, int line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size()) {
    throw ParseError(line_no, "expected a number, got '" + token + "'");
  }
  return v;
}

// Recovers role and ids from the builder's naming scheme.
void InferRole(const std::string& name, bool merged, VarRole* role, int* site,
               int* client) {
  *role = VarRole::kAssignment;
  *site = 0;
  *client = 0;
  int a = 0, b = 0;
  char tail = 0;
  if (std::sscanf(name.c_str(), "x_%d%c", &a, &tail) == 1) {
    *role = VarRole::kSite;
    *site = a;
  } else if (std::sscanf(name.c_str(), "y_%d_%d%c", &a, &b, &tail) == 2) {
    *role = merged ? VarRole::kMerged : VarRole::kAssignment;
    *client = a;
    *site = b;
  }
}

}  // namespace

MilpModel ParseMps(std::istream& in) {
  enum class Section { kNone, kName, kRows, kColumns, kRhs, kBounds, kEnd };
  Section section = Section::kNone;
  ModelMetadata meta;
  std::vector<std::pair<std::string, Sense>> rows;
  std::map<std::string, int> row_index;
  std::string objective_row;
  struct Column {
    std::string name;
    double objective = 0.0;
    std::vector<std::pair<int, double>> entries;
    bool binary = false;
  };
  std::vector<Column> columns;
  std::map<std::string, int> column_index;
  std::vector<double> rhs;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    std::istringstream ss(raw);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (raw[0] == '*') {
      if (tok.size() > 1 && tok[1] == "sopm-meta") {
        for (std::size_t i = 2; i < tok.size(); ++i) {
          const auto eq = tok[i].find('=');
          if (eq == std::string::npos) continue;
          const std::string key = tok[i].substr(0, eq);
          std::string value = tok[i].substr(eq + 1);
          if (value == "-") value.clear();
          if (key == "base") meta.base = value;
          if (key == "distance") meta.distance = value;
          if (key == "fingerprint") meta.fingerprint = value;
          if (key == "r") meta.r = std::stoi(value);
          if (key == "p") meta.p = std::stoi(value);
        }
      }
      continue;
    }
    if (raw[0] != ' ' && raw[0] != '\t') {
      const std::string& head = tok[0];
      if (head == "NAME") {
        section = Section::kName;
      } else if (head == "ROWS") {
        section = Section::kRows;
      } else if (head == "COLUMNS") {
        section = Section::kColumns;
      } else if (head == "RHS") {
        section = Section::kRhs;
      } else if (head == "BOUNDS") {
        section = Section::kBounds;
      } else if (head == "ENDATA") {
        section = Section::kEnd;
      } else {
        throw ParseError(line_no, "unknown MPS section '" + head + "'");
      }
      continue;
    }
    switch (section) {
      case Section::kRows: {
        if (tok.size() != 2) throw ParseError(line_no, "malformed ROWS entry");
        if (tok[0] == "N") {
          if (!objective_row.empty()) {
            throw ParseError(line_no, "more than one objective row");
          }
          objective_row = tok[1];
          break;
        }
        Sense s;
        if (tok[0] == "L") {
          s = Sense::kLe;
        } else if (tok[0] == "G") {
          s = Sense::kGe;
        } else if (tok[0] == "E") {
          s = Sense::kEq;
        } else {
          throw ParseError(line_no, "unknown row type '" + tok[0] + "'");
        }
        if (!row_index.emplace(tok[1], static_cast<int>(rows.size())).second) {
          throw ParseError(line_no, "duplicate row '" + tok[1] + "'");
        }
        rows.emplace_back(tok[1], s);
        rhs.push_back(0.0);
        break;
      }
      case Section::kColumns: {
        if (tok.size() >= 3 && tok[1] == "'MARKER'") break;
        if (tok.size() != 3 && tok.size() != 5) {
          throw ParseError(line_no, "malformed COLUMNS entry");
        }
        auto [it, inserted] =
            column_index.emplace(tok[0], static_cast<int>(columns.size()));
        if (inserted) {
          columns.push_back({tok[0], 0.0, {}, false});
        } else if (it->second != static_cast<int>(columns.size()) - 1) {
          throw ParseError(line_no, "column '" + tok[0] + "' is not contiguous");
        }
        Column& col = columns[it->second];
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          const double v = ParseNumber(tok[k + 1], line_no);
          if (tok[k] == objective_row) {
            col.objective = v;
            continue;
          }
          auto r = row_index.find(tok[k]);
          if (r == row_index.end()) {
            throw ParseError(line_no, "unknown row '" + tok[k] + "'");
          }
          col.entries.emplace_back(r->second, v);
        }
        break;
      }
      case Section::kRhs: {
        if (tok.size() != 3 && tok.size() != 5) {
          throw ParseError(line_no, "malformed RHS entry");
        }
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          auto r = row_index.find(tok[k]);
          if (r == row_index.end()) {
            throw ParseError(line_no, "unknown row '" + tok[k] + "'");
          }
          rhs[r->second] = ParseNumber(tok[k + 1], line_no);
        }
        break;
      }
      case Section::kBounds: {
        if (tok.size() != 3 || tok[0] != "BV") {
          throw ParseError(line_no, "only BV bounds are supported");
        }
        auto c = column_index.find(tok[2]);
        if (c == column_index.end()) {
          throw ParseError(line_no, "unknown column '" + tok[2] + "'");
        }
        columns[c->second].binary = true;
        break;
      }
      default:
        throw ParseError(line_no, "data outside of a section");
    }
  }
  if (section != Section::kEnd) throw ParseError(0, "missing ENDATA");

  MilpModel m;
  m.metadata() = meta;
  const bool merged = meta.base == "cobra";
  std::vector<std::vector<Term>> row_terms(rows.size());
  for (const Column& col : columns) {
    if (!col.binary) {
      throw ParseError(0, "column '" + col.name + "' is not declared binary");
    }
    VarRole role;
    int site, client;
    InferRole(col.name, merged, &role, &site, &client);
    const int v = m.AddVariable(col.name, role, site, client, col.objective);
    for (auto [r, coef] : col.entries) row_terms[r].push_back({v, coef});
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    m.AddConstraint(rows[r].first, std::move(row_terms[r]), rows[r].second,
                    rhs[r]);
  }
  return m;
}

MilpModel ParseMpsText(const std::string& text) {
  std::istringstream in(text);
  return ParseMps(in);
}

namespace {

class LpLineWriter {
 public:
  explicit LpLineWriter(std::ostream& out) : out_(out) {}

  void Start(const std::string& label) {
    line_ = " " + label + ":";
    first_ = true;
  }
  void Add(double coef, const std::string& var) {
    std::string term;
    if (coef < 0.0) {
      term = "- ";
      coef = -coef;
    } else if (!first_) {
      term = "+ ";
    }
    if (coef != 1.0) term += FormatReal(coef) + " ";
    term += var;
    first_ = false;
    if (line_.size() + term.size() + 1 > 78) {
      out_ << line_ << "\n";
      line_ = "   ";
    }
    line_ += " " + term;
  }
  void Finish(const std::string& suffix) {
    out_ << line_ << suffix << "\n";
  }

 private:
  std::ostream& out_;
  std::string line_;
  bool first_ = true;
};

}  // namespace

void WriteLp(const MilpModel& m, std::ostream& out) {
  const ModelMetadata& meta = m.metadata();
  out << "\\ sopm base=" << (meta.base.empty() ? "-" : meta.base)
      << " distance=" << (meta.distance.empty() ? "-" : meta.distance)
      << " r=" << meta.r << " p=" << meta.p << "\n";
  out << "Minimize\n";
  LpLineWriter w(out);
  w.Start("obj");
  bool any = false;
  for (const Variable& v : m.variables()) {
    if (v.objective == 0.0) continue;
    w.Add(v.objective, v.name);
    any = true;
  }
  if (!any && m.num_variables() > 0) w.Add(0.0, m.variables()[0].name);
  w.Finish("");
  out << "Subject To\n";
  for (const Constraint& c : m.constraints()) {
    w.Start(c.name);
    for (const Term& t : c.terms) w.Add(t.coef, m.variables()[t.var].name);
    const char* op = c.sense == Sense::kLe   ? " <= "
                     : c.sense == Sense::kGe ? " >= "
                                             : " = ";
    w.Finish(op + FormatReal(c.rhs));
  }
  out << "Binaries\n";
  for (const Variable& v : m.variables()) out << " " << v.name << "\n";
  out << "End\n";
}

std::string WriteLp(const MilpModel& m) {
  std::ostringstream out;
  WriteLp(m, out);
  return out.str();
}

}  // namespace sopm
