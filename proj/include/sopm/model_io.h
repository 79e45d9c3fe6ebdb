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

#ifndef SOPM_MODEL_IO_H_
#define SOPM_MODEL_IO_H_

#include <iosfwd>
#include <string>

#include "sopm/milp.h"

namespace sopm {

// Fixed-format MPS with INTORG/INTEND markers and BV bounds. Fields start in
// the classic columns and are padded with at least one blank when a name is
// longer than eight characters. Model metadata travels in '*' comment lines.
void WriteMps(const MilpModel& m, std::ostream& out);
std::string WriteMps(const MilpModel& m);

// Reads what WriteMps produces (whitespace-separated fields). Every column
// must be binary. Throws ParseError.
MilpModel ParseMps(std::istream& in);
MilpModel ParseMpsText(const std::string& text);

// CPLEX LP text format; all variables listed under Binaries.
void WriteLp(const MilpModel& m, std::ostream& out);
std::string WriteLp(const MilpModel& m);

}  // namespace sopm

#endif  // SOPM_MODEL_IO_H_
