// Copyright 2026 The qzsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qzsim/gates.hpp"

namespace qzsim {

class ParseError : public Error {
  public:
    ParseError(size_t line, size_t column, const std::string &message)
        : Error("line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": " + message),
          line(line), column(column) {}

    size_t line;
    size_t column;
};

struct ParsedProgram {
    Circuit circuit;
    /// `creg`/`measure`/`barrier` statements are accepted but ignored; each
    /// leaves a note here.
    std::vector<std::string> warnings;
};

/// Parses the OpenQASM 2.0 subset: one qreg, supported standard gates,
/// pi-expression or literal angles.
ParsedProgram parse_qasm(std::string_view text);

/// Emits the same subset; parse(pretty_print(c)) reproduces the gate list.
std::string pretty_print(const Circuit &circuit,
                         std::string_view register_name = "q");

} // namespace qzsim
