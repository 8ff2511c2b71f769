// Copyright 2026 The dyncirc Authors
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

#ifndef _DYNCIRC_CIRCUIT_QASM_H
#define _DYNCIRC_CIRCUIT_QASM_H

#include <stdexcept>
#include <string>
#include <string_view>

#include "dyncirc/circuit/circuit.h"

namespace dyncirc {

struct ParseError : std::invalid_argument {
    size_t line;
    size_t column;
    ParseError(size_t line, size_t column, const std::string &msg);
};

/// Writes the OpenQASM 3 subset understood by parse_qasm.
///
/// Qubit roles, connectivity and X-basis measurements are carried in
/// `pragma dyncirc ...` lines so that parsing the output reproduces the
/// instruction list exactly.
std::string to_qasm(const Circuit &circuit);

/// Parses the OpenQASM 3 subset. Anything else is rejected with a ParseError
/// that carries the 1-based line and column of the offending token.
///
/// Files without a connectivity pragma get all-to-all connectivity, files
/// without a roles pragma treat every qubit as a system qubit.
Circuit parse_qasm(std::string_view text);

}  // namespace dyncirc

#endif
