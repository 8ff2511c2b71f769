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

#ifndef _DYNCIRC_RESOURCES_RESOURCES_H
#define _DYNCIRC_RESOURCES_RESOURCES_H

#include <optional>
#include <string>
#include <vector>

#include "dyncirc/circuit/circuit.h"
#include "json.hpp"

namespace dyncirc {

enum class Topology { Star, Line, Ladder, AllToAll, Graph };

std::string topology_name(Topology t);

struct ResourceReport {
    std::string protocol;        // e.g. "fanout"
    std::string implementation;  // e.g. "dynamic-v2"
    Topology connectivity = Topology::Line;
    size_t qubits = 0;
    size_t rounds = 0;
    size_t measurements = 0;
    size_t cnot_depth = 0;
    size_t cnot_count = 0;
    /// False for closed forms that are not integral at this n; the counts are then meaningless.
    bool defined = true;
    std::string note;

    bool same_counts(const ResourceReport &other) const;
};

/// (num * n + offset) / den + parity * (-1)^n. Undefined where the division is inexact.
struct Affine {
    long num = 0;
    long offset = 0;
    long den = 1;
    long parity = 0;

    static Affine constant(long c) {
        return {0, c, 1, 0};
    }
    std::optional<long> at(size_t n) const;
    std::string str() const;
};

/// Closed-form resource counts of one implementation.
struct ProtocolFormula {
    std::string protocol;
    std::string implementation;
    Topology connectivity = Topology::Line;
    Affine qubits, rounds, measurements, cnot_depth, cnot_count;
    /// Literature rows have no circuit in this library.
    bool built = false;

    ResourceReport evaluate(size_t n) const;
};

/// Counts straight from the instruction list. Connectivity is inferred from the
/// circuit's coupling constraint.
ResourceReport measure_resources(const Circuit &circuit, std::string protocol = "", std::string implementation = "");

/// The comparison table rows in display order.
const std::vector<ProtocolFormula> &table_one_formulas();

/// Builds the constructed rows at size n and evaluates the rest.
/// Built rows whose measured depth falls short of the closed form get a note.
std::vector<ResourceReport> table_one(size_t n);

/// The circuit behind a built row.
Circuit build_table_row(const ProtocolFormula &row, size_t n);

enum class TableFormat { Text, Csv, Json };

std::string format_table(const std::vector<ResourceReport> &rows, TableFormat format);
nlohmann::json to_json(const ResourceReport &r);

}  // namespace dyncirc

#endif
