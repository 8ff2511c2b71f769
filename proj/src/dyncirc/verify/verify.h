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

#ifndef _DYNCIRC_VERIFY_VERIFY_H
#define _DYNCIRC_VERIFY_VERIFY_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyncirc/builders/reference.h"
#include "dyncirc/circuit/circuit.h"
#include "json.hpp"

namespace dyncirc {

/// No oracle can decide the instance (non-Clifford and too large for dense simulation).
struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class VerifyMethod { Auto, Branches, Stabilizer };

struct VerifyBudget {
    VerifyMethod method = VerifyMethod::Auto;
    size_t trials = 20;
    uint64_t seed = 1;
    double tolerance = 1e-9;
    /// Auto picks branches only while 2^(measurements + 2 n_sys) stays below this.
    double max_branch_work = 4.0e9;
    /// Lists every branch in the report (can be long).
    bool list_branches = true;
};

struct BranchReport {
    std::vector<uint8_t> bits;
    double probability = 0;
    double distance = 0;
    bool zero = false;
};

struct VerifyReport {
    bool pass = false;
    VerifyMethod method = VerifyMethod::Branches;
    double max_distance = 0;
    double probability_sum = 0;
    size_t branch_count = 0;
    size_t zero_branches = 0;
    std::vector<BranchReport> branches;
    size_t trials = 0;
    std::vector<std::pair<uint64_t, std::vector<uint8_t>>> failures;
    std::string error;  // set when the oracle itself rejected the circuit, e.g. a dirty ancilla
};

/// Checks that every branch of `candidate` implements the target on its system qubits.
VerifyReport check_equivalence(const Circuit &candidate, const GateSpec &spec, const VerifyBudget &budget = {});

/// Same against a measurement-free target circuit over the system qubits.
VerifyReport check_equivalence(
    const Circuit &candidate,
    const Circuit &target,
    const VerifyBudget &budget = {},
    const std::vector<size_t> &fixed_zero_inputs = {});

const char *method_name(VerifyMethod m);
nlohmann::json to_json(const VerifyReport &report);
std::string bits_str(const std::vector<uint8_t> &bits);

}  // namespace dyncirc

#endif
