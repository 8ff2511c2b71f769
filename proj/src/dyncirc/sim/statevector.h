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

#ifndef _DYNCIRC_SIM_STATEVECTOR_H
#define _DYNCIRC_SIM_STATEVECTOR_H

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "dyncirc/circuit/circuit.h"

namespace dyncirc {

struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Largest register the dense simulator accepts.
constexpr size_t MAX_DENSE_QUBITS = 24;

/// Amplitudes below this norm mark a branch as impossible.
constexpr double ZERO_BRANCH_NORM = 1e-12;

struct BranchResult {
    std::vector<uint8_t> outcome_bits;  // one entry per classical bit of the circuit
    std::vector<uint8_t> reset_bits;    // outcomes of resets applied to non-classical qubits
    double probability = 0;
    bool zero_probability = false;
    /// Normalized state of the system qubits (system qubit k at bit k). Empty for zero branches.
    Eigen::VectorXcd system_state;
};

/// Forks at every measurement; `input_state` covers the system qubits, ancillas start in |0>.
std::vector<BranchResult> enumerate_branches(const Circuit &circuit, const Eigen::VectorXcd &input_state);

struct KrausBranch {
    std::vector<uint8_t> outcome_bits;
    std::vector<uint8_t> reset_bits;
    /// 2^n_sys rows by 2^n_in columns, where n_in excludes fixed-zero inputs.
    Eigen::MatrixXcd op;
    double weight = 0;  // Tr(K^dagger K) / 2^n_in
    bool zero_probability = false;
};

struct ChannelOnSystem {
    size_t num_system = 0;
    std::vector<size_t> fixed_zero_inputs;
    std::vector<KrausBranch> kraus_branches;
};

/// Streams the per-branch Kraus operators of the circuit restricted to system qubits.
///
/// The operators come from the Choi vector of the circuit on system (x) reference.
/// System inputs listed in `fixed_zero_inputs` get no reference partner and start
/// in |0>; columns of the operators then range over the remaining inputs only.
void for_each_channel_branch(
    const Circuit &circuit,
    const std::vector<size_t> &fixed_zero_inputs,
    const std::function<void(const KrausBranch &)> &callback);

ChannelOnSystem extract_channel(const Circuit &circuit, const std::vector<size_t> &fixed_zero_inputs = {});

/// Choi matrix of the operation conditioned on each outcome record, summed over hidden
/// reset outcomes: J_b = sum vec(K) vec(K)^dagger / d_in. Two circuits implement the same
/// instrument iff these agree for every record.
std::map<std::vector<uint8_t>, Eigen::MatrixXcd> outcome_choi_matrices(
    const Circuit &circuit, const std::vector<size_t> &fixed_zero_inputs = {});

/// Column index to full system basis index, for operators restricted by fixed inputs.
size_t embed_input_index(size_t column, size_t num_system, const std::vector<size_t> &fixed_zero_inputs);

/// 1 - |Tr(A^dagger B)| / d with d the column count.
double operator_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

/// Same as operator_distance after scaling both operands to unit Frobenius norm times sqrt(d).
double normalized_operator_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

/// Unitary of a measurement-free circuit over all of its qubits.
Eigen::MatrixXcd circuit_unitary(const Circuit &circuit);

}  // namespace dyncirc

#endif
