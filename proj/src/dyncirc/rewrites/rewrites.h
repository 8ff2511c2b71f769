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

#ifndef _DYNCIRC_REWRITES_REWRITES_H
#define _DYNCIRC_REWRITES_REWRITES_H

#include <string>
#include <utility>
#include <vector>

#include "dyncirc/circuit/circuit.h"

namespace dyncirc {

/// XOR of classical bits plus a constant.
struct Parity {
    std::vector<size_t> bits;  // sorted, unique
    bool constant = false;

    static Parity of(const ClassicalCondition &c);
    Parity &operator^=(const Parity &other);
    bool is_zero() const { return bits.empty() && !constant; }
    bool is_constant() const { return bits.empty(); }
    bool evaluate(const std::vector<uint8_t> &clbits) const;
    bool operator==(const Parity &other) const = default;
    std::string str() const;
};

/// Pending X^x Z^z per qubit, exponents given as parities. Phases are dropped.
struct PauliFrame {
    std::vector<Parity> x, z;

    PauliFrame() = default;
    explicit PauliFrame(size_t num_qubits) : x(num_qubits), z(num_qubits) {}

    size_t num_qubits() const { return x.size(); }
    bool is_identity() const;
    /// Composition; Pauli products commute up to phase so this is associative and commutative.
    PauliFrame &operator*=(const PauliFrame &other);
    /// Moves the frame from before the gate to after it. Throws CircuitError when the
    /// gate is an RZ with a non-Clifford angle and the X exponent is not a constant.
    /// For a constant X exponent of 1 the returned angle is the negated one.
    double conjugate_through(const Instruction &gate);
    bool operator==(const PauliFrame &other) const = default;
    std::string str() const;
};

/// Swaps the CX gates at position and position+1. When one's target is the other's
/// control an extra CX from the outer control to the outer target follows the pair.
Circuit commute_cx_pair(const Circuit &circuit, size_t position);

enum class SkippedState { Unknown, Zero, Plus };

/// Replaces CX(i, i+2) or CX(i+2, i) by nearest-neighbour CX gates across the middle
/// qubit: four in general, three when the middle qubit is declared to hold |0> or |+>.
/// The declaration is checked against the circuit prefix (fresh or reset, plus one H for |+>).
Circuit expand_skip_cx(const Circuit &circuit, size_t position, SkippedState skipped = SkippedState::Unknown);

/// X-basis measurements become H, Z-measurement, H.
Circuit normalize_measurement_basis(const Circuit &circuit);

/// Conditioned X/Z gates become quantum-controlled gates from record qubits and all
/// measurements move to the end. Each outcome lives on a fresh record qubit: copied
/// there by a CX, or moved there (two CX) when the measured qubit is reset right after.
/// Other resets move the content out the same way and reset the fresh qubit at the end.
Circuit defer_measurement(const Circuit &circuit);

/// Inverse direction: a terminal Z measurement whose qubit is used only as a control
/// since its last other use moves back to that point and the controlled X (or H-CX-H
/// controlled Z) gates become conditioned gates. Qubits left without instructions are dropped.
Circuit undefer_measurement(const Circuit &circuit);

struct PropagatedCircuit {
    Circuit circuit;
    PauliFrame frame;
};

/// Pushes every conditioned X/Z to the end of the circuit. Measurements that a pending
/// Pauli would flip get their later uses rewritten, so conditions stay exact per branch.
PropagatedCircuit propagate_corrections(const Circuit &circuit);

}  // namespace dyncirc

#endif
