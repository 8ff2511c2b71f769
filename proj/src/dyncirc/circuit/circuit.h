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

#ifndef _DYNCIRC_CIRCUIT_CIRCUIT_H
#define _DYNCIRC_CIRCUIT_CIRCUIT_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dyncirc {

/// Raised when an operation is handed a circuit or instruction it cannot accept.
struct CircuitError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class GateKind : uint8_t { H, X, Z, S, Sdg, CX, RZ, Measure, Reset, Barrier };

enum class Basis : uint8_t { Z, X };

enum class Role : uint8_t { System, Ancilla };

const char *gate_name(GateKind kind);

/// Holds iff the XOR of the referenced bits equals (1 XOR negate).
struct ClassicalCondition {
    std::vector<size_t> bits;  // sorted, unique, non-empty
    bool negate = false;

    ClassicalCondition() = default;
    ClassicalCondition(std::vector<size_t> bits, bool negate = false);

    bool holds(const std::vector<uint8_t> &clbits) const;
    /// Parity composition: symmetric difference of bit sets, XOR of negations.
    /// The bit set may come back empty, in which case the result is a constant.
    static std::pair<std::vector<size_t>, bool> xor_parts(const ClassicalCondition &a, const ClassicalCondition &b);

    bool operator==(const ClassicalCondition &other) const = default;
};

struct Instruction {
    GateKind kind = GateKind::H;
    std::vector<size_t> qubits;
    double angle = 0;          // RZ only
    Basis basis = Basis::Z;    // Measure only
    size_t clbit = 0;          // Measure only
    std::optional<ClassicalCondition> condition;

    static Instruction gate(GateKind kind, size_t q);
    static Instruction cx(size_t control, size_t target);
    static Instruction rz(size_t q, double angle);
    static Instruction measure(size_t q, size_t clbit, Basis basis = Basis::Z);
    static Instruction reset(size_t q);
    static Instruction barrier(std::vector<size_t> qubits);
    Instruction conditioned(ClassicalCondition c) const;

    bool is_unitary_gate() const;
    bool is_clifford() const;
    bool operator==(const Instruction &other) const = default;
    std::string str() const;
};

/// Connectivity constraint checked on every appended CX.
struct Connectivity {
    enum class Kind : uint8_t { Line, Graph } kind = Kind::Line;
    std::set<std::pair<size_t, size_t>> edges;  // Graph only, stored with first < second

    static Connectivity line();
    static Connectivity graph(std::set<std::pair<size_t, size_t>> edges);
    static Connectivity complete(size_t num_qubits);
    bool allows(size_t a, size_t b) const;
    bool operator==(const Connectivity &other) const = default;
};

class Circuit {
   public:
    Circuit() = default;
    Circuit(size_t num_qubits, size_t num_clbits, Connectivity connectivity = Connectivity::line());
    Circuit(std::vector<Role> roles, size_t num_clbits, Connectivity connectivity = Connectivity::line());

    /// Alternating system/ancilla line with n_system system qubits: q_k at 2k, a_k at 2k+1.
    static Circuit alternating_line(size_t n_system, size_t num_clbits);

    size_t num_qubits() const { return roles_.size(); }
    size_t num_clbits() const { return clbit_written_.size(); }
    const std::vector<Role> &roles() const { return roles_; }
    const std::vector<Instruction> &instructions() const { return instructions_; }
    const Connectivity &connectivity() const { return connectivity_; }

    std::vector<size_t> system_qubits() const;
    std::vector<size_t> ancilla_qubits() const;
    size_t num_system() const;
    size_t num_ancilla() const { return num_qubits() - num_system(); }

    /// Appends after validating indices, single-assignment, condition ordering and connectivity.
    Circuit &append(const Instruction &inst);
    Circuit &h(size_t q) { return append(Instruction::gate(GateKind::H, q)); }
    Circuit &x(size_t q) { return append(Instruction::gate(GateKind::X, q)); }
    Circuit &z(size_t q) { return append(Instruction::gate(GateKind::Z, q)); }
    Circuit &s(size_t q) { return append(Instruction::gate(GateKind::S, q)); }
    Circuit &sdg(size_t q) { return append(Instruction::gate(GateKind::Sdg, q)); }
    Circuit &cx(size_t c, size_t t) { return append(Instruction::cx(c, t)); }
    Circuit &rz(size_t q, double angle) { return append(Instruction::rz(q, angle)); }
    Circuit &measure(size_t q, size_t clbit, Basis basis = Basis::Z) {
        return append(Instruction::measure(q, clbit, basis));
    }
    Circuit &reset(size_t q) { return append(Instruction::reset(q)); }

    /// Grows the classical register; returns the index of the first new bit.
    size_t add_clbits(size_t count);
    /// Copy with the same registers and no instructions.
    Circuit empty_copy() const;
    void set_connectivity(Connectivity connectivity);

    bool is_clifford() const;
    bool has_measurements() const;
    bool clbit_written(size_t b) const { return clbit_written_[b]; }

    bool operator==(const Circuit &other) const;
    std::string str() const;

   private:
    std::vector<Role> roles_;
    std::vector<uint8_t> clbit_written_;
    std::vector<Instruction> instructions_;
    Connectivity connectivity_;
};

/// Number of maximal measurement groups; a new group starts when a conditioned
/// gate consuming the current group sits between two measurements.
size_t measurement_rounds(const Circuit &circuit);

/// Longest chain of CX instructions ordered by shared qubits.
size_t cnot_depth(const Circuit &circuit);

size_t cnot_count(const Circuit &circuit);
size_t measurement_count(const Circuit &circuit);

/// ASAP layer index (1-based) of each CX, 0 for other instructions.
std::vector<size_t> cnot_layers(const Circuit &circuit);

/// True when theta is k*pi/2 within tolerance; writes k mod 4.
bool clifford_angle(double theta, int *quarter_turns = nullptr);

}  // namespace dyncirc

#endif
