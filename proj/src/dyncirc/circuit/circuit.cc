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

#include "dyncirc/circuit/circuit.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dyncirc {

const char *gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::X:
            return "X";
        case GateKind::Z:
            return "Z";
        case GateKind::S:
            return "S";
        case GateKind::Sdg:
            return "SDG";
        case GateKind::CX:
            return "CX";
        case GateKind::RZ:
            return "RZ";
        case GateKind::Measure:
            return "M";
        case GateKind::Reset:
            return "R";
        case GateKind::Barrier:
            return "BARRIER";
    }
    return "?";
}

ClassicalCondition::ClassicalCondition(std::vector<size_t> b, bool neg) : bits(std::move(b)), negate(neg) {
    std::sort(bits.begin(), bits.end());
    // Repeated bits cancel in a parity.
    std::vector<size_t> reduced;
    for (size_t k = 0; k < bits.size();) {
        size_t j = k;
        while (j < bits.size() && bits[j] == bits[k]) {
            j++;
        }
        if ((j - k) % 2 == 1) {
            reduced.push_back(bits[k]);
        }
        k = j;
    }
    bits = std::move(reduced);
    if (bits.empty()) {
        throw CircuitError("classical condition must reference at least one bit");
    }
}

bool ClassicalCondition::holds(const std::vector<uint8_t> &clbits) const {
    bool parity = false;
    for (auto b : bits) {
        parity ^= clbits[b] != 0;
    }
    return parity != negate;
}

std::pair<std::vector<size_t>, bool> ClassicalCondition::xor_parts(
    const ClassicalCondition &a, const ClassicalCondition &b) {
    std::vector<size_t> out;
    std::set_symmetric_difference(a.bits.begin(), a.bits.end(), b.bits.begin(), b.bits.end(), std::back_inserter(out));
    // Each condition contributes parity ^ negate, so the sum of two carries both negations.
    return {out, a.negate != b.negate};
}

Instruction Instruction::gate(GateKind kind, size_t q) {
    Instruction r;
    r.kind = kind;
    r.qubits = {q};
    return r;
}

Instruction Instruction::cx(size_t control, size_t target) {
    Instruction r;
    r.kind = GateKind::CX;
    r.qubits = {control, target};
    return r;
}

Instruction Instruction::rz(size_t q, double angle) {
    Instruction r = gate(GateKind::RZ, q);
    r.angle = angle;
    return r;
}

Instruction Instruction::measure(size_t q, size_t clbit, Basis basis) {
    Instruction r = gate(GateKind::Measure, q);
    r.clbit = clbit;
    r.basis = basis;
    return r;
}

Instruction Instruction::reset(size_t q) {
    return gate(GateKind::Reset, q);
}

Instruction Instruction::barrier(std::vector<size_t> qubits) {
    Instruction r;
    r.kind = GateKind::Barrier;
    r.qubits = std::move(qubits);
    return r;
}

Instruction Instruction::conditioned(ClassicalCondition c) const {
    Instruction r = *this;
    r.condition = std::move(c);
    return r;
}

bool Instruction::is_unitary_gate() const {
    return kind != GateKind::Measure && kind != GateKind::Reset && kind != GateKind::Barrier;
}

bool Instruction::is_clifford() const {
    return kind != GateKind::RZ || clifford_angle(angle);
}

std::string Instruction::str() const {
    std::stringstream ss;
    if (condition.has_value()) {
        ss << "if(";
        for (size_t k = 0; k < condition->bits.size(); k++) {
            ss << (k ? "^" : "") << "c" << condition->bits[k];
        }
        ss << (condition->negate ? "==0" : "==1") << ") ";
    }
    ss << gate_name(kind);
    if (kind == GateKind::RZ) {
        ss << "(" << angle << ")";
    }
    if (kind == GateKind::Measure && basis == Basis::X) {
        ss << "X";
    }
    for (auto q : qubits) {
        ss << " " << q;
    }
    if (kind == GateKind::Measure) {
        ss << " -> c" << clbit;
    }
    return ss.str();
}

Connectivity Connectivity::line() {
    return {};
}

Connectivity Connectivity::graph(std::set<std::pair<size_t, size_t>> edges) {
    Connectivity c;
    c.kind = Kind::Graph;
    for (auto [a, b] : edges) {
        c.edges.insert({std::min(a, b), std::max(a, b)});
    }
    return c;
}

Connectivity Connectivity::complete(size_t num_qubits) {
    std::set<std::pair<size_t, size_t>> edges;
    for (size_t a = 0; a < num_qubits; a++) {
        for (size_t b = a + 1; b < num_qubits; b++) {
            edges.insert({a, b});
        }
    }
    return graph(std::move(edges));
}

bool Connectivity::allows(size_t a, size_t b) const {
    if (kind == Kind::Line) {
        return a + 1 == b || b + 1 == a;
    }
    return edges.contains({std::min(a, b), std::max(a, b)});
}

Circuit::Circuit(size_t num_qubits, size_t num_clbits, Connectivity connectivity)
    : roles_(num_qubits, Role::System), clbit_written_(num_clbits, 0), connectivity_(std::move(connectivity)) {
}

Circuit::Circuit(std::vector<Role> roles, size_t num_clbits, Connectivity connectivity)
    : roles_(std::move(roles)), clbit_written_(num_clbits, 0), connectivity_(std::move(connectivity)) {
}

Circuit Circuit::alternating_line(size_t n_system, size_t num_clbits) {
    if (n_system == 0) {
        throw CircuitError("alternating line needs at least one system qubit");
    }
    std::vector<Role> roles(2 * n_system - 1);
    for (size_t p = 0; p < roles.size(); p++) {
        roles[p] = p % 2 == 0 ? Role::System : Role::Ancilla;
    }
    return Circuit(std::move(roles), num_clbits);
}

std::vector<size_t> Circuit::system_qubits() const {
    std::vector<size_t> r;
    for (size_t q = 0; q < roles_.size(); q++) {
        if (roles_[q] == Role::System) {
            r.push_back(q);
        }
    }
    return r;
}

std::vector<size_t> Circuit::ancilla_qubits() const {
    std::vector<size_t> r;
    for (size_t q = 0; q < roles_.size(); q++) {
        if (roles_[q] == Role::Ancilla) {
            r.push_back(q);
        }
    }
    return r;
}

size_t Circuit::num_system() const {
    return (size_t)std::count(roles_.begin(), roles_.end(), Role::System);
}

Circuit &Circuit::append(const Instruction &inst) {
    auto fail = [&](const std::string &msg) {
        throw CircuitError("cannot append '" + inst.str() + "': " + msg);
    };
    for (auto q : inst.qubits) {
        if (q >= num_qubits()) {
            fail("qubit index out of range");
        }
    }
    if (inst.kind == GateKind::CX) {
        if (inst.qubits.size() != 2 || inst.qubits[0] == inst.qubits[1]) {
            fail("CX needs two distinct qubits");
        }
        if (!connectivity_.allows(inst.qubits[0], inst.qubits[1])) {
            fail("qubits are not connected");
        }
    } else if (inst.kind == GateKind::Barrier) {
        if (inst.qubits.empty()) {
            fail("barrier needs at least one qubit");
        }
    } else if (inst.qubits.size() != 1) {
        fail("gate acts on exactly one qubit");
    }
    if (inst.condition.has_value()) {
        if (inst.kind == GateKind::Measure || inst.kind == GateKind::Reset || inst.kind == GateKind::Barrier) {
            fail("only gates may be conditioned");
        }
        if (inst.condition->bits.empty()) {
            fail("empty condition");
        }
        for (auto b : inst.condition->bits) {
            if (b >= num_clbits()) {
                fail("classical bit index out of range");
            }
            if (!clbit_written_[b]) {
                fail("condition references a bit that has not been written yet");
            }
        }
    }
    if (inst.kind == GateKind::Measure) {
        if (inst.clbit >= num_clbits()) {
            fail("classical bit index out of range");
        }
        if (clbit_written_[inst.clbit]) {
            fail("classical bit already written");
        }
        clbit_written_[inst.clbit] = 1;
    }
    instructions_.push_back(inst);
    return *this;
}

size_t Circuit::add_clbits(size_t count) {
    size_t first = clbit_written_.size();
    clbit_written_.resize(first + count, 0);
    return first;
}

Circuit Circuit::empty_copy() const {
    return Circuit(roles_, num_clbits(), connectivity_);
}

void Circuit::set_connectivity(Connectivity connectivity) {
    for (const auto &inst : instructions_) {
        if (inst.kind == GateKind::CX && !connectivity.allows(inst.qubits[0], inst.qubits[1])) {
            throw CircuitError("existing instruction '" + inst.str() + "' violates the new connectivity");
        }
    }
    connectivity_ = std::move(connectivity);
}

bool Circuit::is_clifford() const {
    return std::all_of(instructions_.begin(), instructions_.end(), [](const Instruction &i) {
        return i.is_clifford();
    });
}

bool Circuit::has_measurements() const {
    return std::any_of(instructions_.begin(), instructions_.end(), [](const Instruction &i) {
        return i.kind == GateKind::Measure;
    });
}

bool Circuit::operator==(const Circuit &other) const {
    return roles_ == other.roles_ && clbit_written_.size() == other.clbit_written_.size() &&
           instructions_ == other.instructions_ && connectivity_ == other.connectivity_;
}

std::string Circuit::str() const {
    std::stringstream ss;
    for (const auto &inst : instructions_) {
        ss << inst.str() << "\n";
    }
    return ss.str();
}

size_t measurement_rounds(const Circuit &circuit) {
    size_t rounds = 0;
    std::vector<uint8_t> in_current(circuit.num_clbits(), 0);
    bool boundary = false;
    for (const auto &inst : circuit.instructions()) {
        if (inst.kind == GateKind::Measure) {
            if (rounds == 0 || boundary) {
                rounds++;
                std::fill(in_current.begin(), in_current.end(), 0);
                boundary = false;
            }
            in_current[inst.clbit] = 1;
        } else if (inst.condition.has_value()) {
            for (auto b : inst.condition->bits) {
                if (in_current[b]) {
                    boundary = true;
                }
            }
        }
    }
    return rounds;
}

std::vector<size_t> cnot_layers(const Circuit &circuit) {
    std::vector<size_t> level(circuit.num_qubits(), 0);
    std::vector<size_t> out;
    out.reserve(circuit.instructions().size());
    for (const auto &inst : circuit.instructions()) {
        if (inst.kind != GateKind::CX) {
            out.push_back(0);
            continue;
        }
        size_t a = inst.qubits[0];
        size_t b = inst.qubits[1];
        size_t l = std::max(level[a], level[b]) + 1;
        level[a] = level[b] = l;
        out.push_back(l);
    }
    return out;
}

size_t cnot_depth(const Circuit &circuit) {
    auto layers = cnot_layers(circuit);
    return layers.empty() ? 0 : *std::max_element(layers.begin(), layers.end());
}

size_t cnot_count(const Circuit &circuit) {
    return (size_t)std::count_if(circuit.instructions().begin(), circuit.instructions().end(), [](const auto &i) {
        return i.kind == GateKind::CX;
    });
}

size_t measurement_count(const Circuit &circuit) {
    return (size_t)std::count_if(circuit.instructions().begin(), circuit.instructions().end(), [](const auto &i) {
        return i.kind == GateKind::Measure;
    });
}

bool clifford_angle(double theta, int *quarter_turns) {
    double q = theta / (std::numbers::pi / 2);
    double r = std::round(q);
    if (std::abs(q - r) > 1e-9) {
        return false;
    }
    if (quarter_turns != nullptr) {
        long long k = (long long)r % 4;
        *quarter_turns = (int)((k + 4) % 4);
    }
    return true;
}

}  // namespace dyncirc
