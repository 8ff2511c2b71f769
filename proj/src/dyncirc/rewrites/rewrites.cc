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

#include "dyncirc/rewrites/rewrites.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace dyncirc {

namespace {

bool touches(const Instruction &inst, size_t q) {
    return std::find(inst.qubits.begin(), inst.qubits.end(), q) != inst.qubits.end();
}

// Connectivity that additionally allows the given pair.
Connectivity widened(const Connectivity &conn, size_t num_qubits, size_t a, size_t b) {
    if (conn.allows(a, b)) {
        return conn;
    }
    if (conn.kind == Connectivity::Kind::Line) {
        return Connectivity::complete(num_qubits);
    }
    auto edges = conn.edges;
    edges.insert({std::min(a, b), std::max(a, b)});
    return Connectivity::graph(edges);
}

Circuit rebuild(const Circuit &like, const Connectivity &conn, const std::vector<Instruction> &insts) {
    Circuit out(like.roles(), like.num_clbits(), conn);
    for (const auto &inst : insts) {
        out.append(inst);
    }
    return out;
}

Instruction conditioned_pauli(GateKind kind, size_t q, const Parity &p) {
    auto g = Instruction::gate(kind, q);
    if (p.bits.empty()) {
        return g;
    }
    return g.conditioned(ClassicalCondition(p.bits, p.constant));
}

}  // namespace

Parity Parity::of(const ClassicalCondition &c) {
    return Parity{c.bits, c.negate};
}

Parity &Parity::operator^=(const Parity &other) {
    std::vector<size_t> out;
    std::set_symmetric_difference(bits.begin(), bits.end(), other.bits.begin(), other.bits.end(), std::back_inserter(out));
    bits = std::move(out);
    constant ^= other.constant;
    return *this;
}

bool Parity::evaluate(const std::vector<uint8_t> &clbits) const {
    bool v = constant;
    for (auto b : bits) {
        v ^= clbits.at(b) != 0;
    }
    return v;
}

std::string Parity::str() const {
    std::stringstream ss;
    for (size_t k = 0; k < bits.size(); k++) {
        ss << (k ? "^" : "") << "c" << bits[k];
    }
    if (constant || bits.empty()) {
        ss << (bits.empty() ? "" : "^") << (constant ? 1 : 0);
    }
    return ss.str();
}

bool PauliFrame::is_identity() const {
    for (size_t q = 0; q < x.size(); q++) {
        if (!x[q].is_zero() || !z[q].is_zero()) {
            return false;
        }
    }
    return true;
}

PauliFrame &PauliFrame::operator*=(const PauliFrame &other) {
    if (other.num_qubits() != num_qubits()) {
        throw std::invalid_argument("frame sizes differ");
    }
    for (size_t q = 0; q < x.size(); q++) {
        x[q] ^= other.x[q];
        z[q] ^= other.z[q];
    }
    return *this;
}

double PauliFrame::conjugate_through(const Instruction &gate) {
    size_t q = gate.qubits.empty() ? 0 : gate.qubits[0];
    switch (gate.kind) {
        case GateKind::H:
            std::swap(x[q], z[q]);
            break;
        case GateKind::S:
        case GateKind::Sdg:
            z[q] ^= x[q];
            break;
        case GateKind::CX: {
            size_t c = gate.qubits[0], t = gate.qubits[1];
            x[t] ^= x[c];
            z[c] ^= z[t];
            break;
        }
        case GateKind::RZ: {
            int k = 0;
            if (clifford_angle(gate.angle, &k)) {
                if (k % 2 == 1) {
                    z[q] ^= x[q];
                }
                break;
            }
            if (x[q].is_zero()) {
                break;
            }
            if (x[q].is_constant()) {
                return -gate.angle;
            }
            throw CircuitError("cannot move a conditioned X through " + gate.str() + " (would need a conditioned angle)");
        }
        case GateKind::X:
        case GateKind::Z:
        case GateKind::Barrier:
            break;
        default:
            throw CircuitError("not a unitary gate: " + gate.str());
    }
    return gate.angle;
}

std::string PauliFrame::str() const {
    std::stringstream ss;
    for (size_t q = 0; q < x.size(); q++) {
        if (!x[q].is_zero()) {
            ss << "X" << q << "^(" << x[q].str() << ") ";
        }
        if (!z[q].is_zero()) {
            ss << "Z" << q << "^(" << z[q].str() << ") ";
        }
    }
    return ss.str();
}

Circuit commute_cx_pair(const Circuit &circuit, size_t position) {
    const auto &insts = circuit.instructions();
    if (position + 1 >= insts.size()) {
        throw CircuitError("commute_cx_pair: position out of range");
    }
    const Instruction &g1 = insts[position];
    const Instruction &g2 = insts[position + 1];
    if (g1.kind != GateKind::CX || g2.kind != GateKind::CX || g1.condition || g2.condition) {
        throw CircuitError("commute_cx_pair: expected two unconditioned CX gates");
    }
    size_t a = g1.qubits[0], b = g1.qubits[1], c = g2.qubits[0], d = g2.qubits[1];
    std::set<size_t> shared;
    for (auto p : {a, b}) {
        if (p == c || p == d) {
            shared.insert(p);
        }
    }
    if (shared.size() != 1) {
        throw CircuitError("commute_cx_pair: the gates must share exactly one qubit");
    }
    std::optional<Instruction> extra;
    if (b == c) {
        extra = Instruction::cx(a, d);
    } else if (a == d) {
        extra = Instruction::cx(c, b);
    }
    std::vector<Instruction> out(insts.begin(), insts.begin() + (long)position);
    out.push_back(g2);
    out.push_back(g1);
    Connectivity conn = circuit.connectivity();
    if (extra) {
        out.push_back(*extra);
        conn = widened(conn, circuit.num_qubits(), extra->qubits[0], extra->qubits[1]);
    }
    out.insert(out.end(), insts.begin() + (long)position + 2, insts.end());
    return rebuild(circuit, conn, out);
}

Circuit expand_skip_cx(const Circuit &circuit, size_t position, SkippedState skipped) {
    const auto &insts = circuit.instructions();
    if (position >= insts.size()) {
        throw CircuitError("expand_skip_cx: position out of range");
    }
    const Instruction &g = insts[position];
    if (g.kind != GateKind::CX || g.condition) {
        throw CircuitError("expand_skip_cx: expected an unconditioned CX");
    }
    size_t s = g.qubits[0], r = g.qubits[1];
    size_t lo = std::min(s, r), hi = std::max(s, r);
    if (hi - lo != 2) {
        throw CircuitError("expand_skip_cx: CX must skip exactly one qubit");
    }
    size_t m = lo + 1;

    if (skipped != SkippedState::Unknown) {
        // Only fresh or freshly reset qubits (plus one H for |+>) qualify.
        std::vector<const Instruction *> since_reset;
        for (size_t i = 0; i < position; i++) {
            if (!touches(insts[i], m)) {
                continue;
            }
            if (insts[i].kind == GateKind::Reset && !insts[i].condition) {
                since_reset.clear();
            } else if (insts[i].kind != GateKind::Barrier) {
                since_reset.push_back(&insts[i]);
            }
        }
        bool ok = skipped == SkippedState::Zero
                      ? since_reset.empty()
                      : since_reset.size() == 1 && since_reset[0]->kind == GateKind::H && !since_reset[0]->condition;
        if (!ok) {
            throw CircuitError("expand_skip_cx: declared state of the skipped qubit is not established by the circuit");
        }
    }

    std::vector<Instruction> block;
    switch (skipped) {
        case SkippedState::Unknown:
            block = {Instruction::cx(s, m), Instruction::cx(m, r), Instruction::cx(s, m), Instruction::cx(m, r)};
            break;
        case SkippedState::Zero:
            // The leading CX(m, r) of the other ordering has a |0> control.
            block = {Instruction::cx(s, m), Instruction::cx(m, r), Instruction::cx(s, m)};
            break;
        case SkippedState::Plus:
            // The leading CX(s, m) has a |+> target.
            block = {Instruction::cx(m, r), Instruction::cx(s, m), Instruction::cx(m, r)};
            break;
    }
    std::vector<Instruction> out(insts.begin(), insts.begin() + (long)position);
    out.insert(out.end(), block.begin(), block.end());
    out.insert(out.end(), insts.begin() + (long)position + 1, insts.end());
    Connectivity conn = widened(circuit.connectivity(), circuit.num_qubits(), lo, m);
    conn = widened(conn, circuit.num_qubits(), m, hi);
    return rebuild(circuit, conn, out);
}

Circuit normalize_measurement_basis(const Circuit &circuit) {
    Circuit out = circuit.empty_copy();
    for (const auto &inst : circuit.instructions()) {
        if (inst.kind == GateKind::Measure && inst.basis == Basis::X) {
            size_t q = inst.qubits[0];
            out.h(q);
            out.measure(q, inst.clbit, Basis::Z);
            out.h(q);
        } else {
            out.append(inst);
        }
    }
    return out;
}

Circuit defer_measurement(const Circuit &circuit) {
    const auto &orig = circuit.instructions();
    std::set<size_t> consumed;
    for (const auto &inst : orig) {
        if (inst.condition) {
            if (inst.kind != GateKind::X && inst.kind != GateKind::Z) {
                throw CircuitError("defer_measurement: only conditioned X and Z can be deferred, got " + inst.str());
            }
            consumed.insert(inst.condition->bits.begin(), inst.condition->bits.end());
        }
    }
    for (const auto &inst : orig) {
        if (inst.kind == GateKind::Measure && inst.basis == Basis::X && consumed.count(inst.clbit)) {
            throw CircuitError(
                "defer_measurement: c" + std::to_string(inst.clbit) + " comes from an X-basis measurement; normalize the basis first");
        }
    }
    Circuit norm = normalize_measurement_basis(circuit);
    const auto &insts = norm.instructions();

    std::vector<Role> roles = norm.roles();
    auto fresh = [&]() {
        roles.push_back(Role::Ancilla);
        return roles.size() - 1;
    };

    // A measurement directly followed (on its qubit) by an unconditioned reset hands the
    // qubit's content to its record and leaves the qubit in |0>, so the reset disappears.
    std::set<size_t> absorbed_resets;
    std::vector<uint8_t> moves_out(insts.size(), 0);
    for (size_t i = 0; i < insts.size(); i++) {
        if (insts[i].kind != GateKind::Measure) {
            continue;
        }
        size_t q = insts[i].qubits[0];
        for (size_t j = i + 1; j < insts.size(); j++) {
            if (touches(insts[j], q)) {
                if (insts[j].kind == GateKind::Reset && !insts[j].condition) {
                    moves_out[i] = 1;
                    absorbed_resets.insert(j);
                }
                break;
            }
        }
    }

    std::vector<Instruction> out;
    std::map<size_t, size_t> record;  // clbit -> qubit holding it
    std::vector<size_t> measured_order;
    std::vector<size_t> retired;
    // Two CX move a qubit's content into a fresh |0> qubit and leave |0> behind.
    auto move_out = [&](size_t q) {
        size_t f = fresh();
        out.push_back(Instruction::cx(q, f));
        out.push_back(Instruction::cx(f, q));
        return f;
    };
    for (size_t i = 0; i < insts.size(); i++) {
        const auto &inst = insts[i];
        if (absorbed_resets.count(i)) {
            continue;
        }
        if (inst.kind == GateKind::Measure) {
            size_t q = inst.qubits[0];
            if (moves_out[i]) {
                record[inst.clbit] = move_out(q);
            } else {
                size_t r = fresh();
                out.push_back(Instruction::cx(q, r));
                record[inst.clbit] = r;
            }
            measured_order.push_back(inst.clbit);
            continue;
        }
        if (inst.kind == GateKind::Reset) {
            retired.push_back(move_out(inst.qubits[0]));
            continue;
        }
        if (inst.condition) {
            size_t t = inst.qubits[0];
            for (auto b : inst.condition->bits) {
                size_t r = record.at(b);
                if (inst.kind == GateKind::Z) {
                    out.push_back(Instruction::gate(GateKind::H, t));
                    out.push_back(Instruction::cx(r, t));
                    out.push_back(Instruction::gate(GateKind::H, t));
                } else {
                    out.push_back(Instruction::cx(r, t));
                }
            }
            if (inst.condition->negate) {
                out.push_back(Instruction::gate(inst.kind, t));
            }
            continue;
        }
        out.push_back(inst);
    }
    for (auto b : measured_order) {
        out.push_back(Instruction::measure(record[b], b));
    }
    for (auto b : measured_order) {
        out.push_back(Instruction::reset(record[b]));
    }
    for (auto q : retired) {
        out.push_back(Instruction::reset(q));
    }

    Circuit result(roles, norm.num_clbits(), Connectivity::complete(roles.size()));
    for (const auto &inst : out) {
        result.append(inst);
    }
    return result;
}

Circuit undefer_measurement(const Circuit &circuit) {
    const auto &insts = circuit.instructions();
    size_t n = circuit.num_qubits();
    std::vector<std::vector<size_t>> timeline(n);
    for (size_t i = 0; i < insts.size(); i++) {
        for (auto q : insts[i].qubits) {
            timeline[q].push_back(i);
        }
    }

    std::vector<Instruction> replaced(insts.begin(), insts.end());
    std::vector<uint8_t> drop(insts.size(), 0);
    std::map<long, std::vector<Instruction>> insert_after;  // -1 means at the start

    for (size_t r = 0; r < n; r++) {
        const auto &tl = timeline[r];
        // Trailing resets, then the terminal measurement.
        long k = (long)tl.size() - 1;
        while (k >= 0 && insts[tl[k]].kind == GateKind::Reset && !insts[tl[k]].condition) {
            k--;
        }
        if (k < 0) {
            continue;
        }
        const Instruction &meas = insts[tl[k]];
        if (meas.kind != GateKind::Measure || meas.basis != Basis::Z || meas.condition) {
            continue;
        }
        bool later_touch = false;
        for (size_t j = tl[k] + 1; j < insts.size() && !later_touch; j++) {
            // Any later instruction on another qubit conditioned on this bit blocks the move.
            if (insts[j].condition) {
                const auto &bits = insts[j].condition->bits;
                later_touch = std::find(bits.begin(), bits.end(), meas.clbit) != bits.end();
            }
        }
        if (later_touch) {
            continue;
        }
        long c = k - 1;
        std::vector<size_t> controls;
        while (c >= 0) {
            const Instruction &g = insts[tl[c]];
            if (g.kind == GateKind::CX && !g.condition && g.qubits[0] == r) {
                controls.push_back(tl[c]);
                c--;
            } else {
                break;
            }
        }
        if (controls.empty() || c < 0) {
            // Nothing to undo, or a never-prepared record (always 0).
            continue;
        }
        for (auto ci : controls) {
            size_t t = insts[ci].qubits[1];
            const auto &tt = timeline[t];
            size_t pos = std::find(tt.begin(), tt.end(), ci) - tt.begin();
            bool cz = pos > 0 && pos + 1 < tt.size() && insts[tt[pos - 1]].kind == GateKind::H &&
                      insts[tt[pos + 1]].kind == GateKind::H && !insts[tt[pos - 1]].condition &&
                      !insts[tt[pos + 1]].condition && !drop[tt[pos - 1]] && !drop[tt[pos + 1]];
            ClassicalCondition cond({meas.clbit});
            if (cz) {
                drop[tt[pos - 1]] = 1;
                drop[tt[pos + 1]] = 1;
                replaced[ci] = Instruction::gate(GateKind::Z, t).conditioned(cond);
            } else {
                replaced[ci] = Instruction::gate(GateKind::X, t).conditioned(cond);
            }
        }
        drop[tl[k]] = 1;
        insert_after[(long)tl[c]].push_back(meas);
    }

    std::vector<Instruction> out;
    if (insert_after.count(-1)) {
        out = insert_after[-1];
    }
    for (size_t i = 0; i < insts.size(); i++) {
        if (!drop[i]) {
            out.push_back(replaced[i]);
        }
        auto it = insert_after.find((long)i);
        if (it != insert_after.end()) {
            out.insert(out.end(), it->second.begin(), it->second.end());
        }
    }

    // Drop qubits that no longer carry any instruction.
    std::vector<uint8_t> used(n, 0);
    for (const auto &inst : out) {
        for (auto q : inst.qubits) {
            used[q] = 1;
        }
    }
    std::vector<size_t> remap(n, SIZE_MAX);
    std::vector<Role> roles;
    for (size_t q = 0; q < n; q++) {
        if (used[q] || circuit.roles()[q] == Role::System) {
            remap[q] = roles.size();
            roles.push_back(circuit.roles()[q]);
        }
    }
    Connectivity conn;
    if (circuit.connectivity().kind == Connectivity::Kind::Line) {
        conn = Connectivity::line();
    } else {
        std::set<std::pair<size_t, size_t>> edges;
        for (auto [a, b] : circuit.connectivity().edges) {
            if (remap[a] != SIZE_MAX && remap[b] != SIZE_MAX) {
                edges.insert({remap[a], remap[b]});
            }
        }
        conn = Connectivity::graph(edges);
    }
    Circuit result(roles, circuit.num_clbits(), conn);
    for (auto inst : out) {
        for (auto &q : inst.qubits) {
            q = remap[q];
        }
        result.append(inst);
    }
    return result;
}

PropagatedCircuit propagate_corrections(const Circuit &circuit) {
    size_t n = circuit.num_qubits();
    PauliFrame frame(n);
    // Original value of each bit, in terms of the bits the output circuit records.
    std::vector<Parity> meaning(circuit.num_clbits());
    for (size_t b = 0; b < meaning.size(); b++) {
        meaning[b].bits = {b};
    }
    Circuit out = circuit.empty_copy();
    for (const auto &inst : circuit.instructions()) {
        if (inst.condition) {
            if (inst.kind != GateKind::X && inst.kind != GateKind::Z) {
                throw CircuitError("propagate_corrections: conditioned " + inst.str() + " is not a Pauli");
            }
            Parity e;
            e.constant = inst.condition->negate;
            for (auto b : inst.condition->bits) {
                e ^= meaning[b];
            }
            size_t q = inst.qubits[0];
            (inst.kind == GateKind::X ? frame.x[q] : frame.z[q]) ^= e;
            continue;
        }
        size_t q = inst.qubits.empty() ? 0 : inst.qubits[0];
        switch (inst.kind) {
            case GateKind::Measure: {
                // A pending flip in the measured basis flips the recorded outcome.
                Parity &flip = inst.basis == Basis::Z ? frame.x[q] : frame.z[q];
                meaning[inst.clbit] ^= flip;
                (inst.basis == Basis::Z ? frame.z[q] : frame.x[q]) = Parity{};
                out.append(inst);
                break;
            }
            case GateKind::Reset:
                frame.x[q] = Parity{};
                frame.z[q] = Parity{};
                out.append(inst);
                break;
            case GateKind::Barrier:
                out.append(inst);
                break;
            default: {
                double angle = frame.conjugate_through(inst);
                if (inst.kind == GateKind::RZ) {
                    out.rz(q, angle);
                } else {
                    out.append(inst);
                }
            }
        }
    }
    for (size_t q = 0; q < n; q++) {
        if (!frame.x[q].is_zero()) {
            out.append(conditioned_pauli(GateKind::X, q, frame.x[q]));
        }
        if (!frame.z[q].is_zero()) {
            out.append(conditioned_pauli(GateKind::Z, q, frame.z[q]));
        }
    }
    return {std::move(out), std::move(frame)};
}

}  // namespace dyncirc
