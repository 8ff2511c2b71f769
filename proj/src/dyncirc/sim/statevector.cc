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

#include "dyncirc/sim/statevector.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace dyncirc {

using cd = std::complex<double>;

namespace {

/// Dense state over the "active" qubits only. Qubits whose value is known
/// classically (fresh ancillas, measured qubits) are kept outside the vector,
/// which keeps the branching simulation small.
struct SparseRegister {
    std::vector<cd> amps{cd(1)};
    std::vector<int> pos;        // per circuit qubit: bit position, or -1 when classical
    std::vector<uint8_t> value;  // classical value when pos == -1
    std::vector<int> owner;      // per bit position: circuit qubit, or -1 - k for passive bit k

    size_t num_bits() const {
        return owner.size();
    }

    void add_bit(int who, uint8_t v) {
        size_t k = owner.size();
        if (k + 1 > MAX_DENSE_QUBITS) {
            throw SimulationError("dense simulation exceeds " + std::to_string(MAX_DENSE_QUBITS) + " qubits");
        }
        size_t half = amps.size();
        amps.resize(2 * half, cd(0));
        if (v) {
            for (size_t i = 0; i < half; i++) {
                amps[half + i] = amps[i];
                amps[i] = 0;
            }
        }
        owner.push_back(who);
        if (who >= 0) {
            pos[(size_t)who] = (int)k;
        }
    }

    void activate(size_t q) {
        if (pos[q] < 0) {
            add_bit((int)q, value[q]);
        }
    }

    /// Keeps the slice where the qubit's bit equals `outcome` and drops the bit.
    void collapse(size_t q, uint8_t outcome) {
        size_t b = (size_t)pos[q];
        size_t lo = (size_t{1} << b) - 1;
        std::vector<cd> out(amps.size() / 2);
        for (size_t i = 0; i < out.size(); i++) {
            size_t src = ((i & ~lo) << 1) | (i & lo) | (size_t{outcome} << b);
            out[i] = amps[src];
        }
        amps = std::move(out);
        owner.erase(owner.begin() + (long)b);
        for (size_t k = b; k < owner.size(); k++) {
            if (owner[k] >= 0) {
                pos[(size_t)owner[k]] = (int)k;
            }
        }
        pos[q] = -1;
        value[q] = outcome;
    }

    double weight_of(size_t q, uint8_t outcome) const {
        size_t m = size_t{1} << pos[q];
        double w = 0;
        for (size_t i = 0; i < amps.size(); i++) {
            if (((i & m) != 0) == (outcome != 0)) {
                w += std::norm(amps[i]);
            }
        }
        return w;
    }

    void scale(cd f) {
        for (auto &a : amps) {
            a *= f;
        }
    }

    void apply_1q(size_t q, cd m00, cd m01, cd m10, cd m11) {
        activate(q);
        size_t m = size_t{1} << pos[q];
        for (size_t i = 0; i < amps.size(); i++) {
            if (i & m) {
                continue;
            }
            cd a0 = amps[i], a1 = amps[i | m];
            amps[i] = m00 * a0 + m01 * a1;
            amps[i | m] = m10 * a0 + m11 * a1;
        }
    }

    /// Diagonal gate; stays classical when possible.
    void apply_diag(size_t q, cd d0, cd d1) {
        if (pos[q] < 0) {
            scale(value[q] ? d1 : d0);
            return;
        }
        size_t m = size_t{1} << pos[q];
        for (size_t i = 0; i < amps.size(); i++) {
            amps[i] *= (i & m) ? d1 : d0;
        }
    }

    void apply_x(size_t q) {
        if (pos[q] < 0) {
            value[q] ^= 1;
            return;
        }
        size_t m = size_t{1} << pos[q];
        for (size_t i = 0; i < amps.size(); i++) {
            if (!(i & m)) {
                std::swap(amps[i], amps[i | m]);
            }
        }
    }

    void apply_cx(size_t c, size_t t) {
        if (pos[c] < 0) {
            if (value[c]) {
                apply_x(t);
            }
            return;
        }
        activate(t);
        size_t mc = size_t{1} << pos[c];
        size_t mt = size_t{1} << pos[t];
        for (size_t i = 0; i < amps.size(); i++) {
            if ((i & mc) && !(i & mt)) {
                std::swap(amps[i], amps[i | mt]);
            }
        }
    }
};

struct Leaf {
    const std::vector<uint8_t> &clbits;
    const std::vector<uint8_t> &reset_bits;
    bool zero;
    // Amplitudes over system qubits (bits 0..n_sys-1) then passive bits; empty when zero.
    const std::vector<cd> *amps;
};

class BranchWalker {
   public:
    BranchWalker(const Circuit &circuit, std::function<void(const Leaf &)> on_leaf)
        : circuit_(circuit), on_leaf_(std::move(on_leaf)), system_(circuit.system_qubits()) {
        for (size_t q = 0; q < circuit.num_qubits(); q++) {
            if (circuit.roles()[q] == Role::Ancilla) {
                ancillas_.push_back(q);
            }
        }
        remaining_measurements_.assign(circuit.instructions().size() + 1, 0);
        for (size_t k = circuit.instructions().size(); k-- > 0;) {
            remaining_measurements_[k] =
                remaining_measurements_[k + 1] + (circuit.instructions()[k].kind == GateKind::Measure);
        }
        // An X-basis outcome leaves |+> or |->. The rotation back is dropped when the qubit
        // is reset next: it is a product state by then, so the reset lands on |0> either way.
        const auto &insts = circuit.instructions();
        rotate_back_.assign(insts.size(), false);
        for (size_t k = 0; k < insts.size(); k++) {
            if (insts[k].kind != GateKind::Measure || insts[k].basis != Basis::X) {
                continue;
            }
            size_t q = insts[k].qubits[0];
            bool reset_next = false;
            for (size_t j = k + 1; j < insts.size(); j++) {
                const auto &qs = insts[j].qubits;
                if (std::find(qs.begin(), qs.end(), q) != qs.end()) {
                    reset_next = insts[j].kind == GateKind::Reset && !insts[j].condition;
                    break;
                }
            }
            rotate_back_[k] = !reset_next;
        }
    }

    /// The register must hold the system qubits at bits 0..n_sys-1 followed by `num_passive` passive bits.
    void run(std::vector<cd> initial, size_t num_passive) {
        if (circuit_.num_qubits() + num_passive > 64) {
            throw SimulationError("register too large");
        }
        SparseRegister reg;
        reg.pos.assign(circuit_.num_qubits(), -1);
        reg.value.assign(circuit_.num_qubits(), 0);
        for (auto q : system_) {
            reg.owner.push_back((int)q);
            reg.pos[q] = (int)reg.owner.size() - 1;
        }
        for (size_t k = 0; k < num_passive; k++) {
            reg.owner.push_back(-1 - (int)k);
        }
        if (reg.owner.size() > MAX_DENSE_QUBITS) {
            throw SimulationError("dense simulation exceeds " + std::to_string(MAX_DENSE_QUBITS) + " qubits");
        }
        if (initial.size() != (size_t{1} << reg.owner.size())) {
            throw SimulationError("initial state has the wrong dimension");
        }
        reg.amps = std::move(initial);
        num_passive_ = num_passive;
        std::vector<uint8_t> clbits(circuit_.num_clbits(), 0);
        std::vector<uint8_t> resets;
        walk(0, std::move(reg), clbits, resets);
    }

   private:
    void walk(size_t pc, SparseRegister reg, std::vector<uint8_t> &clbits, std::vector<uint8_t> &resets) {
        const auto &insts = circuit_.instructions();
        for (; pc < insts.size(); pc++) {
            const Instruction &inst = insts[pc];
            if (inst.condition.has_value() && !inst.condition->holds(clbits)) {
                continue;
            }
            size_t q = inst.qubits[0];
            switch (inst.kind) {
                case GateKind::H: {
                    double s = std::numbers::sqrt2 / 2;
                    reg.apply_1q(q, s, s, s, -s);
                    break;
                }
                case GateKind::X:
                    reg.apply_x(q);
                    break;
                case GateKind::Z:
                    reg.apply_diag(q, 1, -1);
                    break;
                case GateKind::S:
                    reg.apply_diag(q, 1, cd(0, 1));
                    break;
                case GateKind::Sdg:
                    reg.apply_diag(q, 1, cd(0, -1));
                    break;
                case GateKind::RZ:
                    reg.apply_diag(q, std::polar(1.0, -inst.angle / 2), std::polar(1.0, inst.angle / 2));
                    break;
                case GateKind::CX:
                    reg.apply_cx(inst.qubits[0], inst.qubits[1]);
                    break;
                case GateKind::Barrier:
                    break;
                case GateKind::Measure: {
                    if (inst.basis == Basis::X) {
                        double s = std::numbers::sqrt2 / 2;
                        reg.apply_1q(q, s, s, s, -s);
                    }
                    fork_measure(pc, q, inst.clbit, std::move(reg), clbits, resets);
                    return;
                }
                case GateKind::Reset: {
                    if (reg.pos[q] < 0) {
                        reg.value[q] = 0;
                        break;
                    }
                    fork_reset(pc, q, std::move(reg), clbits, resets);
                    return;
                }
            }
        }
        finish(std::move(reg), clbits, resets);
    }

    void fork_measure(
        size_t pc, size_t q, size_t clbit, SparseRegister reg, std::vector<uint8_t> &clbits,
        std::vector<uint8_t> &resets) {
        const double s = std::numbers::sqrt2 / 2;
        for (uint8_t outcome = 0; outcome < 2; outcome++) {
            clbits[clbit] = outcome;
            bool possible;
            if (reg.pos[q] < 0) {
                possible = reg.value[q] == outcome;
            } else {
                possible = reg.weight_of(q, outcome) >= ZERO_BRANCH_NORM * ZERO_BRANCH_NORM;
            }
            if (!possible) {
                emit_zero(pc + 1, clbits, resets);
                continue;
            }
            if (outcome == 0 && reg.pos[q] >= 0) {
                SparseRegister copy = reg;
                copy.collapse(q, outcome);
                if (rotate_back_[pc]) {
                    copy.apply_1q(q, s, s, s, -s);
                }
                walk(pc + 1, std::move(copy), clbits, resets);
            } else {
                SparseRegister moved = outcome == 1 ? std::move(reg) : reg;
                if (moved.pos[q] >= 0) {
                    moved.collapse(q, outcome);
                }
                if (rotate_back_[pc]) {
                    moved.apply_1q(q, s, s, s, -s);
                }
                walk(pc + 1, std::move(moved), clbits, resets);
            }
        }
        clbits[clbit] = 0;
    }

    void fork_reset(
        size_t pc, size_t q, SparseRegister reg, std::vector<uint8_t> &clbits, std::vector<uint8_t> &resets) {
        double w0 = reg.weight_of(q, 0);
        double w1 = reg.weight_of(q, 1);
        double eps = ZERO_BRANCH_NORM * ZERO_BRANCH_NORM;
        if (w1 < eps || w0 < eps) {
            uint8_t outcome = w1 < eps ? 0 : 1;
            reg.collapse(q, outcome);
            reg.value[q] = 0;
            walk(pc + 1, std::move(reg), clbits, resets);
            return;
        }
        for (uint8_t outcome = 0; outcome < 2; outcome++) {
            SparseRegister copy = outcome == 0 ? reg : std::move(reg);
            copy.collapse(q, outcome);
            copy.value[q] = 0;
            resets.push_back(outcome);
            walk(pc + 1, std::move(copy), clbits, resets);
            resets.pop_back();
        }
    }

    void emit_zero(size_t pc, std::vector<uint8_t> &clbits, std::vector<uint8_t> &resets) {
        // Every continuation of an impossible branch is impossible too; list them for completeness.
        std::vector<size_t> later;
        for (size_t k = pc; k < circuit_.instructions().size(); k++) {
            if (circuit_.instructions()[k].kind == GateKind::Measure) {
                later.push_back(circuit_.instructions()[k].clbit);
            }
        }
        for (size_t mask = 0; mask < (size_t{1} << later.size()); mask++) {
            for (size_t j = 0; j < later.size(); j++) {
                clbits[later[j]] = (mask >> j) & 1;
            }
            on_leaf_(Leaf{clbits, resets, true, nullptr});
        }
        for (auto b : later) {
            clbits[b] = 0;
        }
    }

    std::string describe(const std::vector<uint8_t> &clbits) const {
        std::stringstream ss;
        for (auto b : clbits) {
            ss << (int)b;
        }
        return ss.str();
    }

    void finish(SparseRegister reg, std::vector<uint8_t> &clbits, std::vector<uint8_t> &resets) {
        double total = 0;
        for (auto &a : reg.amps) {
            total += std::norm(a);
        }
        for (auto a : ancillas_) {
            bool bad;
            if (reg.pos[a] < 0) {
                bad = reg.value[a] != 0;
            } else {
                bad = reg.weight_of(a, 1) > 1e-10 * total;
                if (!bad) {
                    reg.collapse(a, 0);
                }
            }
            if (bad) {
                throw SimulationError(
                    "ancilla " + std::to_string(a) + " not disentangled in branch with bits " + describe(clbits));
            }
        }
        for (auto q : system_) {
            reg.activate(q);
        }
        // Permute bits into canonical order: system qubits, then passive bits.
        size_t nb = reg.num_bits();
        std::vector<size_t> target_of_bit(nb);
        for (size_t b = 0; b < nb; b++) {
            int who = reg.owner[b];
            if (who >= 0) {
                size_t idx = 0;
                while (system_[idx] != (size_t)who) {
                    idx++;
                }
                target_of_bit[b] = idx;
            } else {
                target_of_bit[b] = system_.size() + (size_t)(-1 - who);
            }
        }
        bool identity = true;
        for (size_t b = 0; b < nb; b++) {
            identity &= target_of_bit[b] == b;
        }
        if (!identity) {
            std::vector<cd> out(reg.amps.size());
            for (size_t i = 0; i < reg.amps.size(); i++) {
                size_t j = 0;
                for (size_t b = 0; b < nb; b++) {
                    j |= ((i >> b) & 1) << target_of_bit[b];
                }
                out[j] = reg.amps[i];
            }
            reg.amps = std::move(out);
        }
        on_leaf_(Leaf{clbits, resets, false, &reg.amps});
    }

    const Circuit &circuit_;
    std::function<void(const Leaf &)> on_leaf_;
    std::vector<size_t> system_;
    std::vector<size_t> ancillas_;
    std::vector<size_t> remaining_measurements_;
    std::vector<bool> rotate_back_;
    size_t num_passive_ = 0;
};

}  // namespace

std::vector<BranchResult> enumerate_branches(const Circuit &circuit, const Eigen::VectorXcd &input_state) {
    if (circuit.num_qubits() > MAX_DENSE_QUBITS) {
        throw SimulationError("enumerate_branches supports at most " + std::to_string(MAX_DENSE_QUBITS) + " qubits");
    }
    size_t n_sys = circuit.num_system();
    if ((size_t)input_state.size() != (size_t{1} << n_sys)) {
        throw SimulationError("input state must cover exactly the system qubits");
    }
    double norm2 = input_state.squaredNorm();
    std::vector<BranchResult> out;
    BranchWalker walker(circuit, [&](const Leaf &leaf) {
        BranchResult r;
        r.outcome_bits = leaf.clbits;
        r.reset_bits = leaf.reset_bits;
        r.zero_probability = leaf.zero;
        if (!leaf.zero) {
            const auto &a = *leaf.amps;
            Eigen::VectorXcd v(a.size());
            for (size_t i = 0; i < a.size(); i++) {
                v[(Eigen::Index)i] = a[i];
            }
            double p = v.squaredNorm();
            r.probability = p / norm2;
            if (std::sqrt(p) < ZERO_BRANCH_NORM) {
                r.zero_probability = true;
            } else {
                r.system_state = v / std::sqrt(p);
            }
        }
        out.push_back(std::move(r));
    });
    std::vector<cd> init(input_state.data(), input_state.data() + input_state.size());
    walker.run(std::move(init), 0);
    return out;
}

size_t embed_input_index(size_t column, size_t num_system, const std::vector<size_t> &fixed_zero_inputs) {
    size_t x = 0;
    size_t k = 0;
    for (size_t q = 0; q < num_system; q++) {
        bool fixed = false;
        for (auto f : fixed_zero_inputs) {
            fixed |= f == q;
        }
        if (fixed) {
            continue;
        }
        x |= ((column >> k) & 1) << q;
        k++;
    }
    return x;
}

void for_each_channel_branch(
    const Circuit &circuit,
    const std::vector<size_t> &fixed_zero_inputs,
    const std::function<void(const KrausBranch &)> &callback) {
    size_t n_sys = circuit.num_system();
    for (auto f : fixed_zero_inputs) {
        if (f >= n_sys) {
            throw SimulationError("fixed input index out of range");
        }
    }
    size_t n_in = n_sys - fixed_zero_inputs.size();
    if (n_sys + n_in + circuit.num_ancilla() > MAX_DENSE_QUBITS) {
        throw SimulationError(
            "channel extraction needs 2*n_sys + n_anc <= " + std::to_string(MAX_DENSE_QUBITS) + " qubits");
    }
    size_t d_sys = size_t{1} << n_sys;
    size_t d_in = size_t{1} << n_in;
    std::vector<cd> init(d_sys * d_in, cd(0));
    double amp = 1 / std::sqrt((double)d_in);
    for (size_t i = 0; i < d_in; i++) {
        init[embed_input_index(i, n_sys, fixed_zero_inputs) + i * d_sys] = amp;
    }
    double scale = std::sqrt((double)d_in);
    BranchWalker walker(circuit, [&](const Leaf &leaf) {
        KrausBranch k;
        k.outcome_bits = leaf.clbits;
        k.reset_bits = leaf.reset_bits;
        k.zero_probability = leaf.zero;
        if (!leaf.zero) {
            const auto &a = *leaf.amps;
            k.op.resize((Eigen::Index)d_sys, (Eigen::Index)d_in);
            for (size_t col = 0; col < d_in; col++) {
                for (size_t row = 0; row < d_sys; row++) {
                    k.op((Eigen::Index)row, (Eigen::Index)col) = a[row + col * d_sys] * scale;
                }
            }
            k.weight = k.op.squaredNorm() / (double)d_in;
            if (std::sqrt(k.weight) < ZERO_BRANCH_NORM) {
                k.zero_probability = true;
            }
        }
        callback(k);
    });
    walker.run(std::move(init), n_in);
}

ChannelOnSystem extract_channel(const Circuit &circuit, const std::vector<size_t> &fixed_zero_inputs) {
    ChannelOnSystem ch;
    ch.num_system = circuit.num_system();
    ch.fixed_zero_inputs = fixed_zero_inputs;
    for_each_channel_branch(circuit, fixed_zero_inputs, [&](const KrausBranch &k) {
        ch.kraus_branches.push_back(k);
    });
    return ch;
}

std::map<std::vector<uint8_t>, Eigen::MatrixXcd> outcome_choi_matrices(
    const Circuit &circuit, const std::vector<size_t> &fixed_zero_inputs) {
    std::map<std::vector<uint8_t>, Eigen::MatrixXcd> out;
    for_each_channel_branch(circuit, fixed_zero_inputs, [&](const KrausBranch &k) {
        if (k.zero_probability) {
            return;
        }
        Eigen::Map<const Eigen::VectorXcd> v(k.op.data(), k.op.size());
        Eigen::MatrixXcd j = v * v.adjoint() / (double)k.op.cols();
        auto it = out.find(k.outcome_bits);
        if (it == out.end()) {
            out.emplace(k.outcome_bits, j);
        } else {
            it->second += j;
        }
    });
    return out;
}

double operator_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("operator_distance needs equal dimensions");
    }
    cd tr = (a.adjoint() * b).trace();
    return 1 - std::abs(tr) / (double)a.cols();
}

double normalized_operator_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("operator_distance needs equal dimensions");
    }
    double na = a.norm(), nb = b.norm();
    if (na == 0 || nb == 0) {
        return 1;
    }
    cd tr = (a.adjoint() * b).trace();
    return 1 - std::abs(tr) / (na * nb);
}

Eigen::MatrixXcd circuit_unitary(const Circuit &circuit) {
    size_t n = circuit.num_qubits();
    if (n > 14) {
        throw SimulationError("circuit_unitary supports at most 14 qubits");
    }
    Circuit all_system(std::vector<Role>(n, Role::System), circuit.num_clbits(), Connectivity::complete(n));
    for (const auto &inst : circuit.instructions()) {
        if (!inst.is_unitary_gate() && inst.kind != GateKind::Barrier) {
            throw SimulationError("circuit_unitary needs a measurement-free circuit");
        }
        if (inst.condition.has_value()) {
            throw SimulationError("circuit_unitary needs an unconditioned circuit");
        }
        all_system.append(inst);
    }
    size_t d = size_t{1} << n;
    Eigen::MatrixXcd u(d, d);
    for (size_t col = 0; col < d; col++) {
        Eigen::VectorXcd in = Eigen::VectorXcd::Zero((Eigen::Index)d);
        in[(Eigen::Index)col] = 1;
        auto br = enumerate_branches(all_system, in);
        u.col((Eigen::Index)col) = br.at(0).system_state;
    }
    return u;
}

}  // namespace dyncirc
