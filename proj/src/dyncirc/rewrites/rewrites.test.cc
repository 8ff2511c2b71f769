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

#include <gtest/gtest.h>

#include "dyncirc/builders/dynamic.h"
#include "dyncirc/builders/line_builder.h"
#include "dyncirc/sim/statevector.h"

using namespace dyncirc;

namespace {

Circuit complete(size_t n) {
    return Circuit(n, 0, Connectivity::complete(n));
}

double instrument_gap(const Circuit &a, const Circuit &b) {
    auto ja = outcome_choi_matrices(a);
    auto jb = outcome_choi_matrices(b);
    double worst = 0;
    for (const auto &[bits, m] : ja) {
        auto it = jb.find(bits);
        worst = std::max(worst, it == jb.end() ? m.cwiseAbs().maxCoeff() : (m - it->second).cwiseAbs().maxCoeff());
    }
    for (const auto &[bits, m] : jb) {
        if (!ja.count(bits)) {
            worst = std::max(worst, m.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

double worst_branch(const Circuit &c, const GateSpec &spec) {
    Eigen::MatrixXcd u = build_target_operator(spec);
    double worst = 0;
    for_each_channel_branch(c, {}, [&](const KrausBranch &k) {
        if (!k.zero_probability) {
            worst = std::max(worst, normalized_operator_distance(u, k.op));
        }
    });
    return worst;
}

size_t count_conditioned(const Circuit &c) {
    size_t n = 0;
    for (const auto &inst : c.instructions()) {
        n += inst.condition.has_value();
    }
    return n;
}

}  // namespace

TEST(commute_cx_pair, ladder_pair_gets_extra_gate) {
    auto c = complete(3);
    c.cx(0, 1).cx(1, 2);
    auto r = commute_cx_pair(c, 0);
    ASSERT_EQ(r.instructions().size(), 3u);
    EXPECT_EQ(r.instructions()[0], Instruction::cx(1, 2));
    EXPECT_EQ(r.instructions()[1], Instruction::cx(0, 1));
    EXPECT_EQ(r.instructions()[2], Instruction::cx(0, 2));
    EXPECT_LT(operator_distance(circuit_unitary(c), circuit_unitary(r)), 1e-12);
}

TEST(commute_cx_pair, reversed_pattern) {
    auto c = complete(3);
    c.cx(1, 2).cx(0, 1);
    auto r = commute_cx_pair(c, 0);
    EXPECT_EQ(r.instructions().back(), Instruction::cx(0, 2));
    EXPECT_LT(operator_distance(circuit_unitary(c), circuit_unitary(r)), 1e-12);
}

TEST(commute_cx_pair, shared_control_just_swaps) {
    auto c = complete(3);
    c.cx(0, 1).cx(0, 2);
    auto r = commute_cx_pair(c, 0);
    EXPECT_EQ(r.instructions().size(), 2u);
    EXPECT_EQ(r.instructions()[0], Instruction::cx(0, 2));
}

TEST(commute_cx_pair, twice_is_equivalent) {
    auto c = complete(3);
    c.cx(0, 1).cx(1, 2);
    auto r = commute_cx_pair(commute_cx_pair(c, 0), 0);
    EXPECT_LT(operator_distance(circuit_unitary(c), circuit_unitary(r)), 1e-12);
}

TEST(commute_cx_pair, widens_line_connectivity) {
    Circuit c(3, 0);
    c.cx(0, 1).cx(1, 2);
    auto r = commute_cx_pair(c, 0);
    EXPECT_TRUE(r.connectivity().allows(0, 2));
}

TEST(commute_cx_pair, rejects_mismatch) {
    auto c = complete(3);
    c.cx(0, 1).h(2);
    EXPECT_THROW(commute_cx_pair(c, 0), CircuitError);
    auto d = complete(2);
    d.cx(0, 1).cx(1, 0);
    EXPECT_THROW(commute_cx_pair(d, 0), CircuitError);
}

TEST(expand_skip_cx, four_gates_by_default) {
    auto c = complete(3);
    c.cx(0, 2);
    auto r = expand_skip_cx(c, 0);
    EXPECT_EQ(cnot_count(r), 4u);
    EXPECT_LT(operator_distance(circuit_unitary(c), circuit_unitary(r)), 1e-12);
    auto back = complete(3);
    back.cx(2, 0);
    EXPECT_LT(operator_distance(circuit_unitary(back), circuit_unitary(expand_skip_cx(back, 0))), 1e-12);
}

TEST(expand_skip_cx, three_gates_across_zero) {
    auto c = complete(3);
    c.h(0).cx(0, 2);
    auto r = expand_skip_cx(c, 1, SkippedState::Zero);
    EXPECT_EQ(cnot_count(r), 3u);
    Eigen::MatrixXcd a = circuit_unitary(c), b = circuit_unitary(r);
    for (int col = 0; col < 8; col++) {
        if (!(col & 2)) {
            EXPECT_LT((a.col(col) - b.col(col)).norm(), 1e-12);
        }
    }
}

TEST(expand_skip_cx, three_gates_across_plus) {
    auto c = complete(3);
    c.h(1).cx(2, 0);
    auto r = expand_skip_cx(c, 1, SkippedState::Plus);
    EXPECT_EQ(cnot_count(r), 3u);
    Eigen::MatrixXcd a = circuit_unitary(c), b = circuit_unitary(r);
    for (int col = 0; col < 8; col++) {
        if (!(col & 2)) {
            EXPECT_LT((a.col(col) - b.col(col)).norm(), 1e-12);
        }
    }
}

TEST(expand_skip_cx, checks_declared_state) {
    auto c = complete(3);
    c.x(1).cx(0, 2);
    EXPECT_THROW(expand_skip_cx(c, 1, SkippedState::Zero), CircuitError);
    EXPECT_THROW(expand_skip_cx(c, 1, SkippedState::Plus), CircuitError);
    auto d = complete(4);
    d.cx(0, 3);
    EXPECT_THROW(expand_skip_cx(d, 0), CircuitError);
}

TEST(defer_measurement, no_measurements_unchanged) {
    auto c = complete(2);
    c.h(0).cx(0, 1);
    auto d = defer_measurement(c);
    EXPECT_EQ(d.instructions(), c.instructions());
}

TEST(defer_measurement, ladder_becomes_unitary_with_terminal_measurements) {
    auto c = build_dynamic_ladder(2);
    auto d = defer_measurement(c);
    EXPECT_EQ(count_conditioned(d), 0u);
    bool seen_measure = false;
    for (const auto &inst : d.instructions()) {
        if (inst.kind == GateKind::Measure) {
            seen_measure = true;
        } else if (inst.kind != GateKind::Reset) {
            EXPECT_FALSE(seen_measure) << inst.str();
        }
    }
    auto channel = extract_channel(d);
    std::map<std::vector<uint8_t>, double> marginal;
    for (const auto &k : channel.kraus_branches) {
        marginal[k.outcome_bits] += k.weight;
    }
    EXPECT_EQ(marginal.size(), 4u);
    for (const auto &[bits, w] : marginal) {
        EXPECT_NEAR(w, 0.25, 1e-10);
    }
    EXPECT_LT(worst_branch(d, GateSpec::ladder(2)), 1e-10);
    EXPECT_LT(instrument_gap(c, d), 1e-10);
}

TEST(defer_measurement, rejects_x_basis_conditions) {
    auto c = build_dynamic_long_range_cnot(2);
    EXPECT_THROW(defer_measurement(c), CircuitError);
    EXPECT_LT(instrument_gap(c, defer_measurement(normalize_measurement_basis(c))), 1e-10);
}

TEST(defer_measurement, round_trip_keeps_instrument) {
    for (auto c : {build_dynamic_ladder(2), build_dynamic_fanout_v1(2), build_dynamic_swap(1)}) {
        auto norm = normalize_measurement_basis(c);
        auto d = defer_measurement(norm);
        auto u = undefer_measurement(d);
        EXPECT_LT(instrument_gap(c, d), 1e-10);
        EXPECT_LT(instrument_gap(c, u), 1e-10);
        EXPECT_GT(count_conditioned(u), 0u);
    }
}

TEST(pauli_frame, conjugation_rules) {
    PauliFrame f(2);
    f.x[0] = Parity{{3}, false};
    f.conjugate_through(Instruction::gate(GateKind::H, 0));
    EXPECT_TRUE(f.x[0].is_zero());
    EXPECT_EQ(f.z[0], (Parity{{3}, false}));
    f.conjugate_through(Instruction::cx(1, 0));
    EXPECT_EQ(f.z[1], (Parity{{3}, false}));
    // Z frames commute with any rotation angle.
    EXPECT_DOUBLE_EQ(f.conjugate_through(Instruction::rz(0, 0.37)), 0.37);
    PauliFrame g(1);
    g.x[0].constant = true;
    EXPECT_DOUBLE_EQ(g.conjugate_through(Instruction::rz(0, 0.37)), -0.37);
    g.x[0] = Parity{{0}, false};
    EXPECT_THROW(g.conjugate_through(Instruction::rz(0, 0.37)), CircuitError);
}

TEST(pauli_frame, composition_is_xor) {
    PauliFrame a(1), b(1);
    a.x[0] = Parity{{1, 2}, false};
    b.x[0] = Parity{{2}, true};
    a *= b;
    EXPECT_EQ(a.x[0], (Parity{{1}, true}));
    a *= a;
    EXPECT_TRUE(a.is_identity());
}

TEST(propagate_corrections, unconditioned_circuit_has_identity_frame) {
    auto r = propagate_corrections(build_unitary_ladder(3));
    EXPECT_TRUE(r.frame.is_identity());
}

TEST(propagate_corrections, reproduces_single_round_parities) {
    for (size_t n = 1; n <= 6; n++) {
        for (auto c : {build_dynamic_fanout_v2(n), build_dynamic_long_range_cnot(n), build_dynamic_ladder(n)}) {
            auto r = propagate_corrections(c);
            PauliFrame emitted(c.num_qubits());
            for (const auto &inst : c.instructions()) {
                if (inst.condition) {
                    auto &slot = inst.kind == GateKind::X ? emitted.x : emitted.z;
                    slot[inst.qubits[0]] ^= Parity::of(*inst.condition);
                }
            }
            EXPECT_EQ(r.frame, emitted) << n;
        }
    }
}

TEST(propagate_corrections, makes_two_round_circuits_single_round) {
    for (size_t n = 2; n <= 4; n++) {
        auto v1 = propagate_corrections(build_dynamic_fanout_v1(n)).circuit;
        EXPECT_EQ(measurement_rounds(v1), 1u);
        EXPECT_LT(worst_branch(v1, GateSpec::fanout(n)), 1e-10);
        auto s = propagate_corrections(build_dynamic_swap(n)).circuit;
        EXPECT_EQ(measurement_rounds(s), 1u);
        EXPECT_LT(worst_branch(s, GateSpec::swap(n)), 1e-10);
    }
}

TEST(propagate_corrections, rejects_x_frame_through_rotation) {
    // X corrections from the first fan-out would have to cross the arbitrary rotations.
    std::vector<double> th{0.3, 0.4};
    EXPECT_THROW(propagate_corrections(build_dynamic_rzz_fan(th, RzzFanVariant::SingleQubitRz)), CircuitError);
}
