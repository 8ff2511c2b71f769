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


#include "dyncirc/builders/reference.h"

#include <gtest/gtest.h>

#include <numbers>

#include "dyncirc/sim/statevector.h"

using namespace dyncirc;

TEST(reference, unitary_resource_formulas) {
    for (size_t n = 1; n <= 100; n++) {
        auto star = build_unitary_star_fanout(n);
        EXPECT_EQ(cnot_depth(star), n);
        EXPECT_EQ(cnot_count(star), n);
        auto line = build_unitary_line_fanout(n);
        EXPECT_EQ(cnot_depth(line), 2 * n - 1) << n;
        EXPECT_EQ(cnot_count(line), 2 * n - 1) << n;
        auto ladder = build_unitary_ladder(n);
        EXPECT_EQ(cnot_depth(ladder), n);
        EXPECT_EQ(cnot_count(ladder), n);
        auto lr = build_unitary_long_range_cnot(n);
        EXPECT_EQ((long)cnot_depth(lr), 2 * (long)n + (n % 2 == 0 ? 1 : -1)) << n;
        EXPECT_EQ(cnot_count(lr), 4 * n - 3) << n;
        EXPECT_EQ(lr.num_qubits(), n + 1);
    }
}

TEST(reference, circuits_match_target_operators) {
    std::vector<GateSpec> specs = {
        GateSpec::fanout(3),
        GateSpec::ladder(3),
        GateSpec::ladder(3, LadderOrientation::Up),
        GateSpec::long_range_cnot(4),
        GateSpec::swap(3),
        GateSpec::multi_rz({0.3, -1.1, 2.0}),
        GateSpec::rzz_fan({0.7, 0.2}),
        GateSpec::controlled_u_fan({ry_matrix(0.4), rz_matrix(1.3)}),
        GateSpec::cart_wheel({0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}),
    };
    for (const auto &spec : specs) {
        auto u = build_target_operator(spec);
        EXPECT_TRUE((u.adjoint() * u).isIdentity(1e-12)) << spec.name();
        auto c = reference_circuit(spec);
        if (spec.kind != GateSpec::Kind::ControlledUFan) {
            EXPECT_LT(operator_distance(circuit_unitary(c), u), 1e-12) << spec.name();
        }
    }
}

TEST(reference, fanout_acts_on_basis_states) {
    auto u = build_target_operator(GateSpec::fanout(2));
    // q0 = 1 flips q1 and q2; qubit 0 is the least significant bit.
    EXPECT_NEAR(std::abs(u(0b111, 0b001)), 1, 1e-12);
    EXPECT_NEAR(std::abs(u(0b110, 0b110)), 1, 1e-12);
}

TEST(reference, long_range_cnot_leaves_middle_alone) {
    auto u = build_target_operator(GateSpec::long_range_cnot(2));
    EXPECT_NEAR(std::abs(u(0b101, 0b001)), 1, 1e-12);
    EXPECT_NEAR(std::abs(u(0b111, 0b011)), 1, 1e-12);
    EXPECT_NEAR(std::abs(u(0b010, 0b010)), 1, 1e-12);
}

TEST(reference, rotation_conventions) {
    auto rz = rz_matrix(std::numbers::pi);
    EXPECT_NEAR(std::abs(rz(0, 0) - std::complex<double>(0, -1)), 0, 1e-15);
    EXPECT_NEAR(std::abs(rz(1, 1) - std::complex<double>(0, 1)), 0, 1e-15);
    auto ry = ry_matrix(std::numbers::pi);
    EXPECT_NEAR(std::abs(ry(1, 0) - 1.0), 0, 1e-15);
}

TEST(reference, teleport_fixes_destination_input) {
    auto spec = GateSpec::teleport(3);
    EXPECT_EQ(spec.fixed_zero_inputs(), (std::vector<size_t>{3}));
    EXPECT_TRUE(spec.is_clifford());
    EXPECT_FALSE(GateSpec::multi_rz({0.3}).is_clifford());
}
