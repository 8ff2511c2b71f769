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

#include "dyncirc/builders/dynamic.h"

#include <gtest/gtest.h>

#include <random>

#include "dyncirc/sim/statevector.h"

using namespace dyncirc;

namespace {

// Worst branch distance to the target, checked on the allowed input columns.
double worst_branch_distance(const Circuit &c, const GateSpec &spec) {
    auto fixed = spec.fixed_zero_inputs();
    Eigen::MatrixXcd full = build_target_operator(spec);
    size_t n_sys = spec.num_system();
    size_t cols = (size_t{1} << (n_sys - fixed.size()));
    Eigen::MatrixXcd target(full.rows(), cols);
    for (size_t j = 0; j < cols; j++) {
        target.col(j) = full.col(embed_input_index(j, n_sys, fixed));
    }
    double worst = 0;
    double total = 0;
    for_each_channel_branch(c, fixed, [&](const KrausBranch &k) {
        if (k.zero_probability) {
            return;
        }
        total += k.weight;
        worst = std::max(worst, normalized_operator_distance(target, k.op));
    });
    EXPECT_NEAR(total, 1.0, 1e-9);
    return worst;
}

std::vector<double> random_angles(size_t n, uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    std::vector<double> out(n);
    for (auto &a : out) {
        a = u(rng);
    }
    return out;
}

Eigen::Matrix2cd random_unitary(std::mt19937 &rng) {
    std::normal_distribution<double> g;
    Eigen::Matrix2cd m;
    for (int i = 0; i < 4; i++) {
        m(i / 2, i % 2) = {g(rng), g(rng)};
    }
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
    return qr.householderQ();
}

}  // namespace

TEST(dynamic, ladder_matches_target) {
    for (size_t n = 1; n <= 5; n++) {
        for (auto o : {LadderOrientation::Down, LadderOrientation::Up}) {
            auto c = build_dynamic_ladder(n, o);
            EXPECT_LT(worst_branch_distance(c, GateSpec::ladder(n, o)), 1e-10) << n;
            EXPECT_EQ(cnot_count(c), 2 * n);
            EXPECT_EQ(measurement_rounds(c), 1u);
            EXPECT_EQ(cnot_depth(c), 2u);
        }
    }
}

TEST(dynamic, fanout_v1_matches_target) {
    for (size_t n = 1; n <= 5; n++) {
        auto c = build_dynamic_fanout_v1(n);
        EXPECT_LT(worst_branch_distance(c, GateSpec::fanout(n)), 1e-10) << n;
        if (n >= 2) {
            EXPECT_EQ(cnot_count(c), 4 * n - 2);
            EXPECT_EQ(measurement_count(c), 2 * n - 1);
            EXPECT_EQ(measurement_rounds(c), 2u);
            EXPECT_EQ(cnot_depth(c), 4u);
        }
    }
}

TEST(dynamic, fanout_v2_matches_target) {
    size_t depth[] = {0, 2, 4, 5, 5, 5, 5};
    for (size_t n = 1; n <= 6; n++) {
        auto c = build_dynamic_fanout_v2(n);
        EXPECT_LT(worst_branch_distance(c, GateSpec::fanout(n)), 1e-10) << n;
        EXPECT_EQ(cnot_count(c), 3 * n - 1);
        EXPECT_EQ(measurement_count(c), n);
        EXPECT_EQ(measurement_rounds(c), 1u);
        EXPECT_EQ(cnot_depth(c), depth[n]) << n;
    }
}

TEST(dynamic, long_range_cnot_matches_target) {
    size_t depth[] = {0, 2, 5, 7, 7, 7, 7};
    for (size_t n = 1; n <= 6; n++) {
        auto c = build_dynamic_long_range_cnot(n);
        EXPECT_LT(worst_branch_distance(c, GateSpec::long_range_cnot(n)), 1e-10) << n;
        EXPECT_EQ(cnot_count(c), 4 * n - 2);
        EXPECT_EQ(measurement_count(c), n);
        EXPECT_EQ(measurement_rounds(c), 1u);
        EXPECT_EQ(cnot_depth(c), depth[n]) << n;
    }
}

TEST(dynamic, teleport_and_swap_match_target) {
    for (size_t n = 1; n <= 5; n++) {
        EXPECT_LT(worst_branch_distance(build_dynamic_teleportation(n), GateSpec::teleport(n)), 1e-10) << n;
        auto s = build_dynamic_swap(n);
        EXPECT_LT(worst_branch_distance(s, GateSpec::swap(n)), 1e-10) << n;
        EXPECT_EQ(measurement_rounds(s), 2u);
    }
}

TEST(dynamic, rotations_match_target) {
    for (size_t n = 1; n <= 4; n++) {
        auto th = random_angles(n, 7 + n);
        auto m = build_dynamic_multi_rz(th);
        EXPECT_LT(worst_branch_distance(m, GateSpec::multi_rz(th)), 1e-10) << n;
        EXPECT_EQ(measurement_rounds(m), 2u);
        for (auto v : {RzzFanVariant::Sandwich4Ladders, RzzFanVariant::SingleQubitRz}) {
            auto c = build_dynamic_rzz_fan(th, v);
            EXPECT_LT(worst_branch_distance(c, GateSpec::rzz_fan(th)), 1e-10) << n;
        }
    }
}

TEST(dynamic, controlled_u_fan_matches_target) {
    std::mt19937 rng(11);
    for (size_t n = 1; n <= 4; n++) {
        std::vector<Eigen::Matrix2cd> us;
        for (size_t k = 0; k < n; k++) {
            us.push_back(random_unitary(rng));
        }
        auto c = build_dynamic_controlled_u_fan(us);
        EXPECT_LT(worst_branch_distance(c, GateSpec::controlled_u_fan(us)), 1e-10) << n;
        EXPECT_EQ(measurement_rounds(c), 2u);
    }
}

TEST(dynamic, cart_wheel_matches_target) {
    for (size_t n = 3; n <= 4; n++) {
        auto ring = random_angles(n, 100 + n);
        auto spokes = random_angles(n, 200 + n);
        auto c = build_dynamic_cart_wheel(ring, spokes);
        EXPECT_LT(worst_branch_distance(c, GateSpec::cart_wheel(ring, spokes)), 1e-10) << n;
        EXPECT_EQ(measurement_rounds(c), 4u);
    }
}
