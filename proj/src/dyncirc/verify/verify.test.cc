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

#include "dyncirc/verify/verify.h"

#include <gtest/gtest.h>

#include <random>

#include "dyncirc/builders/dynamic.h"
#include "dyncirc/verify/abc.h"

using namespace dyncirc;

namespace {

Eigen::Matrix2cd haar(std::mt19937 &rng) {
    std::normal_distribution<double> g;
    Eigen::Matrix2cd m;
    for (int i = 0; i < 4; i++) {
        m(i / 2, i % 2) = {g(rng), g(rng)};
    }
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
    Eigen::Matrix2cd q = qr.householderQ();
    Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < 2; k++) {
        q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
    }
    return q;
}

void expect_abc(const Eigen::Matrix2cd &u) {
    auto d = abc_decompose(u);
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    EXPECT_LT((d.A * d.B * d.C - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-10);
    Eigen::Matrix2cd rebuilt = std::polar(1.0, d.theta) * d.A * x * d.B * x * d.C;
    EXPECT_LT((rebuilt - u).cwiseAbs().maxCoeff(), 1e-10) << u;
}

Circuit flip_first_correction(const Circuit &c) {
    Circuit out = c.empty_copy();
    bool done = false;
    for (auto inst : c.instructions()) {
        if (inst.condition && !done) {
            inst.condition->negate = !inst.condition->negate;
            done = true;
        }
        out.append(inst);
    }
    return out;
}

}  // namespace

TEST(abc_decompose, identity) {
    auto d = abc_decompose(Eigen::Matrix2cd::Identity());
    EXPECT_LT((d.A - Eigen::Matrix2cd::Identity()).norm(), 1e-12);
    EXPECT_LT((d.B - Eigen::Matrix2cd::Identity()).norm(), 1e-12);
    EXPECT_LT((d.C - Eigen::Matrix2cd::Identity()).norm(), 1e-12);
    EXPECT_NEAR(d.theta, 0, 1e-12);
}

TEST(abc_decompose, paulis_and_degenerate_points) {
    Eigen::Matrix2cd x, y, z, h;
    x << 0, 1, 1, 0;
    y << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
    z << 1, 0, 0, -1;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    for (const auto &u : {x, y, z, h, Eigen::Matrix2cd(rz_matrix(0.7)), Eigen::Matrix2cd(x * rz_matrix(-1.3))}) {
        expect_abc(u);
    }
}

TEST(abc_decompose, haar_random) {
    std::mt19937 rng(2024);
    for (int k = 0; k < 100; k++) {
        expect_abc(haar(rng));
    }
}

TEST(abc_decompose, rejects_non_unitary) {
    Eigen::Matrix2cd m;
    m << 1, 1, 0, 1;
    EXPECT_THROW(abc_decompose(m), std::invalid_argument);
}

TEST(check_equivalence, small_fanout_uses_branches) {
    auto r = check_equivalence(build_dynamic_fanout_v2(4), GateSpec::fanout(4));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.method, VerifyMethod::Branches);
    EXPECT_EQ(r.branch_count, 16u);
    EXPECT_NEAR(r.probability_sum, 1, 1e-12);
}

TEST(check_equivalence, large_fanout_uses_stabilizer) {
    auto r = check_equivalence(build_dynamic_fanout_v2(30), GateSpec::fanout(30));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.method, VerifyMethod::Stabilizer);
    EXPECT_EQ(r.trials, 20u);
}

TEST(check_equivalence, flipped_correction_fails_both_ways) {
    auto bad = flip_first_correction(build_dynamic_ladder(2));
    for (auto m : {VerifyMethod::Branches, VerifyMethod::Stabilizer}) {
        VerifyBudget b;
        b.method = m;
        EXPECT_FALSE(check_equivalence(bad, GateSpec::ladder(2), b).pass) << method_name(m);
    }
}

TEST(check_equivalence, methods_agree_on_small_clifford_instances) {
    for (size_t n = 1; n <= 5; n++) {
        for (const auto &spec : {GateSpec::fanout(n), GateSpec::long_range_cnot(n), GateSpec::swap(n), GateSpec::teleport(n)}) {
            auto c = build_dynamic(spec);
            VerifyBudget b;
            b.method = VerifyMethod::Branches;
            bool by_branches = check_equivalence(c, spec, b).pass;
            b.method = VerifyMethod::Stabilizer;
            bool by_tableau = check_equivalence(c, spec, b).pass;
            EXPECT_TRUE(by_branches) << spec.name() << n;
            EXPECT_EQ(by_branches, by_tableau) << spec.name() << n;
            bool bad_b = check_equivalence(flip_first_correction(c), spec, b).pass;
            b.method = VerifyMethod::Branches;
            EXPECT_EQ(check_equivalence(flip_first_correction(c), spec, b).pass, bad_b) << spec.name() << n;
        }
    }
}

TEST(check_equivalence, against_target_circuit) {
    auto r = check_equivalence(build_dynamic_fanout_v2(3), build_unitary_line_fanout(3));
    EXPECT_TRUE(r.pass);
    auto j = to_json(r);
    EXPECT_EQ(j["method"], "branches");
    EXPECT_EQ(j["branches"].size(), 8u);
}

TEST(check_equivalence, non_clifford_too_large_is_reported) {
    std::vector<double> th(9, 0.1);
    VerifyBudget b;
    b.max_branch_work = 1e3;
    EXPECT_THROW(check_equivalence(build_dynamic_multi_rz(th), GateSpec::multi_rz(th), b), VerifyError);
}

TEST(check_equivalence, size_mismatch_throws) {
    EXPECT_THROW(check_equivalence(build_dynamic_fanout_v2(3), GateSpec::fanout(4)), CircuitError);
}
