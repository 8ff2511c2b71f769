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


#include "dyncirc/circuit/qasm.h"

#include <gtest/gtest.h>

#include "dyncirc/builders/dynamic.h"
#include "dyncirc/builders/reference.h"

using namespace dyncirc;

namespace {

ParseError parse_error(const std::string &text) {
    try {
        parse_qasm(text);
    } catch (const ParseError &e) {
        return e;
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return ParseError(0, 0, "");
}

}  // namespace

TEST(qasm, round_trip_builders) {
    std::vector<Circuit> cases = {
        build_dynamic_ladder(3),
        build_dynamic_fanout_v1(3),
        build_dynamic_fanout_v2(4),
        build_dynamic_long_range_cnot(3),
        build_dynamic_swap(2),
        build_dynamic_multi_rz({0.1, -2.5, 1e-7}),
        build_unitary_star_fanout(3),
    };
    for (const auto &c : cases) {
        auto back = parse_qasm(to_qasm(c));
        EXPECT_EQ(back, c) << to_qasm(c);
    }
}

TEST(qasm, x_measurement_is_wrapped_in_hadamards) {
    Circuit c(1, 1);
    c.measure(0, 0, Basis::X);
    auto text = to_qasm(c);
    EXPECT_NE(text.find("pragma dyncirc measure_x\nh q[0];\nc[0] = measure q[0];\nh q[0];"), std::string::npos) << text;
    EXPECT_EQ(parse_qasm(text).instructions()[0].basis, Basis::X);
}

TEST(qasm, defaults_without_pragmas) {
    auto c = parse_qasm(
        "OPENQASM 3.0;\n"
        "qubit[3] q;\n"
        "bit[1] c;\n"
        "cx q[0], q[2];\n"
        "rz(pi/4) q[1];\n"
        "c[0] = measure q[2];\n"
        "if (c[0] == 0) x q[1];\n");
    EXPECT_EQ(c.num_system(), 3u);
    EXPECT_TRUE(c.connectivity().allows(0, 2));
    EXPECT_NEAR(c.instructions()[1].angle, 0.7853981633974483, 1e-15);
    EXPECT_TRUE(c.instructions()[3].condition->negate);
}

TEST(qasm, parity_conditions) {
    auto c = parse_qasm(
        "OPENQASM 3.0;\nqubit[2] q;\nbit[2] c;\n"
        "c[0] = measure q[0];\nc[1] = measure q[1];\n"
        "if (c[0] ^ c[1] == 1) z q[0];\n");
    EXPECT_EQ(c.instructions()[2].condition->bits, (std::vector<size_t>{0, 1}));
}

TEST(qasm, errors_carry_positions) {
    auto e = parse_error("OPENQASM 3.0;\nqubit[2] q;\nfoo q[0];\n");
    EXPECT_EQ(e.line, 3u);
    EXPECT_EQ(e.column, 1u);
    e = parse_error("OPENQASM 3.0;\nqubit[2] q;\nh q[0]\nh q[1];\n");
    EXPECT_EQ(e.line, 4u);
    e = parse_error("OPENQASM 3.0;\nqubit[2] q;\n  h q[7];\n");
    EXPECT_EQ(e.line, 3u);
    EXPECT_EQ(e.column, 3u);
    e = parse_error("OPENQASM 2.0;\n");
    EXPECT_EQ(e.line, 1u);
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
}

TEST(qasm, rejects_bad_structure) {
    parse_error("OPENQASM 3.0;\nqubit[2] q;\nbit[1] c;\nif (c[0] == 1) x q[0];\n");  // unwritten bit
    parse_error("OPENQASM 3.0;\nqubit[2] q;\nbit[1] c;\nc[0] = measure q[0];\nif (c[0] == 1) cx q[0], q[1];\n");
    parse_error("OPENQASM 3.0;\npragma dyncirc roles SAS\nqubit[2] q;\n");
    parse_error("OPENQASM 3.0;\nqubit[1] q;\nbit[1] c;\npragma dyncirc measure_x\nx q[0];\n");
    parse_error("OPENQASM 3.0;\nqubit[1] q;\nbit[1] c;\npragma dyncirc measure_x\nh q[0];\nc[0] = measure q[0];\n");
    parse_error("OPENQASM 3.0;\npragma dyncirc connectivity line\nqubit[3] q;\ncx q[0], q[2];\n");
    parse_error("OPENQASM 3.0;\nqubit[1] q;\n/* open");
}
