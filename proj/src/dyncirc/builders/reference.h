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

#ifndef _DYNCIRC_BUILDERS_REFERENCE_H
#define _DYNCIRC_BUILDERS_REFERENCE_H

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dyncirc/circuit/circuit.h"

namespace dyncirc {

enum class LadderOrientation { Down, Up };

/// The ideal gate a construction is supposed to implement on its n+1 system qubits.
struct GateSpec {
    enum class Kind { Fanout, CnotLadder, LongRangeCnot, Swap, Teleport, MultiRz, RzzFan, ControlledUFan, CartWheel };

    Kind kind = Kind::Fanout;
    size_t n = 1;
    LadderOrientation orientation = LadderOrientation::Down;
    std::vector<double> angles;          // MultiRz, RzzFan, CartWheel ring
    std::vector<double> spoke_angles;    // CartWheel only
    std::vector<Eigen::Matrix2cd> unitaries;

    static GateSpec fanout(size_t n);
    static GateSpec ladder(size_t n, LadderOrientation orientation = LadderOrientation::Down);
    static GateSpec long_range_cnot(size_t n);
    static GateSpec swap(size_t n);
    /// Moves q0 to qn. Only inputs with qn in |0> are meaningful.
    static GateSpec teleport(size_t n);
    static GateSpec multi_rz(std::vector<double> angles);
    static GateSpec rzz_fan(std::vector<double> angles);
    static GateSpec controlled_u_fan(std::vector<Eigen::Matrix2cd> unitaries);
    static GateSpec cart_wheel(std::vector<double> ring, std::vector<double> spokes);

    size_t num_system() const {
        return n + 1;
    }
    /// System qubits whose input is fixed to |0>; equivalence is only checked on that subspace.
    std::vector<size_t> fixed_zero_inputs() const;
    bool is_clifford() const;
    std::string name() const;
};

Circuit build_unitary_star_fanout(size_t n);
Circuit build_unitary_line_fanout(size_t n);
Circuit build_unitary_ladder(size_t n, LadderOrientation orientation = LadderOrientation::Down);
Circuit build_unitary_long_range_cnot(size_t n);

/// A measurement-free circuit over the system qubits implementing the spec.
/// Connectivity is all-to-all; used as the stabilizer-check target.
Circuit reference_circuit(const GateSpec &spec);

/// Dense unitary of the ideal gate, qubit 0 least significant.
Eigen::MatrixXcd build_target_operator(const GateSpec &spec);

/// exp(-i theta/2 Z), the convention used throughout.
Eigen::Matrix2cd rz_matrix(double theta);
Eigen::Matrix2cd ry_matrix(double theta);

}  // namespace dyncirc

#endif
