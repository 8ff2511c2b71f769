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

#ifndef _DYNCIRC_BUILDERS_DYNAMIC_H
#define _DYNCIRC_BUILDERS_DYNAMIC_H

#include <Eigen/Dense>
#include <vector>

#include "dyncirc/builders/reference.h"
#include "dyncirc/circuit/circuit.h"

namespace dyncirc {

// All builders below lay out n+1 system qubits and n ancillas on a line,
// q_k at position 2k and a_k at 2k+1. Ancillas end measured and reset.
// Depth remarks refer to cnot_depth.

/// CX ladder via |+> ancillas. Depth 2, 2n CX, n measurements, 1 round.
Circuit build_dynamic_ladder(size_t n, LadderOrientation orientation = LadderOrientation::Down);

/// Fan-out as two fused ladder stages (difference map, then prefix ladder).
/// 4n-2 CX, 2n-1 measurements, 2 rounds, depth 4 (n >= 2; n = 1 degenerates to a single ladder).
Circuit build_dynamic_fanout_v1(size_t n);

/// Fan-out with alternating |+>/|0> ancillas and one feed-forward round.
/// 3n-1 CX, n measurements, depth 5 for n >= 3 (2 and 4 for n = 1, 2).
Circuit build_dynamic_fanout_v2(size_t n);

/// CX(q0, qn) leaving q1..q(n-1) untouched. 4n-2 CX, n measurements,
/// depth 7 for n >= 3 (2 and 5 for n = 1, 2).
Circuit build_dynamic_long_range_cnot(size_t n);

/// Moves the state of q0 to qn, which must start in |0>. Measures q0 and the ancillas.
Circuit build_dynamic_teleportation(size_t n);

/// SWAP(q0, qn) as two teleportations around a local swap next to qn. 2 rounds.
Circuit build_dynamic_swap(size_t n);

/// prod_k exp(-i theta_k/2 Z_0 ... Z_k), k = 1..n, with n = angles.size().
Circuit build_dynamic_multi_rz(const std::vector<double> &angles);

enum class RzzFanVariant { Sandwich4Ladders, SingleQubitRz };

/// prod_k exp(-i theta_k/2 Z_0 Z_k).
Circuit build_dynamic_rzz_fan(const std::vector<double> &angles, RzzFanVariant variant);

/// prod_k controlled-U_k with control q0 and target qk.
Circuit build_dynamic_controlled_u_fan(const std::vector<Eigen::Matrix2cd> &unitaries);

/// Spokes exp(-i s_k/2 Z_0 Z_k) and ring exp(-i r_k/2 Z_k Z_(k+1)) closing q_n to q_1.
/// Four measurement rounds for every n >= 3.
Circuit build_dynamic_cart_wheel(const std::vector<double> &ring, const std::vector<double> &spokes);

/// The dynamic construction for a spec, using fan-out v2 for Fanout.
Circuit build_dynamic(const GateSpec &spec);

}  // namespace dyncirc

#endif
