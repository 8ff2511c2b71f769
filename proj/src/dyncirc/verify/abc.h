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

#ifndef _DYNCIRC_VERIFY_ABC_H
#define _DYNCIRC_VERIFY_ABC_H

#include <Eigen/Dense>

namespace dyncirc {

/// U = e^{i theta} A X B X C with A B C = I.
///
/// Euler form U = e^{i alpha} R_Z(beta) R_Y(gamma) R_Z(delta) and
///   A = R_Z(beta) R_Y(gamma/2)
///   B = R_Y(-gamma/2) R_Z(-(delta+beta)/2)
///   C = R_Z((delta-beta)/2)
///   theta = alpha
struct AbcDecomposition {
    Eigen::Matrix2cd A, B, C;
    double theta = 0;
    double beta = 0;
    double gamma = 0;
    double delta = 0;
};

/// Throws std::invalid_argument when u is not unitary to 1e-12.
AbcDecomposition abc_decompose(const Eigen::Matrix2cd &u);

}  // namespace dyncirc

#endif
