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

#include "dyncirc/verify/abc.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dyncirc/builders/reference.h"

namespace dyncirc {

AbcDecomposition abc_decompose(const Eigen::Matrix2cd &u) {
    if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("abc_decompose needs a unitary matrix");
    }
    AbcDecomposition r;
    // Strip the global phase so that v is special unitary: v = [[a, -b*], [b, a*]].
    double alpha = std::arg(u.determinant()) / 2;
    Eigen::Matrix2cd v = u * std::polar(1.0, -alpha);
    std::complex<double> a = v(0, 0);
    std::complex<double> b = v(1, 0);
    double gamma = 2 * std::atan2(std::abs(b), std::abs(a));
    double sum = 0;   // beta + delta
    double diff = 0;  // beta - delta
    // Near the degenerate points only one of the two phase combinations is defined;
    // the other is set to zero so that the remaining rotation is pure Z.
    if (std::abs(a) > 1e-9) {
        sum = -2 * std::arg(a);
    }
    if (std::abs(b) > 1e-9) {
        diff = 2 * std::arg(b);
    }
    if (std::abs(a) <= 1e-9) {
        sum = diff;
    }
    if (std::abs(b) <= 1e-9) {
        diff = sum;
    }
    double beta = (sum + diff) / 2;
    double delta = (sum - diff) / 2;

    // The chosen branch of arg(det)/2 may leave v = -R_Z R_Y R_Z; fold the sign into alpha.
    Eigen::Matrix2cd euler = rz_matrix(beta) * ry_matrix(gamma) * rz_matrix(delta);
    if ((euler - v).cwiseAbs().maxCoeff() > 1e-8) {
        alpha += M_PI;
    }

    r.beta = beta;
    r.gamma = gamma;
    r.delta = delta;
    r.theta = alpha;
    r.A = rz_matrix(beta) * ry_matrix(gamma / 2);
    r.B = ry_matrix(-gamma / 2) * rz_matrix(-(delta + beta) / 2);
    r.C = rz_matrix((delta - beta) / 2);
    return r;
}

}  // namespace dyncirc
