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

#include <bit>
#include <cmath>
#include <complex>
#include <functional>

#include "dyncirc/verify/abc.h"

namespace dyncirc {

using cd = std::complex<double>;

namespace {

void require_n(size_t n) {
    if (n == 0) {
        throw CircuitError("gate size parameter n must be at least 1");
    }
}

void require_angles(const std::vector<double> &angles) {
    if (angles.empty()) {
        throw CircuitError("angle list must be non-empty");
    }
}

bool is_unitary(const Eigen::Matrix2cd &u, double tol) {
    return (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= tol;
}

inline bool bit(size_t x, size_t k) {
    return (x >> k) & 1;
}

}  // namespace

GateSpec GateSpec::fanout(size_t n) {
    require_n(n);
    GateSpec s;
    s.kind = Kind::Fanout;
    s.n = n;
    return s;
}

GateSpec GateSpec::ladder(size_t n, LadderOrientation orientation) {
    require_n(n);
    GateSpec s;
    s.kind = Kind::CnotLadder;
    s.n = n;
    s.orientation = orientation;
    return s;
}

GateSpec GateSpec::long_range_cnot(size_t n) {
    require_n(n);
    GateSpec s;
    s.kind = Kind::LongRangeCnot;
    s.n = n;
    return s;
}

GateSpec GateSpec::swap(size_t n) {
    require_n(n);
    GateSpec s;
    s.kind = Kind::Swap;
    s.n = n;
    return s;
}

GateSpec GateSpec::teleport(size_t n) {
    require_n(n);
    GateSpec s;
    s.kind = Kind::Teleport;
    s.n = n;
    return s;
}

GateSpec GateSpec::multi_rz(std::vector<double> angles) {
    require_angles(angles);
    GateSpec s;
    s.kind = Kind::MultiRz;
    s.n = angles.size();
    s.angles = std::move(angles);
    return s;
}

GateSpec GateSpec::rzz_fan(std::vector<double> angles) {
    require_angles(angles);
    GateSpec s;
    s.kind = Kind::RzzFan;
    s.n = angles.size();
    s.angles = std::move(angles);
    return s;
}

GateSpec GateSpec::controlled_u_fan(std::vector<Eigen::Matrix2cd> unitaries) {
    if (unitaries.empty()) {
        throw CircuitError("controlled-U fan-out needs at least one target unitary");
    }
    for (const auto &u : unitaries) {
        if (!is_unitary(u, 1e-12)) {
            throw CircuitError("controlled-U fan-out given a non-unitary matrix");
        }
    }
    GateSpec s;
    s.kind = Kind::ControlledUFan;
    s.n = unitaries.size();
    s.unitaries = std::move(unitaries);
    return s;
}

GateSpec GateSpec::cart_wheel(std::vector<double> ring, std::vector<double> spokes) {
    if (ring.size() < 3 || ring.size() != spokes.size()) {
        throw CircuitError("cart wheel needs n >= 3 ring angles and as many spoke angles");
    }
    GateSpec s;
    s.kind = Kind::CartWheel;
    s.n = ring.size();
    s.angles = std::move(ring);
    s.spoke_angles = std::move(spokes);
    return s;
}

std::vector<size_t> GateSpec::fixed_zero_inputs() const {
    if (kind == Kind::Teleport) {
        return {n};
    }
    return {};
}

bool GateSpec::is_clifford() const {
    auto all_clifford = [](const std::vector<double> &v) {
        for (double a : v) {
            if (!clifford_angle(a)) {
                return false;
            }
        }
        return true;
    };
    switch (kind) {
        case Kind::MultiRz:
        case Kind::RzzFan:
            return all_clifford(angles);
        case Kind::CartWheel:
            return all_clifford(angles) && all_clifford(spoke_angles);
        case Kind::ControlledUFan:
            return false;
        default:
            return true;
    }
}

std::string GateSpec::name() const {
    switch (kind) {
        case Kind::Fanout:
            return "fanout";
        case Kind::CnotLadder:
            return orientation == LadderOrientation::Down ? "ladder" : "ladder-up";
        case Kind::LongRangeCnot:
            return "lrcnot";
        case Kind::Swap:
            return "swap";
        case Kind::Teleport:
            return "teleport";
        case Kind::MultiRz:
            return "multirz";
        case Kind::RzzFan:
            return "rzzfan";
        case Kind::ControlledUFan:
            return "cufan";
        case Kind::CartWheel:
            return "cartwheel";
    }
    return "?";
}

Circuit build_unitary_star_fanout(size_t n) {
    require_n(n);
    std::set<std::pair<size_t, size_t>> star;
    for (size_t k = 1; k <= n; k++) {
        star.insert({0, k});
    }
    Circuit c(n + 1, 0, Connectivity::graph(std::move(star)));
    for (size_t k = 1; k <= n; k++) {
        c.cx(0, k);
    }
    return c;
}

Circuit build_unitary_line_fanout(size_t n) {
    require_n(n);
    Circuit c(n + 1, 0);
    // Difference step first (x_k ^= x_{k-1}, highest k first), then a prefix ladder
    // over all qubits telescopes every target into x_k ^ x_0.
    for (size_t k = n; k >= 2; k--) {
        c.cx(k - 1, k);
    }
    for (size_t k = 0; k < n; k++) {
        c.cx(k, k + 1);
    }
    return c;
}

Circuit build_unitary_ladder(size_t n, LadderOrientation orientation) {
    require_n(n);
    Circuit c(n + 1, 0);
    if (orientation == LadderOrientation::Down) {
        for (size_t k = 0; k < n; k++) {
            c.cx(k, k + 1);
        }
    } else {
        for (size_t k = n; k >= 1; k--) {
            c.cx(k, k - 1);
        }
    }
    return c;
}

Circuit build_unitary_long_range_cnot(size_t n) {
    require_n(n);
    Circuit c(n + 1, 0);
    if (n == 1) {
        c.cx(0, 1);
        return c;
    }
    // Move the control value rightwards and the target value leftwards until they
    // meet next to the middle, apply one CX there, then undo both moves.
    size_t mid = (n - 1) / 2;
    std::vector<std::pair<size_t, size_t>> left, right;
    for (size_t k = 0; k < mid; k++) {
        left.push_back({k + 1, k});
        left.push_back({k, k + 1});
    }
    for (size_t k = n; k > mid + 1; k--) {
        right.push_back({k, k - 1});
        right.push_back({k - 1, k});
    }
    for (auto [a, b] : left) {
        c.cx(a, b);
    }
    for (auto [a, b] : right) {
        c.cx(a, b);
    }
    c.cx(mid, mid + 1);
    for (auto it = right.rbegin(); it != right.rend(); ++it) {
        c.cx(it->first, it->second);
    }
    for (auto it = left.rbegin(); it != left.rend(); ++it) {
        c.cx(it->first, it->second);
    }
    return c;
}

namespace {

void append_controlled_u(Circuit &c, size_t control, size_t target, const Eigen::Matrix2cd &u);

void append_ry(Circuit &c, size_t q, double theta) {
    // R_Y = S H R_Z H S^dagger.
    c.sdg(q);
    c.h(q);
    c.rz(q, theta);
    c.h(q);
    c.s(q);
}

void append_controlled_u(Circuit &c, size_t control, size_t target, const Eigen::Matrix2cd &u) {
    auto d = abc_decompose(u);
    c.rz(target, (d.delta - d.beta) / 2);
    c.cx(control, target);
    c.rz(target, -(d.delta + d.beta) / 2);
    append_ry(c, target, -d.gamma / 2);
    c.cx(control, target);
    append_ry(c, target, d.gamma / 2);
    c.rz(target, d.beta);
    c.rz(control, d.theta);
}

}  // namespace

Circuit reference_circuit(const GateSpec &spec) {
    size_t n = spec.n;
    Circuit c(n + 1, 0, Connectivity::complete(n + 1));
    switch (spec.kind) {
        case GateSpec::Kind::Fanout:
            for (size_t k = 1; k <= n; k++) {
                c.cx(0, k);
            }
            break;
        case GateSpec::Kind::CnotLadder:
            if (spec.orientation == LadderOrientation::Down) {
                for (size_t k = 0; k < n; k++) {
                    c.cx(k, k + 1);
                }
            } else {
                for (size_t k = n; k >= 1; k--) {
                    c.cx(k, k - 1);
                }
            }
            break;
        case GateSpec::Kind::LongRangeCnot:
            c.cx(0, n);
            break;
        case GateSpec::Kind::Swap:
        case GateSpec::Kind::Teleport:
            c.cx(0, n);
            c.cx(n, 0);
            c.cx(0, n);
            break;
        case GateSpec::Kind::MultiRz:
            for (size_t k = 0; k < n; k++) {
                c.cx(k, k + 1);
            }
            for (size_t k = 1; k <= n; k++) {
                c.rz(k, spec.angles[k - 1]);
            }
            for (size_t k = n; k >= 1; k--) {
                c.cx(k - 1, k);
            }
            break;
        case GateSpec::Kind::RzzFan:
            for (size_t k = 1; k <= n; k++) {
                c.cx(0, k);
                c.rz(k, spec.angles[k - 1]);
                c.cx(0, k);
            }
            break;
        case GateSpec::Kind::ControlledUFan:
            for (size_t k = 1; k <= n; k++) {
                append_controlled_u(c, 0, k, spec.unitaries[k - 1]);
            }
            break;
        case GateSpec::Kind::CartWheel:
            for (size_t k = 1; k <= n; k++) {
                c.cx(0, k);
                c.rz(k, spec.spoke_angles[k - 1]);
                c.cx(0, k);
            }
            for (size_t k = 1; k <= n; k++) {
                size_t a = k, b = k == n ? 1 : k + 1;
                c.cx(a, b);
                c.rz(b, spec.angles[k - 1]);
                c.cx(a, b);
            }
            break;
    }
    return c;
}

Eigen::Matrix2cd rz_matrix(double theta) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::polar(1.0, -theta / 2);
    m(1, 1) = std::polar(1.0, theta / 2);
    return m;
}

Eigen::Matrix2cd ry_matrix(double theta) {
    Eigen::Matrix2cd m;
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    m << c, -s, s, c;
    return m;
}

Eigen::MatrixXcd build_target_operator(const GateSpec &spec) {
    size_t n = spec.n;
    if (n > 12) {
        throw CircuitError("target operator too large for a dense matrix (n > 12)");
    }
    size_t d = size_t{1} << (n + 1);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero((Eigen::Index)d, (Eigen::Index)d);

    auto permutation = [&](const std::function<size_t(size_t)> &f) {
        for (size_t x = 0; x < d; x++) {
            u((Eigen::Index)f(x), (Eigen::Index)x) = 1;
        }
    };
    auto diagonal = [&](const std::function<double(size_t)> &phase) {
        for (size_t x = 0; x < d; x++) {
            u((Eigen::Index)x, (Eigen::Index)x) = std::polar(1.0, phase(x));
        }
    };
    // exp(-i theta/2 Z..Z) on the bits in mask.
    auto zz_phase = [](size_t x, size_t mask, double theta) {
        return std::popcount(x & mask) % 2 ? theta / 2 : -theta / 2;
    };

    switch (spec.kind) {
        case GateSpec::Kind::Fanout:
            permutation([&](size_t x) {
                return bit(x, 0) ? x ^ (d - 2) : x;
            });
            break;
        case GateSpec::Kind::CnotLadder:
            permutation([&](size_t x) {
                size_t y = 0;
                bool acc = false;
                if (spec.orientation == LadderOrientation::Down) {
                    for (size_t k = 0; k <= n; k++) {
                        acc ^= bit(x, k);
                        y |= size_t{acc} << k;
                    }
                } else {
                    for (size_t k = n + 1; k-- > 0;) {
                        acc ^= bit(x, k);
                        y |= size_t{acc} << k;
                    }
                }
                return y;
            });
            break;
        case GateSpec::Kind::LongRangeCnot:
            permutation([&](size_t x) {
                return bit(x, 0) ? x ^ (size_t{1} << n) : x;
            });
            break;
        case GateSpec::Kind::Swap:
        case GateSpec::Kind::Teleport:
            permutation([&](size_t x) {
                size_t a = bit(x, 0), b = bit(x, n);
                return (x & ~(size_t{1} | (size_t{1} << n))) | b | (a << n);
            });
            break;
        case GateSpec::Kind::MultiRz:
            diagonal([&](size_t x) {
                double p = 0;
                for (size_t k = 1; k <= n; k++) {
                    p += zz_phase(x, (size_t{1} << (k + 1)) - 1, spec.angles[k - 1]);
                }
                return p;
            });
            break;
        case GateSpec::Kind::RzzFan:
            diagonal([&](size_t x) {
                double p = 0;
                for (size_t k = 1; k <= n; k++) {
                    p += zz_phase(x, 1 | (size_t{1} << k), spec.angles[k - 1]);
                }
                return p;
            });
            break;
        case GateSpec::Kind::CartWheel:
            diagonal([&](size_t x) {
                double p = 0;
                for (size_t k = 1; k <= n; k++) {
                    p += zz_phase(x, 1 | (size_t{1} << k), spec.spoke_angles[k - 1]);
                    size_t next = k == n ? 1 : k + 1;
                    p += zz_phase(x, (size_t{1} << k) | (size_t{1} << next), spec.angles[k - 1]);
                }
                return p;
            });
            break;
        case GateSpec::Kind::ControlledUFan:
            for (size_t x = 0; x < d; x++) {
                if (!bit(x, 0)) {
                    u((Eigen::Index)x, (Eigen::Index)x) = 1;
                    continue;
                }
                // Column x of (I (x) U_n (x) ... (x) U_1) restricted to control = 1.
                for (size_t y = 0; y < d; y++) {
                    if (!bit(y, 0)) {
                        continue;
                    }
                    cd amp = 1;
                    for (size_t k = 1; k <= n && amp != cd(0); k++) {
                        amp *= spec.unitaries[k - 1]((Eigen::Index)bit(y, k), (Eigen::Index)bit(x, k));
                    }
                    u((Eigen::Index)y, (Eigen::Index)x) = amp;
                }
            }
            break;
    }
    return u;
}

}  // namespace dyncirc
