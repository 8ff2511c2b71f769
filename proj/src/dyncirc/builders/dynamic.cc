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

#include "dyncirc/builders/line_builder.h"
#include "dyncirc/verify/abc.h"

namespace dyncirc {

namespace {

using LB = LineBuilder;

void require_n(size_t n) {
    if (n < 1) {
        throw CircuitError("construction needs n >= 1");
    }
}

Corrections from_chain(const LB::ChainParities &p, size_t src, size_t dst) {
    Corrections c;
    c.add_x(dst, p.x_on_dst);
    c.add_z(src, p.z_on_src);
    return c;
}

std::vector<size_t> ancilla_range(size_t first, size_t last) {
    std::vector<size_t> out;
    for (size_t k = first; k < last; k++) {
        out.push_back(LB::a(k));
    }
    return out;
}

// Moves the state of src into dst (starting in |0>) and leaves src reset.
void teleport(LB &b, size_t src, const std::vector<size_t> &relays, size_t dst) {
    auto p = b.chain_cx(src, relays, dst);
    size_t s = b.measure(src, Basis::X);
    b.circuit().reset(src);
    Corrections c;
    c.add_x(dst, p.x_on_dst);
    c.add_z(dst, p.z_on_src);
    c.add_z(dst, {s});
    b.emit(c);
}

void append_ry(Circuit &c, size_t q, double theta) {
    c.sdg(q);
    c.h(q);
    c.rz(q, theta);
    c.h(q);
    c.s(q);
}

}  // namespace

Circuit build_dynamic_ladder(size_t n, LadderOrientation orientation) {
    require_n(n);
    LB b(n + 1);
    b.emit(orientation == LadderOrientation::Down ? b.ladder_down(0, n) : b.ladder_up(0, n));
    return b.take();
}

Circuit build_dynamic_fanout_v1(size_t n) {
    require_n(n);
    LB b(n + 1);
    b.emit(b.fanout_v1(n));
    return b.take();
}

Circuit build_dynamic_fanout_v2(size_t n) {
    require_n(n);
    LB b(n + 1);
    b.emit(b.fanout_v2(n));
    return b.take();
}

Circuit build_dynamic_long_range_cnot(size_t n) {
    require_n(n);
    LB b(n + 1);
    b.emit(from_chain(b.chain_cx(LB::q(0), ancilla_range(0, n), LB::q(n)), LB::q(0), LB::q(n)));
    return b.take();
}

Circuit build_dynamic_teleportation(size_t n) {
    require_n(n);
    LB b(n + 1);
    teleport(b, LB::q(0), ancilla_range(0, n), LB::q(n));
    return b.take();
}

Circuit build_dynamic_swap(size_t n) {
    require_n(n);
    LB b(n + 1);
    size_t hub = LB::a(n - 1);
    auto out = ancilla_range(0, n - 1);
    teleport(b, LB::q(0), out, hub);
    Circuit &c = b.circuit();
    c.cx(hub, LB::q(n));
    c.cx(LB::q(n), hub);
    c.cx(hub, LB::q(n));
    std::vector<size_t> back(out.rbegin(), out.rend());
    teleport(b, hub, back, LB::q(0));
    return b.take();
}

Circuit build_dynamic_multi_rz(const std::vector<double> &angles) {
    size_t n = angles.size();
    require_n(n);
    LB b(n + 1);
    b.emit(b.ladder_down(0, n));
    for (size_t k = 1; k <= n; k++) {
        b.circuit().rz(LB::q(k), angles[k - 1]);
    }
    b.emit(b.adjacent_difference(0, n));
    return b.take();
}

Circuit build_dynamic_rzz_fan(const std::vector<double> &angles, RzzFanVariant variant) {
    size_t n = angles.size();
    require_n(n);
    LB b(n + 1);
    if (variant == RzzFanVariant::SingleQubitRz) {
        b.emit(b.fanout_v2(n));
        for (size_t k = 1; k <= n; k++) {
            b.circuit().rz(LB::q(k), angles[k - 1]);
        }
        b.emit(b.fanout_v2(n));
        return b.take();
    }
    // Fan-out as difference map then prefix ladder; undo it as difference map then prefix ladder on q1..qn.
    b.emit(b.fanout_v1(n));
    for (size_t k = 1; k <= n; k++) {
        b.circuit().rz(LB::q(k), angles[k - 1]);
    }
    b.emit(b.adjacent_difference(0, n));
    if (n >= 2) {
        b.emit(b.ladder_down(1, n));
    }
    return b.take();
}

Circuit build_dynamic_controlled_u_fan(const std::vector<Eigen::Matrix2cd> &unitaries) {
    size_t n = unitaries.size();
    require_n(n);
    std::vector<AbcDecomposition> d;
    for (const auto &u : unitaries) {
        d.push_back(abc_decompose(u));
    }
    LB b(n + 1);
    Circuit &c = b.circuit();
    for (size_t k = 1; k <= n; k++) {
        c.rz(LB::q(k), (d[k - 1].delta - d[k - 1].beta) / 2);
    }
    b.emit(b.fanout_v2(n));
    for (size_t k = 1; k <= n; k++) {
        c.rz(LB::q(k), -(d[k - 1].delta + d[k - 1].beta) / 2);
        append_ry(c, LB::q(k), -d[k - 1].gamma / 2);
    }
    b.emit(b.fanout_v2(n));
    double phase = 0;
    for (size_t k = 1; k <= n; k++) {
        append_ry(c, LB::q(k), d[k - 1].gamma / 2);
        c.rz(LB::q(k), d[k - 1].beta);
        phase += d[k - 1].theta;
    }
    // Controlled global phase e^{i theta} on the control, up to an overall phase.
    c.rz(LB::q(0), phase);
    return b.take();
}

Circuit build_dynamic_cart_wheel(const std::vector<double> &ring, const std::vector<double> &spokes) {
    size_t n = ring.size();
    if (n < 3 || spokes.size() != n) {
        throw CircuitError("cart wheel needs n >= 3 ring angles and as many spoke angles");
    }
    LB b(n + 1);
    Circuit &c = b.circuit();
    b.emit(b.fanout_v2(n));
    for (size_t k = 1; k <= n; k++) {
        c.rz(LB::q(k), spokes[k - 1]);
    }
    b.emit(b.fanout_v2(n));

    // Neighbouring ring edges through a clean ancilla; odd and even edges share endpoints so they alternate.
    auto skip_cx = [&](size_t k) {
        c.cx(LB::q(k), LB::a(k));
        c.cx(LB::a(k), LB::q(k + 1));
        c.cx(LB::q(k), LB::a(k));
    };
    for (size_t parity = 1; parity <= 2; parity++) {
        for (size_t k = parity; k < n; k += 2) {
            skip_cx(k);
        }
        for (size_t k = parity; k < n; k += 2) {
            c.rz(LB::q(k + 1), ring[k - 1]);
        }
        for (size_t k = parity; k < n; k += 2) {
            skip_cx(k);
        }
    }

    // Closing edge q_n - q_1 over the ancillas between them.
    auto relays = ancilla_range(1, n);
    b.emit(from_chain(b.chain_cx(LB::q(1), relays, LB::q(n)), LB::q(1), LB::q(n)));
    c.rz(LB::q(n), ring[n - 1]);
    b.emit(from_chain(b.chain_cx(LB::q(1), relays, LB::q(n)), LB::q(1), LB::q(n)));
    return b.take();
}

Circuit build_dynamic(const GateSpec &spec) {
    switch (spec.kind) {
        case GateSpec::Kind::Fanout:
            return build_dynamic_fanout_v2(spec.n);
        case GateSpec::Kind::CnotLadder:
            return build_dynamic_ladder(spec.n, spec.orientation);
        case GateSpec::Kind::LongRangeCnot:
            return build_dynamic_long_range_cnot(spec.n);
        case GateSpec::Kind::Swap:
            return build_dynamic_swap(spec.n);
        case GateSpec::Kind::Teleport:
            return build_dynamic_teleportation(spec.n);
        case GateSpec::Kind::MultiRz:
            return build_dynamic_multi_rz(spec.angles);
        case GateSpec::Kind::RzzFan:
            return build_dynamic_rzz_fan(spec.angles, RzzFanVariant::SingleQubitRz);
        case GateSpec::Kind::ControlledUFan:
            return build_dynamic_controlled_u_fan(spec.unitaries);
        case GateSpec::Kind::CartWheel:
            return build_dynamic_cart_wheel(spec.angles, spec.spoke_angles);
    }
    throw CircuitError("unknown gate kind");
}

}  // namespace dyncirc
