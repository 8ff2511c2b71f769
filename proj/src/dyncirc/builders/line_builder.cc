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

#include "dyncirc/builders/line_builder.h"

#include <algorithm>

namespace dyncirc {

namespace {

void xor_into(std::vector<size_t> &acc, const std::vector<size_t> &bits) {
    for (auto b : bits) {
        auto it = std::find(acc.begin(), acc.end(), b);
        if (it == acc.end()) {
            acc.push_back(b);
        } else {
            acc.erase(it);
        }
    }
}

struct Timed {
    size_t layer;
    size_t control;
    size_t target;
};

}  // namespace

void Corrections::add_x(size_t qubit, const std::vector<size_t> &bits) {
    xor_into(x[qubit], bits);
}

void Corrections::add_z(size_t qubit, const std::vector<size_t> &bits) {
    xor_into(z[qubit], bits);
}

void Corrections::merge(const Corrections &other) {
    for (const auto &[q, bits] : other.x) {
        add_x(q, bits);
    }
    for (const auto &[q, bits] : other.z) {
        add_z(q, bits);
    }
}

bool Corrections::empty() const {
    for (const auto &[q, bits] : x) {
        if (!bits.empty()) {
            return false;
        }
    }
    for (const auto &[q, bits] : z) {
        if (!bits.empty()) {
            return false;
        }
    }
    return true;
}

LineBuilder::LineBuilder(size_t num_system) : circuit_(Circuit::alternating_line(num_system, 0)) {
}

size_t LineBuilder::measure(size_t qubit, Basis basis) {
    size_t b = circuit_.add_clbits(1);
    circuit_.measure(qubit, b, basis);
    return b;
}

void LineBuilder::emit(const Corrections &c) {
    std::vector<size_t> qubits;
    for (const auto &[q, bits] : c.x) {
        qubits.push_back(q);
    }
    for (const auto &[q, bits] : c.z) {
        qubits.push_back(q);
    }
    std::sort(qubits.begin(), qubits.end());
    qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
    for (auto q : qubits) {
        auto xi = c.x.find(q);
        if (xi != c.x.end() && !xi->second.empty()) {
            circuit_.append(Instruction::gate(GateKind::X, q).conditioned(ClassicalCondition(xi->second)));
        }
        auto zi = c.z.find(q);
        if (zi != c.z.end() && !zi->second.empty()) {
            circuit_.append(Instruction::gate(GateKind::Z, q).conditioned(ClassicalCondition(zi->second)));
        }
    }
}

Corrections LineBuilder::ladder_down(size_t first, size_t last) {
    Corrections out;
    for (size_t k = first; k < last; k++) {
        circuit_.h(a(k));
    }
    for (size_t k = first; k < last; k++) {
        circuit_.cx(a(k), q(k + 1));
    }
    for (size_t k = first; k < last; k++) {
        circuit_.cx(q(k), a(k));
    }
    // m_k = a_k ^ a_(k-1) ^ x_k, so the prefix parity of m recovers a_k up to the prefix of x.
    std::vector<size_t> prefix;
    for (size_t k = first; k < last; k++) {
        prefix.push_back(measure(a(k), Basis::Z));
        out.add_x(q(k + 1), prefix);
    }
    for (size_t k = first; k < last; k++) {
        circuit_.reset(a(k));
    }
    return out;
}

Corrections LineBuilder::ladder_up(size_t first, size_t last) {
    Corrections out;
    for (size_t k = first; k < last; k++) {
        circuit_.h(a(k));
    }
    for (size_t k = first; k < last; k++) {
        circuit_.cx(a(k), q(k));
    }
    for (size_t k = first; k < last; k++) {
        circuit_.cx(q(k + 1), a(k));
    }
    std::vector<size_t> m;
    for (size_t k = first; k < last; k++) {
        m.push_back(measure(a(k), Basis::Z));
    }
    for (size_t k = first; k < last; k++) {
        std::vector<size_t> suffix(m.begin() + (long)(k - first), m.end());
        out.add_x(q(k), suffix);
        circuit_.reset(a(k));
    }
    return out;
}

Corrections LineBuilder::adjacent_difference(size_t first, size_t last) {
    Corrections out;
    for (size_t k = first; k < last; k++) {
        circuit_.cx(q(k), a(k));
    }
    for (size_t k = first; k < last; k++) {
        circuit_.cx(a(k), q(k + 1));
    }
    // a_k holds the input value of q_k, which is the prefix parity of the outputs q_first..q_k.
    std::vector<size_t> r;
    for (size_t k = first; k < last; k++) {
        r.push_back(measure(a(k), Basis::X));
    }
    for (size_t k = first; k < last; k++) {
        circuit_.reset(a(k));
    }
    for (size_t l = first; l < last; l++) {
        std::vector<size_t> suffix(r.begin() + (long)(l - first), r.end());
        out.add_z(q(l), suffix);
    }
    return out;
}

Corrections LineBuilder::fanout_v2(size_t n) {
    Corrections out;
    std::vector<Timed> gates;
    for (size_t j = 0; j < n; j += 2) {
        circuit_.h(a(j));
    }
    gates.push_back({3, q(0), a(0)});
    for (size_t j = 1; j < n; j++) {
        size_t base = j % 2 == 1 ? 1 : 3;
        gates.push_back({base, q(j), a(j)});
        gates.push_back({base + 1, a(j - 1), q(j)});
        gates.push_back({base + 2, q(j), a(j)});
    }
    gates.push_back({(n - 1) % 2 == 0 ? size_t{1} : size_t{4}, a(n - 1), q(n)});
    std::stable_sort(gates.begin(), gates.end(), [](const Timed &x, const Timed &y) {
        return x.layer < y.layer;
    });
    for (const auto &g : gates) {
        circuit_.cx(g.control, g.target);
    }
    std::vector<size_t> bit_of(n);
    for (size_t j = 0; j < n; j++) {
        bit_of[j] = measure(a(j), j % 2 == 0 ? Basis::Z : Basis::X);
    }
    for (size_t j = 0; j < n; j++) {
        circuit_.reset(a(j));
    }
    for (size_t k = 1; k <= n; k++) {
        std::vector<size_t> bits;
        for (size_t j = 0; j + 1 <= k; j += 2) {
            bits.push_back(bit_of[j]);
        }
        out.add_x(q(k), bits);
    }
    std::vector<size_t> zbits;
    for (size_t j = 1; j < n; j += 2) {
        zbits.push_back(bit_of[j]);
    }
    out.add_z(q(0), zbits);
    return out;
}

Corrections LineBuilder::fanout_v1(size_t n) {
    if (n >= 2) {
        emit(adjacent_difference(1, n));
    }
    return ladder_down(0, n);
}

LineBuilder::ChainParities LineBuilder::chain_cx(size_t src, const std::vector<size_t> &relays, size_t dst) {
    std::vector<size_t> members{src};
    members.insert(members.end(), relays.begin(), relays.end());
    members.push_back(dst);
    size_t R = relays.size();

    std::vector<Timed> gates;
    // Skip orders: A = (s,m),(m,r),(s,m),(m,r); B = (m,r),(s,m),(m,r),(s,m).
    // Both equal CX(s, r) and restore the skipped qubit m.
    // A native hop goes in `native`; a skip occupies four layers from `start`.
    auto hop = [&](size_t from, size_t to, size_t native, size_t start, bool order_a) {
        size_t gap = from > to ? from - to : to - from;
        if (gap == 1) {
            gates.push_back({native, from, to});
            return;
        }
        if (gap != 2) {
            throw CircuitError("chain members must be adjacent or one qubit apart");
        }
        size_t mid = (from + to) / 2;
        if (order_a) {
            gates.push_back({start, from, mid});
            gates.push_back({start + 1, mid, to});
            gates.push_back({start + 2, from, mid});
            gates.push_back({start + 3, mid, to});
        } else {
            gates.push_back({start, mid, to});
            gates.push_back({start + 1, from, mid});
            gates.push_back({start + 2, mid, to});
            gates.push_back({start + 3, from, mid});
        }
    };

    for (size_t j = 0; j < R; j += 2) {
        circuit_.h(relays[j]);
    }
    for (size_t h = 0; h <= R; h++) {
        size_t from = members[h];
        size_t to = members[h + 1];
        if (R == 0) {
            hop(from, to, 1, 1, true);
        } else if (h == 0) {
            // Relay 0 hands its value on during layers 1-4 and only then receives.
            hop(from, to, 4, 4, false);
        } else if ((h - 1) % 2 == 0) {
            // Even relays send before they receive.
            hop(from, to, 1, 1, true);
        } else {
            // Odd relays receive before they send.
            hop(from, to, 5, 4, false);
        }
    }
    std::stable_sort(gates.begin(), gates.end(), [](const Timed &x, const Timed &y) {
        return x.layer < y.layer;
    });
    for (const auto &g : gates) {
        circuit_.cx(g.control, g.target);
    }

    ChainParities out;
    for (size_t j = 0; j < R; j++) {
        size_t b = measure(relays[j], j % 2 == 0 ? Basis::Z : Basis::X);
        (j % 2 == 0 ? out.x_on_dst : out.z_on_src).push_back(b);
    }
    for (size_t j = 0; j < R; j++) {
        circuit_.reset(relays[j]);
    }
    return out;
}

}  // namespace dyncirc
