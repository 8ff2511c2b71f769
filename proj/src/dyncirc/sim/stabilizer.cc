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

#include "dyncirc/sim/stabilizer.h"

#include <algorithm>
#include <bit>

namespace dyncirc {

namespace {

size_t word_count(size_t n) {
    return (n + 63) / 64;
}

uint64_t mask(size_t q) {
    return uint64_t{1} << (q & 63);
}

// Exponent of i (mod 4) picked up when multiplying Hermitian Paulis a * b, over packed words.
int product_phase(const uint64_t *ax, const uint64_t *az, const uint64_t *bx, const uint64_t *bz, size_t words) {
    int total = 0;
    for (size_t w = 0; w < words; w++) {
        uint64_t x1 = ax[w], z1 = az[w], x2 = bx[w], z2 = bz[w];
        uint64_t X1 = x1 & ~z1, Y1 = x1 & z1, Z1 = ~x1 & z1;
        uint64_t X2 = x2 & ~z2, Y2 = x2 & z2, Z2 = ~x2 & z2;
        // XY = iZ, YZ = iX, ZX = iY; the reversed orders give -i.
        uint64_t plus = (X1 & Y2) | (Y1 & Z2) | (Z1 & X2);
        uint64_t minus = (X1 & Z2) | (Y1 & X2) | (Z1 & Y2);
        total += std::popcount(plus) - std::popcount(minus);
    }
    return ((total % 4) + 4) % 4;
}

void require_clifford(const Instruction &inst) {
    if (!inst.is_clifford()) {
        throw CircuitError("stabilizer simulation needs Clifford gates, got " + inst.str());
    }
}

// Applies a unitary Clifford instruction, optionally relabelling its qubits.
void apply_gate(StabilizerState &state, const Instruction &inst, const std::vector<size_t> *map) {
    auto at = [&](size_t k) { return map ? (*map)[inst.qubits[k]] : inst.qubits[k]; };
    switch (inst.kind) {
        case GateKind::H:
            state.h(at(0));
            break;
        case GateKind::X:
            state.x(at(0));
            break;
        case GateKind::Z:
            state.z(at(0));
            break;
        case GateKind::S:
            state.s(at(0));
            break;
        case GateKind::Sdg:
            state.sdg(at(0));
            break;
        case GateKind::CX:
            state.cx(at(0), at(1));
            break;
        case GateKind::RZ: {
            require_clifford(inst);
            int k = 0;
            clifford_angle(inst.angle, &k);
            if (k == 1) {
                state.s(at(0));
            } else if (k == 2) {
                state.z(at(0));
            } else if (k == 3) {
                state.sdg(at(0));
            }
            break;
        }
        case GateKind::Barrier:
            break;
        default:
            throw CircuitError("not a unitary gate: " + inst.str());
    }
}

// Conjugation of a single Pauli string by one gate, P -> G P G^dagger.
void conjugate(PauliString &p, const Instruction &inst) {
    auto xb = [&](size_t q) { return p.x(q); };
    auto zb = [&](size_t q) { return p.z(q); };
    auto put = [&](size_t q, bool x, bool z) {
        p.set(q, x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I'));
    };
    size_t q = inst.qubits.empty() ? 0 : inst.qubits[0];
    switch (inst.kind) {
        case GateKind::H: {
            bool x = xb(q), z = zb(q);
            p.sign ^= x && z;
            put(q, z, x);
            break;
        }
        case GateKind::S: {
            bool x = xb(q), z = zb(q);
            p.sign ^= x && z;
            put(q, x, z ^ x);
            break;
        }
        case GateKind::Sdg: {
            bool x = xb(q), z = zb(q);
            p.sign ^= x && !z;
            put(q, x, z ^ x);
            break;
        }
        case GateKind::X:
            p.sign ^= zb(q);
            break;
        case GateKind::Z:
            p.sign ^= xb(q);
            break;
        case GateKind::RZ: {
            int k = 0;
            clifford_angle(inst.angle, &k);
            for (int i = 0; i < k; i++) {
                conjugate(p, Instruction::gate(GateKind::S, q));
            }
            break;
        }
        case GateKind::CX: {
            size_t c = inst.qubits[0], t = inst.qubits[1];
            bool xc = xb(c), zc = zb(c), xt = xb(t), zt = zb(t);
            p.sign ^= xc && zt && !(xt ^ zc);
            put(t, xt ^ xc, zt);
            put(c, xc, zc ^ zt);
            break;
        }
        case GateKind::Barrier:
            break;
        default:
            throw CircuitError("cannot conjugate a Pauli through " + inst.str());
    }
}

}  // namespace

PauliString::PauliString(size_t num_qubits)
    : xs_(word_count(num_qubits)), zs_(word_count(num_qubits)), num_qubits_(num_qubits) {
}

PauliString PauliString::from_str(const std::string &text) {
    std::string body = text;
    bool neg = false;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        neg = body[0] == '-';
        body = body.substr(1);
    }
    PauliString p(body.size());
    p.sign = neg;
    for (size_t q = 0; q < body.size(); q++) {
        char c = body[q] == '_' ? 'I' : body[q];
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("bad Pauli letter in '" + text + "'");
        }
        p.set(q, c);
    }
    return p;
}

char PauliString::get(size_t q) const {
    bool xv = x(q), zv = z(q);
    return xv ? (zv ? 'Y' : 'X') : (zv ? 'Z' : 'I');
}

void PauliString::set(size_t q, char p) {
    bool xv = p == 'X' || p == 'Y';
    bool zv = p == 'Z' || p == 'Y';
    xs_[q >> 6] = (xs_[q >> 6] & ~mask(q)) | (xv ? mask(q) : 0);
    zs_[q >> 6] = (zs_[q >> 6] & ~mask(q)) | (zv ? mask(q) : 0);
}

bool PauliString::commutes(const PauliString &other) const {
    int parity = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        parity ^= std::popcount((xs_[w] & other.zs_[w]) ^ (zs_[w] & other.xs_[w])) & 1;
    }
    return parity == 0;
}

size_t PauliString::weight() const {
    size_t total = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        total += std::popcount(xs_[w] | zs_[w]);
    }
    return total;
}

std::string PauliString::str() const {
    std::string out(1, sign ? '-' : '+');
    for (size_t q = 0; q < num_qubits_; q++) {
        char c = get(q);
        out += c == 'I' ? '_' : c;
    }
    return out;
}

StabilizerState::StabilizerState(size_t num_qubits)
    : n_(num_qubits),
      words_(word_count(num_qubits)),
      xs_((2 * num_qubits + 1) * word_count(num_qubits)),
      zs_((2 * num_qubits + 1) * word_count(num_qubits)),
      signs_(2 * num_qubits + 1) {
    for (size_t q = 0; q < n_; q++) {
        xrow(q)[q >> 6] |= mask(q);
        zrow(n_ + q)[q >> 6] |= mask(q);
    }
}

void StabilizerState::h(size_t q) {
    size_t w = q >> 6;
    uint64_t m = mask(q);
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t &xw = xrow(r)[w];
        uint64_t &zw = zrow(r)[w];
        bool x = xw & m, z = zw & m;
        signs_[r] ^= x && z;
        if (x != z) {
            xw ^= m;
            zw ^= m;
        }
    }
}

void StabilizerState::s(size_t q) {
    size_t w = q >> 6;
    uint64_t m = mask(q);
    for (size_t r = 0; r < 2 * n_; r++) {
        bool x = xrow(r)[w] & m, z = zrow(r)[w] & m;
        signs_[r] ^= x && z;
        if (x) {
            zrow(r)[w] ^= m;
        }
    }
}

void StabilizerState::sdg(size_t q) {
    size_t w = q >> 6;
    uint64_t m = mask(q);
    for (size_t r = 0; r < 2 * n_; r++) {
        bool x = xrow(r)[w] & m, z = zrow(r)[w] & m;
        signs_[r] ^= x && !z;
        if (x) {
            zrow(r)[w] ^= m;
        }
    }
}

void StabilizerState::x(size_t q) {
    for (size_t r = 0; r < 2 * n_; r++) {
        signs_[r] ^= zbit(r, q);
    }
}

void StabilizerState::z(size_t q) {
    for (size_t r = 0; r < 2 * n_; r++) {
        signs_[r] ^= xbit(r, q);
    }
}

void StabilizerState::y(size_t q) {
    for (size_t r = 0; r < 2 * n_; r++) {
        signs_[r] ^= xbit(r, q) ^ zbit(r, q);
    }
}

void StabilizerState::cx(size_t c, size_t t) {
    size_t wc = c >> 6, wt = t >> 6;
    uint64_t mc = mask(c), mt = mask(t);
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t *xr = xrow(r);
        uint64_t *zr = zrow(r);
        bool xc = xr[wc] & mc, zc = zr[wc] & mc, xt = xr[wt] & mt, zt = zr[wt] & mt;
        signs_[r] ^= xc && zt && !(xt ^ zc);
        if (xc) {
            xr[wt] ^= mt;
        }
        if (zt) {
            zr[wc] ^= mc;
        }
    }
}

void StabilizerState::apply_pauli(const PauliString &p) {
    // A Pauli flips the sign of every generator it anticommutes with.
    for (size_t r = 0; r < 2 * n_; r++) {
        int parity = 0;
        for (size_t w = 0; w < words_; w++) {
            parity ^= std::popcount((xrow(r)[w] & p.zs_[w]) ^ (zrow(r)[w] & p.xs_[w])) & 1;
        }
        signs_[r] ^= parity;
    }
}

void StabilizerState::rowsum(size_t h, size_t i) {
    int phase = product_phase(xrow(i), zrow(i), xrow(h), zrow(h), words_);
    phase += 2 * signs_[h] + 2 * signs_[i];
    signs_[h] = (phase % 4) >= 2;
    for (size_t w = 0; w < words_; w++) {
        xrow(h)[w] ^= xrow(i)[w];
        zrow(h)[w] ^= zrow(i)[w];
    }
}

void StabilizerState::copy_row(size_t dst, size_t src) {
    std::copy_n(xrow(src), words_, xrow(dst));
    std::copy_n(zrow(src), words_, zrow(dst));
    signs_[dst] = signs_[src];
}

bool StabilizerState::measure_z(size_t q, std::mt19937_64 &rng, bool *deterministic) {
    size_t p = 2 * n_;
    for (size_t r = n_; r < 2 * n_; r++) {
        if (xbit(r, q)) {
            p = r;
            break;
        }
    }
    if (p < 2 * n_) {
        for (size_t r = 0; r < 2 * n_; r++) {
            if (r != p && xbit(r, q)) {
                rowsum(r, p);
            }
        }
        copy_row(p - n_, p);
        std::fill_n(xrow(p), words_, 0);
        std::fill_n(zrow(p), words_, 0);
        zrow(p)[q >> 6] |= mask(q);
        bool outcome = rng() & 1;
        signs_[p] = outcome;
        if (deterministic) {
            *deterministic = false;
        }
        return outcome;
    }
    size_t scratch = 2 * n_;
    std::fill_n(xrow(scratch), words_, 0);
    std::fill_n(zrow(scratch), words_, 0);
    signs_[scratch] = 0;
    for (size_t r = 0; r < n_; r++) {
        if (xbit(r, q)) {
            rowsum(scratch, r + n_);
        }
    }
    if (deterministic) {
        *deterministic = true;
    }
    return signs_[scratch];
}

bool StabilizerState::measure_x(size_t q, std::mt19937_64 &rng, bool *deterministic) {
    h(q);
    bool out = measure_z(q, rng, deterministic);
    h(q);
    return out;
}

void StabilizerState::reset(size_t q, std::mt19937_64 &rng) {
    if (measure_z(q, rng)) {
        x(q);
    }
}

PauliString StabilizerState::row(size_t r) const {
    PauliString p(n_);
    std::copy_n(xrow(r), words_, p.xs_.begin());
    std::copy_n(zrow(r), words_, p.zs_.begin());
    p.sign = signs_[r];
    return p;
}

PauliString StabilizerState::stabilizer(size_t k) const {
    return row(n_ + k);
}

PauliString StabilizerState::destabilizer(size_t k) const {
    return row(k);
}

int StabilizerState::expectation(const PauliString &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("Pauli size does not match the state");
    }
    for (size_t k = 0; k < n_; k++) {
        if (!row(n_ + k).commutes(p)) {
            return 0;
        }
    }
    // p is (up to sign) the product of the stabilizers whose destabilizer partner anticommutes with it.
    StabilizerState &self = const_cast<StabilizerState &>(*this);
    size_t scratch = 2 * n_;
    std::fill_n(self.xrow(scratch), words_, 0);
    std::fill_n(self.zrow(scratch), words_, 0);
    self.signs_[scratch] = 0;
    for (size_t k = 0; k < n_; k++) {
        if (!row(k).commutes(p)) {
            self.rowsum(scratch, n_ + k);
        }
    }
    return signs_[scratch] == p.sign ? 1 : -1;
}

bool StabilizerState::is_valid() const {
    for (size_t a = 0; a < 2 * n_; a++) {
        PauliString pa = row(a);
        for (size_t b = a + 1; b < 2 * n_; b++) {
            bool anti = !pa.commutes(row(b));
            bool expect_anti = b == a + n_;
            if (anti != expect_anti) {
                return false;
            }
        }
    }
    return true;
}

bool StabilizerState::same_state(const StabilizerState &other) const {
    if (other.n_ != n_) {
        return false;
    }
    for (size_t k = 0; k < n_; k++) {
        if (expectation(other.stabilizer(k)) != 1) {
            return false;
        }
    }
    return true;
}

void run_on(
    StabilizerState &state,
    const Circuit &circuit,
    std::mt19937_64 &rng,
    std::vector<uint8_t> &bits,
    const NoisePlan *noise,
    std::vector<NoiseEvent> *events) {
    const auto &insts = circuit.instructions();
    if (state.num_qubits() < circuit.num_qubits()) {
        throw std::invalid_argument("state smaller than circuit");
    }
    bits.assign(circuit.num_clbits(), 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    size_t loc = 0;
    auto fire = [&](size_t index, bool before, bool executed) {
        if (!noise) {
            return;
        }
        const auto &locs = noise->locations;
        while (loc < locs.size() && locs[loc].instruction == index && locs[loc].before == before) {
            const auto &L = locs[loc];
            size_t this_loc = loc++;
            if ((L.if_executed && !executed) || L.channel.p <= 0 || unit(rng) >= L.channel.p) {
                continue;
            }
            PauliString p(state.num_qubits());
            const auto &qs = L.channel.qubits;
            switch (L.channel.kind) {
                case NoiseChannel::Kind::Depolarize1:
                    p.set(qs[0], "XYZ"[rng() % 3]);
                    break;
                case NoiseChannel::Kind::Depolarize2: {
                    size_t k = 1 + rng() % 15;
                    p.set(qs[0], "IXYZ"[k & 3]);
                    p.set(qs[1], "IXYZ"[k >> 2]);
                    break;
                }
                case NoiseChannel::Kind::BitFlip:
                    p.set(qs[0], 'X');
                    break;
                case NoiseChannel::Kind::ReadoutFlip: {
                    const auto &m = insts.at(L.instruction);
                    bits[m.clbit] ^= 1;
                    p.set(qs[0], m.basis == Basis::Z ? 'X' : 'Z');
                    if (events) {
                        events->push_back({std::move(p), this_loc});
                    }
                    continue;
                }
            }
            state.apply_pauli(p);
            if (events) {
                events->push_back({std::move(p), this_loc});
            }
        }
    };

    for (size_t i = 0; i < insts.size(); i++) {
        const auto &inst = insts[i];
        fire(i, true, true);
        bool executed = !inst.condition || inst.condition->holds(bits);
        if (executed) {
            if (inst.kind == GateKind::Measure) {
                size_t q = inst.qubits[0];
                bits[inst.clbit] = inst.basis == Basis::Z ? state.measure_z(q, rng) : state.measure_x(q, rng);
            } else if (inst.kind == GateKind::Reset) {
                state.reset(inst.qubits[0], rng);
            } else {
                apply_gate(state, inst, nullptr);
            }
        }
        fire(i, false, executed);
    }
    fire(insts.size(), true, true);
    fire(insts.size(), false, true);
    if (noise && loc != noise->locations.size()) {
        throw std::invalid_argument("noise plan locations are not in circuit order");
    }
}

Trajectory run(const Circuit &circuit, uint64_t seed, const NoisePlan *noise) {
    for (const auto &inst : circuit.instructions()) {
        require_clifford(inst);
    }
    Trajectory t{StabilizerState(circuit.num_qubits()), {}, {}};
    std::mt19937_64 rng(seed);
    run_on(t.state, circuit, rng, t.bits, noise, &t.events);
    return t;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

uint64_t derive_seed(uint64_t seed, uint64_t index) {
    return splitmix64(seed ^ splitmix64(index));
}

ChoiCheckResult choi_equivalence_check(
    const Circuit &dynamic,
    const Circuit &target,
    size_t trials,
    uint64_t seed,
    const std::vector<size_t> &fixed_zero_inputs) {
    for (const auto &inst : dynamic.instructions()) {
        require_clifford(inst);
    }
    for (const auto &inst : target.instructions()) {
        require_clifford(inst);
        if (!inst.is_unitary_gate() && inst.kind != GateKind::Barrier) {
            throw CircuitError("Choi target must be measurement-free");
        }
    }
    auto sys = dynamic.system_qubits();
    if (sys.size() != target.num_qubits()) {
        throw CircuitError("system qubit counts differ");
    }
    size_t nq = dynamic.num_qubits();
    std::vector<size_t> partner(sys.size(), SIZE_MAX);
    size_t total = nq;
    for (size_t k = 0; k < sys.size(); k++) {
        if (std::find(fixed_zero_inputs.begin(), fixed_zero_inputs.end(), k) == fixed_zero_inputs.end()) {
            partner[k] = total++;
        }
    }
    StabilizerState bell(total);
    for (size_t k = 0; k < sys.size(); k++) {
        if (partner[k] != SIZE_MAX) {
            bell.h(sys[k]);
            bell.cx(sys[k], partner[k]);
        }
    }
    StabilizerState expected = bell;
    for (const auto &inst : target.instructions()) {
        apply_gate(expected, inst, &sys);
    }

    ChoiCheckResult result;
    result.trials = trials;
    for (size_t t = 0; t < trials; t++) {
        uint64_t trial_seed = derive_seed(seed, t);
        StabilizerState st = bell;
        std::mt19937_64 rng(trial_seed);
        std::vector<uint8_t> bits;
        run_on(st, dynamic, rng, bits);
        if (!st.same_state(expected)) {
            result.failures.push_back({trial_seed, bits});
        }
    }
    result.pass = result.failures.empty();
    return result;
}

std::pair<PauliString, int> pauli_pair_for(const Circuit &clifford_target, const PauliString &p_i) {
    if (p_i.num_qubits() != clifford_target.num_qubits()) {
        throw std::invalid_argument("Pauli size does not match the circuit");
    }
    PauliString p = p_i;
    for (const auto &inst : clifford_target.instructions()) {
        if (!inst.is_clifford() || (!inst.is_unitary_gate() && inst.kind != GateKind::Barrier) || inst.condition) {
            throw CircuitError("pauli_pair_for needs an unconditioned Clifford unitary, got " + inst.str());
        }
        conjugate(p, inst);
    }
    int sign = p.sign ? -1 : 1;
    p.sign = false;
    return {p, sign};
}

}  // namespace dyncirc
