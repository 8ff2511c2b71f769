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

#ifndef _DYNCIRC_SIM_STABILIZER_H
#define _DYNCIRC_SIM_STABILIZER_H

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dyncirc/circuit/circuit.h"
#include "dyncirc/sim/statevector.h"

namespace dyncirc {

/// A Hermitian Pauli product with a sign, bit-packed.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(size_t num_qubits);
    /// Parses e.g. "+XY_Z" or "-IXZ"; '_' and 'I' both mean identity. Qubit 0 is the first letter.
    static PauliString from_str(const std::string &text);

    size_t num_qubits() const { return num_qubits_; }
    /// 'I', 'X', 'Y' or 'Z'.
    char get(size_t q) const;
    void set(size_t q, char p);
    bool x(size_t q) const { return (xs_[q >> 6] >> (q & 63)) & 1; }
    bool z(size_t q) const { return (zs_[q >> 6] >> (q & 63)) & 1; }
    bool sign = false;  // true means a leading minus

    bool commutes(const PauliString &other) const;
    size_t weight() const;
    bool is_identity() const { return weight() == 0; }
    std::string str() const;
    bool operator==(const PauliString &other) const = default;

    std::vector<uint64_t> xs_, zs_;

   private:
    size_t num_qubits_ = 0;
};

/// Destabilizer tableau (Aaronson-Gottesman) with bit-packed rows.
class StabilizerState {
   public:
    StabilizerState() = default;
    /// |0...0> on num_qubits qubits.
    explicit StabilizerState(size_t num_qubits);

    size_t num_qubits() const { return n_; }

    void h(size_t q);
    void s(size_t q);
    void sdg(size_t q);
    void x(size_t q);
    void y(size_t q);
    void z(size_t q);
    void cx(size_t control, size_t target);
    void apply_pauli(const PauliString &p);

    /// Returns the outcome; `deterministic` reports whether it was forced.
    bool measure_z(size_t q, std::mt19937_64 &rng, bool *deterministic = nullptr);
    bool measure_x(size_t q, std::mt19937_64 &rng, bool *deterministic = nullptr);
    void reset(size_t q, std::mt19937_64 &rng);

    /// +1 or -1 when p (or -p) stabilizes the state, 0 otherwise.
    int expectation(const PauliString &p) const;

    PauliString stabilizer(size_t k) const;
    PauliString destabilizer(size_t k) const;

    /// Checks the commutation pattern of the generators and their independence.
    bool is_valid() const;
    /// Same state: every stabilizer generator of `other` is in this group with the same sign.
    bool same_state(const StabilizerState &other) const;

   private:
    size_t n_ = 0;
    size_t words_ = 0;
    // Rows 0..n-1 are destabilizers, n..2n-1 stabilizers, 2n is scratch.
    std::vector<uint64_t> xs_, zs_;
    std::vector<uint8_t> signs_;

    uint64_t *xrow(size_t r) { return xs_.data() + r * words_; }
    uint64_t *zrow(size_t r) { return zs_.data() + r * words_; }
    const uint64_t *xrow(size_t r) const { return xs_.data() + r * words_; }
    const uint64_t *zrow(size_t r) const { return zs_.data() + r * words_; }
    bool xbit(size_t r, size_t q) const { return (xrow(r)[q >> 6] >> (q & 63)) & 1; }
    bool zbit(size_t r, size_t q) const { return (zrow(r)[q >> 6] >> (q & 63)) & 1; }
    /// Row h := row i * row h, with the sign tracked.
    void rowsum(size_t h, size_t i);
    void copy_row(size_t dst, size_t src);
    PauliString row(size_t r) const;
};

/// A Pauli channel attached to a point of a circuit.
struct NoiseChannel {
    enum class Kind : uint8_t {
        Depolarize1,  // X, Y, Z each with p/3
        Depolarize2,  // each of the 15 non-identity two-qubit Paulis with p/15
        BitFlip,      // X with p
        ReadoutFlip,  // the recorded outcome of the measurement is flipped with p
    };
    Kind kind = Kind::Depolarize1;
    std::vector<size_t> qubits;
    double p = 0;
};

struct NoiseLocation {
    /// Index of the instruction the channel is attached to; the circuit size means "at the end".
    size_t instruction = 0;
    bool before = false;
    /// Only fires when the instruction's condition held (conditioned gates).
    bool if_executed = false;
    NoiseChannel channel;
};

/// Noise sites in circuit order. Built by the fidelity module.
struct NoisePlan {
    std::vector<NoiseLocation> locations;
};

/// A sampled non-identity fault.
struct NoiseEvent {
    PauliString pauli;  // over the circuit's qubits; readout flips are recorded as the flipped basis Pauli
    size_t location = 0;  // index into NoisePlan::locations
};

struct Trajectory {
    StabilizerState state;
    std::vector<uint8_t> bits;
    std::vector<NoiseEvent> events;
};

/// Runs the circuit on `state`, whose first circuit.num_qubits() qubits are the circuit's.
/// Throws CircuitError on non-Clifford gates.
void run_on(
    StabilizerState &state,
    const Circuit &circuit,
    std::mt19937_64 &rng,
    std::vector<uint8_t> &bits,
    const NoisePlan *noise = nullptr,
    std::vector<NoiseEvent> *events = nullptr);

/// One trajectory from |0...0>.
Trajectory run(const Circuit &circuit, uint64_t seed, const NoisePlan *noise = nullptr);

struct ChoiTrialFailure {
    uint64_t seed = 0;
    std::vector<uint8_t> branch_bits;
};

struct ChoiCheckResult {
    bool pass = false;
    size_t trials = 0;
    std::vector<ChoiTrialFailure> failures;
};

/// Runs the dynamic circuit on halves of Bell pairs and compares the stabilizer group with
/// the target applied to the same pairs. `target` acts on the system qubits in order.
/// Inputs listed in `fixed_zero_inputs` start in |0> without a partner.
ChoiCheckResult choi_equivalence_check(
    const Circuit &dynamic,
    const Circuit &target,
    size_t trials,
    uint64_t seed,
    const std::vector<size_t> &fixed_zero_inputs = {});

uint64_t splitmix64(uint64_t x);
/// Independent child seed for trial or sample `index`.
uint64_t derive_seed(uint64_t seed, uint64_t index);

/// P_j and sign with U P_i U^dagger = sign * P_j, for a measurement-free Clifford circuit.
std::pair<PauliString, int> pauli_pair_for(const Circuit &clifford_target, const PauliString &p_i);

}  // namespace dyncirc

#endif
