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
#ifndef _DYNCIRC_FIDELITY_FIDELITY_H
#define _DYNCIRC_FIDELITY_FIDELITY_H

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "dyncirc/circuit/circuit.h"
#include "dyncirc/sim/stabilizer.h"
#include "json.hpp"

namespace dyncirc {

/// Instruction durations in microseconds.
struct Durations {
    double cx = 0.56;
    double readout = 1.24;
    double feedforward = 0.65;
    double single_qubit = 0.035;

    /// Reset is a measurement plus a conditioned flip.
    double reset() const {
        return readout + feedforward;
    }
};

/// Pauli noise parameters. Idle noise is depolarizing with p(t) = 1 - (1 - p_idle_per_us)^t.
struct NoiseModel {
    double p_cx = 7e-3;
    double p_sx = 2.5e-4;
    double p_meas = 1e-2;
    double p_idle_per_us = 1e-2;
    Durations durations;

    static NoiseModel noiseless();
    /// Missing keys keep their defaults. Throws std::invalid_argument on bad values.
    static NoiseModel from_json(const nlohmann::json &j);
    nlohmann::json to_json() const;
    void validate() const;
    double idle_probability(double microseconds) const;
};

struct IdleInterval {
    size_t qubit = 0;
    double start = 0;
    double duration = 0;
    /// The next instruction on the qubit, or the circuit size for the tail up to the process end.
    size_t before_instruction = 0;
};

struct Schedule {
    std::vector<double> start;  // per instruction
    std::vector<double> end;
    std::vector<IdleInterval> idles;
    /// Latest end among instructions touching system qubits.
    double process_end = 0;
    /// Latest end overall (ancilla resets may run past the process end).
    double total = 0;
    size_t feedforward_waits = 0;
};

/// As-soon-as-possible schedule. The first instruction consuming a fresh measurement
/// round waits for every measurement so far plus one feed-forward delay, and so does
/// every other qubit: the delay is charged to the whole register once per round.
Schedule schedule_durations(const Circuit &circuit, const Durations &durations);

/// Noise sites: Depolarize2 after CX, Depolarize1 after single-qubit gates, ReadoutFlip on
/// measurements, BitFlip after resets, and idle depolarizing before the next instruction on
/// each qubit. System qubits also idle up to the process end.
NoisePlan build_noise_plan(const Circuit &circuit, const NoiseModel &noise);

struct FidelityEstimate {
    double f_proc = 0;
    double f_gate = 0;
    double std_error = 0;
    size_t samples = 0;
    size_t shots = 0;
    size_t dimension = 0;
};

/// (d f + 1) / (d + 1).
double gate_fidelity_from_process(double f_proc, size_t dimension);

/// Monte Carlo fidelity estimate against a measurement-free Clifford target.
///
/// Draws `samples` Pauli labels P_i uniformly, and for each runs `shots` noisy trajectories
/// from random product eigenstates of P_i, scoring sign * eigenvalue * outcome of P_j.
/// The standard error is the spread of the per-label means over sqrt(samples).
FidelityEstimate estimate_fidelity(
    const Circuit &noisy, const Circuit &target, const NoisePlan &plan, size_t samples, size_t shots, uint64_t seed);
FidelityEstimate estimate_fidelity(
    const Circuit &noisy, const Circuit &target, const NoiseModel &noise, size_t samples, size_t shots, uint64_t seed);

/// Kraus operators on the system qubits of the noisy channel, one per fault pattern and
/// outcome branch. Throws std::invalid_argument when more than `max_patterns` fault
/// patterns have nonzero weight.
std::vector<Eigen::MatrixXcd> noisy_kraus_operators(const Circuit &circuit, const NoisePlan &plan, size_t max_patterns = 1 << 16);

/// sum_K |Tr(U^dagger K)|^2 / d^2 for at most three qubits.
double exact_process_fidelity_small(const std::vector<Eigen::MatrixXcd> &kraus, const Eigen::MatrixXcd &target);

enum class CrossoverGate { Fanout, LongRangeCnot };

struct CrossoverRow {
    size_t n = 0;
    FidelityEstimate unitary;
    FidelityEstimate dynamic;
};

struct CrossoverResult {
    std::vector<CrossoverRow> rows;
    /// Smallest n from which the dynamic gate fidelity is higher for the rest of the scan.
    std::optional<size_t> crossover;
};

/// Unitary line circuit against the one-round dynamic circuit for n in [n_min, n_max].
CrossoverResult crossover_scan(
    CrossoverGate gate, size_t n_min, size_t n_max, const NoiseModel &noise, size_t samples, size_t shots, uint64_t seed);

std::optional<size_t> find_crossover(const std::vector<CrossoverRow> &rows);

}  // namespace dyncirc

#endif
