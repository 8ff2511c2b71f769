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

#include "dyncirc/fidelity/fidelity.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dyncirc/builders/dynamic.h"
#include "dyncirc/builders/reference.h"
#include "dyncirc/sim/statevector.h"

namespace dyncirc {

namespace {

double duration_of(const Instruction &inst, const Durations &d) {
    switch (inst.kind) {
        case GateKind::CX:
            return d.cx;
        case GateKind::Measure:
            return d.readout;
        case GateKind::Reset:
            return d.reset();
        case GateKind::Barrier:
            return 0;
        default:
            return d.single_qubit;
    }
}

void check_probability(double p, const char *name) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument(std::string(name) + " must be a probability, got " + std::to_string(p));
    }
}

void check_duration(double t, const char *name) {
    if (!(t > 0) || !std::isfinite(t)) {
        throw std::invalid_argument(std::string("duration ") + name + " must be positive");
    }
}

// One possible outcome of a noise site: probability and the Pauli letters on its qubits.
struct Fault {
    double p;
    std::string letters;
};

std::vector<Fault> faults_of(const NoiseChannel &ch) {
    std::vector<Fault> out{{1 - ch.p, ""}};
    switch (ch.kind) {
        case NoiseChannel::Kind::Depolarize1:
            for (char c : std::string("XYZ")) {
                out.push_back({ch.p / 3, std::string(1, c)});
            }
            break;
        case NoiseChannel::Kind::Depolarize2:
            for (size_t k = 1; k < 16; k++) {
                out.push_back({ch.p / 15, {"IXYZ"[k & 3], "IXYZ"[k >> 2]}});
            }
            break;
        case NoiseChannel::Kind::BitFlip:
        case NoiseChannel::Kind::ReadoutFlip:
            out.push_back({ch.p, "X"});
            break;
    }
    return out;
}

void append_pauli(Circuit &c, size_t q, char p, const std::optional<ClassicalCondition> &cond) {
    auto put = [&](GateKind k) {
        auto inst = Instruction::gate(k, q);
        if (cond) {
            inst = inst.conditioned(*cond);
        }
        c.append(inst);
    };
    if (p == 'X' || p == 'Y') {
        put(GateKind::X);
    }
    if (p == 'Z' || p == 'Y') {
        put(GateKind::Z);
    }
}

void prepare_eigenstate(StabilizerState &s, size_t q, char p, bool minus) {
    if (minus) {
        s.x(q);
    }
    if (p == 'X') {
        s.h(q);
    } else if (p == 'Y') {
        s.h(q);
        s.s(q);
    }
}

double sample_sd(const std::vector<double> &v) {
    if (v.size() < 2) {
        return 0;
    }
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / (double)v.size();
    double acc = 0;
    for (double x : v) {
        acc += (x - mean) * (x - mean);
    }
    return std::sqrt(acc / (double)(v.size() - 1));
}

}  // namespace

NoiseModel NoiseModel::noiseless() {
    NoiseModel m;
    m.p_cx = m.p_sx = m.p_meas = m.p_idle_per_us = 0;
    return m;
}

void NoiseModel::validate() const {
    check_probability(p_cx, "p_cx");
    check_probability(p_sx, "p_sx");
    check_probability(p_meas, "p_meas");
    check_probability(p_idle_per_us, "p_idle_per_us");
    check_duration(durations.cx, "cx");
    check_duration(durations.readout, "readout");
    check_duration(durations.feedforward, "feedforward");
    check_duration(durations.single_qubit, "single_qubit");
}

NoiseModel NoiseModel::from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw std::invalid_argument("noise model must be a JSON object");
    }
    static const std::vector<std::string> top{"p_cx", "p_sx", "p_meas", "p_idle_per_us", "durations"};
    static const std::vector<std::string> dur{"cx", "readout", "feedforward", "single_qubit"};
    for (const auto &[key, value] : j.items()) {
        if (std::find(top.begin(), top.end(), key) == top.end()) {
            throw std::invalid_argument("unknown noise model key '" + key + "'");
        }
    }
    NoiseModel m;
    auto num = [](const nlohmann::json &v, const std::string &key) {
        if (!v.is_number()) {
            throw std::invalid_argument("noise model key '" + key + "' must be a number");
        }
        return v.get<double>();
    };
    if (j.contains("p_cx")) m.p_cx = num(j["p_cx"], "p_cx");
    if (j.contains("p_sx")) m.p_sx = num(j["p_sx"], "p_sx");
    if (j.contains("p_meas")) m.p_meas = num(j["p_meas"], "p_meas");
    if (j.contains("p_idle_per_us")) m.p_idle_per_us = num(j["p_idle_per_us"], "p_idle_per_us");
    if (j.contains("durations")) {
        const auto &d = j["durations"];
        if (!d.is_object()) {
            throw std::invalid_argument("durations must be an object");
        }
        for (const auto &[key, value] : d.items()) {
            if (std::find(dur.begin(), dur.end(), key) == dur.end()) {
                throw std::invalid_argument("unknown duration key '" + key + "'");
            }
        }
        if (d.contains("cx")) m.durations.cx = num(d["cx"], "cx");
        if (d.contains("readout")) m.durations.readout = num(d["readout"], "readout");
        if (d.contains("feedforward")) m.durations.feedforward = num(d["feedforward"], "feedforward");
        if (d.contains("single_qubit")) m.durations.single_qubit = num(d["single_qubit"], "single_qubit");
    }
    m.validate();
    return m;
}

nlohmann::json NoiseModel::to_json() const {
    return {
        {"p_cx", p_cx},
        {"p_sx", p_sx},
        {"p_meas", p_meas},
        {"p_idle_per_us", p_idle_per_us},
        {"durations",
         {{"cx", durations.cx},
          {"readout", durations.readout},
          {"feedforward", durations.feedforward},
          {"single_qubit", durations.single_qubit}}},
    };
}

double NoiseModel::idle_probability(double microseconds) const {
    if (microseconds <= 0 || p_idle_per_us <= 0) {
        return 0;
    }
    return 1 - std::pow(1 - p_idle_per_us, microseconds);
}

Schedule schedule_durations(const Circuit &circuit, const Durations &durations) {
    const auto &insts = circuit.instructions();
    size_t nq = circuit.num_qubits();
    Schedule s;
    s.start.resize(insts.size());
    s.end.resize(insts.size());

    std::vector<double> free(nq, 0);       // earliest time the qubit can start something
    std::vector<double> last_end(nq, 0);   // end of the last instruction on the qubit
    std::vector<size_t> measured_at(circuit.num_clbits(), SIZE_MAX);
    std::vector<bool> is_system(nq, false);
    for (auto q : circuit.system_qubits()) {
        is_system[q] = true;
    }
    double pending_meas_end = 0;
    size_t synced_through = 0;  // measurements with index below this have been waited for
    bool pending = false;

    for (size_t i = 0; i < insts.size(); i++) {
        const auto &inst = insts[i];
        if (inst.condition) {
            bool fresh = false;
            for (auto b : inst.condition->bits) {
                fresh |= measured_at[b] != SIZE_MAX && measured_at[b] >= synced_through;
            }
            if (fresh && pending) {
                double t = pending_meas_end + durations.feedforward;
                for (size_t q = 0; q < nq; q++) {
                    free[q] = std::max(free[q], t);
                }
                synced_through = i;
                pending = false;
                s.feedforward_waits++;
            }
        }
        double start = 0;
        for (auto q : inst.qubits) {
            start = std::max(start, free[q]);
        }
        double end = start + duration_of(inst, durations);
        s.start[i] = start;
        s.end[i] = end;
        for (auto q : inst.qubits) {
            if (inst.kind != GateKind::Barrier) {
                if (start > last_end[q]) {
                    s.idles.push_back({q, last_end[q], start - last_end[q], i});
                }
                last_end[q] = end;
            }
            free[q] = end;
            if (is_system[q]) {
                s.process_end = std::max(s.process_end, end);
            }
        }
        if (inst.kind == GateKind::Measure) {
            measured_at[inst.clbit] = i;
            pending_meas_end = std::max(pending_meas_end, end);
            pending = true;
        }
        s.total = std::max(s.total, end);
    }
    for (size_t q = 0; q < nq; q++) {
        if (is_system[q] && s.process_end > last_end[q]) {
            s.idles.push_back({q, last_end[q], s.process_end - last_end[q], insts.size()});
        }
    }
    return s;
}

NoisePlan build_noise_plan(const Circuit &circuit, const NoiseModel &noise) {
    noise.validate();
    auto sched = schedule_durations(circuit, noise.durations);
    const auto &insts = circuit.instructions();
    NoisePlan plan;
    for (const auto &idle : sched.idles) {
        double p = noise.idle_probability(idle.duration);
        if (p > 0) {
            plan.locations.push_back({idle.before_instruction, true, false, {NoiseChannel::Kind::Depolarize1, {idle.qubit}, p}});
        }
    }
    for (size_t i = 0; i < insts.size(); i++) {
        const auto &inst = insts[i];
        bool cond = inst.condition.has_value();
        switch (inst.kind) {
            case GateKind::Barrier:
                break;
            case GateKind::CX:
                if (noise.p_cx > 0) {
                    plan.locations.push_back({i, false, cond, {NoiseChannel::Kind::Depolarize2, inst.qubits, noise.p_cx}});
                }
                break;
            case GateKind::Measure:
                if (noise.p_meas > 0) {
                    plan.locations.push_back({i, false, cond, {NoiseChannel::Kind::ReadoutFlip, inst.qubits, noise.p_meas}});
                }
                break;
            case GateKind::Reset:
                if (noise.p_meas > 0) {
                    plan.locations.push_back({i, false, cond, {NoiseChannel::Kind::BitFlip, inst.qubits, noise.p_meas}});
                }
                break;
            default:
                if (noise.p_sx > 0) {
                    plan.locations.push_back({i, false, cond, {NoiseChannel::Kind::Depolarize1, inst.qubits, noise.p_sx}});
                }
                break;
        }
    }
    std::stable_sort(plan.locations.begin(), plan.locations.end(), [](const NoiseLocation &a, const NoiseLocation &b) {
        if (a.instruction != b.instruction) {
            return a.instruction < b.instruction;
        }
        return a.before && !b.before;
    });
    return plan;
}

double gate_fidelity_from_process(double f_proc, size_t dimension) {
    double d = (double)dimension;
    return (d * f_proc + 1) / (d + 1);
}

FidelityEstimate estimate_fidelity(
    const Circuit &noisy, const Circuit &target, const NoisePlan &plan, size_t samples, size_t shots, uint64_t seed) {
    if (samples < 1 || shots < 1) {
        throw std::invalid_argument("need at least one sample and one shot");
    }
    auto sys = noisy.system_qubits();
    size_t n = sys.size();
    if (target.num_qubits() != n) {
        throw CircuitError(
            "target acts on " + std::to_string(target.num_qubits()) + " qubits but the circuit has " + std::to_string(n) +
            " system qubits");
    }
    for (const auto &inst : noisy.instructions()) {
        if (!inst.is_clifford()) {
            throw CircuitError("fidelity estimation needs a Clifford circuit, got " + inst.str());
        }
    }
    size_t width = noisy.num_qubits();

    std::vector<double> means;
    means.reserve(samples);
    for (size_t i = 0; i < samples; i++) {
        std::mt19937_64 rng(derive_seed(seed, i));
        PauliString p_i(n);
        for (size_t k = 0; k < n; k++) {
            p_i.set(k, "IXYZ"[rng() & 3]);
        }
        auto [p_j, sign] = pauli_pair_for(target, p_i);
        if (p_i.is_identity()) {
            means.push_back(1);
            continue;
        }
        PauliString observable(width);
        for (size_t k = 0; k < n; k++) {
            observable.set(sys[k], p_j.get(k));
        }
        double acc = 0;
        std::vector<uint8_t> bits;
        for (size_t shot = 0; shot < shots; shot++) {
            StabilizerState state(width);
            int lambda = 1;
            for (size_t k = 0; k < n; k++) {
                bool minus = rng() & 1;
                char p = p_i.get(k);
                if (p == 'I') {
                    prepare_eigenstate(state, sys[k], 'Z', minus);
                } else {
                    prepare_eigenstate(state, sys[k], p, minus);
                    lambda = minus ? -lambda : lambda;
                }
            }
            run_on(state, noisy, rng, bits, &plan, nullptr);
            int outcome = state.expectation(observable);
            if (outcome == 0) {
                outcome = (rng() & 1) ? 1 : -1;
            }
            acc += sign * lambda * outcome;
        }
        means.push_back(acc / (double)shots);
    }
    FidelityEstimate est;
    est.f_proc = std::accumulate(means.begin(), means.end(), 0.0) / (double)samples;
    est.dimension = size_t{1} << n;
    est.f_gate = gate_fidelity_from_process(est.f_proc, est.dimension);
    est.std_error = sample_sd(means) / std::sqrt((double)samples);
    est.samples = samples;
    est.shots = shots;
    return est;
}

FidelityEstimate estimate_fidelity(
    const Circuit &noisy, const Circuit &target, const NoiseModel &noise, size_t samples, size_t shots, uint64_t seed) {
    return estimate_fidelity(noisy, target, build_noise_plan(noisy, noise), samples, shots, seed);
}

std::vector<Eigen::MatrixXcd> noisy_kraus_operators(const Circuit &circuit, const NoisePlan &plan, size_t max_patterns) {
    const auto &insts = circuit.instructions();
    std::vector<size_t> active;
    std::vector<std::vector<Fault>> options;
    double patterns = 1;
    for (size_t l = 0; l < plan.locations.size(); l++) {
        const auto &ch = plan.locations[l].channel;
        if (ch.p <= 0) {
            continue;
        }
        active.push_back(l);
        options.push_back(faults_of(ch));
        patterns *= (double)options.back().size();
    }
    if (patterns > (double)max_patterns) {
        throw std::invalid_argument("too many fault patterns for the exact channel (" + std::to_string(patterns) + ")");
    }

    std::vector<Eigen::MatrixXcd> out;
    std::vector<size_t> choice(active.size(), 0);
    std::vector<const Fault *> chosen(plan.locations.size(), nullptr);
    while (true) {
        double weight = 1;
        std::fill(chosen.begin(), chosen.end(), nullptr);
        for (size_t a = 0; a < active.size(); a++) {
            const auto &f = options[a][choice[a]];
            weight *= f.p;
            if (!f.letters.empty()) {
                chosen[active[a]] = &f;
            }
        }
        if (weight > 0) {
            Circuit c = circuit.empty_copy();
            size_t loc = 0;
            auto emit = [&](size_t index, bool before) {
                while (loc < plan.locations.size() && plan.locations[loc].instruction == index &&
                       plan.locations[loc].before == before) {
                    const auto &L = plan.locations[loc];
                    const Fault *f = chosen[loc++];
                    if (!f || L.channel.kind == NoiseChannel::Kind::ReadoutFlip) {
                        continue;
                    }
                    std::optional<ClassicalCondition> cond;
                    if (L.if_executed && index < insts.size()) {
                        cond = insts[index].condition;
                    }
                    for (size_t k = 0; k < f->letters.size(); k++) {
                        append_pauli(c, L.channel.qubits[k], f->letters[k], cond);
                    }
                }
            };
            for (size_t i = 0; i <= insts.size(); i++) {
                emit(i, true);
                if (i == insts.size()) {
                    emit(i, false);
                    break;
                }
                // A readout flip is a basis Pauli on both sides of the measurement.
                std::optional<char> flip;
                for (size_t l = loc; l < plan.locations.size() && plan.locations[l].instruction == i; l++) {
                    if (chosen[l] && plan.locations[l].channel.kind == NoiseChannel::Kind::ReadoutFlip) {
                        flip = insts[i].basis == Basis::Z ? 'X' : 'Z';
                    }
                }
                if (flip) {
                    append_pauli(c, insts[i].qubits[0], *flip, insts[i].condition);
                }
                c.append(insts[i]);
                if (flip) {
                    append_pauli(c, insts[i].qubits[0], *flip, insts[i].condition);
                }
                emit(i, false);
            }
            if (loc != plan.locations.size()) {
                throw std::invalid_argument("noise plan locations are not in circuit order");
            }
            // Faults can leave ancillas excited; a final reset traces them out branch by branch.
            for (size_t q = 0; q < c.num_qubits(); q++) {
                if (c.roles()[q] == Role::Ancilla) {
                    c.reset(q);
                }
            }
            double amp = std::sqrt(weight);
            for_each_channel_branch(c, {}, [&](const KrausBranch &b) {
                if (!b.zero_probability) {
                    out.push_back(amp * b.op);
                }
            });
        }
        size_t a = 0;
        while (a < active.size() && ++choice[a] == options[a].size()) {
            choice[a++] = 0;
        }
        if (a == active.size()) {
            break;
        }
    }
    return out;
}

double exact_process_fidelity_small(const std::vector<Eigen::MatrixXcd> &kraus, const Eigen::MatrixXcd &target) {
    if (target.rows() != target.cols() || target.rows() > 8) {
        throw std::invalid_argument("exact process fidelity is limited to three qubits");
    }
    double d = (double)target.rows();
    double f = 0;
    for (const auto &k : kraus) {
        if (k.rows() != target.rows() || k.cols() != target.cols()) {
            throw std::invalid_argument("Kraus operator shape does not match the target");
        }
        f += std::norm((target.adjoint() * k).trace());
    }
    return f / (d * d);
}

std::optional<size_t> find_crossover(const std::vector<CrossoverRow> &rows) {
    std::optional<size_t> best;
    for (size_t i = rows.size(); i-- > 0;) {
        if (rows[i].dynamic.f_gate > rows[i].unitary.f_gate) {
            best = rows[i].n;
        } else {
            break;
        }
    }
    return best;
}

CrossoverResult crossover_scan(
    CrossoverGate gate, size_t n_min, size_t n_max, const NoiseModel &noise, size_t samples, size_t shots, uint64_t seed) {
    if (n_min < 1 || n_max < n_min) {
        throw std::invalid_argument("crossover range must satisfy 1 <= n_min <= n_max");
    }
    CrossoverResult result;
    for (size_t n = n_min; n <= n_max; n++) {
        GateSpec spec = gate == CrossoverGate::Fanout ? GateSpec::fanout(n) : GateSpec::long_range_cnot(n);
        Circuit unitary = gate == CrossoverGate::Fanout ? build_unitary_line_fanout(n) : build_unitary_long_range_cnot(n);
        Circuit dynamic = build_dynamic(spec);
        Circuit target = reference_circuit(spec);
        CrossoverRow row;
        row.n = n;
        row.unitary = estimate_fidelity(unitary, target, noise, samples, shots, derive_seed(seed, 2 * n));
        row.dynamic = estimate_fidelity(dynamic, target, noise, samples, shots, derive_seed(seed, 2 * n + 1));
        result.rows.push_back(row);
    }
    result.crossover = find_crossover(result.rows);
    return result;
}

}  // namespace dyncirc
