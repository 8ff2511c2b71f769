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

#include "dyncirc/verify/verify.h"

#include <cmath>

#include "dyncirc/sim/stabilizer.h"
#include "dyncirc/sim/statevector.h"

namespace dyncirc {

namespace {

bool branches_fit(const Circuit &c, size_t fixed, const VerifyBudget &budget) {
    size_t n_sys = c.num_system();
    size_t width = n_sys + (n_sys - fixed) + c.num_ancilla();
    if (width > MAX_DENSE_QUBITS) {
        return false;
    }
    double work = std::ldexp(1.0, (int)(measurement_count(c) + 2 * n_sys));
    return work <= budget.max_branch_work;
}

VerifyReport run_branches(
    const Circuit &candidate, const Eigen::MatrixXcd &full_target, const std::vector<size_t> &fixed, const VerifyBudget &budget) {
    VerifyReport r;
    r.method = VerifyMethod::Branches;
    size_t n_sys = candidate.num_system();
    size_t cols = size_t{1} << (n_sys - fixed.size());
    Eigen::MatrixXcd target(full_target.rows(), cols);
    for (size_t j = 0; j < cols; j++) {
        target.col(j) = full_target.col(embed_input_index(j, n_sys, fixed));
    }
    try {
        for_each_channel_branch(candidate, fixed, [&](const KrausBranch &k) {
            BranchReport b;
            b.bits = k.outcome_bits;
            b.probability = k.weight;
            b.zero = k.zero_probability;
            r.branch_count++;
            if (b.zero) {
                r.zero_branches++;
            } else {
                b.distance = normalized_operator_distance(target, k.op);
                r.max_distance = std::max(r.max_distance, b.distance);
                r.probability_sum += k.weight;
            }
            if (budget.list_branches) {
                r.branches.push_back(std::move(b));
            }
        });
    } catch (const SimulationError &e) {
        r.error = e.what();
        r.pass = false;
        return r;
    }
    r.pass = r.max_distance <= budget.tolerance && std::abs(r.probability_sum - 1) <= budget.tolerance;
    return r;
}

VerifyReport run_stabilizer(
    const Circuit &candidate, const Circuit &target, const std::vector<size_t> &fixed, const VerifyBudget &budget) {
    VerifyReport r;
    r.method = VerifyMethod::Stabilizer;
    auto res = choi_equivalence_check(candidate, target, budget.trials, budget.seed, fixed);
    r.trials = res.trials;
    for (auto &f : res.failures) {
        r.failures.emplace_back(f.seed, f.branch_bits);
    }
    r.pass = res.pass;
    return r;
}

VerifyReport dispatch(
    const Circuit &candidate,
    const Circuit &target,
    const std::function<Eigen::MatrixXcd()> &dense_target,
    const std::vector<size_t> &fixed,
    const VerifyBudget &budget) {
    if (candidate.num_system() != target.num_qubits()) {
        throw CircuitError(
            "candidate has " + std::to_string(candidate.num_system()) + " system qubits, target acts on " +
            std::to_string(target.num_qubits()));
    }
    bool clifford = candidate.is_clifford() && target.is_clifford();
    VerifyMethod m = budget.method;
    if (m == VerifyMethod::Auto) {
        if (branches_fit(candidate, fixed.size(), budget)) {
            m = VerifyMethod::Branches;
        } else if (clifford) {
            m = VerifyMethod::Stabilizer;
        } else {
            throw VerifyError("non-Clifford circuit is too large for the dense oracle; no method applies");
        }
    }
    if (m == VerifyMethod::Stabilizer) {
        if (!clifford) {
            throw VerifyError("stabilizer method needs Clifford circuits");
        }
        return run_stabilizer(candidate, target, fixed, budget);
    }
    size_t n_sys = candidate.num_system();
    if (n_sys + (n_sys - fixed.size()) + candidate.num_ancilla() > MAX_DENSE_QUBITS) {
        throw VerifyError("circuit too large for the branch method");
    }
    return run_branches(candidate, dense_target(), fixed, budget);
}

}  // namespace

VerifyReport check_equivalence(const Circuit &candidate, const GateSpec &spec, const VerifyBudget &budget) {
    if (candidate.num_system() != spec.num_system()) {
        throw CircuitError("candidate system qubit count does not match the gate");
    }
    return dispatch(
        candidate, reference_circuit(spec), [&]() { return build_target_operator(spec); }, spec.fixed_zero_inputs(), budget);
}

VerifyReport check_equivalence(
    const Circuit &candidate, const Circuit &target, const VerifyBudget &budget, const std::vector<size_t> &fixed_zero_inputs) {
    return dispatch(candidate, target, [&]() { return circuit_unitary(target); }, fixed_zero_inputs, budget);
}

const char *method_name(VerifyMethod m) {
    switch (m) {
        case VerifyMethod::Auto:
            return "auto";
        case VerifyMethod::Branches:
            return "branches";
        case VerifyMethod::Stabilizer:
            return "stabilizer";
    }
    return "?";
}

std::string bits_str(const std::vector<uint8_t> &bits) {
    std::string s;
    for (auto b : bits) {
        s += b ? '1' : '0';
    }
    return s;
}

nlohmann::json to_json(const VerifyReport &r) {
    nlohmann::json j;
    j["pass"] = r.pass;
    j["method"] = method_name(r.method);
    if (!r.error.empty()) {
        j["error"] = r.error;
    }
    if (r.method == VerifyMethod::Branches) {
        j["max_distance"] = r.max_distance;
        j["probability_sum"] = r.probability_sum;
        j["branch_count"] = r.branch_count;
        j["zero_branches"] = r.zero_branches;
        auto arr = nlohmann::json::array();
        for (const auto &b : r.branches) {
            arr.push_back({{"bits", bits_str(b.bits)}, {"prob", b.probability}, {"distance", b.distance}, {"zero", b.zero}});
        }
        j["branches"] = arr;
    } else {
        j["trials"] = r.trials;
        auto arr = nlohmann::json::array();
        for (const auto &[seed, bits] : r.failures) {
            arr.push_back({{"seed", seed}, {"branch_bits", bits_str(bits)}});
        }
        j["failures"] = arr;
    }
    return j;
}

}  // namespace dyncirc
