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


// Acceptance checks. Prints one line per criterion and exits nonzero if any fails.

#include <Eigen/Dense>
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dyncirc/builders/dynamic.h"
#include "dyncirc/builders/reference.h"
#include "dyncirc/circuit/circuit.h"
#include "dyncirc/fidelity/fidelity.h"
#include "dyncirc/resources/resources.h"
#include "dyncirc/rewrites/rewrites.h"
#include "dyncirc/sim/stabilizer.h"
#include "dyncirc/sim/statevector.h"
#include "dyncirc/topology/topology.h"
#include "dyncirc/verify/abc.h"
#include "dyncirc/verify/verify.h"

using namespace dyncirc;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

Eigen::Matrix2cd haar_2x2(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::Matrix2cd z;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            z(i, j) = {g(rng), g(rng)};
        }
    }
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(z);
    Eigen::Matrix2cd q = qr.householderQ();
    Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 2; i++) {
        q.col(i) *= r(i, i) / std::abs(r(i, i));
    }
    return q;
}

// ---------------------------------------------------------------- 1

// Transcribed by hand from the comparison table; kept apart from the library's table.
struct TableOracle {
    const char *protocol, *implementation, *connectivity;
    std::function<std::vector<long>(long)> counts;  // qubits, rounds, measurements, depth, cnots
    bool even_only;
};

std::vector<TableOracle> table_oracle() {
    auto sign = [](long n) { return n % 2 == 0 ? 1L : -1L; };
    return {
        {"fanout", "unitary", "star", [](long n) { return std::vector<long>{n + 1, 0, 0, n, n}; }, false},
        {"fanout", "unitary", "line", [](long n) { return std::vector<long>{n + 1, 0, 0, 2 * n - 1, 2 * n - 1}; }, false},
        {"fanout", "buhrman", "line", [](long n) { return std::vector<long>{3 * n + 1, 2, 4 * n, 6, 6 * n - 1}; }, false},
        {"fanout", "piroli", "ladder", [](long n) { return std::vector<long>{2 * n, 2, 3 * n / 2 - 2, 4, 5 * n / 2 - 2}; }, true},
        {"fanout", "piroli", "line", [](long n) { return std::vector<long>{2 * n, 2, 3 * n / 2 - 2, 12, 7 * n - 8}; }, true},
        {"fanout", "dynamic-v1", "line", [](long n) { return std::vector<long>{2 * n + 1, 2, 2 * n - 1, 4, 4 * n - 2}; }, false},
        {"fanout", "dynamic-v2", "line", [](long n) { return std::vector<long>{2 * n + 1, 1, n, 5, 3 * n - 1}; }, false},
        {"cnot-ladder", "unitary", "line", [](long n) { return std::vector<long>{n + 1, 0, 0, n, n}; }, false},
        {"cnot-ladder", "dynamic", "line", [](long n) { return std::vector<long>{2 * n + 1, 1, n, 2, 2 * n}; }, false},
        {"long-range-cnot", "unitary", "line",
         [sign](long n) { return std::vector<long>{n + 1, 0, 0, 2 * n + sign(n), 4 * n - 3}; }, false},
        {"long-range-cnot", "dynamic", "line", [](long n) { return std::vector<long>{2 * n + 1, 1, n, 7, 4 * n - 2}; }, false},
    };
}

std::vector<std::string> split_csv_fields(const std::string &line, size_t count) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (out.size() < count && std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    return out;
}

Outcome criterion_1() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto oracle = table_oracle();
    size_t cells = 0;
    std::vector<std::string> relaxed;
    for (long n : {2, 4, 10, 50, 100}) {
        std::stringstream out(format_table(table_one((size_t)n), TableFormat::Csv));
        std::string line;
        std::getline(out, line);  // header
        size_t row = 0;
        while (std::getline(out, line)) {
            if (row >= oracle.size()) {
                o.pass = false;
                o.detail += " extra row at n=" + std::to_string(n) + ";";
                break;
            }
            const auto &want = oracle[row++];
            auto f = split_csv_fields(line, 8);
            if (f.size() < 8 || f[0] != want.protocol || f[1] != want.implementation || f[2] != want.connectivity) {
                o.pass = false;
                o.detail += " row label mismatch: " + line + ";";
                continue;
            }
            auto expect = want.counts(n);
            for (size_t k = 0; k < 5; k++) {
                long got = std::stol(f[3 + k]);
                cells++;
                if (got == expect[k]) {
                    continue;
                }
                // Depth is a closed form for n >= 3; below that the circuit is shallower.
                bool small_depth = k == 3 && n < 3 && got < expect[k];
                if (small_depth) {
                    relaxed.push_back(std::string(want.implementation) + "@n=" + std::to_string(n) + " depth " +
                                      std::to_string(got) + "<" + std::to_string(expect[k]));
                    continue;
                }
                o.pass = false;
                o.detail += " " + std::string(want.protocol) + "/" + want.implementation + " n=" + std::to_string(n) +
                            " col " + std::to_string(k) + ": " + std::to_string(got) + " vs " +
                            std::to_string(expect[k]) + ";";
            }
        }
        if (row != oracle.size()) {
            o.pass = false;
            o.detail += " " + std::to_string(row) + " rows at n=" + std::to_string(n) + ";";
        }
    }
    double dt = seconds_since(t0);
    if (dt >= 1) {
        o.pass = false;
    }
    o.detail += " " + std::to_string(oracle.size()) + " rows, " + std::to_string(cells) + " cells, " +
                fmt("%.3f s", dt);
    for (const auto &r : relaxed) {
        o.detail += "; small-n " + r;
    }
    return o;
}

// ---------------------------------------------------------------- 2

Outcome criterion_2() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    VerifyBudget budget;
    budget.method = VerifyMethod::Branches;
    budget.tolerance = 1e-10;
    budget.list_branches = false;
    double worst = 0, worst_sum = 0;
    size_t branches = 0, checks = 0;
    for (size_t n = 1; n <= 6; n++) {
        std::vector<std::pair<Circuit, GateSpec>> cases = {
            {build_dynamic_ladder(n), GateSpec::ladder(n)},
            {build_dynamic_fanout_v1(n), GateSpec::fanout(n)},
            {build_dynamic_fanout_v2(n), GateSpec::fanout(n)},
            {build_dynamic_long_range_cnot(n), GateSpec::long_range_cnot(n)},
            {build_dynamic_teleportation(n), GateSpec::teleport(n)},
            {build_dynamic_swap(n), GateSpec::swap(n)},
        };
        for (const auto &[c, spec] : cases) {
            auto r = check_equivalence(c, spec, budget);
            checks++;
            branches += r.branch_count;
            worst = std::max(worst, r.max_distance);
            worst_sum = std::max(worst_sum, std::abs(r.probability_sum - 1));
            if (!r.pass || r.max_distance > 1e-10 || std::abs(r.probability_sum - 1) > 1e-10) {
                o.pass = false;
                o.detail += " " + spec.name() + " failed;";
            }
        }
    }
    double dt = seconds_since(t0);
    if (dt >= 300) {
        o.pass = false;
    }
    o.detail += " " + std::to_string(checks) + " circuits, " + std::to_string(branches) +
                " branches, max distance " + fmt("%.2e", worst) + ", max |sum p - 1| " + fmt("%.2e", worst_sum) +
                ", " + fmt("%.1f s", dt);
    return o;
}

// ---------------------------------------------------------------- 3

Outcome criterion_3() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    VerifyBudget budget;
    budget.method = VerifyMethod::Stabilizer;
    budget.trials = 20;
    budget.seed = 2026;
    for (const auto &spec : {GateSpec::fanout(50), GateSpec::long_range_cnot(50)}) {
        auto c = build_dynamic(spec);
        auto r = check_equivalence(c, spec, budget);
        o.detail += " " + spec.name() + " on " + std::to_string(c.num_qubits()) + " qubits: " +
                    std::to_string(r.trials - r.failures.size()) + "/" + std::to_string(r.trials) + ";";
        if (!r.pass || r.trials != 20 || c.num_qubits() != 101) {
            o.pass = false;
        }
    }
    double dt = seconds_since(t0);
    if (dt >= 60) {
        o.pass = false;
    }
    o.detail += fmt(" %.2f s", dt);
    return o;
}

// ---------------------------------------------------------------- 4

Outcome criterion_4() {
    Outcome o;
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    VerifyBudget budget;
    budget.method = VerifyMethod::Branches;
    budget.tolerance = 1e-9;
    budget.list_branches = false;
    const char *names[] = {"multi-rz", "rzz-fan sandwich", "rzz-fan single-rz", "controlled-u fan"};
    double worst = 0;
    for (int kind = 0; kind < 4; kind++) {
        size_t ok = 0;
        for (size_t draw = 0; draw < 20; draw++) {
            size_t n = 1 + draw % 4;
            std::vector<double> angles(n);
            for (auto &a : angles) {
                a = angle(rng);
            }
            Circuit c;
            GateSpec spec;
            if (kind == 0) {
                c = build_dynamic_multi_rz(angles);
                spec = GateSpec::multi_rz(angles);
            } else if (kind == 1 || kind == 2) {
                c = build_dynamic_rzz_fan(angles, kind == 1 ? RzzFanVariant::Sandwich4Ladders : RzzFanVariant::SingleQubitRz);
                spec = GateSpec::rzz_fan(angles);
            } else {
                std::vector<Eigen::Matrix2cd> us;
                for (size_t k = 0; k < n; k++) {
                    us.push_back(haar_2x2(rng));
                }
                c = build_dynamic_controlled_u_fan(us);
                spec = GateSpec::controlled_u_fan(us);
            }
            auto r = check_equivalence(c, spec, budget);
            worst = std::max(worst, r.max_distance);
            ok += r.pass && r.max_distance <= 1e-9;
        }
        o.detail += std::string(" ") + names[kind] + " " + std::to_string(ok) + "/20;";
        if (ok != 20) {
            o.pass = false;
        }
    }
    o.detail += " max distance " + fmt("%.2e", worst);
    return o;
}

// ---------------------------------------------------------------- 5

double instrument_gap(const Circuit &a, const Circuit &b) {
    auto ja = outcome_choi_matrices(a);
    auto jb = outcome_choi_matrices(b);
    double worst = 0;
    for (const auto &[bits, m] : ja) {
        auto it = jb.find(bits);
        worst = std::max(worst, it == jb.end() ? m.cwiseAbs().maxCoeff() : (m - it->second).cwiseAbs().maxCoeff());
    }
    for (const auto &[bits, m] : jb) {
        if (!ja.count(bits)) {
            worst = std::max(worst, m.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

/// Random gates over `qubits`, with mid-circuit measurements and parity-conditioned
/// Paulis when `dynamic` is set. Measurement bases are drawn from {Z, X} if `x_basis`.
void random_gates(Circuit &c, std::mt19937_64 &rng, size_t count, const std::vector<size_t> &qubits, bool dynamic,
                  bool x_basis = false, bool resets = false) {
    std::uniform_int_distribution<size_t> pick(0, qubits.size() - 1);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<size_t> written;
    for (size_t k = 0; k < count; k++) {
        size_t q = qubits[pick(rng)];
        int op = (int)(rng() % (dynamic ? 10 : 7));
        switch (op) {
            case 0: c.h(q); break;
            case 1: c.s(q); break;
            case 2: c.sdg(q); break;
            case 3: c.x(q); break;
            case 4: c.rz(q, angle(rng)); break;
            case 5:
            case 6: {
                size_t t = qubits[pick(rng)];
                if (t == q) {
                    c.h(q);
                } else {
                    c.cx(q, t);
                }
                break;
            }
            case 7: {
                size_t b = c.add_clbits(1);
                c.measure(q, b, x_basis && rng() % 2 ? Basis::X : Basis::Z);
                written.push_back(b);
                if (resets && rng() % 2) {
                    c.reset(q);
                }
                break;
            }
            default: {
                if (written.empty()) {
                    c.z(q);
                    break;
                }
                std::vector<size_t> bits;
                for (auto b : written) {
                    if (rng() % 2) {
                        bits.push_back(b);
                    }
                }
                if (bits.empty()) {
                    bits.push_back(written.back());
                }
                auto kind = rng() % 2 ? GateKind::X : GateKind::Z;
                c.append(Instruction::gate(kind, q).conditioned(ClassicalCondition(bits, rng() % 4 == 0)));
            }
        }
    }
}

std::vector<size_t> range(size_t n) {
    std::vector<size_t> v(n);
    for (size_t i = 0; i < n; i++) {
        v[i] = i;
    }
    return v;
}

double chi_squared_p(const std::map<std::vector<uint8_t>, size_t> &a, const std::map<std::vector<uint8_t>, size_t> &b) {
    std::map<std::vector<uint8_t>, std::pair<double, double>> bins;
    double na = 0, nb = 0;
    for (const auto &[k, v] : a) {
        bins[k].first = (double)v;
        na += (double)v;
    }
    for (const auto &[k, v] : b) {
        bins[k].second = (double)v;
        nb += (double)v;
    }
    if (bins.size() < 2) {
        return 1;
    }
    double stat = 0;
    double ka = std::sqrt(nb / na), kb = std::sqrt(na / nb);
    for (const auto &[k, v] : bins) {
        double d = ka * v.first - kb * v.second;
        stat += d * d / (v.first + v.second);
    }
    boost::math::chi_squared dist((double)(bins.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

std::map<std::vector<uint8_t>, size_t> sample(const Circuit &c, size_t shots, uint64_t seed) {
    std::map<std::vector<uint8_t>, size_t> hist;
    for (size_t s = 0; s < shots; s++) {
        hist[run(c, derive_seed(seed, s)).bits]++;
    }
    return hist;
}

/// Random Clifford input on the system qubits, then the circuit, then random local
/// Cliffords and a Z measurement of every system qubit.
Circuit wrap_for_sampling(const Circuit &c, std::mt19937_64 &rng) {
    Circuit w(c.roles(), c.num_clbits(), Connectivity::complete(c.num_qubits()));
    auto sys = c.system_qubits();
    std::uniform_int_distribution<size_t> pick(0, sys.size() - 1);
    for (size_t k = 0; k < 4 * sys.size(); k++) {
        size_t q = sys[pick(rng)], t = sys[pick(rng)];
        switch (rng() % 4) {
            case 0: w.h(q); break;
            case 1: w.s(q); break;
            case 2: w.x(q); break;
            default:
                if (q != t) {
                    w.cx(q, t);
                }
        }
    }
    for (const auto &inst : c.instructions()) {
        w.append(inst);
    }
    for (auto q : sys) {
        if (rng() % 2) {
            w.h(q);
        }
        if (rng() % 2) {
            w.s(q);
        }
        w.measure(q, w.add_clbits(1));
    }
    return w;
}

Outcome criterion_5() {
    Outcome o;
    std::mt19937_64 rng(55);
    double worst_a = 0, worst_b = 0, worst_c = 0;

    // (a) exchanging two CX gates that share a qubit.
    for (size_t t = 0; t < 50; t++) {
        Circuit c(4, 0, Connectivity::complete(4));
        random_gates(c, rng, 8, range(4), true);
        std::vector<size_t> p = range(4);
        std::shuffle(p.begin(), p.end(), rng);
        size_t a = p[0], b = p[1], d = p[2];
        size_t pos = c.instructions().size();
        switch (t % 4) {
            case 0: c.cx(a, b).cx(b, d); break;  // target feeds control
            case 1: c.cx(b, d).cx(a, b); break;
            case 2: c.cx(a, b).cx(a, d); break;  // shared control
            default: c.cx(a, d).cx(b, d); break;  // shared target
        }
        random_gates(c, rng, 8, range(4), true);
        worst_a = std::max(worst_a, instrument_gap(c, commute_cx_pair(c, pos)));
    }

    // (b) next-nearest-neighbour CX across a middle qubit, with and without a known middle state.
    for (size_t t = 0; t < 50; t++) {
        Circuit c(4, 0, Connectivity::complete(4));
        size_t lo = rng() % 2, mid = lo + 1, hi = lo + 2;
        auto skipped = (SkippedState)(t % 3);
        std::vector<size_t> others;
        for (size_t q = 0; q < 4; q++) {
            if (q != mid) {
                others.push_back(q);
            }
        }
        random_gates(c, rng, 8, range(4), true);
        if (skipped != SkippedState::Unknown) {
            c.reset(mid);
            if (skipped == SkippedState::Plus) {
                c.h(mid);
            }
            random_gates(c, rng, 4, others, false);
        }
        size_t pos = c.instructions().size();
        if (rng() % 2) {
            c.cx(lo, hi);
        } else {
            c.cx(hi, lo);
        }
        random_gates(c, rng, 8, range(4), true);
        worst_b = std::max(worst_b, instrument_gap(c, expand_skip_cx(c, pos, skipped)));
    }

    // (c) measurements moved to the end with quantum-controlled corrections.
    for (size_t t = 0; t < 50; t++) {
        Circuit c(3, 0, Connectivity::complete(3));
        random_gates(c, rng, 14, range(3), true, true, true);
        worst_c = std::max(worst_c, instrument_gap(c, defer_measurement(normalize_measurement_basis(c))));
    }

    o.pass = worst_a <= 1e-10 && worst_b <= 1e-10 && worst_c <= 1e-10;
    o.detail += " commute " + fmt("%.1e", worst_a) + ", skip " + fmt("%.1e", worst_b) + ", defer " +
                fmt("%.1e", worst_c) + " (50 instances each);";

    // Sampled round trip.
    double min_p = 1;
    std::vector<std::pair<std::string, Circuit>> cases = {
        {"ladder(2)", build_dynamic_ladder(2)},
        {"fanout-v1(2)", build_dynamic_fanout_v1(2)},
        {"fanout-v2(3)", build_dynamic_fanout_v2(3)},
        {"lrcnot(2)", build_dynamic_long_range_cnot(2)},
        {"swap(1)", build_dynamic_swap(1)},
    };
    uint64_t seed = 500;
    for (const auto &[name, c] : cases) {
        auto wrapped = wrap_for_sampling(c, rng);
        auto deferred = defer_measurement(normalize_measurement_basis(wrapped));
        auto back = undefer_measurement(deferred);
        auto h0 = sample(wrapped, 10000, seed++);
        double p1 = chi_squared_p(h0, sample(deferred, 10000, seed++));
        double p2 = chi_squared_p(h0, sample(back, 10000, seed++));
        min_p = std::min({min_p, p1, p2});
        if (p1 <= 1e-3 || p2 <= 1e-3) {
            o.pass = false;
            o.detail += " " + name + " p=" + fmt("%.2e", std::min(p1, p2)) + ";";
        }
    }
    o.detail += " defer/undefer round trip on " + std::to_string(cases.size()) + " circuits, 10^4 shots, min p " +
                fmt("%.3f", min_p);
    return o;
}

// ---------------------------------------------------------------- 6

Outcome criterion_6() {
    Outcome o;
    std::mt19937_64 rng(66);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    const std::complex<double> i(0, 1);
    Eigen::Matrix2cd X;
    X << 0, 1, 1, 0;
    double worst = 0;
    size_t degenerate = 0;
    for (size_t k = 0; k < 100; k++) {
        Eigen::Matrix2cd u;
        if (k % 10 == 3) {
            u << std::exp(i * phase(rng)), 0, 0, std::exp(i * phase(rng));
            degenerate++;
        } else if (k % 10 == 7) {
            u << 0, std::exp(i * phase(rng)), std::exp(i * phase(rng)), 0;
            degenerate++;
        } else {
            u = haar_2x2(rng);
        }
        auto d = abc_decompose(u);
        double e1 = (d.A * d.B * d.C - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
        double e2 = (std::exp(i * d.theta) * d.A * X * d.B * X * d.C - u).cwiseAbs().maxCoeff();
        worst = std::max({worst, e1, e2});
    }
    o.pass = worst <= 1e-10;
    o.detail = " 100 unitaries (" + std::to_string(degenerate) + " diagonal or antidiagonal), max error " +
               fmt("%.2e", worst);
    return o;
}

// ---------------------------------------------------------------- 7

struct CalibrationCase {
    std::string name;
    Circuit noisy, target;
    NoisePlan plan;
    Eigen::MatrixXcd target_op;
};

Outcome criterion_7() {
    Outcome o;

    // Zero noise.
    bool exact_one = true;
    for (const auto &spec : {GateSpec::fanout(3), GateSpec::long_range_cnot(3), GateSpec::ladder(2)}) {
        auto est = estimate_fidelity(build_dynamic(spec), reference_circuit(spec), NoiseModel::noiseless(), 50, 20, 3);
        exact_one = exact_one && est.f_proc == 1.0 && est.f_gate == 1.0;
    }
    if (!exact_one) {
        o.pass = false;
    }
    o.detail += std::string(" zero noise ") + (exact_one ? "exactly 1" : "NOT 1") + ";";

    std::vector<CalibrationCase> cases;
    {
        Circuit cx(2, 0);
        cx.cx(0, 1);
        auto m = NoiseModel::noiseless();
        m.p_cx = 0.01;
        cases.push_back({"cx", cx, cx, build_noise_plan(cx, m), circuit_unitary(cx)});
    }
    {
        auto spec = GateSpec::ladder(1);
        auto c = build_dynamic(spec);
        auto m = NoiseModel::noiseless();
        m.p_cx = 0.02;
        m.p_meas = 0.03;
        cases.push_back({"dynamic ladder(1)", c, reference_circuit(spec), build_noise_plan(c, m), build_target_operator(spec)});
    }
    {
        Circuit idle(1, 0);
        NoisePlan plan{{{0, true, false, {NoiseChannel::Kind::Depolarize1, {0}, 0.1}}}};
        cases.push_back({"idle", idle, idle, plan, Eigen::MatrixXcd::Identity(2, 2)});
    }
    uint64_t seed = 7000;
    for (const auto &cc : cases) {
        double exact = exact_process_fidelity_small(noisy_kraus_operators(cc.noisy, cc.plan), cc.target_op);
        size_t inside = 0;
        for (size_t r = 0; r < 40; r++) {
            auto est = estimate_fidelity(cc.noisy, cc.target, cc.plan, 300, 300, seed++);
            inside += std::abs(est.f_proc - exact) <= 3 * est.std_error;
        }
        if (inside < 38) {
            o.pass = false;
        }
        o.detail += " " + cc.name + " (F=" + fmt("%.4f", exact) + ") " + std::to_string(inside) + "/40 within 3 sigma;";
    }

    // Spread across repeats should shrink as 1/sqrt(m).
    auto spec = GateSpec::ladder(2);
    auto c = build_dynamic(spec);
    auto target = reference_circuit(spec);
    auto m = NoiseModel::noiseless();
    m.p_cx = 0.03;
    m.p_meas = 0.03;
    auto plan = build_noise_plan(c, m);
    auto spread = [&](size_t samples, size_t repeats) {
        std::vector<double> f;
        for (size_t r = 0; r < repeats; r++) {
            f.push_back(estimate_fidelity(c, target, plan, samples, 50, seed++).f_proc);
        }
        double mean = 0, var = 0;
        for (double v : f) {
            mean += v / (double)f.size();
        }
        for (double v : f) {
            var += (v - mean) * (v - mean) / (double)(f.size() - 1);
        }
        return std::sqrt(var);
    };
    double s25 = spread(25, 80), s400 = spread(400, 40);
    double ratio = s25 / s400;
    if (ratio < 4 * 0.7 || ratio > 4 * 1.3) {
        o.pass = false;
    }
    o.detail += " stderr ratio m=25/m=400 " + fmt("%.2f", ratio);
    return o;
}

// ---------------------------------------------------------------- 8

Outcome criterion_8() {
    Outcome o;
    auto noise = NoiseModel{};
    auto fan = crossover_scan(CrossoverGate::Fanout, 1, 16, noise, 300, 100, 7);
    auto cnot = crossover_scan(CrossoverGate::LongRangeCnot, 1, 16, noise, 300, 100, 7);
    auto show = [](const std::optional<size_t> &v) { return v ? std::to_string(*v) : std::string("none"); };
    o.pass = fan.crossover && *fan.crossover >= 2 && *fan.crossover <= 15 && cnot.crossover &&
             *cnot.crossover + 1 >= *fan.crossover;
    o.detail = " default noise, n=1..16, m=300, shots=100: n*_fanout=" + show(fan.crossover) +
               ", n*_cnot=" + show(cnot.crossover);
    return o;
}

// ---------------------------------------------------------------- 9

Outcome criterion_9() {
    Outcome o;
    size_t embeddings = 0, schedules = 0;
    for (size_t d = 2; d <= 7; d++) {
        for (auto lattice : {Lattice::Hexagonal, Lattice::Kagome}) {
            auto e = embed_heavy_hex(d, lattice);
            auto err = validate_embedding(e);
            embeddings++;
            if (!err.empty()) {
                o.pass = false;
                o.detail += " d=" + std::to_string(d) + " " + lattice_name(lattice) + ": " + err + ";";
            }
            std::vector<std::pair<size_t, size_t>> native(e.logical_edges.begin(), e.logical_edges.end());
            for (const auto &edges : {native, periodic_boundary_edges(e)}) {
                auto s = route_parallel(e, edges);
                auto serr = validate_schedule(e, s);
                schedules++;
                if (!serr.empty() || s.num_gates() != edges.size()) {
                    o.pass = false;
                    o.detail += " schedule d=" + std::to_string(d) + ": " + serr + ";";
                }
            }
        }
    }
    o.detail += " " + std::to_string(embeddings) + " embeddings, " + std::to_string(schedules) + " schedules valid;";

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    auto draw = [&](size_t n) {
        std::vector<double> v(n);
        for (auto &a : v) {
            a = angle(rng);
        }
        return v;
    };
    auto ring = draw(3), spokes = draw(3);
    auto wheel = cart_wheel_circuit(3, ring, spokes);
    VerifyBudget budget;
    budget.method = VerifyMethod::Branches;
    budget.tolerance = 1e-9;
    budget.list_branches = false;
    auto r = check_equivalence(wheel, GateSpec::cart_wheel(ring, spokes), budget);
    size_t rounds3 = measurement_rounds(wheel);
    size_t rounds10 = measurement_rounds(cart_wheel_circuit(10, draw(10), draw(10)));
    if (!r.pass || r.max_distance > 1e-9 || rounds3 != rounds10) {
        o.pass = false;
    }
    o.detail += " cart wheel n=3 distance " + fmt("%.2e", r.max_distance) + ", rounds n=3: " + std::to_string(rounds3) +
                ", n=10: " + std::to_string(rounds10);
    return o;
}

}  // namespace

int main() {
    std::vector<std::function<Outcome()>> criteria = {
        criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
        criterion_6, criterion_7, criterion_8, criterion_9,
    };
    bool all = true;
    for (size_t k = 0; k < criteria.size(); k++) {
        Outcome o;
        try {
            o = criteria[k]();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string(" exception: ") + e.what();
        }
        all = all && o.pass;
        std::printf("criterion %zu: %s%s\n", k + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
