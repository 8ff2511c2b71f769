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

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "dyncirc/builders/dynamic.h"
#include "dyncirc/builders/reference.h"
#include "dyncirc/circuit/qasm.h"
#include "dyncirc/fidelity/fidelity.h"
#include "dyncirc/resources/resources.h"
#include "dyncirc/rewrites/rewrites.h"
#include "dyncirc/sim/stabilizer.h"
#include "dyncirc/topology/topology.h"
#include "dyncirc/verify/verify.h"
#include "json.hpp"

using namespace dyncirc;
using nlohmann::json;

namespace {

/// Input problems that should end with exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string &path) {
    std::stringstream ss;
    if (path.empty() || path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    ss << in.rdbuf();
    return ss.str();
}

Circuit load_circuit(const std::string &path) {
    std::string text = read_input(path);
    try {
        return parse_qasm(text);
    } catch (const ParseError &e) {
        std::string name = path.empty() || path == "-" ? "<stdin>" : path;
        throw UsageError(name + ": " + e.what());
    }
}

void write_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot write '" + path + "'");
    }
    out << text;
}

std::vector<double> parse_angles(const std::string &text) {
    std::vector<double> out;
    if (text.empty()) {
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            throw UsageError("bad angle '" + item + "'");
        }
    }
    return out;
}

std::pair<size_t, size_t> parse_range(const std::string &text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            size_t n = std::stoul(text);
            return {n, n};
        }
        return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
    } catch (const std::exception &) {
        throw UsageError("bad range '" + text + "', expected A..B or N");
    }
}

Eigen::Matrix2cd haar_unitary(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::Matrix2cd m;
    for (int i = 0; i < 4; i++) {
        m(i / 2, i % 2) = {g(rng), g(rng)};
    }
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
    Eigen::Matrix2cd q = qr.householderQ();
    Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < 2; k++) {
        q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
    }
    return q;
}

json circuit_json(const Circuit &c) {
    json j;
    j["num_qubits"] = c.num_qubits();
    j["num_clbits"] = c.num_clbits();
    auto roles = json::array();
    for (auto r : c.roles()) {
        roles.push_back(r == Role::System ? "system" : "ancilla");
    }
    j["roles"] = roles;
    auto insts = json::array();
    for (const auto &inst : c.instructions()) {
        json i;
        i["text"] = inst.str();
        i["qubits"] = inst.qubits;
        if (inst.kind == GateKind::RZ) {
            i["angle"] = inst.angle;
        }
        if (inst.kind == GateKind::Measure) {
            i["clbit"] = inst.clbit;
            i["basis"] = inst.basis == Basis::Z ? "Z" : "X";
        }
        if (inst.condition) {
            i["condition"] = {{"bits", inst.condition->bits}, {"negate", inst.condition->negate}};
        }
        insts.push_back(i);
    }
    j["instructions"] = insts;
    j["resources"] = to_json(measure_resources(c));
    return j;
}

TableFormat table_format(const std::string &f) {
    if (f == "csv") {
        return TableFormat::Csv;
    }
    if (f == "json") {
        return TableFormat::Json;
    }
    return TableFormat::Text;
}

// Named verification targets sized from the candidate's system qubits.
std::optional<GateSpec> named_target(const std::string &name, size_t num_system) {
    if (num_system < 2) {
        throw UsageError("named targets need at least two system qubits");
    }
    size_t n = num_system - 1;
    if (name == "star" || name == "fanout" || name == "line") {
        return GateSpec::fanout(n);
    }
    if (name == "ladder") {
        return GateSpec::ladder(n);
    }
    if (name == "ladder-up") {
        return GateSpec::ladder(n, LadderOrientation::Up);
    }
    if (name == "lrcnot") {
        return GateSpec::long_range_cnot(n);
    }
    if (name == "swap") {
        return GateSpec::swap(n);
    }
    if (name == "teleport") {
        return GateSpec::teleport(n);
    }
    return std::nullopt;
}

struct BuildArgs {
    std::string gate;
    size_t n = 0;
    bool up = false;
    std::string dynamic = "v2";
    bool unitary = false;
    bool star = false;
    std::string angles;
    std::string phi;
    std::string variant = "single";
    uint64_t seed = 1;
    std::string format = "qasm";
    std::string out;
};

Circuit run_build(const BuildArgs &a) {
    auto need_n = [&]() {
        if (a.n < 1) {
            throw UsageError("--n must be at least 1");
        }
        return a.n;
    };
    auto angles = parse_angles(a.angles);
    if (a.gate == "fanout") {
        size_t n = need_n();
        if (a.unitary) {
            return a.star ? build_unitary_star_fanout(n) : build_unitary_line_fanout(n);
        }
        if (a.dynamic == "v1") {
            return build_dynamic_fanout_v1(n);
        }
        if (a.dynamic == "v2") {
            return build_dynamic_fanout_v2(n);
        }
        throw UsageError("--dynamic must be v1 or v2");
    }
    if (a.gate == "ladder") {
        auto o = a.up ? LadderOrientation::Up : LadderOrientation::Down;
        return a.unitary ? build_unitary_ladder(need_n(), o) : build_dynamic_ladder(need_n(), o);
    }
    if (a.gate == "lrcnot") {
        return a.unitary ? build_unitary_long_range_cnot(need_n()) : build_dynamic_long_range_cnot(need_n());
    }
    GateSpec spec;
    if (a.gate == "swap") {
        spec = GateSpec::swap(need_n());
    } else if (a.gate == "teleport") {
        spec = GateSpec::teleport(need_n());
    } else if (a.gate == "multirz" || a.gate == "rzzfan") {
        if (angles.empty()) {
            throw UsageError(a.gate + " needs --angles");
        }
        spec = a.gate == "multirz" ? GateSpec::multi_rz(angles) : GateSpec::rzz_fan(angles);
        if (a.gate == "rzzfan" && !a.unitary) {
            if (a.variant != "single" && a.variant != "sandwich") {
                throw UsageError("--variant must be single or sandwich");
            }
            return build_dynamic_rzz_fan(
                angles, a.variant == "single" ? RzzFanVariant::SingleQubitRz : RzzFanVariant::Sandwich4Ladders);
        }
    } else if (a.gate == "cufan") {
        std::mt19937_64 rng(a.seed);
        std::vector<Eigen::Matrix2cd> us;
        for (size_t k = 0; k < need_n(); k++) {
            us.push_back(haar_unitary(rng));
        }
        spec = GateSpec::controlled_u_fan(us);
    } else if (a.gate == "cartwheel") {
        auto phi = parse_angles(a.phi);
        if (angles.size() < 3 || phi.size() != angles.size()) {
            throw UsageError("cartwheel needs --angles (ring) and --phi (spokes) of equal length >= 3");
        }
        spec = GateSpec::cart_wheel(angles, phi);
    } else {
        throw UsageError("unknown gate '" + a.gate + "'");
    }
    return a.unitary ? reference_circuit(spec) : build_dynamic(spec);
}

struct VerifyArgs {
    std::vector<std::string> files;
    std::string target;
    std::string method = "auto";
    size_t trials = 20;
    uint64_t seed = 1;
    double tolerance = 1e-9;
    std::string out;
};

int run_verify(const VerifyArgs &a) {
    if (a.files.size() > 2 || (a.files.size() == 2 && !a.target.empty())) {
        throw UsageError("verify takes a candidate and one target");
    }
    Circuit candidate = load_circuit(a.files.empty() ? "-" : a.files[0]);
    VerifyBudget budget;
    budget.trials = a.trials;
    budget.seed = a.seed;
    budget.tolerance = a.tolerance;
    if (a.method == "auto") {
        budget.method = VerifyMethod::Auto;
    } else if (a.method == "branches") {
        budget.method = VerifyMethod::Branches;
    } else if (a.method == "stabilizer") {
        budget.method = VerifyMethod::Stabilizer;
    } else {
        throw UsageError("--method must be auto, branches or stabilizer");
    }
    std::string target = a.files.size() == 2 ? a.files[1] : a.target;
    if (target.empty()) {
        throw UsageError("verify needs a target file or name");
    }
    VerifyReport report;
    if (std::filesystem::exists(target)) {
        report = check_equivalence(candidate, load_circuit(target), budget);
    } else if (auto spec = named_target(target, candidate.num_system())) {
        report = check_equivalence(candidate, *spec, budget);
    } else {
        throw UsageError("target '" + target + "' is neither a file nor a known gate name");
    }
    write_output(a.out, to_json(report).dump(2) + "\n");
    if (!report.pass) {
        std::cerr << "verification failed";
        if (!report.error.empty()) {
            std::cerr << ": " << report.error;
        }
        std::cerr << "\n";
        return 2;
    }
    return 0;
}

std::string crossover_output(const CrossoverResult &r, const std::string &format) {
    std::ostringstream out;
    if (format == "json") {
        json j;
        auto rows = json::array();
        for (const auto &row : r.rows) {
            rows.push_back(
                {{"n", row.n},
                 {"f_unitary", row.unitary.f_gate},
                 {"stderr_unitary", row.unitary.std_error},
                 {"f_dynamic", row.dynamic.f_gate},
                 {"stderr_dynamic", row.dynamic.std_error}});
        }
        j["rows"] = rows;
        j["crossover"] = r.crossover ? json(*r.crossover) : json(nullptr);
        out << j.dump(2) << "\n";
        return out.str();
    }
    char buf[200];
    if (format == "csv") {
        out << "n,f_unitary,stderr_unitary,f_dynamic,stderr_dynamic\n";
        for (const auto &row : r.rows) {
            snprintf(buf, sizeof buf, "%zu,%.6f,%.6f,%.6f,%.6f\n", row.n, row.unitary.f_gate, row.unitary.std_error,
                     row.dynamic.f_gate, row.dynamic.std_error);
            out << buf;
        }
        return out.str();
    }
    out << "   n   f_unitary      +-   f_dynamic      +-\n";
    for (const auto &row : r.rows) {
        snprintf(buf, sizeof buf, "%4zu  %10.4f  %6.4f  %10.4f  %6.4f%s\n", row.n, row.unitary.f_gate,
                 row.unitary.std_error, row.dynamic.f_gate, row.dynamic.std_error,
                 r.crossover && row.n == *r.crossover ? "  <- crossover" : "");
        out << buf;
    }
    if (!r.crossover) {
        out << "no crossover in range\n";
    }
    return out.str();
}

Embedding embedding_for(const std::string &hardware, const std::string &lattice) {
    auto colon = hardware.find(':');
    if (colon == std::string::npos) {
        throw UsageError("--hardware must look like heavyhex:D or line:L");
    }
    std::string kind = hardware.substr(0, colon);
    size_t size;
    try {
        size = std::stoul(hardware.substr(colon + 1));
    } catch (const std::exception &) {
        throw UsageError("bad hardware size in '" + hardware + "'");
    }
    if (kind == "line") {
        if (size % 2 == 0) {
            throw UsageError("line hardware needs an odd length");
        }
        return embed_line((size + 1) / 2);
    }
    if (kind != "heavyhex") {
        throw UsageError("unknown hardware '" + kind + "'");
    }
    if (lattice == "hexagonal") {
        return embed_heavy_hex(size, Lattice::Hexagonal);
    }
    if (lattice == "kagome") {
        return embed_heavy_hex(size, Lattice::Kagome);
    }
    throw UsageError("--lattice must be hexagonal or kagome");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Builds, verifies and analyses measurement-based constant-depth gates."};
    app.require_subcommand(1);

    BuildArgs build;
    auto *b = app.add_subcommand("build", "Build a circuit for a named gate and print it as OpenQASM 3.");
    b->add_option("gate", build.gate, "fanout, ladder, lrcnot, swap, teleport, multirz, rzzfan, cufan or cartwheel")
        ->required();
    b->add_option("--n", build.n, "Size parameter: the gate acts on n+1 system qubits");
    b->add_flag("--up", build.up, "Ladder with suffix orientation");
    b->add_option("--dynamic", build.dynamic, "Fan-out construction: v1 or v2")->capture_default_str();
    b->add_flag("--unitary", build.unitary, "Build the measurement-free reference circuit instead");
    b->add_flag("--star", build.star, "With --unitary: star-connected fan-out instead of the line");
    b->add_option("--angles", build.angles, "Comma-separated angles (multirz, rzzfan, cartwheel ring)");
    b->add_option("--phi", build.phi, "Comma-separated spoke angles for cartwheel");
    b->add_option("--variant", build.variant, "rzzfan construction: single or sandwich")->capture_default_str();
    b->add_option("--seed", build.seed, "Seed for the random unitaries of cufan")->capture_default_str();
    b->add_option("--format", build.format, "qasm or json")->capture_default_str();
    b->add_option("--out", build.out, "Output file (default stdout)");

    std::string rw_rule, rw_file = "-", rw_state = "unknown", rw_out;
    size_t rw_at = 0;
    auto *rw = app.add_subcommand("rewrite", "Apply one rewrite rule to a circuit.");
    rw->add_option("--rule", rw_rule, "defer, undefer, propagate, normalize, commute or skip")->required();
    rw->add_option("file", rw_file, "Input circuit (default stdin)");
    rw->add_option("--at", rw_at, "Instruction index for commute and skip");
    rw->add_option("--state", rw_state, "Skipped qubit for skip: unknown, zero or plus")->capture_default_str();
    rw->add_option("--out", rw_out, "Output file (default stdout)");

    VerifyArgs verify;
    auto *v = app.add_subcommand("verify", "Check a circuit against a target; exit code 2 when they differ.");
    v->add_option("files", verify.files, "Candidate circuit (default stdin), optionally followed by the target");
    v->add_option("--target", verify.target, "Target file, or star, fanout, ladder, ladder-up, lrcnot, swap, teleport");
    v->add_option("--method", verify.method, "auto, branches or stabilizer")->capture_default_str();
    v->add_option("--trials", verify.trials, "Stabilizer trials")->capture_default_str();
    v->add_option("--seed", verify.seed, "Seed for stabilizer trials")->capture_default_str();
    v->add_option("--tolerance", verify.tolerance, "Largest accepted branch distance")->capture_default_str();
    v->add_option("--out", verify.out, "Output file (default stdout)");

    size_t t_n = 4;
    std::string t_format = "text", t_out;
    auto *t = app.add_subcommand("table1", "Resource comparison table at size n.");
    t->add_option("--n", t_n, "Size parameter")->capture_default_str();
    t->add_option("--format", t_format, "text, csv or json")->capture_default_str();
    t->add_option("--out", t_out, "Output file (default stdout)");

    std::string c_gate = "fanout", c_range = "1..12", c_noise, c_format = "text", c_out;
    size_t c_m = 300, c_shots = 300;
    uint64_t c_seed = 7;
    auto *c = app.add_subcommand("crossover", "Noisy fidelity of unitary and dynamic circuits over a range of sizes.");
    c->add_option("--gate", c_gate, "fanout or lrcnot")->capture_default_str();
    c->add_option("--n", c_range, "Range A..B or a single size")->capture_default_str();
    c->add_option("--noise", c_noise, "Noise model JSON (defaults otherwise)");
    c->add_option("--m", c_m, "Pauli samples per estimate")->capture_default_str();
    c->add_option("--shots", c_shots, "Shots per Pauli sample")->capture_default_str();
    c->add_option("--seed", c_seed, "Seed")->capture_default_str();
    c->add_option("--format", c_format, "text, csv or json")->capture_default_str();
    c->add_option("--out", c_out, "Output file (default stdout)");

    std::string e_hw = "heavyhex:3", e_lattice = "hexagonal", e_route = "none", e_out;
    auto *e = app.add_subcommand("embed", "Embed a logical lattice into hardware and optionally route its gates.");
    e->add_option("--hardware", e_hw, "heavyhex:D or line:L")->capture_default_str();
    e->add_option("--lattice", e_lattice, "hexagonal or kagome (heavy-hex only)")->capture_default_str();
    e->add_option("--route", e_route, "none, native or periodic")->capture_default_str();
    e->add_option("--out", e_out, "Output file (default stdout)");

    size_t w_n = 3;
    std::string w_theta, w_phi, w_format = "qasm", w_out;
    auto *w = app.add_subcommand("cartwheel", "Cart-wheel interaction circuit on a line of 2n+1 qubits.");
    w->add_option("--n", w_n, "Ring size, at least 3")->capture_default_str();
    w->add_option("--theta", w_theta, "Ring angles, comma-separated (one value is repeated)");
    w->add_option("--phi", w_phi, "Spoke angles, comma-separated (one value is repeated)");
    w->add_option("--format", w_format, "qasm or json")->capture_default_str();
    w->add_option("--out", w_out, "Output file (default stdout)");

    std::string x_file = "-", x_format = "json", x_out;
    auto *x = app.add_subcommand("export", "Re-emit a circuit as qasm, json (with resources) or a text listing.");
    x->add_option("file", x_file, "Input circuit (default stdin)");
    x->add_option("--format", x_format, "qasm, json or text")->capture_default_str();
    x->add_option("--out", x_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &err) {
        return app.exit(err) == 0 ? 0 : 1;
    }

    try {
        if (*b) {
            Circuit circ = run_build(build);
            if (build.format == "json") {
                write_output(build.out, circuit_json(circ).dump(2) + "\n");
            } else if (build.format == "qasm") {
                write_output(build.out, to_qasm(circ));
            } else {
                throw UsageError("--format must be qasm or json");
            }
            return 0;
        }
        if (*rw) {
            Circuit in = load_circuit(rw_file);
            Circuit out;
            if (rw_rule == "defer") {
                out = defer_measurement(in);
            } else if (rw_rule == "undefer") {
                out = undefer_measurement(in);
            } else if (rw_rule == "propagate") {
                auto p = propagate_corrections(in);
                out = p.circuit;
                std::cerr << "frame: " << p.frame.str() << "\n";
            } else if (rw_rule == "normalize") {
                out = normalize_measurement_basis(in);
            } else if (rw_rule == "commute") {
                out = commute_cx_pair(in, rw_at);
            } else if (rw_rule == "skip") {
                SkippedState s = rw_state == "zero" ? SkippedState::Zero
                                 : rw_state == "plus" ? SkippedState::Plus
                                 : rw_state == "unknown" ? SkippedState::Unknown
                                                         : throw UsageError("--state must be unknown, zero or plus");
                out = expand_skip_cx(in, rw_at, s);
            } else {
                throw UsageError("unknown rule '" + rw_rule + "'");
            }
            write_output(rw_out, to_qasm(out));
            return 0;
        }
        if (*v) {
            return run_verify(verify);
        }
        if (*t) {
            if (t_format != "text" && t_format != "csv" && t_format != "json") {
                throw UsageError("--format must be text, csv or json");
            }
            write_output(t_out, format_table(table_one(t_n), table_format(t_format)));
            return 0;
        }
        if (*c) {
            CrossoverGate gate;
            if (c_gate == "fanout") {
                gate = CrossoverGate::Fanout;
            } else if (c_gate == "lrcnot") {
                gate = CrossoverGate::LongRangeCnot;
            } else {
                throw UsageError("--gate must be fanout or lrcnot");
            }
            NoiseModel noise;
            if (!c_noise.empty()) {
                try {
                    noise = NoiseModel::from_json(json::parse(read_input(c_noise)));
                } catch (const json::parse_error &err) {
                    throw UsageError(c_noise + ": " + err.what());
                }
            }
            auto [lo, hi] = parse_range(c_range);
            auto result = crossover_scan(gate, lo, hi, noise, c_m, c_shots, c_seed);
            write_output(c_out, crossover_output(result, c_format));
            return 0;
        }
        if (*e) {
            auto emb = embedding_for(e_hw, e_lattice);
            auto j = to_json(emb);
            j["valid"] = validate_embedding(emb).empty();
            if (e_route == "native" || e_route == "periodic") {
                std::vector<std::pair<size_t, size_t>> edges;
                if (e_route == "native") {
                    edges.assign(emb.logical_edges.begin(), emb.logical_edges.end());
                } else {
                    edges = periodic_boundary_edges(emb);
                }
                j["schedule"] = to_json(route_parallel(emb, edges));
            } else if (e_route != "none") {
                throw UsageError("--route must be none, native or periodic");
            }
            write_output(e_out, j.dump(2) + "\n");
            return 0;
        }
        if (*w) {
            auto expand = [&](const std::string &text) {
                auto a = parse_angles(text);
                if (a.empty()) {
                    a.push_back(0);
                }
                if (a.size() == 1) {
                    a.assign(w_n, a[0]);
                }
                return a;
            };
            Circuit circ = cart_wheel_circuit(w_n, expand(w_theta), expand(w_phi));
            if (w_format == "json") {
                write_output(w_out, circuit_json(circ).dump(2) + "\n");
            } else if (w_format == "qasm") {
                write_output(w_out, to_qasm(circ));
            } else {
                throw UsageError("--format must be qasm or json");
            }
            return 0;
        }
        if (*x) {
            Circuit circ = load_circuit(x_file);
            if (x_format == "qasm") {
                write_output(x_out, to_qasm(circ));
            } else if (x_format == "json") {
                write_output(x_out, circuit_json(circ).dump(2) + "\n");
            } else if (x_format == "text") {
                std::ostringstream out;
                for (size_t i = 0; i < circ.instructions().size(); i++) {
                    out << i << "\t" << circ.instructions()[i].str() << "\n";
                }
                write_output(x_out, out.str());
            } else {
                throw UsageError("--format must be qasm, json or text");
            }
            return 0;
        }
    } catch (const std::exception &err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 1;
}
