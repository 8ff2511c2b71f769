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
#include "dyncirc/resources/resources.h"

#include <iomanip>
#include <sstream>

#include "dyncirc/builders/dynamic.h"
#include "dyncirc/builders/reference.h"

namespace dyncirc {

namespace {

constexpr const char *DASH = "—";

Topology infer_topology(const Circuit &c) {
    const auto &conn = c.connectivity();
    if (conn.kind == Connectivity::Kind::Line) {
        return Topology::Line;
    }
    size_t n = c.num_qubits();
    if (n >= 2 && conn.edges.size() == n * (n - 1) / 2) {
        return Topology::AllToAll;
    }
    bool star = !conn.edges.empty();
    for (const auto &[a, b] : conn.edges) {
        star &= a == 0;
    }
    return star ? Topology::Star : Topology::Graph;
}

Affine lin(long num, long offset, long den = 1, long parity = 0) {
    return {num, offset, den, parity};
}

Affine k(long c) {
    return Affine::constant(c);
}

std::string fmt(const ResourceReport &r, size_t v) {
    return r.defined ? std::to_string(v) : std::string(DASH);
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

// Display width ignoring UTF-8 continuation bytes.
size_t width(const std::string &s) {
    size_t w = 0;
    for (unsigned char ch : s) {
        w += (ch & 0xC0) != 0x80;
    }
    return w;
}

}  // namespace

std::string topology_name(Topology t) {
    switch (t) {
        case Topology::Star:
            return "star";
        case Topology::Line:
            return "line";
        case Topology::Ladder:
            return "ladder";
        case Topology::AllToAll:
            return "all-to-all";
        case Topology::Graph:
            return "graph";
    }
    return "?";
}

bool ResourceReport::same_counts(const ResourceReport &o) const {
    return defined == o.defined && qubits == o.qubits && rounds == o.rounds && measurements == o.measurements &&
           cnot_depth == o.cnot_depth && cnot_count == o.cnot_count;
}

std::optional<long> Affine::at(size_t n) const {
    long numer = num * (long)n + offset;
    if (numer % den != 0) {
        return std::nullopt;
    }
    return numer / den + (n % 2 == 0 ? parity : -parity);
}

std::string Affine::str() const {
    std::ostringstream ss;
    bool any = false;
    if (num != 0) {
        if (den != 1) {
            ss << "(";
        }
        if (num == -1) {
            ss << "-";
        } else if (num != 1) {
            ss << num;
        }
        ss << "n";
        any = true;
    }
    if (offset != 0 || !any) {
        if (any) {
            ss << (offset < 0 ? "-" : "+") << std::labs(offset);
        } else {
            ss << offset;
        }
        any = true;
    }
    if (den != 1) {
        if (num != 0) {
            ss << ")";
        }
        ss << "/" << den;
    }
    if (parity != 0) {
        ss << (parity < 0 ? "-" : "+");
        if (std::labs(parity) != 1) {
            ss << std::labs(parity);
        }
        ss << "(-1)^n";
    }
    return ss.str();
}

ResourceReport ProtocolFormula::evaluate(size_t n) const {
    ResourceReport r;
    r.protocol = protocol;
    r.implementation = implementation;
    r.connectivity = connectivity;
    auto q = qubits.at(n), ro = rounds.at(n), m = measurements.at(n), d = cnot_depth.at(n), c = cnot_count.at(n);
    if (!q || !ro || !m || !d || !c || *q < 0 || *ro < 0 || *m < 0 || *d < 0 || *c < 0) {
        r.defined = false;
        r.note = "closed form not integral at n=" + std::to_string(n);
        return r;
    }
    r.qubits = (size_t)*q;
    r.rounds = (size_t)*ro;
    r.measurements = (size_t)*m;
    r.cnot_depth = (size_t)*d;
    r.cnot_count = (size_t)*c;
    return r;
}

ResourceReport measure_resources(const Circuit &circuit, std::string protocol, std::string implementation) {
    ResourceReport r;
    r.protocol = std::move(protocol);
    r.implementation = std::move(implementation);
    r.connectivity = infer_topology(circuit);
    r.qubits = circuit.num_qubits();
    r.rounds = measurement_rounds(circuit);
    r.measurements = measurement_count(circuit);
    r.cnot_depth = cnot_depth(circuit);
    r.cnot_count = cnot_count(circuit);
    return r;
}

const std::vector<ProtocolFormula> &table_one_formulas() {
    static const std::vector<ProtocolFormula> rows = {
        {"fanout", "unitary", Topology::Star, lin(1, 1), k(0), k(0), lin(1, 0), lin(1, 0), true},
        {"fanout", "unitary", Topology::Line, lin(1, 1), k(0), k(0), lin(2, -1), lin(2, -1), true},
        {"fanout", "buhrman", Topology::Line, lin(3, 1), k(2), lin(4, 0), k(6), lin(6, -1), false},
        {"fanout", "piroli", Topology::Ladder, lin(2, 0), k(2), lin(3, -4, 2), k(4), lin(5, -4, 2), false},
        {"fanout", "piroli", Topology::Line, lin(2, 0), k(2), lin(3, -4, 2), k(12), lin(7, -8), false},
        {"fanout", "dynamic-v1", Topology::Line, lin(2, 1), k(2), lin(2, -1), k(4), lin(4, -2), true},
        {"fanout", "dynamic-v2", Topology::Line, lin(2, 1), k(1), lin(1, 0), k(5), lin(3, -1), true},
        {"cnot-ladder", "unitary", Topology::Line, lin(1, 1), k(0), k(0), lin(1, 0), lin(1, 0), true},
        {"cnot-ladder", "dynamic", Topology::Line, lin(2, 1), k(1), lin(1, 0), k(2), lin(2, 0), true},
        {"long-range-cnot", "unitary", Topology::Line, lin(1, 1), k(0), k(0), lin(2, 0, 1, 1), lin(4, -3), true},
        {"long-range-cnot", "dynamic", Topology::Line, lin(2, 1), k(1), lin(1, 0), k(7), lin(4, -2), true},
    };
    return rows;
}

Circuit build_table_row(const ProtocolFormula &row, size_t n) {
    if (!row.built) {
        throw std::invalid_argument("no construction for " + row.protocol + "/" + row.implementation);
    }
    const auto &p = row.protocol;
    const auto &i = row.implementation;
    if (p == "fanout" && i == "unitary") {
        return row.connectivity == Topology::Star ? build_unitary_star_fanout(n) : build_unitary_line_fanout(n);
    }
    if (p == "fanout" && i == "dynamic-v1") {
        return build_dynamic_fanout_v1(n);
    }
    if (p == "fanout" && i == "dynamic-v2") {
        return build_dynamic_fanout_v2(n);
    }
    if (p == "cnot-ladder") {
        return i == "unitary" ? build_unitary_ladder(n) : build_dynamic_ladder(n);
    }
    if (p == "long-range-cnot") {
        return i == "unitary" ? build_unitary_long_range_cnot(n) : build_dynamic_long_range_cnot(n);
    }
    throw std::invalid_argument("unknown row " + p + "/" + i);
}

std::vector<ResourceReport> table_one(size_t n) {
    if (n == 0) {
        throw std::invalid_argument("table needs n >= 1");
    }
    std::vector<ResourceReport> out;
    for (const auto &row : table_one_formulas()) {
        if (!row.built) {
            auto r = row.evaluate(n);
            if (!r.defined) {
                r.note = "defined for even n only";
            }
            out.push_back(r);
            continue;
        }
        auto r = measure_resources(build_table_row(row, n), row.protocol, row.implementation);
        r.connectivity = row.connectivity;
        auto expected = row.evaluate(n);
        if (!r.same_counts(expected)) {
            std::ostringstream ss;
            ss << "closed form gives (" << expected.qubits << "," << expected.rounds << "," << expected.measurements << ","
               << expected.cnot_depth << "," << expected.cnot_count << ") at this size";
            r.note = ss.str();
        }
        out.push_back(r);
    }
    return out;
}

nlohmann::json to_json(const ResourceReport &r) {
    nlohmann::json j;
    j["protocol"] = r.protocol;
    j["implementation"] = r.implementation;
    j["connectivity"] = topology_name(r.connectivity);
    if (r.defined) {
        j["qubits"] = r.qubits;
        j["rounds"] = r.rounds;
        j["measurements"] = r.measurements;
        j["cnot_depth"] = r.cnot_depth;
        j["cnot_count"] = r.cnot_count;
    } else {
        for (const char *f : {"qubits", "rounds", "measurements", "cnot_depth", "cnot_count"}) {
            j[f] = nullptr;
        }
    }
    if (!r.note.empty()) {
        j["note"] = r.note;
    }
    return j;
}

std::string format_table(const std::vector<ResourceReport> &rows, TableFormat format) {
    std::ostringstream out;
    if (format == TableFormat::Json) {
        auto arr = nlohmann::json::array();
        for (const auto &r : rows) {
            arr.push_back(to_json(r));
        }
        out << arr.dump(2) << "\n";
        return out.str();
    }

    std::vector<std::vector<std::string>> cells;
    cells.push_back({"protocol", "implementation", "connectivity", "qubits", "rounds", "measurements", "cnot_depth",
                     "cnot_count", "note"});
    for (const auto &r : rows) {
        cells.push_back({r.protocol, r.implementation, topology_name(r.connectivity), fmt(r, r.qubits), fmt(r, r.rounds),
                         fmt(r, r.measurements), fmt(r, r.cnot_depth), fmt(r, r.cnot_count), r.note});
    }

    if (format == TableFormat::Csv) {
        for (const auto &line : cells) {
            for (size_t c = 0; c < line.size(); c++) {
                out << (c ? "," : "") << csv_field(line[c]);
            }
            out << "\n";
        }
        return out.str();
    }

    std::vector<size_t> w(cells[0].size(), 0);
    for (const auto &line : cells) {
        for (size_t c = 0; c < line.size(); c++) {
            w[c] = std::max(w[c], width(line[c]));
        }
    }
    for (const auto &line : cells) {
        std::string text;
        for (size_t c = 0; c < line.size(); c++) {
            if (c) {
                text += "  ";
            }
            bool numeric = c >= 3 && c <= 7;
            std::string pad(w[c] - width(line[c]), ' ');
            text += numeric ? pad + line[c] : line[c] + (c + 1 < line.size() ? pad : "");
        }
        while (!text.empty() && text.back() == ' ') {
            text.pop_back();
        }
        out << text << "\n";
    }
    return out.str();
}

}  // namespace dyncirc
