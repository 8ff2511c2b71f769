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

#include "dyncirc/topology/topology.h"

#include <algorithm>
#include <map>
#include <queue>

#include "dyncirc/builders/dynamic.h"

namespace dyncirc {

namespace {

using Edge = std::pair<size_t, size_t>;

Edge ordered(size_t a, size_t b) {
    return a < b ? Edge{a, b} : Edge{b, a};
}

// Shortest path from a to b that avoids `blocked`; empty when none exists.
std::vector<size_t> bfs_path(const HardwareGraph &g, size_t a, size_t b, const std::vector<bool> *blocked) {
    size_t n = g.num_vertices();
    std::vector<size_t> parent(n, SIZE_MAX);
    auto free = [&](size_t v) {
        return !blocked || !(*blocked)[v];
    };
    if (!free(a) || !free(b)) {
        return {};
    }
    std::queue<size_t> todo;
    parent[a] = a;
    todo.push(a);
    while (!todo.empty()) {
        size_t v = todo.front();
        todo.pop();
        if (v == b) {
            break;
        }
        for (auto w : g.adjacency[v]) {
            if (parent[w] == SIZE_MAX && free(w)) {
                parent[w] = v;
                todo.push(w);
            }
        }
    }
    if (parent[b] == SIZE_MAX) {
        return {};
    }
    std::vector<size_t> path{b};
    while (path.back() != a) {
        path.push_back(parent[path.back()]);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

size_t max_logical_degree(Lattice l) {
    switch (l) {
        case Lattice::Line:
            return 2;
        case Lattice::Hexagonal:
            return 3;
        case Lattice::Kagome:
            return 4;
    }
    return 0;
}

}  // namespace

HardwareGraph HardwareGraph::line(size_t length) {
    if (length == 0) {
        throw std::invalid_argument("line needs at least one qubit");
    }
    HardwareGraph g;
    g.kind = Kind::Line;
    g.parameter = length;
    g.adjacency.resize(length);
    for (size_t v = 0; v < length; v++) {
        g.coords.push_back({(int)v, 0});
        g.junction.push_back(false);
        if (v + 1 < length) {
            g.adjacency[v].push_back(v + 1);
            g.adjacency[v + 1].push_back(v);
        }
    }
    return g;
}

HardwareGraph HardwareGraph::heavy_hex(size_t distance) {
    if (distance < 2) {
        throw std::invalid_argument("heavy-hex distance must be at least 2");
    }
    int h = (int)distance - 1;
    int width = 2 * h + 2;
    // Brick wall: horizontal edges along rows, vertical edges where column + row is even.
    std::set<std::pair<int, int>> verts;  // (r, c)
    std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> edges;
    for (int r = 0; r <= h; r++) {
        for (int c = 0; c < width; c++) {
            verts.insert({r, c});
            if (c + 1 < width) {
                edges.insert({{r, c}, {r, c + 1}});
            }
            if (r < h && (c + r) % 2 == 0) {
                edges.insert({{r, c}, {r + 1, c}});
            }
        }
    }
    bool pruned = true;
    while (pruned) {
        pruned = false;
        std::map<std::pair<int, int>, int> deg;
        for (const auto &[a, b] : edges) {
            deg[a]++;
            deg[b]++;
        }
        for (auto it = verts.begin(); it != verts.end();) {
            if (deg[*it] <= 1) {
                auto v = *it;
                for (auto e = edges.begin(); e != edges.end();) {
                    e = (e->first == v || e->second == v) ? edges.erase(e) : std::next(e);
                }
                it = verts.erase(it);
                pruned = true;
            } else {
                ++it;
            }
        }
    }

    std::map<std::pair<int, int>, bool> points;  // (y, x) -> junction
    for (const auto &[r, c] : verts) {
        points[{2 * r, 2 * c}] = true;
    }
    for (const auto &[a, b] : edges) {
        points[{a.first + b.first, a.second + b.second}] = false;
    }
    HardwareGraph g;
    g.kind = Kind::HeavyHex;
    g.parameter = distance;
    std::map<std::pair<int, int>, size_t> id;
    for (const auto &[yx, j] : points) {
        id[yx] = g.coords.size();
        g.coords.push_back({yx.second, yx.first});
        g.junction.push_back(j);
    }
    g.adjacency.resize(g.coords.size());
    for (const auto &[a, b] : edges) {
        size_t mid = id.at({a.first + b.first, a.second + b.second});
        for (auto end : {a, b}) {
            size_t v = id.at({2 * end.first, 2 * end.second});
            g.adjacency[v].push_back(mid);
            g.adjacency[mid].push_back(v);
        }
    }
    for (auto &adj : g.adjacency) {
        std::sort(adj.begin(), adj.end());
    }
    return g;
}

size_t HardwareGraph::num_edges() const {
    size_t total = 0;
    for (const auto &adj : adjacency) {
        total += adj.size();
    }
    return total / 2;
}

bool HardwareGraph::has_edge(size_t a, size_t b) const {
    return a < adjacency.size() && std::binary_search(adjacency[a].begin(), adjacency[a].end(), b);
}

bool HardwareGraph::connected() const {
    if (adjacency.empty()) {
        return true;
    }
    std::vector<bool> seen(adjacency.size(), false);
    std::vector<size_t> stack{0};
    seen[0] = true;
    size_t count = 1;
    while (!stack.empty()) {
        size_t v = stack.back();
        stack.pop_back();
        for (auto w : adjacency[v]) {
            if (!seen[w]) {
                seen[w] = true;
                count++;
                stack.push_back(w);
            }
        }
    }
    return count == adjacency.size();
}

std::string HardwareGraph::name() const {
    return (kind == Kind::Line ? "line:" : "heavyhex:") + std::to_string(parameter);
}

std::string lattice_name(Lattice l) {
    switch (l) {
        case Lattice::Line:
            return "line";
        case Lattice::Hexagonal:
            return "hexagonal";
        case Lattice::Kagome:
            return "kagome";
    }
    return "?";
}

bool Embedding::is_state(size_t v) const {
    return std::binary_search(state_qubits.begin(), state_qubits.end(), v);
}

size_t Embedding::logical_degree(size_t v) const {
    size_t d = 0;
    for (const auto &[a, b] : logical_edges) {
        d += a == v || b == v;
    }
    return d;
}

Embedding embed_line(size_t n_state) {
    if (n_state == 0) {
        throw std::invalid_argument("need at least one state qubit");
    }
    Embedding e;
    e.hardware = HardwareGraph::line(2 * n_state - 1);
    e.lattice = Lattice::Line;
    for (size_t v = 0; v < e.hardware.num_vertices(); v++) {
        (v % 2 == 0 ? e.state_qubits : e.ancilla_qubits).push_back(v);
    }
    for (size_t k = 0; k + 1 < n_state; k++) {
        e.logical_edges.insert({2 * k, 2 * k + 2});
    }
    return e;
}

Embedding embed_heavy_hex(size_t distance, Lattice lattice) {
    if (lattice == Lattice::Line) {
        throw std::invalid_argument("heavy-hex embeddings are hexagonal or kagome");
    }
    Embedding e;
    e.hardware = HardwareGraph::heavy_hex(distance);
    e.lattice = lattice;
    const auto &g = e.hardware;
    bool state_on_junctions = lattice == Lattice::Hexagonal;
    for (size_t v = 0; v < g.num_vertices(); v++) {
        (g.junction[v] == state_on_junctions ? e.state_qubits : e.ancilla_qubits).push_back(v);
    }
    // Two state qubits are logical neighbours when one ancilla touches both.
    for (auto a : e.ancilla_qubits) {
        const auto &adj = g.adjacency[a];
        for (size_t i = 0; i < adj.size(); i++) {
            for (size_t j = i + 1; j < adj.size(); j++) {
                e.logical_edges.insert(ordered(adj[i], adj[j]));
            }
        }
    }
    return e;
}

std::string validate_embedding(const Embedding &e) {
    const auto &g = e.hardware;
    std::vector<int> owner(g.num_vertices(), 0);
    for (auto v : e.state_qubits) {
        if (v >= owner.size()) {
            return "state qubit " + std::to_string(v) + " is not a hardware vertex";
        }
        owner[v] |= 1;
    }
    for (auto v : e.ancilla_qubits) {
        if (v >= owner.size()) {
            return "ancilla " + std::to_string(v) + " is not a hardware vertex";
        }
        if (owner[v] & 2) {
            return "ancilla " + std::to_string(v) + " listed twice";
        }
        owner[v] |= 2;
    }
    for (size_t v = 0; v < owner.size(); v++) {
        if (owner[v] != 1 && owner[v] != 2) {
            return "vertex " + std::to_string(v) + (owner[v] ? " is both state and ancilla" : " is unassigned");
        }
    }
    if (!g.connected()) {
        return "hardware graph is disconnected";
    }
    for (size_t v = 0; v < g.num_vertices(); v++) {
        if (g.kind == HardwareGraph::Kind::HeavyHex && g.degree(v) > 3) {
            return "heavy-hex vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v));
        }
        for (auto w : g.adjacency[v]) {
            if (owner[v] == 1 && owner[w] == 1) {
                return "hardware edge " + std::to_string(v) + "-" + std::to_string(w) + " joins two state qubits";
            }
        }
    }
    for (const auto &[a, b] : e.logical_edges) {
        if (owner.at(a) != 1 || owner.at(b) != 1) {
            return "logical edge " + std::to_string(a) + "-" + std::to_string(b) + " leaves the state qubits";
        }
        bool via_ancilla = false;
        for (auto m : g.adjacency[a]) {
            via_ancilla |= owner[m] == 2 && g.has_edge(m, b);
        }
        if (!via_ancilla) {
            return "logical edge " + std::to_string(a) + "-" + std::to_string(b) + " has no ancilla between its ends";
        }
    }
    for (auto v : e.state_qubits) {
        if (e.logical_degree(v) > max_logical_degree(e.lattice)) {
            return "state qubit " + std::to_string(v) + " exceeds the logical degree bound";
        }
    }
    return "";
}

size_t GateSchedule::num_gates() const {
    size_t total = 0;
    for (const auto &r : rounds) {
        total += r.size();
    }
    return total;
}

GateSchedule route_parallel(const Embedding &e, const std::vector<std::pair<size_t, size_t>> &edges) {
    const auto &g = e.hardware;
    struct Job {
        Edge edge;
        size_t length;
    };
    std::vector<Job> jobs;
    for (const auto &[a, b] : edges) {
        if (a == b || !e.is_state(a) || !e.is_state(b)) {
            throw std::invalid_argument(
                "gate " + std::to_string(a) + "-" + std::to_string(b) + " must join two distinct state qubits");
        }
        auto p = bfs_path(g, a, b, nullptr);
        if (p.empty()) {
            throw RoutingError("no path between " + std::to_string(a) + " and " + std::to_string(b));
        }
        jobs.push_back({ordered(a, b), p.size()});
    }
    std::stable_sort(jobs.begin(), jobs.end(), [](const Job &x, const Job &y) {
        return x.length != y.length ? x.length < y.length : x.edge < y.edge;
    });

    GateSchedule s;
    std::vector<std::vector<bool>> used;
    for (const auto &job : jobs) {
        auto [a, b] = job.edge;
        std::vector<size_t> path;
        size_t r = 0;
        for (; r < used.size(); r++) {
            path = bfs_path(g, a, b, &used[r]);
            if (!path.empty() && path.size() == job.length) {
                break;
            }
        }
        if (r == used.size()) {
            used.emplace_back(g.num_vertices(), false);
            s.rounds.emplace_back();
            path = bfs_path(g, a, b, nullptr);
        }
        RoutedGate gate{job.edge, path, {}};
        for (size_t i = 1; i + 1 < path.size(); i++) {
            if (e.is_state(path[i])) {
                gate.skips.push_back(path[i]);
            }
        }
        for (auto v : path) {
            used[r][v] = true;
        }
        s.rounds[r].push_back(std::move(gate));
    }
    return s;
}

std::string validate_schedule(const Embedding &e, const GateSchedule &s) {
    for (size_t r = 0; r < s.rounds.size(); r++) {
        std::vector<bool> used(e.hardware.num_vertices(), false);
        for (const auto &gate : s.rounds[r]) {
            const auto &p = gate.path;
            if (p.size() < 2 || ordered(p.front(), p.back()) != gate.edge) {
                return "round " + std::to_string(r) + ": path does not join the gate's qubits";
            }
            for (size_t i = 0; i < p.size(); i++) {
                if (i && !e.hardware.has_edge(p[i - 1], p[i])) {
                    return "round " + std::to_string(r) + ": path leaves the hardware graph";
                }
                if (used[p[i]]) {
                    return "round " + std::to_string(r) + ": paths share vertex " + std::to_string(p[i]);
                }
                used[p[i]] = true;
            }
        }
    }
    return "";
}

std::vector<std::pair<size_t, size_t>> periodic_boundary_edges(const Embedding &e) {
    std::vector<Edge> out;
    std::map<size_t, size_t> extra;
    auto spare = [&](size_t v) {
        return e.logical_degree(v) + extra[v] < max_logical_degree(e.lattice);
    };
    auto close = [&](bool by_row) {
        std::map<int, std::vector<size_t>> lines;
        for (auto v : e.state_qubits) {
            const auto &[x, y] = e.hardware.coords[v];
            lines[by_row ? y : x].push_back(v);
        }
        for (auto &[key, members] : lines) {
            if (members.size() < 2) {
                continue;
            }
            auto coord = [&](size_t v) {
                return by_row ? e.hardware.coords[v].first : e.hardware.coords[v].second;
            };
            auto [lo, hi] = std::minmax_element(members.begin(), members.end(), [&](size_t a, size_t b) {
                return coord(a) < coord(b);
            });
            Edge edge = ordered(*lo, *hi);
            bool known = e.logical_edges.count(edge) || std::find(out.begin(), out.end(), edge) != out.end();
            if (!known && spare(*lo) && spare(*hi)) {
                out.push_back(edge);
                extra[*lo]++;
                extra[*hi]++;
            }
        }
    };
    close(true);
    close(false);
    return out;
}

nlohmann::json to_json(const HardwareGraph &g) {
    nlohmann::json j;
    j["kind"] = g.kind == HardwareGraph::Kind::Line ? "line" : "heavyhex";
    j["parameter"] = g.parameter;
    auto coords = nlohmann::json::array();
    for (const auto &[x, y] : g.coords) {
        coords.push_back({x, y});
    }
    j["coords"] = coords;
    auto edges = nlohmann::json::array();
    for (size_t v = 0; v < g.num_vertices(); v++) {
        for (auto w : g.adjacency[v]) {
            if (v < w) {
                edges.push_back({v, w});
            }
        }
    }
    j["edges"] = edges;
    return j;
}

nlohmann::json to_json(const Embedding &e) {
    nlohmann::json j;
    j["hardware"] = to_json(e.hardware);
    j["lattice"] = lattice_name(e.lattice);
    j["state_qubits"] = e.state_qubits;
    j["ancilla_qubits"] = e.ancilla_qubits;
    auto edges = nlohmann::json::array();
    for (const auto &[a, b] : e.logical_edges) {
        edges.push_back({a, b});
    }
    j["logical_edges"] = edges;
    return j;
}

nlohmann::json to_json(const GateSchedule &s) {
    auto rounds = nlohmann::json::array();
    for (const auto &r : s.rounds) {
        auto gates = nlohmann::json::array();
        for (const auto &g : r) {
            gates.push_back({{"edge", {g.edge.first, g.edge.second}}, {"path", g.path}, {"skips", g.skips}});
        }
        rounds.push_back(gates);
    }
    return {{"rounds", rounds}};
}

Circuit cart_wheel_circuit(size_t n, const std::vector<double> &ring, const std::vector<double> &spokes) {
    if (n < 3) {
        throw std::invalid_argument("cart wheel needs n >= 3");
    }
    if (ring.size() != n || spokes.size() != n) {
        throw std::invalid_argument(
            "cart wheel with n=" + std::to_string(n) + " needs n ring and n spoke angles, got " +
            std::to_string(ring.size()) + " and " + std::to_string(spokes.size()));
    }
    return build_dynamic_cart_wheel(ring, spokes);
}

}  // namespace dyncirc
