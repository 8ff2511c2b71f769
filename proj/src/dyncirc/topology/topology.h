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

#ifndef _DYNCIRC_TOPOLOGY_TOPOLOGY_H
#define _DYNCIRC_TOPOLOGY_TOPOLOGY_H

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dyncirc/circuit/circuit.h"
#include "json.hpp"

namespace dyncirc {

struct RoutingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Undirected hardware coupling graph.
///
/// Heavy-hex coordinates: honeycomb vertex (row r, column c) of a brick-wall layout sits at
/// (2c, 2r); the qubit subdividing an edge sits at the midpoint. Vertex ids follow row-major
/// order of (y, x).
struct HardwareGraph {
    enum class Kind { Line, HeavyHex };

    Kind kind = Kind::Line;
    size_t parameter = 0;  // line length or heavy-hex distance
    std::vector<std::pair<int, int>> coords;  // (x, y)
    /// True for honeycomb vertices (degree 3 in the bulk), false for edge qubits.
    std::vector<bool> junction;
    std::vector<std::vector<size_t>> adjacency;  // sorted

    static HardwareGraph line(size_t length);
    /// (d-1) x (d-1) hexagons; degree <= 1 stubs of the brick wall are pruned.
    static HardwareGraph heavy_hex(size_t distance);

    size_t num_vertices() const {
        return adjacency.size();
    }
    size_t num_edges() const;
    size_t degree(size_t v) const {
        return adjacency[v].size();
    }
    bool has_edge(size_t a, size_t b) const;
    bool connected() const;
    std::string name() const;
};

enum class Lattice { Line, Hexagonal, Kagome };

std::string lattice_name(Lattice l);

struct Embedding {
    HardwareGraph hardware;
    Lattice lattice = Lattice::Line;
    std::vector<size_t> state_qubits;    // sorted hardware ids
    std::vector<size_t> ancilla_qubits;  // sorted hardware ids
    std::set<std::pair<size_t, size_t>> logical_edges;  // hardware ids, first < second

    bool is_state(size_t v) const;
    size_t logical_degree(size_t v) const;
};

/// State qubits at even positions of a line with n_state state qubits.
Embedding embed_line(size_t n_state);

/// Hexagonal: state qubits on honeycomb junctions, logical graph the honeycomb.
/// Kagome: state qubits on edge qubits, logical graph the line graph of the honeycomb.
Embedding embed_heavy_hex(size_t distance, Lattice lattice);

/// Empty on success, otherwise a description of the first violated invariant.
std::string validate_embedding(const Embedding &e);

struct RoutedGate {
    std::pair<size_t, size_t> edge;
    std::vector<size_t> path;   // endpoints included
    std::vector<size_t> skips;  // interior state qubits jumped over
};

struct GateSchedule {
    std::vector<std::vector<RoutedGate>> rounds;

    size_t num_gates() const;
};

/// Greedy schedule: gates sorted by shortest-path length then endpoints, each placed in the
/// first round that has a shortest path avoiding the vertices already used in that round.
/// BFS visits neighbours in increasing id order, so ties break lexicographically.
GateSchedule route_parallel(const Embedding &e, const std::vector<std::pair<size_t, size_t>> &edges);

/// Empty on success, otherwise the first overlap or malformed path.
std::string validate_schedule(const Embedding &e, const GateSchedule &s);

/// Wrap-around edges that close the lattice into a torus: first along rows, then along
/// columns, only between boundary state qubits that still have spare logical degree.
std::vector<std::pair<size_t, size_t>> periodic_boundary_edges(const Embedding &e);

nlohmann::json to_json(const HardwareGraph &g);
nlohmann::json to_json(const Embedding &e);
nlohmann::json to_json(const GateSchedule &s);

/// Spokes exp(-i phi_k/2 Z_0 Z_k) and ring exp(-i theta_k/2 Z_k Z_(k+1)), closing q_n to q_1,
/// on a line of 2n+1 qubits. Needs n >= 3 and n angles of each kind.
Circuit cart_wheel_circuit(size_t n, const std::vector<double> &ring, const std::vector<double> &spokes);

}  // namespace dyncirc

#endif
