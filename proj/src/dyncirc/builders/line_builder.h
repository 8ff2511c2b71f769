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

#ifndef _DYNCIRC_BUILDERS_LINE_BUILDER_H
#define _DYNCIRC_BUILDERS_LINE_BUILDER_H

#include <map>
#include <vector>

#include "dyncirc/circuit/circuit.h"

namespace dyncirc {

/// Parity-conditioned Pauli corrections waiting to be emitted, per qubit.
struct Corrections {
    std::map<size_t, std::vector<size_t>> x;
    std::map<size_t, std::vector<size_t>> z;

    void add_x(size_t qubit, const std::vector<size_t> &bits);
    void add_z(size_t qubit, const std::vector<size_t> &bits);
    void merge(const Corrections &other);
    bool empty() const;
};

/// Stage-level helpers for constructions on the alternating line.
///
/// Each stage leaves its ancillas measured and reset and returns the
/// corrections it needs. Callers decide whether to emit them right away
/// or merge them with later ones.
class LineBuilder {
   public:
    explicit LineBuilder(size_t num_system);

    static size_t q(size_t k) {
        return 2 * k;
    }
    static size_t a(size_t k) {
        return 2 * k + 1;
    }

    Circuit &circuit() {
        return circuit_;
    }
    Circuit take() {
        return std::move(circuit_);
    }

    /// Measures into a fresh classical bit and returns it.
    size_t measure(size_t qubit, Basis basis);
    /// One X and one Z per qubit, skipping empty parities.
    void emit(const Corrections &c);

    /// Prefix ladder on q_first..q_last through a_first..a_(last-1).
    Corrections ladder_down(size_t first, size_t last);
    /// Suffix ladder on q_first..q_last.
    Corrections ladder_up(size_t first, size_t last);
    /// x_k ^= x_(k-1) for first < k <= last, all at once. Inverse of ladder_down.
    Corrections adjacent_difference(size_t first, size_t last);
    /// Fan-out from q0 onto q1..qn in one measurement round.
    Corrections fanout_v2(size_t n);
    /// Fan-out as a difference stage followed by a prefix ladder; emits the first stage's corrections itself.
    Corrections fanout_v1(size_t n);

    struct ChainParities {
        std::vector<size_t> x_on_dst;
        std::vector<size_t> z_on_src;
    };
    /// CX(src, dst) through a chain of relay ancillas. Consecutive chain members are
    /// either adjacent on the line or one qubit apart, in which case the skipped
    /// qubit is left untouched. Relays alternate |+> and |0>, starting with |+>.
    ChainParities chain_cx(size_t src, const std::vector<size_t> &relays, size_t dst);

   private:
    Circuit circuit_;
};

}  // namespace dyncirc

#endif
