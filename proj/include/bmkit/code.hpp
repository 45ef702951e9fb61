// Copyright 2026 The bmkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "bmkit/pauli.hpp"
#include "bmkit/symplectic.hpp"

namespace bmkit {

enum class CosetClass { Stabilizer, LogicalX, LogicalY, LogicalZ, Outside };

std::string coset_class_name(CosetClass c);

// Coordinate bookkeeping for the lattice and graph based families. Only the
// fields relevant to a family are populated.
struct CodeLayout {
    // Row/column (QPC, rotated surface) or layer/column (standard surface).
    std::vector<std::pair<int, int>> coords;
    // Tree structure, indexed by vertex.
    std::vector<int> parent;            // -1 for the root
    std::vector<std::vector<int>> children;
    std::vector<int> depth;
    int root = -1;
    // Steane faces as vertex sets.
    std::vector<std::vector<int>> faces;
};

// An [n, 1] stabilizer code: n-1 independent commuting generators plus one
// designated representative for each logical operator.
struct StabilizerCode {
    std::string family;
    std::vector<int> params;
    uint32_t n = 0;
    std::vector<PauliOperator> generators;
    PauliOperator logical_x_rep;
    PauliOperator logical_z_rep;
    CodeLayout layout;

    // Membership of op (phase-stripped) relative to the stabilizer group and
    // the three logical cosets.
    CosetClass coset_class(const PauliOperator &op) const;

    // Basis of the phase-stripped stabilizer group; cached on first use.
    const SymplecticBasis &stabilizer_span() const;

    std::string serialize() const;
    static StabilizerCode deserialize(const std::string &text);

  private:
    mutable SymplecticBasis span_cache_;
    mutable bool span_ready_ = false;
};

struct CodeCheckReport {
    std::vector<std::string> violations;
    bool ok() const {
        return violations.empty();
    }
};

CodeCheckReport check_code(const StabilizerCode &code);

// Code family constructors.
StabilizerCode qpc(int rows, int cols);
StabilizerCode five_qubit();
StabilizerCode steane();
StabilizerCode standard_surface(int r, int m);
StabilizerCode rotated_surface(int r, int m);
StabilizerCode tree_code(const std::vector<int> &branching);

// Rotated-surface plaquette table: supports plus X/Z type, in the generator
// order used by rotated_surface(). Exposed for the scheme builders.
struct RotatedPlaquette {
    std::vector<uint32_t> qubits;
    bool x_type;
    int pi, pj;  // plaquette grid position
};
std::vector<RotatedPlaquette> rotated_surface_plaquettes(int r, int m);

// Standard-surface index helpers: qubits live at (layer, column) with even
// sums; the linear index is lexicographic in (layer, column).
int standard_surface_qubit_index(int r, int m, int layer, int col);

}  // namespace bmkit
