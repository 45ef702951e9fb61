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

#include <optional>
#include <string>
#include <vector>

#include "bmkit/code.hpp"
#include "bmkit/pauli.hpp"

namespace bmkit {

// Ordered pair of logical representatives measured after a success at one
// position of the scheme.
struct LogicalPair {
    PauliOperator x_op, z_op;
};

// Feedforward scheme in normal form over the single-code picture: a
// measurement order, the basis sequence applied until the first success, and
// the logical pair completed after a success at each position. The basis entry
// at the final position is advisory; the physics does not depend on it.
struct Scheme {
    std::string name;
    StabilizerCode code;
    std::vector<uint32_t> order;         // permutation of 0..n-1
    std::vector<PauliLetter> bases;      // one per position
    std::vector<LogicalPair> logicals;   // one per position
    std::vector<PauliOperator> pre_steps;  // fixed single-qubit measurements before the adaptive phase

    uint32_t n() const {
        return code.n;
    }
    // Basis required on the qubit at position t to complete the logical pair
    // of a success at position s (nullopt when neither logical touches it).
    std::optional<PauliLetter> completion_letter(size_t s, size_t t) const;

    std::string serialize() const;
    static Scheme deserialize(const std::string &text);
};

// Static scheme: one fixed basis per qubit, no feedforward.
struct StaticScheme {
    std::string name;
    StabilizerCode code;
    std::vector<PauliLetter> bases;        // indexed by qubit
    std::vector<uint32_t> order;           // evaluation order (any; defaults to identity)
    std::vector<PauliOperator> pre_steps;

    uint32_t n() const {
        return code.n;
    }
    std::string serialize() const;
    static StaticScheme deserialize(const std::string &text);
};

// Sequence of code stabilizer generators consumed one per measurement, in
// scheme order; spans the full stabilizer group.
struct CandidateGeneratorSequence {
    std::vector<PauliOperator> ops;  // n-1 entries
};

struct BuiltScheme {
    Scheme scheme;
    CandidateGeneratorSequence cseq;
};

// Optimal (bound-reaching) scheme builders, one per code family.
BuiltScheme build_optimal_qpc(int rows, int cols);
BuiltScheme build_optimal_five_qubit();
BuiltScheme build_optimal_steane();
BuiltScheme build_optimal_standard_surface(int r, int m);
BuiltScheme build_optimal_rotated_surface(int r, int m);  // r <= m
BuiltScheme build_optimal_tree(const std::vector<int> &branching);
// Dispatch on code.family.
BuiltScheme build_optimal(const StabilizerCode &code);

// Static baselines.
StaticScheme build_static_simple_rotated(int r, int m);     // Z-BMs everywhere
StaticScheme build_static_optimized_rotated(int r, int m);  // wave string
StaticScheme build_static_tree(const std::vector<int> &branching);
StaticScheme build_static_standard_string(int r, int m);    // max-weight string baseline

// Qubit count of the optimized static wave string (closed form).
int wz_weight(int r, int m);
// The wave string itself, as 0-based qubit indices of rotated_surface(r, m).
std::vector<uint32_t> optimized_static_string(int r, int m);

// Two-code form of a scheme: everything doubled transversally. This is what
// the tableau simulator consumes; the verifier consumes the single-code form.
struct TwoCodeScheme {
    std::string name;
    StabilizerCode code;  // the single code; the doubled space is 2n qubits
    std::vector<uint32_t> order;
    std::vector<PauliLetter> bases;
    std::vector<LogicalPair> logicals;       // doubled operators
    std::vector<PauliOperator> pre_steps;    // doubled-space observables
    bool is_static = false;
};

TwoCodeScheme lift_to_two_code(const Scheme &s);
TwoCodeScheme lift_to_two_code(const StaticScheme &s);
// Inverse of lift for feedforward schemes; rejects non-transversal input.
Scheme reduce_to_single_code(const TwoCodeScheme &t);

}  // namespace bmkit
