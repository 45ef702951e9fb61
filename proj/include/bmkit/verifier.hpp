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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bmkit/bigint.hpp"
#include "bmkit/engine.hpp"
#include "bmkit/scheme.hpp"

namespace bmkit {

struct ConditionWitness {
    int condition = 0;        // 1..5
    int j = -1, k = -1;       // offending positions (0-based), -1 when n/a
    PauliOperator left, right;  // the operators whose relation fails
    std::string detail;
};

struct ConditionReport {
    std::array<bool, 5> passed{false, false, false, false, false};
    std::vector<ConditionWitness> witnesses;  // first failure of each failing condition
    std::string sequence_error;               // non-empty when the C sequence itself is invalid

    bool all_passed() const {
        if (!sequence_error.empty()) {
            return false;
        }
        for (bool p : passed) {
            if (!p) {
                return false;
            }
        }
        return true;
    }
    std::string text() const;
    std::string json() const;
};

// Executable form of the five sufficient optimality conditions, evaluated in
// the single-code picture. Witnesses are minimal in j.
ConditionReport check_conditions(const Scheme &scheme, const CandidateGeneratorSequence &cseq);

// Derives a candidate generator sequence satisfying conditions 1 and 2 by
// echelonizing the anticommutation pattern of the stabilizer group against
// the basis sequence; returns nullopt when none exists.
std::optional<CandidateGeneratorSequence> derive_candidate_sequence(const Scheme &scheme);

// Upper bound 1 - (1 - P_B)^min(n1,n2) as an exact rational.
Rational bm_bound(uint32_t n1, uint32_t n2, const BellProb &pb);

// Design-rule heuristics. Rule 1: no all-partial prefix ever determines
// logical information. Rule 2: no all-partial prefix almost-measures a code
// stabilizer (a stabilizer short of one single-qubit factor).
bool heuristic_no_premature_logical(const Scheme &scheme);

struct AlmostStabilizerWitness {
    uint32_t prefix_len;
    PauliOperator stabilizer;   // the almost-measured stabilizer g
    PauliOperator missing;      // the single-qubit factor m with g*m measured
};
bool heuristic_no_almost_stabilizer(const Scheme &scheme,
                                    std::optional<AlmostStabilizerWitness> *witness = nullptr);

}  // namespace bmkit
