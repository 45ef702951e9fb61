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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bmkit/bigint.hpp"
#include "bmkit/pauli.hpp"

namespace bmkit {

// Exact amplitude in the ring Z[sqrt2, i] scaled by powers of 1/2:
// (a + b*sqrt2 + i(c + d*sqrt2)) / 2^h. Closed under the beam-splitter
// algebra on the two-photon sector.
struct FockAmp {
    int64_t a = 0, b = 0, c = 0, d = 0;
    int h = 0;

    static FockAmp zero() {
        return {};
    }
    static FockAmp one() {
        return {1, 0, 0, 0, 0};
    }
    bool is_zero() const {
        return a == 0 && b == 0 && c == 0 && d == 0;
    }
    void normalize();
    FockAmp operator+(const FockAmp &o) const;
    FockAmp operator*(const FockAmp &o) const;
    FockAmp times_i() const {
        return FockAmp{-c, -d, a, b, h};
    }
    FockAmp times_inv_sqrt2() const {
        FockAmp r{2 * b, a, 2 * d, c, h + 1};
        r.normalize();
        return r;
    }
    bool operator==(const FockAmp &o) const;
    // |amp|^2, which must be rational (no sqrt2 part) for physical states.
    Rational norm_sq() const;
    std::string str() const;  // rendered as (p + q i)/2^(k/2) when possible
};

// Occupation-number state on the four optical modes, total photons <= 2.
using FockPattern = std::array<int, 4>;

struct FockVector {
    std::map<FockPattern, FockAmp> amps;

    void add(const FockPattern &p, const FockAmp &a);
    Rational total_probability() const;
};

// Bell states, ordered Phi+, Phi-, Psi+, Psi-.
enum class BellIndex : int { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };
std::string bell_name(BellIndex b);

// Dual-rail encoding of a Bell state: qubit 1 on modes 0/1, qubit 2 on 2/3.
FockVector dual_rail_bell(BellIndex b);

// Symmetric 50:50 beam splitter on a mode pair:
// (a+, b+) -> ((a+ + i b+)/sqrt2, (i a+ + b+)/sqrt2).
FockVector beam_splitter_pair(const FockVector &state, std::pair<int, int> modes);

struct OutcomeClass {
    enum class Kind { Unambiguous, Partial, Impossible } kind;
    BellIndex bell = BellIndex::PhiPlus;  // Unambiguous
    PauliLetter payload = PauliLetter::Z;  // Partial: the revealed single-qubit letter
    int pair_value = 0, q1_value = 0, q2_value = 0;  // Partial eigenvalues
};

// Linear-optics Bell analyzer: single-qubit gates applied before the two
// splitters permute the Bell states and therefore relabel the classification.
// Gates are letters over {H, S, X, Y, Z}, applied left to right.
class BellAnalyzer {
  public:
    BellAnalyzer() : BellAnalyzer("", "") {}  // the standard ZZ analyzer
    BellAnalyzer(std::string gates_q1, std::string gates_q2);

    // Detector pattern -> classification, computed from the exact amplitudes.
    OutcomeClass classify_pattern(const FockPattern &pattern) const;

    // Amplitude table: entry [j] is the transformed Bell state j.
    const std::array<FockVector, 4> &outputs() const {
        return outputs_;
    }

    // Success probability on the uniform Bell mixture, exact.
    Rational success_probability() const;

    // The single-qubit letter whose pair eigenvalue every outcome delivers.
    PauliLetter guaranteed_payload() const;

    // Induced permutation of Bell states: entry [j] is the analyzer-frame
    // index of input Bell state j.
    std::array<int, 4> bell_permutation() const;

    // All two-photon detector patterns.
    static std::vector<FockPattern> two_photon_patterns();

  private:
    std::string gates1_, gates2_;
    std::array<FockVector, 4> outputs_;
};

}  // namespace bmkit
