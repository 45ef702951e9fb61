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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bmkit {

enum class PauliLetter : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char letter_char(PauliLetter l);
PauliLetter letter_from_char(char c);
bool letters_commute(PauliLetter a, PauliLetter b);

// n-qubit Pauli operator in bit-packed symplectic form.
//
// Canonical form: i^phase_exp * (site letters), where the site letter at j is
// I, X, Y, Z according to (x_j, z_j) with Y <-> (1,1). Hermitian operators
// carry phase_exp in {0, 2}, read as sign +1/-1.
class PauliOperator {
  public:
    PauliOperator() = default;
    explicit PauliOperator(uint32_t n);
    static PauliOperator identity(uint32_t n);
    // Single-site operator W_j (0-based qubit index).
    static PauliOperator single(uint32_t n, uint32_t j, PauliLetter w);
    // Parses a literal over {I,X,Y,Z} with optional leading sign; whitespace ignored.
    static PauliOperator parse(const std::string &text);

    uint32_t num_qubits() const {
        return n_;
    }
    uint32_t words() const {
        return static_cast<uint32_t>(x_.size());
    }
    uint64_t x_word(uint32_t w) const {
        return x_[w];
    }
    uint64_t z_word(uint32_t w) const {
        return z_[w];
    }

    PauliLetter letter(uint32_t j) const;
    void set_letter(uint32_t j, PauliLetter w);

    // Exponent of i in the canonical product convention (mod 4).
    uint8_t phase_exp() const {
        return phase_;
    }
    void set_phase_exp(uint8_t p) {
        phase_ = p & 3;
    }
    bool is_hermitian() const {
        return phase_ == 0 || phase_ == 2;
    }
    // Sign of a Hermitian operator; throws on +/-i phases.
    int sign() const;
    void negate() {
        phase_ = (phase_ + 2) & 3;
    }

    bool is_identity() const;
    uint32_t weight() const;
    std::vector<uint32_t> support() const;

    // Group product with exact phase accumulation.
    static PauliOperator multiply(const PauliOperator &a, const PauliOperator &b);
    // Phase-stripped product in the effective Pauli group.
    static PauliOperator multiply_effective(const PauliOperator &a, const PauliOperator &b);

    static bool commutes(const PauliOperator &a, const PauliOperator &b);
    // Qubits where the single-site letters anticommute.
    static std::vector<uint32_t> anticommute_positions(const PauliOperator &a, const PauliOperator &b);
    // Partitions the anticommutation count at `split` (first block = qubits [0, split)).
    static std::pair<uint32_t, uint32_t> anticommute_count_by_block(const PauliOperator &a, const PauliOperator &b,
                                                                    uint32_t split);

    // Phase-stripped equality.
    static bool same_letters(const PauliOperator &a, const PauliOperator &b);
    bool operator==(const PauliOperator &o) const {
        return phase_ == o.phase_ && same_letters(*this, o);
    }

    // Trivial extension into an n_total-qubit space at qubit offset.
    PauliOperator embed(uint32_t n_total, uint32_t offset) const;
    // Transversal doubling: O -> O (x) O on 2n qubits.
    PauliOperator doubled() const;

    // Display mirrors the literal convention: sign, then letters, with a space
    // at the block boundary when a split is known.
    std::string str(std::optional<uint32_t> split = std::nullopt) const;

  private:
    void check_same_n(const PauliOperator &o) const;
    uint32_t n_ = 0;
    uint8_t phase_ = 0;
    std::vector<uint64_t> x_, z_;
};

}  // namespace bmkit
