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
#include <vector>

#include "bmkit/pauli.hpp"

namespace bmkit {

// Row space of phase-stripped Pauli operators over GF(2), kept in semi-echelon
// form with strictly increasing pivots. Each stored row remembers which of the
// originally inserted operators it is a product of, so span queries can return
// decomposition coefficients over the inserted set.
class SymplecticBasis {
  public:
    SymplecticBasis() = default;
    explicit SymplecticBasis(uint32_t n) : n_(n), words_((n + 63) / 64) {}

    uint32_t rank() const {
        return static_cast<uint32_t>(rows_.size());
    }
    uint32_t inserted_count() const {
        return inserted_;
    }

    // Inserts op's symplectic vector; returns false if it was already in the
    // span ("dependent"). Either way the insertion counter advances, so
    // decomposition coefficients always index the full inserted sequence.
    bool extend(const PauliOperator &op);

    // Coefficients (indices into the inserted sequence) whose phase-stripped
    // product equals op, or nullopt when op is outside the span. Callers
    // reconstruct the sign by multiplying the selected operators exactly.
    std::optional<std::vector<uint32_t>> in_span(const PauliOperator &op) const;

    bool contains(const PauliOperator &op) const;

  private:
    struct Row {
        std::vector<uint64_t> v;      // x words followed by z words
        std::vector<uint64_t> comb;   // membership mask over inserted ops
        uint32_t pivot;
    };
    std::vector<uint64_t> vec_of(const PauliOperator &op) const;

    uint32_t n_ = 0;
    uint32_t words_ = 0;
    uint32_t inserted_ = 0;
    std::vector<Row> rows_;
};

// Plain GF(2) rank of a set of phase-stripped Pauli operators.
uint32_t symplectic_rank(const std::vector<PauliOperator> &ops);

}  // namespace bmkit
