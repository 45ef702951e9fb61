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

#include "bmkit/symplectic.hpp"

#include <bit>
#include <stdexcept>

namespace bmkit {

std::vector<uint64_t> SymplecticBasis::vec_of(const PauliOperator &op) const {
    if (op.num_qubits() != n_) {
        throw std::invalid_argument("basis dimension mismatch");
    }
    std::vector<uint64_t> v(2 * words_);
    for (uint32_t w = 0; w < words_; w++) {
        v[w] = op.x_word(w);
        v[words_ + w] = op.z_word(w);
    }
    return v;
}

namespace {

uint32_t first_set_bit(const std::vector<uint64_t> &v) {
    for (uint32_t w = 0; w < v.size(); w++) {
        if (v[w]) {
            return w * 64 + static_cast<uint32_t>(std::countr_zero(v[w]));
        }
    }
    return ~uint32_t(0);
}

void xor_into(std::vector<uint64_t> &a, const std::vector<uint64_t> &b) {
    for (size_t w = 0; w < a.size(); w++) {
        a[w] ^= b[w];
    }
}

void xor_comb(std::vector<uint64_t> &a, const std::vector<uint64_t> &b) {
    if (a.size() < b.size()) {
        a.resize(b.size(), 0);
    }
    for (size_t w = 0; w < b.size(); w++) {
        a[w] ^= b[w];
    }
}

}  // namespace

bool SymplecticBasis::extend(const PauliOperator &op) {
    std::vector<uint64_t> v = vec_of(op);
    std::vector<uint64_t> comb((inserted_ / 64) + 1, 0);
    comb[inserted_ / 64] = uint64_t(1) << (inserted_ % 64);
    inserted_++;
    for (const Row &r : rows_) {
        if ((v[r.pivot / 64] >> (r.pivot % 64)) & 1) {
            xor_into(v, r.v);
            xor_comb(comb, r.comb);
        }
    }
    uint32_t pivot = first_set_bit(v);
    if (pivot == ~uint32_t(0)) {
        return false;
    }
    // Keep pivots strictly increasing along rows_.
    Row row{std::move(v), std::move(comb), pivot};
    auto it = rows_.begin();
    while (it != rows_.end() && it->pivot < pivot) {
        ++it;
    }
    rows_.insert(it, std::move(row));
    return true;
}

std::optional<std::vector<uint32_t>> SymplecticBasis::in_span(const PauliOperator &op) const {
    std::vector<uint64_t> v = vec_of(op);
    std::vector<uint64_t> comb;
    for (const Row &r : rows_) {
        if ((v[r.pivot / 64] >> (r.pivot % 64)) & 1) {
            xor_into(v, r.v);
            xor_comb(comb, r.comb);
        }
    }
    if (first_set_bit(v) != ~uint32_t(0)) {
        return std::nullopt;
    }
    std::vector<uint32_t> coeffs;
    for (uint32_t w = 0; w < comb.size(); w++) {
        uint64_t m = comb[w];
        while (m) {
            coeffs.push_back(w * 64 + static_cast<uint32_t>(std::countr_zero(m)));
            m &= m - 1;
        }
    }
    return coeffs;
}

bool SymplecticBasis::contains(const PauliOperator &op) const {
    std::vector<uint64_t> v = vec_of(op);
    for (const Row &r : rows_) {
        if ((v[r.pivot / 64] >> (r.pivot % 64)) & 1) {
            xor_into(v, r.v);
        }
    }
    return first_set_bit(v) == ~uint32_t(0);
}

uint32_t symplectic_rank(const std::vector<PauliOperator> &ops) {
    if (ops.empty()) {
        return 0;
    }
    SymplecticBasis b(ops[0].num_qubits());
    for (const auto &op : ops) {
        b.extend(op);
    }
    return b.rank();
}

}  // namespace bmkit
