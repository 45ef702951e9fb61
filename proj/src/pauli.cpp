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

#include "bmkit/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace bmkit {

char letter_char(PauliLetter l) {
    switch (l) {
        case PauliLetter::I:
            return 'I';
        case PauliLetter::X:
            return 'X';
        case PauliLetter::Z:
            return 'Z';
        case PauliLetter::Y:
            return 'Y';
    }
    return '?';
}

PauliLetter letter_from_char(char c) {
    switch (c) {
        case 'I':
        case '_':
            return PauliLetter::I;
        case 'X':
            return PauliLetter::X;
        case 'Y':
            return PauliLetter::Y;
        case 'Z':
            return PauliLetter::Z;
    }
    throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
}

bool letters_commute(PauliLetter a, PauliLetter b) {
    if (a == PauliLetter::I || b == PauliLetter::I || a == b) {
        return true;
    }
    return false;
}

PauliOperator::PauliOperator(uint32_t n) : n_(n) {
    if (n == 0) {
        throw std::invalid_argument("Pauli operator needs at least one qubit");
    }
    uint32_t w = (n + 63) / 64;
    x_.assign(w, 0);
    z_.assign(w, 0);
}

PauliOperator PauliOperator::identity(uint32_t n) {
    return PauliOperator(n);
}

PauliOperator PauliOperator::single(uint32_t n, uint32_t j, PauliLetter w) {
    PauliOperator p(n);
    if (j >= n) {
        throw std::invalid_argument("qubit index out of range");
    }
    p.set_letter(j, w);
    return p;
}

PauliOperator PauliOperator::parse(const std::string &text) {
    std::string body;
    int sign = 1;
    bool seen_letter = false;
    for (char c : text) {
        if (c == ' ' || c == '\t') {
            continue;
        }
        if (!seen_letter && (c == '+' || c == '-')) {
            sign = c == '-' ? -1 : 1;
            seen_letter = true;
            continue;
        }
        seen_letter = true;
        body += c;
    }
    if (body.empty()) {
        throw std::invalid_argument("empty Pauli literal");
    }
    PauliOperator p(static_cast<uint32_t>(body.size()));
    for (uint32_t j = 0; j < body.size(); j++) {
        p.set_letter(j, letter_from_char(body[j]));
    }
    if (sign < 0) {
        p.negate();
    }
    return p;
}

PauliLetter PauliOperator::letter(uint32_t j) const {
    uint32_t w = j / 64, b = j % 64;
    uint8_t x = (x_[w] >> b) & 1;
    uint8_t z = (z_[w] >> b) & 1;
    if (x && z) {
        return PauliLetter::Y;
    }
    if (x) {
        return PauliLetter::X;
    }
    if (z) {
        return PauliLetter::Z;
    }
    return PauliLetter::I;
}

void PauliOperator::set_letter(uint32_t j, PauliLetter w) {
    uint32_t wi = j / 64, b = j % 64;
    uint64_t mask = uint64_t(1) << b;
    x_[wi] &= ~mask;
    z_[wi] &= ~mask;
    if (w == PauliLetter::X || w == PauliLetter::Y) {
        x_[wi] |= mask;
    }
    if (w == PauliLetter::Z || w == PauliLetter::Y) {
        z_[wi] |= mask;
    }
}

int PauliOperator::sign() const {
    if (phase_ == 0) {
        return 1;
    }
    if (phase_ == 2) {
        return -1;
    }
    throw std::logic_error("non-Hermitian Pauli operator has no sign");
}

bool PauliOperator::is_identity() const {
    for (uint32_t w = 0; w < words(); w++) {
        if (x_[w] | z_[w]) {
            return false;
        }
    }
    return true;
}

uint32_t PauliOperator::weight() const {
    uint32_t c = 0;
    for (uint32_t w = 0; w < words(); w++) {
        c += static_cast<uint32_t>(std::popcount(x_[w] | z_[w]));
    }
    return c;
}

std::vector<uint32_t> PauliOperator::support() const {
    std::vector<uint32_t> s;
    for (uint32_t j = 0; j < n_; j++) {
        if (letter(j) != PauliLetter::I) {
            s.push_back(j);
        }
    }
    return s;
}

void PauliOperator::check_same_n(const PauliOperator &o) const {
    if (n_ != o.n_) {
        throw std::invalid_argument("Pauli operator dimension mismatch");
    }
}

PauliOperator PauliOperator::multiply(const PauliOperator &a, const PauliOperator &b) {
    a.check_same_n(b);
    PauliOperator r(a.n_);
    // Per-site i-exponents of the letter products, accumulated wordwise:
    // X*Y, Y*Z, Z*X contribute +1; the transposes contribute -1 (i.e. +3).
    uint32_t pos = 0, neg = 0;
    for (uint32_t w = 0; w < a.words(); w++) {
        uint64_t ax = a.x_[w], az = a.z_[w], bx = b.x_[w], bz = b.z_[w];
        uint64_t p = (ax & ~az & bx & bz)     // X * Y
                     | (ax & az & ~bx & bz)   // Y * Z
                     | (~ax & az & bx & ~bz); // Z * X
        uint64_t m = (bx & ~bz & ax & az)     // Y * X
                     | (bx & bz & ~ax & az)   // Z * Y
                     | (~bx & bz & ax & ~az); // X * Z
        pos += static_cast<uint32_t>(std::popcount(p));
        neg += static_cast<uint32_t>(std::popcount(m));
        r.x_[w] = ax ^ bx;
        r.z_[w] = az ^ bz;
    }
    r.phase_ = static_cast<uint8_t>((a.phase_ + b.phase_ + pos + 3u * neg) & 3);
    return r;
}

PauliOperator PauliOperator::multiply_effective(const PauliOperator &a, const PauliOperator &b) {
    a.check_same_n(b);
    PauliOperator r(a.n_);
    for (uint32_t w = 0; w < a.words(); w++) {
        r.x_[w] = a.x_[w] ^ b.x_[w];
        r.z_[w] = a.z_[w] ^ b.z_[w];
    }
    return r;
}

bool PauliOperator::commutes(const PauliOperator &a, const PauliOperator &b) {
    a.check_same_n(b);
    uint32_t c = 0;
    for (uint32_t w = 0; w < a.words(); w++) {
        c ^= static_cast<uint32_t>(std::popcount((a.x_[w] & b.z_[w]) ^ (a.z_[w] & b.x_[w])));
    }
    return (c & 1) == 0;
}

std::vector<uint32_t> PauliOperator::anticommute_positions(const PauliOperator &a, const PauliOperator &b) {
    a.check_same_n(b);
    std::vector<uint32_t> out;
    for (uint32_t w = 0; w < a.words(); w++) {
        uint64_t m = (a.x_[w] & b.z_[w]) ^ (a.z_[w] & b.x_[w]);
        while (m) {
            uint32_t bit = static_cast<uint32_t>(std::countr_zero(m));
            out.push_back(w * 64 + bit);
            m &= m - 1;
        }
    }
    return out;
}

std::pair<uint32_t, uint32_t> PauliOperator::anticommute_count_by_block(const PauliOperator &a,
                                                                        const PauliOperator &b, uint32_t split) {
    a.check_same_n(b);
    if (split == 0 || split >= a.n_) {
        throw std::invalid_argument("invalid block split");
    }
    uint32_t left = 0, right = 0;
    for (uint32_t w = 0; w < a.words(); w++) {
        uint64_t m = (a.x_[w] & b.z_[w]) ^ (a.z_[w] & b.x_[w]);
        uint64_t lo = ~uint64_t(0);
        if (split <= w * 64) {
            lo = 0;
        } else if (split < (w + 1) * 64) {
            lo = (uint64_t(1) << (split - w * 64)) - 1;
        }
        left += static_cast<uint32_t>(std::popcount(m & lo));
        right += static_cast<uint32_t>(std::popcount(m & ~lo));
    }
    return {left, right};
}

bool PauliOperator::same_letters(const PauliOperator &a, const PauliOperator &b) {
    if (a.n_ != b.n_) {
        return false;
    }
    for (uint32_t w = 0; w < a.words(); w++) {
        if (a.x_[w] != b.x_[w] || a.z_[w] != b.z_[w]) {
            return false;
        }
    }
    return true;
}

PauliOperator PauliOperator::embed(uint32_t n_total, uint32_t offset) const {
    if (offset + n_ > n_total) {
        throw std::invalid_argument("embed out of range");
    }
    PauliOperator r(n_total);
    for (uint32_t j = 0; j < n_; j++) {
        r.set_letter(offset + j, letter(j));
    }
    r.phase_ = phase_;
    return r;
}

PauliOperator PauliOperator::doubled() const {
    PauliOperator r(2 * n_);
    for (uint32_t j = 0; j < n_; j++) {
        PauliLetter l = letter(j);
        r.set_letter(j, l);
        r.set_letter(n_ + j, l);
    }
    r.phase_ = phase_;
    return r;
}

std::string PauliOperator::str(std::optional<uint32_t> split) const {
    std::string s;
    switch (phase_) {
        case 0:
            s = "+";
            break;
        case 1:
            s = "+i";
            break;
        case 2:
            s = "-";
            break;
        case 3:
            s = "-i";
            break;
    }
    for (uint32_t j = 0; j < n_; j++) {
        if (split && j == *split) {
            s += ' ';
        }
        s += letter_char(letter(j));
    }
    return s;
}

}  // namespace bmkit
