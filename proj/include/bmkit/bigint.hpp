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
#include <stdexcept>
#include <string>
#include <vector>

namespace bmkit {

// Arbitrary-precision unsigned integer, little-endian 32-bit limbs.
// Only the operations needed for exact probability bookkeeping are provided.
class BigUint {
  public:
    BigUint() = default;
    BigUint(uint64_t v) {
        if (v) {
            limbs_.push_back(static_cast<uint32_t>(v));
            if (v >> 32) {
                limbs_.push_back(static_cast<uint32_t>(v >> 32));
            }
        }
    }

    bool is_zero() const {
        return limbs_.empty();
    }

    static int cmp(const BigUint &a, const BigUint &b) {
        if (a.limbs_.size() != b.limbs_.size()) {
            return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
        }
        for (size_t i = a.limbs_.size(); i-- > 0;) {
            if (a.limbs_[i] != b.limbs_[i]) {
                return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
            }
        }
        return 0;
    }
    bool operator==(const BigUint &o) const {
        return cmp(*this, o) == 0;
    }
    bool operator<(const BigUint &o) const {
        return cmp(*this, o) < 0;
    }

    BigUint &operator+=(const BigUint &o) {
        uint64_t carry = 0;
        size_t n = std::max(limbs_.size(), o.limbs_.size());
        limbs_.resize(n, 0);
        for (size_t i = 0; i < n; i++) {
            uint64_t s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
            limbs_[i] = static_cast<uint32_t>(s);
            carry = s >> 32;
        }
        if (carry) {
            limbs_.push_back(static_cast<uint32_t>(carry));
        }
        return *this;
    }

    // Requires *this >= o.
    BigUint &operator-=(const BigUint &o) {
        int64_t borrow = 0;
        for (size_t i = 0; i < limbs_.size(); i++) {
            int64_t d = static_cast<int64_t>(limbs_[i]) - borrow - (i < o.limbs_.size() ? o.limbs_[i] : 0);
            borrow = 0;
            if (d < 0) {
                d += (int64_t(1) << 32);
                borrow = 1;
            }
            limbs_[i] = static_cast<uint32_t>(d);
        }
        if (borrow) {
            throw std::logic_error("BigUint underflow");
        }
        trim();
        return *this;
    }

    BigUint operator*(const BigUint &o) const {
        if (is_zero() || o.is_zero()) {
            return BigUint();
        }
        BigUint r;
        r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
        for (size_t i = 0; i < limbs_.size(); i++) {
            uint64_t carry = 0;
            for (size_t j = 0; j < o.limbs_.size(); j++) {
                uint64_t cur = r.limbs_[i + j] + uint64_t(limbs_[i]) * o.limbs_[j] + carry;
                r.limbs_[i + j] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
            }
            size_t k = i + o.limbs_.size();
            while (carry) {
                uint64_t cur = r.limbs_[k] + carry;
                r.limbs_[k] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
                k++;
            }
        }
        r.trim();
        return r;
    }

    BigUint operator+(const BigUint &o) const {
        BigUint r = *this;
        r += o;
        return r;
    }
    BigUint operator-(const BigUint &o) const {
        BigUint r = *this;
        r -= o;
        return r;
    }

    static BigUint pow(const BigUint &base, uint32_t e) {
        BigUint r(1), b = base;
        while (e) {
            if (e & 1) {
                r = r * b;
            }
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    bool even() const {
        return limbs_.empty() || !(limbs_[0] & 1);
    }

    void shr1() {
        uint32_t carry = 0;
        for (size_t i = limbs_.size(); i-- > 0;) {
            uint32_t next = limbs_[i] & 1;
            limbs_[i] = (limbs_[i] >> 1) | (carry << 31);
            carry = next;
        }
        trim();
    }

    void shl(uint32_t bits) {
        if (is_zero() || bits == 0) {
            return;
        }
        uint32_t words = bits / 32, rem = bits % 32;
        limbs_.insert(limbs_.begin(), words, 0);
        if (rem) {
            uint32_t carry = 0;
            for (size_t i = words; i < limbs_.size(); i++) {
                uint32_t next = limbs_[i] >> (32 - rem);
                limbs_[i] = (limbs_[i] << rem) | carry;
                carry = next;
            }
            if (carry) {
                limbs_.push_back(carry);
            }
        }
    }

    static BigUint gcd(BigUint a, BigUint b) {
        if (a.is_zero()) {
            return b;
        }
        if (b.is_zero()) {
            return a;
        }
        uint32_t shift = 0;
        while (a.even() && b.even()) {
            a.shr1();
            b.shr1();
            shift++;
        }
        while (a.even()) {
            a.shr1();
        }
        while (!b.is_zero()) {
            while (b.even()) {
                b.shr1();
            }
            if (cmp(a, b) > 0) {
                std::swap(a, b);
            }
            b -= a;
        }
        a.shl(shift);
        return a;
    }

    // Divides in place by a small divisor, returns the remainder.
    uint32_t divmod_small(uint32_t d) {
        uint64_t rem = 0;
        for (size_t i = limbs_.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | limbs_[i];
            limbs_[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        trim();
        return static_cast<uint32_t>(rem);
    }

    // Exact division; caller guarantees divisibility (used after gcd reduction).
    static BigUint div_exact(const BigUint &num, const BigUint &den) {
        if (den.is_zero()) {
            throw std::invalid_argument("division by zero");
        }
        // Binary long division.
        BigUint q, rem;
        int total_bits = static_cast<int>(num.limbs_.size()) * 32;
        q.limbs_.assign(num.limbs_.size(), 0);
        for (int bit = total_bits - 1; bit >= 0; bit--) {
            rem.shl(1);
            if (num.limbs_[bit / 32] >> (bit % 32) & 1) {
                if (rem.is_zero()) {
                    rem = BigUint(1);
                } else {
                    rem.limbs_[0] |= 1;
                }
            }
            if (!(cmp(rem, den) < 0)) {
                rem -= den;
                q.limbs_[bit / 32] |= uint32_t(1) << (bit % 32);
            }
        }
        q.trim();
        return q;
    }

    double to_double() const {
        double r = 0;
        for (size_t i = limbs_.size(); i-- > 0;) {
            r = r * 4294967296.0 + limbs_[i];
        }
        return r;
    }

    std::string to_string() const {
        if (is_zero()) {
            return "0";
        }
        BigUint t = *this;
        std::string s;
        while (!t.is_zero()) {
            s += static_cast<char>('0' + t.divmod_small(10));
        }
        return std::string(s.rbegin(), s.rend());
    }

  private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) {
            limbs_.pop_back();
        }
    }
    std::vector<uint32_t> limbs_;
};

// Exact non-negative rational, always stored reduced.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(uint64_t n, uint64_t d) : Rational(BigUint(n), BigUint(d)) {}
    Rational(BigUint n, BigUint d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) {
            throw std::invalid_argument("rational with zero denominator");
        }
        reduce();
    }

    const BigUint &num() const {
        return num_;
    }
    const BigUint &den() const {
        return den_;
    }

    bool operator==(const Rational &o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const Rational &o) const {
        return !(*this == o);
    }
    bool operator<(const Rational &o) const {
        return num_ * o.den_ < o.num_ * den_;
    }
    bool operator<=(const Rational &o) const {
        return !(o < *this);
    }

    Rational operator+(const Rational &o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational &o) const {
        return Rational(num_ * o.num_, den_ * o.den_);
    }

    double to_double() const {
        return num_.to_double() / den_.to_double();
    }

    std::string to_string() const {
        return num_.to_string() + "/" + den_.to_string();
    }

    // Parses "p/q" or "p"; rejects anything else (floats in particular).
    static Rational parse(const std::string &s) {
        auto slash = s.find('/');
        std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
        std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
        auto parse_uint = [](const std::string &t) {
            if (t.empty()) {
                throw std::invalid_argument("bad rational literal");
            }
            BigUint v(0);
            for (char c : t) {
                if (c < '0' || c > '9') {
                    throw std::invalid_argument("bad rational literal: " + t);
                }
                v = v * BigUint(10) + BigUint(static_cast<uint64_t>(c - '0'));
            }
            return v;
        };
        return Rational(parse_uint(ns), parse_uint(ds));
    }

  private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = BigUint(1);
            return;
        }
        BigUint g = BigUint::gcd(num_, den_);
        num_ = BigUint::div_exact(num_, g);
        den_ = BigUint::div_exact(den_, g);
    }
    BigUint num_, den_;
};

}  // namespace bmkit
