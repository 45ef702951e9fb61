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

#include "bmkit/fock.hpp"

#include <sstream>
#include <stdexcept>

namespace bmkit {

void FockAmp::normalize() {
    while (h > 0 && a % 2 == 0 && b % 2 == 0 && c % 2 == 0 && d % 2 == 0) {
        a /= 2;
        b /= 2;
        c /= 2;
        d /= 2;
        h--;
    }
    if (is_zero()) {
        h = 0;
    }
}

FockAmp FockAmp::operator+(const FockAmp &o) const {
    FockAmp x = *this, y = o;
    while (x.h < y.h) {
        x.a *= 2;
        x.b *= 2;
        x.c *= 2;
        x.d *= 2;
        x.h++;
    }
    while (y.h < x.h) {
        y.a *= 2;
        y.b *= 2;
        y.c *= 2;
        y.d *= 2;
        y.h++;
    }
    FockAmp r{x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d, x.h};
    r.normalize();
    return r;
}

FockAmp FockAmp::operator*(const FockAmp &o) const {
    // (P + iQ)(R + iS) with components in Z[sqrt2].
    auto mul = [](int64_t a1, int64_t b1, int64_t a2, int64_t b2) {
        return std::pair<int64_t, int64_t>{a1 * a2 + 2 * b1 * b2, a1 * b2 + a2 * b1};
    };
    auto [pr_a, pr_b] = mul(a, b, o.a, o.b);
    auto [qs_a, qs_b] = mul(c, d, o.c, o.d);
    auto [ps_a, ps_b] = mul(a, b, o.c, o.d);
    auto [qr_a, qr_b] = mul(c, d, o.a, o.b);
    FockAmp r{pr_a - qs_a, pr_b - qs_b, ps_a + qr_a, ps_b + qr_b, h + o.h};
    r.normalize();
    return r;
}

bool FockAmp::operator==(const FockAmp &o) const {
    FockAmp x = *this, y = o;
    x.normalize();
    y.normalize();
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d && x.h == y.h;
}

Rational FockAmp::norm_sq() const {
    int64_t rational_part = a * a + 2 * b * b + c * c + 2 * d * d;
    int64_t sqrt2_part = 2 * (a * b + c * d);
    if (sqrt2_part != 0) {
        throw std::logic_error("amplitude norm has an irrational part");
    }
    BigUint den = BigUint::pow(BigUint(4), static_cast<uint32_t>(h));
    return Rational(BigUint(static_cast<uint64_t>(rational_part)), den);
}

std::string FockAmp::str() const {
    FockAmp v = *this;
    v.normalize();
    if (v.is_zero()) {
        return "0";
    }
    int64_t p, q;
    int k;
    if (v.b == 0 && v.d == 0) {
        p = v.a;
        q = v.c;
        k = 2 * v.h;
    } else if (v.a == 0 && v.c == 0) {
        p = v.b;
        q = v.d;
        k = 2 * v.h - 1;
    } else {
        std::ostringstream os;
        os << "(" << v.a << "+" << v.b << "*sqrt2+i(" << v.c << "+" << v.d << "*sqrt2))/2^" << v.h;
        return os.str();
    }
    std::ostringstream os;
    os << "(" << p;
    if (q >= 0) {
        os << " + " << q << "i";
    } else {
        os << " - " << -q << "i";
    }
    os << ")";
    if (k > 0) {
        os << "/2^{" << k << "/2}";
    }
    return os.str();
}

void FockVector::add(const FockPattern &p, const FockAmp &a) {
    if (a.is_zero()) {
        return;
    }
    auto it = amps.find(p);
    if (it == amps.end()) {
        amps[p] = a;
    } else {
        it->second = it->second + a;
        if (it->second.is_zero()) {
            amps.erase(it);
        }
    }
}

Rational FockVector::total_probability() const {
    Rational total(0, 1);
    for (const auto &[p, a] : amps) {
        total = total + a.norm_sq();
    }
    return total;
}

std::string bell_name(BellIndex b) {
    switch (b) {
        case BellIndex::PhiPlus:
            return "Phi+";
        case BellIndex::PhiMinus:
            return "Phi-";
        case BellIndex::PsiPlus:
            return "Psi+";
        case BellIndex::PsiMinus:
            return "Psi-";
    }
    return "?";
}

FockVector dual_rail_bell(BellIndex b) {
    FockVector v;
    FockAmp inv_sqrt2{0, 1, 0, 0, 1};  // sqrt2 / 2
    FockAmp minus = inv_sqrt2;
    minus.a = -minus.a;
    minus.b = -minus.b;
    switch (b) {
        case BellIndex::PhiPlus:
            v.add({1, 0, 1, 0}, inv_sqrt2);
            v.add({0, 1, 0, 1}, inv_sqrt2);
            break;
        case BellIndex::PhiMinus:
            v.add({1, 0, 1, 0}, inv_sqrt2);
            v.add({0, 1, 0, 1}, minus);
            break;
        case BellIndex::PsiPlus:
            v.add({1, 0, 0, 1}, inv_sqrt2);
            v.add({0, 1, 1, 0}, inv_sqrt2);
            break;
        case BellIndex::PsiMinus:
            v.add({1, 0, 0, 1}, inv_sqrt2);
            v.add({0, 1, 1, 0}, minus);
            break;
    }
    return v;
}

namespace {

int64_t binom(int n, int k) {
    static const int64_t table[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
    return table[n][k];
}

// Applies a 2x2 mode transformation (on creation operators) exactly on the
// <=2-photon sector.
FockVector apply_mode_unitary(const FockVector &state, int m0, int m1, const std::array<FockAmp, 4> &u) {
    FockVector out;
    for (const auto &[pat, amp] : state.amps) {
        int p = pat[static_cast<size_t>(m0)], q = pat[static_cast<size_t>(m1)];
        // Monomial coefficient: divide by sqrt(n!) per mode.
        FockAmp mono = amp;
        if (p == 2) {
            mono = mono.times_inv_sqrt2();
        }
        if (q == 2) {
            mono = mono.times_inv_sqrt2();
        }
        // (u00 a0 + u10 a1)^p (u01 a0 + u11 a1)^q, creation-operator algebra.
        for (int s = 0; s <= p; s++) {
            for (int t = 0; t <= q; t++) {
                int e0 = s + t;
                int e1 = (p - s) + (q - t);
                if (e0 > 2 || e1 > 2) {
                    continue;
                }
                FockAmp coeff = mono * FockAmp{binom(p, s) * binom(q, t), 0, 0, 0, 0};
                for (int rep = 0; rep < s; rep++) {
                    coeff = coeff * u[0];
                }
                for (int rep = 0; rep < p - s; rep++) {
                    coeff = coeff * u[2];
                }
                for (int rep = 0; rep < t; rep++) {
                    coeff = coeff * u[1];
                }
                for (int rep = 0; rep < q - t; rep++) {
                    coeff = coeff * u[3];
                }
                // Back to Fock normalization: multiply by sqrt(m!) per mode.
                auto times_sqrt2 = [](FockAmp v) {
                    FockAmp r{2 * v.b, v.a, 2 * v.d, v.c, v.h};
                    r.normalize();
                    return r;
                };
                if (e0 == 2) {
                    coeff = times_sqrt2(coeff);
                }
                if (e1 == 2) {
                    coeff = times_sqrt2(coeff);
                }
                FockPattern np = pat;
                np[static_cast<size_t>(m0)] = e0;
                np[static_cast<size_t>(m1)] = e1;
                out.add(np, coeff);
            }
        }
    }
    return out;
}

const FockAmp kOne{1, 0, 0, 0, 0};
const FockAmp kZero{};
const FockAmp kI{0, 0, 1, 0, 0};
const FockAmp kMinusOne{-1, 0, 0, 0, 0};
const FockAmp kMinusI{0, 0, -1, 0, 0};
const FockAmp kInvSqrt2{0, 1, 0, 0, 1};
const FockAmp kMinusInvSqrt2{0, -1, 0, 0, 1};
const FockAmp kIInvSqrt2{0, 0, 0, 1, 1};

std::array<FockAmp, 4> gate_matrix(char g) {
    switch (g) {
        case 'X':
            return {kZero, kOne, kOne, kZero};
        case 'Y':
            return {kZero, kMinusI, kI, kZero};
        case 'Z':
            return {kOne, kZero, kZero, kMinusOne};
        case 'S':
            return {kOne, kZero, kZero, kI};
        case 'H':
            return {kInvSqrt2, kInvSqrt2, kInvSqrt2, kMinusInvSqrt2};
    }
    throw std::invalid_argument(std::string("unknown gate: ") + g);
}

FockVector apply_gates(FockVector state, const std::string &gates, int m0, int m1) {
    for (char g : gates) {
        state = apply_mode_unitary(state, m0, m1, gate_matrix(g));
    }
    return state;
}

FockAmp conj_amp(const FockAmp &a) {
    return FockAmp{a.a, a.b, -a.c, -a.d, a.h};
}

}  // namespace

FockVector beam_splitter_pair(const FockVector &state, std::pair<int, int> modes) {
    if (modes.first == modes.second || modes.first < 0 || modes.second < 0 || modes.first > 3 || modes.second > 3) {
        throw std::invalid_argument("beam splitter needs two distinct modes in 0..3");
    }
    return apply_mode_unitary(state, modes.first, modes.second, {kInvSqrt2, kIInvSqrt2, kIInvSqrt2, kInvSqrt2});
}

BellAnalyzer::BellAnalyzer(std::string gates_q1, std::string gates_q2)
    : gates1_(std::move(gates_q1)), gates2_(std::move(gates_q2)) {
    for (int j = 0; j < 4; j++) {
        FockVector v = dual_rail_bell(static_cast<BellIndex>(j));
        v = apply_gates(std::move(v), gates1_, 0, 1);
        v = apply_gates(std::move(v), gates2_, 2, 3);
        v = beam_splitter_pair(v, {0, 2});
        v = beam_splitter_pair(v, {1, 3});
        outputs_[static_cast<size_t>(j)] = std::move(v);
    }
}

std::vector<FockPattern> BellAnalyzer::two_photon_patterns() {
    std::vector<FockPattern> out;
    for (int a = 0; a <= 2; a++) {
        for (int b = 0; b + a <= 2; b++) {
            for (int c = 0; c + b + a <= 2; c++) {
                int d = 2 - a - b - c;
                out.push_back({a, b, c, d});
            }
        }
    }
    return out;
}

OutcomeClass BellAnalyzer::classify_pattern(const FockPattern &pattern) const {
    int total = pattern[0] + pattern[1] + pattern[2] + pattern[3];
    if (total != 2) {
        throw std::invalid_argument("detector pattern must carry two photons");
    }
    std::array<FockAmp, 4> amp;
    int nonzero = 0, which = -1;
    for (int j = 0; j < 4; j++) {
        auto it = outputs_[static_cast<size_t>(j)].amps.find(pattern);
        amp[static_cast<size_t>(j)] = it == outputs_[static_cast<size_t>(j)].amps.end() ? FockAmp::zero() : it->second;
        if (!amp[static_cast<size_t>(j)].is_zero()) {
            nonzero++;
            which = j;
        }
    }
    OutcomeClass oc{};
    if (nonzero == 0) {
        oc.kind = OutcomeClass::Kind::Impossible;
        return oc;
    }
    if (nonzero == 1) {
        oc.kind = OutcomeClass::Kind::Unambiguous;
        oc.bell = static_cast<BellIndex>(which);
        return oc;
    }
    // Ambiguous: the effective projector is onto sum_j conj(amp_j) |Phi_j>.
    // Express it in the computational basis and match it against a product of
    // single-qubit Pauli eigenstates.
    std::array<FockAmp, 4> v{};  // order: 00, 01, 10, 11
    FockAmp cp = conj_amp(amp[0]).times_inv_sqrt2();
    FockAmp cm = conj_amp(amp[1]).times_inv_sqrt2();
    FockAmp sp = conj_amp(amp[2]).times_inv_sqrt2();
    FockAmp sm = conj_amp(amp[3]).times_inv_sqrt2();
    v[0] = cp + cm;
    v[3] = cp + (cm * kMinusOne);
    v[2] = sp + sm;
    v[1] = sp + (sm * kMinusOne);

    auto check = [&](PauliLetter w, int s1, int s2) {
        // Eigenvector of W with eigenvalue s is |0> + s|1> (X), |0> + i s|1>
        // (Y), or a computational state (Z); products up to normalization.
        std::array<FockAmp, 4> e{};
        auto sgn = [](int s) { return s > 0 ? kOne : kMinusOne; };
        if (w == PauliLetter::Z) {
            e[s1 > 0 ? (s2 > 0 ? 0 : 1) : (s2 > 0 ? 2 : 3)] = kOne;
        } else if (w == PauliLetter::X) {
            e[0] = kOne;
            e[1] = sgn(s2);
            e[2] = sgn(s1);
            e[3] = sgn(s1) * sgn(s2);
        } else {
            e[0] = kOne;
            e[1] = sgn(s2) * kI;
            e[2] = sgn(s1) * kI;
            e[3] = sgn(s1) * sgn(s2) * kMinusOne;
        }
        // Proportionality over the ring: cross products must agree.
        for (int i = 0; i < 4; i++) {
            for (int j = i + 1; j < 4; j++) {
                if (!(v[static_cast<size_t>(i)] * e[static_cast<size_t>(j)] ==
                      v[static_cast<size_t>(j)] * e[static_cast<size_t>(i)])) {
                    return false;
                }
            }
        }
        return true;
    };
    for (PauliLetter w : {PauliLetter::Z, PauliLetter::X, PauliLetter::Y}) {
        for (int s1 : {1, -1}) {
            for (int s2 : {1, -1}) {
                if (check(w, s1, s2)) {
                    oc.kind = OutcomeClass::Kind::Partial;
                    oc.payload = w;
                    oc.q1_value = s1;
                    oc.q2_value = s2;
                    oc.pair_value = s1 * s2;
                    return oc;
                }
            }
        }
    }
    throw std::logic_error("ambiguous outcome is not a two-Pauli projection");
}

Rational BellAnalyzer::success_probability() const {
    Rational total(0, 1);
    for (const auto &pattern : two_photon_patterns()) {
        OutcomeClass oc = classify_pattern(pattern);
        if (oc.kind != OutcomeClass::Kind::Unambiguous) {
            continue;
        }
        auto it = outputs_[static_cast<size_t>(oc.bell)].amps.find(pattern);
        total = total + it->second.norm_sq() * Rational(1, 4);
    }
    return total;
}

PauliLetter BellAnalyzer::guaranteed_payload() const {
    std::optional<PauliLetter> payload;
    for (const auto &pattern : two_photon_patterns()) {
        OutcomeClass oc = classify_pattern(pattern);
        if (oc.kind != OutcomeClass::Kind::Partial) {
            continue;
        }
        if (payload && *payload != oc.payload) {
            throw std::logic_error("analyzer partial outcomes disagree on the payload");
        }
        payload = oc.payload;
    }
    if (!payload) {
        throw std::logic_error("analyzer has no partial outcomes");
    }
    return *payload;
}

std::array<int, 4> BellAnalyzer::bell_permutation() const {
    // U maps Bell state j to some Bell state sigma(j) up to a global phase;
    // compare against the standard analyzer outputs.
    BellAnalyzer standard;
    std::array<int, 4> perm{};
    for (int j = 0; j < 4; j++) {
        int found = -1;
        for (int s = 0; s < 4 && found < 0; s++) {
            const auto &ta = outputs_[static_cast<size_t>(j)].amps;
            const auto &tb = standard.outputs_[static_cast<size_t>(s)].amps;
            if (ta.size() != tb.size()) {
                continue;
            }
            // Proportionality with a single global factor.
            bool ok = true;
            const FockAmp *ref_a = nullptr, *ref_b = nullptr;
            for (const auto &[p, va] : ta) {
                auto it = tb.find(p);
                if (it == tb.end()) {
                    ok = false;
                    break;
                }
                if (!ref_a) {
                    ref_a = &va;
                    ref_b = &it->second;
                    continue;
                }
                if (!(va * *ref_b == it->second * *ref_a)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                found = s;
            }
        }
        if (found < 0) {
            throw std::invalid_argument("gate word does not permute the Bell basis");
        }
        perm[static_cast<size_t>(j)] = found;
    }
    return perm;
}

}  // namespace bmkit
