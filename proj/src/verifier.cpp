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

#include "bmkit/verifier.hpp"

#include <sstream>

#include "bmkit/stabilizer.hpp"

namespace bmkit {

std::string ConditionReport::text() const {
    std::ostringstream os;
    if (!sequence_error.empty()) {
        os << "candidate sequence invalid: " << sequence_error << "\n";
    }
    for (int c = 0; c < 5; c++) {
        os << "condition " << c + 1 << ": " << (passed[static_cast<size_t>(c)] ? "pass" : "FAIL") << "\n";
    }
    for (const auto &w : witnesses) {
        os << "  witness (condition " << w.condition << ", j=" << w.j + 1;
        if (w.k >= 0) {
            os << ", k=" << w.k + 1;
        }
        os << "): " << w.detail << "\n";
    }
    return os.str();
}

std::string ConditionReport::json() const {
    std::ostringstream os;
    os << "{\"passed\":[";
    for (int c = 0; c < 5; c++) {
        os << (passed[static_cast<size_t>(c)] ? "true" : "false") << (c < 4 ? "," : "");
    }
    os << "],\"all\":" << (all_passed() ? "true" : "false") << ",\"witnesses\":[";
    for (size_t i = 0; i < witnesses.size(); i++) {
        const auto &w = witnesses[i];
        os << (i ? "," : "") << "{\"condition\":" << w.condition << ",\"j\":" << w.j + 1 << ",\"k\":" << w.k + 1
           << ",\"detail\":\"" << w.detail << "\"}";
    }
    os << "]}";
    return os.str();
}

ConditionReport check_conditions(const Scheme &scheme, const CandidateGeneratorSequence &cseq) {
    ConditionReport rep;
    const StabilizerCode &code = scheme.code;
    uint32_t n = code.n;
    // The adaptive phase may exclude pre-measured qubits (tree roots), so all
    // sequence arithmetic runs over the scheme's own length.
    uint32_t n_att = static_cast<uint32_t>(scheme.order.size());
    if (scheme.bases.size() != n_att || scheme.logicals.size() != n_att) {
        throw std::invalid_argument("scheme sequences misaligned");
    }
    if (cseq.ops.size() + 1 != n_att) {
        throw std::invalid_argument("candidate sequence must have one entry per position but the last");
    }
    // The candidate sequence must generate the full stabilizer group with each
    // element independent.
    for (size_t i = 0; i < cseq.ops.size(); i++) {
        if (!code.stabilizer_span().contains(cseq.ops[i])) {
            rep.sequence_error = "entry " + std::to_string(i + 1) + " is not a code stabilizer";
            return rep;
        }
    }
    if (symplectic_rank(cseq.ops) != cseq.ops.size()) {
        rep.sequence_error = "entries are not independent";
        return rep;
    }

    auto b_op = [&](uint32_t j) { return PauliOperator::single(n, scheme.order[j], scheme.bases[j]); };

    // Condition 1: b_j anticommutes with c_j.
    rep.passed[0] = true;
    for (uint32_t j = 0; j + 1 < n_att; j++) {
        if (PauliOperator::commutes(b_op(j), cseq.ops[j])) {
            rep.passed[0] = false;
            rep.witnesses.push_back({1, static_cast<int>(j), -1, b_op(j), cseq.ops[j],
                                     b_op(j).str() + " commutes with " + cseq.ops[j].str()});
            break;
        }
    }
    // Condition 2: b_j commutes with every later generator.
    rep.passed[1] = true;
    for (uint32_t j = 0; j + 1 < n_att && rep.passed[1]; j++) {
        for (uint32_t k = j + 1; k + 1 < n_att; k++) {
            if (!PauliOperator::commutes(b_op(j), cseq.ops[k])) {
                rep.passed[1] = false;
                rep.witnesses.push_back({2, static_cast<int>(j), static_cast<int>(k), b_op(j), cseq.ops[k],
                                         b_op(j).str() + " anticommutes with later " + cseq.ops[k].str()});
                break;
            }
        }
    }
    // Condition 3: every alternative letter on position j either anticommutes
    // with a non-prior generator or completes a logical measurement.
    rep.passed[2] = true;
    {
        PauliOperator yrep = PauliOperator::multiply_effective(code.logical_x_rep, code.logical_z_rep);
        SymplecticBasis prior(n);
        for (const auto &g : code.generators) {
            prior.extend(g);
        }
        for (const auto &p : scheme.pre_steps) {
            prior.extend(p);
        }
        for (uint32_t j = 0; j + 1 < n_att && rep.passed[2]; j++) {
            for (PauliLetter w : {PauliLetter::X, PauliLetter::Y, PauliLetter::Z}) {
                if (w == scheme.bases[j]) {
                    continue;
                }
                PauliOperator alt = PauliOperator::single(n, scheme.order[j], w);
                bool ok = false;
                for (uint32_t k = j; k + 1 < n_att; k++) {
                    if (!PauliOperator::commutes(alt, cseq.ops[k])) {
                        ok = true;
                        break;
                    }
                }
                if (!ok) {
                    std::array<const PauliOperator *, 3> reps = {&code.logical_x_rep, &code.logical_z_rep, &yrep};
                    for (const PauliOperator *rep_op : reps) {
                        if (prior.contains(PauliOperator::multiply_effective(alt, *rep_op))) {
                            ok = true;
                            break;
                        }
                    }
                }
                if (!ok) {
                    rep.passed[2] = false;
                    rep.witnesses.push_back({3, static_cast<int>(j), -1, alt, PauliOperator::identity(n),
                                             alt.str() + " neither anticommutes with a non-prior generator nor "
                                                         "completes a logical measurement"});
                    break;
                }
            }
            prior.extend(b_op(j));
        }
    }
    // Condition 4: the logical pair commutes with every prior basis element.
    rep.passed[3] = true;
    for (uint32_t j = 0; j < n_att && rep.passed[3]; j++) {
        for (uint32_t k = 0; k < j; k++) {
            std::array<const PauliOperator *, 2> lops = {&scheme.logicals[j].x_op, &scheme.logicals[j].z_op};
            for (const PauliOperator *lop : lops) {
                if (!PauliOperator::commutes(*lop, b_op(k))) {
                    rep.passed[3] = false;
                    rep.witnesses.push_back({4, static_cast<int>(j), static_cast<int>(k), *lop, b_op(k),
                                             lop->str() + " anticommutes with prior " + b_op(k).str()});
                    break;
                }
            }
            if (!rep.passed[3]) {
                break;
            }
        }
    }
    // Condition 5: the pair anticommutes exactly at its own position.
    rep.passed[4] = true;
    for (uint32_t j = 0; j < n_att && rep.passed[4]; j++) {
        const LogicalPair &lp = scheme.logicals[j];
        auto anti = PauliOperator::anticommute_positions(lp.x_op, lp.z_op);
        bool ok = anti.size() == 1 && anti[0] == scheme.order[j];
        if (!ok) {
            rep.passed[4] = false;
            rep.witnesses.push_back({5, static_cast<int>(j), -1, lp.x_op, lp.z_op,
                                     "pair anticommutes at " + std::to_string(anti.size()) +
                                         " sites instead of exactly its own position"});
        }
    }
    return rep;
}

std::optional<CandidateGeneratorSequence> derive_candidate_sequence(const Scheme &scheme) {
    const StabilizerCode &code = scheme.code;
    uint32_t n = code.n;
    // Anticommutation signature of each generator against the basis sequence;
    // echelonize by the last set bit so that entry j anticommutes with b_j and
    // commutes with everything later.
    struct Row {
        std::vector<bool> sig;
        PauliOperator op;
        int last = -1;
    };
    auto last_bit = [](const std::vector<bool> &v) {
        for (int i = static_cast<int>(v.size()); i-- > 0;) {
            if (v[static_cast<size_t>(i)]) {
                return i;
            }
        }
        return -1;
    };
    std::vector<Row> rows;
    for (const auto &g : code.generators) {
        Row r;
        r.op = g;
        for (size_t j = 0; j + 1 < scheme.order.size(); j++) {
            r.sig.push_back(
                !PauliOperator::commutes(g, PauliOperator::single(n, scheme.order[j], scheme.bases[j])));
        }
        r.last = last_bit(r.sig);
        rows.push_back(std::move(r));
    }
    std::vector<std::optional<Row>> slot(scheme.order.empty() ? 0 : scheme.order.size() - 1);
    for (auto &r : rows) {
        while (r.last >= 0 && slot[static_cast<size_t>(r.last)]) {
            const Row &s = *slot[static_cast<size_t>(r.last)];
            for (size_t i = 0; i < r.sig.size(); i++) {
                r.sig[i] = r.sig[i] != s.sig[i];
            }
            r.op = PauliOperator::multiply_effective(r.op, s.op);
            r.last = last_bit(r.sig);
        }
        if (r.last >= 0) {
            slot[static_cast<size_t>(r.last)] = r;
        }
    }
    // Rows reduced to an all-commuting signature fit no slot, but folding
    // them into the final entry keeps conditions 1-2 intact and gives the
    // later single-qubit alternatives more to anticommute with.
    if (!slot.empty() && slot.back()) {
        SymplecticBasis placed(n);
        for (const auto &sl : slot) {
            if (sl) {
                placed.extend(sl->op);
            }
        }
        for (auto &r : rows) {
            if (r.last < 0 && placed.extend(r.op)) {
                slot.back()->op = PauliOperator::multiply_effective(slot.back()->op, r.op);
            }
        }
    }
    // Back-substitution: entry k must commute with every earlier basis
    // element too, so its signature has to be exactly e_k.
    for (size_t j = 0; j < slot.size(); j++) {
        if (!slot[j]) {
            return std::nullopt;
        }
        for (size_t k = j + 1; k < slot.size(); k++) {
            if (slot[k] && slot[k]->sig[j]) {
                for (size_t i = 0; i < slot[k]->sig.size(); i++) {
                    slot[k]->sig[i] = slot[k]->sig[i] != slot[j]->sig[i];
                }
                slot[k]->op = PauliOperator::multiply_effective(slot[k]->op, slot[j]->op);
            }
        }
    }
    CandidateGeneratorSequence cs;
    for (uint32_t j = 0; j + 1 < scheme.order.size(); j++) {
        cs.ops.push_back(slot[j]->op);
    }
    return cs;
}

Rational bm_bound(uint32_t n1, uint32_t n2, const BellProb &pb) {
    uint32_t k = std::min(n1, n2);
    BigUint qk = BigUint::pow(BigUint(pb.den), k);
    BigUint fk = BigUint::pow(BigUint(pb.den - pb.num), k);
    return Rational(qk - fk, qk);
}

bool heuristic_no_premature_logical(const Scheme &scheme) {
    StabilizerState state = StabilizerState::init_encoded_bell(scheme.code, scheme.code, 1, 1);
    uint32_t n = scheme.code.n;
    for (const auto &p : scheme.pre_steps) {
        state.measure(p.embed(2 * n, 0), 1, nullptr);
        state.measure(p.embed(2 * n, n), 1, nullptr);
    }
    for (size_t j = 0; j + 1 < scheme.order.size(); j++) {
        PauliOperator half = PauliOperator::single(n, scheme.order[j], scheme.bases[j]).embed(2 * n, 0);
        if (state.classify(half).kind != Classification::Kind::Anticommuting) {
            return false;
        }
        state.measure(half, 1, nullptr);
        state.measure(PauliOperator::single(n, scheme.order[j], scheme.bases[j]).embed(2 * n, n), 1, nullptr);
    }
    return true;
}

bool heuristic_no_almost_stabilizer(const Scheme &scheme, std::optional<AlmostStabilizerWitness> *witness) {
    const StabilizerCode &code = scheme.code;
    uint32_t n = code.n;
    SymplecticBasis measured(n);
    std::vector<PauliOperator> inserted;
    for (const auto &p : scheme.pre_steps) {
        measured.extend(p);
        inserted.push_back(p);
    }
    std::vector<bool> is_measured(n, false);
    for (const auto &p : scheme.pre_steps) {
        for (uint32_t q : p.support()) {
            is_measured[q] = true;
        }
    }
    uint32_t n_att = static_cast<uint32_t>(scheme.order.size());
    for (uint32_t prefix = 0; prefix + 1 <= n_att; prefix++) {
        // Span of the prefix records together with the full stabilizer group.
        SymplecticBasis span(n);
        std::vector<PauliOperator> ops;
        for (const auto &g : code.generators) {
            span.extend(g);
            ops.push_back(g);
        }
        for (const auto &p : inserted) {
            span.extend(p);
            ops.push_back(p);
        }
        for (uint32_t t = 0; t < n; t++) {
            if (is_measured[t]) {
                continue;
            }
            for (PauliLetter w : {PauliLetter::X, PauliLetter::Y, PauliLetter::Z}) {
                PauliOperator m = PauliOperator::single(n, t, w);
                auto coeffs = span.in_span(m);
                if (!coeffs) {
                    continue;
                }
                // m = (product of measured) * g for a code stabilizer g, so g
                // has been almost-measured.
                if (witness) {
                    PauliOperator g = m;
                    for (uint32_t row : *coeffs) {
                        if (row >= code.generators.size()) {
                            g = PauliOperator::multiply_effective(g, ops[row]);
                        }
                    }
                    // g currently equals m * mu = the stabilizer.
                    *witness = AlmostStabilizerWitness{prefix, g, m};
                }
                return false;
            }
        }
        if (prefix + 1 == n_att) {
            break;
        }
        PauliOperator b = PauliOperator::single(n, scheme.order[prefix], scheme.bases[prefix]);
        measured.extend(b);
        inserted.push_back(b);
        is_measured[scheme.order[prefix]] = true;
    }
    return true;
}

}  // namespace bmkit
