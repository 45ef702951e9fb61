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

#include "bmkit/engine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace bmkit {

BellProb BellProb::parse(const std::string &s) {
    for (char c : s) {
        if (c == '.' || c == 'e' || c == 'E') {
            throw std::invalid_argument("Bell probability must be a rational like 1/2, not a float");
        }
    }
    auto slash = s.find('/');
    BellProb pb;
    try {
        pb.num = std::stoull(slash == std::string::npos ? s : s.substr(0, slash));
        pb.den = slash == std::string::npos ? 1 : std::stoull(s.substr(slash + 1));
    } catch (const std::exception &) {
        throw std::invalid_argument("bad Bell probability literal: " + s);
    }
    if (pb.den == 0 || pb.num > pb.den) {
        throw std::invalid_argument("Bell probability must lie in [0, 1]");
    }
    return pb;
}

namespace {

// Online GF(2) basis over 2n-bit symplectic vectors (n <= 64), with undo.
// Rows are indexed by their leading bit; the z word is the high half.
class FastBasis {
  public:
    explicit FastBasis(uint32_t n) : n_(n) {
        if (n > 64) {
            throw std::invalid_argument("exact engine supports up to 64 qubits");
        }
        slot_x_.assign(128, 0);
        slot_z_.assign(128, 0);
        filled_.assign(128, false);
    }

    static int top_bit(uint64_t x, uint64_t z) {
        if (z) {
            return 64 + 63 - std::countl_zero(z);
        }
        if (x) {
            return 63 - std::countl_zero(x);
        }
        return -1;
    }

    // Returns the slot index filled, or -1 if the vector was dependent.
    int push(uint64_t x, uint64_t z) {
        for (;;) {
            int b = top_bit(x, z);
            if (b < 0) {
                return -1;
            }
            if (!filled_[static_cast<size_t>(b)]) {
                slot_x_[static_cast<size_t>(b)] = x;
                slot_z_[static_cast<size_t>(b)] = z;
                filled_[static_cast<size_t>(b)] = true;
                return b;
            }
            x ^= slot_x_[static_cast<size_t>(b)];
            z ^= slot_z_[static_cast<size_t>(b)];
        }
    }

    void unfill(int slot) {
        if (slot >= 0) {
            filled_[static_cast<size_t>(slot)] = false;
        }
    }

    bool contains(uint64_t x, uint64_t z) const {
        for (;;) {
            int b = top_bit(x, z);
            if (b < 0) {
                return true;
            }
            if (!filled_[static_cast<size_t>(b)]) {
                return false;
            }
            x ^= slot_x_[static_cast<size_t>(b)];
            z ^= slot_z_[static_cast<size_t>(b)];
        }
    }

  private:
    uint32_t n_;
    std::vector<uint64_t> slot_x_, slot_z_;
    std::vector<bool> filled_;
};

struct LetterBits {
    uint64_t x = 0, z = 0;
};

// Span basis that also tracks, for every row, which recorded observables it
// is a product of (mask) and the structural Pauli phase of that product
// modulo 2. Phase parity composes through xors as the anticommuting-site
// parity, which is order independent.
class MaskedBasis {
  public:
    explicit MaskedBasis(uint32_t n) {
        if (n > 60) {
            throw std::invalid_argument("exact engine supports up to 60 qubits");
        }
        slot_.assign(128, Row{});
        filled_.assign(128, false);
    }

    struct Row {
        uint64_t x = 0, z = 0, mask = 0;
        uint8_t phase2 = 0;
    };

    struct Reduced {
        bool in_span = false;
        uint64_t mask = 0;
        uint8_t phase2 = 0;
        int slot = -1;  // filled slot when the vector was fresh
    };

    static int top_bit(uint64_t x, uint64_t z) {
        if (z) {
            return 64 + 63 - std::countl_zero(z);
        }
        if (x) {
            return 63 - std::countl_zero(x);
        }
        return -1;
    }

    Reduced reduce(uint64_t x, uint64_t z, uint64_t mask, uint8_t phase2) const {
        for (;;) {
            int b = top_bit(x, z);
            if (b < 0) {
                return {true, mask, phase2, -1};
            }
            if (!filled_[static_cast<size_t>(b)]) {
                Reduced r;
                r.in_span = false;
                r.mask = mask;
                r.phase2 = phase2;
                return r;
            }
            const Row &row = slot_[static_cast<size_t>(b)];
            phase2 ^= row.phase2 ^ static_cast<uint8_t>(
                          std::popcount((x & row.z) ^ (z & row.x)) & 1);
            x ^= row.x;
            z ^= row.z;
            mask ^= row.mask;
        }
    }

    // Inserts the vector; returns the slot filled or -1 when dependent.
    int push(uint64_t x, uint64_t z, uint64_t mask, uint8_t phase2) {
        for (;;) {
            int b = top_bit(x, z);
            if (b < 0) {
                return -1;
            }
            if (!filled_[static_cast<size_t>(b)]) {
                slot_[static_cast<size_t>(b)] = Row{x, z, mask, phase2};
                filled_[static_cast<size_t>(b)] = true;
                return b;
            }
            const Row &row = slot_[static_cast<size_t>(b)];
            phase2 ^= row.phase2 ^ static_cast<uint8_t>(
                          std::popcount((x & row.z) ^ (z & row.x)) & 1);
            x ^= row.x;
            z ^= row.z;
            mask ^= row.mask;
        }
    }

    void unfill(int slot) {
        if (slot >= 0) {
            filled_[static_cast<size_t>(slot)] = false;
        }
    }

    bool contains(uint64_t x, uint64_t z) const {
        return reduce(x, z, 0, 0).in_span;
    }

  private:
    std::vector<Row> slot_;
    std::vector<bool> filled_;
};

// GF(2) basis over outcome-bit masks with a conditioned parity per row; used
// to track which outcome combinations a decision branch has fixed.
class CondBasis {
  public:
    CondBasis() {
        slot_mask_.assign(64, 0);
        slot_par_.assign(64, 0);
        filled_.assign(64, false);
    }

    std::pair<uint64_t, uint8_t> reduce(uint64_t mask, uint8_t parity) const {
        while (mask) {
            int b = 63 - std::countl_zero(mask);
            if (!filled_[static_cast<size_t>(b)]) {
                return {mask, parity};
            }
            mask ^= slot_mask_[static_cast<size_t>(b)];
            parity ^= slot_par_[static_cast<size_t>(b)];
        }
        return {0, parity};
    }

    // Conditions the (already reduced, nonzero) form to the given parity.
    int condition(uint64_t reduced_mask, uint8_t parity) {
        int b = 63 - std::countl_zero(reduced_mask);
        slot_mask_[static_cast<size_t>(b)] = reduced_mask;
        slot_par_[static_cast<size_t>(b)] = parity;
        filled_[static_cast<size_t>(b)] = true;
        return b;
    }

    void unfill(int slot) {
        if (slot >= 0) {
            filled_[static_cast<size_t>(slot)] = false;
        }
    }

  private:
    std::vector<uint64_t> slot_mask_;
    std::vector<uint8_t> slot_par_;
    std::vector<bool> filled_;
};

LetterBits letter_bits(PauliLetter l, uint32_t q) {
    LetterBits b;
    uint64_t m = uint64_t(1) << q;
    if (l == PauliLetter::X || l == PauliLetter::Y) {
        b.x = m;
    }
    if (l == PauliLetter::Z || l == PauliLetter::Y) {
        b.z = m;
    }
    return b;
}

LetterBits op_bits(const PauliOperator &op) {
    if (op.num_qubits() > 64) {
        throw std::invalid_argument("exact engine supports up to 64 qubits");
    }
    return {op.x_word(0), op.z_word(0)};
}

// Common single-code evaluation plan for both scheme flavours.
struct Plan {
    const StabilizerCode *code;
    std::vector<uint32_t> order;           // qubits in attempt order
    std::vector<PauliLetter> bases;        // per position
    const std::vector<LogicalPair> *logicals = nullptr;  // adaptive only
    std::vector<PauliOperator> pre_steps;
    bool adaptive = false;

    uint32_t attempts() const {
        return static_cast<uint32_t>(order.size());
    }
};

Plan plan_of(const Scheme &s) {
    Plan p;
    p.code = &s.code;
    p.order = s.order;
    p.bases = s.bases;
    p.logicals = &s.logicals;
    p.pre_steps = s.pre_steps;
    p.adaptive = true;
    return p;
}

Plan plan_of(const StaticScheme &s) {
    Plan p;
    p.code = &s.code;
    p.order = s.order;
    for (uint32_t q : s.order) {
        p.bases.push_back(s.bases[q]);
    }
    p.pre_steps = s.pre_steps;
    p.adaptive = false;
    return p;
}

class Enumerator {
  public:
    Enumerator(const Plan &plan, const BellProb &pb, const ExactOptions &opts)
        : plan_(plan), pb_(pb), opts_(opts), basis_(plan.code->n) {
        n_att_ = plan.attempts();
        if (n_att_ > opts.attempt_cap) {
            throw std::invalid_argument("scheme attempts " + std::to_string(n_att_) + " exceed the cap of " +
                                        std::to_string(opts.attempt_cap));
        }
        xrep_ = op_bits(plan.code->logical_x_rep);
        zrep_ = op_bits(plan.code->logical_z_rep);
        for (const auto &g : plan.code->generators) {
            LetterBits b = op_bits(g);
            basis_.push(b.x, b.z);
        }
        for (const auto &pre : plan.pre_steps) {
            LetterBits b = op_bits(pre);
            basis_.push(b.x, b.z);
        }
        // Power tables for the branch weights.
        uint64_t s = pb.num, f = pb.den - pb.num, q = pb.den;
        pow_s_.push_back(BigUint(1));
        pow_f_.push_back(BigUint(1));
        pow_q_.push_back(BigUint(1));
        for (uint32_t i = 1; i <= n_att_; i++) {
            pow_s_.push_back(pow_s_.back() * BigUint(s));
            pow_f_.push_back(pow_f_.back() * BigUint(f));
            pow_q_.push_back(pow_q_.back() * BigUint(q));
        }
    }

    ExactResult run() {
        ExactResult result;
        result.attempts = n_att_;
        BigUint num = plan_.adaptive ? run_adaptive() : run_static();
        result.success_probability = Rational(num, pow_q_[n_att_]);
        if (opts_.with_ledger) {
            collect_ledger(result.ledger);
        }
        return result;
    }

    // The final leaf of the all-fail path, for the necessity property.
    struct AllFailInfo {
        bool x_known, z_known;
    };
    AllFailInfo all_fail_leaf() {
        std::vector<int> undo;
        for (uint32_t t = 0; t < n_att_; t++) {
            LetterBits b = letter_bits(plan_.bases[t], plan_.order[t]);
            undo.push_back(basis_.push(b.x, b.z));
        }
        AllFailInfo info{determined(xrep_), determined(zrep_)};
        for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
            basis_.unfill(*it);
        }
        return info;
    }

  private:
    bool determined(const LetterBits &rep) const {
        return basis_.contains(rep.x, rep.z);
    }
    bool both_determined() const {
        return determined(xrep_) && determined(zrep_);
    }

    int push_letter(PauliLetter l, uint32_t q, std::vector<int> &undo) {
        LetterBits b = letter_bits(l, q);
        int slot = basis_.push(b.x, b.z);
        undo.push_back(slot);
        return slot;
    }
    void pop(std::vector<int> &undo, size_t keep) {
        while (undo.size() > keep) {
            basis_.unfill(undo.back());
            undo.pop_back();
        }
    }

    // Adaptive: walk the all-fail spine; each position branches into a success
    // whose completion is deterministic unless the scheme is irregular.
    BigUint run_adaptive() {
        BigUint total(0);
        std::vector<int> undo;
        for (uint32_t j = 0; j < n_att_; j++) {
            // Success branch at position j.
            size_t mark = undo.size();
            uint32_t q = plan_.order[j];
            undo.push_back(basis_.push(uint64_t(1) << q, 0));
            undo.push_back(basis_.push(0, uint64_t(1) << q));
            BigUint sub = completion_measure(j);
            total += pow_f_[j] * pow_s_[1] * sub;
            pop(undo, mark);
            // Failure: record the guaranteed basis letter and continue.
            push_letter(plan_.bases[j], q, undo);
        }
        if (both_determined()) {
            total += pow_f_[n_att_];
        }
        pop(undo, 0);
        return total;
    }

    // Measure (numerator over q^{remaining}) of success within the completion
    // phase after a success at position j.
    BigUint completion_measure(uint32_t j) {
        uint32_t remaining = n_att_ - j - 1;
        std::vector<int> undo;
        // Guaranteed payload of the completion: the needed letter per qubit.
        bool conflict = false;
        for (uint32_t t = j + 1; t < n_att_; t++) {
            uint32_t q = plan_.order[t];
            PauliLetter u = (*plan_.logicals)[j].x_op.letter(q);
            PauliLetter v = (*plan_.logicals)[j].z_op.letter(q);
            PauliLetter w;
            if (u == PauliLetter::I && v == PauliLetter::I) {
                w = plan_.bases[t];
            } else if (u == PauliLetter::I) {
                w = v;
            } else if (v == PauliLetter::I || v == u) {
                w = u;
            } else {
                conflict = true;
                break;
            }
            push_letter(w, q, undo);
        }
        if (!conflict && both_determined()) {
            pop(undo, 0);
            return pow_q_[remaining];
        }
        pop(undo, 0);
        // Irregular scheme: enumerate the completion outcomes exactly. The
        // completion basis plan is the needed letter where defined, else the
        // scheduled basis.
        return completion_enumerate(j, j + 1);
    }

    BigUint completion_enumerate(uint32_t j, uint32_t t) {
        if (both_determined()) {
            return pow_q_[n_att_ - t];
        }
        if (t == n_att_) {
            return BigUint(0);
        }
        uint32_t q = plan_.order[t];
        PauliLetter u = (*plan_.logicals)[j].x_op.letter(q);
        PauliLetter v = (*plan_.logicals)[j].z_op.letter(q);
        PauliLetter w = u == PauliLetter::I ? (v == PauliLetter::I ? plan_.bases[t] : v) : u;
        std::vector<int> undo;
        undo.push_back(basis_.push(uint64_t(1) << q, 0));
        undo.push_back(basis_.push(0, uint64_t(1) << q));
        BigUint res = BigUint(pb_.num) * completion_enumerate(j, t + 1);
        pop(undo, 0);
        push_letter(w, q, undo);
        res += BigUint(pb_.den - pb_.num) * completion_enumerate(j, t + 1);
        pop(undo, 0);
        return res;
    }

    // Static: depth-first over patterns with subtree collapsing.
    BigUint run_static() {
        if (opts_.workers > 1) {
            return static_parallel();
        }
        return static_rec(0);
    }

    BigUint static_rec(uint32_t t) {
        // A subtree where even full double information cannot determine both
        // logicals is dead.
        {
            std::vector<int> undo;
            for (uint32_t u = t; u < n_att_; u++) {
                uint32_t q = plan_.order[u];
                undo.push_back(basis_.push(uint64_t(1) << q, 0));
                undo.push_back(basis_.push(0, uint64_t(1) << q));
            }
            bool alive = both_determined();
            pop(undo, 0);
            if (!alive) {
                return BigUint(0);
            }
        }
        // A subtree whose guaranteed partial payloads already suffice succeeds
        // on every branch.
        {
            std::vector<int> undo;
            for (uint32_t u = t; u < n_att_; u++) {
                push_letter(plan_.bases[u], plan_.order[u], undo);
            }
            bool done = both_determined();
            pop(undo, 0);
            if (done) {
                return pow_q_[n_att_ - t];
            }
        }
        // t == n_att_ is fully handled by the checks above.
        uint32_t q = plan_.order[t];
        std::vector<int> undo;
        undo.push_back(basis_.push(uint64_t(1) << q, 0));
        undo.push_back(basis_.push(0, uint64_t(1) << q));
        BigUint res = BigUint(pb_.num) * static_rec(t + 1);
        pop(undo, 0);
        push_letter(plan_.bases[t], q, undo);
        res += BigUint(pb_.den - pb_.num) * static_rec(t + 1);
        pop(undo, 0);
        return res;
    }

    // Splits the top of the static tree into prefix jobs and shares them
    // across workers; exact integer merging keeps the result identical to the
    // serial run.
    BigUint static_parallel() {
        uint32_t split = std::min<uint32_t>(n_att_, 10);
        struct Job {
            uint64_t pattern;
        };
        std::vector<Job> jobs;
        BigUint resolved(0);
        std::vector<int> undo;
        std::function<void(uint32_t, uint64_t)> walk = [&](uint32_t t, uint64_t pattern) {
            if (t == split) {
                jobs.push_back({pattern});
                return;
            }
            uint32_t q = plan_.order[t];
            size_t mark = undo.size();
            undo.push_back(basis_.push(uint64_t(1) << q, 0));
            undo.push_back(basis_.push(0, uint64_t(1) << q));
            walk(t + 1, pattern | (uint64_t(1) << t));
            pop(undo, mark);
            push_letter(plan_.bases[t], q, undo);
            walk(t + 1, pattern);
            pop(undo, mark);
        };
        walk(0, 0);

        std::vector<BigUint> partial(static_cast<size_t>(opts_.workers), BigUint(0));
        std::vector<std::thread> threads;
        std::atomic<size_t> next{0};
        for (int w = 0; w < opts_.workers; w++) {
            threads.emplace_back([&, w] {
                Enumerator local(plan_, pb_, ExactOptions{opts_.attempt_cap, 1, false});
                for (;;) {
                    size_t idx = next.fetch_add(1);
                    if (idx >= jobs.size()) {
                        break;
                    }
                    uint64_t pattern = jobs[idx].pattern;
                    std::vector<int> lu;
                    uint32_t succ = 0;
                    for (uint32_t t = 0; t < split; t++) {
                        uint32_t q = local.plan_.order[t];
                        if ((pattern >> t) & 1) {
                            lu.push_back(local.basis_.push(uint64_t(1) << q, 0));
                            lu.push_back(local.basis_.push(0, uint64_t(1) << q));
                            succ++;
                        } else {
                            local.push_letter(local.plan_.bases[t], q, lu);
                        }
                    }
                    BigUint sub = local.static_rec(split);
                    partial[static_cast<size_t>(w)] += local.pow_s_[succ] * local.pow_f_[split - succ] * sub;
                    local.pop(lu, 0);
                }
            });
        }
        for (auto &th : threads) {
            th.join();
        }
        for (const auto &p : partial) {
            resolved += p;
        }
        return resolved;
    }

    // Exhaustive leaf listing (no collapsing); used for the optional ledger.
    void collect_ledger(std::vector<PatternLedgerEntry> &out) {
        if (n_att_ > 20) {
            throw std::invalid_argument("pattern ledger limited to 20 attempts");
        }
        OutcomePattern pattern;
        std::vector<int> undo;
        std::function<void(uint32_t, bool, uint32_t)> walk = [&](uint32_t t, bool succeeded, uint32_t sj) {
            if (t == n_att_) {
                PatternLedgerEntry e;
                e.pattern = pattern;
                e.x_known = determined(xrep_);
                e.z_known = determined(zrep_);
                e.success = e.x_known && e.z_known;
                out.push_back(e);
                return;
            }
            uint32_t q = plan_.order[t];
            size_t mark = undo.size();
            // Success.
            pattern.push_back(true);
            undo.push_back(basis_.push(uint64_t(1) << q, 0));
            undo.push_back(basis_.push(0, uint64_t(1) << q));
            walk(t + 1, true, succeeded ? sj : t);
            pop(undo, mark);
            pattern.pop_back();
            // Failure: the payload depends on whether a completion is running.
            PauliLetter w = plan_.bases[t];
            if (plan_.adaptive && succeeded) {
                uint32_t j = sj;
                PauliLetter u = (*plan_.logicals)[j].x_op.letter(q);
                PauliLetter v = (*plan_.logicals)[j].z_op.letter(q);
                if (u != PauliLetter::I) {
                    w = u;
                } else if (v != PauliLetter::I) {
                    w = v;
                }
            }
            pattern.push_back(false);
            push_letter(w, q, undo);
            walk(t + 1, succeeded, sj);
            pop(undo, mark);
            pattern.pop_back();
        };
        walk(0, false, 0);
    }

    Plan plan_;
    BellProb pb_;
    ExactOptions opts_;
    FastBasis basis_;
    uint32_t n_att_ = 0;
    LetterBits xrep_, zrep_;
    std::vector<BigUint> pow_s_, pow_f_, pow_q_;
};

// Exact enumeration under the standard-analyzer model (P_B = 1/2): every
// attempted BM succeeds exactly when its basis pair-product takes the value
// -1. Fresh products are fair coins; predetermined products make the attempt
// deterministic. Branch bookkeeping conditions GF(2) forms over the recorded
// outcome bits and the two logical variables.
class EnumeratorB {
  public:
    EnumeratorB(const Plan &plan, const ExactOptions &opts) : plan_(plan), opts_(opts), span_(plan.code->n) {
        n_att_ = plan.attempts();
        if (n_att_ > opts.attempt_cap) {
            throw std::invalid_argument("scheme attempts " + std::to_string(n_att_) + " exceed the cap of " +
                                        std::to_string(opts.attempt_cap));
        }
        xrep_ = op_bits(plan.code->logical_x_rep);
        zrep_ = op_bits(plan.code->logical_z_rep);
        y_corr_ = static_cast<uint8_t>(
            std::popcount((xrep_.x & zrep_.z) ^ (xrep_.z & zrep_.x)) & 1);
        for (const auto &g : plan.code->generators) {
            LetterBits b = op_bits(g);
            span_.push(b.x, b.z, 0, 0);
        }
        for (const auto &pre : plan.pre_steps) {
            LetterBits b = op_bits(pre);
            span_.push(b.x, b.z, uint64_t(1) << next_bit_, 0);
            next_bit_++;
        }
        pow2_.push_back(BigUint(1));
        for (uint32_t i = 1; i <= n_att_; i++) {
            pow2_.push_back(pow2_.back() * BigUint(2));
        }
    }

    Rational run() {
        BigUint num = plan_.adaptive ? adaptive_rec(0, 0) : static_rec(0, 0);
        return Rational(num, pow2_[n_att_]);
    }

  private:
    static constexpr int kLxBit = 62;
    static constexpr int kLzBit = 63;

    struct Undo {
        std::vector<int> span_slots, cond_slots;
        uint32_t bits;
    };
    Undo mark() const {
        return Undo{{}, {}, next_bit_};
    }
    void rollback(Undo &u) {
        for (auto it = u.span_slots.rbegin(); it != u.span_slots.rend(); ++it) {
            span_.unfill(*it);
        }
        for (auto it = u.cond_slots.rbegin(); it != u.cond_slots.rend(); ++it) {
            cond_.unfill(*it);
        }
        next_bit_ = u.bits;
    }

    bool determined(const LetterBits &rep) const {
        return span_.contains(rep.x, rep.z);
    }
    bool both_determined() const {
        return determined(xrep_) && determined(zrep_);
    }

    // Membership-only push for prune probes; no outcome bookkeeping.
    void push_probe(const LetterBits &b, Undo &u) {
        auto red = span_.reduce(b.x, b.z, 0, 0);
        if (!red.in_span) {
            u.span_slots.push_back(span_.push(b.x, b.z, 0, 0));
        }
    }

    // Pushes a recorded observable, allocating its outcome bit. Dependent
    // vectors get a consistency row tying the new bit to the existing form.
    uint32_t push_record(const LetterBits &b, Undo &u) {
        if (next_bit_ >= 60) {
            throw std::logic_error("outcome bit budget exceeded");
        }
        uint32_t bit = next_bit_++;
        auto red = span_.reduce(b.x, b.z, 0, 0);
        if (red.in_span) {
            auto [mask, par] = cond_.reduce(red.mask ^ (uint64_t(1) << bit), red.phase2);
            if (mask) {
                u.cond_slots.push_back(cond_.condition(mask, par));
            }
        } else {
            u.span_slots.push_back(span_.push(b.x, b.z, uint64_t(1) << bit, 0));
        }
        return bit;
    }

    void pin(uint64_t mask, uint8_t parity, Undo &u) {
        auto [m, p] = cond_.reduce(mask, parity);
        if (m) {
            u.cond_slots.push_back(cond_.condition(m, p));
        }
        // A zero residual with mismatched parity cannot arise: pins always
        // follow fresh bit allocations or branch conditioning.
        (void)p;
    }

    // v-form of the basis pair-product at qubit q: v = (-1)^(c + sum of bits).
    struct VForm {
        bool fresh = false;
        uint64_t mask = 0;
        uint8_t c = 0;
    };
    VForm product_form(uint32_t q, PauliLetter w) const {
        LetterBits b = letter_bits(w, q);
        auto red = span_.reduce(b.x, b.z, 0, 0);
        if (red.in_span) {
            return {false, red.mask, red.phase2};
        }
        struct Cls {
            LetterBits rep;
            uint64_t lmask;
            uint8_t corr;
        };
        std::array<Cls, 3> classes = {
            Cls{xrep_, uint64_t(1) << kLxBit, 0},
            Cls{zrep_, uint64_t(1) << kLzBit, 0},
            Cls{LetterBits{xrep_.x ^ zrep_.x, xrep_.z ^ zrep_.z},
                (uint64_t(1) << kLxBit) | (uint64_t(1) << kLzBit), y_corr_},
        };
        for (const auto &cls : classes) {
            uint8_t init = static_cast<uint8_t>(std::popcount((b.x & cls.rep.z) ^ (b.z & cls.rep.x)) & 1);
            auto lred = span_.reduce(b.x ^ cls.rep.x, b.z ^ cls.rep.z, 0, init);
            if (lred.in_span) {
                return {false, lred.mask ^ cls.lmask, static_cast<uint8_t>(lred.phase2 ^ cls.corr)};
            }
        }
        return {true, 0, 0};
    }

    // Applies one attempt outcome; returns the coin count (0 or 1).
    // branch: true = success (v = -1), false = failure (v = +1).
    // feasible is cleared when a deterministic attempt cannot take the branch.
    uint32_t apply_attempt(uint32_t q, PauliLetter w, bool success, Undo &u, bool &feasible) {
        feasible = true;
        VForm form = product_form(q, w);
        uint32_t coins = 0;
        if (form.fresh) {
            // The new record's bit is the product value; pin it to the branch.
            uint32_t bit = push_record(letter_bits(w, q), u);
            pin(uint64_t(1) << bit, success ? 1 : 0, u);
            coins = 1;
        } else {
            // v = par ^ beta(mask) over free bits; force beta = want ^ par.
            auto [mask, par] = cond_.reduce(form.mask, form.c);
            uint8_t want = success ? 1 : 0;
            if (mask == 0) {
                if (par != want) {
                    feasible = false;
                    return 0;
                }
            } else {
                u.cond_slots.push_back(cond_.condition(mask, static_cast<uint8_t>(want ^ par)));
                coins = 1;
            }
            // A logical-completing observable brings a new vector into the
            // span; tie its bit to the branch value. A product already in the
            // span carries no new information and needs no record.
            auto red = span_.reduce(letter_bits(w, q).x, letter_bits(w, q).z, 0, 0);
            if (!red.in_span) {
                uint32_t bit = push_record(letter_bits(w, q), u);
                pin(((uint64_t(1) << bit) ^ form.mask), static_cast<uint8_t>(form.c), u);
            }
        }
        if (success) {
            // Full Bell identification: the double information on the pair.
            if (w != PauliLetter::X) {
                push_record(letter_bits(PauliLetter::X, q), u);
            }
            if (w != PauliLetter::Z) {
                push_record(letter_bits(PauliLetter::Z, q), u);
            }
        }
        return coins;
    }

    BigUint static_rec(uint32_t t, uint32_t coins) {
        {
            Undo u = mark();
            for (uint32_t v = t; v < n_att_; v++) {
                uint32_t q = plan_.order[v];
                push_probe(letter_bits(PauliLetter::X, q), u);
                push_probe(letter_bits(PauliLetter::Z, q), u);
            }
            bool alive = both_determined();
            rollback(u);
            if (!alive) {
                return BigUint(0);
            }
        }
        {
            Undo u = mark();
            for (uint32_t v = t; v < n_att_; v++) {
                push_probe(letter_bits(plan_.bases[v], plan_.order[v]), u);
            }
            bool done = both_determined();
            rollback(u);
            if (done) {
                return pow2_[n_att_ - coins];
            }
        }
        BigUint total(0);
        for (bool success : {true, false}) {
            Undo u = mark();
            bool feasible = true;
            uint32_t c = apply_attempt(plan_.order[t], plan_.bases[t], success, u, feasible);
            if (feasible) {
                total += static_rec(t + 1, coins + c);
            }
            rollback(u);
        }
        return total;
    }

    BigUint adaptive_rec(uint32_t j, uint32_t coins) {
        if (j == n_att_) {
            return both_determined() ? pow2_[n_att_ - coins] : BigUint(0);
        }
        BigUint total(0);
        for (bool success : {true, false}) {
            Undo u = mark();
            bool feasible = true;
            uint32_t c = apply_attempt(plan_.order[j], plan_.bases[j], success, u, feasible);
            if (feasible) {
                if (success) {
                    total += completion_measure(j, coins + c);
                } else {
                    total += adaptive_rec(j + 1, coins + c);
                }
            }
            rollback(u);
        }
        return total;
    }

    PauliLetter completion_letter(uint32_t j, uint32_t t) const {
        uint32_t q = plan_.order[t];
        PauliLetter u = (*plan_.logicals)[j].x_op.letter(q);
        PauliLetter v = (*plan_.logicals)[j].z_op.letter(q);
        if (u == PauliLetter::I && v == PauliLetter::I) {
            return plan_.bases[t];
        }
        if (u == PauliLetter::I) {
            return v;
        }
        if (v == PauliLetter::I || v == u) {
            return u;
        }
        throw std::runtime_error("logical pair conflicts away from its own position");
    }

    BigUint completion_measure(uint32_t j, uint32_t coins) {
        {
            Undo u = mark();
            for (uint32_t t = j + 1; t < n_att_; t++) {
                push_probe(letter_bits(completion_letter(j, t), plan_.order[t]), u);
            }
            bool done = both_determined();
            rollback(u);
            if (done) {
                return pow2_[n_att_ - coins];
            }
        }
        return completion_rec(j, j + 1, coins);
    }

    BigUint completion_rec(uint32_t j, uint32_t t, uint32_t coins) {
        if (both_determined()) {
            return pow2_[n_att_ - coins];
        }
        if (t == n_att_) {
            return BigUint(0);
        }
        BigUint total(0);
        for (bool success : {true, false}) {
            Undo u = mark();
            bool feasible = true;
            uint32_t c = apply_attempt(plan_.order[t], completion_letter(j, t), success, u, feasible);
            if (feasible) {
                total += completion_rec(j, t + 1, coins + c);
            }
            rollback(u);
        }
        return total;
    }

    Plan plan_;
    ExactOptions opts_;
    MaskedBasis span_;
    CondBasis cond_;
    uint32_t n_att_ = 0;
    uint32_t next_bit_ = 0;
    LetterBits xrep_, zrep_;
    uint8_t y_corr_ = 0;
    std::vector<BigUint> pow2_;
};

bool standard_analyzer_prob(const BellProb &pb) {
    return pb.num * 2 == pb.den;
}

}  // namespace

namespace {

ExactResult run_plan(const Plan &plan, const BellProb &pb, const ExactOptions &opts) {
    ExactResult result;
    result.attempts = plan.attempts();
    if (standard_analyzer_prob(pb)) {
        EnumeratorB eb(plan, opts);
        result.success_probability = eb.run();
    } else {
        Enumerator e(plan, pb, opts);
        result = e.run();
        return result;
    }
    if (opts.with_ledger) {
        Enumerator e(plan, pb, opts);
        ExactResult with_ledger = e.run();
        result.ledger = std::move(with_ledger.ledger);
    }
    return result;
}

}  // namespace

ExactResult exact_success_probability(const Scheme &scheme, const BellProb &pb, const ExactOptions &opts) {
    return run_plan(plan_of(scheme), pb, opts);
}

ExactResult exact_success_probability(const StaticScheme &scheme, const BellProb &pb, const ExactOptions &opts) {
    return run_plan(plan_of(scheme), pb, opts);
}

namespace {

bool necessity_of(const Plan &plan) {
    Enumerator e(plan, BellProb{1, 2}, ExactOptions{64, 1, false});
    auto info = e.all_fail_leaf();
    return !(info.x_known && info.z_known);
}

}  // namespace

bool necessity_check(const Scheme &scheme) {
    return necessity_of(plan_of(scheme));
}

bool necessity_check(const StaticScheme &scheme) {
    return necessity_of(plan_of(scheme));
}

// ---------------------------------------------------------------------------
// Two-code tableau trials

namespace {

// Flat single-word tableau for trials on up to 64 total qubits: generator
// rows as u64 x/z masks with two-bit phases, plus an append-only information
// span over the recorded observables and both codes' generators.
class TrialState {
  public:
    TrialState(const StabilizerCode &code, int l_x, int l_z) : n_(code.n) {
        if (2 * code.n > 64) {
            throw std::invalid_argument("fast trial path supports up to 32 qubits per code");
        }
        for (const auto &g : code.generators) {
            add_row(bits_of(g, 0), GenOrigin::CodeStabilizer, 0);
            info_.push(bits_of(g, 0));
        }
        for (const auto &g : code.generators) {
            add_row(bits_of(g, n_), GenOrigin::CodeStabilizer, 0);
            info_.push(bits_of(g, n_));
        }
        XZ xx = mul(bits_of(code.logical_x_rep, 0), bits_of(code.logical_x_rep, n_));
        XZ zz = mul(bits_of(code.logical_z_rep, 0), bits_of(code.logical_z_rep, n_));
        add_row(xx, GenOrigin::LogicalX, l_x < 0 ? 2 : 0);
        add_row(zz, GenOrigin::LogicalZ, l_z < 0 ? 2 : 0);
        xx_rep_ = xx;
        zz_rep_ = zz;
        yy_rep_ = mul(xx, zz);
    }

    struct XZ {
        uint64_t x = 0, z = 0;
        uint8_t phase = 0;  // i-exponent mod 4
    };

    XZ bits_of(const PauliOperator &op, uint32_t offset) const {
        XZ b;
        b.x = op.x_word(0) << offset;
        b.z = op.z_word(0) << offset;
        b.phase = op.phase_exp();
        return b;
    }
    XZ single(uint32_t qubit, PauliLetter w) const {
        XZ b;
        uint64_t m = uint64_t(1) << qubit;
        if (w == PauliLetter::X || w == PauliLetter::Y) {
            b.x = m;
        }
        if (w == PauliLetter::Z || w == PauliLetter::Y) {
            b.z = m;
        }
        return b;
    }
    XZ pair(uint32_t q, PauliLetter w) const {
        return mul(single(q, w), single(n_ + q, w));
    }

    static bool anticommute(const XZ &a, const XZ &b) {
        return std::popcount((a.x & b.z) ^ (a.z & b.x)) & 1;
    }
    // Exact product phase: X*Y, Y*Z, Z*X contribute +i; transposes -i.
    static XZ mul(const XZ &a, const XZ &b) {
        uint64_t pos = (a.x & ~a.z & b.x & b.z) | (a.x & a.z & ~b.x & b.z) | (~a.x & a.z & b.x & ~b.z);
        uint64_t neg = (b.x & ~b.z & a.x & a.z) | (b.x & b.z & ~a.x & a.z) | (~b.x & b.z & a.x & ~a.z);
        XZ r;
        r.x = a.x ^ b.x;
        r.z = a.z ^ b.z;
        r.phase = static_cast<uint8_t>((a.phase + b.phase + std::popcount(pos) + 3 * std::popcount(neg)) & 3);
        return r;
    }

    bool is_logical_row(size_t i) const {
        return origin_[i] != GenOrigin::CodeStabilizer && origin_[i] != GenOrigin::Measured;
    }

    enum class Kind { Anticommuting, Determined, Forbidden };
    struct Cls {
        Kind kind;
        bool in_info_span = false;  // determined with no logical content
    };

    Cls classify_cheap(const XZ &obs) const {
        int first_logical = -1;
        for (size_t i = 0; i < rows_.size(); i++) {
            if (anticommute(rows_[i], obs)) {
                if (!is_logical_row(i)) {
                    return {Kind::Anticommuting, false};
                }
                if (first_logical < 0) {
                    first_logical = static_cast<int>(i);
                }
            }
        }
        if (first_logical >= 0) {
            return {Kind::Forbidden, false};
        }
        return {Kind::Determined, info_.contains(obs)};
    }

    // Measures obs; the outcome is forced when given, read off when
    // determined, sampled otherwise. Forbidden measurements are allowed:
    // trials model what the detectors do, not what a designer should choose.
    int measure(const XZ &obs, std::optional<int> forced, Rng &rng, RecordKind kind) {
        int first = -1, first_logical = -1;
        for (size_t i = 0; i < rows_.size(); i++) {
            if (anticommute(rows_[i], obs)) {
                if (!is_logical_row(i)) {
                    first = static_cast<int>(i);
                    break;
                }
                if (first_logical < 0) {
                    first_logical = static_cast<int>(i);
                }
            }
        }
        if (first < 0 && first_logical < 0) {
            int outcome = determined_sign(obs);
            if (forced && *forced != outcome) {
                throw std::invalid_argument("forced outcome conflicts with a determined sign");
            }
            record(obs, outcome, kind);
            return outcome;
        }
        if (first < 0) {
            first = first_logical;  // Lem-3 case: a logical variable is consumed
        }
        int outcome = forced ? *forced : rng.pm_one();
        XZ survivor = rows_[static_cast<size_t>(first)];
        bool surv_logical = is_logical_row(static_cast<size_t>(first));
        for (size_t i = 0; i < rows_.size(); i++) {
            if (static_cast<int>(i) == first || !anticommute(rows_[i], obs)) {
                continue;
            }
            bool logical = is_logical_row(i);
            rows_[i] = mul(survivor, rows_[i]);
            if (logical && surv_logical) {
                origin_[i] = GenOrigin::LogicalY;
            }
        }
        XZ repl = obs;
        repl.phase = static_cast<uint8_t>((repl.phase + (outcome < 0 ? 2 : 0)) & 3);
        rows_[static_cast<size_t>(first)] = repl;
        origin_[static_cast<size_t>(first)] = GenOrigin::Measured;
        record(obs, outcome, kind);
        return outcome;
    }

    LogicalInference infer() const {
        // Coefficient extraction over the base rows and the signed records;
        // the sign only comes out right when the selected operators multiply
        // in canonical order (generators first, then records chronologically),
        // matching the measurement bookkeeping.
        std::vector<XZ> ops;
        ops.reserve(base_rows_.size() + records_.size());
        for (const auto &b : base_rows_) {
            ops.push_back(b);
        }
        for (const auto &r : records_) {
            XZ signed_op = r.op;
            signed_op.phase = static_cast<uint8_t>((signed_op.phase + (r.outcome < 0 ? 2 : 0)) & 3);
            ops.push_back(signed_op);
        }
        if (ops.size() > 128) {
            throw std::logic_error("trial record budget exceeded");
        }
        struct MaskRow {
            XZ v;
            std::array<uint64_t, 2> mask;
        };
        std::array<std::optional<MaskRow>, 128> slot;
        auto reduce = [&](XZ v, std::array<uint64_t, 2> mask, bool insert) {
            for (;;) {
                int b = top_bit(v);
                if (b < 0) {
                    return std::optional(mask);
                }
                auto &sl = slot[static_cast<size_t>(b)];
                if (!sl) {
                    if (insert) {
                        sl = MaskRow{v, mask};
                    }
                    return std::optional<std::array<uint64_t, 2>>();
                }
                v.x ^= sl->v.x;
                v.z ^= sl->v.z;
                mask[0] ^= sl->mask[0];
                mask[1] ^= sl->mask[1];
            }
        };
        for (size_t i = 0; i < ops.size(); i++) {
            std::array<uint64_t, 2> m{};
            m[i / 64] = uint64_t(1) << (i % 64);
            reduce(ops[i], m, true);
        }
        auto recover = [&](const XZ &rep) -> std::optional<int> {
            auto mask = reduce(rep, {}, false);
            if (!mask) {
                return std::nullopt;
            }
            XZ prod{};
            for (size_t i = 0; i < ops.size(); i++) {
                if (((*mask)[i / 64] >> (i % 64)) & 1) {
                    prod = mul(prod, ops[i]);
                }
            }
            uint8_t diff = static_cast<uint8_t>((prod.phase - rep.phase) & 3);
            if (diff == 0) {
                return 1;
            }
            if (diff == 2) {
                return -1;
            }
            throw std::logic_error("imaginary phase recovering a logical value");
        };
        LogicalInference inf;
        if (auto s = recover(xx_rep_)) {
            inf.x = *s;
        }
        if (auto s = recover(zz_rep_)) {
            inf.z = *s;
        }
        if (auto s = recover(yy_rep_)) {
            inf.y = -*s;
        }
        return inf;
    }

    MeasurementRecord record_view() const {
        MeasurementRecord rec;
        for (const auto &r : records_) {
            PauliOperator op(2 * n_);
            for (uint32_t q = 0; q < 2 * n_; q++) {
                bool x = (r.op.x >> q) & 1, z = (r.op.z >> q) & 1;
                op.set_letter(q, x ? (z ? PauliLetter::Y : PauliLetter::X) : (z ? PauliLetter::Z : PauliLetter::I));
            }
            rec.items.push_back({op, r.outcome, r.kind});
        }
        return rec;
    }

  private:
    static int top_bit(const XZ &v) {
        if (v.z) {
            return 64 + 63 - std::countl_zero(v.z);
        }
        if (v.x) {
            return 63 - std::countl_zero(v.x);
        }
        return -1;
    }

    struct Rec {
        XZ op;
        int outcome;
        RecordKind kind;
    };

    class Span {
      public:
        bool push(const XZ &v) {
            XZ w = v;
            for (;;) {
                int b = top_bit(w);
                if (b < 0) {
                    return false;
                }
                if (!filled_[static_cast<size_t>(b)]) {
                    slot_[static_cast<size_t>(b)] = w;
                    filled_[static_cast<size_t>(b)] = true;
                    return true;
                }
                w.x ^= slot_[static_cast<size_t>(b)].x;
                w.z ^= slot_[static_cast<size_t>(b)].z;
            }
        }
        bool contains(const XZ &v) const {
            XZ w = v;
            for (;;) {
                int b = top_bit(w);
                if (b < 0) {
                    return true;
                }
                if (!filled_[static_cast<size_t>(b)]) {
                    return false;
                }
                w.x ^= slot_[static_cast<size_t>(b)].x;
                w.z ^= slot_[static_cast<size_t>(b)].z;
            }
        }

      private:
        std::array<XZ, 128> slot_{};
        std::array<bool, 128> filled_{};
    };

    void add_row(const XZ &row, GenOrigin origin, uint8_t extra_phase) {
        XZ r = row;
        r.phase = static_cast<uint8_t>((r.phase + extra_phase) & 3);
        rows_.push_back(r);
        origin_.push_back(origin);
        if (origin == GenOrigin::CodeStabilizer) {
            base_rows_.push_back(r);
        }
    }

    int determined_sign(const XZ &obs) const {
        // obs commutes with a full stabilizer group, so eliminating it against
        // an echelon of the rows ends at the identity with a readable sign.
        std::vector<XZ> ech;
        std::array<int8_t, 128> slot;
        slot.fill(-1);
        ech.reserve(rows_.size());
        for (const auto &g : rows_) {
            XZ v = g;
            for (;;) {
                int b = top_bit(v);
                if (b < 0) {
                    break;
                }
                if (slot[static_cast<size_t>(b)] < 0) {
                    slot[static_cast<size_t>(b)] = static_cast<int8_t>(ech.size());
                    ech.push_back(v);
                    break;
                }
                v = mul(ech[static_cast<size_t>(slot[static_cast<size_t>(b)])], v);
            }
        }
        XZ v = obs;
        for (;;) {
            int b = top_bit(v);
            if (b < 0) {
                break;
            }
            if (slot[static_cast<size_t>(b)] < 0) {
                throw std::logic_error("determined observable outside the stabilizer span");
            }
            v = mul(ech[static_cast<size_t>(slot[static_cast<size_t>(b)])], v);
        }
        if (v.phase == 0) {
            return 1;
        }
        if (v.phase == 2) {
            return -1;
        }
        throw std::logic_error("imaginary phase in a determined sign");
    }

    void record(const XZ &obs, int outcome, RecordKind kind) {
        records_.push_back({obs, outcome, kind});
        info_.push(obs);
    }

    uint32_t n_;
    std::vector<XZ> rows_;
    std::vector<GenOrigin> origin_;
    std::vector<XZ> base_rows_;
    std::vector<Rec> records_;
    Span info_;
    XZ xx_rep_, zz_rep_, yy_rep_;
};

}  // namespace

TrialResult run_trial(const TwoCodeScheme &scheme, int l_x, int l_z, const BellProb &pb, uint64_t seed,
                      const TrialOptions &opts) {
    const StabilizerCode &code = scheme.code;
    uint32_t n = code.n;
    TrialState state(code, l_x, l_z);
    Rng rng(seed);
    TrialResult result;
    result.truth = {l_x, l_z};

    for (const auto &pre : scheme.pre_steps) {
        // Pre-steps arrive as doubled-space observables.
        TrialState::XZ obs;
        obs.x = pre.x_word(0);
        obs.z = pre.z_word(0);
        state.measure(obs, std::nullopt, rng, RecordKind::SingleQubit);
    }

    size_t pattern_cursor = 0;
    auto next_success_bit = [&]() {
        if (opts.forced_pattern) {
            if (pattern_cursor >= opts.forced_pattern->size()) {
                throw std::invalid_argument("forced pattern shorter than the attempt sequence");
            }
            return static_cast<bool>((*opts.forced_pattern)[pattern_cursor++]);
        }
        pattern_cursor++;
        return rng.bernoulli(pb.num, pb.den);
    };

    auto check_surrogate = [&](uint32_t q) {
        for (PauliLetter w : {PauliLetter::X, PauliLetter::Y, PauliLetter::Z}) {
            auto c = state.classify_cheap(state.pair(q, w));
            bool ok = c.kind == TrialState::Kind::Anticommuting ||
                      (c.kind == TrialState::Kind::Determined && !c.in_info_span);
            if (!ok) {
                if (opts.surrogate == SurrogatePolicy::Require) {
                    throw std::runtime_error("attempted BM outside the uniform-outcome model (pair " +
                                             std::to_string(q + 1) + ")");
                }
                result.surrogate_violations++;
            }
        }
    };

    // At P_B = 1/2 the standard analyzer succeeds exactly when the basis
    // pair-product comes out -1, which the tableau samples (or determines)
    // natively. Forced-pattern runs and other probabilities use the
    // independent-Bernoulli model with the surrogate guard on the
    // probability-bearing attempts; completions are deterministic re-reads.
    bool standard_analyzer = pb.num * 2 == pb.den && !opts.forced_pattern;
    auto attempt = [&](uint32_t q, PauliLetter basis, bool completion) -> bool {
        bool success;
        if (standard_analyzer) {
            int v = state.measure(state.pair(q, basis), std::nullopt, rng, RecordKind::TransversalProduct);
            pattern_cursor++;
            success = v < 0;
        } else {
            if (!completion) {
                check_surrogate(q);
            }
            success = next_success_bit();
        }
        if (success) {
            if (basis != PauliLetter::X) {
                state.measure(state.pair(q, PauliLetter::X), std::nullopt, rng, RecordKind::BellSuccess);
            }
            if (basis != PauliLetter::Z) {
                state.measure(state.pair(q, PauliLetter::Z), std::nullopt, rng, RecordKind::BellSuccess);
            }
            if (!standard_analyzer) {
                state.measure(state.pair(q, basis), std::nullopt, rng, RecordKind::BellSuccess);
            }
        } else {
            state.measure(state.single(q, basis), std::nullopt, rng, RecordKind::SingleQubit);
            state.measure(state.single(n + q, basis), std::nullopt, rng, RecordKind::SingleQubit);
        }
        return success;
    };

    uint32_t attempts = static_cast<uint32_t>(scheme.order.size());
    std::optional<uint32_t> success_at;
    for (uint32_t t = 0; t < attempts; t++) {
        uint32_t q = scheme.order[t];
        PauliLetter basis = scheme.bases[t];
        if (!scheme.is_static && success_at) {
            // Completion: the basis is forced by the logical pair of the
            // success position.
            const LogicalPair &lp = scheme.logicals[*success_at];
            PauliLetter u = lp.x_op.letter(q), v = lp.z_op.letter(q);
            if (u != PauliLetter::I) {
                basis = u;
            } else if (v != PauliLetter::I) {
                basis = v;
            }
            attempt(q, basis, true);
            continue;
        }
        if (attempt(q, basis, false) && !success_at) {
            success_at = t;
        }
    }

    LogicalInference inf = state.infer();
    result.claimed = inf.bell_values();
    result.record = state.record_view();

    // State-view consistency: whatever the information view reports must match
    // the simulator's ground truth.
    if (inf.x && *inf.x != l_x) {
        throw std::logic_error("inferred l_x differs from the state view");
    }
    if (inf.z && *inf.z != l_z) {
        throw std::logic_error("inferred l_z differs from the state view");
    }
    if (inf.y && *inf.y != -l_x * l_z) {
        throw std::logic_error("inferred l_y differs from the state view");
    }
    return result;
}

MonteCarloResult monte_carlo(const TwoCodeScheme &scheme, uint64_t trials, uint64_t seed, const BellProb &pb,
                             int workers, SurrogatePolicy surrogate) {
    if (trials == 0) {
        throw std::invalid_argument("monte_carlo needs at least one trial");
    }
    MonteCarloResult mc;
    mc.trials = trials;
    int nw = std::max(1, workers);
    std::vector<MonteCarloResult> partial(static_cast<size_t>(nw));
    std::vector<std::thread> threads;
    std::atomic<uint64_t> next{0};
    constexpr uint64_t kChunk = 256;
    auto body = [&](int w) {
        auto &acc = partial[static_cast<size_t>(w)];
        for (;;) {
            uint64_t begin = next.fetch_add(kChunk);
            if (begin >= trials) {
                break;
            }
            uint64_t end = std::min(trials, begin + kChunk);
            for (uint64_t t = begin; t < end; t++) {
                Rng trial_rng = Rng::for_trial(seed, t);
                int lx = trial_rng.pm_one();
                int lz = trial_rng.pm_one();
                TrialOptions opts;
                opts.surrogate = surrogate;
                TrialResult r = run_trial(scheme, lx, lz, pb, trial_rng.next(), opts);
                if (r.success()) {
                    acc.successes++;
                }
                if (r.logical_error()) {
                    acc.logical_errors++;
                }
                acc.surrogate_violations += r.surrogate_violations;
            }
        }
    };
    for (int w = 0; w < nw; w++) {
        threads.emplace_back(body, w);
    }
    for (auto &th : threads) {
        th.join();
    }
    for (const auto &p : partial) {
        mc.successes += p.successes;
        mc.logical_errors += p.logical_errors;
        mc.surrogate_violations += p.surrogate_violations;
    }
    mc.estimate = static_cast<double>(mc.successes) / static_cast<double>(trials);
    mc.stderr_estimate = std::sqrt(std::max(mc.estimate * (1 - mc.estimate), 1e-12) / static_cast<double>(trials));
    return mc;
}

}  // namespace bmkit
