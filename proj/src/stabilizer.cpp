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

#include "bmkit/stabilizer.hpp"

#include <sstream>
#include <stdexcept>

namespace bmkit {

std::string origin_name(GenOrigin o) {
    switch (o) {
        case GenOrigin::CodeStabilizer:
            return "code";
        case GenOrigin::Measured:
            return "measured";
        case GenOrigin::LogicalX:
            return "logical-x";
        case GenOrigin::LogicalZ:
            return "logical-z";
        case GenOrigin::LogicalY:
            return "logical-y";
    }
    return "?";
}

std::optional<std::pair<int, int>> LogicalInference::bell_values() const {
    if (x && z) {
        return std::pair{*x, *z};
    }
    if (x && y) {
        return std::pair{*x, -*x * *y};
    }
    if (y && z) {
        return std::pair{-*y * *z, *z};
    }
    return std::nullopt;
}

StabilizerState StabilizerState::init_encoded_bell(const StabilizerCode &code1, const StabilizerCode &code2, int l_x,
                                                   int l_z) {
    auto rep1 = check_code(code1);
    if (!rep1.ok()) {
        throw std::invalid_argument("first code invalid: " + rep1.violations.front());
    }
    auto rep2 = check_code(code2);
    if (!rep2.ok()) {
        throw std::invalid_argument("second code invalid: " + rep2.violations.front());
    }
    StabilizerState st;
    st.n_ = code1.n + code2.n;
    st.l_x_ = l_x;
    st.l_z_ = l_z;
    for (const auto &g : code1.generators) {
        st.gens_.push_back({g.embed(st.n_, 0), GenOrigin::CodeStabilizer});
    }
    for (const auto &g : code2.generators) {
        st.gens_.push_back({g.embed(st.n_, code1.n), GenOrigin::CodeStabilizer});
    }
    PauliOperator xx = PauliOperator::multiply(code1.logical_x_rep.embed(st.n_, 0),
                                               code2.logical_x_rep.embed(st.n_, code1.n));
    PauliOperator zz = PauliOperator::multiply(code1.logical_z_rep.embed(st.n_, 0),
                                               code2.logical_z_rep.embed(st.n_, code1.n));
    if (l_x < 0) {
        xx.negate();
    }
    if (l_z < 0) {
        zz.negate();
    }
    st.gens_.push_back({xx, GenOrigin::LogicalX});
    st.gens_.push_back({zz, GenOrigin::LogicalZ});
    return st;
}

Classification StabilizerState::classify(const PauliOperator &obs) const {
    if (!obs.is_hermitian()) {
        throw std::invalid_argument("observable must be Hermitian");
    }
    Classification c{};
    int first_nonlogical = -1, first_logical = -1;
    for (size_t i = 0; i < gens_.size(); i++) {
        if (!PauliOperator::commutes(gens_[i].op, obs)) {
            bool logical = gens_[i].origin == GenOrigin::LogicalX || gens_[i].origin == GenOrigin::LogicalZ ||
                           gens_[i].origin == GenOrigin::LogicalY;
            if (logical) {
                if (first_logical < 0) {
                    first_logical = static_cast<int>(i);
                }
            } else if (first_nonlogical < 0) {
                first_nonlogical = static_cast<int>(i);
            }
        }
    }
    if (first_nonlogical >= 0) {
        c.kind = Classification::Kind::Anticommuting;
        c.witness = first_nonlogical;
        return c;
    }
    if (first_logical >= 0) {
        c.kind = Classification::Kind::Forbidden;
        c.witness = first_logical;
        return c;
    }
    // Commutes with the full stabilizer group of a stabilizer state, so it is
    // an element up to sign; recover the decomposition and the exact sign.
    SymplecticBasis basis(n_);
    for (const auto &g : gens_) {
        basis.extend(g.op);
    }
    auto coeffs = basis.in_span(obs);
    if (!coeffs) {
        throw std::logic_error("commuting observable outside a full stabilizer span");
    }
    PauliOperator prod = PauliOperator::identity(n_);
    for (uint32_t row : *coeffs) {
        prod = PauliOperator::multiply(prod, gens_[row].op);
        switch (gens_[row].origin) {
            case GenOrigin::CodeStabilizer:
                c.gamma_rows.push_back(row);
                break;
            case GenOrigin::Measured:
                c.mu_rows.push_back(row);
                break;
            default:
                c.nu_rows.push_back(row);
                break;
        }
    }
    uint8_t diff = static_cast<uint8_t>((prod.phase_exp() - obs.phase_exp()) & 3);
    if (diff != 0 && diff != 2) {
        throw std::logic_error("imaginary phase in stabilizer decomposition");
    }
    c.kind = Classification::Kind::Determined;
    c.determined_sign = diff == 0 ? 1 : -1;
    return c;
}

int StabilizerState::measure(const PauliOperator &obs, std::optional<int> forced, Rng *rng, bool allow_forbidden) {
    Classification c = classify(obs);
    if (c.kind == Classification::Kind::Determined) {
        if (forced && *forced != c.determined_sign) {
            throw std::invalid_argument("forced outcome conflicts with a determined sign");
        }
        record_.items.push_back({obs, c.determined_sign, RecordKind::SingleQubit});
        return c.determined_sign;
    }
    if (c.kind == Classification::Kind::Forbidden && !allow_forbidden) {
        throw std::invalid_argument("measurement would destroy logical Bell information (forbidden)");
    }
    // The observable must commute with everything already recorded.
    for (const auto &g : gens_) {
        if (g.origin == GenOrigin::Measured && !PauliOperator::commutes(g.op, obs)) {
            throw std::invalid_argument("observable anticommutes with a recorded measurement");
        }
    }
    int outcome = forced ? *forced : (rng ? rng->pm_one() : throw std::invalid_argument("measurement needs an rng"));
    // Survivor: the lowest-index anticommuting generator, preferring
    // non-logical ones; every other anticommuting generator absorbs it.
    int survivor = c.witness;
    PauliOperator surv_op = gens_[static_cast<size_t>(survivor)].op;
    for (size_t i = 0; i < gens_.size(); i++) {
        if (static_cast<int>(i) == survivor) {
            continue;
        }
        if (!PauliOperator::commutes(gens_[i].op, obs)) {
            gens_[i].op = PauliOperator::multiply(surv_op, gens_[i].op);
            bool logical = gens_[i].origin != GenOrigin::CodeStabilizer && gens_[i].origin != GenOrigin::Measured;
            bool surv_logical = gens_[static_cast<size_t>(survivor)].origin != GenOrigin::CodeStabilizer &&
                                gens_[static_cast<size_t>(survivor)].origin != GenOrigin::Measured;
            if (logical && surv_logical) {
                gens_[i].origin = GenOrigin::LogicalY;
            }
        }
    }
    PauliOperator replacement = obs;
    if (outcome < 0) {
        replacement.negate();
    }
    gens_[static_cast<size_t>(survivor)] = {replacement, GenOrigin::Measured};
    record_.items.push_back({obs, outcome, RecordKind::SingleQubit});
    return outcome;
}

std::string StabilizerState::dump(std::optional<uint32_t> split) const {
    std::ostringstream os;
    for (const auto &g : gens_) {
        os << g.op.str(split) << "  [" << origin_name(g.origin) << "]\n";
    }
    return os.str();
}

LogicalInference infer_logicals(const MeasurementRecord &record, const StabilizerCode &code1,
                                const StabilizerCode &code2) {
    uint32_t n = code1.n + code2.n;
    for (size_t i = 0; i < record.items.size(); i++) {
        for (size_t j = i + 1; j < record.items.size(); j++) {
            if (!PauliOperator::commutes(record.items[i].observable, record.items[j].observable)) {
                throw std::invalid_argument("measurement record is not internally commuting");
            }
        }
    }
    std::vector<PauliOperator> signed_ops;
    SymplecticBasis basis(n);
    for (const auto &g : code1.generators) {
        PauliOperator e = g.embed(n, 0);
        basis.extend(e);
        signed_ops.push_back(e);
    }
    for (const auto &g : code2.generators) {
        PauliOperator e = g.embed(n, code1.n);
        basis.extend(e);
        signed_ops.push_back(e);
    }
    for (const auto &item : record.items) {
        basis.extend(item.observable);
        signed_ops.push_back(item.signed_observable());
    }

    PauliOperator xx = PauliOperator::multiply(code1.logical_x_rep.embed(n, 0), code2.logical_x_rep.embed(n, code1.n));
    PauliOperator zz = PauliOperator::multiply(code1.logical_z_rep.embed(n, 0), code2.logical_z_rep.embed(n, code1.n));
    PauliOperator yy_product = PauliOperator::multiply(xx, zz);

    auto recover = [&](const PauliOperator &rep) -> std::optional<int> {
        auto coeffs = basis.in_span(rep);
        if (!coeffs) {
            return std::nullopt;
        }
        PauliOperator prod = PauliOperator::identity(n);
        for (uint32_t row : *coeffs) {
            prod = PauliOperator::multiply(prod, signed_ops[row]);
        }
        uint8_t diff = static_cast<uint8_t>((prod.phase_exp() - rep.phase_exp()) & 3);
        if (diff != 0 && diff != 2) {
            throw std::logic_error("imaginary phase recovering a logical value");
        }
        return diff == 0 ? 1 : -1;
    };

    LogicalInference inf;
    inf.x = recover(xx);
    inf.z = recover(zz);
    // The state holds l_x*XX and l_z*ZZ, so their product carries l_x*l_z and
    // l_y is the negation of the recovered sign.
    if (auto s = recover(yy_product)) {
        inf.y = -*s;
    }
    return inf;
}

}  // namespace bmkit
