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

#include "bmkit/code.hpp"

#include <sstream>
#include <stdexcept>

namespace bmkit {

std::string coset_class_name(CosetClass c) {
    switch (c) {
        case CosetClass::Stabilizer:
            return "stabilizer";
        case CosetClass::LogicalX:
            return "logical-x";
        case CosetClass::LogicalY:
            return "logical-y";
        case CosetClass::LogicalZ:
            return "logical-z";
        case CosetClass::Outside:
            return "outside";
    }
    return "?";
}

const SymplecticBasis &StabilizerCode::stabilizer_span() const {
    if (!span_ready_) {
        span_cache_ = SymplecticBasis(n);
        for (const auto &g : generators) {
            span_cache_.extend(g);
        }
        span_ready_ = true;
    }
    return span_cache_;
}

CosetClass StabilizerCode::coset_class(const PauliOperator &op) const {
    if (op.num_qubits() != n) {
        throw std::invalid_argument("operator size does not match code");
    }
    const SymplecticBasis &span = stabilizer_span();
    if (span.contains(op)) {
        return CosetClass::Stabilizer;
    }
    if (span.contains(PauliOperator::multiply_effective(op, logical_x_rep))) {
        return CosetClass::LogicalX;
    }
    if (span.contains(PauliOperator::multiply_effective(op, logical_z_rep))) {
        return CosetClass::LogicalZ;
    }
    PauliOperator y = PauliOperator::multiply_effective(logical_x_rep, logical_z_rep);
    if (span.contains(PauliOperator::multiply_effective(op, y))) {
        return CosetClass::LogicalY;
    }
    return CosetClass::Outside;
}

CodeCheckReport check_code(const StabilizerCode &code) {
    CodeCheckReport rep;
    if (code.n == 0) {
        rep.violations.push_back("code has zero qubits");
        return rep;
    }
    if (code.generators.size() != code.n - 1) {
        rep.violations.push_back("generator count is not n-1");
    }
    for (size_t i = 0; i < code.generators.size(); i++) {
        if (!code.generators[i].is_hermitian()) {
            rep.violations.push_back("generator " + std::to_string(i) + " is not Hermitian");
        }
        for (size_t j = i + 1; j < code.generators.size(); j++) {
            if (!PauliOperator::commutes(code.generators[i], code.generators[j])) {
                rep.violations.push_back("generators " + std::to_string(i) + " and " + std::to_string(j) +
                                         " anticommute");
            }
        }
    }
    if (symplectic_rank(code.generators) != code.generators.size()) {
        rep.violations.push_back("generators are GF(2)-dependent");
    }
    for (const char *name : {"x", "z"}) {
        const PauliOperator &rep_op = name[0] == 'x' ? code.logical_x_rep : code.logical_z_rep;
        for (size_t i = 0; i < code.generators.size(); i++) {
            if (!PauliOperator::commutes(rep_op, code.generators[i])) {
                rep.violations.push_back(std::string("logical ") + name + " rep anticommutes with generator " +
                                         std::to_string(i));
            }
        }
        if (code.stabilizer_span().contains(rep_op)) {
            rep.violations.push_back(std::string("logical ") + name + " rep lies in the stabilizer group");
        }
    }
    if (PauliOperator::commutes(code.logical_x_rep, code.logical_z_rep)) {
        rep.violations.push_back("logical x and z reps commute");
    }
    return rep;
}

std::string StabilizerCode::serialize() const {
    std::ostringstream os;
    os << "code " << family;
    for (int p : params) {
        os << " " << p;
    }
    os << "\n";
    os << "n " << n << "\n";
    for (const auto &g : generators) {
        os << "generator " << g.str() << "\n";
    }
    os << "logical-x " << logical_x_rep.str() << "\n";
    os << "logical-z " << logical_z_rep.str() << "\n";
    if (!layout.coords.empty()) {
        os << "coords";
        for (auto [a, b] : layout.coords) {
            os << " " << a << "," << b;
        }
        os << "\n";
    }
    if (layout.root >= 0) {
        os << "tree-parent";
        for (int p : layout.parent) {
            os << " " << p;
        }
        os << "\n";
    }
    return os.str();
}

StabilizerCode StabilizerCode::deserialize(const std::string &text) {
    StabilizerCode code;
    std::istringstream is(text);
    std::string line;
    bool have_n = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "code") {
            ls >> code.family;
            int p;
            while (ls >> p) {
                code.params.push_back(p);
            }
        } else if (key == "n") {
            ls >> code.n;
            have_n = true;
        } else if (key == "generator") {
            std::string lit;
            ls >> lit;
            code.generators.push_back(PauliOperator::parse(lit));
        } else if (key == "logical-x") {
            std::string lit;
            ls >> lit;
            code.logical_x_rep = PauliOperator::parse(lit);
        } else if (key == "logical-z") {
            std::string lit;
            ls >> lit;
            code.logical_z_rep = PauliOperator::parse(lit);
        } else if (key == "coords") {
            std::string tok;
            while (ls >> tok) {
                auto comma = tok.find(',');
                code.layout.coords.push_back({std::stoi(tok.substr(0, comma)), std::stoi(tok.substr(comma + 1))});
            }
        } else if (key == "tree-parent") {
            int p;
            while (ls >> p) {
                code.layout.parent.push_back(p);
            }
        } else {
            throw std::invalid_argument("unknown code file line: " + line);
        }
    }
    if (!have_n || code.n == 0) {
        throw std::invalid_argument("code file missing n");
    }
    auto rep = check_code(code);
    if (!rep.ok()) {
        throw std::invalid_argument("invalid code file: " + rep.violations.front());
    }
    return code;
}

}  // namespace bmkit
