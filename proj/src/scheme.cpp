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

#include "bmkit/scheme.hpp"

#include <algorithm>
#include <set>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bmkit {

std::optional<PauliLetter> Scheme::completion_letter(size_t s, size_t t) const {
    uint32_t q = order[t];
    PauliLetter u = logicals[s].x_op.letter(q);
    PauliLetter v = logicals[s].z_op.letter(q);
    if (u == PauliLetter::I && v == PauliLetter::I) {
        return std::nullopt;
    }
    if (u == PauliLetter::I) {
        return v;
    }
    if (v == PauliLetter::I || v == u) {
        return u;
    }
    throw std::runtime_error("logical pair conflicts away from its own position");
}

namespace {

std::string letters_string(const std::vector<PauliLetter> &ls) {
    std::string s;
    for (PauliLetter l : ls) {
        s += letter_char(l);
    }
    return s;
}

std::vector<PauliLetter> parse_letters(const std::string &s) {
    std::vector<PauliLetter> out;
    for (char c : s) {
        out.push_back(letter_from_char(c));
    }
    return out;
}


}  // namespace

std::string Scheme::serialize() const {
    std::ostringstream os;
    os << "scheme " << name << "\n";
    os << code.serialize();
    os << "order";
    for (uint32_t q : order) {
        os << " " << q + 1;
    }
    os << "\n";
    os << "bases " << letters_string(bases) << "\n";
    for (size_t j = 0; j < logicals.size(); j++) {
        os << "logical " << j + 1 << " " << logicals[j].x_op.str() << " " << logicals[j].z_op.str() << "\n";
    }
    for (const auto &p : pre_steps) {
        os << "prestep " << p.str() << "\n";
    }
    return os.str();
}

Scheme Scheme::deserialize(const std::string &text) {
    Scheme s;
    std::istringstream is(text);
    std::string line, code_lines;
    std::vector<std::string> scheme_lines;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream probe(line);
        std::string key;
        probe >> key;
        if (key == "scheme" || key == "order" || key == "bases" || key == "logical" || key == "prestep") {
            scheme_lines.push_back(line);
        } else {
            code_lines += line + "\n";
        }
    }
    s.code = StabilizerCode::deserialize(code_lines);
    for (const auto &l : scheme_lines) {
        std::istringstream ls(l);
        std::string key;
        ls >> key;
        if (key == "scheme") {
            ls >> s.name;
        } else if (key == "order") {
            uint32_t q;
            while (ls >> q) {
                s.order.push_back(q - 1);
            }
        } else if (key == "bases") {
            std::string b;
            ls >> b;
            s.bases = parse_letters(b);
        } else if (key == "logical") {
            size_t j;
            std::string xs, zs;
            ls >> j >> xs >> zs;
            if (j != s.logicals.size() + 1) {
                throw std::invalid_argument("logical lines out of order");
            }
            s.logicals.push_back({PauliOperator::parse(xs), PauliOperator::parse(zs)});
        } else if (key == "prestep") {
            std::string ps;
            ls >> ps;
            s.pre_steps.push_back(PauliOperator::parse(ps));
        }
    }
    if (s.order.size() != s.bases.size() || s.order.size() != s.logicals.size() || s.order.empty() ||
        s.order.size() > s.code.n) {
        throw std::invalid_argument("scheme file sizes do not match the code");
    }
    return s;
}

std::string StaticScheme::serialize() const {
    std::ostringstream os;
    os << "static-scheme " << name << "\n";
    os << code.serialize();
    os << "bases " << letters_string(bases) << "\n";
    for (const auto &p : pre_steps) {
        os << "prestep " << p.str() << "\n";
    }
    return os.str();
}

StaticScheme StaticScheme::deserialize(const std::string &text) {
    StaticScheme s;
    std::istringstream is(text);
    std::string line, code_lines;
    std::vector<std::string> scheme_lines;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream probe(line);
        std::string key;
        probe >> key;
        if (key == "static-scheme" || key == "bases" || key == "prestep") {
            scheme_lines.push_back(line);
        } else {
            code_lines += line + "\n";
        }
    }
    s.code = StabilizerCode::deserialize(code_lines);
    for (const auto &l : scheme_lines) {
        std::istringstream ls(l);
        std::string key;
        ls >> key;
        if (key == "static-scheme") {
            ls >> s.name;
        } else if (key == "bases") {
            std::string b;
            ls >> b;
            s.bases = parse_letters(b);
        } else if (key == "prestep") {
            std::string ps;
            ls >> ps;
            s.pre_steps.push_back(PauliOperator::parse(ps));
        }
    }
    if (s.bases.size() != s.code.n) {
        throw std::invalid_argument("static scheme bases do not match the code");
    }
    for (uint32_t q = 0; q < s.code.n; q++) {
        s.order.push_back(q);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Quantum parity code

BuiltScheme build_optimal_qpc(int rows, int cols) {
    StabilizerCode code = qpc(rows, cols);
    Scheme s;
    s.name = "qpc-optimal";
    s.code = code;
    int m = cols, r = rows;
    auto q = [m](int i, int j) { return static_cast<uint32_t>(i * m + j); };  // 0-based
    CandidateGeneratorSequence cs;
    for (int i = 0; i < r; i++) {
        for (int j = 0; j < m; j++) {
            s.order.push_back(q(i, j));
            s.bases.push_back(j + 1 < m ? PauliLetter::X : PauliLetter::Z);
            // Logical pair: the X row through (i, j) and one Z per row using
            // the last column elsewhere.
            PauliOperator lx(code.n), lz(code.n);
            for (int t = 0; t < m; t++) {
                lx.set_letter(q(i, t), PauliLetter::X);
            }
            lz.set_letter(q(i, j), PauliLetter::Z);
            for (int t = 0; t < r; t++) {
                if (t != i) {
                    lz.set_letter(q(t, m - 1), PauliLetter::Z);
                }
            }
            s.logicals.push_back({lx, lz});
            if (i == r - 1 && j == m - 1) {
                continue;  // final position carries no generator
            }
            PauliOperator c(code.n);
            if (j + 1 < m) {
                c.set_letter(q(i, j), PauliLetter::Z);
                c.set_letter(q(i, j + 1), PauliLetter::Z);
            } else {
                for (int t = 0; t < m; t++) {
                    c.set_letter(q(i, t), PauliLetter::X);
                    c.set_letter(q(i + 1, t), PauliLetter::X);
                }
            }
            cs.ops.push_back(c);
        }
    }
    return {std::move(s), std::move(cs)};
}

// ---------------------------------------------------------------------------
// Five-qubit code

BuiltScheme build_optimal_five_qubit() {
    Scheme s;
    s.name = "five-qubit-optimal";
    s.code = five_qubit();
    const char *lx[] = {"XIYYI", "IXIYY", "YIXIY", "YYIXI", "IYYIX"};
    const char *lz[] = {"ZYIIY", "YZYII", "IYZYI", "IIYZY", "YIIYZ"};
    for (uint32_t j = 0; j < 5; j++) {
        s.order.push_back(j);
        s.bases.push_back(PauliLetter::Y);
        s.logicals.push_back({PauliOperator::parse(lx[j]), PauliOperator::parse(lz[j])});
    }
    CandidateGeneratorSequence cs;
    for (const char *c : {"XXYIY", "YXXYI", "IYXXY", "YIYXX"}) {
        cs.ops.push_back(PauliOperator::parse(c));
    }
    return {std::move(s), std::move(cs)};
}

// ---------------------------------------------------------------------------
// Steane code

BuiltScheme build_optimal_steane() {
    Scheme s;
    s.name = "steane-optimal";
    s.code = steane();
    const char *bases = "XZZZXXZ";  // the final entry is advisory
    const char *lx[] = {"XXIIXII", "XXIIXII", "XIXIIIX", "XIIXIXI", "IIIIXXX", "IIIIXXX", "IIIIXXX"};
    const char *lz[] = {"ZIZIIIZ", "IZIZIIZ", "IIZZZII", "IZIZIIZ", "IIZZZII", "IZZIIZI", "IZIZIIZ"};
    for (uint32_t j = 0; j < 7; j++) {
        s.order.push_back(j);
        s.bases.push_back(letter_from_char(bases[j]));
        s.logicals.push_back({PauliOperator::parse(lx[j]), PauliOperator::parse(lz[j])});
    }
    CandidateGeneratorSequence cs;
    for (const char *c : {"ZZZZIII", "IXIXXXI", "IIXXIXX", "XIIXXIX", "IZIZZZI", "IIZZIZZ"}) {
        cs.ops.push_back(PauliOperator::parse(c));
    }
    return {std::move(s), std::move(cs)};
}

// ---------------------------------------------------------------------------
// Standard planar surface code

BuiltScheme build_optimal_standard_surface(int r, int m) {
    StabilizerCode code = standard_surface(r, m);
    Scheme s;
    s.name = "standard-surface-optimal";
    s.code = code;
    uint32_t n = code.n;
    auto q = [&](int l, int c) { return static_cast<uint32_t>(standard_surface_qubit_index(r, m, l, c)); };
    auto vertex_op = [&](int l, int c) {
        PauliOperator g(n);
        for (auto [dl, dc] : {std::pair{0, -1}, {0, 1}, {-1, 0}, {1, 0}}) {
            int ll = l + dl, cc = c + dc;
            if (ll >= 1 && ll <= 2 * r - 1 && cc >= 1 && cc <= 2 * m - 1) {
                g.set_letter(q(ll, cc), PauliLetter::X);
            }
        }
        return g;
    };
    auto face_op = [&](int l, int c) {
        PauliOperator g(n);
        for (auto [dl, dc] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
            int ll = l + dl, cc = c + dc;
            if (ll >= 1 && ll <= 2 * r - 1 && cc >= 1 && cc <= 2 * m - 1) {
                g.set_letter(q(ll, cc), PauliLetter::Z);
            }
        }
        return g;
    };
    CandidateGeneratorSequence cs;
    int last_l = 2 * r - 1, last_c = 2 * m - 1;
    for (int l = 1; l <= 2 * r - 1; l++) {
        for (int c = (l % 2 == 1) ? 1 : 2; c <= 2 * m - 1; c += 2) {
            s.order.push_back(q(l, c));
            bool odd_layer = l % 2 == 1;
            s.bases.push_back(odd_layer ? (c == 2 * m - 1 ? PauliLetter::X : PauliLetter::Z) : PauliLetter::X);

            // Logical pair for a success at (l, c).
            PauliOperator lx(n), lz(n);
            if (odd_layer) {
                for (int t = 1; t < l; t += 2) {
                    lx.set_letter(q(t, 2 * m - 1), PauliLetter::X);
                }
                if (l > 1) {
                    for (int cc = c + 1; cc <= 2 * m - 2; cc += 2) {
                        lx.set_letter(q(l - 1, cc), PauliLetter::X);
                    }
                }
                for (int t = l; t <= 2 * r - 1; t += 2) {
                    lx.set_letter(q(t, c), PauliLetter::X);
                }
                for (int cc = 1; cc <= 2 * m - 1; cc += 2) {
                    lz.set_letter(q(l, cc), PauliLetter::Z);
                }
            } else {
                for (int t = 1; t < l; t += 2) {
                    lx.set_letter(q(t, 2 * m - 1), PauliLetter::X);
                }
                for (int cc = c; cc <= 2 * m - 2; cc += 2) {
                    lx.set_letter(q(l, cc), PauliLetter::X);
                }
                for (int t = l + 1; t <= 2 * r - 1; t += 2) {
                    lx.set_letter(q(t, c - 1), PauliLetter::X);
                }
                for (int cc = 1; cc < c; cc += 2) {
                    lz.set_letter(q(l - 1, cc), PauliLetter::Z);
                }
                lz.set_letter(q(l, c), PauliLetter::Z);
                for (int cc = c + 1; cc <= 2 * m - 1; cc += 2) {
                    lz.set_letter(q(l + 1, cc), PauliLetter::Z);
                }
            }
            s.logicals.push_back({lx, lz});

            if (l == last_l && c == last_c) {
                continue;
            }
            if (odd_layer) {
                cs.ops.push_back(c < 2 * m - 1 ? vertex_op(l, c + 1) : face_op(l + 1, 2 * m - 1));
            } else if (c == 4 && m >= 3) {
                cs.ops.push_back(PauliOperator::multiply(face_op(l, 1), face_op(l, 3)));
            } else {
                cs.ops.push_back(face_op(l, c - 1));
            }
        }
    }
    return {std::move(s), std::move(cs)};
}

// ---------------------------------------------------------------------------
// Rotated planar surface code

int wz_weight(int r, int m) {
    if (r < 2 || m < 2) {
        throw std::invalid_argument("wz_weight needs r, m >= 2");
    }
    auto fl = [](int a) { return a / 4; };
    if (r % 2 == 1) {
        return 1 + fl(m + 2) + (r - 2) * fl(m + 1) + fl(m) + r * fl(m - 1);
    }
    return 1 + fl(m + 2) + (r - 1) * fl(m + 1) + fl(m) + (r - 1) * fl(m - 1);
}

std::vector<uint32_t> optimized_static_string(int r, int m) {
    // The wave string of the paper's optimized static scheme: a path of
    // exactly wz_weight(r, m) vertices in which consecutive cells share a
    // previously untouched X-plaquette (so every Z-BM along it anticommutes
    // with a fresh generator), every X-plaquette ends up touched evenly (a
    // valid logical-Z representative), and each cell admits a crossing
    // logical-X completion avoiding the rest of the string. A deterministic
    // depth-first search reconstructs it; the floor formula pins its length.
    int target = wz_weight(r, m);
    auto plaqs = rotated_surface_plaquettes(r, m);
    std::vector<std::vector<uint32_t>> xplaq;
    for (const auto &p : plaqs) {
        if (p.x_type) {
            std::vector<uint32_t> qs = p.qubits;
            std::sort(qs.begin(), qs.end());
            xplaq.push_back(std::move(qs));
        }
    }
    uint32_t n = static_cast<uint32_t>(r * m);
    std::vector<std::vector<uint32_t>> touch(n);
    for (uint32_t k = 0; k < xplaq.size(); k++) {
        for (uint32_t q : xplaq[k]) {
            touch[q].push_back(k);
        }
    }

    // Pure-X logical representatives: column 1 modulo the X-plaquette group.
    auto completion_ok = [&](const std::vector<uint32_t> &path) {
        std::set<uint32_t> on(path.begin(), path.end());
        for (uint32_t s_q : path) {
            std::vector<uint32_t> forbidden;
            for (uint32_t q : path) {
                if (q != s_q) {
                    forbidden.push_back(q);
                }
            }
            std::map<uint32_t, size_t> idx;
            for (size_t t = 0; t < forbidden.size(); t++) {
                idx[forbidden[t]] = t;
            }
            auto project = [&](const std::vector<uint32_t> &sup) {
                uint64_t v = 0;
                for (uint32_t q : sup) {
                    auto it = idx.find(q);
                    if (it != idx.end()) {
                        v |= uint64_t(1) << it->second;
                    }
                }
                return v;
            };
            std::map<int, uint64_t> basis;
            for (const auto &qs : xplaq) {
                uint64_t v = project(qs);
                while (v) {
                    int b = 63 - std::countl_zero(v);
                    auto it = basis.find(b);
                    if (it == basis.end()) {
                        basis[b] = v;
                        break;
                    }
                    v ^= it->second;
                }
            }
            std::vector<uint32_t> col1;
            for (int i = 1; i <= r; i++) {
                col1.push_back(static_cast<uint32_t>((i - 1) * m));
            }
            uint64_t v = project(col1);
            while (v) {
                int b = 63 - std::countl_zero(v);
                auto it = basis.find(b);
                if (it == basis.end()) {
                    return false;
                }
                v ^= it->second;
            }
        }
        return true;
    };

    std::vector<uint32_t> path;
    std::vector<bool> used_cell(n, false), used_plaq(xplaq.size(), false);
    uint64_t nodes = 0;
    std::function<bool()> dfs = [&]() -> bool {
        if (++nodes > 5000000) {
            throw std::logic_error("wave search budget exceeded");
        }
        if (path.size() == static_cast<size_t>(target)) {
            std::set<uint32_t> on(path.begin(), path.end());
            for (const auto &qs : xplaq) {
                size_t overlap = 0;
                for (uint32_t q : qs) {
                    overlap += on.count(q);
                }
                if (overlap % 2) {
                    return false;
                }
            }
            // Every Z-BM along the string must stay undetermined when
            // measured in order (the last may complete a logical), so each
            // attempt is an independent coin.
            StabilizerCode code = rotated_surface(r, m);
            SymplecticBasis span(n);
            for (const auto &g : code.generators) {
                span.extend(g);
            }
            PauliOperator yrep =
                PauliOperator::multiply_effective(code.logical_x_rep, code.logical_z_rep);
            for (size_t t = 0; t < path.size(); t++) {
                PauliOperator zq = PauliOperator::single(n, path[t], PauliLetter::Z);
                if (span.contains(zq)) {
                    return false;
                }
                bool logical = span.contains(PauliOperator::multiply_effective(zq, code.logical_x_rep)) ||
                               span.contains(PauliOperator::multiply_effective(zq, code.logical_z_rep)) ||
                               span.contains(PauliOperator::multiply_effective(zq, yrep));
                if (logical && t + 1 < path.size()) {
                    return false;
                }
                span.extend(zq);
            }
            return completion_ok(path);
        }
        uint32_t last = path.back();
        for (uint32_t k : touch[last]) {
            if (used_plaq[k]) {
                continue;
            }
            for (uint32_t nxt : xplaq[k]) {
                if (used_cell[nxt] || nxt == last) {
                    continue;
                }
                path.push_back(nxt);
                used_cell[nxt] = true;
                used_plaq[k] = true;
                if (dfs()) {
                    return true;
                }
                path.pop_back();
                used_cell[nxt] = false;
                used_plaq[k] = false;
            }
        }
        return false;
    };
    std::vector<uint32_t> starts;
    for (uint32_t q = 0; q < n; q++) {
        if (touch[q].size() == 1) {
            starts.push_back(q);
        }
    }
    for (uint32_t start : starts) {
        path.assign(1, start);
        used_cell.assign(n, false);
        used_plaq.assign(xplaq.size(), false);
        used_cell[start] = true;
        if (dfs()) {
            return path;
        }
    }
    throw std::logic_error("no wave string of the required weight exists");
}

namespace {

struct RotatedGrid {
    int r, m;
    std::map<std::pair<int, int>, const RotatedPlaquette *> plaq_at;
    std::vector<RotatedPlaquette> table;

    explicit RotatedGrid(int r_, int m_) : r(r_), m(m_), table(rotated_surface_plaquettes(r_, m_)) {
        for (const auto &p : table) {
            plaq_at[{p.pi, p.pj}] = &p;
        }
    }
    uint32_t q(int i, int j) const {
        return static_cast<uint32_t>((i - 1) * m + (j - 1));
    }
    PauliOperator plaq_op(uint32_t n, int a, int b) const {
        auto it = plaq_at.find({a, b});
        if (it == plaq_at.end()) {
            throw std::logic_error("no plaquette at the requested position");
        }
        const RotatedPlaquette *p = it->second;
        PauliOperator g(n);
        for (uint32_t qu : p->qubits) {
            g.set_letter(qu, p->x_type ? PauliLetter::X : PauliLetter::Z);
        }
        return g;
    }
    int diag_top(int k) const {
        return std::max(1, k - m);
    }
    int diag_bot(int k) const {
        return std::min(r, k - 1);
    }
};

// Vertex sets of the logical strings completed after a success. All index
// arithmetic is 1-based (i row, j column, k = i + j).
struct RotatedStrings {
    const RotatedGrid &g;

    void add_diag_rows(std::set<uint32_t> &s, int k, int lo, int hi) const {
        lo = std::max(lo, g.diag_top(k));
        hi = std::min(hi, g.diag_bot(k));
        for (int i = lo; i <= hi; i++) {
            s.insert(g.q(i, k - i));
        }
    }
    void add_top_row_right(std::set<uint32_t> &s, int c0) const {
        for (int c = std::max(1, c0); c <= g.m; c++) {
            s.insert(g.q(1, c));
        }
    }
    void add_bottom_row_left(std::set<uint32_t> &s, int c0) const {
        for (int c = 1; c <= std::min(g.m, c0); c++) {
            s.insert(g.q(g.r, c));
        }
    }
    void add_left_col_down(std::set<uint32_t> &s, int i0) const {
        for (int i = std::max(1, i0); i <= g.r; i++) {
            s.insert(g.q(i, 1));
        }
    }
    void add_right_col_up(std::set<uint32_t> &s, int i0) const {
        for (int i = 1; i <= std::min(g.r, i0); i++) {
            s.insert(g.q(i, g.m));
        }
    }

    LogicalPair x_success(uint32_t n, int i, int j) const {
        int k = i + j;
        std::set<uint32_t> xs, zs;
        add_diag_rows(xs, k, 1, g.r);
        add_left_col_down(xs, k);
        add_right_col_up(xs, k - g.m - 1);
        add_diag_rows(zs, k - 1, i, g.r);
        add_bottom_row_left(zs, k - 1 - g.r);
        zs.insert(g.q(i, j));
        add_diag_rows(zs, k + 1, 1, i);
        add_top_row_right(zs, k + 1);
        return make_pair(n, xs, zs);
    }
    LogicalPair z_success_diag(uint32_t n, int i, int j) const {
        int k = i + j;
        std::set<uint32_t> xs, zs;
        add_diag_rows(zs, k, 1, g.r);
        add_top_row_right(zs, k);
        add_bottom_row_left(zs, k - g.r);
        add_diag_rows(xs, k - 1, 1, i - 1);
        add_right_col_up(xs, k - 2 - g.m);
        xs.insert(g.q(i, j));
        add_diag_rows(xs, k + 1, i + 1, g.r);
        add_left_col_down(xs, k + 1);
        return make_pair(n, xs, zs);
    }
    // Z-measured end vertex of an X-diagonal (rectangular case).
    LogicalPair z_success_bottom_end(uint32_t n, int k) const {
        std::set<uint32_t> xs, zs;
        add_diag_rows(xs, k, 1, g.r);
        add_bottom_row_left(zs, k + 1 - g.r);
        add_diag_rows(zs, k + 1, 1, g.r);
        add_top_row_right(zs, k + 1);
        return make_pair(n, xs, zs);
    }
    LogicalPair z_success_top_end(uint32_t n, int k) const {
        std::set<uint32_t> xs, zs;
        add_diag_rows(xs, k, 1, g.r);
        add_top_row_right(zs, k - 1);
        add_diag_rows(zs, k - 1, 1, g.r);
        add_bottom_row_left(zs, k - 1 - g.r);
        return make_pair(n, xs, zs);
    }

    static LogicalPair make_pair(uint32_t n, const std::set<uint32_t> &xs, const std::set<uint32_t> &zs) {
        PauliOperator lx(n), lz(n);
        for (uint32_t q : xs) {
            lx.set_letter(q, PauliLetter::X);
        }
        for (uint32_t q : zs) {
            lz.set_letter(q, PauliLetter::Z);
        }
        return {lx, lz};
    }
};

}  // namespace

BuiltScheme build_optimal_rotated_surface(int r, int m) {
    if (r > m) {
        throw std::invalid_argument("rotated-surface scheme builder expects r <= m");
    }
    StabilizerCode code = rotated_surface(r, m);
    RotatedGrid grid(r, m);
    RotatedStrings strings{grid};
    uint32_t n = code.n;

    // The two measurement fronts: one from the top-left corner over increasing
    // index sums, a mirrored one from the bottom-right over decreasing sums;
    // the middle diagonal is measured last. For an even number of diagonals
    // the lower-index central diagonal serves as the middle.
    int k_mid = (r + m) % 2 == 0 ? (r + m + 2) / 2 : (r + m + 1) / 2;
    std::vector<int> front_a, front_b;
    for (int k = 2; k < k_mid; k++) {
        front_a.push_back(k);
    }
    for (int k = r + m; k > k_mid; k--) {
        front_b.push_back(k);
    }
    std::vector<std::pair<int, char>> diag_order;  // (k, front tag)
    for (size_t t = 0; t < std::max(front_a.size(), front_b.size()); t++) {
        if (t < front_a.size()) {
            diag_order.push_back({front_a[t], 'a'});
        }
        if (t < front_b.size()) {
            diag_order.push_back({front_b[t], 'b'});
        }
    }
    diag_order.push_back({k_mid, 'm'});

    Scheme s;
    s.name = "rotated-surface-optimal";
    s.code = code;
    CandidateGeneratorSequence cs;
    auto push_position = [&](int i, int j, PauliLetter basis, const LogicalPair &pair,
                             std::optional<std::pair<int, int>> plaq) {
        s.order.push_back(grid.q(i, j));
        s.bases.push_back(basis);
        s.logicals.push_back(pair);
        if (plaq) {
            cs.ops.push_back(grid.plaq_op(n, plaq->first, plaq->second));
        }
    };

    for (auto [k, tag] : diag_order) {
        bool x_diag = k % 2 == 0;
        int top = grid.diag_top(k), bot = grid.diag_bot(k);
        if (tag == 'a') {
            if (x_diag) {
                bool z_end = k >= r + 1;  // second part: the bottom vertex takes a Z-BM
                for (int i = top; i <= bot; i++) {
                    int j = k - i;
                    if (z_end && i == bot) {
                        push_position(i, j, PauliLetter::Z, strings.z_success_bottom_end(n, k),
                                      std::pair{r, k - r});
                    } else {
                        push_position(i, j, PauliLetter::X, strings.x_success(n, i, j), std::pair{i, j - 1});
                    }
                }
            } else {
                for (int i = bot; i >= top; i--) {
                    int j = k - i;
                    push_position(i, j, PauliLetter::Z, strings.z_success_diag(n, i, j), std::pair{i - 1, j});
                }
            }
        } else if (tag == 'b') {
            if (x_diag) {
                bool z_end = k <= m + 1;  // mirrored second part: the top vertex takes a Z-BM
                for (int i = bot; i >= top; i--) {
                    int j = k - i;
                    if (z_end && i == top) {
                        push_position(i, j, PauliLetter::Z, strings.z_success_top_end(n, k), std::pair{0, k - 2});
                    } else {
                        push_position(i, j, PauliLetter::X, strings.x_success(n, i, j), std::pair{i - 1, j});
                    }
                }
            } else {
                for (int i = top; i <= bot; i++) {
                    int j = k - i;
                    push_position(i, j, PauliLetter::Z, strings.z_success_diag(n, i, j), std::pair{i, j - 1});
                }
            }
        } else {  // middle diagonal, measured last, top-down
            for (int i = top; i <= bot; i++) {
                int j = k - i;
                bool last = i == bot;
                if (x_diag) {
                    push_position(i, j, PauliLetter::X, strings.x_success(n, i, j),
                                  last ? std::nullopt : std::optional{std::pair{i, j - 1}});
                } else {
                    push_position(i, j, PauliLetter::Z, strings.z_success_diag(n, i, j),
                                  last ? std::nullopt : std::optional{std::pair{i, j - 1}});
                }
            }
        }
    }
    return {std::move(s), std::move(cs)};
}

// ---------------------------------------------------------------------------
// Tree code

BuiltScheme build_optimal_tree(const std::vector<int> &branching) {
    StabilizerCode code = tree_code(branching);
    uint32_t n = code.n;
    const auto &lay = code.layout;
    auto stab = [&](int v) {
        PauliOperator g(n);
        g.set_letter(static_cast<uint32_t>(v), PauliLetter::X);
        if (lay.parent[static_cast<size_t>(v)] >= 0) {
            g.set_letter(static_cast<uint32_t>(lay.parent[static_cast<size_t>(v)]), PauliLetter::Z);
        }
        for (int c : lay.children[static_cast<size_t>(v)]) {
            g.set_letter(static_cast<uint32_t>(c), PauliLetter::Z);
        }
        return g;
    };
    auto anc = [&](int v, int a) {
        while (a-- > 0) {
            v = lay.parent[static_cast<size_t>(v)];
        }
        return v;
    };

    Scheme s;
    s.name = "tree-optimal";
    s.code = code;
    // The root is consumed by a fixed X measurement before the adaptive phase.
    s.pre_steps.push_back(PauliOperator::single(n, 0, PauliLetter::X));

    // Measure level by level from the leaves toward the root.
    std::vector<uint32_t> verts;
    for (uint32_t v = 1; v < n; v++) {
        verts.push_back(v);
    }
    std::stable_sort(verts.begin(), verts.end(), [&](uint32_t a, uint32_t b) {
        return lay.depth[a] > lay.depth[b];
    });

    PauliOperator z_root = PauliOperator::single(n, 0, PauliLetter::Z);
    PauliOperator k_root = stab(0);
    CandidateGeneratorSequence cs;
    for (size_t pos = 0; pos < verts.size(); pos++) {
        int v = static_cast<int>(verts[pos]);
        int d = lay.depth[static_cast<size_t>(v)];
        s.order.push_back(static_cast<uint32_t>(v));
        s.bases.push_back(PauliLetter::Z);
        PauliOperator lx = z_root, lz = k_root;
        if (d % 2 == 0) {
            for (int i = 0; 2 * i + 1 <= d - 1; i++) {
                lx = PauliOperator::multiply(lx, stab(anc(v, 2 * i + 1)));
            }
            for (int i = 0; 2 * i <= d - 2; i++) {
                lz = PauliOperator::multiply(lz, stab(anc(v, 2 * i)));
            }
        } else {
            for (int i = 0; 2 * i <= d - 1; i++) {
                lx = PauliOperator::multiply(lx, stab(anc(v, 2 * i)));
            }
            for (int i = 0; 2 * i + 1 <= d - 2; i++) {
                lz = PauliOperator::multiply(lz, stab(anc(v, 2 * i + 1)));
            }
        }
        lx.set_phase_exp(0);
        lz.set_phase_exp(0);
        s.logicals.push_back({lx, lz});
        if (pos + 1 < verts.size()) {
            cs.ops.push_back(stab(v));
        }
    }
    // The root stabilizer of the last vertex never enters the sequence, but
    // the single-qubit alternatives on its children still have to anticommute
    // with a non-prior entry; folding it into the final entry (the previous
    // root child) covers them.
    if (verts.size() >= 2 && !cs.ops.empty()) {
        int last_v = static_cast<int>(verts.back());
        int prev_v = static_cast<int>(verts[verts.size() - 2]);
        if (lay.depth[static_cast<size_t>(prev_v)] == 1 && !lay.children[static_cast<size_t>(last_v)].empty()) {
            PauliOperator folded = PauliOperator::multiply(stab(prev_v), stab(last_v));
            folded.set_phase_exp(0);
            cs.ops.back() = folded;
        }
    }
    return {std::move(s), std::move(cs)};
}

BuiltScheme build_optimal(const StabilizerCode &code) {
    if (code.family == "qpc") {
        return build_optimal_qpc(code.params[0], code.params[1]);
    }
    if (code.family == "five-qubit") {
        return build_optimal_five_qubit();
    }
    if (code.family == "steane") {
        return build_optimal_steane();
    }
    if (code.family == "standard-surface") {
        return build_optimal_standard_surface(code.params[0], code.params[1]);
    }
    if (code.family == "rotated-surface") {
        return build_optimal_rotated_surface(code.params[0], code.params[1]);
    }
    if (code.family == "tree") {
        return build_optimal_tree(code.params);
    }
    throw std::invalid_argument("no optimal scheme builder for family " + code.family);
}

// ---------------------------------------------------------------------------
// Static baselines

StaticScheme build_static_simple_rotated(int r, int m) {
    StaticScheme s;
    s.name = "rotated-static-simple";
    s.code = rotated_surface(r, m);
    s.bases.assign(s.code.n, PauliLetter::Z);
    for (uint32_t q = 0; q < s.code.n; q++) {
        s.order.push_back(q);
    }
    return s;
}

StaticScheme build_static_optimized_rotated(int r, int m) {
    StaticScheme s;
    s.name = "rotated-static-optimized";
    s.code = rotated_surface(r, m);
    s.bases.assign(s.code.n, PauliLetter::X);
    std::vector<uint32_t> string_qubits = optimized_static_string(r, m);
    for (uint32_t q : string_qubits) {
        s.bases[q] = PauliLetter::Z;
    }
    // String qubits first: harmless physically (all measurements commute) and
    // it lets the enumeration collapse the off-string branches early.
    std::set<uint32_t> on_string(string_qubits.begin(), string_qubits.end());
    for (uint32_t q : string_qubits) {
        s.order.push_back(q);
    }
    for (uint32_t q = 0; q < s.code.n; q++) {
        if (!on_string.count(q)) {
            s.order.push_back(q);
        }
    }
    return s;
}

StaticScheme build_static_tree(const std::vector<int> &branching) {
    StaticScheme s;
    s.name = "tree-static";
    s.code = tree_code(branching);
    s.bases.assign(s.code.n, PauliLetter::Z);
    s.bases[0] = PauliLetter::X;  // the root pre-step consumes the basis slot
    s.pre_steps.push_back(PauliOperator::single(s.code.n, 0, PauliLetter::X));
    // The root is handled by the pre-step; keep it out of the attempt order.
    for (uint32_t q = 1; q < s.code.n; q++) {
        s.order.push_back(q);
    }
    return s;
}

StaticScheme build_static_standard_string(int r, int m) {
    StabilizerCode code = standard_surface(r, m);
    // Ref-style string baseline: measure a logical string of weight
    // 2*max(r,m)-1 with its own basis and everything else with the opposite
    // one. Z strings lengthen with m, X strings with r.
    bool z_string = m >= r;
    const PauliOperator &base_rep = z_string ? code.logical_z_rep : code.logical_x_rep;
    const PauliOperator &cross_rep = z_string ? code.logical_x_rep : code.logical_z_rep;
    PauliLetter on_letter = z_string ? PauliLetter::Z : PauliLetter::X;
    PauliLetter off_letter = z_string ? PauliLetter::X : PauliLetter::Z;
    std::vector<PauliOperator> same_type;
    for (const auto &g : code.generators) {
        bool pure = true;
        for (uint32_t q = 0; q < code.n; q++) {
            PauliLetter l = g.letter(q);
            if (l != PauliLetter::I && l != on_letter) {
                pure = false;
                break;
            }
        }
        if (pure) {
            same_type.push_back(g);
        }
    }
    if (same_type.size() > 22) {
        throw std::invalid_argument("standard-string baseline too large to construct");
    }

    // Feasibility of completing the crossing logical after a lone success at
    // s: some coset element of cross_rep may use the on-string basis on failed
    // string qubits and the off-string basis elsewhere, but nothing else.
    // Linear constraints over GF(2): the cross-basis component must vanish on
    // the rest of the string, the on-basis component off the string.
    auto completion_ok = [&](const std::vector<uint32_t> &support) {
        std::set<uint32_t> on(support.begin(), support.end());
        for (uint32_t s_q : support) {
            uint32_t bits = 2 * code.n;
            auto constrain = [&](const PauliOperator &op) {
                // One artificial "qubit" per constrained bit; reuse the
                // symplectic machinery by packing bits into X components.
                PauliOperator packed(bits);
                uint32_t pos = 0;
                for (uint32_t q = 0; q < code.n; q++) {
                    if (q == s_q) {
                        continue;
                    }
                    PauliLetter l = op.letter(q);
                    bool has_x = l == PauliLetter::X || l == PauliLetter::Y;
                    bool has_z = l == PauliLetter::Z || l == PauliLetter::Y;
                    bool cross_component = z_string ? has_x : has_z;
                    bool on_component = z_string ? has_z : has_x;
                    if (on.count(q) && cross_component) {
                        packed.set_letter(pos, PauliLetter::X);
                    }
                    pos++;
                    if (!on.count(q) && on_component) {
                        packed.set_letter(pos, PauliLetter::X);
                    }
                    pos++;
                }
                return packed;
            };
            SymplecticBasis proj(bits);
            for (const auto &g : code.generators) {
                proj.extend(constrain(g));
            }
            if (!proj.in_span(constrain(cross_rep))) {
                return false;
            }
        }
        return true;
    };

    uint32_t target = static_cast<uint32_t>(2 * std::max(r, m) - 1);
    std::optional<PauliOperator> best;
    uint64_t count = uint64_t(1) << same_type.size();
    for (uint64_t mask = 0; mask < count && !best; mask++) {
        PauliOperator cand = base_rep;
        for (size_t b = 0; b < same_type.size(); b++) {
            if ((mask >> b) & 1) {
                cand = PauliOperator::multiply_effective(cand, same_type[b]);
            }
        }
        if (cand.weight() != target) {
            continue;
        }
        if (completion_ok(cand.support())) {
            best = cand;
        }
    }
    if (!best) {
        throw std::logic_error("no completable string of the baseline weight exists");
    }
    StaticScheme s;
    s.name = "standard-surface-string";
    s.code = code;
    s.bases.assign(s.code.n, off_letter);
    std::vector<uint32_t> string_qubits = best->support();
    for (uint32_t q : string_qubits) {
        s.bases[q] = on_letter;
    }
    std::set<uint32_t> on_string(string_qubits.begin(), string_qubits.end());
    for (uint32_t q : string_qubits) {
        s.order.push_back(q);
    }
    for (uint32_t q = 0; q < s.code.n; q++) {
        if (!on_string.count(q)) {
            s.order.push_back(q);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Single-code / two-code forms

TwoCodeScheme lift_to_two_code(const Scheme &s) {
    TwoCodeScheme t;
    t.name = s.name;
    t.code = s.code;
    t.order = s.order;
    t.bases = s.bases;
    for (const auto &lp : s.logicals) {
        t.logicals.push_back({lp.x_op.doubled(), lp.z_op.doubled()});
    }
    for (const auto &p : s.pre_steps) {
        t.pre_steps.push_back(p.embed(2 * s.code.n, 0));
        t.pre_steps.push_back(p.embed(2 * s.code.n, s.code.n));
    }
    t.is_static = false;
    return t;
}

TwoCodeScheme lift_to_two_code(const StaticScheme &s) {
    TwoCodeScheme t;
    t.name = s.name;
    t.code = s.code;
    t.order = s.order;
    for (uint32_t pos = 0; pos < s.order.size(); pos++) {
        t.bases.push_back(s.bases[s.order[pos]]);
    }
    for (const auto &p : s.pre_steps) {
        t.pre_steps.push_back(p.embed(2 * s.code.n, 0));
        t.pre_steps.push_back(p.embed(2 * s.code.n, s.code.n));
    }
    t.is_static = true;
    return t;
}

Scheme reduce_to_single_code(const TwoCodeScheme &t) {
    if (t.is_static) {
        throw std::invalid_argument("reduce_to_single_code expects a feedforward scheme");
    }
    Scheme s;
    s.name = t.name;
    s.code = t.code;
    s.order = t.order;
    s.bases = t.bases;
    uint32_t n = t.code.n;
    auto halve = [&](const PauliOperator &op) {
        if (op.num_qubits() != 2 * n) {
            throw std::invalid_argument("two-code operator has the wrong size");
        }
        PauliOperator h(n);
        for (uint32_t q = 0; q < n; q++) {
            if (op.letter(q) != op.letter(n + q)) {
                throw std::invalid_argument("scheme operator is not transversal");
            }
            h.set_letter(q, op.letter(q));
        }
        return h;
    };
    for (const auto &lp : t.logicals) {
        s.logicals.push_back({halve(lp.x_op), halve(lp.z_op)});
    }
    for (size_t i = 0; i + 1 < t.pre_steps.size(); i += 2) {
        PauliOperator first = t.pre_steps[i];
        PauliOperator second = t.pre_steps[i + 1];
        PauliOperator h(n);
        for (uint32_t q = 0; q < n; q++) {
            PauliLetter a = first.letter(q), b = second.letter(n + q);
            if (a != b || first.letter(n + q) != PauliLetter::I || second.letter(q) != PauliLetter::I) {
                throw std::invalid_argument("pre-step pair is not transversal");
            }
            h.set_letter(q, a);
        }
        s.pre_steps.push_back(h);
    }
    return s;
}

}  // namespace bmkit
