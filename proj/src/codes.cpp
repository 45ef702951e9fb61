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

#include <stdexcept>

#include "bmkit/code.hpp"

namespace bmkit {

namespace {

PauliOperator product_of_letters(uint32_t n, const std::vector<uint32_t> &qubits, PauliLetter w) {
    PauliOperator p(n);
    for (uint32_t q : qubits) {
        p.set_letter(q, w);
    }
    return p;
}

}  // namespace

StabilizerCode qpc(int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("qpc needs positive dimensions");
    }
    StabilizerCode code;
    code.family = "qpc";
    code.params = {rows, cols};
    code.n = static_cast<uint32_t>(rows * cols);
    auto q = [cols](int i, int j) { return static_cast<uint32_t>(i * cols + j); };
    for (int i = 0; i < rows; i++) {
        for (int j = 0; j + 1 < cols; j++) {
            PauliOperator g(code.n);
            g.set_letter(q(i, j), PauliLetter::Z);
            g.set_letter(q(i, j + 1), PauliLetter::Z);
            code.generators.push_back(g);
        }
    }
    for (int i = 0; i + 1 < rows; i++) {
        PauliOperator g(code.n);
        for (int t = 0; t < cols; t++) {
            g.set_letter(q(i, t), PauliLetter::X);
            g.set_letter(q(i + 1, t), PauliLetter::X);
        }
        code.generators.push_back(g);
    }
    PauliOperator lx(code.n);
    for (int t = 0; t < cols; t++) {
        lx.set_letter(q(0, t), PauliLetter::X);
    }
    PauliOperator lz(code.n);
    for (int i = 0; i < rows; i++) {
        lz.set_letter(q(i, cols - 1), PauliLetter::Z);
    }
    code.logical_x_rep = lx;
    code.logical_z_rep = lz;
    for (int i = 0; i < rows; i++) {
        for (int j = 0; j < cols; j++) {
            code.layout.coords.push_back({i + 1, j + 1});
        }
    }
    return code;
}

StabilizerCode five_qubit() {
    StabilizerCode code;
    code.family = "five-qubit";
    code.n = 5;
    for (const char *g : {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}) {
        code.generators.push_back(PauliOperator::parse(g));
    }
    code.logical_x_rep = PauliOperator::parse("XXXXX");
    code.logical_z_rep = PauliOperator::parse("ZZZZZ");
    return code;
}

StabilizerCode steane() {
    StabilizerCode code;
    code.family = "steane";
    code.n = 7;
    // Faces of the triangular lattice, qubits numbered as in the code figure:
    // qubit 1 at the top tip, 2-4 completing the top face, 5-7 at the bottom.
    std::vector<std::vector<int>> faces = {{1, 2, 3, 4}, {2, 4, 5, 6}, {3, 4, 6, 7}};
    for (const auto &f : faces) {
        std::vector<uint32_t> qs;
        for (int v : f) {
            qs.push_back(static_cast<uint32_t>(v - 1));
        }
        code.layout.faces.push_back(f);
        code.generators.push_back(product_of_letters(7, qs, PauliLetter::X));
    }
    for (const auto &f : faces) {
        std::vector<uint32_t> qs;
        for (int v : f) {
            qs.push_back(static_cast<uint32_t>(v - 1));
        }
        code.generators.push_back(product_of_letters(7, qs, PauliLetter::Z));
    }
    // 0-chain {1, 3, 7}.
    code.logical_x_rep = PauliOperator::parse("XIXIIIX");
    code.logical_z_rep = PauliOperator::parse("ZIZIIIZ");
    return code;
}

int standard_surface_qubit_index(int r, int m, int layer, int col) {
    if (layer < 1 || layer > 2 * r - 1 || col < 1 || col > 2 * m - 1 || (layer + col) % 2 != 0) {
        throw std::invalid_argument("not a standard-surface qubit position");
    }
    int idx = 0;
    for (int l = 1; l < layer; l++) {
        idx += (l % 2 == 1) ? m : m - 1;
    }
    // Within a layer, qubit columns step by two.
    idx += (col - ((layer % 2 == 1) ? 1 : 2)) / 2;
    return idx;
}

StabilizerCode standard_surface(int r, int m) {
    if (r < 2 || m < 2) {
        throw std::invalid_argument("standard surface needs r, m >= 2");
    }
    StabilizerCode code;
    code.family = "standard-surface";
    code.params = {r, m};
    code.n = static_cast<uint32_t>(2 * m * r - m - r + 1);
    auto qubit_at = [&](int l, int c) -> int {
        if (l < 1 || l > 2 * r - 1 || c < 1 || c > 2 * m - 1) {
            return -1;
        }
        if ((l + c) % 2 != 0) {
            return -1;
        }
        return standard_surface_qubit_index(r, m, l, c);
    };
    // Vertex operators sit at (odd layer, even column).
    for (int l = 1; l <= 2 * r - 1; l += 2) {
        for (int c = 2; c <= 2 * m - 2; c += 2) {
            PauliOperator g(code.n);
            for (auto [dl, dc] : {std::pair{0, -1}, {0, 1}, {-1, 0}, {1, 0}}) {
                int q = qubit_at(l + dl, c + dc);
                if (q >= 0) {
                    g.set_letter(static_cast<uint32_t>(q), PauliLetter::X);
                }
            }
            code.generators.push_back(g);
        }
    }
    // Face operators sit at (even layer, odd column).
    for (int l = 2; l <= 2 * r - 2; l += 2) {
        for (int c = 1; c <= 2 * m - 1; c += 2) {
            PauliOperator g(code.n);
            for (auto [dl, dc] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
                int q = qubit_at(l + dl, c + dc);
                if (q >= 0) {
                    g.set_letter(static_cast<uint32_t>(q), PauliLetter::Z);
                }
            }
            code.generators.push_back(g);
        }
    }
    // Logical X: the last qubit of every odd layer, a dual string joining the
    // smooth boundaries. Logical Z: the first layer, joining the rough ones.
    PauliOperator lx(code.n), lz(code.n);
    for (int l = 1; l <= 2 * r - 1; l += 2) {
        lx.set_letter(static_cast<uint32_t>(qubit_at(l, 2 * m - 1)), PauliLetter::X);
    }
    for (int c = 1; c <= 2 * m - 1; c += 2) {
        lz.set_letter(static_cast<uint32_t>(qubit_at(1, c)), PauliLetter::Z);
    }
    code.logical_x_rep = lx;
    code.logical_z_rep = lz;
    for (int l = 1; l <= 2 * r - 1; l++) {
        for (int c = ((l % 2 == 1) ? 1 : 2); c <= 2 * m - 1; c += 2) {
            code.layout.coords.push_back({l, c});
        }
    }
    return code;
}

std::vector<RotatedPlaquette> rotated_surface_plaquettes(int r, int m) {
    std::vector<RotatedPlaquette> out;
    auto in_grid = [&](int i, int j) { return i >= 1 && i <= r && j >= 1 && j <= m; };
    for (int a = 0; a <= r; a++) {
        for (int b = 0; b <= m; b++) {
            bool x_type = (a + b) % 2 == 0;
            bool interior = a >= 1 && a <= r - 1 && b >= 1 && b <= m - 1;
            bool top = a == 0 && b >= 1 && b <= m - 1 && x_type;
            bool bottom = a == r && b >= 1 && b <= m - 1 && x_type;
            bool left = b == 0 && a >= 1 && a <= r - 1 && !x_type;
            bool right = b == m && a >= 1 && a <= r - 1 && !x_type;
            if (!(interior || top || bottom || left || right)) {
                continue;
            }
            RotatedPlaquette p;
            p.x_type = x_type;
            p.pi = a;
            p.pj = b;
            for (int i = a; i <= a + 1; i++) {
                for (int j = b; j <= b + 1; j++) {
                    if (in_grid(i, j)) {
                        p.qubits.push_back(static_cast<uint32_t>((i - 1) * m + (j - 1)));
                    }
                }
            }
            out.push_back(std::move(p));
        }
    }
    return out;
}

StabilizerCode rotated_surface(int r, int m) {
    if (r < 2 || m < 2) {
        throw std::invalid_argument("rotated surface needs r, m >= 2");
    }
    StabilizerCode code;
    code.family = "rotated-surface";
    code.params = {r, m};
    code.n = static_cast<uint32_t>(r * m);
    for (const auto &p : rotated_surface_plaquettes(r, m)) {
        code.generators.push_back(
            product_of_letters(code.n, p.qubits, p.x_type ? PauliLetter::X : PauliLetter::Z));
    }
    PauliOperator lx(code.n), lz(code.n);
    for (int i = 1; i <= r; i++) {
        lx.set_letter(static_cast<uint32_t>((i - 1) * m), PauliLetter::X);
    }
    for (int j = 1; j <= m; j++) {
        lz.set_letter(static_cast<uint32_t>(j - 1), PauliLetter::Z);
    }
    code.logical_x_rep = lx;
    code.logical_z_rep = lz;
    for (int i = 1; i <= r; i++) {
        for (int j = 1; j <= m; j++) {
            code.layout.coords.push_back({i, j});
        }
    }
    return code;
}

StabilizerCode tree_code(const std::vector<int> &branching) {
    if (branching.empty()) {
        throw std::invalid_argument("tree code needs a non-empty branching vector");
    }
    for (int b : branching) {
        if (b < 1) {
            throw std::invalid_argument("branching parameters must be positive");
        }
    }
    StabilizerCode code;
    code.family = "tree";
    code.params = branching;
    // Vertices level by level, left to right; the root is vertex 0.
    std::vector<int> parent = {-1};
    std::vector<int> depth = {0};
    std::vector<int> frontier = {0};
    for (size_t level = 0; level < branching.size(); level++) {
        std::vector<int> next;
        for (int v : frontier) {
            for (int c = 0; c < branching[level]; c++) {
                int id = static_cast<int>(parent.size());
                parent.push_back(v);
                depth.push_back(static_cast<int>(level) + 1);
                next.push_back(id);
            }
        }
        frontier = std::move(next);
    }
    code.n = static_cast<uint32_t>(parent.size());
    code.layout.parent = parent;
    code.layout.depth = depth;
    code.layout.root = 0;
    code.layout.children.assign(code.n, {});
    for (uint32_t v = 1; v < code.n; v++) {
        code.layout.children[static_cast<size_t>(parent[v])].push_back(static_cast<int>(v));
    }
    auto stab = [&](uint32_t v) {
        PauliOperator g(code.n);
        g.set_letter(v, PauliLetter::X);
        if (parent[v] >= 0) {
            g.set_letter(static_cast<uint32_t>(parent[v]), PauliLetter::Z);
        }
        for (int c : code.layout.children[v]) {
            g.set_letter(static_cast<uint32_t>(c), PauliLetter::Z);
        }
        return g;
    };
    for (uint32_t v = 1; v < code.n; v++) {
        code.generators.push_back(stab(v));
    }
    // Base operators: Z on the root spans [logical X]; K_root spans [logical Z].
    PauliOperator z_root(code.n);
    z_root.set_letter(0, PauliLetter::Z);
    if (code.n == 1) {
        throw std::invalid_argument("tree code needs at least one non-root vertex");
    }
    code.logical_x_rep = PauliOperator::multiply(z_root, stab(1));
    code.logical_z_rep = stab(0);
    return code;
}

}  // namespace bmkit
