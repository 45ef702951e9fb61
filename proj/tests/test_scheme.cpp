#include <doctest.h>

#include <set>

#include "bmkit/scheme.hpp"
#include "builtins.hpp"

using namespace bmkit;

TEST_CASE("five-qubit scheme matches the quoted sequences") {
    BuiltScheme b = build_optimal_five_qubit();
    for (uint32_t j = 0; j < 5; j++) {
        CHECK(b.scheme.bases[j] == PauliLetter::Y);
        CHECK(b.scheme.order[j] == j);
    }
    CHECK(b.scheme.logicals[1].x_op.str() == "+IXIYY");
    CHECK(b.scheme.logicals[1].z_op.str() == "+YZYII");
    REQUIRE(b.cseq.ops.size() == 4);
    CHECK(b.cseq.ops[0].str() == "+XXYIY");
    CHECK(b.cseq.ops[3].str() == "+YIYXX");
}

TEST_CASE("steane scheme matches the quoted sequences") {
    BuiltScheme b = build_optimal_steane();
    std::string bases;
    for (uint32_t j = 0; j + 1 < 7; j++) {
        bases += letter_char(b.scheme.bases[j]);
    }
    CHECK(bases == "XZZZXX");
    CHECK(b.cseq.ops[0].str() == "+ZZZZIII");
    CHECK(b.cseq.ops[4].str() == "+IZIZZZI");
    CHECK(b.scheme.logicals[6].x_op.str() == "+IIIIXXX");
    CHECK(b.scheme.logicals[6].z_op.str() == "+IZIZIIZ");
}

TEST_CASE("qpc(2,2) scheme reproduces the walkthrough structure") {
    BuiltScheme b = build_optimal_qpc(2, 2);
    CHECK(b.scheme.bases[0] == PauliLetter::X);
    CHECK(b.scheme.bases[1] == PauliLetter::Z);
    CHECK(b.scheme.bases[2] == PauliLetter::X);
    // Success on pair 4 completes IIXX and IZIZ.
    CHECK(b.scheme.logicals[3].x_op.str() == "+IIXX");
    CHECK(b.scheme.logicals[3].z_op.str() == "+IZIZ");
}

TEST_CASE("every built-in optimal scheme is structurally sound") {
    for (const auto &b : bmkit_tests::builtin_optimal_schemes()) {
        const Scheme &s = b.scheme;
        INFO(s.name, " ", s.code.family, " n=", s.code.n);
        uint32_t n = s.code.n;
        uint32_t n_att = static_cast<uint32_t>(s.order.size());
        // Pre-measured qubits (tree roots) sit outside the adaptive order.
        uint32_t pre_qubits = 0;
        for (const auto &p : s.pre_steps) {
            pre_qubits += p.weight();
        }
        REQUIRE(n_att + pre_qubits == n);
        REQUIRE(s.bases.size() == n_att);
        REQUIRE(s.logicals.size() == n_att);
        REQUIRE(b.cseq.ops.size() == n_att - 1);
        // The order hits distinct qubits.
        std::set<uint32_t> seen(s.order.begin(), s.order.end());
        CHECK(seen.size() == n_att);
        // Candidate sequence entries are independent code stabilizers; they
        // span the full group whenever no qubits were pre-measured.
        CHECK(symplectic_rank(b.cseq.ops) == b.cseq.ops.size());
        for (const auto &c : b.cseq.ops) {
            CHECK(s.code.stabilizer_span().contains(c));
        }
        if (pre_qubits == 0) {
            CHECK(b.cseq.ops.size() == n - 1);
        }
        // Each logical pair is (LogicalX, LogicalZ) and conflicts exactly at
        // its own position.
        for (uint32_t j = 0; j < n_att; j++) {
            CHECK(s.code.coset_class(s.logicals[j].x_op) == CosetClass::LogicalX);
            CHECK(s.code.coset_class(s.logicals[j].z_op) == CosetClass::LogicalZ);
            auto anti = PauliOperator::anticommute_positions(s.logicals[j].x_op, s.logicals[j].z_op);
            REQUIRE(anti.size() == 1);
            CHECK(anti[0] == s.order[j]);
        }
    }
}

TEST_CASE("wz weight formula equals the constructed wave string count") {
    CHECK(wz_weight(5, 5) == 11);
    for (int r = 2; r <= 9; r++) {
        for (int m = 2; m <= 9; m++) {
            INFO("r=", r, " m=", m);
            CHECK(optimized_static_string(r, m).size() == static_cast<size_t>(wz_weight(r, m)));
        }
    }
}

TEST_CASE("optimized static string is a valid logical Z representative") {
    for (int r = 2; r <= 9; r++) {
        for (int m = 2; m <= 9; m++) {
            INFO("r=", r, " m=", m);
            StabilizerCode code = rotated_surface(r, m);
            PauliOperator s(code.n);
            for (uint32_t q : optimized_static_string(r, m)) {
                s.set_letter(q, PauliLetter::Z);
            }
            CHECK(code.coset_class(s) == CosetClass::LogicalZ);
        }
    }
}

TEST_CASE("optimized static scheme covers the string with Z and the rest with X") {
    StaticScheme s = build_static_optimized_rotated(5, 5);
    int z_count = 0;
    for (PauliLetter b : s.bases) {
        if (b == PauliLetter::Z) {
            z_count++;
        }
    }
    CHECK(z_count == 11);
    StaticScheme simple = build_static_simple_rotated(5, 5);
    for (PauliLetter b : simple.bases) {
        CHECK(b == PauliLetter::Z);
    }
    StaticScheme tree = build_static_tree({3, 2});
    CHECK(tree.order.size() == 9);  // non-root qubits only
    CHECK(tree.pre_steps.size() == 1);
}

TEST_CASE("standard-surface string baseline reaches weight 2 max(r,m) - 1") {
    for (int r = 2; r <= 4; r++) {
        for (int m = 2; m <= 4; m++) {
            INFO("r=", r, " m=", m);
            StaticScheme s = build_static_standard_string(r, m);
            PauliLetter on = m >= r ? PauliLetter::Z : PauliLetter::X;
            int count = 0;
            for (PauliLetter b : s.bases) {
                if (b == on) {
                    count++;
                }
            }
            CHECK(count == 2 * std::max(r, m) - 1);
        }
    }
}

TEST_CASE("doubling and reduction round trip") {
    for (const auto &b : {build_optimal_qpc(2, 2), build_optimal_five_qubit(), build_optimal_tree({2, 2})}) {
        TwoCodeScheme two = lift_to_two_code(b.scheme);
        Scheme back = reduce_to_single_code(two);
        CHECK(back.order == b.scheme.order);
        CHECK(back.bases == b.scheme.bases);
        REQUIRE(back.logicals.size() == b.scheme.logicals.size());
        for (size_t j = 0; j < back.logicals.size(); j++) {
            CHECK(PauliOperator::same_letters(back.logicals[j].x_op, b.scheme.logicals[j].x_op));
            CHECK(PauliOperator::same_letters(back.logicals[j].z_op, b.scheme.logicals[j].z_op));
        }
        REQUIRE(back.pre_steps.size() == b.scheme.pre_steps.size());
    }
    // Five-qubit doubled bases are transversal Y on every pair.
    TwoCodeScheme five = lift_to_two_code(build_optimal_five_qubit().scheme);
    for (PauliLetter b : five.bases) {
        CHECK(b == PauliLetter::Y);
    }
    // Tampered two-code schemes are rejected.
    TwoCodeScheme broken = lift_to_two_code(build_optimal_qpc(2, 2).scheme);
    broken.logicals[0].x_op.set_letter(0, PauliLetter::I);
    CHECK_THROWS(reduce_to_single_code(broken));
}

TEST_CASE("scheme serialization round trips") {
    for (const auto &b : {build_optimal_qpc(2, 3), build_optimal_steane(), build_optimal_tree({2, 2})}) {
        Scheme back = Scheme::deserialize(b.scheme.serialize());
        CHECK(back.order == b.scheme.order);
        CHECK(back.bases == b.scheme.bases);
        REQUIRE(back.logicals.size() == b.scheme.logicals.size());
        for (size_t j = 0; j < back.logicals.size(); j++) {
            CHECK(back.logicals[j].x_op == b.scheme.logicals[j].x_op);
            CHECK(back.logicals[j].z_op == b.scheme.logicals[j].z_op);
        }
        CHECK(back.pre_steps.size() == b.scheme.pre_steps.size());
    }
    StaticScheme st = build_static_optimized_rotated(3, 3);
    StaticScheme back = StaticScheme::deserialize(st.serialize());
    CHECK(back.bases == st.bases);
}

TEST_CASE("completion letters derive from the logical pair") {
    BuiltScheme b = build_optimal_qpc(2, 2);
    // Success at position 0 (qubit 1): X row 1 and Z column via pair 1.
    CHECK(b.scheme.completion_letter(0, 1) == PauliLetter::X);
    CHECK(b.scheme.completion_letter(0, 3) == PauliLetter::Z);
}

TEST_CASE("rotated builder rejects r > m") {
    CHECK_THROWS(build_optimal_rotated_surface(4, 3));
}
