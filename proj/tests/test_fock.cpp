#include <doctest.h>

#include <map>
#include <set>

#include "bmkit/fock.hpp"

using namespace bmkit;

namespace {

FockAmp amp_of(const FockVector &v, const FockPattern &p) {
    auto it = v.amps.find(p);
    return it == v.amps.end() ? FockAmp::zero() : it->second;
}

}  // namespace

TEST_CASE("beam splitter on the dual-rail Bell states reproduces the output table") {
    BellAnalyzer a;
    const FockAmp i_half{0, 0, 1, 0, 1};        // i/2
    const FockAmp minus_i_half{0, 0, -1, 0, 1};
    const FockAmp i_sqrt2{0, 0, 0, 1, 1};       // i/sqrt2

    // Psi- -> (1/sqrt2)(|1001> - |0110>); the i printed in the reference
    // table is a global phase this convention does not produce.
    const FockVector &psi_minus = a.outputs()[3];
    const FockAmp inv_sqrt2{0, 1, 0, 0, 1};
    FockAmp neg_inv_sqrt2 = inv_sqrt2;
    neg_inv_sqrt2.a = -neg_inv_sqrt2.a;
    neg_inv_sqrt2.b = -neg_inv_sqrt2.b;
    CHECK(amp_of(psi_minus, {1, 0, 0, 1}) == inv_sqrt2);
    CHECK(amp_of(psi_minus, {0, 1, 1, 0}) == neg_inv_sqrt2);
    CHECK(psi_minus.amps.size() == 2);

    // Psi+ -> (i/sqrt2)(|1100> + |0011>)
    const FockVector &psi_plus = a.outputs()[2];
    CHECK(amp_of(psi_plus, {1, 1, 0, 0}) == i_sqrt2);
    CHECK(amp_of(psi_plus, {0, 0, 1, 1}) == i_sqrt2);

    // Phi+- -> (i/2)(|2000> + |0020> +- |0200> +- |0002>)
    const FockVector &phi_plus = a.outputs()[0];
    CHECK(amp_of(phi_plus, {2, 0, 0, 0}) == i_half);
    CHECK(amp_of(phi_plus, {0, 0, 2, 0}) == i_half);
    CHECK(amp_of(phi_plus, {0, 2, 0, 0}) == i_half);
    CHECK(amp_of(phi_plus, {0, 0, 0, 2}) == i_half);
    const FockVector &phi_minus = a.outputs()[1];
    CHECK(amp_of(phi_minus, {2, 0, 0, 0}) == i_half);
    CHECK(amp_of(phi_minus, {0, 2, 0, 0}) == minus_i_half);

    // Vacuum stays vacuum under the splitter.
    FockVector vac;
    vac.add({0, 0, 0, 0}, FockAmp::one());
    FockVector out = beam_splitter_pair(vac, {0, 2});
    CHECK(amp_of(out, {0, 0, 0, 0}) == FockAmp::one());
    CHECK(out.amps.size() == 1);
    CHECK_THROWS(beam_splitter_pair(vac, {1, 1}));
}

TEST_CASE("total output probability is one for each Bell input") {
    BellAnalyzer a;
    for (int j = 0; j < 4; j++) {
        CHECK(a.outputs()[static_cast<size_t>(j)].total_probability() == Rational(1, 1));
    }
}

TEST_CASE("pattern classification and the success probability") {
    BellAnalyzer a;
    auto c1100 = a.classify_pattern({1, 1, 0, 0});
    CHECK(c1100.kind == OutcomeClass::Kind::Unambiguous);
    CHECK(c1100.bell == BellIndex::PsiPlus);
    CHECK(a.classify_pattern({0, 0, 1, 1}).bell == BellIndex::PsiPlus);
    CHECK(a.classify_pattern({1, 0, 0, 1}).bell == BellIndex::PsiMinus);
    CHECK(a.classify_pattern({0, 1, 1, 0}).bell == BellIndex::PsiMinus);

    auto two = a.classify_pattern({2, 0, 0, 0});
    CHECK(two.kind == OutcomeClass::Kind::Partial);
    CHECK(two.payload == PauliLetter::Z);
    CHECK(two.pair_value == 1);
    CHECK(two.q1_value == 1);
    CHECK(two.q2_value == 1);
    auto two2 = a.classify_pattern({0, 2, 0, 0});
    CHECK(two2.q1_value == -1);
    CHECK(two2.q2_value == -1);
    CHECK(two2.pair_value == 1);

    // The two cross patterns never occur.
    CHECK(a.classify_pattern({1, 0, 1, 0}).kind == OutcomeClass::Kind::Impossible);
    CHECK(a.classify_pattern({0, 1, 0, 1}).kind == OutcomeClass::Kind::Impossible);
    CHECK_THROWS(a.classify_pattern({1, 0, 0, 0}));

    CHECK(a.success_probability() == Rational(1, 2));
    CHECK(a.guaranteed_payload() == PauliLetter::Z);
}

TEST_CASE("perfect specificity over all ten two-photon patterns") {
    BellAnalyzer a;
    for (const auto &pattern : BellAnalyzer::two_photon_patterns()) {
        OutcomeClass oc = a.classify_pattern(pattern);
        if (oc.kind != OutcomeClass::Kind::Unambiguous) {
            continue;
        }
        for (int j = 0; j < 4; j++) {
            if (j == static_cast<int>(oc.bell)) {
                continue;
            }
            auto it = a.outputs()[static_cast<size_t>(j)].amps.find(pattern);
            CHECK(it == a.outputs()[static_cast<size_t>(j)].amps.end());
        }
    }
}

TEST_CASE("partial payloads always commute with the guaranteed pair value") {
    for (const BellAnalyzer &a : {BellAnalyzer{}, BellAnalyzer{"H", "H"}, BellAnalyzer{"SH", "SH"}}) {
        PauliLetter payload = a.guaranteed_payload();
        for (const auto &pattern : BellAnalyzer::two_photon_patterns()) {
            OutcomeClass oc = a.classify_pattern(pattern);
            if (oc.kind == OutcomeClass::Kind::Partial) {
                CHECK(oc.payload == payload);
            }
        }
        CHECK(a.success_probability() == Rational(1, 2));
    }
}

TEST_CASE("gate variants permute the Bell basis and relabel the payload") {
    BellAnalyzer id;
    auto perm_id = id.bell_permutation();
    CHECK(perm_id == std::array<int, 4>{0, 1, 2, 3});
    CHECK(id.guaranteed_payload() == PauliLetter::Z);

    BellAnalyzer hh("H", "H");
    CHECK(hh.guaranteed_payload() == PauliLetter::X);
    BellAnalyzer shsh("SH", "SH");
    CHECK(shsh.guaranteed_payload() == PauliLetter::Y);

    // Pauli words on one qubit permute within the Bell set.
    BellAnalyzer x2("", "X");
    auto perm = x2.bell_permutation();
    std::set<int> image(perm.begin(), perm.end());
    CHECK(image.size() == 4);
    CHECK(x2.guaranteed_payload() == PauliLetter::Z);

    // Non-Bell-preserving words are rejected.
    BellAnalyzer h1("H", "");
    CHECK_THROWS(h1.bell_permutation());
}

TEST_CASE("variant composition matches permutation composition") {
    // Words over a small gate set, applied to both qubits symmetrically,
    // realize Bell permutations; composing words composes the permutations.
    std::vector<std::string> words = {"", "H", "S", "SH", "HS", "X", "Z", "HX"};
    std::map<std::string, std::array<int, 4>> perms;
    for (const auto &w : words) {
        perms[w] = BellAnalyzer(w, w).bell_permutation();
    }
    int checked = 0;
    for (const auto &a : words) {
        for (const auto &b : words) {
            // Gates apply left to right, so the concatenated word b after a
            // acts as perm(b) after perm(a).
            BellAnalyzer combined(a + b, a + b);
            auto pa = perms[a], pb = perms[b];
            std::array<int, 4> expect{};
            for (int j = 0; j < 4; j++) {
                expect[static_cast<size_t>(j)] = pb[static_cast<size_t>(pa[static_cast<size_t>(j)])];
            }
            CHECK(combined.bell_permutation() == expect);
            checked++;
        }
    }
    CHECK(checked == 64);
}

TEST_CASE("local Clifford variants realize all 24 Bell permutations") {
    // All single-qubit Cliffords modulo phase: six letter rotations times the
    // four Paulis.
    std::vector<std::string> cliffords;
    for (const char *rot : {"", "H", "S", "SH", "HS", "SHS"}) {
        for (const char *pauli : {"", "X", "Y", "Z"}) {
            cliffords.push_back(std::string(rot) + pauli);
        }
    }
    std::set<std::array<int, 4>> seen;
    for (const auto &g1 : cliffords) {
        for (const auto &g2 : cliffords) {
            try {
                seen.insert(BellAnalyzer(g1, g2).bell_permutation());
            } catch (const std::invalid_argument &) {
                // the pair does not preserve the Bell basis
            }
        }
    }
    CHECK(seen.size() == 24);
}

TEST_CASE("amplitudes render in the exact radical form") {
    FockAmp half_i{0, 0, 1, 0, 1};
    CHECK(half_i.str() == "(0 + 1i)/2^{2/2}");
    FockAmp inv_sqrt2{0, 1, 0, 0, 1};
    CHECK(inv_sqrt2.str() == "(1 + 0i)/2^{1/2}");
    CHECK(FockAmp::zero().str() == "0");
}
