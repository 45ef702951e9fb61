#include <doctest.h>

#include <cmath>
#include <set>

#include "bmkit/rng.hpp"
#include "bmkit/stabilizer.hpp"

using namespace bmkit;

namespace {

std::set<std::string> generator_set(const StabilizerState &st) {
    std::set<std::string> out;
    for (const auto &g : st.generators()) {
        out.insert(g.op.str());
    }
    return out;
}

PauliOperator two_code(const std::string &left, const std::string &right) {
    return PauliOperator::parse(left + right);
}

}  // namespace

TEST_CASE("encoded Bell state construction") {
    StabilizerCode q = qpc(2, 2);
    StabilizerState st = StabilizerState::init_encoded_bell(q, q, 1, 1);
    CHECK(st.num_qubits() == 8);
    CHECK(st.generators().size() == 8);
    auto gens = generator_set(st);
    CHECK(gens.count("+XXIIXXII"));
    CHECK(gens.count("+IZIZIZIZ"));

    // Sign plumbing.
    StabilizerCode f = five_qubit();
    StabilizerState st2 = StabilizerState::init_encoded_bell(f, f, -1, 1);
    auto gens2 = generator_set(st2);
    CHECK(gens2.count("-XXXXXXXXXX"));
    CHECK(gens2.count("+ZZZZZZZZZZ"));

    // Generator independence.
    std::vector<PauliOperator> ops;
    for (const auto &g : st.generators()) {
        ops.push_back(g.op);
    }
    CHECK(symplectic_rank(ops) == 8);
}

TEST_CASE("classification of fresh, determined, and forbidden observables") {
    StabilizerCode q = qpc(2, 2);
    StabilizerState st = StabilizerState::init_encoded_bell(q, q, 1, 1);
    CHECK(st.classify(two_code("XIII", "IIII")).kind == Classification::Kind::Anticommuting);
    Classification c = st.classify(two_code("XXXX", "IIII"));
    CHECK(c.kind == Classification::Kind::Determined);
    CHECK(c.determined_sign == 1);
    CHECK(c.nu_rows.empty());
    PauliOperator bad = PauliOperator::parse("XIIIIIII");
    bad.set_phase_exp(1);
    CHECK_THROWS(st.classify(bad));
}

TEST_CASE("walkthrough: the three all-partial steps of the QPC(2,2) scheme") {
    StabilizerCode q = qpc(2, 2);
    StabilizerState st = StabilizerState::init_encoded_bell(q, q, 1, 1);

    // Span-equality oracle against the paper's listed generating sets (which
    // use different but equivalent logical representatives).
    auto same_group = [&](const std::vector<std::string> &listed) {
        SymplecticBasis ours(8), theirs(8);
        for (const auto &g : st.generators()) {
            ours.extend(g.op);
        }
        for (const auto &s : listed) {
            theirs.extend(PauliOperator::parse(s));
            if (!ours.contains(PauliOperator::parse(s))) {
                return false;
            }
        }
        for (const auto &g : st.generators()) {
            if (!theirs.contains(g.op)) {
                return false;
            }
        }
        return true;
    };

    st.measure(two_code("XIII", "IIII"), 1, nullptr);
    st.measure(two_code("IIII", "XIII"), 1, nullptr);
    auto s1 = generator_set(st);
    CHECK(s1 == std::set<std::string>{"+XXXXIIII", "+IIZZIIII", "+IIIIXXXX", "+IIIIIIZZ", "+XIIIIIII", "+IIIIXIII",
                                      "+XXIIXXII", "+IZIZIZIZ"});
    CHECK(same_group({"XXXXIIII", "IIZZIIII", "IIIIXXXX", "IIIIIIZZ", "XIIIIIII", "IIIIXIII", "XXIIXXII",
                      "IZZIIZZI"}));

    st.measure(two_code("IZII", "IIII"), 1, nullptr);
    st.measure(two_code("IIII", "IZII"), 1, nullptr);
    auto s2 = generator_set(st);
    CHECK(s2 == std::set<std::string>{"+IIZZIIII", "+IIIIIIZZ", "+XIIIIIII", "+IIIIXIII", "+IZIIIIII", "+IIIIIZII",
                                      "+IIXXIIXX", "+IZIZIZIZ"});
    CHECK(same_group({"IIZZIIII", "IIIIIIZZ", "XIIIIIII", "IIIIXIII", "IZIIIIII", "IIIIIZII", "IIXXIIXX",
                      "IZZIIZZI"}));

    st.measure(two_code("IIXI", "IIII"), 1, nullptr);
    st.measure(two_code("IIII", "IIXI"), 1, nullptr);
    auto s3 = generator_set(st);
    CHECK(s3 == std::set<std::string>{"+XIIIIIII", "+IIIIXIII", "+IZIIIIII", "+IIIIIZII", "+IIXIIIII", "+IIIIIIXI",
                                      "+IIXXIIXX", "+IZIZIZIZ"});
    CHECK(same_group({"XIIIIIII", "IIIIXIII", "IZIIIIII", "IIIIIZII", "IIXIIIII", "IIIIIIXI", "IIXXIIXX",
                      "IZIZIZIZ"}));

    CHECK(st.classify(two_code("IIIZ", "IIII")).kind == Classification::Kind::Forbidden);
    CHECK_THROWS(st.measure(two_code("IIIZ", "IIII"), 1, nullptr));

    st.measure(two_code("IIIZ", "IIII"), 1, nullptr, true);
    int logical_tags = 0;
    for (const auto &g : st.generators()) {
        if (g.origin == GenOrigin::LogicalX || g.origin == GenOrigin::LogicalZ || g.origin == GenOrigin::LogicalY) {
            logical_tags++;
        }
    }
    CHECK(logical_tags == 1);
    LogicalInference inf = infer_logicals(st.record(), q, q);
    CHECK(inf.known_count() <= 1);
    CHECK_FALSE(inf.bell_values().has_value());
}

TEST_CASE("measurement of a determined observable keeps the state and reports the sign") {
    StabilizerCode q = qpc(2, 2);
    StabilizerState st = StabilizerState::init_encoded_bell(q, q, 1, 1);
    auto before = generator_set(st);
    int out = st.measure(two_code("XXXX", "IIII"), std::nullopt, nullptr);
    CHECK(out == 1);
    CHECK(generator_set(st) == before);
    CHECK_THROWS(st.measure(two_code("XXXX", "IIII"), -1, nullptr));
}

TEST_CASE("a determined transversal observable completes a logical measurement") {
    StabilizerCode q = qpc(2, 2);
    StabilizerState st = StabilizerState::init_encoded_bell(q, q, -1, 1);
    st.measure(two_code("XIII", "XIII"), 1, nullptr);
    Classification c = st.classify(two_code("IXII", "IXII"));
    CHECK(c.kind == Classification::Kind::Determined);
    CHECK(c.logical_determined());
    CHECK(c.determined_sign == -1);  // m1 m2 = l_x with m1 forced +1
}

TEST_CASE("inference from the success-on-pair-1 record") {
    StabilizerCode q = qpc(2, 2);
    MeasurementRecord rec;
    auto add = [&](const std::string &s, int outcome) {
        rec.items.push_back({PauliOperator::parse(s), outcome, RecordKind::SingleQubit});
    };
    add("XIIIXIII", 1);
    add("ZIIIZIII", 1);
    add("IXIIIXII", 1);
    add("IIIZIIIZ", 1);
    LogicalInference inf = infer_logicals(rec, q, q);
    REQUIRE(inf.x.has_value());
    REQUIRE(inf.z.has_value());
    CHECK(*inf.x == 1);
    CHECK(*inf.z == 1);
    auto bell = inf.bell_values();
    REQUIRE(bell.has_value());
    CHECK(*bell == std::pair{1, 1});

    rec.items[0].outcome = -1;
    LogicalInference inf2 = infer_logicals(rec, q, q);
    CHECK(*inf2.x == -1);
    CHECK(*inf2.z == 1);

    MeasurementRecord empty;
    LogicalInference inf3 = infer_logicals(empty, q, q);
    CHECK(inf3.known_count() == 0);
}

TEST_CASE("generators stay commuting and independent under random allowed measurements") {
    StabilizerCode f = five_qubit();
    Rng rng(99);
    for (int trial = 0; trial < 20; trial++) {
        StabilizerState st = StabilizerState::init_encoded_bell(f, f, rng.pm_one(), rng.pm_one());
        std::vector<uint32_t> qubits;
        for (uint32_t q = 0; q < 10; q++) {
            qubits.push_back(q);
        }
        for (uint32_t i = 9; i > 0; i--) {
            std::swap(qubits[i], qubits[rng.below(i + 1)]);
        }
        for (uint32_t q : qubits) {
            PauliLetter w = static_cast<PauliLetter>(1 + rng.below(3));
            PauliOperator obs = PauliOperator::single(10, q, w);
            auto c = st.classify(obs);
            if (c.kind == Classification::Kind::Forbidden) {
                continue;
            }
            st.measure(obs, std::nullopt, &rng);
            std::vector<PauliOperator> ops;
            for (const auto &g : st.generators()) {
                ops.push_back(g.op);
            }
            CHECK(symplectic_rank(ops) == 10);
            for (size_t a = 0; a < ops.size(); a++) {
                for (size_t b = a + 1; b < ops.size(); b++) {
                    CHECK(PauliOperator::commutes(ops[a], ops[b]));
                }
            }
        }
    }
}

TEST_CASE("anticommuting outcomes are uniform over sampled trials") {
    StabilizerCode q = qpc(2, 2);
    Rng rng(4242);
    int plus = 0;
    const int trials = 20000;
    for (int t = 0; t < trials; t++) {
        StabilizerState st = StabilizerState::init_encoded_bell(q, q, 1, 1);
        if (st.measure(two_code("XIII", "IIII"), std::nullopt, &rng) > 0) {
            plus++;
        }
    }
    double freq = static_cast<double>(plus) / trials;
    double sigma = 0.5 / std::sqrt(static_cast<double>(trials));
    CHECK(std::abs(freq - 0.5) < 4 * sigma);
}

TEST_CASE("simulator consistency: inferred values match the state view") {
    StabilizerCode f = five_qubit();
    Rng rng(31337);
    for (int trial = 0; trial < 50; trial++) {
        int lx = rng.pm_one(), lz = rng.pm_one();
        StabilizerState st = StabilizerState::init_encoded_bell(f, f, lx, lz);
        for (uint32_t q = 0; q < 5; q++) {
            st.measure(PauliOperator::single(10, q, PauliLetter::Y), std::nullopt, &rng, true);
            st.measure(PauliOperator::single(10, 5 + q, PauliLetter::Y), std::nullopt, &rng, true);
        }
        LogicalInference inf = infer_logicals(st.record(), f, f);
        if (inf.x) {
            CHECK(*inf.x == lx);
        }
        if (inf.z) {
            CHECK(*inf.z == lz);
        }
        if (inf.y) {
            CHECK(*inf.y == -lx * lz);
        }
    }
}

TEST_CASE("state dump carries origin tags") {
    StabilizerCode q = qpc(2, 2);
    StabilizerState st = StabilizerState::init_encoded_bell(q, q, 1, 1);
    std::string dump = st.dump(4);
    CHECK(dump.find("[code]") != std::string::npos);
    CHECK(dump.find("[logical-x]") != std::string::npos);
    CHECK(dump.find("+XXII XXII") != std::string::npos);
}

TEST_CASE("generator multiset keeps the Lem-2 normal form under allowed measurements") {
    // After any allowed sequence: code-tagged generators are products of the
    // original code stabilizers, measured-tagged ones are the recorded
    // observables, and the two logical tags keep their phase-stripped cosets.
    StabilizerCode f = five_qubit();
    Rng rng(2024);
    for (int trial = 0; trial < 10; trial++) {
        StabilizerState st = StabilizerState::init_encoded_bell(f, f, rng.pm_one(), rng.pm_one());
        SymplecticBasis code_span(10);
        for (const auto &g : f.generators) {
            code_span.extend(g.embed(10, 0));
            code_span.extend(g.embed(10, 5));
        }
        std::vector<uint32_t> fresh;
        for (uint32_t q = 0; q < 10; q++) {
            fresh.push_back(q);
        }
        for (int step = 0; step < 8; step++) {
            uint32_t pick = static_cast<uint32_t>(rng.below(fresh.size()));
            uint32_t q = fresh[pick];
            PauliOperator obs = PauliOperator::single(10, q, static_cast<PauliLetter>(1 + rng.below(3)));
            if (st.classify(obs).kind == Classification::Kind::Forbidden) {
                continue;
            }
            st.measure(obs, std::nullopt, &rng);
            fresh.erase(fresh.begin() + pick);
        }
        int logical_tags = 0;
        std::set<std::string> recorded;
        for (const auto &item : st.record().items) {
            recorded.insert(item.observable.str());
        }
        for (const auto &g : st.generators()) {
            switch (g.origin) {
                case GenOrigin::CodeStabilizer:
                    CHECK(code_span.contains(g.op));
                    break;
                case GenOrigin::Measured: {
                    PauliOperator unsigned_op = g.op;
                    unsigned_op.set_phase_exp(0);
                    CHECK(recorded.count(unsigned_op.str()));
                    break;
                }
                case GenOrigin::LogicalX: {
                    logical_tags++;
                    PauliOperator xx = PauliOperator::multiply_effective(f.logical_x_rep.embed(10, 0),
                                                                         f.logical_x_rep.embed(10, 5));
                    CHECK(code_span.contains(PauliOperator::multiply_effective(g.op, xx)));
                    break;
                }
                case GenOrigin::LogicalZ: {
                    logical_tags++;
                    PauliOperator zz = PauliOperator::multiply_effective(f.logical_z_rep.embed(10, 0),
                                                                         f.logical_z_rep.embed(10, 5));
                    CHECK(code_span.contains(PauliOperator::multiply_effective(g.op, zz)));
                    break;
                }
                case GenOrigin::LogicalY:
                    logical_tags++;
                    break;
            }
        }
        CHECK(logical_tags == 2);
    }
}
