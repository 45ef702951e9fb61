// Acceptance suite: every shipped claim exercised end to end, one verdict
// line per criterion. Exits nonzero when anything fails.

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <vector>

#include "bmkit/engine.hpp"
#include "bmkit/fock.hpp"
#include "bmkit/verifier.hpp"
#include "builtins.hpp"

using namespace bmkit;

namespace {

int failures = 0;
std::chrono::steady_clock::time_point t0;

void start() {
    t0 = std::chrono::steady_clock::now();
}

void verdict(int criterion, bool ok, const std::string &what) {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << " - " << what << " [" << secs << "s]";
    std::cout << line.str() << std::endl;
    if (!ok) {
        failures++;
    }
}

Rational one_minus_pow2(uint32_t k) {
    BigUint d = BigUint::pow(BigUint(2), k);
    return Rational(d - BigUint(1), d);
}

Rational exact_at(const Scheme &s, const BellProb &pb, int workers = 1) {
    ExactOptions opts;
    opts.workers = workers;
    return exact_success_probability(s, pb, opts).success_probability;
}

Rational exact_at(const StaticScheme &s, const BellProb &pb, int workers = 1) {
    ExactOptions opts;
    opts.workers = workers;
    return exact_success_probability(s, pb, opts).success_probability;
}

const BellProb kHalf{1, 2};

}  // namespace

int main() {
    // 1. Bound reproduction.
    start();
    {
        bool ok = bm_bound(4, 4, kHalf) == Rational(15, 16);
        for (uint32_t n = 1; n <= 25 && ok; n++) {
            ok = bm_bound(n, n, kHalf) == one_minus_pow2(n);
        }
        verdict(1, ok, "bound(4,4,1/2) = 15/16 and bound(n,n,1/2) = 1-2^-n for n <= 25");
    }

    // 2. Optimal-scheme exact probabilities at P_B = 1/2.
    start();
    {
        bool ok = exact_at(build_optimal_qpc(2, 2).scheme, kHalf) == Rational(15, 16);
        for (int r = 1; r <= 12 && ok; r++) {
            for (int m = 1; r * m <= 12 && ok; m++) {
                ok = exact_at(build_optimal_qpc(r, m).scheme, kHalf) ==
                     one_minus_pow2(static_cast<uint32_t>(r * m));
            }
        }
        ok = ok && exact_at(build_optimal_five_qubit().scheme, kHalf) == Rational(31, 32);
        ok = ok && exact_at(build_optimal_steane().scheme, kHalf) == Rational(127, 128);
        ok = ok && exact_at(build_optimal_standard_surface(2, 2).scheme, kHalf) == Rational(31, 32);
        ok = ok && exact_at(build_optimal_rotated_surface(3, 3).scheme, kHalf) == one_minus_pow2(9);
        ok = ok && exact_at(build_optimal_tree({2, 2}).scheme, kHalf) == Rational(63, 64);
        verdict(2, ok, "optimal schemes: QPC (rm <= 12), five-qubit, Steane, standard (2,2), rotated 3x3, tree (2,2)");
    }

    // 3. Sufficient conditions and heuristics for every built-in scheme.
    start();
    {
        bool ok = true;
        std::vector<BuiltScheme> suite;
        for (int r = 1; r <= 4; r++) {
            for (int m = 1; m <= 4; m++) {
                suite.push_back(build_optimal_qpc(r, m));
            }
        }
        suite.push_back(build_optimal_five_qubit());
        for (int r = 2; r <= 3; r++) {
            for (int m = 2; m <= 3; m++) {
                suite.push_back(build_optimal_standard_surface(r, m));
            }
        }
        for (int d = 2; d <= 5; d++) {
            suite.push_back(build_optimal_rotated_surface(d, d));
        }
        suite.push_back(build_optimal_rotated_surface(3, 4));
        suite.push_back(build_optimal_tree({2, 2}));
        suite.push_back(build_optimal_tree({2, 2, 2}));
        suite.push_back(build_optimal_tree({3, 2}));
        suite.push_back(build_optimal_steane());
        for (const auto &b : suite) {
            ConditionReport rep = check_conditions(b.scheme, b.cseq);
            if (!rep.all_passed()) {
                std::cout << "  [" << b.scheme.name << "] " << rep.text();
                ok = false;
            }
            if (!heuristic_no_premature_logical(b.scheme) || !heuristic_no_almost_stabilizer(b.scheme)) {
                std::cout << "  [" << b.scheme.name << "] heuristic violated\n";
                ok = false;
            }
        }
        verdict(3, ok, "five sufficient conditions plus both design heuristics across the scheme suite");
    }

    // 4. Static baselines.
    start();
    {
        bool ok = exact_at(build_static_simple_rotated(5, 5), kHalf, 2) == Rational(6625, 8192);
        ok = ok && exact_at(build_static_optimized_rotated(5, 5), kHalf) == Rational(2047, 2048);
        ok = ok && wz_weight(5, 5) == 11;
        for (int r = 2; r <= 9 && ok; r++) {
            for (int m = 2; m <= 9 && ok; m++) {
                ok = optimized_static_string(r, m).size() == static_cast<size_t>(wz_weight(r, m));
            }
        }
        for (const std::vector<int> &branching : {std::vector<int>{2, 2}, {3, 2}, {4, 3}}) {
            ok = ok && exact_at(build_static_tree(branching), kHalf) ==
                           one_minus_pow2(static_cast<uint32_t>(branching[0]));
        }
        for (int r = 2; r <= 4 && ok; r++) {
            for (int m = 2; m <= 4 && ok; m++) {
                ok = exact_at(build_static_standard_string(r, m), kHalf, 2) ==
                     one_minus_pow2(static_cast<uint32_t>(2 * std::max(r, m) - 1));
            }
        }
        verdict(4, ok,
                "simple static (5,5) = 6625/8192, optimized (5,5) = 2047/2048, W_Z formula vs construction "
                "(2..9), static trees, standard-surface string baselines");
    }

    // 5. Three-scheme comparison data up to d = 5.
    start();
    {
        bool ok = true;
        std::cout << "  d,simple,optimized,feedforward\n";
        for (int d = 2; d <= 5; d++) {
            ExactOptions opts;
            opts.workers = 4;
            Rational simple =
                exact_success_probability(build_static_simple_rotated(d, d), kHalf, opts).success_probability;
            Rational optimized =
                exact_success_probability(build_static_optimized_rotated(d, d), kHalf, opts).success_probability;
            Rational ff = bm_bound(static_cast<uint32_t>(d * d), static_cast<uint32_t>(d * d), kHalf);
            uint32_t w = static_cast<uint32_t>(wz_weight(d, d));
            ok = ok && optimized == bm_bound(w, w, kHalf);
            ok = ok && ff == one_minus_pow2(static_cast<uint32_t>(d * d));
            if (d == 5) {
                ok = ok && simple == Rational(6625, 8192);
            }
            std::cout << "  " << d << "," << simple.to_string() << "," << optimized.to_string() << ","
                      << ff.to_string() << "\n";
        }
        verdict(5, ok, "comparison rows for d = 2..5 with the d = 5 enumeration at four workers");
    }

    // 6. Monte-Carlo consistency across the full built-in suite.
    start();
    {
        bool ok = true;
        uint64_t trials = 100000;
        struct Entry {
            TwoCodeScheme two;
            Rational exact;
            bool is_static;
        };
        std::vector<Entry> entries;
        for (const auto &b : bmkit_tests::builtin_optimal_schemes()) {
            if (b.scheme.order.size() > 26) {
                continue;
            }
            for (BellProb pb : {BellProb{1, 4}, kHalf, BellProb{3, 4}}) {
                entries.push_back({lift_to_two_code(b.scheme), exact_at(b.scheme, pb), false});
                entries.back().two.name += "@" + std::to_string(pb.num) + "/" + std::to_string(pb.den);
            }
        }
        for (const auto &s : bmkit_tests::builtin_static_schemes()) {
            for (BellProb pb : {BellProb{1, 4}, kHalf, BellProb{3, 4}}) {
                entries.push_back({lift_to_two_code(s), exact_at(s, pb, 2), true});
                entries.back().two.name += "@" + std::to_string(pb.num) + "/" + std::to_string(pb.den);
            }
        }
        size_t idx = 0;
        for (auto &e : entries) {
            BellProb pb{1, 2};
            auto at = e.two.name.rfind('@');
            std::string pbs = e.two.name.substr(at + 1);
            pb.num = static_cast<uint64_t>(pbs[0] - '0');
            pb.den = static_cast<uint64_t>(pbs[2] - '0');
            auto policy = e.is_static ? SurrogatePolicy::Count : SurrogatePolicy::Require;
            MonteCarloResult mc = monte_carlo(e.two, trials, 1729 + idx++, pb, 2, policy);
            double p = e.exact.to_double();
            double sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
            double diff = std::abs(mc.estimate - p);
            if (mc.logical_errors != 0 || diff > 4 * sigma + 1e-12) {
                std::cout << "  [" << e.two.name << "] mc " << mc.estimate << " vs exact " << e.exact.to_double()
                          << " (stderr " << mc.stderr_estimate << ", logical errors " << mc.logical_errors
                          << ")\n";
                ok = false;
            }
        }
        verdict(6, ok, "10^5 trials within four sigma of the exact value, zero logical errors, every scheme and "
                       "P_B in {1/4, 1/2, 3/4}");
    }

    // 7. Necessity of a blind success.
    start();
    {
        bool ok = true;
        for (const auto &b : bmkit_tests::builtin_optimal_schemes()) {
            ok = ok && necessity_check(b.scheme);
        }
        for (const auto &s : bmkit_tests::builtin_static_schemes()) {
            ok = ok && necessity_check(s);
        }
        ok = ok && necessity_check(build_optimal_qpc(1, 1).scheme);
        verdict(7, ok, "the all-fail pattern leaves at most one logical class known for every scheme");
    }

    // 8. Physical analyzer layer.
    start();
    {
        BellAnalyzer analyzer;
        const FockAmp i_half{0, 0, 1, 0, 1};
        const FockAmp i_sqrt2{0, 0, 0, 1, 1};
        const FockAmp inv_sqrt2{0, 1, 0, 0, 1};
        auto amp = [&](int bell, FockPattern p) {
            auto it = analyzer.outputs()[static_cast<size_t>(bell)].amps.find(p);
            return it == analyzer.outputs()[static_cast<size_t>(bell)].amps.end() ? FockAmp::zero() : it->second;
        };
        bool ok = amp(0, {2, 0, 0, 0}) == i_half && amp(0, {0, 2, 0, 0}) == i_half &&
                  amp(1, {2, 0, 0, 0}) == i_half && amp(2, {1, 1, 0, 0}) == i_sqrt2 &&
                  amp(3, {1, 0, 0, 1}) == inv_sqrt2;
        // The reference table's Psi- row carries a physically irrelevant
        // global phase i that this convention does not produce.
        FockAmp neg = inv_sqrt2;
        neg.a = -neg.a;
        neg.b = -neg.b;
        ok = ok && amp(3, {0, 1, 1, 0}) == neg;
        ok = ok && analyzer.success_probability() == Rational(1, 2);
        for (const auto &pattern : BellAnalyzer::two_photon_patterns()) {
            OutcomeClass oc = analyzer.classify_pattern(pattern);
            if (oc.kind != OutcomeClass::Kind::Unambiguous) {
                continue;
            }
            for (int j = 0; j < 4; j++) {
                if (j != static_cast<int>(oc.bell) && !amp(j, pattern).is_zero()) {
                    ok = false;
                }
            }
        }
        verdict(8, ok, "analyzer amplitude table (Psi- up to its global phase), P_B = 1/2, perfect specificity "
                       "over all ten patterns");
    }

    // 9. Picture equivalence under exhaustive forced patterns.
    start();
    {
        bool ok = true;
        for (const BuiltScheme &b : {build_optimal_qpc(2, 2), build_optimal_five_qubit()}) {
            uint32_t n = static_cast<uint32_t>(b.scheme.order.size());
            ExactOptions opts;
            opts.with_ledger = true;
            ExactResult res = exact_success_probability(b.scheme, kHalf, opts);
            TwoCodeScheme two = lift_to_two_code(b.scheme);
            for (const auto &entry : res.ledger) {
                TrialOptions topts;
                topts.forced_pattern = entry.pattern;
                TrialResult r = run_trial(two, 1, -1, kHalf, 99 + n, topts);
                if (r.success() != entry.success || r.logical_error()) {
                    ok = false;
                }
            }
            if (res.ledger.size() != (uint64_t(1) << n)) {
                ok = false;
            }
        }
        verdict(9, ok, "single-code determination agrees with two-code tableau trials on all 16 + 32 patterns");
    }

    std::cout << (failures ? "ACCEPTANCE: FAIL" : "ACCEPTANCE: PASS") << std::endl;
    return failures ? 1 : 0;
}
