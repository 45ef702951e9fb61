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

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bmkit/bigint.hpp"
#include "bmkit/scheme.hpp"
#include "bmkit/stabilizer.hpp"

namespace bmkit {

// Success probability of a single physical Bell measurement, an exact
// rational in [0, 1].
struct BellProb {
    uint64_t num = 1, den = 2;

    static BellProb parse(const std::string &s);
    Rational rational() const {
        return Rational(num, den);
    }
};

// Success/fail bits, one per attempted Bell measurement along one decision
// path of a scheme.
using OutcomePattern = std::vector<bool>;

struct PatternLedgerEntry {
    OutcomePattern pattern;
    bool success;
    bool x_known, z_known;
};

struct ExactResult {
    Rational success_probability;
    uint64_t attempts = 0;  // attempts along every decision path
    std::vector<PatternLedgerEntry> ledger;  // filled only when requested
};

struct ExactOptions {
    uint64_t attempt_cap = 26;
    int workers = 1;
    bool with_ledger = false;
};

// Exact logical success probability by enumeration over physical-BM outcome
// patterns: feedforward schemes recurse over the decision tree, static
// schemes enumerate the flat pattern space with subtree collapsing.
ExactResult exact_success_probability(const Scheme &scheme, const BellProb &pb, const ExactOptions &opts = {});
ExactResult exact_success_probability(const StaticScheme &scheme, const BellProb &pb, const ExactOptions &opts = {});

// All-fail decision path: true iff the determination oracle reports at most
// one logical class known (and therefore the logical measurement fails).
bool necessity_check(const Scheme &scheme);
bool necessity_check(const StaticScheme &scheme);

enum class SurrogatePolicy {
    Require,  // throw when an attempted BM is outside the uniform-outcome envelope
    Count,    // record the violation and continue with the Bernoulli model
};

struct TrialOptions {
    std::optional<OutcomePattern> forced_pattern;  // BM success bits in attempt order
    SurrogatePolicy surrogate = SurrogatePolicy::Require;
};

struct TrialResult {
    std::optional<std::pair<int, int>> claimed;  // (l_x, l_z) or failure
    std::pair<int, int> truth;
    uint64_t surrogate_violations = 0;
    MeasurementRecord record;

    bool success() const {
        return claimed.has_value();
    }
    bool logical_error() const {
        return claimed && *claimed != truth;
    }
};

// One two-code tableau trial of a scheme with ground truth (l_x, l_z).
TrialResult run_trial(const TwoCodeScheme &scheme, int l_x, int l_z, const BellProb &pb, uint64_t seed,
                      const TrialOptions &opts = {});

struct MonteCarloResult {
    uint64_t trials = 0;
    uint64_t successes = 0;
    uint64_t logical_errors = 0;
    uint64_t surrogate_violations = 0;
    double estimate = 0, stderr_estimate = 0;
};

MonteCarloResult monte_carlo(const TwoCodeScheme &scheme, uint64_t trials, uint64_t seed, const BellProb &pb,
                             int workers = 1, SurrogatePolicy surrogate = SurrogatePolicy::Require);

}  // namespace bmkit
