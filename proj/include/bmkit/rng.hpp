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

#include <cstdint>

namespace bmkit {

// splitmix64 stream. Per-trial streams are derived from (master seed, trial
// index) so results are reproducible across any worker layout.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    static Rng for_trial(uint64_t master_seed, uint64_t trial_index) {
        Rng mix(master_seed ^ (0x9e3779b97f4a7c15ULL * (trial_index + 1)));
        return Rng(mix.next());
    }

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (~bound + 1) % bound;  // 2^64 mod bound
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) {
                return r % bound;
            }
        }
    }

    // Exact Bernoulli(p/q).
    bool bernoulli(uint64_t p, uint64_t q) {
        return below(q) < p;
    }

    int pm_one() {
        return (next() & 1) ? 1 : -1;
    }

  private:
    uint64_t state_;
};

}  // namespace bmkit
