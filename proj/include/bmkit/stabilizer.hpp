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

#include <optional>
#include <string>
#include <vector>

#include "bmkit/code.hpp"
#include "bmkit/pauli.hpp"
#include "bmkit/rng.hpp"

namespace bmkit {

enum class GenOrigin : uint8_t { CodeStabilizer, Measured, LogicalX, LogicalZ, LogicalY };

std::string origin_name(GenOrigin o);

enum class RecordKind : uint8_t { SingleQubit, TransversalProduct, BellSuccess };

struct RecordedMeasurement {
    PauliOperator observable;  // Hermitian, sign +1; the outcome is kept separately
    int outcome;               // +1 or -1
    RecordKind kind;

    PauliOperator signed_observable() const {
        PauliOperator p = observable;
        if (outcome < 0) {
            p.negate();
        }
        return p;
    }
};

struct MeasurementRecord {
    std::vector<RecordedMeasurement> items;
};

struct Classification {
    enum class Kind { Anticommuting, Determined, Forbidden } kind;
    // Anticommuting: index of the first anticommuting non-logical generator.
    int witness = -1;
    // Determined: exact outcome sign and the factor split of the decomposition
    // by generator origin (code stabilizers, measured observables, logicals).
    int determined_sign = 0;
    std::vector<uint32_t> gamma_rows, mu_rows, nu_rows;

    bool logical_determined() const {
        return kind == Kind::Determined && !nu_rows.empty();
    }
};

struct LogicalInference {
    std::optional<int> x, y, z;  // values of l_x, l_y, l_z where known

    int known_count() const {
        return (x ? 1 : 0) + (y ? 1 : 0) + (z ? 1 : 0);
    }
    // Any two of the three determine the full Bell information.
    std::optional<std::pair<int, int>> bell_values() const;
};

// Stabilizer state of an encoded Bell mixture, tracked through commuting Pauli
// measurements. The generator list always holds n independent, pairwise
// commuting generators; the logical assignment is the simulator-only ground
// truth ("state view") and is never consulted by span-based inference.
class StabilizerState {
  public:
    struct Generator {
        PauliOperator op;
        GenOrigin origin;
    };

    static StabilizerState init_encoded_bell(const StabilizerCode &code1, const StabilizerCode &code2, int l_x,
                                             int l_z);

    uint32_t num_qubits() const {
        return n_;
    }
    const std::vector<Generator> &generators() const {
        return gens_;
    }
    std::pair<int, int> logical_assignment() const {
        return {l_x_, l_z_};
    }

    Classification classify(const PauliOperator &obs) const;

    // Measures obs. The outcome is `forced` when given, sampled otherwise.
    // Forbidden observables are rejected unless allow_forbidden is set.
    int measure(const PauliOperator &obs, std::optional<int> forced, Rng *rng, bool allow_forbidden = false);

    const MeasurementRecord &record() const {
        return record_;
    }

    // Generator dump, one line per generator: signed literal plus origin tag.
    std::string dump(std::optional<uint32_t> split = std::nullopt) const;

  private:
    uint32_t n_ = 0;
    int l_x_ = 0, l_z_ = 0;
    std::vector<Generator> gens_;
    MeasurementRecord record_;
};

// Span-based inference of the logical Bell variables from a measurement record
// ("information view"): a logical class is known iff some representative lies,
// phase-stripped, in the span of the recorded observables and both codes'
// stabilizer generators. Signs are reconstructed by exact multiplication.
LogicalInference infer_logicals(const MeasurementRecord &record, const StabilizerCode &code1,
                                const StabilizerCode &code2);

}  // namespace bmkit
