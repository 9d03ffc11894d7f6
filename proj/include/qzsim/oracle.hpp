// Copyright 2026 The qzsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "qzsim/gates.hpp"
#include "qzsim/store.hpp"

namespace qzsim {

constexpr uint32_t kOracleLimit = 24;

/// Dense reference state. Deliberately uses its own amplitude-update code
/// path so it can catch kernel bugs instead of mirroring them.
struct DenseState {
    uint32_t num_qubits = 0;
    std::vector<Amplitude> amplitudes;
};

DenseState make_basis_state(uint32_t num_qubits);

void apply_gate_dense(DenseState &state, const Gate &gate);

DenseState simulate_dense(const Circuit &circuit,
                          uint32_t limit = kOracleLimit);

double fidelity(const DenseState &a, const DenseState &b);
double fidelity(const DenseState &a, const ChunkStore &store);

double dense_norm(const DenseState &state);

} // namespace qzsim
