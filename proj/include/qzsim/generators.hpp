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

namespace qzsim {

/// H(0) then CX(0, k) for k = 1..n-1.
Circuit make_ghz(uint32_t num_qubits);

/// Quantum Fourier transform with controlled phases decomposed into
/// {U1, CX} and final qubit-reversal swaps.
Circuit make_qft(uint32_t num_qubits);

/// Seeded random circuit over the full supported gate set.
Circuit make_random(uint32_t num_qubits, uint32_t depth, uint64_t seed);

} // namespace qzsim
