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

#include <optional>
#include <string>

#include "qzsim/gates.hpp"

namespace qzsim {

class PlanError : public Error {
  public:
    using Error::Error;
};

/// One maximal consecutive gate run whose high qubits (>= c) fit the device
/// window. The buffer layout maps qubit q -> q for q < c and
/// high_set[r] -> c + r.
struct Stage {
    std::vector<Gate> gates;
    std::vector<size_t> gate_indices; // positions in the original circuit
    std::vector<uint32_t> high_set;   // sorted, padded to min(m-c, n-c)

    std::optional<uint32_t> buffer_bit(uint32_t qubit, uint32_t chunk_qubits) const;
};

struct ExecutionPlan {
    uint32_t num_qubits = 0;
    uint32_t chunk_qubits = 0; // c
    uint32_t batch_qubits = 0; // m; the device window holds 2^m amplitudes
    std::vector<Stage> stages;
};

/// Greedy left-to-right partition: a gate joins the current stage while the
/// union of stage high qubits stays within m - c; otherwise the stage closes
/// (and is padded to fill the window) and a new one starts.
ExecutionPlan plan(const Circuit &circuit, uint32_t chunk_qubits,
                   uint32_t batch_qubits);

/// The 2^|S| chunks co-resident on the device for one free-bit assignment.
/// chunk_indices are ordered by ascending S-bit pattern; member j's
/// amplitudes occupy buffer positions [j * 2^c, (j + 1) * 2^c), preserving
/// in-chunk offsets.
struct BatchDescriptor {
    uint64_t batch_number = 0;
    std::vector<uint64_t> chunk_indices;
};

uint64_t batch_count(const Stage &stage, uint32_t num_qubits,
                     uint32_t chunk_qubits);

BatchDescriptor make_batch(const Stage &stage, uint32_t num_qubits,
                           uint32_t chunk_qubits, uint64_t batch_number);

/// Rewrites gate qubits to buffer bits via the stage layout.
Gate remap_gate(const Gate &gate, const Stage &stage, uint32_t chunk_qubits);

/// Stage table (gate ranges, high sets, batch counts) for `--explain`.
std::string describe_plan(const ExecutionPlan &plan);

} // namespace qzsim
