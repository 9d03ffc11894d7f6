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
#include "qzsim/kernels.hpp"

#include <algorithm>

namespace qzsim {

void apply_single_qubit(std::span<Amplitude> buffer, uint32_t bit,
                        const GateMatrix &mat, uint64_t pair_begin,
                        uint64_t pair_end) {
    const uint64_t stride = uint64_t(1) << bit;
    const Amplitude m00 = mat.m[0], m01 = mat.m[1], m10 = mat.m[2],
                    m11 = mat.m[3];
    for (uint64_t p = pair_begin; p < pair_end; ++p) {
        uint64_t i = insert_zero_bit(p, bit);
        uint64_t j = i | stride;
        Amplitude a = buffer[i];
        Amplitude b = buffer[j];
        buffer[i] = m00 * a + m01 * b;
        buffer[j] = m10 * a + m11 * b;
    }
}

void apply_two_qubit(std::span<Amplitude> buffer, uint32_t bit0, uint32_t bit1,
                     const GateMatrix &mat, uint64_t group_begin,
                     uint64_t group_end) {
    const uint32_t lo = std::min(bit0, bit1);
    const uint32_t hi = std::max(bit0, bit1);
    const uint64_t s0 = uint64_t(1) << bit0; // first listed qubit: matrix bit 1
    const uint64_t s1 = uint64_t(1) << bit1;
    for (uint64_t g = group_begin; g < group_end; ++g) {
        uint64_t base = insert_zero_bit(insert_zero_bit(g, lo), hi);
        const uint64_t idx[4] = {base, base | s1, base | s0, base | s0 | s1};
        Amplitude in[4];
        for (int k = 0; k < 4; ++k) in[k] = buffer[idx[k]];
        for (int r = 0; r < 4; ++r) {
            Amplitude acc = mat.m[r * 4 + 0] * in[0] + mat.m[r * 4 + 1] * in[1] +
                            mat.m[r * 4 + 2] * in[2] + mat.m[r * 4 + 3] * in[3];
            buffer[idx[r]] = acc;
        }
    }
}

void apply_gate(std::span<Amplitude> buffer, const Gate &gate) {
    GateMatrix mat = gate_matrix(gate);
    if (mat.dim == 2) {
        apply_single_qubit(buffer, gate.qubits[0], mat, 0, buffer.size() / 2);
    } else {
        apply_two_qubit(buffer, gate.qubits[0], gate.qubits[1], mat, 0,
                        buffer.size() / 4);
    }
}

void apply_gates(std::span<Amplitude> buffer, std::span<const Gate> gates) {
    for (const Gate &g : gates) apply_gate(buffer, g);
}

} // namespace qzsim
