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

#include <span>

#include "qzsim/gates.hpp"

namespace qzsim {

/// Applies a single-qubit matrix to buffer bit `bit` over the pair-index
/// range [pair_begin, pair_end); the full range is [0, count/2).
void apply_single_qubit(std::span<Amplitude> buffer, uint32_t bit,
                        const GateMatrix &mat, uint64_t pair_begin,
                        uint64_t pair_end);

/// Applies a two-qubit matrix; bit0 is the gate's first listed qubit (the
/// higher-order matrix bit). Group-index range within [0, count/4).
void apply_two_qubit(std::span<Amplitude> buffer, uint32_t bit0, uint32_t bit1,
                     const GateMatrix &mat, uint64_t group_begin,
                     uint64_t group_end);

/// Applies one gate (already remapped to buffer bits) over the whole buffer.
void apply_gate(std::span<Amplitude> buffer, const Gate &gate);

/// Applies a gate list in order over the whole buffer, single-threaded.
void apply_gates(std::span<Amplitude> buffer, std::span<const Gate> gates);

} // namespace qzsim
