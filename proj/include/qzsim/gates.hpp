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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qzsim/util.hpp"

namespace qzsim {

enum class GateKind : uint8_t {
    H,
    X,
    Y,
    Z,
    S,
    SDG,
    T,
    TDG,
    RX,
    RY,
    RZ,
    U1,
    U2,
    U3,
    CX,
    CZ,
    SWAP,
};

/// A parameterized standard gate. For two-qubit gates the first listed
/// qubit is the control (CX/CZ) and indexes the higher-order matrix bit.
struct Gate {
    GateKind kind;
    std::vector<uint32_t> qubits;
    std::vector<double> params;

    bool operator==(const Gate &) const = default;
};

struct Circuit {
    uint32_t num_qubits = 0;
    std::vector<Gate> gates;
};

uint32_t gate_arity(GateKind kind);
uint32_t gate_param_count(GateKind kind);
std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);

/// Unitary of a gate, row-major. dim is 2 for single-qubit kinds and 4 for
/// CX/CZ/SWAP; only the leading dim*dim entries of m are meaningful. For
/// dim 4 the row/column index is (first_qubit_bit << 1) | second_qubit_bit.
struct GateMatrix {
    uint32_t dim;
    std::array<Amplitude, 16> m;

    Amplitude at(uint32_t row, uint32_t col) const { return m[row * dim + col]; }
};

GateMatrix gate_matrix(const Gate &gate);

/// Conjugate transpose, used for inverse-circuit checks.
GateMatrix adjoint(const GateMatrix &mat);

/// Returns the list of invariant violations; empty means the circuit is valid.
std::vector<std::string> validate(const Circuit &circuit);

} // namespace qzsim
