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
#include "qzsim/gates.hpp"

#include <cmath>
#include <unordered_map>

namespace qzsim {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490;
const Amplitude kI{0.0, 1.0};
} // namespace

uint32_t gate_arity(GateKind kind) {
    switch (kind) {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::SWAP:
        return 2;
    default:
        return 1;
    }
}

uint32_t gate_param_count(GateKind kind) {
    switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::U1:
        return 1;
    case GateKind::U2:
        return 2;
    case GateKind::U3:
        return 3;
    default:
        return 0;
    }
}

std::string_view gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::S: return "s";
    case GateKind::SDG: return "sdg";
    case GateKind::T: return "t";
    case GateKind::TDG: return "tdg";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::U1: return "u1";
    case GateKind::U2: return "u2";
    case GateKind::U3: return "u3";
    case GateKind::CX: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::SWAP: return "swap";
    }
    return "?";
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    static const std::unordered_map<std::string_view, GateKind> table = {
        {"h", GateKind::H},     {"x", GateKind::X},
        {"y", GateKind::Y},     {"z", GateKind::Z},
        {"s", GateKind::S},     {"sdg", GateKind::SDG},
        {"t", GateKind::T},     {"tdg", GateKind::TDG},
        {"rx", GateKind::RX},   {"ry", GateKind::RY},
        {"rz", GateKind::RZ},   {"u1", GateKind::U1},
        {"u2", GateKind::U2},   {"u3", GateKind::U3},
        {"cx", GateKind::CX},   {"cz", GateKind::CZ},
        {"swap", GateKind::SWAP},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

namespace {

GateMatrix make2(Amplitude a, Amplitude b, Amplitude c, Amplitude d) {
    GateMatrix mat{};
    mat.dim = 2;
    mat.m[0] = a;
    mat.m[1] = b;
    mat.m[2] = c;
    mat.m[3] = d;
    return mat;
}

GateMatrix u3_matrix(double theta, double phi, double lambda) {
    double ct = std::cos(theta / 2.0);
    double st = std::sin(theta / 2.0);
    return make2(ct, -std::exp(kI * lambda) * st, std::exp(kI * phi) * st,
                 std::exp(kI * (phi + lambda)) * ct);
}

} // namespace

GateMatrix gate_matrix(const Gate &gate) {
    switch (gate.kind) {
    case GateKind::H:
        return make2(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
    case GateKind::X:
        return make2(0, 1, 1, 0);
    case GateKind::Y:
        return make2(0, -kI, kI, 0);
    case GateKind::Z:
        return make2(1, 0, 0, -1);
    case GateKind::S:
        return make2(1, 0, 0, kI);
    case GateKind::SDG:
        return make2(1, 0, 0, -kI);
    case GateKind::T:
        return make2(1, 0, 0, std::exp(kI * (M_PI / 4.0)));
    case GateKind::TDG:
        return make2(1, 0, 0, std::exp(-kI * (M_PI / 4.0)));
    case GateKind::RX: {
        double h = gate.params.at(0) / 2.0;
        return make2(std::cos(h), -kI * std::sin(h), -kI * std::sin(h),
                     std::cos(h));
    }
    case GateKind::RY: {
        double h = gate.params.at(0) / 2.0;
        return make2(std::cos(h), -std::sin(h), std::sin(h), std::cos(h));
    }
    case GateKind::RZ: {
        double h = gate.params.at(0) / 2.0;
        return make2(std::exp(-kI * h), 0, 0, std::exp(kI * h));
    }
    case GateKind::U1:
        return make2(1, 0, 0, std::exp(kI * gate.params.at(0)));
    case GateKind::U2:
        return u3_matrix(M_PI / 2.0, gate.params.at(0), gate.params.at(1));
    case GateKind::U3:
        return u3_matrix(gate.params.at(0), gate.params.at(1),
                         gate.params.at(2));
    case GateKind::CX: {
        // Basis order |control, target>.
        GateMatrix mat{};
        mat.dim = 4;
        mat.m[0 * 4 + 0] = 1;
        mat.m[1 * 4 + 1] = 1;
        mat.m[2 * 4 + 3] = 1;
        mat.m[3 * 4 + 2] = 1;
        return mat;
    }
    case GateKind::CZ: {
        GateMatrix mat{};
        mat.dim = 4;
        mat.m[0 * 4 + 0] = 1;
        mat.m[1 * 4 + 1] = 1;
        mat.m[2 * 4 + 2] = 1;
        mat.m[3 * 4 + 3] = -1;
        return mat;
    }
    case GateKind::SWAP: {
        GateMatrix mat{};
        mat.dim = 4;
        mat.m[0 * 4 + 0] = 1;
        mat.m[1 * 4 + 2] = 1;
        mat.m[2 * 4 + 1] = 1;
        mat.m[3 * 4 + 3] = 1;
        return mat;
    }
    }
    throw Error("unknown gate kind");
}

GateMatrix adjoint(const GateMatrix &mat) {
    GateMatrix out{};
    out.dim = mat.dim;
    for (uint32_t r = 0; r < mat.dim; ++r)
        for (uint32_t c = 0; c < mat.dim; ++c)
            out.m[c * mat.dim + r] = std::conj(mat.m[r * mat.dim + c]);
    return out;
}

std::vector<std::string> validate(const Circuit &circuit) {
    std::vector<std::string> errors;
    for (size_t i = 0; i < circuit.gates.size(); ++i) {
        const Gate &g = circuit.gates[i];
        std::string where = "gate " + std::to_string(i) + " (" +
                            std::string(gate_name(g.kind)) + "): ";
        if (g.qubits.size() != gate_arity(g.kind)) {
            errors.push_back(where + "expected " +
                             std::to_string(gate_arity(g.kind)) +
                             " qubits, got " + std::to_string(g.qubits.size()));
        }
        if (g.params.size() != gate_param_count(g.kind)) {
            errors.push_back(where + "expected " +
                             std::to_string(gate_param_count(g.kind)) +
                             " params, got " + std::to_string(g.params.size()));
        }
        for (uint32_t q : g.qubits) {
            if (q >= circuit.num_qubits) {
                errors.push_back(where + "qubit " + std::to_string(q) +
                                 " out of range");
            }
        }
        if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
            errors.push_back(where + "duplicate qubit " +
                             std::to_string(g.qubits[0]));
        }
    }
    return errors;
}

} // namespace qzsim
