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
#include "qzsim/generators.hpp"

#include <cmath>
#include <random>

namespace qzsim {

Circuit make_ghz(uint32_t num_qubits) {
    Circuit c;
    c.num_qubits = num_qubits;
    c.gates.push_back({GateKind::H, {0}, {}});
    for (uint32_t k = 1; k < num_qubits; ++k)
        c.gates.push_back({GateKind::CX, {0, k}, {}});
    return c;
}

namespace {

// cp(lambda) a,b == u1(lambda/2) a; cx a,b; u1(-lambda/2) b; cx a,b;
// u1(lambda/2) b
void push_controlled_phase(Circuit &c, double lambda, uint32_t a, uint32_t b) {
    c.gates.push_back({GateKind::U1, {a}, {lambda / 2.0}});
    c.gates.push_back({GateKind::CX, {a, b}, {}});
    c.gates.push_back({GateKind::U1, {b}, {-lambda / 2.0}});
    c.gates.push_back({GateKind::CX, {a, b}, {}});
    c.gates.push_back({GateKind::U1, {b}, {lambda / 2.0}});
}

} // namespace

Circuit make_qft(uint32_t num_qubits) {
    Circuit c;
    c.num_qubits = num_qubits;
    for (uint32_t i = 0; i < num_qubits; ++i) {
        uint32_t target = num_qubits - 1 - i;
        c.gates.push_back({GateKind::H, {target}, {}});
        for (uint32_t j = 0; j < target; ++j) {
            uint32_t control = target - 1 - j;
            double lambda = M_PI / static_cast<double>(uint64_t(1) << (j + 1));
            push_controlled_phase(c, lambda, control, target);
        }
    }
    for (uint32_t i = 0; i < num_qubits / 2; ++i)
        c.gates.push_back({GateKind::SWAP, {i, num_qubits - 1 - i}, {}});
    return c;
}

Circuit make_random(uint32_t num_qubits, uint32_t depth, uint64_t seed) {
    static const GateKind kinds[] = {
        GateKind::H,  GateKind::X,  GateKind::Y,  GateKind::Z,
        GateKind::S,  GateKind::SDG, GateKind::T, GateKind::TDG,
        GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::U1,
        GateKind::U2, GateKind::U3, GateKind::CX, GateKind::CZ,
        GateKind::SWAP,
    };
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick_kind(0, std::size(kinds) - 1);
    std::uniform_int_distribution<uint32_t> pick_qubit(0, num_qubits - 1);
    std::uniform_real_distribution<double> pick_angle(-M_PI, M_PI);

    Circuit c;
    c.num_qubits = num_qubits;
    c.gates.reserve(depth);
    for (uint32_t i = 0; i < depth; ++i) {
        Gate g;
        g.kind = kinds[pick_kind(rng)];
        uint32_t q0 = pick_qubit(rng);
        g.qubits.push_back(q0);
        if (gate_arity(g.kind) == 2) {
            uint32_t q1 = q0;
            while (q1 == q0) q1 = pick_qubit(rng);
            g.qubits.push_back(q1);
        }
        for (uint32_t p = 0; p < gate_param_count(g.kind); ++p)
            g.params.push_back(pick_angle(rng));
        c.gates.push_back(std::move(g));
    }
    return c;
}

} // namespace qzsim
