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
#include "qzsim/oracle.hpp"

#include <cmath>

namespace qzsim {

DenseState make_basis_state(uint32_t num_qubits) {
    if (num_qubits > kOracleLimit)
        throw Error("oracle limit exceeded: n=" + std::to_string(num_qubits) +
                    " > " + std::to_string(kOracleLimit));
    DenseState state;
    state.num_qubits = num_qubits;
    state.amplitudes.assign(uint64_t(1) << num_qubits, Amplitude{0.0, 0.0});
    state.amplitudes[0] = Amplitude{1.0, 0.0};
    return state;
}

// Walks every basis index and rebuilds each amplitude group explicitly;
// slower than the pair-enumeration kernels but independent of them.
void apply_gate_dense(DenseState &state, const Gate &gate) {
    GateMatrix mat = gate_matrix(gate);
    const uint64_t size = state.amplitudes.size();
    if (mat.dim == 2) {
        const uint64_t mask = uint64_t(1) << gate.qubits[0];
        for (uint64_t i = 0; i < size; ++i) {
            if (i & mask) continue;
            Amplitude v0 = state.amplitudes[i];
            Amplitude v1 = state.amplitudes[i | mask];
            state.amplitudes[i] = mat.at(0, 0) * v0 + mat.at(0, 1) * v1;
            state.amplitudes[i | mask] = mat.at(1, 0) * v0 + mat.at(1, 1) * v1;
        }
        return;
    }
    const uint64_t mask0 = uint64_t(1) << gate.qubits[0];
    const uint64_t mask1 = uint64_t(1) << gate.qubits[1];
    for (uint64_t i = 0; i < size; ++i) {
        if ((i & mask0) || (i & mask1)) continue;
        Amplitude in[4], outv[4];
        for (uint32_t k = 0; k < 4; ++k) {
            uint64_t idx = i | ((k & 2) ? mask0 : 0) | ((k & 1) ? mask1 : 0);
            in[k] = state.amplitudes[idx];
        }
        for (uint32_t r = 0; r < 4; ++r) {
            outv[r] = {0.0, 0.0};
            for (uint32_t c = 0; c < 4; ++c) outv[r] += mat.at(r, c) * in[c];
        }
        for (uint32_t k = 0; k < 4; ++k) {
            uint64_t idx = i | ((k & 2) ? mask0 : 0) | ((k & 1) ? mask1 : 0);
            state.amplitudes[idx] = outv[k];
        }
    }
}

DenseState simulate_dense(const Circuit &circuit, uint32_t limit) {
    if (circuit.num_qubits > limit)
        throw Error("oracle limit exceeded: n=" +
                    std::to_string(circuit.num_qubits) + " > " +
                    std::to_string(limit));
    if (auto errors = validate(circuit); !errors.empty())
        throw Error("invalid circuit: " + errors.front());
    DenseState state = make_basis_state(circuit.num_qubits);
    for (const Gate &g : circuit.gates) apply_gate_dense(state, g);
    return state;
}

double fidelity(const DenseState &a, const DenseState &b) {
    if (a.num_qubits != b.num_qubits)
        throw Error("fidelity dimension mismatch");
    KahanSum re, im, na, nb;
    for (uint64_t i = 0; i < a.amplitudes.size(); ++i) {
        Amplitude p = std::conj(a.amplitudes[i]) * b.amplitudes[i];
        re.add(p.real());
        im.add(p.imag());
        na.add(std::norm(a.amplitudes[i]));
        nb.add(std::norm(b.amplitudes[i]));
    }
    if (na.sum == 0.0 || nb.sum == 0.0) return 0.0;
    // normalized overlap: Cauchy-Schwarz keeps this within [0, 1]
    return (re.sum * re.sum + im.sum * im.sum) / (na.sum * nb.sum);
}

double fidelity(const DenseState &a, const ChunkStore &store) {
    if (a.num_qubits != store.num_qubits())
        throw Error("fidelity dimension mismatch");
    KahanSum re, im, na, nb;
    const uint64_t chunk_size = store.chunk_size();
    for (uint64_t ci = 0; ci < store.chunk_count(); ++ci) {
        std::vector<Amplitude> chunk = store.load_chunk(ci);
        uint64_t base = ci * chunk_size;
        for (uint64_t j = 0; j < chunk_size; ++j) {
            Amplitude p = std::conj(a.amplitudes[base + j]) * chunk[j];
            re.add(p.real());
            im.add(p.imag());
            na.add(std::norm(a.amplitudes[base + j]));
            nb.add(std::norm(chunk[j]));
        }
    }
    if (na.sum == 0.0 || nb.sum == 0.0) return 0.0;
    return (re.sum * re.sum + im.sum * im.sum) / (na.sum * nb.sum);
}

double dense_norm(const DenseState &state) {
    KahanSum acc;
    for (const Amplitude &a : state.amplitudes) acc.add(std::norm(a));
    return acc.sum;
}

} // namespace qzsim
