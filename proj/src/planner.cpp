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
#include "qzsim/planner.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qzsim {

std::optional<uint32_t> Stage::buffer_bit(uint32_t qubit,
                                          uint32_t chunk_qubits) const {
    if (qubit < chunk_qubits) return qubit;
    auto it = std::lower_bound(high_set.begin(), high_set.end(), qubit);
    if (it == high_set.end() || *it != qubit) return std::nullopt;
    return chunk_qubits + static_cast<uint32_t>(it - high_set.begin());
}

namespace {

void pad_high_set(std::vector<uint32_t> &high_set, uint32_t n, uint32_t c,
                  uint32_t m) {
    const uint32_t target = std::min(m - c, n - c);
    uint32_t candidate = c;
    std::set<uint32_t> present(high_set.begin(), high_set.end());
    while (present.size() < target && candidate < n) {
        if (!present.count(candidate)) present.insert(candidate);
        ++candidate;
    }
    high_set.assign(present.begin(), present.end());
}

} // namespace

ExecutionPlan plan(const Circuit &circuit, uint32_t chunk_qubits,
                   uint32_t batch_qubits) {
    const uint32_t n = circuit.num_qubits;
    const uint32_t c = chunk_qubits;
    const uint32_t m = batch_qubits;
    if (c < 1) throw PlanError("chunk qubits must be >= 1");
    if (m < c + 2)
        throw PlanError("batch qubits must be >= chunk qubits + 2, got m=" +
                        std::to_string(m) + ", c=" + std::to_string(c));
    if (m > n)
        throw PlanError("batch qubits exceed circuit qubits: m=" +
                        std::to_string(m) + ", n=" + std::to_string(n));
    if (auto errors = validate(circuit); !errors.empty())
        throw PlanError("invalid circuit: " + errors.front());

    ExecutionPlan out;
    out.num_qubits = n;
    out.chunk_qubits = c;
    out.batch_qubits = m;

    const uint32_t capacity = m - c;
    Stage current;
    std::set<uint32_t> high;

    auto close_stage = [&] {
        if (current.gates.empty()) return;
        current.high_set.assign(high.begin(), high.end());
        pad_high_set(current.high_set, n, c, m);
        out.stages.push_back(std::move(current));
        current = Stage{};
        high.clear();
    };

    for (size_t i = 0; i < circuit.gates.size(); ++i) {
        const Gate &g = circuit.gates[i];
        std::set<uint32_t> merged = high;
        for (uint32_t q : g.qubits)
            if (q >= c) merged.insert(q);
        if (merged.size() > capacity) {
            close_stage();
            for (uint32_t q : g.qubits)
                if (q >= c) high.insert(q);
        } else {
            high = std::move(merged);
        }
        current.gates.push_back(g);
        current.gate_indices.push_back(i);
    }
    close_stage();
    return out;
}

uint64_t batch_count(const Stage &stage, uint32_t num_qubits,
                     uint32_t chunk_qubits) {
    const uint32_t free_bits = (num_qubits - chunk_qubits) -
                               static_cast<uint32_t>(stage.high_set.size());
    return uint64_t(1) << free_bits;
}

BatchDescriptor make_batch(const Stage &stage, uint32_t num_qubits,
                           uint32_t chunk_qubits, uint64_t batch_number) {
    const uint32_t chunk_bits = num_qubits - chunk_qubits;
    std::vector<uint32_t> s_positions;
    s_positions.reserve(stage.high_set.size());
    for (uint32_t q : stage.high_set) s_positions.push_back(q - chunk_qubits);

    std::vector<uint32_t> free_positions;
    for (uint32_t b = 0; b < chunk_bits; ++b) {
        if (!std::binary_search(s_positions.begin(), s_positions.end(), b))
            free_positions.push_back(b);
    }
    if (batch_number >= (uint64_t(1) << free_positions.size()))
        throw PlanError("batch number out of range: " +
                        std::to_string(batch_number));

    BatchDescriptor batch;
    batch.batch_number = batch_number;
    const uint64_t base = scatter_bits(batch_number, free_positions);
    const uint64_t members = uint64_t(1) << s_positions.size();
    batch.chunk_indices.reserve(members);
    for (uint64_t s = 0; s < members; ++s)
        batch.chunk_indices.push_back(base | scatter_bits(s, s_positions));
    return batch;
}

Gate remap_gate(const Gate &gate, const Stage &stage, uint32_t chunk_qubits) {
    Gate out = gate;
    for (uint32_t &q : out.qubits) {
        auto bit = stage.buffer_bit(q, chunk_qubits);
        if (!bit)
            throw PlanError("qubit " + std::to_string(q) +
                            " is not mapped by the stage layout");
        q = *bit;
    }
    return out;
}

std::string describe_plan(const ExecutionPlan &plan) {
    std::ostringstream os;
    os << "plan: n=" << plan.num_qubits << " c=" << plan.chunk_qubits
       << " m=" << plan.batch_qubits << " stages=" << plan.stages.size()
       << "\n";
    for (size_t i = 0; i < plan.stages.size(); ++i) {
        const Stage &st = plan.stages[i];
        os << "  stage " << i << ": gates [" << st.gate_indices.front() << ".."
           << st.gate_indices.back() << "] (" << st.gates.size() << "), S={";
        for (size_t j = 0; j < st.high_set.size(); ++j) {
            if (j) os << ",";
            os << st.high_set[j];
        }
        os << "}, batches="
           << batch_count(st, plan.num_qubits, plan.chunk_qubits) << "\n";
    }
    return os.str();
}

} // namespace qzsim
