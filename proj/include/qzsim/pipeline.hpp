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
#include <utility>

#include "qzsim/device.hpp"
#include "qzsim/planner.hpp"
#include "qzsim/store.hpp"

namespace qzsim {

struct PipelineConfig {
    uint32_t chunk_qubits = 16;   // c: 2^c amplitudes per chunk
    uint32_t batch_qubits = 20;   // m: device window of 2^m amplitudes
    double error_bound = 1e-5;    // 0 selects the lossless codec
    Strategy strategy = Strategy::Buffered;
    uint32_t decompress_workers = 2;
    uint32_t recompress_workers = 2;
    uint32_t kernel_workers = 2;
    double host_fraction = 0.0; // leading fraction of batches done on host
    uint32_t pipeline_depth = 2; // batches in flight on the device path
    bool renormalize = false;
    uint64_t seed = 0;
    uint32_t oracle_limit = 16; // fidelity reported when n <= this
};

struct PhaseSeconds {
    double decompress = 0.0;
    double h2d = 0.0;
    double kernel = 0.0;
    double d2h = 0.0;
    double host_apply = 0.0;
    double recompress = 0.0;

    double total() const {
        return decompress + h2d + kernel + d2h + host_apply + recompress;
    }
};

struct SimulationReport {
    double norm = 0.0;
    std::optional<double> fidelity; // absent when n exceeds the oracle limit
    PhaseSeconds phases;
    double wall_seconds = 0.0;
    double overlap_efficiency = 0.0; // kernel_seconds / wall_seconds
    Footprint footprint{};
    std::vector<uint64_t> stage_batch_counts;
    uint64_t transient_peak_bytes = 0;
    uint64_t chunk_decompress_count = 0;
    uint64_t chunk_recompress_count = 0;
    TransferStats transfer;
    uint64_t digest = 0; // FNV-1a over final payload bytes, chunk order
    PipelineConfig config;
};

/// Timing sinks for the host execution path.
struct HostPhaseClocks {
    PhaseClock *decompress = nullptr;
    PhaseClock *host_apply = nullptr;
    PhaseClock *recompress = nullptr;
};

/// Executes `circuit` from |0...0> through the staged, batched,
/// compressed-store pipeline.
std::pair<ChunkStore, SimulationReport> run(const Circuit &circuit,
                                            const PipelineConfig &config);

/// Runs one batch of one stage entirely in host memory: decompress, apply
/// the stage's remapped gates, recompress. Kernel arithmetic is identical
/// to the device path.
void host_apply_batch(ChunkStore &store, const Stage &stage,
                      const BatchDescriptor &batch,
                      const HostPhaseClocks &clocks = {});

/// Sum of |amplitude|^2 over the whole store, compensated summation.
double store_norm(const ChunkStore &store);

std::string report_to_json(const SimulationReport &report);

} // namespace qzsim
