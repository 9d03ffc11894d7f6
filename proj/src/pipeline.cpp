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
#include "qzsim/pipeline.hpp"

#include <atomic>
#include <cmath>

#include <json.hpp>

#include "qzsim/kernels.hpp"
#include "qzsim/oracle.hpp"

namespace qzsim {

namespace {

void check_config(const PipelineConfig &cfg, uint32_t num_qubits) {
    if (!(cfg.host_fraction >= 0.0 && cfg.host_fraction <= 1.0))
        throw Error("host fraction must lie in [0, 1]");
    if (cfg.pipeline_depth < 1) throw Error("pipeline depth must be >= 1");
    if (cfg.decompress_workers < 1 || cfg.recompress_workers < 1 ||
        cfg.kernel_workers < 1)
        throw Error("worker counts must be >= 1");
    if (!(cfg.error_bound >= 0.0) || !std::isfinite(cfg.error_bound))
        throw Error("error bound must be finite and non-negative");
    if (num_qubits == 0) throw Error("circuit has no qubits");
}

/// Tracks transient host buffer bytes (decompressed batches in flight).
struct TransientTracker {
    std::atomic<uint64_t> current{0};
    std::atomic<uint64_t> peak{0};

    void add(uint64_t bytes) {
        uint64_t cur = current.fetch_add(bytes) + bytes;
        uint64_t p = peak.load();
        while (cur > p && !peak.compare_exchange_weak(p, cur)) {
        }
    }
    void sub(uint64_t bytes) { current.fetch_sub(bytes); }
};

struct Counters {
    std::atomic<uint64_t> decompressed_chunks{0};
    std::atomic<uint64_t> recompressed_chunks{0};
};

using ChunkData = std::vector<std::vector<Amplitude>>;

void load_batch(ChunkStore &store, const BatchDescriptor &batch,
                ChunkData &data, PhaseClock &clock, Counters &counters) {
    Timer t;
    data.resize(batch.chunk_indices.size());
    for (size_t j = 0; j < batch.chunk_indices.size(); ++j)
        data[j] = store.load_chunk(batch.chunk_indices[j]);
    counters.decompressed_chunks.fetch_add(batch.chunk_indices.size(),
                                           std::memory_order_relaxed);
    clock.add(t.seconds());
}

void store_batch(ChunkStore &store, const BatchDescriptor &batch,
                 const ChunkData &data, PhaseClock &clock, Counters &counters) {
    Timer t;
    for (size_t j = 0; j < batch.chunk_indices.size(); ++j)
        store.store_chunk(batch.chunk_indices[j], data[j]);
    counters.recompressed_chunks.fetch_add(batch.chunk_indices.size(),
                                           std::memory_order_relaxed);
    clock.add(t.seconds());
}

} // namespace

void host_apply_batch(ChunkStore &store, const Stage &stage,
                      const BatchDescriptor &batch,
                      const HostPhaseClocks &clocks) {
    const uint64_t chunk_len = store.chunk_size();
    const size_t members = batch.chunk_indices.size();
    std::vector<Amplitude> buffer(members * chunk_len);

    {
        Timer t;
        for (size_t j = 0; j < members; ++j) {
            std::vector<Amplitude> chunk =
                store.load_chunk(batch.chunk_indices[j]);
            std::copy(chunk.begin(), chunk.end(),
                      buffer.begin() + j * chunk_len);
        }
        if (clocks.decompress) clocks.decompress->add(t.seconds());
    }
    {
        Timer t;
        for (const Gate &g : stage.gates)
            apply_gate(buffer, remap_gate(g, stage, store.chunk_qubits()));
        if (clocks.host_apply) clocks.host_apply->add(t.seconds());
    }
    {
        Timer t;
        for (size_t j = 0; j < members; ++j) {
            store.store_chunk(
                batch.chunk_indices[j],
                std::span<const Amplitude>(buffer.data() + j * chunk_len,
                                           chunk_len));
        }
        if (clocks.recompress) clocks.recompress->add(t.seconds());
    }
}

double store_norm(const ChunkStore &store) {
    KahanSum acc;
    for (uint64_t ci = 0; ci < store.chunk_count(); ++ci) {
        std::vector<Amplitude> chunk = store.load_chunk(ci);
        for (const Amplitude &a : chunk) acc.add(std::norm(a));
    }
    return acc.sum;
}

std::pair<ChunkStore, SimulationReport> run(const Circuit &circuit,
                                            const PipelineConfig &cfg) {
    check_config(cfg, circuit.num_qubits);
    if (auto errors = validate(circuit); !errors.empty())
        throw Error("invalid circuit: " + errors.front());

    const uint32_t n = circuit.num_qubits;
    const uint32_t c = cfg.chunk_qubits;
    ExecutionPlan exec_plan = plan(circuit, c, cfg.batch_qubits);
    const uint64_t chunk_len = uint64_t(1) << c;

    ChunkStore store = ChunkStore::init_basis_state(n, c, cfg.error_bound);

    DeviceConfig device_cfg;
    device_cfg.strategy = cfg.strategy;
    device_cfg.kernel_workers = cfg.kernel_workers;
    device_cfg.memory_limit_bytes =
        (uint64_t(1) << cfg.batch_qubits) * 16 *
        (cfg.strategy == Strategy::Buffered ? 2 : 1);
    std::unique_ptr<Device> device = make_reference_device(device_cfg);

    ThreadPool decompress_pool(cfg.decompress_workers);
    ThreadPool recompress_pool(cfg.recompress_workers);

    PhaseClock decompress_clock, host_apply_clock, recompress_clock;
    TransientTracker transient;
    Counters counters;
    SimulationReport report;
    report.config = cfg;

    Timer wall;
    for (size_t si = 0; si < exec_plan.stages.size(); ++si) {
        const Stage &stage = exec_plan.stages[si];
        const uint64_t batches = batch_count(stage, n, c);
        report.stage_batch_counts.push_back(batches);

        std::vector<Gate> remapped;
        remapped.reserve(stage.gates.size());
        for (const Gate &g : stage.gates)
            remapped.push_back(remap_gate(g, stage, c));

        const auto host_batches =
            static_cast<uint64_t>(std::min<double>(
                static_cast<double>(batches),
                std::ceil(cfg.host_fraction * static_cast<double>(batches))));
        const uint64_t batch_bytes =
            (uint64_t(1) << (c + stage.high_set.size())) * 16;

        try {
            // Step (5): leading batches run entirely on host workers.
            std::vector<std::future<void>> host_futures;
            host_futures.reserve(host_batches);
            HostPhaseClocks host_clocks{&decompress_clock, &host_apply_clock,
                                        &recompress_clock};
            for (uint64_t b = 0; b < host_batches; ++b) {
                host_futures.push_back(decompress_pool.submit([&, b] {
                    BatchDescriptor batch = make_batch(stage, n, c, b);
                    transient.add(batch_bytes);
                    counters.decompressed_chunks.fetch_add(
                        batch.chunk_indices.size(), std::memory_order_relaxed);
                    counters.recompressed_chunks.fetch_add(
                        batch.chunk_indices.size(), std::memory_order_relaxed);
                    host_apply_batch(store, stage, batch, host_clocks);
                    transient.sub(batch_bytes);
                }));
            }

            // Steps (1)-(4) and (6): the device path, up to `pipeline_depth`
            // batches in flight across decompress / device / recompress.
            const uint64_t device_batches = batches - host_batches;
            struct Slot {
                ChunkData data;
                BatchDescriptor batch;
                std::future<void> ready;
            };
            const uint64_t depth = std::max<uint64_t>(
                1, std::min<uint64_t>(cfg.pipeline_depth,
                                      std::max<uint64_t>(device_batches, 1)));
            std::vector<Slot> slots(depth);

            auto decompress_into = [&](Slot &slot, uint64_t batch_number) {
                slot.batch = make_batch(stage, n, c, batch_number);
                load_batch(store, slot.batch, slot.data, decompress_clock,
                           counters);
            };

            for (uint64_t j = 0; j < std::min(depth, device_batches); ++j) {
                Slot &slot = slots[j];
                transient.add(batch_bytes);
                slot.ready = decompress_pool.submit(
                    [&, j] { decompress_into(slots[j], host_batches + j); });
            }

            for (uint64_t i = 0; i < device_batches; ++i) {
                Slot &slot = slots[i % depth];
                slot.ready.get();

                std::vector<const Amplitude *> in_ptrs;
                std::vector<Amplitude *> out_ptrs;
                in_ptrs.reserve(slot.data.size());
                out_ptrs.reserve(slot.data.size());
                for (auto &chunk : slot.data) {
                    in_ptrs.push_back(chunk.data());
                    out_ptrs.push_back(chunk.data());
                }
                device->gather(std::move(in_ptrs), chunk_len);
                if (!remapped.empty()) device->apply_gates(remapped);
                CommandHandle done =
                    device->scatter(std::move(out_ptrs), chunk_len);
                device->wait(done);

                // Recompress this batch, then reuse the slot for the batch
                // `depth` positions ahead.
                const uint64_t next = i + depth;
                auto ready = std::make_shared<std::promise<void>>();
                slot.ready = ready->get_future();
                recompress_pool.submit([&, ready, next, slot_ptr = &slot] {
                    try {
                        store_batch(store, slot_ptr->batch, slot_ptr->data,
                                    recompress_clock, counters);
                        if (next < device_batches) {
                            decompress_pool.submit([&, ready, next, slot_ptr] {
                                try {
                                    decompress_into(*slot_ptr,
                                                    host_batches + next);
                                    ready->set_value();
                                } catch (...) {
                                    ready->set_exception(
                                        std::current_exception());
                                }
                            });
                        } else {
                            transient.sub(batch_bytes);
                            ready->set_value();
                        }
                    } catch (...) {
                        ready->set_exception(std::current_exception());
                    }
                });
            }

            // Stage barrier: all writes land before the next stage reads.
            for (Slot &slot : slots)
                if (slot.ready.valid()) slot.ready.get();
            for (auto &f : host_futures) f.get();
        } catch (const std::exception &e) {
            throw Error("stage " + std::to_string(si) + ": " + e.what());
        }
    }

    if (cfg.renormalize) {
        double norm = store_norm(store);
        if (norm > 0.0) {
            double scale = 1.0 / std::sqrt(norm);
            for (uint64_t ci = 0; ci < store.chunk_count(); ++ci) {
                std::vector<Amplitude> chunk = store.load_chunk(ci);
                for (Amplitude &a : chunk) a *= scale;
                store.store_chunk(ci, chunk);
            }
        }
    }

    report.wall_seconds = wall.seconds();
    report.transfer = device->stats();
    report.phases.decompress = decompress_clock.seconds();
    report.phases.host_apply = host_apply_clock.seconds();
    report.phases.recompress = recompress_clock.seconds();
    report.phases.h2d = report.transfer.h2d_seconds;
    report.phases.d2h = report.transfer.d2h_seconds;
    report.phases.kernel = report.transfer.kernel_seconds;
    report.overlap_efficiency =
        report.wall_seconds > 0.0
            ? report.phases.kernel / report.wall_seconds
            : 0.0;
    report.transient_peak_bytes = transient.peak.load();
    report.chunk_decompress_count = counters.decompressed_chunks.load();
    report.chunk_recompress_count = counters.recompressed_chunks.load();
    report.footprint = store.footprint();
    report.norm = store_norm(store);
    report.digest = store.digest();

    if (n <= cfg.oracle_limit && n <= kOracleLimit) {
        DenseState reference = simulate_dense(circuit);
        report.fidelity = fidelity(reference, store);
    }
    return {std::move(store), std::move(report)};
}

std::string report_to_json(const SimulationReport &report) {
    nlohmann::json j;
    j["norm"] = report.norm;
    if (report.fidelity) j["fidelity"] = *report.fidelity;
    j["phase_seconds"] = {
        {"decompress", report.phases.decompress},
        {"h2d", report.phases.h2d},
        {"kernel", report.phases.kernel},
        {"d2h", report.phases.d2h},
        {"host_apply", report.phases.host_apply},
        {"recompress", report.phases.recompress},
    };
    j["wall_seconds"] = report.wall_seconds;
    j["overlap_efficiency"] = report.overlap_efficiency;
    j["footprint"] = {
        {"current_bytes", report.footprint.current_bytes},
        {"peak_bytes", report.footprint.peak_bytes},
        {"dense_bytes", report.footprint.dense_bytes},
        {"ratio", report.footprint.ratio},
    };
    j["stage_batch_counts"] = report.stage_batch_counts;
    j["transient_peak_bytes"] = report.transient_peak_bytes;
    j["chunk_decompress_count"] = report.chunk_decompress_count;
    j["chunk_recompress_count"] = report.chunk_recompress_count;
    j["transfer"] = {
        {"h2d_seconds", report.transfer.h2d_seconds},
        {"d2h_seconds", report.transfer.d2h_seconds},
        {"kernel_seconds", report.transfer.kernel_seconds},
        {"h2d_op_count", report.transfer.h2d_op_count},
        {"d2h_op_count", report.transfer.d2h_op_count},
        {"bytes_moved", report.transfer.bytes_moved},
    };
    char digest_hex[17];
    std::snprintf(digest_hex, sizeof(digest_hex), "%016llx",
                  static_cast<unsigned long long>(report.digest));
    j["digest"] = digest_hex;
    j["config"] = {
        {"chunk_qubits", report.config.chunk_qubits},
        {"batch_qubits", report.config.batch_qubits},
        {"error_bound", report.config.error_bound},
        {"strategy", std::string(strategy_name(report.config.strategy))},
        {"decompress_workers", report.config.decompress_workers},
        {"recompress_workers", report.config.recompress_workers},
        {"kernel_workers", report.config.kernel_workers},
        {"host_fraction", report.config.host_fraction},
        {"pipeline_depth", report.config.pipeline_depth},
        {"renormalize", report.config.renormalize},
        {"seed", report.config.seed},
        {"oracle_limit", report.config.oracle_limit},
    };
    return j.dump(2);
}

} // namespace qzsim
