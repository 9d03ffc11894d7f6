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
#include <atomic>
#include <memory>
#include <mutex>
#include <string>

#include "qzsim/codec.hpp"

namespace qzsim {

class StoreError : public Error {
  public:
    using Error::Error;
};

struct Footprint {
    uint64_t current_bytes;
    uint64_t peak_bytes;
    uint64_t dense_bytes; // 2^n * 16
    double ratio;         // dense_bytes / current_bytes
};

/// Host-memory store of the full state vector as 2^(n-c) independently
/// compressed chunks. Amplitude at global index g lives in chunk g >> c at
/// offset g mod 2^c.
///
/// Concurrent access to distinct chunk indices is safe; same-index access
/// is serialized through sharded locks.
class ChunkStore {
  public:
    static constexpr uint32_t kMaxQubits = 40;
    /// Accounted per chunk on top of the payload (index/metadata bytes).
    static constexpr uint64_t kPerChunkOverhead = 48;

    static ChunkStore init_basis_state(uint32_t num_qubits,
                                       uint32_t chunk_qubits,
                                       double error_bound);

    ChunkStore(ChunkStore &&other) noexcept
        : num_qubits_(other.num_qubits_), chunk_qubits_(other.chunk_qubits_),
          error_bound_(other.error_bound_), chunks_(std::move(other.chunks_)),
          locks_(std::move(other.locks_)),
          current_bytes_(other.current_bytes_.load()),
          peak_bytes_(other.peak_bytes_.load()) {}
    ChunkStore(const ChunkStore &) = delete;
    ChunkStore &operator=(const ChunkStore &) = delete;

    uint32_t num_qubits() const { return num_qubits_; }
    uint32_t chunk_qubits() const { return chunk_qubits_; }
    double error_bound() const { return error_bound_; }
    uint64_t chunk_count() const {
        return uint64_t(1) << (num_qubits_ - chunk_qubits_);
    }
    uint64_t chunk_size() const { return uint64_t(1) << chunk_qubits_; }

    std::vector<Amplitude> load_chunk(uint64_t chunk_index) const;
    void store_chunk(uint64_t chunk_index, std::span<const Amplitude> values);
    Amplitude amplitude(uint64_t global_index) const;
    Footprint footprint() const;

    /// FNV-1a over payload bytes in chunk order. Timings never enter.
    uint64_t digest() const;

    void save(const std::string &path) const;
    static ChunkStore load(const std::string &path);

  private:
    ChunkStore() = default;

    std::mutex &lock_for(uint64_t index) const {
        return (*locks_)[index % locks_->size()];
    }
    void account_store(uint64_t old_bytes, uint64_t new_bytes);

    uint32_t num_qubits_ = 0;
    uint32_t chunk_qubits_ = 0;
    double error_bound_ = 0.0;
    std::vector<CompressedChunk> chunks_;
    mutable std::unique_ptr<std::array<std::mutex, 64>> locks_ =
        std::make_unique<std::array<std::mutex, 64>>();
    std::atomic<uint64_t> current_bytes_{0};
    std::atomic<uint64_t> peak_bytes_{0};
};

} // namespace qzsim
