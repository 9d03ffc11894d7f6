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
#include "qzsim/store.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace qzsim {

namespace {
constexpr char kMagic[4] = {'Q', 'Z', 'S', 'T'};
}

ChunkStore ChunkStore::init_basis_state(uint32_t num_qubits,
                                        uint32_t chunk_qubits,
                                        double error_bound) {
    if (chunk_qubits < 1 || chunk_qubits > num_qubits)
        throw StoreError("chunk qubits must satisfy 1 <= c <= n, got c=" +
                         std::to_string(chunk_qubits) + ", n=" +
                         std::to_string(num_qubits));
    if (num_qubits > kMaxQubits)
        throw StoreError("qubit count exceeds configured address width (" +
                         std::to_string(kMaxQubits) + ")");

    ChunkStore store;
    store.num_qubits_ = num_qubits;
    store.chunk_qubits_ = chunk_qubits;
    store.error_bound_ = error_bound;

    const uint64_t count = store.chunk_count();
    const size_t chunk_len = store.chunk_size();
    store.chunks_.reserve(count);

    std::vector<Amplitude> zeros(chunk_len, Amplitude{0.0, 0.0});
    CompressedChunk zero_chunk = compress(0, zeros, error_bound);

    std::vector<Amplitude> basis = zeros;
    basis[0] = Amplitude{1.0, 0.0};
    CompressedChunk first = compress(0, basis, error_bound);
    if (error_bound > 0.0) {
        // Trivial circuits should start exact: route the basis amplitude
        // (and the neighbor that resets the predictor) through the
        // raw-value path if quantization perturbs the chunk.
        std::vector<Amplitude> r = decompress(first);
        bool exact = std::abs(r[0].real() - 1.0) <= 1e-12;
        for (size_t i = 0; exact && i < chunk_len; ++i) {
            if (r[i].imag() != 0.0 || (i > 0 && r[i].real() != 0.0))
                exact = false;
        }
        if (!exact) {
            std::vector<uint64_t> raw_idx{0};
            if (chunk_len > 1) raw_idx.push_back(1);
            first = compress(0, basis, error_bound, raw_idx);
        }
    }
    store.chunks_.push_back(std::move(first));
    for (uint64_t i = 1; i < count; ++i) {
        CompressedChunk c = zero_chunk;
        c.chunk_index = i;
        store.chunks_.push_back(std::move(c));
    }

    uint64_t bytes = 0;
    for (const CompressedChunk &c : store.chunks_)
        bytes += c.stored_bytes() + kPerChunkOverhead;
    store.current_bytes_.store(bytes);
    store.peak_bytes_.store(bytes);
    return store;
}

std::vector<Amplitude> ChunkStore::load_chunk(uint64_t chunk_index) const {
    if (chunk_index >= chunks_.size())
        throw StoreError("chunk index out of range: " +
                         std::to_string(chunk_index));
    std::lock_guard lk(lock_for(chunk_index));
    return decompress(chunks_[chunk_index]);
}

void ChunkStore::store_chunk(uint64_t chunk_index,
                             std::span<const Amplitude> values) {
    if (chunk_index >= chunks_.size())
        throw StoreError("chunk index out of range: " +
                         std::to_string(chunk_index));
    if (values.size() != chunk_size())
        throw StoreError("chunk size mismatch: expected " +
                         std::to_string(chunk_size()) + ", got " +
                         std::to_string(values.size()));
    CompressedChunk next = compress(chunk_index, values, error_bound_);
    uint64_t new_bytes = next.stored_bytes();
    {
        std::lock_guard lk(lock_for(chunk_index));
        uint64_t old_bytes = chunks_[chunk_index].stored_bytes();
        chunks_[chunk_index] = std::move(next);
        account_store(old_bytes, new_bytes);
    }
}

Amplitude ChunkStore::amplitude(uint64_t global_index) const {
    if (global_index >= (uint64_t(1) << num_qubits_))
        throw StoreError("global index out of range: " +
                         std::to_string(global_index));
    uint64_t chunk_index = global_index >> chunk_qubits_;
    uint64_t offset = global_index & (chunk_size() - 1);
    return load_chunk(chunk_index)[offset];
}

Footprint ChunkStore::footprint() const {
    Footprint fp;
    fp.current_bytes = current_bytes_.load();
    fp.peak_bytes = peak_bytes_.load();
    fp.dense_bytes = (uint64_t(1) << num_qubits_) * 16;
    fp.ratio = static_cast<double>(fp.dense_bytes) /
               static_cast<double>(fp.current_bytes);
    return fp;
}

uint64_t ChunkStore::digest() const {
    uint64_t state = 0xcbf29ce484222325ULL;
    for (uint64_t i = 0; i < chunks_.size(); ++i) {
        std::lock_guard lk(lock_for(i));
        state = fnv1a64(chunks_[i].payload, state);
    }
    return state;
}

void ChunkStore::account_store(uint64_t old_bytes, uint64_t new_bytes) {
    uint64_t cur;
    if (new_bytes >= old_bytes) {
        cur = current_bytes_.fetch_add(new_bytes - old_bytes) +
              (new_bytes - old_bytes);
    } else {
        cur = current_bytes_.fetch_sub(old_bytes - new_bytes) -
              (old_bytes - new_bytes);
    }
    uint64_t peak = peak_bytes_.load();
    while (cur > peak && !peak_bytes_.compare_exchange_weak(peak, cur)) {
    }
}

void ChunkStore::save(const std::string &path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StoreError("cannot open for writing: " + path);
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char *>(&num_qubits_), 4);
    out.write(reinterpret_cast<const char *>(&chunk_qubits_), 4);
    out.write(reinterpret_cast<const char *>(&error_bound_), 8);
    for (uint64_t i = 0; i < chunks_.size(); ++i) {
        std::lock_guard lk(lock_for(i));
        const CompressedChunk &c = chunks_[i];
        uint32_t len = static_cast<uint32_t>(c.payload.size());
        out.write(reinterpret_cast<const char *>(&len), 4);
        out.write(reinterpret_cast<const char *>(&c.checksum), 4);
        out.write(reinterpret_cast<const char *>(c.payload.data()), len);
    }
    if (!out) throw StoreError("write failed: " + path);
}

ChunkStore ChunkStore::load(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError("cannot open for reading: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw StoreError("not a chunk store file: " + path);

    ChunkStore store;
    in.read(reinterpret_cast<char *>(&store.num_qubits_), 4);
    in.read(reinterpret_cast<char *>(&store.chunk_qubits_), 4);
    in.read(reinterpret_cast<char *>(&store.error_bound_), 8);
    if (!in || store.num_qubits_ > kMaxQubits ||
        store.chunk_qubits_ > store.num_qubits_)
        throw StoreError("corrupt chunk store header: " + path);

    uint64_t count = store.chunk_count();
    uint64_t bytes = 0;
    store.chunks_.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        uint32_t len, checksum;
        in.read(reinterpret_cast<char *>(&len), 4);
        in.read(reinterpret_cast<char *>(&checksum), 4);
        if (!in) throw StoreError("truncated chunk store: " + path);
        CompressedChunk c;
        c.chunk_index = i;
        c.payload.resize(len);
        in.read(reinterpret_cast<char *>(c.payload.data()), len);
        if (!in) throw StoreError("truncated chunk store: " + path);
        c.checksum = checksum;
        if (crc32_of(c.payload) != checksum)
            throw StoreError("checksum mismatch in chunk " + std::to_string(i));
        if (c.payload.empty()) throw StoreError("empty chunk payload");
        c.codec_id = static_cast<CodecId>(c.payload[0]);
        std::memcpy(&c.error_bound, c.payload.data() + 1, 8);
        uint32_t element_count;
        std::memcpy(&element_count, c.payload.data() + 9, 4);
        c.element_count = element_count;
        if (element_count != store.chunk_size())
            throw StoreError("chunk element count mismatch in chunk " +
                             std::to_string(i));
        bytes += c.stored_bytes() + kPerChunkOverhead;
        store.chunks_.push_back(std::move(c));
    }
    store.current_bytes_.store(bytes);
    store.peak_bytes_.store(bytes);
    return store;
}

} // namespace qzsim
