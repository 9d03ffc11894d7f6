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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <thread>

#include "qzsim/kernels.hpp"
#include "qzsim/store.hpp"

using namespace qzsim;

namespace {

std::vector<Amplitude> random_chunk(size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Amplitude> out(n);
    for (Amplitude &a : out) a = {dist(rng), dist(rng)};
    return out;
}

} // namespace

TEST_CASE("fresh basis state has the expected chunk contents") {
    ChunkStore store = ChunkStore::init_basis_state(2, 1, 0.0);
    CHECK(store.chunk_count() == 2);
    auto c0 = store.load_chunk(0);
    auto c1 = store.load_chunk(1);
    CHECK(c0 == std::vector<Amplitude>{{1.0, 0.0}, {0.0, 0.0}});
    CHECK(c1 == std::vector<Amplitude>{{0.0, 0.0}, {0.0, 0.0}});
}

TEST_CASE("basis amplitude is exact even in lossy mode") {
    for (double eb : {0.0, 1e-3, 1e-5, 0.3}) {
        ChunkStore store = ChunkStore::init_basis_state(6, 3, eb);
        CHECK(std::abs(store.amplitude(0) - Amplitude{1.0, 0.0}) <= 1e-12);
        CHECK(store.amplitude(3) == Amplitude{0.0, 0.0});
        CHECK(store.amplitude(63) == Amplitude{0.0, 0.0});
    }
}

TEST_CASE("init rejects bad geometry") {
    CHECK_THROWS_AS(ChunkStore::init_basis_state(10, 12, 0.0), StoreError);
    CHECK_THROWS_AS(ChunkStore::init_basis_state(41, 16, 0.0), StoreError);
}

TEST_CASE("amplitude after H on the only qubit") {
    ChunkStore store = ChunkStore::init_basis_state(1, 1, 1e-5);
    auto buf = store.load_chunk(0);
    apply_gate(buf, Gate{GateKind::H, {0}, {}});
    store.store_chunk(0, buf);
    double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(store.amplitude(0).real() - s) <= 1e-5);
    CHECK(std::abs(store.amplitude(1).real() - s) <= 1e-5);
}

TEST_CASE("store then load respects the error bound") {
    std::mt19937_64 rng(21);
    ChunkStore store = ChunkStore::init_basis_state(8, 4, 1e-4);
    auto vals = random_chunk(16, rng);
    store.store_chunk(5, vals);
    auto back = store.load_chunk(5);
    for (size_t i = 0; i < vals.size(); ++i) {
        CHECK(std::fabs(back[i].real() - vals[i].real()) <= 1e-4);
        CHECK(std::fabs(back[i].imag() - vals[i].imag()) <= 1e-4);
    }
}

TEST_CASE("address bijection over every global index") {
    ChunkStore store = ChunkStore::init_basis_state(6, 2, 0.0);
    for (uint64_t ci = 0; ci < store.chunk_count(); ++ci) {
        std::vector<Amplitude> vals(store.chunk_size());
        for (uint64_t j = 0; j < vals.size(); ++j)
            vals[j] = {double(ci * store.chunk_size() + j), 0.0};
        store.store_chunk(ci, vals);
    }
    for (uint64_t g = 0; g < 64; ++g)
        CHECK(store.amplitude(g) == Amplitude{double(g), 0.0});
    CHECK_THROWS_AS(store.amplitude(64), StoreError);
    CHECK_THROWS_AS(store.load_chunk(16), StoreError);
}

TEST_CASE("footprint counters track payload growth exactly") {
    std::mt19937_64 rng(22);
    ChunkStore store = ChunkStore::init_basis_state(8, 4, 0.0);
    Footprint before = store.footprint();
    auto vals = random_chunk(16, rng);
    // compress is deterministic, so the expected delta is computable
    uint64_t old_payload = compress(3, store.load_chunk(3), 0.0).stored_bytes();
    uint64_t new_payload = compress(3, vals, 0.0).stored_bytes();
    store.store_chunk(3, vals);
    Footprint after = store.footprint();
    CHECK(after.current_bytes ==
          before.current_bytes - old_payload + new_payload);
    CHECK(after.peak_bytes >= before.peak_bytes);
    CHECK(after.dense_bytes == (uint64_t(1) << 8) * 16);
}

TEST_CASE("fresh 20-qubit init compresses more than 100x") {
    ChunkStore store = ChunkStore::init_basis_state(20, 12, 1e-5);
    CHECK(store.footprint().ratio > 100.0);
}

TEST_CASE("24-qubit lossy init stays under 1 percent of dense") {
    ChunkStore store = ChunkStore::init_basis_state(24, 16, 1e-5);
    Footprint fp = store.footprint();
    CHECK(fp.current_bytes * 100 <= fp.dense_bytes);
}

TEST_CASE("lossless random state ratio is near 1") {
    std::mt19937_64 rng(23);
    ChunkStore store = ChunkStore::init_basis_state(10, 5, 0.0);
    for (uint64_t ci = 0; ci < store.chunk_count(); ++ci)
        store.store_chunk(ci, random_chunk(store.chunk_size(), rng));
    CHECK(store.footprint().ratio <= 1.3);
}

TEST_CASE("peak counter never decreases") {
    std::mt19937_64 rng(24);
    ChunkStore store = ChunkStore::init_basis_state(8, 4, 0.0);
    uint64_t peak = store.footprint().peak_bytes;
    for (int rep = 0; rep < 20; ++rep) {
        store.store_chunk(rep % 16, random_chunk(16, rng));
        uint64_t now = store.footprint().peak_bytes;
        CHECK(now >= peak);
        peak = now;
        CHECK(store.footprint().current_bytes <= peak);
    }
    // storing compressible data shrinks current but not peak
    store.store_chunk(0, std::vector<Amplitude>(16, Amplitude{0.0, 0.0}));
    CHECK(store.footprint().peak_bytes == peak);
}

TEST_CASE("concurrent access to distinct chunks is safe") {
    ChunkStore store = ChunkStore::init_basis_state(12, 4, 1e-5);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&store, t] {
            std::mt19937_64 rng(100 + t);
            for (int rep = 0; rep < 50; ++rep) {
                uint64_t ci = uint64_t(t) * 64 + uint64_t(rep);
                store.store_chunk(ci, random_chunk(16, rng));
                (void)store.load_chunk(ci);
            }
        });
    }
    for (auto &t : threads) t.join();
    CHECK(store.footprint().current_bytes > 0);
}

TEST_CASE("digest is stable and content-sensitive") {
    ChunkStore a = ChunkStore::init_basis_state(8, 4, 1e-5);
    ChunkStore b = ChunkStore::init_basis_state(8, 4, 1e-5);
    CHECK(a.digest() == b.digest());
    std::mt19937_64 rng(25);
    a.store_chunk(2, random_chunk(16, rng));
    CHECK(a.digest() != b.digest());
}

TEST_CASE("save and load round-trip the store") {
    std::mt19937_64 rng(26);
    ChunkStore store = ChunkStore::init_basis_state(8, 4, 1e-5);
    for (uint64_t ci = 0; ci < store.chunk_count(); ++ci)
        store.store_chunk(ci, random_chunk(16, rng));
    std::string path = "store_roundtrip.qzst";
    store.save(path);
    ChunkStore back = ChunkStore::load(path);
    std::remove(path.c_str());
    CHECK(back.num_qubits() == store.num_qubits());
    CHECK(back.chunk_qubits() == store.chunk_qubits());
    CHECK(back.error_bound() == store.error_bound());
    CHECK(back.digest() == store.digest());
}
