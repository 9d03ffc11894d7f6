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
#include <numbers>

#include "qzsim/generators.hpp"
#include "qzsim/oracle.hpp"

using namespace qzsim;

namespace {

// Gate-level inverse; every supported kind has one inside the gate set.
Gate invert(const Gate &g) {
    switch (g.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::SWAP:
        return g;
    case GateKind::S:
        return {GateKind::SDG, g.qubits, {}};
    case GateKind::SDG:
        return {GateKind::S, g.qubits, {}};
    case GateKind::T:
        return {GateKind::TDG, g.qubits, {}};
    case GateKind::TDG:
        return {GateKind::T, g.qubits, {}};
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::U1:
        return {g.kind, g.qubits, {-g.params[0]}};
    case GateKind::U2:
        // U2(phi, lambda) = U3(pi/2, phi, lambda)
        return {GateKind::U3,
                g.qubits,
                {-std::numbers::pi / 2, -g.params[1], -g.params[0]}};
    case GateKind::U3:
        return {GateKind::U3,
                g.qubits,
                {-g.params[0], -g.params[2], -g.params[1]}};
    }
    throw Error("unreachable");
}

} // namespace

TEST_CASE("GHZ-3 has the two expected amplitudes") {
    DenseState s = simulate_dense(make_ghz(3));
    double r = 1.0 / std::sqrt(2.0);
    REQUIRE(s.amplitudes.size() == 8);
    CHECK(std::abs(s.amplitudes[0] - Amplitude{r, 0.0}) <= 1e-12);
    CHECK(std::abs(s.amplitudes[7] - Amplitude{r, 0.0}) <= 1e-12);
    for (size_t i = 1; i < 7; ++i) CHECK(std::abs(s.amplitudes[i]) <= 1e-12);
}

TEST_CASE("empty circuit yields the basis state") {
    DenseState s = simulate_dense(Circuit{5, {}});
    CHECK(s.amplitudes[0] == Amplitude{1.0, 0.0});
    for (size_t i = 1; i < 32; ++i)
        CHECK(s.amplitudes[i] == Amplitude{0.0, 0.0});
}

TEST_CASE("circuit followed by its inverse returns to e_0") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        Circuit c = make_random(8, 20, seed);
        Circuit both = c;
        for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it)
            both.gates.push_back(invert(*it));
        DenseState s = simulate_dense(both);
        CHECK(std::abs(s.amplitudes[0] - Amplitude{1.0, 0.0}) <= 1e-12);
        for (size_t i = 1; i < s.amplitudes.size(); ++i)
            CHECK(std::abs(s.amplitudes[i]) <= 1e-12);
    }
}

TEST_CASE("oracle limit is enforced") {
    CHECK_THROWS_AS(simulate_dense(Circuit{25, {}}), Error);
    CHECK_THROWS_AS(simulate_dense(Circuit{30, {}}, 24), Error);
}

TEST_CASE("fidelity basics") {
    DenseState e0 = make_basis_state(3);
    CHECK(fidelity(e0, e0) == doctest::Approx(1.0).epsilon(1e-12));

    DenseState e1 = make_basis_state(3);
    e1.amplitudes[0] = 0.0;
    e1.amplitudes[1] = 1.0;
    CHECK(fidelity(e0, e1) == 0.0);

    DenseState h = simulate_dense(Circuit{1, {Gate{GateKind::H, {0}, {}}}});
    DenseState e0_1 = make_basis_state(1);
    CHECK(fidelity(e0_1, h) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fidelity is symmetric") {
    DenseState a = simulate_dense(make_random(6, 30, 1));
    DenseState b = simulate_dense(make_random(6, 30, 2));
    CHECK(std::abs(fidelity(a, b) - fidelity(b, a)) <= 1e-12);
}

TEST_CASE("fidelity dimension mismatch is an error") {
    DenseState a = make_basis_state(3);
    DenseState b = make_basis_state(4);
    CHECK_THROWS_AS(fidelity(a, b), Error);
}

TEST_CASE("fidelity against a chunk store") {
    Circuit c = make_ghz(6);
    DenseState dense = simulate_dense(c);
    ChunkStore store = ChunkStore::init_basis_state(6, 2, 0.0);
    for (uint64_t ci = 0; ci < store.chunk_count(); ++ci) {
        std::vector<Amplitude> vals(store.chunk_size());
        for (uint64_t j = 0; j < vals.size(); ++j)
            vals[j] = dense.amplitudes[ci * store.chunk_size() + j];
        store.store_chunk(ci, vals);
    }
    CHECK(fidelity(dense, store) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("norm is preserved across deep circuits") {
    Circuit c = make_random(10, 1000, 99);
    DenseState s = simulate_dense(c);
    CHECK(std::abs(dense_norm(s) - 1.0) <= 1e-12);
}

TEST_CASE("QFT of the basis state is uniform") {
    DenseState s = simulate_dense(make_qft(5));
    double expect = 1.0 / std::sqrt(32.0);
    for (const Amplitude &a : s.amplitudes)
        CHECK(std::abs(std::abs(a) - expect) <= 1e-12);
}
