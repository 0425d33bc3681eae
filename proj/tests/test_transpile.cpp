// Copyright 2026 The BVQC Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "bvqc/benchmarks.hpp"
#include "bvqc/builders.hpp"
#include "bvqc/error.hpp"
#include "bvqc/simulator.hpp"
#include "bvqc/train.hpp"
#include "bvqc/transpile.hpp"
#include "bvqc/watermark.hpp"

using namespace bvqc;

namespace {

// Every gate kind, free and bound parameters, non-adjacent CX and SWAP.
ParamCircuit mixed_circuit() {
    ParamCircuit c(4, 3);
    c.add(Gate::fixed(GateKind::H, 0));
    c.add(Gate::free(GateKind::RX, 1, 0));
    c.add(Gate::cx(0, 3));
    c.add(Gate::free(GateKind::RY, 2, 1, -1.0));
    c.add(Gate::fixed(GateKind::SX, 3));
    c.add(Gate::swap(1, 3));
    c.add(Gate::bound(GateKind::RZ, 0, 0.4));
    c.add(Gate::fixed(GateKind::X, 2));
    c.add(Gate::cx(3, 1));
    c.add(Gate::free(GateKind::RZ, 3, 2, 2.0));
    c.add(Gate::cx(2, 0));
    return c;
}

// |tr(A^dag B)| / dim: 1 iff equal up to global phase.
double phase_fidelity(const oracle::Mat &a, const oracle::Mat &b) {
    return std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

// Permutation matrix moving logical qubit q to physical perm[q].
oracle::Mat permutation(const std::vector<std::size_t> &perm) {
    const std::size_t n = perm.size();
    const auto dim = std::size_t{1} << n;
    oracle::Mat p = oracle::Mat::Zero(static_cast<Eigen::Index>(dim),
                                      static_cast<Eigen::Index>(dim));
    for (std::size_t x = 0; x < dim; ++x) {
        std::size_t y = 0;
        for (std::size_t q = 0; q < n; ++q) {
            if ((x >> (n - 1 - q)) & 1U) {
                y |= std::size_t{1} << (n - 1 - perm[q]);
            }
        }
        p(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = 1.0;
    }
    return p;
}

bool in_basis(const ParamCircuit &c) {
    for (const auto &g : c.gates()) {
        if (g.kind != GateKind::RZ && g.kind != GateKind::SX && g.kind != GateKind::X &&
            g.kind != GateKind::CX) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("coupling maps") {
    CHECK(load_coupling("line-4").edges == CouplingMap::line(4).edges);
    const auto hh = load_coupling("heavy-hex-27");
    CHECK(hh.num_physical == 27);
    CHECK_NOTHROW(hh.validate());
    CHECK(hh.coupled(1, 0) == hh.coupled(0, 1));
    try {
        CouplingMap{4, {{0, 1}, {2, 3}}}.validate();
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::DisconnectedCoupling);
    }
    CHECK_THROWS_AS((CouplingMap{2, {{0, 0}}}.validate()), Error);
    CHECK_THROWS_AS((void)load_coupling("no-such-map"), Error);
}

TEST_CASE("basis decomposition preserves the unitary up to phase") {
    const auto c = mixed_circuit();
    const auto b = decompose_to_basis(c);
    CHECK(in_basis(b));
    CHECK(b.num_params() == c.num_params());
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto theta = oracle::random_theta(3, seed, std::numbers::pi);
        CHECK(phase_fidelity(oracle::unitary(c, theta), oracle::unitary(b, theta)) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("routing respects coupling and the layout contract") {
    const auto c = decompose_to_basis(mixed_circuit());
    const auto coupling = CouplingMap::line(5);
    const std::vector<std::size_t> initial = {3, 0, 4, 1};
    const auto routed = route(c, coupling, initial);
    CHECK(routed.circuit.num_qubits() == 5);
    for (const auto &g : routed.circuit.gates()) {
        if (g.arity() == 2) {
            CHECK(coupling.coupled(g.qubits[0], g.qubits[1]));
        }
    }
    CHECK(std::vector<std::size_t>(routed.layout.initial.begin(),
                                   routed.layout.initial.begin() + 4) == initial);
    const auto theta = oracle::random_theta(3, 9, std::numbers::pi);
    // U_routed P(initial) = P(final) (U (x) I), up to global phase.
    const oracle::Mat lhs = oracle::unitary(routed.circuit, theta) *
                            permutation(routed.layout.initial);
    const oracle::Mat rhs = permutation(routed.layout.final) *
                            oracle::kron(oracle::unitary(c, theta), oracle::Mat::Identity(2, 2));
    CHECK(phase_fidelity(lhs, rhs) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(equivalence_fidelity(c, theta, routed.circuit, theta, routed.layout) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("peephole passes cancel, merge and keep the unitary") {
    ParamCircuit c(2, 1);
    c.add(Gate::fixed(GateKind::X, 0));
    c.add(Gate::fixed(GateKind::X, 0));
    c.add(Gate::bound(GateKind::RZ, 1, 0.3));
    c.add(Gate::bound(GateKind::RZ, 1, -0.3));
    c.add(Gate::cx(0, 1));
    c.add(Gate::cx(0, 1));
    c.add(Gate::fixed(GateKind::SX, 0));
    c.add(Gate::fixed(GateKind::SX, 0));
    c.add(Gate::free(GateKind::RZ, 1, 0));
    c.add(Gate::bound(GateKind::RZ, 1, 4 * std::numbers::pi));
    const auto o = optimize_passes(c);
    REQUIRE(o.size() == 2);
    CHECK(o.gates()[0] == Gate::fixed(GateKind::X, 0));
    CHECK(o.gates()[1] == Gate::free(GateKind::RZ, 1, 0));

    const auto big = decompose_to_basis(mixed_circuit());
    const auto opt = optimize_passes(big);
    CHECK(opt.size() <= big.size());
    CHECK(opt.free_gate_count() == big.free_gate_count());
    const auto theta = oracle::random_theta(3, 4, 2.0);
    CHECK(phase_fidelity(oracle::unitary(big, theta), oracle::unitary(opt, theta)) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("compaction drops idle physical qubits") {
    const auto c = decompose_to_basis(build_hea(3, 1));
    const auto coupling = load_coupling("heavy-hex-27");
    const auto routed = route(c, coupling, std::vector<std::size_t>{0, 1, 4});
    const auto small = compact(routed, 3);
    CHECK(small.circuit.num_qubits() < 27);
    CHECK(small.circuit.num_qubits() >= 3);
    const auto theta = oracle::random_theta(c.num_params(), 2, 1.0);
    CHECK(equivalence_fidelity(c, theta, small.circuit, theta, small.layout) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("certify catches a tampered variant") {
    const auto c = build_hea(3, 1);
    const auto theta = oracle::random_theta(c.num_params(), 1, 1.0);
    RoutedCircuit r = route(decompose_to_basis(c), CouplingMap::line(3));
    CHECK(certify(c, r, theta).fidelity == doctest::Approx(1.0).epsilon(1e-12));
    r.circuit.add(Gate::fixed(GateKind::X, 1));
    CHECK(certify(c, r, theta).fidelity < 0.99);
    // The random-state probe sees the same tampering.
    CHECK(probe_disagreement(c, theta, r.circuit, theta, r.layout) > 1e-3);
}

TEST_CASE("recompile attack variants are certified and keep the verdict") {
    const auto task = load_benchmark("vqe-h2");
    TrainConfig cfg;
    const auto theta = train_loop(task, nullptr, cfg).theta;
    auto wm = generate_candidate(2, theta, task, GroupingConfig{});
    wm.l_pre -= GroupingConfig{}.delta; // the trained model now verifies
    const std::vector<std::uint64_t> seeds = {0, 1, 2, 3};
    for (const char *map : {"line-4", "hex-7"}) {
        CAPTURE(map);
        const auto variants = recompile_attack(task.circuit, theta, load_coupling(map), seeds);
        REQUIRE(variants.size() == 4);
        std::set<std::vector<std::size_t>> layouts;
        for (const auto &v : variants) {
            CHECK(in_basis(v.routed.circuit));
            CHECK(v.check.exact);
            CHECK(v.check.fidelity >= 1.0 - kEquivalenceTolerance);
            const auto after = verify_variant(v.routed, 4, theta, wm);
            CHECK(after.confirmed);
            CHECK(std::abs(after.wm_gtd - verify(task.circuit, theta, wm).wm_gtd) <= 1e-9);
            layouts.insert(v.routed.layout.initial);
        }
        CHECK(layouts.size() > 1);
        const auto again = recompile_attack(task.circuit, theta, load_coupling(map), seeds);
        CHECK(again[2].routed.circuit == variants[2].routed.circuit);
    }
}

TEST_CASE("wide variants use the random-state probe") {
    const auto task = load_benchmark("vqd-h2");
    const auto theta = oracle::random_theta(task.circuit.num_params(), 5, 1.0);
    const std::vector<std::uint64_t> seeds = {7};
    const auto v = recompile_attack(task.circuit, theta, load_coupling("line-9"), seeds);
    CHECK(!v[0].check.exact);
    CHECK(v[0].check.fidelity >= 1.0 - kEquivalenceTolerance);
}
