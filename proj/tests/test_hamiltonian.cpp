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


#include <algorithm>
#include <limits>
#include <string>

#include "doctest.h"
#include "oracles.hpp"

#include "bvqc/benchmarks.hpp"
#include "bvqc/error.hpp"
#include "bvqc/hamiltonian.hpp"
#include "bvqc/serialize.hpp"
#include "bvqc/simulator.hpp"
#include "bvqc/train.hpp"

using namespace bvqc;

namespace {

std::string error_message(const std::string &text) {
    try {
        (void)parse_observable(text);
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::Parse);
        return e.what();
    }
    return {};
}

double brute_force_max_cut(const MaxCutGraph &g) {
    double best = 0.0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << g.num_nodes); ++bits) {
        double cut = 0.0;
        for (const auto &e : g.edges) {
            const bool a = (bits >> e.i) & 1U;
            const bool b = (bits >> e.j) & 1U;
            cut += a != b ? e.weight : 0.0;
        }
        best = std::max(best, cut);
    }
    return best;
}

} // namespace

TEST_CASE("pauli text format") {
    const auto obs = parse_observable("# comment\n\n 0.5 XZ\n-1e-1 IY # tail\n");
    REQUIRE(obs.terms().size() == 2);
    CHECK(obs.terms()[0].coeff == 0.5);
    CHECK(obs.terms()[1].pauli.letters() == "IY");
}

TEST_CASE("pauli text errors carry line numbers") {
    CHECK(error_message("0.5 XX\nabc YY\n").find("line 2") != std::string::npos);
    CHECK(error_message("0.5 XX\n0.1 XXX\n").find("line 2") != std::string::npos);
    CHECK(error_message("0.5 XX\n\n0.1 XQ\n").find("line 3") != std::string::npos);
    CHECK_THROWS_AS((void)parse_observable("# nothing\n"), Error);
}

TEST_CASE("bundled molecular hamiltonians") {
    const auto h2 = load_observable(data_dir() + "/h2.pauli");
    CHECK(h2.width() == 4);
    CHECK(h2.terms().size() == 15);
    const auto h3 = load_observable(data_dir() + "/h3plus.pauli");
    CHECK(h3.width() == 6);
    // Dense oracle: ground energy of H2 at 0.7 angstrom in STO-3G.
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(oracle::observable(h2));
    CHECK(optimal_value(h2) == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-10));
    CHECK(optimal_value(h2) == doctest::Approx(-1.13619).epsilon(1e-4));
    // The Hartree-Fock determinant |1001> is the lowest basis state and lies
    // above the correlated ground state.
    const double hf = expectation(init_state(4, 0b1001), h2);
    for (std::uint64_t b = 0; b < 16; ++b) {
        CHECK(expectation(init_state(4, b), h2) >= hf - 1e-12);
    }
    CHECK(hf > optimal_value(h2));
    CHECK_THROWS_AS((void)load_observable("/nonexistent.pauli"), Error);
}

TEST_CASE("maxcut hamiltonian minimum equals minus the brute-force max cut") {
    for (const auto *file : {"/graphs/qaoa4.json", "/graphs/qaoa6.json"}) {
        const auto g = graph_from_json(read_json_file(data_dir() + file));
        const auto h = maxcut_hamiltonian(g);
        CHECK(h.is_diagonal());
        CHECK(optimal_value(h) == doctest::Approx(-brute_force_max_cut(g)));
        // Every basis state gives minus its cut value.
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << g.num_nodes); b += 3) {
            CHECK(expectation(init_state(g.num_nodes, b), h) ==
                  doctest::Approx(-g.cut_value(b)));
        }
    }
}

TEST_CASE("graph validation") {
    CHECK_THROWS_AS((MaxCutGraph{3, {{0, 0, 1.0}}}.validate()), Error);
    CHECK_THROWS_AS((MaxCutGraph{3, {{0, 3, 1.0}}}.validate()), Error);
    CHECK_THROWS_AS((MaxCutGraph{3, {{0, 1, 1.0}, {1, 0, 1.0}}}.validate()), Error);
    CHECK_THROWS_AS((MaxCutGraph{3, {}}.validate()), Error);
}

TEST_CASE("optimal_value levels count multiplicity") {
    Observable obs;
    obs.add_term(1.0, PauliString("ZZ"));
    CHECK(optimal_value(obs, 0) == -1.0);
    CHECK(optimal_value(obs, 1) == -1.0);
    CHECK(optimal_value(obs, 2) == 1.0);
    CHECK_THROWS_AS((void)optimal_value(obs, 4), Error);
}

TEST_CASE("benchmark registry") {
    for (const auto id : kBenchmarkIds) {
        CAPTURE(id);
        const auto task = load_benchmark(id);
        CHECK_NOTHROW(task.validate());
        CHECK(task.circuit.num_qubits() == task.obs.width());
    }
    CHECK_THROWS_AS((void)load_benchmark("vqe-h4"), Error);

    // VQD optimum is the first excited level of the molecular Hamiltonian.
    const auto h2 = load_observable(data_dir() + "/h2.pauli");
    const auto vqd = load_benchmark("vqd-h2");
    CHECK(vqd.optimal == doctest::Approx(optimal_value(h2, 1)));
    CHECK(vqd.circuit.num_qubits() == 9);
    REQUIRE(vqd.deflation.size() == 1);
    CHECK(vqd.deflation[0].weight > optimal_value(h2, 1) - optimal_value(h2, 0));

    const auto qaoa = load_benchmark("qaoa-6");
    CHECK(qaoa.optimal == -5.0);
}

TEST_CASE("task_loss and vqd_loss against dense oracles") {
    const auto task = load_benchmark("vqd-h2");
    const auto theta = oracle::random_theta(task.circuit.num_params(), 2, 1.0);
    const auto psi = oracle::vec(
        run_circuit(task.circuit, theta, prepare_input(task.input, task.circuit.num_qubits())));
    const double energy = oracle::expectation(psi, oracle::observable(task.obs));
    CHECK(task_loss(task.circuit, theta, task.input, task.obs) ==
          doctest::Approx(energy).epsilon(1e-12));
    // Penalty: project the leading 4 qubits on the ground state, identity on 5.
    const auto ground = oracle::vec(task.deflation[0].state);
    const oracle::Mat proj =
        oracle::kron(ground * ground.adjoint(), oracle::Mat::Identity(32, 32));
    const double penalty = task.deflation[0].weight * oracle::expectation(psi, proj);
    CHECK(vqd_loss(task.circuit, theta, task.input, task.obs, task.deflation) ==
          doctest::Approx(energy + penalty).epsilon(1e-12));
}
