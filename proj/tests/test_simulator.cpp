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
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

#include "bvqc/builders.hpp"
#include "bvqc/error.hpp"
#include "bvqc/pauli.hpp"
#include "bvqc/simulator.hpp"
#include "bvqc/state.hpp"

using namespace bvqc;

namespace {

StateVector random_state(std::size_t n, std::uint64_t seed) {
    const auto re = oracle::random_theta(std::size_t{1} << n, seed, 1.0);
    const auto im = oracle::random_theta(std::size_t{1} << n, seed + 77, 1.0);
    std::vector<Complex> amps(re.size());
    double norm = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = {re[i], im[i]};
        norm += std::norm(amps[i]);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return StateVector::from_amplitudes(std::move(amps));
}

} // namespace

TEST_CASE("pauli masks follow the qubit-0-is-msb convention") {
    const PauliString p("XIYZ");
    CHECK(p.flip_mask() == 0b1010);
    CHECK(p.sign_mask() == 0b0011);
    CHECK(p.y_count() == 1);
    CHECK(PauliString("IIII").is_identity());
    CHECK(PauliString("ZIZ").is_diagonal());
    CHECK_THROWS_AS(PauliString("XQ"), Error);
}

TEST_CASE("pauli padding and permutation") {
    CHECK(PauliString("XY").padded(4).letters() == "XYII");
    CHECK(PauliString("XYZ").permuted({2, 0, 1}, 4).letters() == "YZXI");
}

TEST_CASE("observable width checks") {
    Observable obs;
    obs.add_term(1.0, PauliString("XX"));
    CHECK_THROWS_AS(obs.add_term(1.0, PauliString("XXX")), Error);
    CHECK(obs.coeff_norm() == doctest::Approx(1.0));
}

TEST_CASE("pauli expectation matches dense kron matrices") {
    const char *words[] = {"XIYZ", "YYYY", "ZIIZ", "IXXI", "IIII", "YZXY"};
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto s = random_state(4, seed);
        const auto v = oracle::vec(s);
        for (const char *w : words) {
            CHECK(pauli_expectation(s, PauliString(w)) ==
                  doctest::Approx(oracle::expectation(v, oracle::pauli(w))).epsilon(1e-12));
        }
    }
}

TEST_CASE("apply_pauli matches dense matrices") {
    const auto s = random_state(3, 9);
    for (const char *w : {"XYZ", "YIY", "ZZI"}) {
        StateVector t = s;
        apply_pauli(t, PauliString(w));
        const oracle::Vec want = oracle::pauli(w) * oracle::vec(s);
        CHECK((oracle::vec(t) - want).norm() < 1e-12);
    }
}

TEST_CASE("observable expectation, compiled form and dense oracle agree") {
    Observable obs;
    obs.add_term(0.3, PauliString("XXYI"));
    obs.add_term(-0.7, PauliString("ZIZI"));
    obs.add_term(0.2, PauliString("YXYZ"));
    obs.add_term(1.1, PauliString("XXZI")); // shares a flip mask with the first term
    obs.add_term(-0.4, PauliString("IIII"));
    const CompiledObservable compiled(obs);
    CHECK(compiled.group_count() == 2);
    const auto m = oracle::observable(obs);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto s = random_state(4, seed);
        const double want = oracle::expectation(oracle::vec(s), m);
        CHECK(expectation(s, obs) == doctest::Approx(want).epsilon(1e-12));
        CHECK(compiled.expectation(s) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)expectation(StateVector(3), obs), Error);
}

TEST_CASE("every gate kernel matches its dense matrix") {
    const std::size_t n = 3;
    const auto s = random_state(n, 5);
    const double a = 0.731;
    const Gate gates[] = {Gate::fixed(GateKind::H, 1),      Gate::fixed(GateKind::X, 0),
                          Gate::fixed(GateKind::SX, 2),     Gate::bound(GateKind::RX, 0, a),
                          Gate::bound(GateKind::RY, 1, a),  Gate::bound(GateKind::RZ, 2, a),
                          Gate::cx(0, 2),                   Gate::cx(2, 1),
                          Gate::swap(0, 1)};
    for (const auto &g : gates) {
        StateVector t = s;
        apply_gate(t, g, a);
        const oracle::Vec want = oracle::gate(n, g, a) * oracle::vec(s);
        CHECK((oracle::vec(t) - want).norm() < 1e-12);
    }
}

TEST_CASE("run_circuit matches the dense product and circuit_unitary") {
    const auto c = build_hea(4, 2);
    const auto theta = oracle::random_theta(c.num_params(), 3, std::numbers::pi);
    const auto u = oracle::unitary(c, theta);
    CHECK((circuit_unitary(c, theta) - u).norm() < 1e-10);
    const auto in = init_state(4, 9);
    const auto out = run_circuit(c, theta, in);
    CHECK((oracle::vec(out) - u.col(9)).norm() < 1e-12);
    CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("run_circuit rejects bad inputs") {
    const auto c = build_hea(3, 1);
    std::vector<double> short_theta(c.num_params() - 1, 0.0);
    CHECK_THROWS_AS((void)run_circuit(c, short_theta, StateVector(3)), Error);
    std::vector<double> theta(c.num_params(), 0.0);
    CHECK_THROWS_AS((void)run_circuit(c, theta, StateVector(4)), Error);
}

TEST_CASE("state factories and helpers") {
    CHECK_THROWS_AS(StateVector(0), Error);
    CHECK_THROWS_AS(StateVector(kMaxQubits + 1), Error);
    CHECK_THROWS_AS((void)StateVector::from_amplitudes({1.0, 1.0}), Error);
    const auto b = init_state(3, 0b101);
    CHECK(b[5] == Complex(1.0, 0.0));
    const auto t = tensor(init_state(1, 1), init_state(2, 2));
    CHECK(t[0b110] == Complex(1.0, 0.0));
    // Qubit 0 of |100> moves to position 2: |001>.
    const auto p = permute_qubits(init_state(3, 0b100), {2, 0, 1});
    CHECK(p[0b001] == Complex(1.0, 0.0));
    const auto s = random_state(2, 4);
    CHECK(fidelity(s, s) == doctest::Approx(1.0));
    const auto padded = tensor(s, random_state(1, 8));
    CHECK(projector_overlap(s, padded) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact_eigensolve returns ascending dense eigenpairs") {
    Observable obs;
    obs.add_term(1.0, PauliString("ZZ"));
    obs.add_term(0.5, PauliString("XI"));
    obs.add_term(0.25, PauliString("YY"));
    const auto pairs = exact_eigensolve(obs, 4);
    REQUIRE(pairs.size() == 4);
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(oracle::observable(obs));
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(pairs[k].value == doctest::Approx(es.eigenvalues()(static_cast<Eigen::Index>(k))));
        CHECK(expectation(pairs[k].vector, obs) == doctest::Approx(pairs[k].value));
    }
    CHECK_THROWS_AS((void)exact_eigensolve(obs, 5), Error);
}
