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

#include "bvqc/builders.hpp"

#include <numbers>

#include "bvqc/error.hpp"
#include "bvqc/random.hpp"
#include "bvqc/simulator.hpp"

namespace bvqc {

ParamCircuit build_hea(std::size_t num_qubits, std::size_t layers) {
    require(num_qubits >= 2, ErrorKind::InvalidArgument, "HEA needs at least two qubits");
    require(layers >= 1, ErrorKind::InvalidArgument, "HEA needs at least one layer");
    ParamCircuit c(num_qubits, 3 * num_qubits * layers);
    std::size_t next = 0;
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t q = 0; q < num_qubits; ++q) {
            c.add(Gate::free(GateKind::RX, q, next++));
            c.add(Gate::free(GateKind::RZ, q, next++));
            c.add(Gate::free(GateKind::RY, q, next++));
        }
        for (std::size_t q = 0; q < num_qubits; ++q) {
            c.add(Gate::cx(q, (q + 1) % num_qubits));
        }
    }
    return c;
}

ParamCircuit build_qaoa(const MaxCutGraph &graph, std::size_t p) {
    graph.validate();
    require(p >= 1, ErrorKind::InvalidArgument, "QAOA needs p >= 1");
    const std::size_t n = graph.num_nodes;
    ParamCircuit c(n, 2 * p);
    for (std::size_t q = 0; q < n; ++q) {
        c.add(Gate::fixed(GateKind::H, q));
    }
    for (std::size_t l = 0; l < p; ++l) {
        for (const auto &e : graph.edges) {
            c.add(Gate::cx(e.i, e.j));
            c.add(Gate::free(GateKind::RZ, e.j, l, 2.0 * e.weight));
            c.add(Gate::cx(e.i, e.j));
        }
        for (std::size_t q = 0; q < n; ++q) {
            c.add(Gate::free(GateKind::RX, q, p + l, 2.0));
        }
    }
    return c;
}

PrepSpec build_prep(std::uint64_t seed, std::size_t num_qubits) {
    require(num_qubits >= 2, ErrorKind::InvalidArgument, "prep circuits need two or more qubits");
    Rng rng(seed);
    ParamCircuit c(num_qubits, 0);
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    for (std::size_t q = 0; q < num_qubits; ++q) {
        c.add(Gate::bound(GateKind::RY, q, rng.uniform(0.0, kTwoPi)));
        c.add(Gate::bound(GateKind::RZ, q, rng.uniform(0.0, kTwoPi)));
    }
    for (std::size_t q = 0; q < num_qubits; ++q) {
        c.add(Gate::cx(q, (q + 1) % num_qubits));
    }
    return {std::move(c), seed};
}

StateVector prepare(const PrepSpec &prep) {
    return run_circuit(prep.circuit, {}, StateVector(prep.circuit.num_qubits()));
}

} // namespace bvqc
