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

/**
 * @file
 * Deterministic builders for the benchmark ansatze and for the state
 * preparation circuits that produce watermark probe inputs.
 */

#pragma once

#include <cstdint>

#include "bvqc/circuit.hpp"
#include "bvqc/graph.hpp"
#include "bvqc/state.hpp"

namespace bvqc {

/**
 * @brief Hardware-efficient ansatz.
 *
 * Each layer applies RX, RZ, RY (in that order, fresh parameters) on every
 * qubit, then a ring CX(0,1), CX(1,2), ..., CX(n-1,0). Gate counts:
 * 3*n*layers one-qubit, n*layers two-qubit.
 */
[[nodiscard]] ParamCircuit build_hea(std::size_t num_qubits, std::size_t layers);

/**
 * @brief QAOA for MaxCut with p cost/mixer layers.
 *
 * Parameters are (gamma_1..gamma_p, beta_1..beta_p). Each edge contributes
 * CX(i,j) RZ(2 gamma) CX(i,j); the mixer is RX(2 beta) on every qubit. Both
 * parameters are shared across the gates of their layer.
 */
[[nodiscard]] ParamCircuit build_qaoa(const MaxCutGraph &graph, std::size_t p);

/// Fully bound circuit that prepares a watermark probe input from |0...0>.
struct PrepSpec {
    ParamCircuit circuit;
    std::uint64_t seed = 0;

    friend bool operator==(const PrepSpec &, const PrepSpec &) = default;
};

/// One layer of seeded RY, RZ per qubit (angles in [0, 2 pi)) and a CX ring.
[[nodiscard]] PrepSpec build_prep(std::uint64_t seed, std::size_t num_qubits);

/// The prepared state prep|0...0>.
[[nodiscard]] StateVector prepare(const PrepSpec &prep);

} // namespace bvqc
