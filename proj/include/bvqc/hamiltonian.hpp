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

#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bvqc/builders.hpp"
#include "bvqc/circuit.hpp"
#include "bvqc/graph.hpp"
#include "bvqc/pauli.hpp"
#include "bvqc/state.hpp"

namespace bvqc {

/**
 * @brief Parses the .pauli text format.
 *
 * One term per line, "<coefficient> <word>", '#' starts a comment and blank
 * lines are skipped. Errors carry the 1-based line number.
 */
[[nodiscard]] Observable parse_observable(std::istream &in);
[[nodiscard]] Observable parse_observable(std::string_view text);
[[nodiscard]] Observable load_observable(const std::string &path);

/// sum_e (w_e / 2)(Z_i Z_j - I); the identity parts fold into one trailing
/// all-I term. Its minimum is minus the maximum cut weight.
[[nodiscard]] Observable maxcut_hamiltonian(const MaxCutGraph &graph);

inline constexpr std::size_t kMaxDiagonalQubits = 24;

/**
 * @brief Level-th lowest eigenvalue (0 = ground), counted with multiplicity.
 *
 * Diagonal observables are solved by bitstring enumeration up to
 * kMaxDiagonalQubits; anything else goes through exact_eigensolve.
 */
[[nodiscard]] double optimal_value(const Observable &obs, std::size_t level = 0);

/// Computational basis input |index>.
struct BasisInput {
    std::uint64_t index = 0;

    friend bool operator==(const BasisInput &, const BasisInput &) = default;
};

using InputSpec = std::variant<BasisInput, PrepSpec>;

[[nodiscard]] StateVector prepare_input(const InputSpec &input, std::size_t num_qubits);

/// Overlap penalty weight * <psi|(|s><s| (x) I)|psi>; s may cover only the
/// leading qubits of the register.
struct Deflation {
    double weight = 0.0;
    StateVector state{1};
};

/// Base task: circuit, rho_b, M_b, L_b-opti and optional VQD deflation.
struct TaskSpec {
    std::string name;
    ParamCircuit circuit;
    InputSpec input;
    Observable obs;
    double optimal = 0.0;
    std::vector<Deflation> deflation;

    /// Throws ErrorKind::WidthMismatch / InvalidArgument on inconsistency.
    void validate() const;
};

} // namespace bvqc
