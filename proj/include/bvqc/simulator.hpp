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
 * Dense statevector kernels: gate application, circuit execution,
 * observable expectations, and the dense eigensolver / unitary extraction
 * used as ground-truth oracles.
 */

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bvqc/circuit.hpp"
#include "bvqc/pauli.hpp"
#include "bvqc/state.hpp"

namespace bvqc {

inline constexpr std::size_t kMaxEigensolveQubits = 10;
inline constexpr std::size_t kMaxUnitaryQubits = 8;

/// Applies one gate at a concrete angle (ignored for non-rotations).
void apply_gate(StateVector &state, GateKind kind, const std::array<std::size_t, 2> &qubits,
                double angle = 0.0);

inline void apply_gate(StateVector &state, const Gate &gate, double angle) {
    apply_gate(state, gate.kind, gate.qubits, angle);
}

/// Applies gates [first, last) of a circuit using pre-resolved angles.
void apply_gates(StateVector &state, const ParamCircuit &circuit,
                 std::span<const double> angles, std::size_t first, std::size_t last);

/**
 * @brief U(theta)|input>.
 *
 * Throws ErrorKind::ParamCountMismatch when theta has the wrong length and
 * ErrorKind::WidthMismatch when the input width differs from the circuit.
 */
[[nodiscard]] StateVector run_circuit(const ParamCircuit &circuit, std::span<const double> theta,
                                      const StateVector &input);

/// In-place P|psi>.
void apply_pauli(StateVector &state, const PauliString &pauli);

/// <psi|P|psi>, real part (Pauli words are Hermitian).
[[nodiscard]] double pauli_expectation(const StateVector &state, const PauliString &pauli);

/// sum_i w_i <psi|P_i|psi>. Throws ErrorKind::WidthMismatch.
[[nodiscard]] double expectation(const StateVector &state, const Observable &obs);

/**
 * @brief Observable pre-tabulated for repeated evaluation.
 *
 * Terms sharing a flip mask are folded into one table of per-basis-state
 * weights, so evaluation costs one pass per distinct flip mask rather than
 * one per term. Agrees with expectation() up to rounding.
 */
class CompiledObservable {
  public:
    explicit CompiledObservable(const Observable &obs);

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] std::size_t group_count() const noexcept { return groups_.size(); }
    [[nodiscard]] double expectation(const StateVector &state) const;

  private:
    struct Group {
        std::uint64_t flip = 0;
        std::vector<Complex> weights;
    };
    std::size_t width_ = 0;
    std::vector<double> diagonal_;
    std::vector<Group> groups_;
};

/// Dense 2^n x 2^n matrix of obs, for the eigensolver oracle path.
[[nodiscard]] Eigen::MatrixXcd dense_matrix(const Observable &obs);

struct EigenPair {
    double value = 0.0;
    StateVector vector{1};
};

/**
 * @brief k lowest eigenpairs in ascending order via a dense Hermitian solve.
 *
 * Throws ErrorKind::WidthOutOfRange above kMaxEigensolveQubits and
 * ErrorKind::InvalidArgument when k exceeds 2^n.
 */
[[nodiscard]] std::vector<EigenPair> exact_eigensolve(const Observable &obs, std::size_t k);

/// Column j is U(theta)|j>. Width limited to kMaxUnitaryQubits.
[[nodiscard]] Eigen::MatrixXcd circuit_unitary(const ParamCircuit &circuit,
                                               std::span<const double> theta);

} // namespace bvqc
