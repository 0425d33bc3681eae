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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace bvqc {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 13;

/**
 * @brief Dense pure state over num_qubits qubits.
 *
 * Amplitude index bit (num_qubits - 1 - q) holds qubit q, so qubit 0 is the
 * most significant bit. The norm invariant is established by the factories
 * and preserved by the unitary kernels in simulator.hpp.
 */
class StateVector {
  public:
    /// |0...0>. Throws ErrorKind::WidthOutOfRange outside 1..kMaxQubits.
    explicit StateVector(std::size_t num_qubits);

    /// Takes ownership of amplitudes; the length must be a power of two and
    /// the norm 1 within 1e-10.
    static StateVector from_amplitudes(std::vector<Complex> amps);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }

    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    /// Mutable access for unitary kernels.
    [[nodiscard]] std::span<Complex> data() noexcept { return amps_; }

    [[nodiscard]] Complex operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm() const noexcept;

  private:
    StateVector() = default;

    std::size_t num_qubits_ = 0;
    std::vector<Complex> amps_;
};

/// Computational basis state |basis_index>.
[[nodiscard]] StateVector init_state(std::size_t num_qubits, std::uint64_t basis_index);

/// <a|b>
[[nodiscard]] Complex inner_product(const StateVector &a, const StateVector &b);

/// |<a|b>|^2, insensitive to global phase.
[[nodiscard]] double fidelity(const StateVector &a, const StateVector &b);

/// a (x) b with a on the leading (most significant) qubits.
[[nodiscard]] StateVector tensor(const StateVector &a, const StateVector &b);

/// Moves logical qubit q to position perm[q]; perm must be a bijection on the
/// state's qubits.
[[nodiscard]] StateVector permute_qubits(const StateVector &state,
                                         const std::vector<std::size_t> &perm);

/**
 * @brief <psi| (|s><s| (x) I) |psi> where s spans the leading qubits of psi.
 *
 * Equals |<s|psi>|^2 when the widths agree.
 */
[[nodiscard]] double projector_overlap(const StateVector &s, const StateVector &psi);

} // namespace bvqc
