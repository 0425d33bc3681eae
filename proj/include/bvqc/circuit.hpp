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
 * Gate-list intermediate representation shared by the simulator, the trainer
 * and the transpiler.
 */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bvqc {

enum class GateKind : std::uint8_t { H, X, SX, RX, RY, RZ, CX, SWAP };

[[nodiscard]] std::string_view to_string(GateKind kind) noexcept;
[[nodiscard]] std::optional<GateKind> gate_kind_from_string(std::string_view name) noexcept;

[[nodiscard]] constexpr bool is_rotation(GateKind k) noexcept {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

[[nodiscard]] constexpr std::size_t arity(GateKind k) noexcept {
    return (k == GateKind::CX || k == GateKind::SWAP) ? 2 : 1;
}

/// Angle = scale * theta[index]. A scale of -1 expresses the inverse of a
/// trainable rotation, a scale of 2 the RZ(2 gamma) of a cost layer.
struct FreeParam {
    std::size_t index = 0;
    double scale = 1.0;

    friend bool operator==(const FreeParam &, const FreeParam &) = default;
};

struct BoundParam {
    double angle = 0.0; // radians

    friend bool operator==(const BoundParam &, const BoundParam &) = default;
};

using GateParam = std::variant<std::monostate, FreeParam, BoundParam>;

struct Gate {
    GateKind kind = GateKind::X;
    std::array<std::size_t, 2> qubits{}; // second entry unused for 1-qubit kinds
    GateParam param;

    [[nodiscard]] std::size_t arity() const noexcept { return bvqc::arity(kind); }
    [[nodiscard]] bool is_free() const noexcept {
        return std::holds_alternative<FreeParam>(param);
    }
    [[nodiscard]] bool is_bound() const noexcept {
        return std::holds_alternative<BoundParam>(param);
    }
    [[nodiscard]] bool acts_on(std::size_t q) const noexcept {
        return qubits[0] == q || (arity() == 2 && qubits[1] == q);
    }

    static Gate fixed(GateKind kind, std::size_t q);
    static Gate free(GateKind kind, std::size_t q, std::size_t index, double scale = 1.0);
    static Gate bound(GateKind kind, std::size_t q, double angle);
    static Gate cx(std::size_t control, std::size_t target);
    static Gate swap(std::size_t a, std::size_t b);

    friend bool operator==(const Gate &, const Gate &) = default;
};

/**
 * @brief Ordered gate list housing U(theta).
 *
 * Gates apply in list order. add() enforces the per-gate invariants; the
 * parameter coverage invariant is checked by unused_params().
 */
class ParamCircuit {
  public:
    ParamCircuit() = default;
    ParamCircuit(std::size_t num_qubits, std::size_t num_params);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t num_params() const noexcept { return num_params_; }
    [[nodiscard]] const std::vector<Gate> &gates() const noexcept { return gates_; }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }

    /// Throws ErrorKind::InvalidArgument on a malformed gate.
    void add(const Gate &gate);
    void append(std::span<const Gate> gates);

    /// Parameter indices in 0..num_params that no gate references.
    [[nodiscard]] std::vector<std::size_t> unused_params() const;

    /// Number of gates that carry a free parameter.
    [[nodiscard]] std::size_t free_gate_count() const noexcept;

    friend bool operator==(const ParamCircuit &, const ParamCircuit &) = default;

  private:
    std::size_t num_qubits_ = 0;
    std::size_t num_params_ = 0;
    std::vector<Gate> gates_;
};

struct GateCounts {
    std::size_t one_qubit = 0;
    std::size_t two_qubit = 0;

    friend bool operator==(const GateCounts &, const GateCounts &) = default;
};

[[nodiscard]] GateCounts gate_counts(const ParamCircuit &circuit) noexcept;

/// Concrete angle of every gate (0 for non-rotations).
[[nodiscard]] std::vector<double> resolve_angles(const ParamCircuit &circuit,
                                                 std::span<const double> theta);

/// Exact inverse gate list: reversed order, rotations negated, self-inverse
/// kinds repeated, SX replaced by SX^3.
[[nodiscard]] ParamCircuit inverse(const ParamCircuit &circuit);

} // namespace bvqc
