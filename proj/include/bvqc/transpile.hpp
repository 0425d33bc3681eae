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
 * Re-compilation harness: native-basis decomposition, SWAP routing onto a
 * coupling map, peephole optimization and equivalence certification.
 *
 * A routed circuit acts on physical qubits. Its layout records where each
 * logical qubit sits before (initial) and after (final) the circuit, as
 * full bijections over the physical register; logical indices past the
 * source width are idle ancillas. The contract is
 *   U_routed * P(initial) = P(final) * (U (x) I)
 * up to global phase, with P(perm) moving logical qubit l to perm[l].
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bvqc/bundle.hpp"
#include "bvqc/circuit.hpp"
#include "bvqc/serialize.hpp"
#include "bvqc/watermark.hpp"

namespace bvqc {

struct CouplingMap {
    std::size_t num_physical = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    /// Throws ErrorKind::InvalidArgument for out-of-range or self-loop edges
    /// and ErrorKind::DisconnectedCoupling for a disconnected graph.
    void validate() const;
    [[nodiscard]] bool coupled(std::size_t a, std::size_t b) const;
    /// Sorted neighbour lists.
    [[nodiscard]] std::vector<std::vector<std::size_t>> adjacency() const;

    [[nodiscard]] static CouplingMap line(std::size_t n);
};

[[nodiscard]] Json to_json(const CouplingMap &coupling);
[[nodiscard]] CouplingMap coupling_from_json(const Json &j);
/// Bundled map by name ("line-4", "heavy-hex-27", ...) or by file path.
[[nodiscard]] CouplingMap load_coupling(const std::string &name_or_path);

struct Layout {
    std::vector<std::size_t> initial; // logical -> physical
    std::vector<std::size_t> final;

    /// Throws ErrorKind::InvalidArgument unless both are bijections of
    /// equal size.
    void validate() const;
    [[nodiscard]] static Layout identity(std::size_t n);
};

struct RoutedCircuit {
    ParamCircuit circuit;
    Layout layout;
};

/**
 * @brief Rewrites into {RZ, SX, X, CX}.
 *
 * H -> RZ(pi/2) SX RZ(pi/2); RX(a) -> H RZ(a) H; RY(a) -> RZ(-pi/2) RX(a)
 * RZ(pi/2); SWAP -> three CX. The free parameter of a rotation stays on the
 * RZ that carries its angle, so every result equals the source up to global
 * phase at every theta.
 */
[[nodiscard]] ParamCircuit decompose_to_basis(const ParamCircuit &circuit);

/**
 * @brief Greedy SWAP routing.
 *
 * Each CX on an uncoupled pair moves its control along a BFS shortest path
 * (neighbours visited in ascending index order) until adjacent to the
 * target, emitting each SWAP as three CX. initial_layout is a logical ->
 * physical map over at least the circuit's qubits; missing entries are
 * filled with the unused physical qubits in ascending order. Without one,
 * logical l starts on physical l.
 */
[[nodiscard]] RoutedCircuit route(const ParamCircuit &circuit, const CouplingMap &coupling,
                                  std::optional<std::vector<std::size_t>> initial_layout =
                                      std::nullopt);

/**
 * @brief Peephole passes iterated to a fixed point.
 *
 * Cancels adjacent X.X, H.H, CX.CX and SWAP.SWAP on the same qubits, turns
 * SX.SX into X, merges adjacent bound rotations about the same axis (angle
 * mod 4 pi) and drops bound rotations equal to 0 mod 4 pi. Gates with free
 * parameters are never touched.
 */
[[nodiscard]] ParamCircuit optimize_passes(const ParamCircuit &circuit);

/// Gate list of `circuit` on a wider register (extra qubits idle).
[[nodiscard]] ParamCircuit widen(const ParamCircuit &circuit, std::size_t num_qubits);

/**
 * @brief |tr((U1 (x) I)^dag P(final)^dag U2 P(initial))| / 2^N.
 *
 * c1 is the logical circuit, c2 acts on N = layout size >= c1 width
 * qubits. 1 means equal up to global phase. Throws
 * ErrorKind::WidthOutOfRange for N > kMaxUnitaryQubits.
 */
[[nodiscard]] double equivalence_fidelity(const ParamCircuit &c1, std::span<const double> theta1,
                                          const ParamCircuit &c2, std::span<const double> theta2,
                                          const Layout &layout);

/// Largest 1 - |<a|b>| over `probes` seeded random input states, where a
/// and b are the two sides of the layout contract.
[[nodiscard]] double probe_disagreement(const ParamCircuit &c1, std::span<const double> theta1,
                                        const ParamCircuit &c2, std::span<const double> theta2,
                                        const Layout &layout, std::size_t probes = 20,
                                        std::uint64_t seed = 0);

/**
 * @brief Drops physical qubits the routed circuit never touches.
 *
 * Untouched qubits hold idle logical qubits that never move, so removing
 * them keeps the contract. Logical qubits keep their relative order, so the
 * source circuit's qubits stay at 0..n-1.
 */
[[nodiscard]] RoutedCircuit compact(const RoutedCircuit &routed, std::size_t logical_width);

struct EquivalenceCheck {
    bool exact = false;     // trace fidelity (true) or random-state probe
    double fidelity = 0.0;  // exact: trace fidelity; probe: 1 - disagreement
};

/// Compacts, then uses the trace fidelity when it fits and the probe check
/// otherwise.
[[nodiscard]] EquivalenceCheck certify(const ParamCircuit &logical, const RoutedCircuit &routed,
                                       std::span<const double> theta);

struct AttackVariant {
    std::uint64_t seed = 0;
    RoutedCircuit routed; // physical circuit and layout
    EquivalenceCheck check;
};

inline constexpr double kEquivalenceTolerance = 1e-9;

/**
 * @brief Re-compiles the circuit once per seed: random initial layout on a
 * random connected region of the map, decomposition, routing and
 * optimization.
 *
 * Every variant is certified; a failure raises ErrorKind::EquivalenceFailure.
 */
[[nodiscard]] std::vector<AttackVariant> recompile_attack(const ParamCircuit &circuit,
                                                          std::span<const double> theta,
                                                          const CouplingMap &coupling,
                                                          std::span<const std::uint64_t> seeds);

/// Probe value of a variant: rho_pre and M_pre are carried through the
/// variant's layout.
[[nodiscard]] double variant_probe_value(const RoutedCircuit &variant,
                                         std::size_t logical_width,
                                         std::span<const double> theta,
                                         const WatermarkBundle &wm);

[[nodiscard]] Verdict verify_variant(const RoutedCircuit &variant, std::size_t logical_width,
                                     std::span<const double> theta, const WatermarkBundle &wm);

} // namespace bvqc
