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
 * Depolarizing noise by Pauli trajectory sampling, global gate folding and
 * zero-noise extrapolation.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bvqc/circuit.hpp"
#include "bvqc/pauli.hpp"
#include "bvqc/serialize.hpp"
#include "bvqc/state.hpp"

namespace bvqc {

struct NoiseModel {
    double p1 = 0.0; // after each one-qubit gate
    double p2 = 0.0; // after each two-qubit gate

    /// Throws ErrorKind::InvalidArgument outside [0, 0.25].
    void validate() const;
    [[nodiscard]] bool is_noiseless() const noexcept { return p1 == 0.0 && p2 == 0.0; }

    friend bool operator==(const NoiseModel &, const NoiseModel &) = default;
};

[[nodiscard]] Json to_json(const NoiseModel &model);
[[nodiscard]] NoiseModel noise_from_json(const Json &j);
/// Bundled preset ("kol-like", "cai-like") or a JSON file path.
[[nodiscard]] NoiseModel load_noise(const std::string &preset_or_path);

struct NoisyEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
};

/**
 * @brief Trajectory average of <obs>.
 *
 * After every gate a uniformly random non-identity Pauli hits the acted-on
 * qubit with probability p1, or the acted-on pair with probability p2.
 * Trajectory t draws from seed + t. A noiseless model returns the exact
 * expectation with zero standard error.
 */
[[nodiscard]] NoisyEstimate noisy_expectation(const ParamCircuit &circuit,
                                              std::span<const double> theta,
                                              const StateVector &input, const Observable &obs,
                                              const NoiseModel &model, std::size_t shots,
                                              std::uint64_t seed);

/// C (C^dag C)^((factor - 1) / 2). Throws ErrorKind::InvalidArgument for an
/// even or zero factor.
[[nodiscard]] ParamCircuit fold_circuit(const ParamCircuit &circuit, std::size_t factor);

struct ZneFit {
    double linear = 0.0;                 // least-squares line at factor 0
    std::optional<double> quadratic;     // with three or more factors
};

/// Throws ErrorKind::InvalidArgument with fewer than two points or
/// repeated factors.
[[nodiscard]] ZneFit zne_extrapolate(std::span<const std::pair<double, double>> points);

struct ZneRun {
    std::vector<std::pair<double, double>> points; // (factor, noisy mean)
    ZneFit fit;
};

/// Folds at each factor, estimates with the given shots and extrapolates.
[[nodiscard]] ZneRun zne_estimate(const ParamCircuit &circuit, std::span<const double> theta,
                                  const StateVector &input, const Observable &obs,
                                  const NoiseModel &model, std::span<const std::size_t> factors,
                                  std::size_t shots, std::uint64_t seed);

} // namespace bvqc
