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
 * Registry of the six bundled benchmarks: ansatz settings, Hamiltonian or
 * graph data, basis input and optimum.
 */

#pragma once

#include <array>
#include <string>
#include <string_view>

#include "bvqc/hamiltonian.hpp"

namespace bvqc {

inline constexpr std::array<std::string_view, 6> kBenchmarkIds = {
    "vqe-h2", "vqe-h3p", "qaoa-4", "qaoa-6", "vqd-h2", "vqd-h3p"};

/// Directory holding the bundled data files. BVQC_DATA_DIR in the
/// environment overrides the compiled-in default.
[[nodiscard]] std::string data_dir();

/**
 * @brief Builds the TaskSpec for a benchmark id.
 *
 * VQE tasks start from the Hartree-Fock occupation |10..01>. VQD tasks run on the
 * molecular Hamiltonian padded with identities to the ansatz width; the
 * single deflation term projects the leading qubits onto the exact ground
 * state with weight 3 * coeff_norm, and the optimum is the first excited
 * level. QAOA tasks start from |0..0> (the circuit applies H itself).
 *
 * Throws ErrorKind::InvalidArgument for an unknown id.
 */
[[nodiscard]] TaskSpec load_benchmark(std::string_view id);

} // namespace bvqc
