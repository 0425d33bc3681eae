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
 * JSON forms of the machine artifacts.
 *
 * Circuits: {num_qubits, num_params, gates: [{kind, qubits, param}]} with
 * param null, {"bound": radians} or {"free": index[, "scale": s]}.
 * Graphs: {num_nodes, edges: [[i, j, w]]}.
 * Bundles: {prep: {seed, circuit}, obs: [[coeff, word]], l_pre, tau, seed}.
 */

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "bvqc/bundle.hpp"
#include "bvqc/circuit.hpp"
#include "bvqc/graph.hpp"
#include "bvqc/pauli.hpp"

namespace bvqc {

using Json = nlohmann::json;

[[nodiscard]] Json to_json(const ParamCircuit &circuit);
[[nodiscard]] ParamCircuit circuit_from_json(const Json &j);

[[nodiscard]] Json to_json(const Observable &obs);
[[nodiscard]] Observable observable_from_json(const Json &j);

[[nodiscard]] Json to_json(const MaxCutGraph &graph);
[[nodiscard]] MaxCutGraph graph_from_json(const Json &j);

[[nodiscard]] Json to_json(const WatermarkBundle &wm);
[[nodiscard]] WatermarkBundle bundle_from_json(const Json &j);

/// Reads a JSON document; ErrorKind::MissingArtifact if absent,
/// ErrorKind::Parse if malformed.
[[nodiscard]] Json read_json_file(const std::string &path);

/// Writes via a temporary file and rename. Doubles are printed with
/// round-trip precision, so identical values give identical bytes.
void write_file_atomic(const std::string &path, const std::string &contents);
void write_json_file(const std::string &path, const Json &j);

} // namespace bvqc
