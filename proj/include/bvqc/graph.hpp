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
#include <vector>

namespace bvqc {

struct WeightedEdge {
    std::size_t i = 0;
    std::size_t j = 0;
    double weight = 1.0;

    friend bool operator==(const WeightedEdge &, const WeightedEdge &) = default;
};

/// Undirected weighted graph for MaxCut.
struct MaxCutGraph {
    std::size_t num_nodes = 0;
    std::vector<WeightedEdge> edges;

    /// Throws ErrorKind::InvalidArgument on self-loops, out-of-range nodes,
    /// duplicate undirected edges or an empty graph.
    void validate() const;

    /// Total weight of edges crossing the partition encoded by bits
    /// (bit num_nodes - 1 - v is node v, matching the qubit convention).
    [[nodiscard]] double cut_value(std::uint64_t bits) const;

    friend bool operator==(const MaxCutGraph &, const MaxCutGraph &) = default;
};

} // namespace bvqc
