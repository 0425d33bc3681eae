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

#include "bvqc/builders.hpp"
#include "bvqc/pauli.hpp"

namespace bvqc {

/**
 * @brief The owner's secret probe: input preparation, measurement, the
 * target loss it must produce and the verification tolerance.
 */
struct WatermarkBundle {
    PrepSpec prep;
    Observable obs;
    double l_pre = 0.0;
    double tau = 0.05;
    std::uint64_t seed = 0;

    void validate() const;

    friend bool operator==(const WatermarkBundle &, const WatermarkBundle &) = default;
};

} // namespace bvqc
