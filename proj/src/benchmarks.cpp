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


#include "bvqc/benchmarks.hpp"

#include <algorithm>
#include <cstdlib>

#include "bvqc/error.hpp"
#include "bvqc/serialize.hpp"
#include "bvqc/simulator.hpp"

#ifndef BVQC_DEFAULT_DATA_DIR
#define BVQC_DEFAULT_DATA_DIR "data"
#endif

namespace bvqc {

namespace {

struct MoleculeEntry {
    std::string_view file;
    std::size_t vqe_layers;
    std::size_t vqd_width;
};

TaskSpec molecule_task(std::string_view id, const MoleculeEntry &m, bool deflate) {
    const Observable h = load_observable(data_dir() + "/" + std::string(m.file));
    const std::size_t n = h.width();
    // The data files place both lowest spin orbitals on the first and last
    // qubit, adjacent across the CX ring's wrap-around edge.
    const std::uint64_t hf = (std::uint64_t{1} << (n - 1)) | 1;
    if (!deflate) {
        return TaskSpec{std::string(id), build_hea(n, m.vqe_layers), BasisInput{hf}, h,
                        optimal_value(h, 0), {}};
    }
    const std::size_t width = m.vqd_width;
    const auto pairs = exact_eigensolve(h, 2);
    TaskSpec t{std::string(id), build_hea(width, 2), BasisInput{hf << (width - n)},
               h.padded(width), pairs[1].value, {}};
    t.deflation.push_back({3.0 * h.coeff_norm(), pairs[0].vector});
    return t;
}

TaskSpec qaoa_task(std::string_view id, std::string_view file) {
    const MaxCutGraph g = graph_from_json(read_json_file(data_dir() + "/graphs/" + std::string(file)));
    const Observable h = maxcut_hamiltonian(g);
    return TaskSpec{std::string(id), build_qaoa(g, 4), BasisInput{0}, h, optimal_value(h, 0), {}};
}

} // namespace

std::string data_dir() {
    if (const char *env = std::getenv("BVQC_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return BVQC_DEFAULT_DATA_DIR;
}

TaskSpec load_benchmark(std::string_view id) {
    static constexpr MoleculeEntry kH2{"h2.pauli", 2, 9};
    static constexpr MoleculeEntry kH3p{"h3plus.pauli", 4, 13};
    TaskSpec t;
    if (id == "vqe-h2") {
        t = molecule_task(id, kH2, false);
    } else if (id == "vqe-h3p") {
        t = molecule_task(id, kH3p, false);
    } else if (id == "vqd-h2") {
        t = molecule_task(id, kH2, true);
    } else if (id == "vqd-h3p") {
        t = molecule_task(id, kH3p, true);
    } else if (id == "qaoa-4") {
        t = qaoa_task(id, "qaoa4.json");
    } else if (id == "qaoa-6") {
        t = qaoa_task(id, "qaoa6.json");
    } else {
        fail(ErrorKind::InvalidArgument, "unknown benchmark '" + std::string(id) + "'");
    }
    t.validate();
    return t;
}

} // namespace bvqc
