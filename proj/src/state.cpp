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

#include "bvqc/state.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "bvqc/error.hpp"

namespace bvqc {

namespace {

void check_width(std::size_t n) {
    require(n >= 1 && n <= kMaxQubits, ErrorKind::WidthOutOfRange,
            "unsupported qubit count " + std::to_string(n) + " (1.." +
                std::to_string(kMaxQubits) + ")");
}

} // namespace

StateVector::StateVector(std::size_t num_qubits) {
    check_width(num_qubits);
    num_qubits_ = num_qubits;
    amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amps) {
    require(!amps.empty() && std::has_single_bit(amps.size()), ErrorKind::InvalidArgument,
            "amplitude count must be a power of two");
    StateVector s;
    s.num_qubits_ = static_cast<std::size_t>(std::countr_zero(amps.size()));
    check_width(s.num_qubits_);
    s.amps_ = std::move(amps);
    require(std::abs(s.norm() - 1.0) <= 1e-10, ErrorKind::InvalidArgument,
            "state is not normalized");
    return s;
}

double StateVector::norm() const noexcept {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

StateVector init_state(std::size_t num_qubits, std::uint64_t basis_index) {
    check_width(num_qubits);
    require(basis_index < (std::uint64_t{1} << num_qubits), ErrorKind::InvalidArgument,
            "basis index out of range");
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    amps[basis_index] = 1.0;
    return StateVector::from_amplitudes(std::move(amps));
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    require(a.num_qubits() == b.num_qubits(), ErrorKind::WidthMismatch,
            "inner product of states with different widths");
    Complex s{0.0, 0.0};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += std::conj(x[i]) * y[i];
    }
    return s;
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(inner_product(a, b));
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    std::vector<Complex> out(x.size() * y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            out[i * y.size() + j] = x[i] * y[j];
        }
    }
    return StateVector::from_amplitudes(std::move(out));
}

StateVector permute_qubits(const StateVector &state, const std::vector<std::size_t> &perm) {
    const std::size_t n = state.num_qubits();
    require(perm.size() == n, ErrorKind::WidthMismatch, "permutation width mismatch");
    std::vector<bool> seen(n, false);
    for (auto p : perm) {
        require(p < n && !seen[p], ErrorKind::InvalidArgument, "permutation is not a bijection");
        seen[p] = true;
    }
    const auto in = state.amplitudes();
    std::vector<Complex> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        std::size_t j = 0;
        for (std::size_t q = 0; q < n; ++q) {
            if ((i >> (n - 1 - q)) & 1U) {
                j |= std::size_t{1} << (n - 1 - perm[q]);
            }
        }
        out[j] = in[i];
    }
    return StateVector::from_amplitudes(std::move(out));
}

double projector_overlap(const StateVector &s, const StateVector &psi) {
    require(s.num_qubits() <= psi.num_qubits(), ErrorKind::WidthMismatch,
            "projector wider than state");
    const std::size_t rest = std::size_t{1} << (psi.num_qubits() - s.num_qubits());
    const auto a = s.amplitudes();
    const auto p = psi.amplitudes();
    double total = 0.0;
    for (std::size_t r = 0; r < rest; ++r) {
        Complex amp{0.0, 0.0};
        for (std::size_t m = 0; m < a.size(); ++m) {
            amp += std::conj(a[m]) * p[m * rest + r];
        }
        total += std::norm(amp);
    }
    return total;
}

} // namespace bvqc
