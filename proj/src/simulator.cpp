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

#include "bvqc/simulator.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "bvqc/error.hpp"

namespace bvqc {

namespace {

using Mat2 = std::array<Complex, 4>; // row-major

constexpr double kInvSqrt2 = 0.70710678118654752440;

void apply_matrix(std::span<Complex> amps, std::size_t stride, const Mat2 &m) {
    const std::size_t size = amps.size();
    for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex a = amps[i];
            const Complex b = amps[i + stride];
            amps[i] = m[0] * a + m[1] * b;
            amps[i + stride] = m[2] * a + m[3] * b;
        }
    }
}

void apply_diagonal(std::span<Complex> amps, std::size_t stride, Complex d0, Complex d1) {
    const std::size_t size = amps.size();
    for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            amps[i] *= d0;
            amps[i + stride] *= d1;
        }
    }
}

void apply_x(std::span<Complex> amps, std::size_t stride) {
    const std::size_t size = amps.size();
    for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            std::swap(amps[i], amps[i + stride]);
        }
    }
}

void apply_cx(std::span<Complex> amps, std::size_t cbit, std::size_t tbit) {
    const std::size_t size = amps.size();
    for (std::size_t i = 0; i < size; ++i) {
        if ((i & cbit) != 0 && (i & tbit) == 0) {
            std::swap(amps[i], amps[i | tbit]);
        }
    }
}

void apply_swap(std::span<Complex> amps, std::size_t abit, std::size_t bbit) {
    const std::size_t size = amps.size();
    for (std::size_t i = 0; i < size; ++i) {
        if ((i & abit) != 0 && (i & bbit) == 0) {
            std::swap(amps[i], amps[(i ^ abit) | bbit]);
        }
    }
}

/// i^k for k mod 4.
Complex i_power(unsigned k) {
    switch (k & 3U) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

} // namespace

void apply_gate(StateVector &state, GateKind kind, const std::array<std::size_t, 2> &qubits,
                double angle) {
    const std::size_t n = state.num_qubits();
    auto amps = state.data();
    const std::size_t s0 = std::size_t{1} << (n - 1 - qubits[0]);
    switch (kind) {
    case GateKind::H:
        apply_matrix(amps, s0, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2});
        break;
    case GateKind::X:
        apply_x(amps, s0);
        break;
    case GateKind::SX:
        apply_matrix(amps, s0,
                     {Complex{0.5, 0.5}, Complex{0.5, -0.5}, Complex{0.5, -0.5},
                      Complex{0.5, 0.5}});
        break;
    case GateKind::RX: {
        const double c = std::cos(angle / 2);
        const double s = std::sin(angle / 2);
        apply_matrix(amps, s0, {Complex{c, 0}, Complex{0, -s}, Complex{0, -s}, Complex{c, 0}});
        break;
    }
    case GateKind::RY: {
        const double c = std::cos(angle / 2);
        const double s = std::sin(angle / 2);
        apply_matrix(amps, s0, {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}});
        break;
    }
    case GateKind::RZ: {
        const double c = std::cos(angle / 2);
        const double s = std::sin(angle / 2);
        apply_diagonal(amps, s0, Complex{c, -s}, Complex{c, s});
        break;
    }
    case GateKind::CX:
        apply_cx(amps, s0, std::size_t{1} << (n - 1 - qubits[1]));
        break;
    case GateKind::SWAP:
        apply_swap(amps, s0, std::size_t{1} << (n - 1 - qubits[1]));
        break;
    }
}

void apply_gates(StateVector &state, const ParamCircuit &circuit, std::span<const double> angles,
                 std::size_t first, std::size_t last) {
    const auto &gates = circuit.gates();
    for (std::size_t i = first; i < last; ++i) {
        apply_gate(state, gates[i], angles[i]);
    }
}

StateVector run_circuit(const ParamCircuit &circuit, std::span<const double> theta,
                        const StateVector &input) {
    require(input.num_qubits() == circuit.num_qubits(), ErrorKind::WidthMismatch,
            "input has " + std::to_string(input.num_qubits()) + " qubits, circuit has " +
                std::to_string(circuit.num_qubits()));
    const auto angles = resolve_angles(circuit, theta);
    StateVector out = input;
    apply_gates(out, circuit, angles, 0, circuit.size());
    return out;
}

void apply_pauli(StateVector &state, const PauliString &pauli) {
    require(pauli.width() == state.num_qubits(), ErrorKind::WidthMismatch,
            "pauli width differs from state width");
    const auto flip = pauli.flip_mask();
    const auto sign = pauli.sign_mask();
    const Complex phase = i_power(pauli.y_count());
    auto amps = state.data();
    std::vector<Complex> out(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double s = (std::popcount(i & sign) & 1) ? -1.0 : 1.0;
        out[i ^ flip] = phase * s * amps[i];
    }
    std::copy(out.begin(), out.end(), amps.begin());
}

double pauli_expectation(const StateVector &state, const PauliString &pauli) {
    require(pauli.width() == state.num_qubits(), ErrorKind::WidthMismatch,
            "pauli width differs from state width");
    const auto flip = pauli.flip_mask();
    const auto sign = pauli.sign_mask();
    const auto amps = state.amplitudes();
    if (flip == 0) {
        double acc = 0.0;
        for (std::size_t i = 0; i < amps.size(); ++i) {
            const double p = std::norm(amps[i]);
            acc += (std::popcount(i & sign) & 1) ? -p : p;
        }
        return acc;
    }
    // <psi|P|psi> = sum_i conj(psi[i ^ flip]) * phase(i) * psi[i]
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const Complex t = std::conj(amps[i ^ flip]) * amps[i];
        acc += (std::popcount(i & sign) & 1) ? -t : t;
    }
    return (i_power(pauli.y_count()) * acc).real();
}

double expectation(const StateVector &state, const Observable &obs) {
    require(obs.width() == state.num_qubits(), ErrorKind::WidthMismatch,
            "observable width " + std::to_string(obs.width()) + " differs from state width " +
                std::to_string(state.num_qubits()));
    double total = 0.0;
    for (const auto &t : obs.terms()) {
        total += t.coeff * pauli_expectation(state, t.pauli);
    }
    return total;
}

CompiledObservable::CompiledObservable(const Observable &obs) : width_(obs.width()) {
    require(width_ <= kMaxQubits, ErrorKind::WidthOutOfRange,
            "observable wider than " + std::to_string(kMaxQubits) + " qubits");
    const std::size_t dim = std::size_t{1} << width_;
    for (const auto &t : obs.terms()) {
        const auto flip = t.pauli.flip_mask();
        const auto sign = t.pauli.sign_mask();
        if (flip == 0) {
            if (diagonal_.empty()) {
                diagonal_.assign(dim, 0.0);
            }
            for (std::size_t i = 0; i < dim; ++i) {
                diagonal_[i] += (std::popcount(i & sign) & 1) ? -t.coeff : t.coeff;
            }
            continue;
        }
        auto it = std::find_if(groups_.begin(), groups_.end(),
                               [&](const Group &g) { return g.flip == flip; });
        if (it == groups_.end()) {
            groups_.push_back({flip, std::vector<Complex>(dim, Complex{0.0, 0.0})});
            it = std::prev(groups_.end());
        }
        const Complex w = t.coeff * i_power(t.pauli.y_count());
        for (std::size_t i = 0; i < dim; ++i) {
            it->weights[i] += (std::popcount(i & sign) & 1) ? -w : w;
        }
    }
}

double CompiledObservable::expectation(const StateVector &state) const {
    require(state.num_qubits() == width_, ErrorKind::WidthMismatch,
            "observable width differs from state width");
    const auto amps = state.amplitudes();
    double total = 0.0;
    for (std::size_t i = 0; i < diagonal_.size(); ++i) {
        total += diagonal_[i] * std::norm(amps[i]);
    }
    for (const auto &g : groups_) {
        double acc = 0.0;
        for (std::size_t i = 0; i < amps.size(); ++i) {
            acc += (std::conj(amps[i ^ g.flip]) * g.weights[i] * amps[i]).real();
        }
        total += acc;
    }
    return total;
}

Eigen::MatrixXcd dense_matrix(const Observable &obs) {
    const std::size_t n = obs.width();
    require(n >= 1 && n <= kMaxEigensolveQubits, ErrorKind::WidthOutOfRange,
            "dense matrix limited to " + std::to_string(kMaxEigensolveQubits) + " qubits");
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : obs.terms()) {
        const auto flip = t.pauli.flip_mask();
        const auto sign = t.pauli.sign_mask();
        const Complex phase = i_power(t.pauli.y_count());
        for (Eigen::Index i = 0; i < dim; ++i) {
            const auto col = static_cast<std::size_t>(i);
            const double s = (std::popcount(col & sign) & 1) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(col ^ flip), i) += t.coeff * s * phase;
        }
    }
    return m;
}

std::vector<EigenPair> exact_eigensolve(const Observable &obs, std::size_t k) {
    require(obs.width() <= kMaxEigensolveQubits, ErrorKind::WidthOutOfRange,
            "dense eigensolve limited to " + std::to_string(kMaxEigensolveQubits) + " qubits");
    const std::size_t dim = std::size_t{1} << obs.width();
    require(k <= dim, ErrorKind::InvalidArgument, "k exceeds the Hilbert space dimension");
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(obs));
    require(solver.info() == Eigen::Success, ErrorKind::InvalidArgument,
            "eigensolver did not converge");
    std::vector<EigenPair> out;
    out.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto col = solver.eigenvectors().col(static_cast<Eigen::Index>(j));
        std::vector<Complex> amps(col.data(), col.data() + col.size());
        // Renormalize against accumulated rounding before the 1e-10 check.
        double nrm = 0.0;
        for (const auto &a : amps) {
            nrm += std::norm(a);
        }
        nrm = std::sqrt(nrm);
        for (auto &a : amps) {
            a /= nrm;
        }
        out.push_back({solver.eigenvalues()(static_cast<Eigen::Index>(j)),
                       StateVector::from_amplitudes(std::move(amps))});
    }
    return out;
}

Eigen::MatrixXcd circuit_unitary(const ParamCircuit &circuit, std::span<const double> theta) {
    const std::size_t n = circuit.num_qubits();
    require(n <= kMaxUnitaryQubits, ErrorKind::WidthOutOfRange,
            "unitary extraction limited to " + std::to_string(kMaxUnitaryQubits) + " qubits");
    const auto angles = resolve_angles(circuit, theta);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Eigen::MatrixXcd u(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        StateVector s = init_state(n, static_cast<std::uint64_t>(j));
        apply_gates(s, circuit, angles, 0, circuit.size());
        const auto amps = s.amplitudes();
        for (Eigen::Index i = 0; i < dim; ++i) {
            u(i, j) = amps[static_cast<std::size_t>(i)];
        }
    }
    return u;
}

} // namespace bvqc
