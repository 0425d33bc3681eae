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

#include "bvqc/circuit.hpp"

#include <array>
#include <cmath>
#include <string>

#include "bvqc/error.hpp"

namespace bvqc {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 8> kNames{{
    {GateKind::H, "H"},
    {GateKind::X, "X"},
    {GateKind::SX, "SX"},
    {GateKind::RX, "RX"},
    {GateKind::RY, "RY"},
    {GateKind::RZ, "RZ"},
    {GateKind::CX, "CX"},
    {GateKind::SWAP, "SWAP"},
}};

} // namespace

std::string_view to_string(GateKind kind) noexcept {
    for (const auto &[k, name] : kNames) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

std::optional<GateKind> gate_kind_from_string(std::string_view name) noexcept {
    for (const auto &[k, n] : kNames) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

Gate Gate::fixed(GateKind kind, std::size_t q) {
    require(!is_rotation(kind) && bvqc::arity(kind) == 1, ErrorKind::InvalidArgument,
            "fixed() takes a parameterless 1-qubit kind");
    return Gate{kind, {q, 0}, std::monostate{}};
}

Gate Gate::free(GateKind kind, std::size_t q, std::size_t index, double scale) {
    require(is_rotation(kind), ErrorKind::InvalidArgument, "free() takes a rotation kind");
    return Gate{kind, {q, 0}, FreeParam{index, scale}};
}

Gate Gate::bound(GateKind kind, std::size_t q, double angle) {
    require(is_rotation(kind), ErrorKind::InvalidArgument, "bound() takes a rotation kind");
    return Gate{kind, {q, 0}, BoundParam{angle}};
}

Gate Gate::cx(std::size_t control, std::size_t target) {
    return Gate{GateKind::CX, {control, target}, std::monostate{}};
}

Gate Gate::swap(std::size_t a, std::size_t b) {
    return Gate{GateKind::SWAP, {a, b}, std::monostate{}};
}

ParamCircuit::ParamCircuit(std::size_t num_qubits, std::size_t num_params)
    : num_qubits_(num_qubits), num_params_(num_params) {
    require(num_qubits >= 1, ErrorKind::WidthOutOfRange, "circuit needs at least one qubit");
}

void ParamCircuit::add(const Gate &gate) {
    const std::string name(to_string(gate.kind));
    for (std::size_t i = 0; i < gate.arity(); ++i) {
        require(gate.qubits[i] < num_qubits_, ErrorKind::InvalidArgument,
                name + " qubit index " + std::to_string(gate.qubits[i]) + " out of range");
    }
    require(gate.arity() == 1 || gate.qubits[0] != gate.qubits[1], ErrorKind::InvalidArgument,
            name + " qubits must be distinct");
    if (is_rotation(gate.kind)) {
        require(!std::holds_alternative<std::monostate>(gate.param), ErrorKind::InvalidArgument,
                name + " requires a parameter");
    } else {
        require(std::holds_alternative<std::monostate>(gate.param), ErrorKind::InvalidArgument,
                name + " takes no parameter");
    }
    if (const auto *fp = std::get_if<FreeParam>(&gate.param)) {
        require(fp->index < num_params_, ErrorKind::InvalidArgument,
                "free parameter index " + std::to_string(fp->index) + " out of range");
        require(std::isfinite(fp->scale), ErrorKind::InvalidArgument, "non-finite scale");
    }
    if (const auto *bp = std::get_if<BoundParam>(&gate.param)) {
        require(std::isfinite(bp->angle), ErrorKind::InvalidArgument, "non-finite angle");
    }
    gates_.push_back(gate);
}

void ParamCircuit::append(std::span<const Gate> gates) {
    for (const auto &g : gates) {
        add(g);
    }
}

std::vector<std::size_t> ParamCircuit::unused_params() const {
    std::vector<bool> used(num_params_, false);
    for (const auto &g : gates_) {
        if (const auto *fp = std::get_if<FreeParam>(&g.param)) {
            used[fp->index] = true;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < num_params_; ++i) {
        if (!used[i]) {
            out.push_back(i);
        }
    }
    return out;
}

std::size_t ParamCircuit::free_gate_count() const noexcept {
    std::size_t n = 0;
    for (const auto &g : gates_) {
        n += g.is_free() ? 1 : 0;
    }
    return n;
}

GateCounts gate_counts(const ParamCircuit &circuit) noexcept {
    GateCounts c;
    for (const auto &g : circuit.gates()) {
        (g.arity() == 1 ? c.one_qubit : c.two_qubit) += 1;
    }
    return c;
}

std::vector<double> resolve_angles(const ParamCircuit &circuit, std::span<const double> theta) {
    require(theta.size() == circuit.num_params(), ErrorKind::ParamCountMismatch,
            "expected " + std::to_string(circuit.num_params()) + " parameters, got " +
                std::to_string(theta.size()));
    std::vector<double> angles(circuit.size(), 0.0);
    for (std::size_t i = 0; i < circuit.size(); ++i) {
        const auto &p = circuit.gates()[i].param;
        if (const auto *fp = std::get_if<FreeParam>(&p)) {
            angles[i] = fp->scale * theta[fp->index];
        } else if (const auto *bp = std::get_if<BoundParam>(&p)) {
            angles[i] = bp->angle;
        }
    }
    return angles;
}

ParamCircuit inverse(const ParamCircuit &circuit) {
    ParamCircuit out(circuit.num_qubits(), circuit.num_params());
    const auto &gates = circuit.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        Gate g = *it;
        if (auto *fp = std::get_if<FreeParam>(&g.param)) {
            fp->scale = -fp->scale;
        } else if (auto *bp = std::get_if<BoundParam>(&g.param)) {
            bp->angle = -bp->angle;
        }
        if (g.kind == GateKind::SX) {
            // SX^-1 = SX^3 = X SX
            out.add(Gate::fixed(GateKind::X, g.qubits[0]));
        }
        out.add(g);
    }
    return out;
}

} // namespace bvqc
