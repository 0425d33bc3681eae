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


#include "bvqc/noise.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <numbers>

#include <Eigen/Dense>

#include "bvqc/benchmarks.hpp"
#include "bvqc/error.hpp"
#include "bvqc/parallel.hpp"
#include "bvqc/random.hpp"
#include "bvqc/simulator.hpp"

namespace bvqc {

namespace {

// Pauli index 0..3 = I, X, Y, Z. Y is applied as X after Z (a global phase
// away from Y).
void apply_pauli_index(StateVector &state, std::size_t q, std::uint64_t p) {
    if (p == 2 || p == 3) {
        apply_gate(state, GateKind::RZ, {q, 0}, std::numbers::pi);
    }
    if (p == 1 || p == 2) {
        apply_gate(state, GateKind::X, {q, 0});
    }
}

double run_trajectory(const ParamCircuit &circuit, std::span<const double> angles,
                      const StateVector &input, const CompiledObservable &obs,
                      const NoiseModel &model, std::uint64_t seed) {
    Rng rng(seed);
    StateVector s = input;
    const auto &gates = circuit.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate &g = gates[i];
        apply_gate(s, g, angles[i]);
        if (g.arity() == 1) {
            if (model.p1 > 0.0 && rng.uniform() < model.p1) {
                apply_pauli_index(s, g.qubits[0], 1 + rng.below(3));
            }
        } else if (model.p2 > 0.0 && rng.uniform() < model.p2) {
            const auto pair = 1 + rng.below(15);
            apply_pauli_index(s, g.qubits[0], pair / 4);
            apply_pauli_index(s, g.qubits[1], pair % 4);
        }
    }
    return obs.expectation(s);
}

} // namespace

void NoiseModel::validate() const {
    require(p1 >= 0.0 && p1 <= 0.25 && p2 >= 0.0 && p2 <= 0.25, ErrorKind::InvalidArgument,
            "noise probabilities must lie in [0, 0.25]");
}

Json to_json(const NoiseModel &model) { return {{"p1", model.p1}, {"p2", model.p2}}; }

NoiseModel noise_from_json(const Json &j) {
    NoiseModel m;
    try {
        m.p1 = j.at("p1").get<double>();
        m.p2 = j.at("p2").get<double>();
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::Parse, std::string("noise model: ") + e.what());
    }
    m.validate();
    return m;
}

NoiseModel load_noise(const std::string &preset_or_path) {
    const std::string bundled = data_dir() + "/noise/" + preset_or_path + ".json";
    const std::string path = std::filesystem::exists(bundled) ? bundled : preset_or_path;
    return noise_from_json(read_json_file(path));
}

NoisyEstimate noisy_expectation(const ParamCircuit &circuit, std::span<const double> theta,
                                const StateVector &input, const Observable &obs,
                                const NoiseModel &model, std::size_t shots,
                                std::uint64_t seed) {
    model.validate();
    require(shots >= 1, ErrorKind::InvalidArgument, "shots must be >= 1");
    if (model.is_noiseless()) {
        return {expectation(run_circuit(circuit, theta, input), obs), 0.0};
    }
    require(input.num_qubits() == circuit.num_qubits(), ErrorKind::WidthMismatch,
            "input width differs from circuit width");
    const auto angles = resolve_angles(circuit, theta);
    const CompiledObservable compiled(obs);
    std::vector<double> values(shots);
    parallel_for(shots, [&](std::size_t t) {
        values[t] = run_trajectory(circuit, angles, input, compiled, model, seed + t);
    });
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    const double n = static_cast<double>(shots);
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    const double se = shots > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return {mean, se};
}

ParamCircuit fold_circuit(const ParamCircuit &circuit, std::size_t factor) {
    require(factor % 2 == 1, ErrorKind::InvalidArgument,
            "folding factor must be odd, got " + std::to_string(factor));
    ParamCircuit out = circuit;
    const ParamCircuit inv = inverse(circuit);
    for (std::size_t k = 0; k < (factor - 1) / 2; ++k) {
        out.append(inv.gates());
        out.append(circuit.gates());
    }
    return out;
}

ZneFit zne_extrapolate(std::span<const std::pair<double, double>> points) {
    require(points.size() >= 2, ErrorKind::InvalidArgument, "ZNE needs at least two points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            require(points[i].first != points[j].first, ErrorKind::InvalidArgument,
                    "ZNE factors must be distinct");
        }
    }
    // Normal equations in centred coordinates for the line.
    const double n = static_cast<double>(points.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto &[x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto &[x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    ZneFit fit;
    fit.linear = my - (sxy / sxx) * mx;
    if (points.size() >= 3) {
        Eigen::MatrixXd a(points.size(), 3);
        Eigen::VectorXd b(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double x = points[i].first;
            a(static_cast<Eigen::Index>(i), 0) = 1.0;
            a(static_cast<Eigen::Index>(i), 1) = x;
            a(static_cast<Eigen::Index>(i), 2) = x * x;
            b(static_cast<Eigen::Index>(i)) = points[i].second;
        }
        const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
        fit.quadratic = c(0);
    }
    return fit;
}

ZneRun zne_estimate(const ParamCircuit &circuit, std::span<const double> theta,
                    const StateVector &input, const Observable &obs, const NoiseModel &model,
                    std::span<const std::size_t> factors, std::size_t shots, std::uint64_t seed) {
    ZneRun run;
    for (const auto f : factors) {
        const auto est = noisy_expectation(fold_circuit(circuit, f), theta, input, obs, model,
                                           shots, seed);
        run.points.emplace_back(static_cast<double>(f), est.mean);
    }
    run.fit = zne_extrapolate(run.points);
    return run;
}

} // namespace bvqc
