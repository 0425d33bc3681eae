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
 * Losses, parameter-shift gradients and the joint base/watermark training
 * loop.
 *
 * The combined objective is
 *   L(theta) = alpha * f(theta, rho_b, M_b) + beta * (f(theta, rho_pre, M_pre) - L_pre)^2
 * where f is the expectation of the measurement on the circuit output. For
 * VQD tasks the base term carries the deflation penalties.
 */

#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "bvqc/bundle.hpp"
#include "bvqc/hamiltonian.hpp"

namespace bvqc {

struct TrainConfig {
    double alpha = 1.0;
    double beta = 1.0;
    double lr = 5e-3;
    double weight_decay = 1e-4;
    std::size_t epochs = 300;
    std::uint64_t seed = 0;
    double shift = std::numbers::pi / 2;
    /// Initial parameters are drawn uniformly from [-init_range, init_range].
    double init_range = 0.1;

    /// Throws ErrorKind::InvalidArgument.
    void validate() const;
};

struct TraceRecord {
    std::size_t epoch = 0;
    double total = 0.0;
    double base = 0.0; // f(theta, rho_b, M_b)
    double wm = 0.0;   // f(theta, rho_pre, M_pre); NaN without a bundle
};

struct TrainTrace {
    std::vector<TraceRecord> records;

    /// Columns: epoch,total_loss,base_loss,wm_loss.
    void write_csv(std::ostream &out) const;
};

struct TrainResult {
    std::vector<double> theta;
    TrainTrace trace;
};

/// f(theta, input, obs).
[[nodiscard]] double task_loss(const ParamCircuit &circuit, std::span<const double> theta,
                               const InputSpec &input, const Observable &obs);

/// task_loss + sum_i w_i * <psi|(|s_i><s_i| (x) I)|psi>.
[[nodiscard]] double vqd_loss(const ParamCircuit &circuit, std::span<const double> theta,
                              const InputSpec &input, const Observable &obs,
                              std::span<const Deflation> deflation);

/// Probe value f(theta, rho_pre, M_pre).
[[nodiscard]] double probe_value(const ParamCircuit &circuit, std::span<const double> theta,
                                 const WatermarkBundle &wm);

/// Base objective of a task: vqd_loss when deflation is present, else task_loss.
[[nodiscard]] double base_objective(const TaskSpec &task, std::span<const double> theta);

/// alpha * base_objective + beta * (probe - L_pre)^2; the watermark term is
/// dropped when wm is null.
[[nodiscard]] double bvqc_loss(std::span<const double> theta, const TaskSpec &task,
                               const WatermarkBundle *wm, const TrainConfig &cfg);

/**
 * @brief Parameter-shift gradient of <obs> on the circuit output.
 *
 * Every gate occurrence of a free parameter is shifted separately and the
 * contributions are summed, scaled by the gate's parameter scale. With one
 * unit-scale occurrence per parameter this is
 * [f(theta + s e_k) - f(theta - s e_k)] / (2 sin s).
 */
[[nodiscard]] std::vector<double> expectation_gradient(const ParamCircuit &circuit,
                                                       std::span<const double> theta,
                                                       const InputSpec &input,
                                                       const Observable &obs,
                                                       double shift = std::numbers::pi / 2);

[[nodiscard]] std::vector<double> vqd_gradient(const ParamCircuit &circuit,
                                               std::span<const double> theta,
                                               const InputSpec &input, const Observable &obs,
                                               std::span<const Deflation> deflation,
                                               double shift = std::numbers::pi / 2);

/// Gradient of |probe - L_pre|^2 by the chain rule.
[[nodiscard]] std::vector<double> watermark_gradient(const ParamCircuit &circuit,
                                                     std::span<const double> theta,
                                                     const WatermarkBundle &wm,
                                                     double shift = std::numbers::pi / 2);

[[nodiscard]] std::vector<double> bvqc_gradient(std::span<const double> theta,
                                                const TaskSpec &task, const WatermarkBundle *wm,
                                                const TrainConfig &cfg);

/// Uniform draw in [-range, range] per parameter.
[[nodiscard]] std::vector<double> initial_theta(std::size_t num_params, std::uint64_t seed,
                                                double range = 0.1);

/**
 * @brief AdamW training of the (joint) objective.
 *
 * Starts from initial_theta(cfg.seed) unless `start` is given. The trace
 * holds one record per epoch, evaluated after that epoch's update. A
 * non-finite loss raises ErrorKind::NonFiniteLoss naming the epoch.
 */
[[nodiscard]] TrainResult train_loop(const TaskSpec &task, const WatermarkBundle *wm,
                                     const TrainConfig &cfg,
                                     std::optional<std::span<const double>> start = std::nullopt);

} // namespace bvqc
