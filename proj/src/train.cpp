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

#include "bvqc/train.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <string>

#include "bvqc/adam.hpp"
#include "bvqc/error.hpp"
#include "bvqc/random.hpp"
#include "bvqc/simulator.hpp"

namespace bvqc {

void WatermarkBundle::validate() const {
    require(tau > 0.0, ErrorKind::InvalidArgument, "watermark tolerance must be positive");
    require(prep.circuit.num_qubits() == obs.width(), ErrorKind::WidthMismatch,
            "watermark prep and measurement widths differ");
    require(std::isfinite(l_pre), ErrorKind::InvalidArgument, "L_pre must be finite");
}

void TrainConfig::validate() const {
    require(alpha >= 0.0 && beta >= 0.0, ErrorKind::InvalidArgument,
            "alpha and beta must be non-negative");
    require(alpha > 0.0 || beta > 0.0, ErrorKind::InvalidArgument,
            "alpha and beta cannot both be zero");
    require(lr >= 0.0 && std::isfinite(lr), ErrorKind::InvalidArgument, "lr must be >= 0");
    require(weight_decay >= 0.0, ErrorKind::InvalidArgument, "weight decay must be >= 0");
    require(std::abs(std::sin(shift)) > 1e-6, ErrorKind::InvalidArgument,
            "shift must not be a multiple of pi");
}

void TrainTrace::write_csv(std::ostream &out) const {
    out << "epoch,total_loss,base_loss,wm_loss\n";
    out << std::setprecision(17);
    for (const auto &r : records) {
        out << r.epoch << ',' << r.total << ',' << r.base << ',';
        if (std::isnan(r.wm)) {
            out << "nan";
        } else {
            out << r.wm;
        }
        out << '\n';
    }
}

namespace {

double deflated_value(const StateVector &psi, const CompiledObservable &obs,
                      std::span<const Deflation> deflation) {
    double v = obs.expectation(psi);
    for (const auto &d : deflation) {
        v += d.weight * projector_overlap(d.state, psi);
    }
    return v;
}

/**
 * Forward pass that forks at every free-parameter gate: the state before the
 * gate is copied, the gate is applied at angle +/- shift and the suffix is
 * run to the end. `value` maps an output state to the scalar whose gradient
 * is wanted; results accumulate into grad with the given weight.
 */
template <class ValueFn>
void accumulate_shift_gradient(const ParamCircuit &circuit, std::span<const double> theta,
                               const StateVector &input, double shift, double weight,
                               std::span<double> grad, ValueFn &&value) {
    require(input.num_qubits() == circuit.num_qubits(), ErrorKind::WidthMismatch,
            "input width differs from circuit width");
    const auto angles = resolve_angles(circuit, theta);
    const auto &gates = circuit.gates();
    const double denom = 2.0 * std::sin(shift);
    StateVector cur = input;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (const auto *fp = std::get_if<FreeParam>(&gates[i].param)) {
            StateVector plus = cur;
            apply_gate(plus, gates[i], angles[i] + shift);
            apply_gates(plus, circuit, angles, i + 1, gates.size());
            StateVector minus = cur;
            apply_gate(minus, gates[i], angles[i] - shift);
            apply_gates(minus, circuit, angles, i + 1, gates.size());
            grad[fp->index] += weight * fp->scale * (value(plus) - value(minus)) / denom;
        }
        apply_gate(cur, gates[i], angles[i]);
    }
}

struct PreparedTask {
    StateVector base_input;
    CompiledObservable base_obs;
    std::optional<StateVector> probe_input;
    std::optional<CompiledObservable> probe_obs;
};

PreparedTask prepare_task(const TaskSpec &task, const WatermarkBundle *wm) {
    task.validate();
    PreparedTask p{prepare_input(task.input, task.circuit.num_qubits()),
                   CompiledObservable(task.obs), std::nullopt, std::nullopt};
    if (wm != nullptr) {
        wm->validate();
        require(wm->obs.width() == task.circuit.num_qubits(), ErrorKind::WidthMismatch,
                "watermark width differs from task circuit width");
        p.probe_input = prepare(wm->prep);
        p.probe_obs.emplace(wm->obs);
    }
    return p;
}

struct Evaluation {
    double base_energy = 0.0;
    double base_objective = 0.0;
    double probe = std::numeric_limits<double>::quiet_NaN();
    double total = 0.0;
};

Evaluation evaluate(const TaskSpec &task, const PreparedTask &prep, const WatermarkBundle *wm,
                    const TrainConfig &cfg, std::span<const double> theta) {
    Evaluation e;
    const StateVector out = run_circuit(task.circuit, theta, prep.base_input);
    e.base_energy = prep.base_obs.expectation(out);
    e.base_objective = e.base_energy;
    for (const auto &d : task.deflation) {
        e.base_objective += d.weight * projector_overlap(d.state, out);
    }
    e.total = cfg.alpha * e.base_objective;
    if (wm != nullptr) {
        e.probe = prep.probe_obs->expectation(run_circuit(task.circuit, theta, *prep.probe_input));
        const double dev = e.probe - wm->l_pre;
        e.total += cfg.beta * dev * dev;
    }
    return e;
}

std::vector<double> joint_gradient(const TaskSpec &task, const PreparedTask &prep,
                                   const WatermarkBundle *wm, const TrainConfig &cfg,
                                   std::span<const double> theta, double probe) {
    std::vector<double> grad(task.circuit.num_params(), 0.0);
    if (cfg.alpha != 0.0) {
        accumulate_shift_gradient(task.circuit, theta, prep.base_input, cfg.shift, cfg.alpha, grad,
                                  [&](const StateVector &s) {
                                      return deflated_value(s, prep.base_obs, task.deflation);
                                  });
    }
    if (wm != nullptr && cfg.beta != 0.0) {
        const double chain = 2.0 * (probe - wm->l_pre);
        accumulate_shift_gradient(task.circuit, theta, *prep.probe_input, cfg.shift,
                                  cfg.beta * chain, grad,
                                  [&](const StateVector &s) { return prep.probe_obs->expectation(s); });
    }
    return grad;
}

} // namespace

double task_loss(const ParamCircuit &circuit, std::span<const double> theta,
                 const InputSpec &input, const Observable &obs) {
    return expectation(run_circuit(circuit, theta, prepare_input(input, circuit.num_qubits())),
                       obs);
}

double vqd_loss(const ParamCircuit &circuit, std::span<const double> theta,
                const InputSpec &input, const Observable &obs,
                std::span<const Deflation> deflation) {
    const StateVector out =
        run_circuit(circuit, theta, prepare_input(input, circuit.num_qubits()));
    return deflated_value(out, CompiledObservable(obs), deflation);
}

double probe_value(const ParamCircuit &circuit, std::span<const double> theta,
                   const WatermarkBundle &wm) {
    require(wm.obs.width() == circuit.num_qubits(), ErrorKind::WidthMismatch,
            "watermark width differs from circuit width");
    return expectation(run_circuit(circuit, theta, prepare(wm.prep)), wm.obs);
}

double base_objective(const TaskSpec &task, std::span<const double> theta) {
    return vqd_loss(task.circuit, theta, task.input, task.obs, task.deflation);
}

double bvqc_loss(std::span<const double> theta, const TaskSpec &task, const WatermarkBundle *wm,
                 const TrainConfig &cfg) {
    double total = cfg.alpha * base_objective(task, theta);
    if (wm != nullptr) {
        const double dev = probe_value(task.circuit, theta, *wm) - wm->l_pre;
        total += cfg.beta * dev * dev;
    }
    return total;
}

std::vector<double> expectation_gradient(const ParamCircuit &circuit,
                                         std::span<const double> theta, const InputSpec &input,
                                         const Observable &obs, double shift) {
    std::vector<double> grad(circuit.num_params(), 0.0);
    const CompiledObservable compiled(obs);
    accumulate_shift_gradient(circuit, theta, prepare_input(input, circuit.num_qubits()), shift,
                              1.0, grad,
                              [&](const StateVector &s) { return compiled.expectation(s); });
    return grad;
}

std::vector<double> vqd_gradient(const ParamCircuit &circuit, std::span<const double> theta,
                                 const InputSpec &input, const Observable &obs,
                                 std::span<const Deflation> deflation, double shift) {
    std::vector<double> grad(circuit.num_params(), 0.0);
    const CompiledObservable compiled(obs);
    accumulate_shift_gradient(
        circuit, theta, prepare_input(input, circuit.num_qubits()), shift, 1.0, grad,
        [&](const StateVector &s) { return deflated_value(s, compiled, deflation); });
    return grad;
}

std::vector<double> watermark_gradient(const ParamCircuit &circuit,
                                       std::span<const double> theta, const WatermarkBundle &wm,
                                       double shift) {
    const StateVector input = prepare(wm.prep);
    const double dev = expectation(run_circuit(circuit, theta, input), wm.obs) - wm.l_pre;
    std::vector<double> grad(circuit.num_params(), 0.0);
    const CompiledObservable compiled(wm.obs);
    accumulate_shift_gradient(circuit, theta, input, shift, 2.0 * dev, grad,
                              [&](const StateVector &s) { return compiled.expectation(s); });
    return grad;
}

std::vector<double> bvqc_gradient(std::span<const double> theta, const TaskSpec &task,
                                  const WatermarkBundle *wm, const TrainConfig &cfg) {
    const PreparedTask prep = prepare_task(task, wm);
    double probe = 0.0;
    if (wm != nullptr) {
        probe = expectation(run_circuit(task.circuit, theta, *prep.probe_input), wm->obs);
    }
    return joint_gradient(task, prep, wm, cfg, theta, probe);
}

std::vector<double> initial_theta(std::size_t num_params, std::uint64_t seed, double range) {
    Rng rng(seed);
    std::vector<double> theta(num_params);
    for (auto &t : theta) {
        t = rng.uniform(-range, range);
    }
    return theta;
}

TrainResult train_loop(const TaskSpec &task, const WatermarkBundle *wm, const TrainConfig &cfg,
                       std::optional<std::span<const double>> start) {
    cfg.validate();
    const PreparedTask prep = prepare_task(task, wm);
    TrainResult result;
    if (start) {
        require(start->size() == task.circuit.num_params(), ErrorKind::ParamCountMismatch,
                "starting theta has the wrong length");
        result.theta.assign(start->begin(), start->end());
    } else {
        result.theta = initial_theta(task.circuit.num_params(), cfg.seed, cfg.init_range);
    }
    if (cfg.epochs == 0) {
        return result;
    }
    AdamW opt(result.theta.size(), {.lr = cfg.lr, .weight_decay = cfg.weight_decay});
    result.trace.records.reserve(cfg.epochs);
    Evaluation current = evaluate(task, prep, wm, cfg, result.theta);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const auto grad = joint_gradient(task, prep, wm, cfg, result.theta, current.probe);
        opt.step(result.theta, grad);
        current = evaluate(task, prep, wm, cfg, result.theta);
        if (!std::isfinite(current.total)) {
            fail(ErrorKind::NonFiniteLoss,
                 "non-finite loss at epoch " + std::to_string(epoch + 1));
        }
        result.trace.records.push_back({epoch + 1, current.total, current.base_energy,
                                        current.probe});
    }
    return result;
}

} // namespace bvqc
