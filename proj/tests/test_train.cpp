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


#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "gradcheck.hpp"
#include "oracles.hpp"

#include "bvqc/adam.hpp"
#include "bvqc/benchmarks.hpp"
#include "bvqc/builders.hpp"
#include "bvqc/error.hpp"
#include "bvqc/train.hpp"
#include "bvqc/watermark.hpp"

using namespace bvqc;

namespace {

WatermarkBundle test_bundle(std::size_t width, std::uint64_t seed) {
    WatermarkBundle wm;
    wm.prep = build_prep(seed, width);
    wm.obs.add_term(0.4, PauliString(std::string(width, 'X')));
    wm.obs.add_term(-0.3, PauliString("Z" + std::string(width - 1, 'I')));
    wm.l_pre = 0.1;
    wm.seed = seed;
    return wm;
}

} // namespace

TEST_CASE("parameter shift matches finite differences on every benchmark ansatz") {
    for (const auto id : kBenchmarkIds) {
        CAPTURE(id);
        const auto task = load_benchmark(id);
        const auto theta = oracle::random_theta(task.circuit.num_params(), 7, 1.0);
        const auto grad = task.deflation.empty()
                              ? expectation_gradient(task.circuit, theta, task.input, task.obs)
                              : vqd_gradient(task.circuit, theta, task.input, task.obs,
                                             task.deflation);
        const auto fd = oracle::finite_difference(
            [&](const std::vector<double> &t) { return base_objective(task, t); }, theta, 1e-4);
        CHECK(oracle::relative_gap(grad, fd) < 1e-5);
    }
}

TEST_CASE("general shifts give the same gradient") {
    const auto task = load_benchmark("qaoa-4");
    const auto theta = oracle::random_theta(task.circuit.num_params(), 3, 1.0);
    const auto a = expectation_gradient(task.circuit, theta, task.input, task.obs);
    const auto b = expectation_gradient(task.circuit, theta, task.input, task.obs, 0.4);
    CHECK(oracle::relative_gap(b, a) < 1e-9);
}

TEST_CASE("watermark and joint gradients match finite differences") {
    const auto task = load_benchmark("vqe-h2");
    const auto wm = test_bundle(4, 3);
    const auto theta = oracle::random_theta(task.circuit.num_params(), 5, 1.0);
    const auto g = watermark_gradient(task.circuit, theta, wm);
    const auto fd = oracle::finite_difference(
        [&](const std::vector<double> &t) { return watermark_step_loss(task.circuit, t, wm); },
        theta, 1e-4);
    CHECK(oracle::relative_gap(g, fd) < 1e-5);

    TrainConfig cfg;
    cfg.alpha = 0.7;
    cfg.beta = 2.5;
    const auto joint = bvqc_gradient(theta, task, &wm, cfg);
    const auto fd_joint = oracle::finite_difference(
        [&](const std::vector<double> &t) { return bvqc_loss(t, task, &wm, cfg); }, theta, 1e-4);
    CHECK(oracle::relative_gap(joint, fd_joint) < 1e-5);
}

TEST_CASE("bvqc_loss composes base and watermark terms") {
    const auto task = load_benchmark("vqe-h2");
    const auto wm = test_bundle(4, 8);
    const auto theta = oracle::random_theta(task.circuit.num_params(), 1, 1.0);
    TrainConfig cfg;
    cfg.alpha = 0.5;
    cfg.beta = 3.0;
    const double base = task_loss(task.circuit, theta, task.input, task.obs);
    const double dev = probe_value(task.circuit, theta, wm) - wm.l_pre;
    CHECK(bvqc_loss(theta, task, &wm, cfg) == doctest::Approx(0.5 * base + 3.0 * dev * dev));
    CHECK(bvqc_loss(theta, task, nullptr, cfg) == doctest::Approx(0.5 * base));
}

TEST_CASE("train config validation") {
    TrainConfig cfg;
    cfg.alpha = 0.0;
    cfg.beta = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = TrainConfig{};
    cfg.lr = -1.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = TrainConfig{};
    cfg.shift = std::numbers::pi;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("adamw first step") {
    AdamW opt(2, {.lr = 0.1, .weight_decay = 0.5});
    std::vector<double> theta = {1.0, -2.0};
    const std::vector<double> grad = {3.0, -0.5};
    opt.step(theta, grad);
    // Bias-corrected moments are g and g^2, so the step is lr * sign(g).
    CHECK(theta[0] == doctest::Approx(1.0 * 0.95 - 0.1).epsilon(1e-7));
    CHECK(theta[1] == doctest::Approx(-2.0 * 0.95 + 0.1).epsilon(1e-7));
    CHECK(opt.steps() == 1);
}

TEST_CASE("training is deterministic and traces every epoch") {
    const auto task = load_benchmark("vqe-h2");
    TrainConfig cfg;
    cfg.epochs = 20;
    cfg.seed = 4;
    const auto a = train_loop(task, nullptr, cfg);
    const auto b = train_loop(task, nullptr, cfg);
    CHECK(a.theta == b.theta);
    CHECK(a.trace.records.size() == 20);
    CHECK(a.trace.records.back().epoch == 20);
    CHECK(std::isnan(a.trace.records.back().wm));
    CHECK(a.trace.records.back().base ==
          doctest::Approx(task_loss(task.circuit, a.theta, task.input, task.obs)));

    cfg.epochs = 0;
    const auto z = train_loop(task, nullptr, cfg);
    CHECK(z.theta == initial_theta(task.circuit.num_params(), 4, cfg.init_range));

    std::ostringstream csv;
    a.trace.write_csv(csv);
    CHECK(csv.str().rfind("epoch,total_loss,base_loss,wm_loss\n1,", 0) == 0);
}

TEST_CASE("watermark-free vqe-h2 training reaches the eigensolve optimum") {
    const auto task = load_benchmark("vqe-h2");
    TrainConfig cfg;
    cfg.seed = 1;
    const auto r = train_loop(task, nullptr, cfg);
    CHECK(std::abs(r.trace.records.back().base - task.optimal) <= 0.01);
}

TEST_CASE("joint training moves the probe toward its target") {
    const auto task = load_benchmark("vqe-h2");
    auto wm = test_bundle(4, 2);
    TrainConfig cfg;
    cfg.epochs = 100;
    const auto start = initial_theta(task.circuit.num_params(), cfg.seed);
    const double before = std::abs(probe_value(task.circuit, start, wm) - wm.l_pre);
    const auto r = train_loop(task, &wm, cfg);
    const double after = std::abs(r.trace.records.back().wm - wm.l_pre);
    CHECK(after < before);
    CHECK_THROWS_AS((void)train_loop(task, &wm, cfg, std::span<const double>(start).first(3)),
                    Error);
}
