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


#include "bvqc/watermark.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "bvqc/adam.hpp"
#include "bvqc/error.hpp"
#include "bvqc/parallel.hpp"
#include "bvqc/random.hpp"
#include "bvqc/simulator.hpp"

namespace bvqc {

namespace {

constexpr std::size_t kMeasurementTerms = 3;
// Separates the measurement stream from the prep-angle stream of build_prep.
constexpr std::uint64_t kMeasurementStream = 0x6d5a56da0b1c2f37ULL;

Observable random_measurement(std::uint64_t seed, std::size_t width) {
    static constexpr std::array<char, 4> kLetters = {'I', 'X', 'Y', 'Z'};
    Rng rng(seed ^ kMeasurementStream);
    Observable obs;
    for (std::size_t t = 0; t < kMeasurementTerms; ++t) {
        const double coeff = rng.uniform(-0.5, 0.5);
        std::string word(width, 'I');
        do {
            for (auto &ch : word) {
                ch = kLetters[rng.below(kLetters.size())];
            }
        } while (word.find_first_not_of('I') == std::string::npos);
        obs.add_term(coeff, PauliString(word));
    }
    return obs;
}

double base_distance(const TaskSpec &task, std::span<const double> theta) {
    return task_loss(task.circuit, theta, task.input, task.obs) - task.optimal;
}

bool passes_sign(double aggregate, AcceptSign sign) {
    return sign == AcceptSign::BenignPositive ? aggregate >= 0.0 : aggregate < 0.0;
}

} // namespace

void GroupingConfig::validate() const {
    require(score_steps >= 1 && probe_steps >= score_steps, ErrorKind::InvalidArgument,
            "grouping needs probe_steps >= score_steps >= 1");
    require(delta != 0.0 && std::isfinite(delta), ErrorKind::InvalidArgument,
            "delta must be finite and non-zero");
    require(tau > 0.0, ErrorKind::InvalidArgument, "tau must be positive");
    require(embed_tolerance > 0.0, ErrorKind::InvalidArgument,
            "embed_tolerance must be positive");
    require(max_candidates >= 1, ErrorKind::InvalidArgument, "max_candidates must be >= 1");
}

double gtd(double estimated, double optimal) {
    require(std::isfinite(estimated) && std::isfinite(optimal), ErrorKind::InvalidArgument,
            "gtd needs finite arguments");
    return std::abs(estimated - optimal);
}

WatermarkBundle generate_candidate(std::uint64_t seed, std::span<const double> trained_theta,
                                   const TaskSpec &task, const GroupingConfig &cfg) {
    const std::size_t n = task.circuit.num_qubits();
    WatermarkBundle wm;
    wm.prep = build_prep(seed, n);
    wm.obs = random_measurement(seed, n);
    wm.tau = cfg.tau;
    wm.seed = seed;
    wm.l_pre = probe_value(task.circuit, trained_theta, wm) + cfg.delta;
    return wm;
}

double watermark_step_loss(const ParamCircuit &circuit, std::span<const double> theta,
                           const WatermarkBundle &wm) {
    const double dev = probe_value(circuit, theta, wm) - wm.l_pre;
    return dev * dev;
}

double step_score(std::span<const double> theta_k, std::span<const double> theta_k1,
                  const TaskSpec &task) {
    require(theta_k.size() == theta_k1.size(), ErrorKind::ParamCountMismatch,
            "step_score needs equal-length parameter vectors");
    const double before = base_distance(task, theta_k);
    const double den = before * before;
    if (den < 1e-14) {
        return 0.0;
    }
    const double after = base_distance(task, theta_k1);
    return 1.0 - (after * after) / den;
}

double aggregate_score(std::span<const double> scores, std::size_t count) {
    require(count >= 1 && count <= scores.size(), ErrorKind::InvalidArgument,
            "aggregate needs 1 <= count <= number of scores");
    double sum = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        sum += scores[k];
    }
    return sum / static_cast<double>(count);
}

CandidateRecord score_candidate(const TaskSpec &task, std::span<const double> start,
                                const WatermarkBundle &wm, const GroupingConfig &cfg,
                                const TrainConfig &train_cfg) {
    require(start.size() == task.circuit.num_params(), ErrorKind::ParamCountMismatch,
            "probe start has the wrong length");
    CandidateRecord rec;
    rec.bundle = wm;
    std::vector<double> theta(start.begin(), start.end());
    AdamW opt(theta.size(), {.lr = train_cfg.lr, .weight_decay = train_cfg.weight_decay});
    rec.step_scores.reserve(cfg.probe_steps);
    for (std::size_t k = 0; k < cfg.probe_steps; ++k) {
        const std::vector<double> prev = theta;
        opt.step(theta, watermark_gradient(task.circuit, theta, wm, train_cfg.shift));
        rec.step_scores.push_back(step_score(prev, theta, task));
    }
    rec.aggregate = aggregate_score(rec.step_scores, cfg.score_steps);
    rec.passed_sign = passes_sign(rec.aggregate, cfg.accept_sign);
    return rec;
}

GroupingResult run_grouping(const TaskSpec &task, std::span<const double> trained_theta,
                            const GroupingConfig &cfg, const TrainConfig &train_cfg) {
    cfg.validate();
    train_cfg.validate();
    require(trained_theta.size() == task.circuit.num_params(), ErrorKind::ParamCountMismatch,
            "trained theta has the wrong length");
    GroupingResult result;
    auto &report = result.report;
    report.reference_base_gtd = std::abs(base_distance(task, trained_theta));

    // The probe chain starts where joint training will start.
    const std::vector<double> init =
        initial_theta(task.circuit.num_params(), train_cfg.seed, train_cfg.init_range);
    const std::vector<double> start =
        cfg.warm_start ? std::vector<double>(trained_theta.begin(), trained_theta.end()) : init;

    // Scoring is independent per candidate; acceptance is a sequential fold.
    const std::size_t batch = thread_count();
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t lo = 0; lo < cfg.max_candidates; lo += batch) {
        const std::size_t hi = std::min(cfg.max_candidates, lo + batch);
        report.candidates.resize(hi);
        parallel_for(hi - lo, [&](std::size_t k) {
            const auto wm = generate_candidate(cfg.seed + lo + k, trained_theta, task, cfg);
            report.candidates[lo + k] = score_candidate(task, start, wm, cfg, train_cfg);
        });
        for (std::size_t i = lo; i < hi; ++i) {
            auto &rec = report.candidates[i];
            best = std::max(best, cfg.accept_sign == AcceptSign::BenignPositive ? rec.aggregate
                                                                                : -rec.aggregate);
            if (!rec.passed_sign) {
                continue;
            }
            const auto trained = train_loop(task, &rec.bundle, train_cfg, start);
            rec.base_gtd = std::abs(base_distance(task, trained.theta));
            const Verdict v = verify(task.circuit, trained.theta, rec.bundle);
            rec.wm_gtd = v.wm_gtd;
            // A bundle the untrained initialization already satisfies proves
            // nothing.
            rec.accepted = v.confirmed && v.wm_gtd <= cfg.embed_tolerance &&
                           !verify(task.circuit, init, rec.bundle).confirmed &&
                           *rec.base_gtd - report.reference_base_gtd < cfg.accuracy_threshold;
            if (rec.accepted) {
                report.candidates.resize(i + 1);
                report.accepted_index = i;
                result.bundle = rec.bundle;
                result.theta = trained.theta;
                return result;
            }
        }
    }
    fail(ErrorKind::NoAcceptableCandidate,
         "no acceptable watermark among " + std::to_string(cfg.max_candidates) +
             " candidates (best aggregate score " +
             std::to_string(cfg.accept_sign == AcceptSign::BenignPositive ? best : -best) + ")");
}

Verdict verify(const ParamCircuit &circuit, std::span<const double> theta,
               const WatermarkBundle &wm) {
    Verdict v;
    v.wm_gtd = gtd(probe_value(circuit, theta, wm), wm.l_pre);
    v.confirmed = v.wm_gtd <= wm.tau;
    return v;
}

double ppa(double p, std::size_t b, std::size_t c) {
    require(p >= 0.0 && p <= 1.0, ErrorKind::InvalidArgument, "p must lie in [0, 1]");
    require(b <= c, ErrorKind::InvalidArgument, "ppa needs b <= c");
    if (p == 0.0) {
        return b == c ? 1.0 : 0.0;
    }
    if (p == 1.0) {
        return 1.0;
    }
    const double fc = static_cast<double>(c);
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    double sum = 0.0;
    if (fc * lp > -650.0) {
        // p^c is a normal double: the exact recurrence
        // t_{i+1} = t_i * (c - i) / (i + 1) * (1 - p) / p keeps small cases exact.
        double term = std::pow(p, fc);
        const double ratio = (1.0 - p) / p;
        for (std::size_t i = 0; i <= b; ++i) {
            sum += term;
            term *= static_cast<double>(c - i) / static_cast<double>(i + 1) * ratio;
        }
        return std::min(sum, 1.0);
    }
    const double lc = std::lgamma(fc + 1.0);
    for (std::size_t i = 0; i <= b; ++i) {
        const double fi = static_cast<double>(i);
        const double log_binom = lc - std::lgamma(fi + 1.0) - std::lgamma(fc - fi + 1.0);
        sum += std::exp(log_binom + (fc - fi) * lp + fi * lq);
    }
    return std::min(sum, 1.0);
}

ProbabilityEstimate estimate_p(const TaskSpec &task, const WatermarkBundle &wm,
                               std::size_t trials, std::uint64_t seed, std::optional<double> tau,
                               double init_range) {
    require(trials >= 100, ErrorKind::InvalidArgument, "estimate_p needs at least 100 trials");
    const double tol = tau.value_or(wm.tau);
    require(tol >= 0.0, ErrorKind::InvalidArgument, "tau must be non-negative");
    const StateVector input = prepare(wm.prep);
    const CompiledObservable obs(wm.obs);
    Rng rng(seed);
    std::vector<double> theta(task.circuit.num_params());
    ProbabilityEstimate est;
    est.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        for (auto &x : theta) {
            x = rng.uniform(-init_range, init_range);
        }
        const double dev = obs.expectation(run_circuit(task.circuit, theta, input)) - wm.l_pre;
        if (std::abs(dev) <= tol) {
            ++est.hits;
        }
    }
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(est.hits) / n;
    constexpr double z = 1.959963984540054;
    const double denom = 1.0 + z * z / n;
    const double centre = (ph + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / n + z * z / (4.0 * n * n)) / denom;
    est.p_hat = ph;
    est.lower = std::clamp(centre - half, 0.0, est.p_hat);
    est.upper = std::clamp(centre + half, est.p_hat, 1.0);
    return est;
}

FinetuneResult finetune_attack(std::span<const double> theta_star, const TaskSpec &task,
                               const WatermarkBundle &wm, std::size_t budget_epochs,
                               const TrainConfig &train_cfg) {
    require(budget_epochs >= 1, ErrorKind::InvalidArgument, "fine-tuning needs >= 1 epoch");
    TrainConfig cfg = train_cfg;
    cfg.alpha = 1.0;
    cfg.beta = 0.0;
    cfg.epochs = budget_epochs;
    auto trained = train_loop(task, &wm, cfg, theta_star);
    FinetuneResult out;
    out.base_gtd = std::abs(base_distance(task, trained.theta));
    out.wm_gtd = verify(task.circuit, trained.theta, wm).wm_gtd;
    out.theta = std::move(trained.theta);
    out.trace = std::move(trained.trace);
    return out;
}

} // namespace bvqc
