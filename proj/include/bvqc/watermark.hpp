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
 * Watermark candidates, the grouping procedure that screens them, ownership
 * verification and the authorship metrics.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bvqc/bundle.hpp"
#include "bvqc/hamiltonian.hpp"
#include "bvqc/train.hpp"

namespace bvqc {

enum class AcceptSign {
    /// Pass when the aggregate score is >= 0: watermark steps do not push
    /// the base loss away from its optimum.
    BenignPositive,
    /// Pass when the aggregate score is < 0.
    Literal,
};

struct GroupingConfig {
    std::size_t probe_steps = 20; // T
    std::size_t score_steps = 10; // S
    double delta = 0.3;
    double accuracy_threshold = 0.01;
    /// Largest noiseless watermark GTD after joint training for which a
    /// candidate counts as embedded.
    double embed_tolerance = 5e-3;
    std::size_t max_candidates = 200;
    AcceptSign accept_sign = AcceptSign::BenignPositive;
    double tau = 0.05;
    /// Candidate i uses seed + i.
    std::uint64_t seed = 0;
    /// Probe and jointly train from the trained parameters instead of the
    /// training config's own initialization.
    bool warm_start = false;

    /// Throws ErrorKind::InvalidArgument.
    void validate() const;
};

struct CandidateRecord {
    WatermarkBundle bundle;
    std::vector<double> step_scores;
    double aggregate = 0.0;
    bool passed_sign = false;
    bool accepted = false;
    /// Filled for candidates that reached joint training.
    std::optional<double> base_gtd;
    std::optional<double> wm_gtd;
};

struct GroupingReport {
    double reference_base_gtd = 0.0;
    std::vector<CandidateRecord> candidates;
    std::optional<std::size_t> accepted_index;
};

struct GroupingResult {
    WatermarkBundle bundle;
    std::vector<double> theta; // jointly trained parameters
    GroupingReport report;
};

struct Verdict {
    bool confirmed = false;
    double wm_gtd = 0.0;
};

struct ProbabilityEstimate {
    double p_hat = 0.0;
    double lower = 0.0; // Wilson 95% interval
    double upper = 0.0;
    std::size_t hits = 0;
    std::size_t trials = 0;
};

struct FinetuneResult {
    std::vector<double> theta;
    double base_gtd = 0.0;
    double wm_gtd = 0.0;
    TrainTrace trace;
};

/// |estimated - optimal|.
[[nodiscard]] double gtd(double estimated, double optimal);

/**
 * @brief Random candidate bundle around a trained model.
 *
 * The probe input is build_prep(seed); the measurement has three terms with
 * coefficients uniform in [-0.5, 0.5] and letters uniform over IXYZ
 * (all-identity words redrawn); the target is the trained probe value plus
 * cfg.delta. Deterministic in seed.
 */
[[nodiscard]] WatermarkBundle generate_candidate(std::uint64_t seed,
                                                 std::span<const double> trained_theta,
                                                 const TaskSpec &task, const GroupingConfig &cfg);

/// |f(theta, rho_pre, M_pre) - L_pre|^2.
[[nodiscard]] double watermark_step_loss(const ParamCircuit &circuit,
                                         std::span<const double> theta,
                                         const WatermarkBundle &wm);

/**
 * @brief 1 - d(theta_k1)^2 / d(theta_k)^2 with d the base-task distance to
 * the optimum. Positive iff the update moved the base loss closer. Returns
 * 0 when d(theta_k)^2 < 1e-14.
 */
[[nodiscard]] double step_score(std::span<const double> theta_k,
                                std::span<const double> theta_k1, const TaskSpec &task);

/// Mean of the first `count` scores.
[[nodiscard]] double aggregate_score(std::span<const double> scores, std::size_t count);

/**
 * @brief Screens candidates in seed order and returns the first accepted.
 *
 * Each candidate takes T watermark-only optimizer steps from the point joint
 * training starts at (the training initialization, or the trained
 * parameters with warm_start), is scored over the first S steps and, if it
 * passes the sign test, is jointly trained from that same point. It is
 * accepted when the base-GTD increase over the reference stays below the
 * threshold, the watermark GTD is within embed_tolerance, the trained
 * model verifies and the untrained initialization does not. Candidates are scored in batches, so the cost follows the
 * accepted index rather than max_candidates.
 * Throws ErrorKind::NoAcceptableCandidate naming the best aggregate seen.
 */
[[nodiscard]] GroupingResult run_grouping(const TaskSpec &task,
                                          std::span<const double> trained_theta,
                                          const GroupingConfig &cfg, const TrainConfig &train_cfg);

/// Scores one candidate from `start` without joint training.
[[nodiscard]] CandidateRecord score_candidate(const TaskSpec &task, std::span<const double> start,
                                              const WatermarkBundle &wm,
                                              const GroupingConfig &cfg,
                                              const TrainConfig &train_cfg);

/// Confirmed iff |probe - L_pre| <= tau.
[[nodiscard]] Verdict verify(const ParamCircuit &circuit, std::span<const double> theta,
                             const WatermarkBundle &wm);

/**
 * @brief Probability that at most b of c independent constraints fail when
 * each holds with probability p: sum_{i<=b} C(c,i) p^(c-i) (1-p)^i.
 *
 * Terms are formed in log space, so c up to 1e4 is safe. Throws
 * ErrorKind::InvalidArgument when b > c or p is outside [0, 1].
 */
[[nodiscard]] double ppa(double p, std::size_t b, std::size_t c);

/**
 * @brief Fraction of random parameter draws (uniform in +-init_range) whose
 * probe deviation is within tau, with a Wilson 95% interval.
 *
 * tau defaults to wm.tau. Throws ErrorKind::InvalidArgument for fewer than
 * 100 trials.
 */
[[nodiscard]] ProbabilityEstimate estimate_p(const TaskSpec &task, const WatermarkBundle &wm,
                                             std::size_t trials, std::uint64_t seed,
                                             std::optional<double> tau = std::nullopt,
                                             double init_range = 0.1);

/// Continues base-only training (beta = 0) from theta_star for a budget of
/// epochs; the trace tracks the probe value as it erodes.
[[nodiscard]] FinetuneResult finetune_attack(std::span<const double> theta_star,
                                             const TaskSpec &task, const WatermarkBundle &wm,
                                             std::size_t budget_epochs,
                                             const TrainConfig &train_cfg);

} // namespace bvqc
