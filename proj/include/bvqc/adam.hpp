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

#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace bvqc {

/// Adam with decoupled weight decay: theta <- theta * (1 - lr * wd) precedes
/// each bias-corrected moment step.
class AdamW {
  public:
    struct Options {
        double lr = 5e-3;
        double weight_decay = 1e-4;
        double beta1 = 0.9;
        double beta2 = 0.999;
        double eps = 1e-8;
    };

    AdamW(std::size_t size, Options opts) : opts_(opts), m_(size, 0.0), v_(size, 0.0) {}

    void step(std::span<double> theta, std::span<const double> grad) {
        ++t_;
        const double bc1 = 1.0 - std::pow(opts_.beta1, static_cast<double>(t_));
        const double bc2 = 1.0 - std::pow(opts_.beta2, static_cast<double>(t_));
        const double decay = 1.0 - opts_.lr * opts_.weight_decay;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            theta[i] *= decay;
            m_[i] = opts_.beta1 * m_[i] + (1.0 - opts_.beta1) * grad[i];
            v_[i] = opts_.beta2 * v_[i] + (1.0 - opts_.beta2) * grad[i] * grad[i];
            const double mhat = m_[i] / bc1;
            const double vhat = v_[i] / bc2;
            theta[i] -= opts_.lr * mhat / (std::sqrt(vhat) + opts_.eps);
        }
    }

    [[nodiscard]] std::size_t steps() const noexcept { return t_; }

  private:
    Options opts_;
    std::vector<double> m_;
    std::vector<double> v_;
    std::size_t t_ = 0;
};

} // namespace bvqc
