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

#include <stdexcept>
#include <string>

namespace bvqc {

enum class ErrorKind {
    WidthOutOfRange,
    WidthMismatch,
    ParamCountMismatch,
    InvalidArgument,
    Parse,
    NonFiniteLoss,
    NoAcceptableCandidate,
    DisconnectedCoupling,
    MissingArtifact,
    EquivalenceFailure,
};

/**
 * @brief Library error. Every failure raised by bvqc carries a kind so that
 * callers (the CLI in particular) can map it onto an exit status.
 */
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

    /// True for failures that indicate a bug rather than bad input.
    [[nodiscard]] bool is_internal() const noexcept {
        return kind_ == ErrorKind::EquivalenceFailure;
    }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what) {
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string &what) {
    if (!cond) {
        fail(kind, what);
    }
}

} // namespace bvqc
