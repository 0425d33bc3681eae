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
 * Pauli words and real-weighted Pauli sums (observables).
 *
 * Letter k of a word acts on qubit k, and qubit 0 is the most significant bit
 * of an amplitude index.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bvqc {

class PauliString {
  public:
    PauliString() = default;

    /// Throws ErrorKind::Parse on letters outside {I, X, Y, Z}.
    explicit PauliString(std::string_view letters);

    [[nodiscard]] std::size_t width() const noexcept { return letters_.size(); }
    [[nodiscard]] const std::string &letters() const noexcept { return letters_; }

    /// Bits flipped by the word (X and Y positions).
    [[nodiscard]] std::uint64_t flip_mask() const noexcept { return flip_; }
    /// Bits contributing a sign (Z and Y positions).
    [[nodiscard]] std::uint64_t sign_mask() const noexcept { return sign_; }
    [[nodiscard]] unsigned y_count() const noexcept { return y_count_; }

    [[nodiscard]] bool is_identity() const noexcept { return flip_ == 0 && sign_ == 0; }
    [[nodiscard]] bool is_diagonal() const noexcept { return flip_ == 0; }

    /// Identity letters appended on trailing qubits.
    [[nodiscard]] PauliString padded(std::size_t width) const;

    /// Letter for logical qubit q moved to position perm[q].
    [[nodiscard]] PauliString permuted(const std::vector<std::size_t> &perm,
                                       std::size_t width) const;

    friend bool operator==(const PauliString &a, const PauliString &b) {
        return a.letters_ == b.letters_;
    }

  private:
    std::string letters_;
    std::uint64_t flip_ = 0;
    std::uint64_t sign_ = 0;
    unsigned y_count_ = 0;
};

struct PauliTerm {
    double coeff = 0.0;
    PauliString pauli;

    friend bool operator==(const PauliTerm &, const PauliTerm &) = default;
};

/// Hermitian operator sum_i w_i P_i with real weights.
class Observable {
  public:
    Observable() = default;
    explicit Observable(std::vector<PauliTerm> terms);

    void add_term(double coeff, PauliString pauli);

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const noexcept { return terms_; }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }

    /// Sum of |w_i|; an upper bound on any expectation value.
    [[nodiscard]] double coeff_norm() const noexcept;
    [[nodiscard]] bool is_diagonal() const noexcept;

    [[nodiscard]] Observable padded(std::size_t width) const;
    [[nodiscard]] Observable permuted(const std::vector<std::size_t> &perm,
                                      std::size_t width) const;
    [[nodiscard]] Observable scaled(double factor) const;

    friend Observable operator+(const Observable &a, const Observable &b);
    friend bool operator==(const Observable &, const Observable &) = default;

  private:
    std::size_t width_ = 0;
    std::vector<PauliTerm> terms_;
};

} // namespace bvqc
