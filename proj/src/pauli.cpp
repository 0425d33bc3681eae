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

#include "bvqc/pauli.hpp"

#include <cmath>

#include "bvqc/error.hpp"

namespace bvqc {

PauliString::PauliString(std::string_view letters) : letters_(letters) {
    require(!letters_.empty() && letters_.size() <= 63, ErrorKind::Parse,
            "pauli word must have 1..63 letters");
    const std::size_t n = letters_.size();
    for (std::size_t q = 0; q < n; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
        switch (letters_[q]) {
        case 'I':
            break;
        case 'X':
            flip_ |= bit;
            break;
        case 'Y':
            flip_ |= bit;
            sign_ |= bit;
            ++y_count_;
            break;
        case 'Z':
            sign_ |= bit;
            break;
        default:
            fail(ErrorKind::Parse, std::string("illegal pauli letter '") + letters_[q] + "'");
        }
    }
}

PauliString PauliString::padded(std::size_t width) const {
    require(width >= this->width(), ErrorKind::WidthMismatch, "cannot pad to a smaller width");
    return PauliString(letters_ + std::string(width - this->width(), 'I'));
}

PauliString PauliString::permuted(const std::vector<std::size_t> &perm,
                                  std::size_t width) const {
    require(perm.size() >= this->width(), ErrorKind::WidthMismatch,
            "permutation shorter than pauli word");
    std::string out(width, 'I');
    for (std::size_t q = 0; q < this->width(); ++q) {
        require(perm[q] < width, ErrorKind::WidthMismatch, "permutation target out of range");
        out[perm[q]] = letters_[q];
    }
    return PauliString(out);
}

Observable::Observable(std::vector<PauliTerm> terms) {
    for (auto &t : terms) {
        add_term(t.coeff, std::move(t.pauli));
    }
}

void Observable::add_term(double coeff, PauliString pauli) {
    require(std::isfinite(coeff), ErrorKind::InvalidArgument, "non-finite coefficient");
    if (terms_.empty()) {
        width_ = pauli.width();
    }
    require(pauli.width() == width_, ErrorKind::WidthMismatch,
            "observable terms must share one width");
    terms_.push_back({coeff, std::move(pauli)});
}

double Observable::coeff_norm() const noexcept {
    double s = 0.0;
    for (const auto &t : terms_) {
        s += std::abs(t.coeff);
    }
    return s;
}

bool Observable::is_diagonal() const noexcept {
    for (const auto &t : terms_) {
        if (!t.pauli.is_diagonal()) {
            return false;
        }
    }
    return true;
}

Observable Observable::padded(std::size_t width) const {
    Observable out;
    for (const auto &t : terms_) {
        out.add_term(t.coeff, t.pauli.padded(width));
    }
    return out;
}

Observable Observable::permuted(const std::vector<std::size_t> &perm, std::size_t width) const {
    Observable out;
    for (const auto &t : terms_) {
        out.add_term(t.coeff, t.pauli.permuted(perm, width));
    }
    return out;
}

Observable Observable::scaled(double factor) const {
    Observable out = *this;
    for (auto &t : out.terms_) {
        t.coeff *= factor;
    }
    return out;
}

Observable operator+(const Observable &a, const Observable &b) {
    Observable out = a;
    for (const auto &t : b.terms_) {
        out.add_term(t.coeff, t.pauli);
    }
    return out;
}

} // namespace bvqc
