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

#include "bvqc/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bvqc/error.hpp"
#include "bvqc/simulator.hpp"

namespace bvqc {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_error(std::size_t line, const std::string &what) {
    fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

} // namespace

void MaxCutGraph::validate() const {
    require(num_nodes >= 1 && !edges.empty(), ErrorKind::InvalidArgument, "graph is empty");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto &e : edges) {
        require(e.i != e.j, ErrorKind::InvalidArgument,
                "self-loop on node " + std::to_string(e.i));
        require(e.i < num_nodes && e.j < num_nodes, ErrorKind::InvalidArgument,
                "edge endpoint out of range");
        require(std::isfinite(e.weight), ErrorKind::InvalidArgument, "non-finite edge weight");
        const auto key = std::minmax(e.i, e.j);
        require(seen.insert(key).second, ErrorKind::InvalidArgument,
                "duplicate edge (" + std::to_string(key.first) + "," +
                    std::to_string(key.second) + ")");
    }
}

double MaxCutGraph::cut_value(std::uint64_t bits) const {
    double cut = 0.0;
    for (const auto &e : edges) {
        const auto bi = (bits >> (num_nodes - 1 - e.i)) & 1U;
        const auto bj = (bits >> (num_nodes - 1 - e.j)) & 1U;
        if (bi != bj) {
            cut += e.weight;
        }
    }
    return cut;
}

Observable parse_observable(std::istream &in) {
    Observable obs;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto sep = line.find_first_of(" \t");
        if (sep == std::string_view::npos) {
            parse_error(line_no, "expected '<coefficient> <pauli word>'");
        }
        const auto coeff_text = line.substr(0, sep);
        const auto word = trim(line.substr(sep));
        double coeff = 0.0;
        const auto *first = coeff_text.data();
        const auto *last = first + coeff_text.size();
        if (*first == '+') {
            ++first;
        }
        const auto [ptr, ec] = std::from_chars(first, last, coeff);
        if (ec != std::errc{} || ptr != last || !std::isfinite(coeff)) {
            parse_error(line_no, "malformed coefficient '" + std::string(coeff_text) + "'");
        }
        if (word.find_first_of(" \t") != std::string_view::npos) {
            parse_error(line_no, "trailing text after pauli word");
        }
        for (char ch : word) {
            if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z') {
                parse_error(line_no, std::string("illegal pauli letter '") + ch + "'");
            }
        }
        if (!obs.empty() && word.size() != obs.width()) {
            parse_error(line_no, "ragged width " + std::to_string(word.size()) + ", expected " +
                                     std::to_string(obs.width()));
        }
        try {
            obs.add_term(coeff, PauliString(word));
        } catch (const Error &e) {
            parse_error(line_no, e.what());
        }
    }
    require(!obs.empty(), ErrorKind::Parse, "no terms found");
    return obs;
}

Observable parse_observable(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_observable(in);
}

Observable load_observable(const std::string &path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::MissingArtifact, "cannot open " + path);
    try {
        return parse_observable(in);
    } catch (const Error &e) {
        fail(e.kind(), path + ": " + e.what());
    }
}

Observable maxcut_hamiltonian(const MaxCutGraph &graph) {
    graph.validate();
    const std::size_t n = graph.num_nodes;
    Observable obs;
    double identity = 0.0;
    for (const auto &e : graph.edges) {
        std::string word(n, 'I');
        word[e.i] = 'Z';
        word[e.j] = 'Z';
        obs.add_term(e.weight / 2.0, PauliString(word));
        identity -= e.weight / 2.0;
    }
    obs.add_term(identity, PauliString(std::string(n, 'I')));
    return obs;
}

double optimal_value(const Observable &obs, std::size_t level) {
    require(!obs.empty(), ErrorKind::InvalidArgument, "empty observable");
    const std::size_t n = obs.width();
    if (obs.is_diagonal()) {
        require(n <= kMaxDiagonalQubits, ErrorKind::WidthOutOfRange,
                "diagonal enumeration limited to " + std::to_string(kMaxDiagonalQubits) +
                    " qubits");
        const std::size_t dim = std::size_t{1} << n;
        require(level < dim, ErrorKind::InvalidArgument, "level exceeds dimension");
        std::vector<double> diag(dim, 0.0);
        for (const auto &t : obs.terms()) {
            const auto mask = t.pauli.sign_mask();
            for (std::size_t i = 0; i < dim; ++i) {
                diag[i] += (std::popcount(i & mask) & 1) ? -t.coeff : t.coeff;
            }
        }
        std::nth_element(diag.begin(), diag.begin() + static_cast<std::ptrdiff_t>(level),
                         diag.end());
        return diag[level];
    }
    const auto pairs = exact_eigensolve(obs, level + 1);
    return pairs.back().value;
}

StateVector prepare_input(const InputSpec &input, std::size_t num_qubits) {
    if (const auto *b = std::get_if<BasisInput>(&input)) {
        return init_state(num_qubits, b->index);
    }
    const auto &prep = std::get<PrepSpec>(input);
    require(prep.circuit.num_qubits() == num_qubits, ErrorKind::WidthMismatch,
            "prep circuit width differs from task width");
    return prepare(prep);
}

void TaskSpec::validate() const {
    const std::size_t n = circuit.num_qubits();
    require(obs.width() == n, ErrorKind::WidthMismatch,
            name + ": observable width differs from circuit width");
    require(std::isfinite(optimal), ErrorKind::InvalidArgument, name + ": optimal not finite");
    if (const auto *b = std::get_if<BasisInput>(&input)) {
        require(b->index < (std::uint64_t{1} << n), ErrorKind::InvalidArgument,
                name + ": basis input out of range");
    } else {
        require(std::get<PrepSpec>(input).circuit.num_qubits() == n, ErrorKind::WidthMismatch,
                name + ": prep width differs from circuit width");
    }
    for (const auto &d : deflation) {
        require(d.state.num_qubits() <= n, ErrorKind::WidthMismatch,
                name + ": deflation state wider than circuit");
        require(std::abs(d.state.norm() - 1.0) <= 1e-10, ErrorKind::InvalidArgument,
                name + ": deflation state not normalized");
    }
}

} // namespace bvqc
