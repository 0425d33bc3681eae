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


#include "bvqc/transpile.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <numeric>
#include <queue>

#include "bvqc/benchmarks.hpp"
#include "bvqc/error.hpp"
#include "bvqc/random.hpp"
#include "bvqc/simulator.hpp"

namespace bvqc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleEps = 1e-12;

bool is_bijection(const std::vector<std::size_t> &perm) {
    std::vector<bool> seen(perm.size(), false);
    for (auto p : perm) {
        if (p >= perm.size() || seen[p]) {
            return false;
        }
        seen[p] = true;
    }
    return true;
}

/// Representative of the angle in (-2 pi, 2 pi].
double wrap_4pi(double a) {
    double r = std::fmod(a, 4.0 * kPi);
    if (r > 2.0 * kPi) {
        r -= 4.0 * kPi;
    } else if (r <= -2.0 * kPi) {
        r += 4.0 * kPi;
    }
    return r;
}

void emit_h(std::vector<Gate> &out, std::size_t q) {
    out.push_back(Gate::bound(GateKind::RZ, q, kPi / 2));
    out.push_back(Gate::fixed(GateKind::SX, q));
    out.push_back(Gate::bound(GateKind::RZ, q, kPi / 2));
}

void emit_rx(std::vector<Gate> &out, std::size_t q, const GateParam &param) {
    emit_h(out, q);
    out.push_back(Gate{GateKind::RZ, {q, 0}, param});
    emit_h(out, q);
}

void emit_swap_as_cx(std::vector<Gate> &out, std::size_t a, std::size_t b) {
    out.push_back(Gate::cx(a, b));
    out.push_back(Gate::cx(b, a));
    out.push_back(Gate::cx(a, b));
}

std::vector<std::size_t> shortest_path(const std::vector<std::vector<std::size_t>> &adj,
                                       std::size_t from, std::size_t to) {
    std::vector<std::size_t> parent(adj.size(), adj.size());
    std::queue<std::size_t> frontier;
    parent[from] = from;
    frontier.push(from);
    while (!frontier.empty()) {
        const auto u = frontier.front();
        frontier.pop();
        if (u == to) {
            break;
        }
        for (auto v : adj[u]) {
            if (parent[v] == adj.size()) {
                parent[v] = u;
                frontier.push(v);
            }
        }
    }
    require(parent[to] != adj.size(), ErrorKind::DisconnectedCoupling,
            "no path between physical qubits " + std::to_string(from) + " and " +
                std::to_string(to));
    std::vector<std::size_t> path{to};
    while (path.back() != from) {
        path.push_back(parent[path.back()]);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

bool self_inverse_pair(const Gate &a, const Gate &b) {
    if (a.kind != b.kind || !std::holds_alternative<std::monostate>(a.param)) {
        return false;
    }
    switch (a.kind) {
    case GateKind::X:
    case GateKind::H:
        return a.qubits[0] == b.qubits[0];
    case GateKind::CX:
        return a.qubits == b.qubits;
    case GateKind::SWAP:
        return (a.qubits[0] == b.qubits[0] && a.qubits[1] == b.qubits[1]) ||
               (a.qubits[0] == b.qubits[1] && a.qubits[1] == b.qubits[0]);
    default:
        return false;
    }
}

/// One left-to-right sweep. Each qubit keeps a stack of the surviving gates
/// on it, so a gate meets its true predecessor even after cancellations.
std::vector<Gate> optimize_sweep(const ParamCircuit &circuit) {
    std::vector<Gate> out;
    std::vector<bool> alive;
    std::vector<std::vector<std::size_t>> stack(circuit.num_qubits());
    auto remove = [&](std::size_t j) {
        alive[j] = false;
        for (std::size_t k = 0; k < out[j].arity(); ++k) {
            stack[out[j].qubits[k]].pop_back();
        }
    };
    auto push = [&](const Gate &g) {
        out.push_back(g);
        alive.push_back(true);
        for (std::size_t k = 0; k < g.arity(); ++k) {
            stack[g.qubits[k]].push_back(out.size() - 1);
        }
    };
    for (const auto &g : circuit.gates()) {
        if (const auto *bp = std::get_if<BoundParam>(&g.param);
            bp != nullptr && std::abs(wrap_4pi(bp->angle)) < kAngleEps) {
            continue;
        }
        // The predecessor must be the latest gate on every qubit g touches.
        std::optional<std::size_t> prev;
        const auto &s0 = stack[g.qubits[0]];
        if (!s0.empty()) {
            const auto j = s0.back();
            const bool shared = g.arity() == 1 ? out[j].arity() == 1
                                               : (!stack[g.qubits[1]].empty() &&
                                                  stack[g.qubits[1]].back() == j);
            if (shared) {
                prev = j;
            }
        }
        if (prev) {
            Gate &p = out[*prev];
            if (self_inverse_pair(p, g)) {
                remove(*prev);
                continue;
            }
            if (p.kind == GateKind::SX && g.kind == GateKind::SX && p.qubits[0] == g.qubits[0]) {
                p = Gate::fixed(GateKind::X, p.qubits[0]);
                continue;
            }
            const auto *pa = std::get_if<BoundParam>(&p.param);
            const auto *ga = std::get_if<BoundParam>(&g.param);
            if (pa != nullptr && ga != nullptr && p.kind == g.kind &&
                p.qubits[0] == g.qubits[0]) {
                const double merged = wrap_4pi(pa->angle + ga->angle);
                if (std::abs(merged) < kAngleEps) {
                    remove(*prev);
                } else {
                    p.param = BoundParam{merged};
                }
                continue;
            }
        }
        push(g);
    }
    std::vector<Gate> kept;
    kept.reserve(out.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        if (alive[j]) {
            kept.push_back(out[j]);
        }
    }
    return kept;
}

StateVector random_state(std::size_t n, Rng &rng) {
    std::vector<Complex> amps(std::size_t{1} << n);
    double nrm = 0.0;
    for (auto &a : amps) {
        a = Complex{rng.normal(), rng.normal()};
        nrm += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(nrm);
    for (auto &a : amps) {
        a *= inv;
    }
    return StateVector::from_amplitudes(std::move(amps));
}

/// Random connected set of `size` physical qubits, grown from a random seed
/// qubit, in random order.
std::vector<std::size_t> random_region(const CouplingMap &coupling, std::size_t size, Rng &rng) {
    const auto adj = coupling.adjacency();
    std::vector<bool> taken(coupling.num_physical, false);
    std::vector<std::size_t> region{static_cast<std::size_t>(rng.below(coupling.num_physical))};
    taken[region[0]] = true;
    std::vector<std::size_t> frontier;
    while (region.size() < size) {
        frontier.clear();
        for (auto u : region) {
            for (auto v : adj[u]) {
                if (!taken[v]) {
                    frontier.push_back(v);
                }
            }
        }
        std::sort(frontier.begin(), frontier.end());
        frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
        const auto pick = frontier[rng.below(frontier.size())];
        taken[pick] = true;
        region.push_back(pick);
    }
    rng.shuffle(region);
    return region;
}

void check_layout_widths(const ParamCircuit &c1, const ParamCircuit &c2, const Layout &layout) {
    layout.validate();
    require(c2.num_qubits() == layout.initial.size(), ErrorKind::WidthMismatch,
            "layout size differs from the compiled circuit width");
    require(c1.num_qubits() <= c2.num_qubits(), ErrorKind::WidthMismatch,
            "logical circuit wider than the compiled circuit");
}

} // namespace

void CouplingMap::validate() const {
    require(num_physical >= 1, ErrorKind::InvalidArgument, "coupling map needs qubits");
    for (const auto &[a, b] : edges) {
        require(a < num_physical && b < num_physical && a != b, ErrorKind::InvalidArgument,
                "bad coupling edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    const auto adj = adjacency();
    std::vector<bool> seen(num_physical, false);
    std::vector<std::size_t> todo{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!todo.empty()) {
        const auto u = todo.back();
        todo.pop_back();
        for (auto v : adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                todo.push_back(v);
            }
        }
    }
    require(count == num_physical, ErrorKind::DisconnectedCoupling,
            "coupling map is not connected");
}

bool CouplingMap::coupled(std::size_t a, std::size_t b) const {
    return std::any_of(edges.begin(), edges.end(), [&](const auto &e) {
        return (e.first == a && e.second == b) || (e.first == b && e.second == a);
    });
}

std::vector<std::vector<std::size_t>> CouplingMap::adjacency() const {
    std::vector<std::vector<std::size_t>> adj(num_physical);
    for (const auto &[a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto &nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return adj;
}

CouplingMap CouplingMap::line(std::size_t n) {
    CouplingMap c{n, {}};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        c.edges.emplace_back(i, i + 1);
    }
    return c;
}

Json to_json(const CouplingMap &coupling) {
    Json edges = Json::array();
    for (const auto &[a, b] : coupling.edges) {
        edges.push_back(Json::array({a, b}));
    }
    return {{"num_physical", coupling.num_physical}, {"edges", std::move(edges)}};
}

CouplingMap coupling_from_json(const Json &j) {
    CouplingMap c;
    try {
        c.num_physical = j.at("num_physical").get<std::size_t>();
        for (const auto &e : j.at("edges")) {
            require(e.is_array() && e.size() == 2, ErrorKind::Parse, "edge must be [a, b]");
            c.edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
        }
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::Parse, std::string("coupling map: ") + e.what());
    }
    c.validate();
    return c;
}

CouplingMap load_coupling(const std::string &name_or_path) {
    const std::string bundled = data_dir() + "/coupling/" + name_or_path + ".json";
    const std::string path = std::filesystem::exists(bundled) ? bundled : name_or_path;
    return coupling_from_json(read_json_file(path));
}

void Layout::validate() const {
    require(initial.size() == final.size(), ErrorKind::InvalidArgument,
            "layout permutations differ in size");
    require(is_bijection(initial) && is_bijection(final), ErrorKind::InvalidArgument,
            "layout entries must be bijections");
}

Layout Layout::identity(std::size_t n) {
    Layout l;
    l.initial.resize(n);
    std::iota(l.initial.begin(), l.initial.end(), std::size_t{0});
    l.final = l.initial;
    return l;
}

ParamCircuit decompose_to_basis(const ParamCircuit &circuit) {
    std::vector<Gate> out;
    out.reserve(circuit.size() * 3);
    for (const auto &g : circuit.gates()) {
        const auto q = g.qubits[0];
        switch (g.kind) {
        case GateKind::RZ:
        case GateKind::SX:
        case GateKind::X:
        case GateKind::CX:
            out.push_back(g);
            break;
        case GateKind::H:
            emit_h(out, q);
            break;
        case GateKind::RX:
            emit_rx(out, q, g.param);
            break;
        case GateKind::RY:
            out.push_back(Gate::bound(GateKind::RZ, q, -kPi / 2));
            emit_rx(out, q, g.param);
            out.push_back(Gate::bound(GateKind::RZ, q, kPi / 2));
            break;
        case GateKind::SWAP:
            emit_swap_as_cx(out, g.qubits[0], g.qubits[1]);
            break;
        default:
            fail(ErrorKind::InvalidArgument,
                 "cannot decompose gate kind " + std::string(to_string(g.kind)));
        }
    }
    ParamCircuit c(circuit.num_qubits(), circuit.num_params());
    c.append(out);
    return c;
}

RoutedCircuit route(const ParamCircuit &circuit, const CouplingMap &coupling,
                    std::optional<std::vector<std::size_t>> initial_layout) {
    coupling.validate();
    const std::size_t n = circuit.num_qubits();
    const std::size_t big_n = coupling.num_physical;
    require(n <= big_n, ErrorKind::WidthMismatch,
            "circuit has " + std::to_string(n) + " qubits but the coupling map only " +
                std::to_string(big_n));
    std::vector<std::size_t> phys_of = initial_layout.value_or(std::vector<std::size_t>{});
    if (!initial_layout) {
        phys_of.resize(n);
        std::iota(phys_of.begin(), phys_of.end(), std::size_t{0});
    }
    require(phys_of.size() >= n && phys_of.size() <= big_n, ErrorKind::InvalidArgument,
            "initial layout must cover the circuit and fit the coupling map");
    {
        std::vector<bool> used(big_n, false);
        for (auto p : phys_of) {
            require(p < big_n && !used[p], ErrorKind::InvalidArgument,
                    "initial layout repeats or exceeds physical qubits");
            used[p] = true;
        }
        for (std::size_t p = 0; p < big_n; ++p) {
            if (!used[p]) {
                phys_of.push_back(p);
            }
        }
    }
    RoutedCircuit out{ParamCircuit(big_n, circuit.num_params()), Layout{phys_of, {}}};
    std::vector<std::size_t> log_at(big_n);
    for (std::size_t l = 0; l < big_n; ++l) {
        log_at[phys_of[l]] = l;
    }
    const auto adj = coupling.adjacency();
    std::vector<Gate> gates;
    for (const auto &g : circuit.gates()) {
        if (g.arity() == 1) {
            Gate m = g;
            m.qubits[0] = phys_of[g.qubits[0]];
            gates.push_back(m);
            continue;
        }
        const auto target = phys_of[g.qubits[1]];
        if (!coupling.coupled(phys_of[g.qubits[0]], target)) {
            const auto path = shortest_path(adj, phys_of[g.qubits[0]], target);
            for (std::size_t k = 0; k + 2 < path.size(); ++k) {
                const auto a = path[k];
                const auto b = path[k + 1];
                emit_swap_as_cx(gates, a, b);
                std::swap(log_at[a], log_at[b]);
                phys_of[log_at[a]] = a;
                phys_of[log_at[b]] = b;
            }
        }
        Gate m = g;
        m.qubits = {phys_of[g.qubits[0]], phys_of[g.qubits[1]]};
        gates.push_back(m);
    }
    out.circuit.append(gates);
    out.layout.final = phys_of;
    return out;
}

ParamCircuit optimize_passes(const ParamCircuit &circuit) {
    ParamCircuit cur = circuit;
    while (true) {
        const auto gates = optimize_sweep(cur);
        if (gates == cur.gates()) {
            return cur;
        }
        ParamCircuit next(circuit.num_qubits(), circuit.num_params());
        next.append(gates);
        cur = std::move(next);
    }
}

ParamCircuit widen(const ParamCircuit &circuit, std::size_t num_qubits) {
    require(num_qubits >= circuit.num_qubits(), ErrorKind::WidthMismatch,
            "cannot narrow a circuit");
    ParamCircuit out(num_qubits, circuit.num_params());
    out.append(circuit.gates());
    return out;
}

double equivalence_fidelity(const ParamCircuit &c1, std::span<const double> theta1,
                            const ParamCircuit &c2, std::span<const double> theta2,
                            const Layout &layout) {
    check_layout_widths(c1, c2, layout);
    const std::size_t big_n = c2.num_qubits();
    require(big_n <= kMaxUnitaryQubits, ErrorKind::WidthOutOfRange,
            "trace fidelity limited to " + std::to_string(kMaxUnitaryQubits) + " qubits");
    const ParamCircuit wide = widen(c1, big_n);
    Complex trace{0.0, 0.0};
    const std::size_t dim = std::size_t{1} << big_n;
    for (std::size_t j = 0; j < dim; ++j) {
        const StateVector basis = init_state(big_n, j);
        const StateVector lhs = permute_qubits(run_circuit(wide, theta1, basis), layout.final);
        const StateVector rhs = run_circuit(c2, theta2, permute_qubits(basis, layout.initial));
        trace += inner_product(lhs, rhs);
    }
    return std::abs(trace) / static_cast<double>(dim);
}

double probe_disagreement(const ParamCircuit &c1, std::span<const double> theta1,
                          const ParamCircuit &c2, std::span<const double> theta2,
                          const Layout &layout, std::size_t probes, std::uint64_t seed) {
    check_layout_widths(c1, c2, layout);
    const std::size_t big_n = c2.num_qubits();
    const ParamCircuit wide = widen(c1, big_n);
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t k = 0; k < probes; ++k) {
        const StateVector psi = random_state(big_n, rng);
        const StateVector lhs = permute_qubits(run_circuit(wide, theta1, psi), layout.final);
        const StateVector rhs = run_circuit(c2, theta2, permute_qubits(psi, layout.initial));
        worst = std::max(worst, 1.0 - std::abs(inner_product(lhs, rhs)));
    }
    return worst;
}

RoutedCircuit compact(const RoutedCircuit &routed, std::size_t logical_width) {
    const auto &layout = routed.layout;
    layout.validate();
    const std::size_t big_n = routed.circuit.num_qubits();
    require(layout.initial.size() == big_n && logical_width <= big_n, ErrorKind::WidthMismatch,
            "layout does not match the routed circuit");
    std::vector<bool> active(big_n, false);
    for (const auto &g : routed.circuit.gates()) {
        for (std::size_t k = 0; k < g.arity(); ++k) {
            active[g.qubits[k]] = true;
        }
    }
    for (std::size_t l = 0; l < logical_width; ++l) {
        active[layout.initial[l]] = true;
    }
    std::vector<std::size_t> phys_index(big_n, big_n);
    std::size_t m = 0;
    for (std::size_t p = 0; p < big_n; ++p) {
        if (active[p]) {
            phys_index[p] = m++;
        }
    }
    RoutedCircuit out{ParamCircuit(m, routed.circuit.num_params()), Layout{}};
    for (std::size_t l = 0; l < big_n; ++l) {
        if (active[layout.initial[l]]) {
            require(active[layout.final[l]], ErrorKind::EquivalenceFailure,
                    "an idle logical qubit moved during routing");
            out.layout.initial.push_back(phys_index[layout.initial[l]]);
            out.layout.final.push_back(phys_index[layout.final[l]]);
        }
    }
    std::vector<Gate> gates;
    gates.reserve(routed.circuit.size());
    for (Gate g : routed.circuit.gates()) {
        for (std::size_t k = 0; k < g.arity(); ++k) {
            g.qubits[k] = phys_index[g.qubits[k]];
        }
        gates.push_back(g);
    }
    out.circuit.append(gates);
    return out;
}

EquivalenceCheck certify(const ParamCircuit &logical, const RoutedCircuit &routed,
                         std::span<const double> theta) {
    const RoutedCircuit c = compact(routed, logical.num_qubits());
    EquivalenceCheck check;
    if (c.circuit.num_qubits() <= kMaxUnitaryQubits) {
        check.exact = true;
        check.fidelity = equivalence_fidelity(logical, theta, c.circuit, theta, c.layout);
    } else {
        require(c.circuit.num_qubits() <= kMaxQubits, ErrorKind::WidthOutOfRange,
                "variant touches more than " + std::to_string(kMaxQubits) + " qubits");
        check.fidelity =
            1.0 - probe_disagreement(logical, theta, c.circuit, theta, c.layout);
    }
    return check;
}

std::vector<AttackVariant> recompile_attack(const ParamCircuit &circuit,
                                            std::span<const double> theta,
                                            const CouplingMap &coupling,
                                            std::span<const std::uint64_t> seeds) {
    coupling.validate();
    const ParamCircuit basis = decompose_to_basis(circuit);
    std::vector<AttackVariant> variants;
    variants.reserve(seeds.size());
    for (const auto seed : seeds) {
        require(circuit.num_qubits() <= coupling.num_physical, ErrorKind::WidthMismatch,
                "circuit wider than the coupling map");
        Rng rng(seed);
        RoutedCircuit routed =
            route(basis, coupling, random_region(coupling, circuit.num_qubits(), rng));
        routed.circuit = optimize_passes(routed.circuit);
        AttackVariant v{seed, std::move(routed), {}};
        v.check = certify(circuit, v.routed, theta);
        require(v.check.fidelity >= 1.0 - kEquivalenceTolerance, ErrorKind::EquivalenceFailure,
                "variant for seed " + std::to_string(seed) + " is not equivalent (fidelity " +
                    std::to_string(v.check.fidelity) + ")");
        variants.push_back(std::move(v));
    }
    return variants;
}

double variant_probe_value(const RoutedCircuit &variant, std::size_t logical_width,
                           std::span<const double> theta, const WatermarkBundle &wm) {
    require(wm.obs.width() == logical_width, ErrorKind::WidthMismatch,
            "watermark width differs from the logical width");
    const RoutedCircuit c = compact(variant, logical_width);
    const std::size_t m = c.circuit.num_qubits();
    StateVector input = prepare(wm.prep);
    if (m > logical_width) {
        input = tensor(input, StateVector(m - logical_width));
    }
    const StateVector out =
        run_circuit(c.circuit, theta, permute_qubits(input, c.layout.initial));
    return expectation(out, wm.obs.permuted(c.layout.final, m));
}

Verdict verify_variant(const RoutedCircuit &variant, std::size_t logical_width,
                       std::span<const double> theta, const WatermarkBundle &wm) {
    Verdict v;
    v.wm_gtd = gtd(variant_probe_value(variant, logical_width, theta, wm), wm.l_pre);
    v.confirmed = v.wm_gtd <= wm.tau;
    return v;
}

} // namespace bvqc
