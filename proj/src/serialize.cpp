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

#include "bvqc/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bvqc/error.hpp"

namespace bvqc {

namespace {

template <class T> T field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        fail(ErrorKind::Parse, std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::Parse, std::string("bad field '") + key + "': " + e.what());
    }
}

} // namespace

Json to_json(const ParamCircuit &circuit) {
    Json gates = Json::array();
    for (const auto &g : circuit.gates()) {
        Json jg;
        jg["kind"] = std::string(to_string(g.kind));
        jg["qubits"] = g.arity() == 2 ? Json::array({g.qubits[0], g.qubits[1]})
                                      : Json::array({g.qubits[0]});
        if (const auto *fp = std::get_if<FreeParam>(&g.param)) {
            jg["param"] = {{"free", fp->index}};
            if (fp->scale != 1.0) {
                jg["param"]["scale"] = fp->scale;
            }
        } else if (const auto *bp = std::get_if<BoundParam>(&g.param)) {
            jg["param"] = {{"bound", bp->angle}};
        } else {
            jg["param"] = nullptr;
        }
        gates.push_back(std::move(jg));
    }
    return {{"num_qubits", circuit.num_qubits()},
            {"num_params", circuit.num_params()},
            {"gates", std::move(gates)}};
}

ParamCircuit circuit_from_json(const Json &j) {
    ParamCircuit c(field<std::size_t>(j, "num_qubits"), field<std::size_t>(j, "num_params"));
    const auto gates = field<Json>(j, "gates");
    require(gates.is_array(), ErrorKind::Parse, "'gates' must be an array");
    for (const auto &jg : gates) {
        const auto name = field<std::string>(jg, "kind");
        const auto kind = gate_kind_from_string(name);
        require(kind.has_value(), ErrorKind::Parse, "unknown gate kind '" + name + "'");
        const auto qubits = field<std::vector<std::size_t>>(jg, "qubits");
        require(qubits.size() == arity(*kind), ErrorKind::Parse,
                name + " expects " + std::to_string(arity(*kind)) + " qubits");
        Gate g{*kind, {qubits[0], qubits.size() > 1 ? qubits[1] : 0}, std::monostate{}};
        const Json param = jg.contains("param") ? jg.at("param") : Json(nullptr);
        if (param.is_object() && param.contains("free")) {
            g.param = FreeParam{field<std::size_t>(param, "free"),
                                param.contains("scale") ? field<double>(param, "scale") : 1.0};
        } else if (param.is_object() && param.contains("bound")) {
            g.param = BoundParam{field<double>(param, "bound")};
        } else {
            require(param.is_null(), ErrorKind::Parse, "malformed gate param");
        }
        c.add(g);
    }
    return c;
}

Json to_json(const Observable &obs) {
    Json terms = Json::array();
    for (const auto &t : obs.terms()) {
        terms.push_back(Json::array({t.coeff, t.pauli.letters()}));
    }
    return terms;
}

Observable observable_from_json(const Json &j) {
    require(j.is_array(), ErrorKind::Parse, "observable must be an array of [coeff, word]");
    Observable obs;
    for (const auto &t : j) {
        require(t.is_array() && t.size() == 2 && t[0].is_number() && t[1].is_string(),
                ErrorKind::Parse, "observable term must be [coeff, word]");
        obs.add_term(t[0].get<double>(), PauliString(t[1].get<std::string>()));
    }
    return obs;
}

Json to_json(const MaxCutGraph &graph) {
    Json edges = Json::array();
    for (const auto &e : graph.edges) {
        edges.push_back(Json::array({e.i, e.j, e.weight}));
    }
    return {{"num_nodes", graph.num_nodes}, {"edges", std::move(edges)}};
}

MaxCutGraph graph_from_json(const Json &j) {
    MaxCutGraph g;
    g.num_nodes = field<std::size_t>(j, "num_nodes");
    for (const auto &e : field<Json>(j, "edges")) {
        require(e.is_array() && (e.size() == 2 || e.size() == 3), ErrorKind::Parse,
                "edge must be [i, j] or [i, j, w]");
        g.edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                           e.size() == 3 ? e[2].get<double>() : 1.0});
    }
    g.validate();
    return g;
}

Json to_json(const WatermarkBundle &wm) {
    return {{"prep", {{"seed", wm.prep.seed}, {"circuit", to_json(wm.prep.circuit)}}},
            {"obs", to_json(wm.obs)},
            {"l_pre", wm.l_pre},
            {"tau", wm.tau},
            {"seed", wm.seed}};
}

WatermarkBundle bundle_from_json(const Json &j) {
    WatermarkBundle wm;
    const auto prep = field<Json>(j, "prep");
    wm.prep.seed = field<std::uint64_t>(prep, "seed");
    wm.prep.circuit = circuit_from_json(field<Json>(prep, "circuit"));
    wm.obs = observable_from_json(field<Json>(j, "obs"));
    wm.l_pre = field<double>(j, "l_pre");
    wm.tau = field<double>(j, "tau");
    wm.seed = field<std::uint64_t>(j, "seed");
    wm.validate();
    return wm;
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::MissingArtifact, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::Parse, path + ": " + e.what());
    }
}

void write_file_atomic(const std::string &path, const std::string &contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), ErrorKind::MissingArtifact, "cannot write " + tmp);
        out << contents;
        require(out.good(), ErrorKind::MissingArtifact, "write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    require(!ec, ErrorKind::MissingArtifact, "cannot rename " + tmp + ": " + ec.message());
}

void write_json_file(const std::string &path, const Json &j) {
    write_file_atomic(path, j.dump(2) + "\n");
}

} // namespace bvqc
