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


// bvqc command-line driver: train, group, verify, attack, ppa, report.
//
// Exit status: 0 success, 1 usage error, 2 data or configuration error,
// 3 internal invariant violation. Diagnostics are one line on stderr.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bvqc/benchmarks.hpp"
#include "bvqc/circuit.hpp"
#include "bvqc/error.hpp"
#include "bvqc/noise.hpp"
#include "bvqc/serialize.hpp"
#include "bvqc/simulator.hpp"
#include "bvqc/train.hpp"
#include "bvqc/transpile.hpp"
#include "bvqc/watermark.hpp"

namespace fs = std::filesystem;
using namespace bvqc;

namespace {

constexpr std::size_t kNoiseShots = 1000;

struct Options {
    std::string benchmark;
    std::uint64_t seed = 0;
    std::size_t epochs = 300;
    double alpha = 1.0;
    double beta = 1.0;
    double lr = 5e-3;
    std::string noise = "none";
    std::string out = ".";
    std::string bundle;
    std::string theta;
    std::size_t seeds = 10;
    std::optional<double> tau;
    double delta = 0.3;
    std::string coupling;
    std::size_t constraints = 10;
    std::size_t finetune_epochs = 0;
    std::size_t trials = 1000;
    std::size_t max_candidates = GroupingConfig{}.max_candidates;
    std::string accept_sign = "benign-positive";
};

struct ThetaFile {
    std::string benchmark;
    std::vector<double> theta;
};

TrainConfig train_config(const Options &o) {
    TrainConfig c;
    c.alpha = o.alpha;
    c.beta = o.beta;
    c.lr = o.lr;
    c.epochs = o.epochs;
    c.seed = o.seed;
    c.validate();
    return c;
}

std::optional<NoiseModel> noise_option(const Options &o) {
    if (o.noise == "none") {
        return std::nullopt;
    }
    return load_noise(o.noise);
}

fs::path out_dir(const Options &o) {
    std::error_code ec;
    fs::create_directories(o.out, ec);
    require(!ec, ErrorKind::MissingArtifact, "cannot create " + o.out + ": " + ec.message());
    return fs::path(o.out);
}

double base_energy(const TaskSpec &task, std::span<const double> theta) {
    return task_loss(task.circuit, theta, task.input, task.obs);
}

Json theta_json(const std::string &id, std::uint64_t seed, std::span<const double> theta,
                const TaskSpec &task) {
    const double e = base_energy(task, theta);
    return {{"benchmark", id},
            {"seed", seed},
            {"theta", std::vector<double>(theta.begin(), theta.end())},
            {"base_loss", e},
            {"optimal", task.optimal},
            {"base_gtd", gtd(e, task.optimal)}};
}

ThetaFile load_theta(const std::string &path) {
    require(!path.empty(), ErrorKind::InvalidArgument, "--theta is required");
    const Json j = read_json_file(path);
    ThetaFile t;
    try {
        t.benchmark = j.at("benchmark").get<std::string>();
        t.theta = j.at("theta").get<std::vector<double>>();
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::Parse, path + ": " + e.what());
    }
    return t;
}

WatermarkBundle load_bundle(const std::string &path) {
    require(!path.empty(), ErrorKind::InvalidArgument, "--bundle is required");
    return bundle_from_json(read_json_file(path));
}

// Benchmark from --benchmark or the theta file; they must agree when both
// are given.
TaskSpec task_for(const Options &o, const ThetaFile &t) {
    const std::string id = o.benchmark.empty() ? t.benchmark : o.benchmark;
    require(id == t.benchmark, ErrorKind::InvalidArgument,
            "theta file belongs to " + t.benchmark + ", not " + id);
    TaskSpec task = load_benchmark(id);
    require(t.theta.size() == task.circuit.num_params(), ErrorKind::ParamCountMismatch,
            "theta has " + std::to_string(t.theta.size()) + " entries, " + id + " needs " +
                std::to_string(task.circuit.num_params()));
    return task;
}

void write_trace(const fs::path &path, const TrainTrace &trace) {
    std::ostringstream csv;
    trace.write_csv(csv);
    write_file_atomic(path.string(), csv.str());
}

int cmd_train(const Options &o) {
    require(!o.benchmark.empty(), ErrorKind::InvalidArgument, "--benchmark is required");
    const TaskSpec task = load_benchmark(o.benchmark);
    const TrainConfig cfg = train_config(o);
    const auto noise = noise_option(o);
    std::optional<WatermarkBundle> wm;
    if (!o.bundle.empty()) {
        wm = load_bundle(o.bundle);
    }
    const auto dir = out_dir(o);
    const TrainResult r = train_loop(task, wm ? &*wm : nullptr, cfg);
    Json j = theta_json(o.benchmark, o.seed, r.theta, task);
    if (wm) {
        j["wm_gtd"] = verify(task.circuit, r.theta, *wm).wm_gtd;
    }
    if (noise) {
        const auto est = noisy_expectation(task.circuit, r.theta,
                                           prepare_input(task.input, task.circuit.num_qubits()),
                                           task.obs, *noise, kNoiseShots, o.seed);
        j["noisy"] = {{"preset", o.noise},
                      {"base_loss", est.mean},
                      {"stderr", est.stderr_},
                      {"base_gtd", gtd(est.mean, task.optimal)}};
    }
    write_json_file((dir / "theta.json").string(), j);
    write_trace(dir / "trace.csv", r.trace);
    std::cout << o.benchmark << ": base_loss " << j["base_loss"].get<double>() << ", base_gtd "
              << j["base_gtd"].get<double>() << '\n';
    return 0;
}

struct GtdRow {
    double base_nw = 0.0;
    double base_bvqc = 0.0;
    double wm_nw = 0.0;
    double wm_bvqc = 0.0;
};

GtdRow gtd_row(const TaskSpec &task, std::span<const double> nw, std::span<const double> bvqc,
               const WatermarkBundle &wm, const std::optional<NoiseModel> &noise,
               std::uint64_t seed) {
    if (!noise) {
        return {gtd(base_energy(task, nw), task.optimal),
                gtd(base_energy(task, bvqc), task.optimal), verify(task.circuit, nw, wm).wm_gtd,
                verify(task.circuit, bvqc, wm).wm_gtd};
    }
    const StateVector base_in = prepare_input(task.input, task.circuit.num_qubits());
    const StateVector probe_in = prepare(wm.prep);
    auto noisy = [&](std::span<const double> th, const StateVector &in, const Observable &obs) {
        return noisy_expectation(task.circuit, th, in, obs, *noise, kNoiseShots, seed).mean;
    };
    return {gtd(noisy(nw, base_in, task.obs), task.optimal),
            gtd(noisy(bvqc, base_in, task.obs), task.optimal),
            gtd(noisy(nw, probe_in, wm.obs), wm.l_pre),
            gtd(noisy(bvqc, probe_in, wm.obs), wm.l_pre)};
}

Json row_json(const std::string &preset, const GtdRow &r) {
    return {{"noise", preset},
            {"base_gtd_nw", r.base_nw},
            {"base_gtd_bvqc", r.base_bvqc},
            {"wm_gtd_nw", r.wm_nw},
            {"wm_gtd_bvqc", r.wm_bvqc}};
}

// Public grouping record: scores and outcomes only. Candidate seeds are
// left out because they determine the watermark.
Json public_report(const std::string &id, const GroupingReport &rep) {
    Json cands = Json::array();
    for (std::size_t i = 0; i < rep.candidates.size(); ++i) {
        const auto &c = rep.candidates[i];
        Json jc = {{"index", i},
                   {"step_scores", c.step_scores},
                   {"aggregate", c.aggregate},
                   {"passed_sign", c.passed_sign},
                   {"accepted", c.accepted}};
        if (c.base_gtd) {
            jc["base_gtd"] = *c.base_gtd;
        }
        if (c.wm_gtd) {
            jc["wm_gtd"] = *c.wm_gtd;
        }
        cands.push_back(std::move(jc));
    }
    Json j = {{"benchmark", id},
              {"reference_base_gtd", rep.reference_base_gtd},
              {"candidates", std::move(cands)}};
    j["accepted_index"] = rep.accepted_index ? Json(*rep.accepted_index) : Json(nullptr);
    return j;
}

int cmd_group(const Options &o) {
    require(!o.benchmark.empty(), ErrorKind::InvalidArgument, "--benchmark is required");
    const TaskSpec task = load_benchmark(o.benchmark);
    const TrainConfig cfg = train_config(o);
    const auto noise = noise_option(o);
    GroupingConfig gcfg;
    gcfg.seed = o.seed;
    gcfg.delta = o.delta;
    gcfg.max_candidates = o.max_candidates;
    gcfg.accept_sign =
        o.accept_sign == "literal" ? AcceptSign::Literal : AcceptSign::BenignPositive;
    if (o.tau) {
        gcfg.tau = *o.tau;
    }
    gcfg.validate();
    std::vector<double> nw;
    if (!o.theta.empty()) {
        ThetaFile t = load_theta(o.theta);
        (void)task_for(o, t);
        nw = std::move(t.theta);
    } else {
        TrainConfig nw_cfg = cfg;
        nw_cfg.beta = 0.0;
        nw = train_loop(task, nullptr, nw_cfg).theta;
    }
    const auto dir = out_dir(o);
    const GroupingResult g = run_grouping(task, nw, gcfg, cfg);

    write_json_file((dir / "bundle.json").string(), to_json(g.bundle));
    write_json_file((dir / "grouping_report.json").string(), public_report(o.benchmark, g.report));
    write_json_file((dir / "theta_nw.json").string(), theta_json(o.benchmark, o.seed, nw, task));
    write_json_file((dir / "theta_bvqc.json").string(),
                    theta_json(o.benchmark, o.seed, g.theta, task));

    Json rows = Json::array();
    rows.push_back(row_json("none", gtd_row(task, nw, g.theta, g.bundle, std::nullopt, o.seed)));
    if (noise) {
        rows.push_back(row_json(o.noise, gtd_row(task, nw, g.theta, g.bundle, noise, o.seed)));
    }
    write_json_file((dir / ("summary_" + o.benchmark + ".json")).string(),
                    {{"benchmark", o.benchmark}, {"rows", std::move(rows)}});
    std::cout << o.benchmark << ": accepted candidate " << *g.report.accepted_index << " of "
              << g.report.candidates.size() << '\n';
    return 0;
}

int cmd_verify(const Options &o) {
    const WatermarkBundle wm = load_bundle(o.bundle);
    const ThetaFile t = load_theta(o.theta);
    const TaskSpec task = task_for(o, t);
    WatermarkBundle checked = wm;
    if (o.tau) {
        checked.tau = *o.tau;
        checked.validate();
    }
    const Verdict v = verify(task.circuit, t.theta, checked);
    const auto dir = out_dir(o);
    write_json_file((dir / "verdict.json").string(),
                    {{"confirmed", v.confirmed}, {"wm_gtd", v.wm_gtd}});
    std::cout << (v.confirmed ? "confirmed" : "rejected") << " (wm_gtd " << v.wm_gtd << ")\n";
    return 0;
}

CouplingMap coupling_for(const Options &o, std::size_t width) {
    if (!o.coupling.empty()) {
        return load_coupling(o.coupling);
    }
    const std::string name = "line-" + std::to_string(width);
    if (fs::exists(fs::path(data_dir()) / "coupling" / (name + ".json"))) {
        return load_coupling(name);
    }
    return CouplingMap::line(width);
}

Json layout_json(const Layout &l) { return {{"initial", l.initial}, {"final", l.final}}; }

int cmd_attack(const Options &o) {
    require(o.seeds >= 1, ErrorKind::InvalidArgument, "--seeds must be >= 1");
    const WatermarkBundle wm = load_bundle(o.bundle);
    const ThetaFile t = load_theta(o.theta);
    const TaskSpec task = task_for(o, t);
    const std::size_t width = task.circuit.num_qubits();
    const CouplingMap coupling = coupling_for(o, width);
    std::vector<std::uint64_t> seeds(o.seeds);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        seeds[i] = o.seed + i;
    }
    const Verdict before = verify(task.circuit, t.theta, wm);
    const auto variants = recompile_attack(task.circuit, t.theta, coupling, seeds);

    const auto dir = out_dir(o);
    const fs::path vdir = dir / "variants";
    std::error_code ec;
    fs::create_directories(vdir, ec);
    require(!ec, ErrorKind::MissingArtifact, "cannot create " + vdir.string());
    Json rows = Json::array();
    std::size_t confirmed = 0;
    for (const auto &v : variants) {
        const Verdict after = verify_variant(v.routed, width, t.theta, wm);
        confirmed += after.confirmed ? 1 : 0;
        const auto counts = gate_counts(v.routed.circuit);
        const std::string file = "variant_" + std::to_string(v.seed) + ".json";
        write_json_file((vdir / file).string(), {{"seed", v.seed},
                                                 {"circuit", to_json(v.routed.circuit)},
                                                 {"layout", layout_json(v.routed.layout)}});
        rows.push_back({{"seed", v.seed},
                        {"file", "variants/" + file},
                        {"one_qubit_gates", counts.one_qubit},
                        {"two_qubit_gates", counts.two_qubit},
                        {"exact_check", v.check.exact},
                        {"fidelity", v.check.fidelity},
                        {"confirmed", after.confirmed},
                        {"wm_gtd", after.wm_gtd},
                        {"wm_gtd_change", std::abs(after.wm_gtd - before.wm_gtd)}});
    }
    Json j = {{"benchmark", t.benchmark},
              {"coupling_qubits", coupling.num_physical},
              {"original_wm_gtd", before.wm_gtd},
              {"confirmed", confirmed},
              {"variants", std::move(rows)}};
    if (o.finetune_epochs > 0) {
        const FinetuneResult ft = finetune_attack(t.theta, task, wm, o.finetune_epochs,
                                                  train_config(o));
        write_trace(dir / "finetune_trace.csv", ft.trace);
        j["finetune"] = {{"epochs", o.finetune_epochs},
                         {"base_gtd", ft.base_gtd},
                         {"wm_gtd", ft.wm_gtd},
                         {"confirmed", ft.wm_gtd <= wm.tau}};
    }
    write_json_file((dir / "attack.json").string(), j);
    std::cout << confirmed << '/' << variants.size() << " variants confirmed\n";
    return 0;
}

int cmd_ppa(const Options &o) {
    const WatermarkBundle wm = load_bundle(o.bundle);
    const ThetaFile t = load_theta(o.theta);
    const TaskSpec task = task_for(o, t);
    const ProbabilityEstimate est = estimate_p(task, wm, o.trials, o.seed, o.tau);
    Json curve = Json::array();
    for (std::size_t b = 0; b <= o.constraints; ++b) {
        curve.push_back({{"b", b}, {"ppa", ppa(est.p_hat, b, o.constraints)}});
    }
    const auto dir = out_dir(o);
    write_json_file((dir / "ppa.json").string(),
                    {{"p_hat", est.p_hat},
                     {"interval", {est.lower, est.upper}},
                     {"hits", est.hits},
                     {"trials", est.trials},
                     {"constraints", o.constraints},
                     {"ppa_curve", std::move(curve)}});
    std::cout << "p_hat " << est.p_hat << " [" << est.lower << ", " << est.upper << "]\n";
    return 0;
}

// summary_<id>.json in the directory itself or one level below.
std::optional<fs::path> find_summary(const fs::path &dir, const std::string &id) {
    const std::string name = "summary_" + id + ".json";
    std::vector<fs::path> hits;
    if (fs::exists(dir / name)) {
        hits.push_back(dir / name);
    }
    if (fs::is_directory(dir)) {
        for (const auto &e : fs::directory_iterator(dir)) {
            if (e.is_directory() && fs::exists(e.path() / name)) {
                hits.push_back(e.path() / name);
            }
        }
    }
    require(hits.size() <= 1, ErrorKind::InvalidArgument, "more than one " + name);
    if (hits.empty()) {
        return std::nullopt;
    }
    return hits.front();
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

int cmd_report(const Options &o) {
    const fs::path dir(o.out);
    std::vector<Json> summaries;
    std::vector<std::string> missing;
    for (const auto id : kBenchmarkIds) {
        const std::string sid(id);
        if (const auto path = find_summary(dir, sid)) {
            summaries.push_back(read_json_file(path->string()));
        } else {
            missing.push_back("summary_" + sid + ".json");
        }
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto &m : missing) {
            list += (list.empty() ? "" : ", ") + m;
        }
        fail(ErrorKind::MissingArtifact, "missing artifacts in " + o.out + ": " + list);
    }
    const std::vector<std::string> cols = {"base_gtd_nw", "base_gtd_bvqc", "wm_gtd_nw",
                                           "wm_gtd_bvqc"};
    std::string csv = "benchmark,noise,base_gtd_nw,base_gtd_bvqc,wm_gtd_nw,wm_gtd_bvqc\n";
    std::string md = "# BVQC summary\n\n"
                     "| benchmark | noise | base GTD (NW) | base GTD (BVQC) | wm GTD (NW) | "
                     "wm GTD (BVQC) |\n|---|---|---|---|---|---|\n";
    for (const auto &s : summaries) {
        try {
            const auto id = s.at("benchmark").get<std::string>();
            for (const auto &row : s.at("rows")) {
                const auto noise = row.at("noise").get<std::string>();
                csv += id + ',' + noise;
                md += "| " + id + " | " + noise;
                for (const auto &c : cols) {
                    const double v = row.at(c).get<double>();
                    std::ostringstream full;
                    full.precision(17);
                    full << v;
                    csv += ',' + full.str();
                    md += " | " + fmt(v);
                }
                csv += '\n';
                md += " |\n";
            }
        } catch (const nlohmann::json::exception &e) {
            fail(ErrorKind::Parse, std::string("summary: ") + e.what());
        }
    }
    write_file_atomic((dir / "report.csv").string(), csv);
    write_file_atomic((dir / "report.md").string(), md);
    std::cout << "wrote " << (dir / "report.md").string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Watermarking variational quantum circuits: train, group, verify, attack, ppa, "
                 "report"};
    app.name("bvqc");
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--out", o.out, "Output directory");
    };
    auto add_train = [&](CLI::App *sub) {
        sub->add_option("--benchmark", o.benchmark, "Benchmark id")
            ->check(CLI::IsMember(std::vector<std::string>(kBenchmarkIds.begin(),
                                                           kBenchmarkIds.end())));
        sub->add_option("--seed", o.seed, "Seed");
        sub->add_option("--epochs", o.epochs, "Training epochs");
        sub->add_option("--alpha", o.alpha, "Base loss weight");
        sub->add_option("--beta", o.beta, "Watermark loss weight");
        sub->add_option("--lr", o.lr, "Learning rate");
        sub->add_option("--noise", o.noise, "Noise preset, JSON file or none");
    };

    auto *train = app.add_subcommand("train", "Train a benchmark, optionally with a bundle");
    add_train(train);
    add_common(train);
    train->add_option("--bundle", o.bundle, "Watermark bundle to embed");

    auto *group = app.add_subcommand("group", "Select and embed a watermark");
    add_train(group);
    add_common(group);
    group->add_option("--theta", o.theta, "Watermark-free parameters (trained if absent)");
    group->add_option("--tau", o.tau, "Verification tolerance");
    group->add_option("--delta", o.delta, "Offset of the watermark target");
    group->add_option("--max-candidates", o.max_candidates, "Candidate budget");
    group->add_option("--accept-sign", o.accept_sign, "Sign test for the aggregate score")
        ->check(CLI::IsMember({"benign-positive", "literal"}));

    auto *ver = app.add_subcommand("verify", "Check a model against a bundle");
    ver->add_option("--bundle", o.bundle, "Watermark bundle")->required();
    ver->add_option("--theta", o.theta, "Parameters")->required();
    ver->add_option("--benchmark", o.benchmark, "Benchmark id (default: from theta)");
    ver->add_option("--tau", o.tau, "Override the bundle tolerance");
    add_common(ver);

    auto *attack = app.add_subcommand("attack", "Re-compile the model and re-verify");
    attack->add_option("--bundle", o.bundle, "Watermark bundle")->required();
    attack->add_option("--theta", o.theta, "Parameters")->required();
    attack->add_option("--benchmark", o.benchmark, "Benchmark id (default: from theta)");
    attack->add_option("--seeds", o.seeds, "Number of variants");
    attack->add_option("--seed", o.seed, "First variant seed");
    attack->add_option("--coupling", o.coupling, "Coupling map name or file (default line-n)");
    attack->add_option("--epochs", o.finetune_epochs, "Fine-tuning budget (0 skips fine-tuning)");
    attack->add_option("--lr", o.lr, "Fine-tuning learning rate");
    add_common(attack);

    auto *ppa_cmd = app.add_subcommand("ppa", "Estimate p and the PPA curve");
    ppa_cmd->add_option("--bundle", o.bundle, "Watermark bundle")->required();
    ppa_cmd->add_option("--theta", o.theta, "Parameters (names the benchmark)")->required();
    ppa_cmd->add_option("--benchmark", o.benchmark, "Benchmark id (default: from theta)");
    ppa_cmd->add_option("--seeds", o.trials, "Random parameter draws");
    ppa_cmd->add_option("--seed", o.seed, "Seed");
    ppa_cmd->add_option("--tau", o.tau, "Override the bundle tolerance");
    ppa_cmd->add_option("--constraints", o.constraints, "Constraint count c of the curve");
    add_common(ppa_cmd);

    auto *report = app.add_subcommand("report", "Summarize group runs as markdown and CSV");
    add_common(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "bvqc: usage error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (*train) {
            return cmd_train(o);
        }
        if (*group) {
            return cmd_group(o);
        }
        if (*ver) {
            return cmd_verify(o);
        }
        if (*attack) {
            return cmd_attack(o);
        }
        if (*ppa_cmd) {
            return cmd_ppa(o);
        }
        return cmd_report(o);
    } catch (const Error &e) {
        std::cerr << "bvqc: error: " << e.what() << '\n';
        return e.is_internal() ? 3 : 2;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "bvqc: error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "bvqc: internal error: " << e.what() << '\n';
        return 3;
    }
}
