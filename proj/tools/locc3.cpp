// Copyright 2026 The locc3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// locc3: plan, run and verify deterministic LOCC protocols on three qubits.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "locc3/cli.hpp"

namespace {

int emit(const locc3::CommandResult& r) {
    std::cout << r.report.dump(2) << '\n';
    return r.exit_code;
}

// Reads a JSON file; on failure prints an error report and sets `code`.
bool load(const std::string& path, locc3::Json& out, const std::string& command, const locc3::CliConfig& cfg, int& code) {
    try {
        out = locc3::read_json_file(path);
        return true;
    } catch (const locc3::Error& e) {
        const locc3::Json report{{"command", command},
                                 {"inputs", {{"path", path}}},
                                 {"config", locc3::to_json(cfg)},
                                 {"status", "error"},
                                 {"error", {{"code", locc3::to_string(e.code())}, {"message", e.what()}}}};
        std::cout << report.dump(2) << '\n';
        code = locc3::kExitInvalid;
        return false;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic LOCC transformations of three-qubit GHZ- and W-type states"};
    app.require_subcommand(1);
    app.fallthrough();

    locc3::CliConfig cfg;
    app.add_option("--tol-complete", cfg.tol.complete, "completeness tolerance for measurement pairs")->capture_default_str();
    app.add_option("--tol-lue", cfg.tol.lue, "invariant agreement tolerance for LU equivalence")->capture_default_str();
    app.add_option("--tol-prob", cfg.tol.probability, "tolerance on total probability")->capture_default_str();

    std::string state_path, source_path, target_path, plan_path, out_path;

    auto* invariants = app.add_subcommand("invariants", "entanglement invariants of a state");
    invariants->add_option("state", state_path, "state document")->required();

    auto* classify = app.add_subcommand("classify", "GHZ / W / biseparable classification");
    classify->add_option("state", state_path, "state document")->required();

    auto* plan = app.add_subcommand("plan", "build a deterministic protocol");
    plan->add_option("source", source_path, "source state document")->required();
    plan->add_option("target", target_path, "target state document")->required();
    plan->add_option("--route", cfg.route, "A, B, C, AB, AC, BC, W-chain or auto")->capture_default_str();
    plan->add_option("--out", out_path, "write the plan file here");

    auto* run = app.add_subcommand("run", "execute a plan file");
    run->add_option("plan", plan_path, "plan file")->required();
    run->add_option("--mode", cfg.mode, "exhaustive or sample")->capture_default_str();
    run->add_option("--trials", cfg.trials, "number of sampled trials")->capture_default_str();
    run->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "plan, execute and certify in one go");
    verify->add_option("source", source_path, "source state document")->required();
    verify->add_option("target", target_path, "target state document")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : locc3::kExitInvalid;
    }

    int code = locc3::kExitOk;
    if (*invariants || *classify) {
        const std::string name = *invariants ? "invariants" : "classify";
        locc3::Json doc;
        if (!load(state_path, doc, name, cfg, code)) return code;
        return emit(*invariants ? locc3::cmd_invariants(doc, cfg) : locc3::cmd_classify(doc, cfg));
    }
    if (*plan || *verify) {
        const std::string name = *plan ? "plan" : "verify";
        locc3::Json source, target;
        if (!load(source_path, source, name, cfg, code) || !load(target_path, target, name, cfg, code)) return code;
        const locc3::CommandResult r = *plan ? locc3::cmd_plan(source, target, cfg) : locc3::cmd_verify(source, target, cfg);
        if (*plan && r.plan && !out_path.empty()) {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "cannot write " << out_path << '\n';
                return locc3::kExitInvalid;
            }
            out << locc3::to_json(*r.plan).dump(2) << '\n';
        }
        return emit(r);
    }
    locc3::Json doc;
    if (!load(plan_path, doc, "run", cfg, code)) return code;
    return emit(locc3::cmd_run(doc, cfg));
}
