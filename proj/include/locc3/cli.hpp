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

/**
 * @file
 * The command layer behind the locc3 tool. Every command returns a report
 * document and a process exit code:
 *   0 ok, 1 infeasible, 2 invalid input, 3 verification failure.
 */

#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include "locc3/entangle.hpp"
#include "locc3/ghz_protocols.hpp"
#include "locc3/runner.hpp"
#include "locc3/serialize.hpp"
#include "locc3/w_protocols.hpp"

namespace locc3 {

enum ExitCode : int { kExitOk = 0, kExitInfeasible = 1, kExitInvalid = 2, kExitVerification = 3 };

struct CliConfig {
    Tolerances tol;
    std::string route = "auto";
    std::string mode = "exhaustive";
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
};

struct CommandResult {
    Json report;
    int exit_code = kExitOk;
    std::optional<ProtocolPlan> plan;  // set by plan and verify on success
};

inline Json to_json(const CliConfig& c) {
    return {{"tolerances", to_json(c.tol)}, {"route", c.route}, {"mode", c.mode}, {"trials", c.trials}, {"seed", c.seed}};
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, path + ": malformed JSON: " + e.what());
    }
}

// ---- planning ---------------------------------------------------------------

struct PlanOutcome {
    FeasibilityVerdict verdict;
    std::optional<ProtocolPlan> plan;
    std::string route;
};

inline bool is_known_route(const std::string& r) {
    for (const char* k : {"A", "B", "C", "AB", "AC", "BC", "W-chain", "auto"})
        if (r == k) return true;
    return false;
}

namespace cli_detail {

inline ProtocolPlan identity_plan(const StateVector& s) {
    ProtocolPlan plan;
    plan.initial = s;
    plan.target = s;
    plan.family = "identity";
    return plan;
}

inline bool is_standard_ghz(const StateVector& s, const Tolerances& tol) {
    return fidelity_up_to_phase(s, standard_ghz()) >= 1.0 - tol.fidelity;
}

// Route whose family contains the (real) canonical target.
inline std::string ghz_auto_route(const CanonicalCoefficients& t, const Tolerances& tol) {
    const auto zero = [&](int i) { return t.lambda[i] <= tol.family; };
    if (zero(2) && zero(3)) return "A";
    if (zero(1) && zero(3)) return "B";
    if (zero(1) && zero(2)) return "C";
    if (zero(3)) return "AB";
    if (zero(2)) return "AC";
    return "BC";
}

inline WCoefficients w_coefficients_of(const StateDocument& doc, const Tolerances& tol) {
    if (doc.w) return *doc.w;
    if (doc.canonical) {
        const auto& l = doc.canonical->lambda;
        const double phi = doc.canonical->phi;
        const bool real = std::min(phi, 2.0 * std::numbers::pi - phi) <= tol.family || l[1] <= tol.family;
        if (l[4] <= tol.family && real) return validated(WCoefficients{{l[1], l[0], l[3], l[2]}}, tol);
        throw Error(ErrorCode::InvalidInput, "canonical W document needs lambda4 = 0 and a real |100> coefficient");
    }
    throw Error(ErrorCode::InvalidInput, "W routes take \"w\" or \"canonical\" documents");
}

} // namespace cli_detail

/// Picks a protocol family for source -> target and builds the plan, or
/// reports why no deterministic protocol exists.
inline PlanOutcome plan_between(const StateDocument& source, const StateDocument& target, const std::string& route,
                                const Tolerances& tol = {}) {
    if (!is_known_route(route))
        throw Error(ErrorCode::InvalidInput, "unknown route \"" + route + "\"; use A, B, C, AB, AC, BC, W-chain or auto");
    PlanOutcome out;
    if (fidelity_up_to_phase(source.state, target.state) >= 1.0 - tol.fidelity) {
        out.verdict = FeasibilityVerdict::ok("target equals source");
        out.plan = cli_detail::identity_plan(source.state);
        out.route = "identity";
        return out;
    }

    const ClassLabel source_class = classify(source.state, tol);
    const bool ghz_route = route != "auto" && route != "W-chain";
    if (ghz_route || (route == "auto" && source_class == ClassLabel::GhzClass)) {
        if (!cli_detail::is_standard_ghz(source.state, tol))
            throw Error(source_class == ClassLabel::GhzClass ? ErrorCode::InvalidInput : ErrorCode::WrongClass,
                        "GHZ protocols start from the standard GHZ state");
        if (!target.canonical) throw Error(ErrorCode::InvalidInput, "GHZ targets must be canonical documents");
        out.route = route;
        out.verdict = ghz_feasible(oracle_invariants(source.state, tol), invariants_from_canonical(*target.canonical, tol), tol);
        if (!out.verdict.feasible) return out;
        const CanonicalCoefficients t = detail::real_ghz_target(*target.canonical, tol);
        out.route = route == "auto" ? cli_detail::ghz_auto_route(t, tol) : route;
        if (out.route.size() == 1) {
            out.plan = single_party_plan({t, pattern_for(party_from_char(out.route[0]))}, tol);
        } else {
            out.plan = two_party_plan(party_from_char(out.route[0]), party_from_char(out.route[1]), t, tol);
        }
        return out;
    }

    if (source_class != ClassLabel::WClass)
        throw Error(source_class == ClassLabel::GhzClass ? ErrorCode::WrongClass : ErrorCode::UnsupportedClassification,
                    std::string("W chain needs a W-class source, got ") + to_string(source_class));
    const ClassLabel target_class = classify(target.state, tol);
    if (target_class != ClassLabel::WClass)
        throw Error(ErrorCode::WrongClass, std::string("W chain needs a W-class target, got ") + to_string(target_class));
    const WCoefficients a = cli_detail::w_coefficients_of(source, tol);
    const WCoefficients b = cli_detail::w_coefficients_of(target, tol);
    out.route = "W-chain";
    out.verdict = w_feasible(a, b, tol);
    if (out.verdict.feasible) out.plan = w_chain_plan(a, b, tol);
    return out;
}

/// Outcome probabilities of each step along the all-outcome-1 path.
inline Json step_probabilities(const ProtocolPlan& plan) {
    Json out = Json::array();
    StateVector s = plan.initial;
    for (const ProtocolStep& step : plan.steps) {
        const double p1 = branch_probability(step.pair.first, s);
        const double p2 = branch_probability(step.pair.second, s);
        out.push_back({p1, p2});
        if (p1 <= 0.0) break;
        s = (1.0 / std::sqrt(p1)) * apply_local(step.pair.first, s);
    }
    return out;
}

// ---- commands ---------------------------------------------------------------

namespace cli_detail {

inline Json error_json(const std::string& code, const std::string& message) {
    return {{"code", code}, {"message", message}};
}

// Runs `body` and converts any failure into an error report.
inline CommandResult guarded(const std::string& command, const CliConfig& cfg, const Json& inputs,
                             const std::function<CommandResult()>& body) {
    CommandResult r;
    try {
        r = body();
    } catch (const Error& e) {
        r.exit_code = e.is_infeasibility() ? kExitInfeasible : kExitInvalid;
        r.report = {{"status", e.is_infeasibility() ? "infeasible" : "error"}, {"error", error_json(to_string(e.code()), e.what())}};
        r.plan.reset();
    } catch (const std::exception& e) {
        r.exit_code = kExitInvalid;
        r.report = {{"status", "error"}, {"error", error_json("invalid-input", e.what())}};
        r.plan.reset();
    }
    Json full{{"command", command}, {"inputs", inputs}, {"config", to_json(cfg)}};
    for (auto& [key, value] : r.report.items()) full[key] = value;
    r.report = std::move(full);
    return r;
}

inline Json plan_payload(const PlanOutcome& p) {
    Json j{{"route", p.route}, {"verdict", to_json(p.verdict)}};
    if (p.plan) {
        j["step_probabilities"] = step_probabilities(*p.plan);
        j["plan"] = to_json(*p.plan);
    }
    return j;
}

} // namespace cli_detail

inline CommandResult cmd_invariants(const Json& state_doc, const CliConfig& cfg = {}) {
    return cli_detail::guarded("invariants", cfg, {{"state", state_doc}}, [&] {
        const StateDocument doc = state_document_from_json(state_doc, cfg.tol);
        Json result;
        std::optional<InvariantSet> canonical;
        if (doc.canonical) canonical = invariants_from_canonical(*doc.canonical, cfg.tol);
        if (doc.w) {
            const auto& x = doc.w->x;
            canonical = invariants_from_canonical({{x[1], x[0], x[3], x[2], 0.0}, 0.0}, cfg.tol);
        }
        const InvariantSet oracle = oracle_invariants(doc.state, cfg.tol);
        if (canonical) result["canonical"] = to_json(*canonical);
        result["oracle"] = to_json(oracle);
        if (canonical) result["max_difference"] = fingerprint_distance(*canonical, oracle);
        result["classification"] = to_string(classify(doc.state, cfg.tol));
        return CommandResult{{{"status", "ok"}, {"result", result}}, kExitOk, {}};
    });
}

inline CommandResult cmd_classify(const Json& state_doc, const CliConfig& cfg = {}) {
    return cli_detail::guarded("classify", cfg, {{"state", state_doc}}, [&] {
        const StateDocument doc = state_document_from_json(state_doc, cfg.tol);
        const Json result{{"classification", to_string(classify(doc.state, cfg.tol))}, {"three_tangle", ckw_tangle(doc.state, cfg.tol)}};
        return CommandResult{{{"status", "ok"}, {"result", result}}, kExitOk, {}};
    });
}

inline CommandResult cmd_plan(const Json& source_doc, const Json& target_doc, const CliConfig& cfg = {}) {
    return cli_detail::guarded("plan", cfg, {{"source", source_doc}, {"target", target_doc}}, [&] {
        const StateDocument source = state_document_from_json(source_doc, cfg.tol);
        const StateDocument target = state_document_from_json(target_doc, cfg.tol);
        const PlanOutcome p = plan_between(source, target, cfg.route, cfg.tol);
        CommandResult r;
        r.exit_code = p.verdict.feasible ? kExitOk : kExitInfeasible;
        r.report = {{"status", p.verdict.feasible ? "ok" : "infeasible"}, {"result", cli_detail::plan_payload(p)}};
        r.plan = p.plan;
        return r;
    });
}

inline CommandResult cmd_run(const Json& plan_doc, const CliConfig& cfg = {}) {
    return cli_detail::guarded("run", cfg, {{"plan", plan_doc}}, [&] {
        const ProtocolPlan plan = plan_from_json(plan_doc);
        validate_plan(plan, cfg.tol);
        CommandResult r;
        if (cfg.mode == "exhaustive") {
            const ExecutionReport rep = execute_exhaustive(plan, cfg.tol);
            const FeasibilityVerdict v = verify_deterministic(rep, cfg.tol);
            r.exit_code = v.feasible ? kExitOk : kExitVerification;
            r.report = {{"status", v.feasible ? "ok" : "error"},
                        {"result", {{"mode", cfg.mode}, {"verdict", to_json(v)}, {"execution", to_json(rep)}}}};
            if (!v.feasible) r.report["error"] = cli_detail::error_json("verification-failure", v.reason);
        } else if (cfg.mode == "sample") {
            const SampledReport rep = execute_sampled(plan, cfg.trials, cfg.seed, cfg.tol);
            r.report = {{"status", "ok"}, {"result", {{"mode", cfg.mode}, {"sampling", to_json(rep)}}}};
        } else {
            throw Error(ErrorCode::InvalidInput, "unknown mode \"" + cfg.mode + "\"; use exhaustive or sample");
        }
        return r;
    });
}

/// plan (auto route) + exhaustive execution + determinism check.
inline CommandResult cmd_verify(const Json& source_doc, const Json& target_doc, const CliConfig& cfg = {}) {
    CliConfig auto_cfg = cfg;
    auto_cfg.route = "auto";
    return cli_detail::guarded("verify", auto_cfg, {{"source", source_doc}, {"target", target_doc}}, [&] {
        const StateDocument source = state_document_from_json(source_doc, cfg.tol);
        const StateDocument target = state_document_from_json(target_doc, cfg.tol);
        const PlanOutcome p = plan_between(source, target, "auto", cfg.tol);
        CommandResult r;
        Json result = cli_detail::plan_payload(p);
        if (!p.plan) {
            r.exit_code = kExitInfeasible;
            r.report = {{"status", "infeasible"}, {"result", result}};
            return r;
        }
        validate_plan(*p.plan, cfg.tol);
        const ExecutionReport rep = execute_exhaustive(*p.plan, cfg.tol);
        const FeasibilityVerdict v = verify_deterministic(rep, cfg.tol);
        result["execution"] = to_json(rep);
        result["determinism"] = to_json(v);
        r.exit_code = v.feasible ? kExitOk : kExitVerification;
        r.report = {{"status", v.feasible ? "ok" : "error"}, {"result", result}};
        if (!v.feasible) r.report["error"] = cli_detail::error_json("verification-failure", v.reason);
        r.plan = p.plan;
        return r;
    });
}

} // namespace locc3
