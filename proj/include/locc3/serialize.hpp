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
 * Strict JSON encoding of states, plans and reports. Unknown keys, missing
 * keys, wrong types and wrong array lengths are all rejected with
 * ErrorCode::InvalidInput.
 */

#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "locc3/canonical.hpp"
#include "locc3/entangle.hpp"
#include "locc3/measurement.hpp"
#include "locc3/plan.hpp"
#include "locc3/qcore.hpp"
#include "locc3/runner.hpp"
#include "locc3/tolerances.hpp"
#include "locc3/w_protocols.hpp"

namespace locc3 {

using Json = nlohmann::ordered_json;

namespace json_detail {

[[noreturn]] inline void fail(std::string_view where, std::string_view what) {
    throw Error(ErrorCode::InvalidInput, std::string(where) + ": " + std::string(what));
}

inline void expect_keys(const Json& j, std::string_view where, std::initializer_list<std::string_view> required,
                        std::initializer_list<std::string_view> optional = {}) {
    if (!j.is_object()) fail(where, "expected an object");
    for (const auto& [key, value] : j.items()) {
        const auto known = [&](std::initializer_list<std::string_view> keys) {
            return std::find(keys.begin(), keys.end(), key) != keys.end();
        };
        if (!known(required) && !known(optional)) fail(where, "unknown field \"" + key + "\"");
    }
    for (std::string_view key : required)
        if (!j.contains(std::string(key))) fail(where, "missing field \"" + std::string(key) + "\"");
}

inline double number(const Json& j, std::string_view where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

inline std::vector<double> numbers(const Json& j, std::size_t n, std::string_view where) {
    if (!j.is_array() || j.size() != n) fail(where, "expected an array of " + std::to_string(n) + " numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(number(j[i], where));
    return out;
}

inline std::string text(const Json& j, std::string_view where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

} // namespace json_detail

// ---- linear algebra -------------------------------------------------------

inline Json to_json(const StateVector& s) {
    Json re = Json::array(), im = Json::array();
    for (unsigned i = 0; i < 8; ++i) {
        re.push_back(s[i].real());
        im.push_back(s[i].imag());
    }
    return {{"re", re}, {"im", im}};
}

inline StateVector state_from_json(const Json& j, std::string_view where) {
    json_detail::expect_keys(j, where, {"re", "im"});
    const auto re = json_detail::numbers(j["re"], 8, where);
    const auto im = json_detail::numbers(j["im"], 8, where);
    StateVector::Amplitudes amp;
    for (int i = 0; i < 8; ++i) amp(i) = Complex(re[i], im[i]);
    return StateVector(amp);
}

inline Json to_json(const Mat2& m) {
    return {{"re", {{m(0, 0).real(), m(0, 1).real()}, {m(1, 0).real(), m(1, 1).real()}}},
            {"im", {{m(0, 0).imag(), m(0, 1).imag()}, {m(1, 0).imag(), m(1, 1).imag()}}}};
}

inline Mat2 mat2_from_json(const Json& j, std::string_view where) {
    json_detail::expect_keys(j, where, {"re", "im"});
    std::array<std::vector<double>, 2> re, im;
    for (int r = 0; r < 2; ++r) {
        for (const char* part : {"re", "im"}) {
            const Json& rows = j[part];
            if (!rows.is_array() || rows.size() != 2) json_detail::fail(where, "expected a 2x2 array");
            (part[0] == 'r' ? re : im)[r] = json_detail::numbers(rows[r], 2, where);
        }
    }
    Mat2 m;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
    return m;
}

// ---- plans ----------------------------------------------------------------

inline constexpr std::string_view kPlanFormat = "locc3-plan";

inline Json to_json(const ProtocolPlan& plan) {
    Json steps = Json::array();
    for (const ProtocolStep& step : plan.steps) {
        Json corrections = Json::array();
        for (const LuCorrection& c : step.corrections) corrections.push_back({to_json(c.u[0]), to_json(c.u[1]), to_json(c.u[2])});
        steps.push_back({{"party", std::string(1, to_char(step.pair.party()))},
                         {"label", step.pair.label},
                         {"theta", {step.pair.theta[0], step.pair.theta[1]}},
                         {"operators", {to_json(step.pair.first.m), to_json(step.pair.second.m)}},
                         {"corrections", corrections}});
    }
    return {{"format", kPlanFormat},
            {"version", 1},
            {"family", plan.family},
            {"initial", to_json(plan.initial)},
            {"target", to_json(plan.target)},
            {"steps", steps}};
}

inline ProtocolPlan plan_from_json(const Json& j) {
    using namespace json_detail;
    expect_keys(j, "plan", {"format", "version", "family", "initial", "target", "steps"});
    if (text(j["format"], "plan.format") != kPlanFormat) fail("plan.format", "expected \"locc3-plan\"");
    if (number(j["version"], "plan.version") != 1.0) fail("plan.version", "unsupported version");
    ProtocolPlan plan;
    plan.family = text(j["family"], "plan.family");
    plan.initial = state_from_json(j["initial"], "plan.initial");
    plan.target = state_from_json(j["target"], "plan.target");
    if (!j["steps"].is_array()) fail("plan.steps", "expected an array");
    for (std::size_t i = 0; i < j["steps"].size(); ++i) {
        const std::string where = "plan.steps[" + std::to_string(i) + "]";
        const Json& s = j["steps"][i];
        expect_keys(s, where, {"party", "label", "operators", "corrections"}, {"theta"});
        const std::string party = text(s["party"], where + ".party");
        if (party.size() != 1) fail(where + ".party", "expected \"A\", \"B\" or \"C\"");
        const Party p = party_from_char(party[0]);
        ProtocolStep step;
        step.pair.label = text(s["label"], where + ".label");
        if (s.contains("theta")) {
            const auto theta = numbers(s["theta"], 2, where + ".theta");
            step.pair.theta = {theta[0], theta[1]};
        }
        if (!s["operators"].is_array() || s["operators"].size() != 2) fail(where + ".operators", "expected two operators");
        step.pair.first = LocalOperator(mat2_from_json(s["operators"][0], where + ".operators[0]"), p);
        step.pair.second = LocalOperator(mat2_from_json(s["operators"][1], where + ".operators[1]"), p);
        if (!s["corrections"].is_array() || s["corrections"].size() != 2)
            fail(where + ".corrections", "expected two corrections");
        for (int k = 0; k < 2; ++k) {
            const Json& c = s["corrections"][k];
            if (!c.is_array() || c.size() != 3) fail(where + ".corrections", "expected three unitaries per correction");
            for (int q = 0; q < 3; ++q) step.corrections[k].u[q] = mat2_from_json(c[q], where + ".corrections");
        }
        plan.steps.push_back(std::move(step));
    }
    return plan;
}

// ---- states ---------------------------------------------------------------

/// A state as supplied by the user: canonical coefficients, W coefficients
/// or a raw ket. `state` is always filled.
struct StateDocument {
    std::string kind;
    std::optional<std::string> label;
    std::optional<CanonicalCoefficients> canonical;
    std::optional<WCoefficients> w;
    StateVector state;
};

inline StateDocument state_document_from_json(const Json& j, const Tolerances& tol = {}) {
    using namespace json_detail;
    if (!j.is_object() || !j.contains("kind")) fail("state", "missing field \"kind\"");
    StateDocument doc;
    doc.kind = text(j["kind"], "state.kind");
    if (doc.kind == "canonical") {
        expect_keys(j, "state", {"kind", "lambda", "phi"}, {"label"});
        CanonicalCoefficients c;
        const auto l = numbers(j["lambda"], 5, "state.lambda");
        std::copy(l.begin(), l.end(), c.lambda.begin());
        c.phi = number(j["phi"], "state.phi");
        doc.canonical = validated(c, tol);
        doc.state = state_from_canonical(*doc.canonical, tol);
    } else if (doc.kind == "w") {
        expect_keys(j, "state", {"kind", "x"}, {"label"});
        WCoefficients w;
        const auto x = numbers(j["x"], 4, "state.x");
        std::copy(x.begin(), x.end(), w.x.begin());
        doc.w = validated(w, tol);
        doc.state = w_state(*doc.w);
    } else if (doc.kind == "vector") {
        expect_keys(j, "state", {"kind", "re", "im"}, {"label"});
        doc.state = state_from_json({{"re", j["re"]}, {"im", j["im"]}}, "state");
        if (std::abs(doc.state.norm_squared() - 1.0) > tol.normalization) fail("state", "vector is not normalized");
        doc.state = doc.state.normalized();
    } else {
        fail("state.kind", "expected \"canonical\", \"w\" or \"vector\"");
    }
    if (j.contains("label")) doc.label = text(j["label"], "state.label");
    return doc;
}

inline Json to_json(const StateDocument& doc) {
    Json j{{"kind", doc.kind}};
    if (doc.canonical) {
        j["lambda"] = doc.canonical->lambda;
        j["phi"] = doc.canonical->phi;
    } else if (doc.w) {
        j["x"] = doc.w->x;
    } else {
        const Json v = to_json(doc.state);
        j["re"] = v["re"];
        j["im"] = v["im"];
    }
    if (doc.label) j["label"] = *doc.label;
    return j;
}

// ---- results --------------------------------------------------------------

inline Json to_json(const InvariantSet& inv) {
    Json j{{"c_ab", inv.c_ab}, {"c_ac", inv.c_ac}, {"c_bc", inv.c_bc}, {"tau", inv.tau}};
    if (inv.ep_phase) j["ep_phase"] = *inv.ep_phase;
    else j["ep_phase"] = "indefinite";
    return j;
}

inline Json to_json(const FeasibilityVerdict& v) {
    return {{"feasible", v.feasible},
            {"reason", v.reason},
            {"violated_quantity", v.violated_quantity},
            {"violated_indices", v.violated_indices}};
}

inline Json to_json(const Tolerances& t) {
    return {{"algebraic", t.algebraic},       {"normalization", t.normalization},
            {"complete", t.complete},         {"probability", t.probability},
            {"fidelity", t.fidelity},         {"lue", t.lue},
            {"density_trace", t.density_trace}, {"psd", t.psd},
            {"rank", t.rank},                 {"tangle", t.tangle},
            {"ep_product", t.ep_product},     {"arccos_slack", t.arccos_slack},
            {"concurrence_zero", t.concurrence_zero}, {"monotone_slack", t.monotone_slack},
            {"family", t.family},             {"negligible_branch", t.negligible_branch}};
}

inline Json to_json(const ExecutionReport& r) {
    Json leaves = Json::array();
    for (const Leaf& leaf : r.leaves) {
        Json l{{"path", leaf.path}, {"probability", leaf.probability}, {"negligible", leaf.negligible}};
        l["fidelity"] = leaf.fidelity ? Json(*leaf.fidelity) : Json(nullptr);
        l["uncorrected_fidelity"] = leaf.uncorrected_fidelity ? Json(*leaf.uncorrected_fidelity) : Json(nullptr);
        l["state"] = leaf.state ? to_json(*leaf.state) : Json(nullptr);
        leaves.push_back(std::move(l));
    }
    return {{"leaves", leaves},
            {"total_probability", r.total_probability},
            {"deterministic", r.deterministic},
            {"max_fidelity_defect", r.max_fidelity_defect}};
}

inline Json to_json(const SampledReport& r) {
    Json leaves = Json::array();
    for (std::size_t i = 0; i < r.paths.size(); ++i)
        leaves.push_back({{"path", r.paths[i]}, {"count", r.counts[i]}, {"frequency", r.frequencies[i]}, {"exact", r.exact[i]}});
    return {{"trials", r.trials},
            {"seed", r.seed},
            {"leaves", leaves},
            {"chi_square", r.chi_square},
            {"degrees_of_freedom", r.degrees_of_freedom},
            {"chi_square_bound", r.chi_square_bound},
            {"max_z", r.max_z},
            {"within_envelope", r.within_envelope}};
}

} // namespace locc3
