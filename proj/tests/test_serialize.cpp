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

#include <cmath>

#include <gtest/gtest.h>

#include "locc3/cli.hpp"
#include "support/generators.hpp"
#include "support/plans.hpp"

using namespace locc3;

namespace {

Json canonical_doc(std::array<double, 5> l, double phi = 0.0) {
    return {{"kind", "canonical"}, {"lambda", l}, {"phi", phi}};
}

const double kH = 1.0 / std::sqrt(2.0);
const double kT = 1.0 / std::sqrt(3.0);

Json ghz_doc() { return canonical_doc({kH, 0, 0, 0, kH}); }
Json w_doc() { return {{"kind", "w"}, {"x", {0.0, kT, kT, kT}}}; }
Json product_doc() { return {{"kind", "vector"}, {"re", {1, 0, 0, 0, 0, 0, 0, 0}}, {"im", {0, 0, 0, 0, 0, 0, 0, 0}}}; }

ErrorCode parse_error(const Json& j) {
    try {
        state_document_from_json(j);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "document was accepted: " << j.dump();
    return ErrorCode::DegenerateStep;
}

} // namespace

TEST(StateDocument, ParsesAllThreeKinds) {
    EXPECT_GE(fidelity_up_to_phase(state_document_from_json(ghz_doc()).state, standard_ghz()), 1 - 1e-15);
    EXPECT_GE(fidelity_up_to_phase(state_document_from_json(w_doc()).state, standard_w()), 1 - 1e-15);
    const StateDocument p = state_document_from_json(product_doc());
    EXPECT_EQ(p.kind, "vector");
    EXPECT_EQ(p.state[0], Complex(1.0));
    Json labelled = w_doc();
    labelled["label"] = "W";
    EXPECT_EQ(state_document_from_json(labelled).label, "W");
}

TEST(StateDocument, StrictModeRejectsMistakes) {
    Json extra = ghz_doc();
    extra["lamda"] = 1;
    EXPECT_EQ(parse_error(extra), ErrorCode::InvalidInput);
    EXPECT_EQ(parse_error({{"kind", "canonical"}, {"lambda", {1, 0, 0, 0}}, {"phi", 0}}), ErrorCode::InvalidInput);
    EXPECT_EQ(parse_error({{"kind", "canonical"}, {"lambda", {kH, 0, 0, 0, kH}}}), ErrorCode::InvalidInput);
    EXPECT_EQ(parse_error({{"kind", "matrix"}}), ErrorCode::InvalidInput);
    EXPECT_EQ(parse_error({{"lambda", {kH, 0, 0, 0, kH}}}), ErrorCode::InvalidInput);
    EXPECT_EQ(parse_error(canonical_doc({0.7, 0, 0, 0, 0.7})), ErrorCode::InvalidInput);
    EXPECT_EQ(parse_error({{"kind", "w"}, {"x", {0.0, kT, kT, "a"}}}), ErrorCode::InvalidInput);
    EXPECT_EQ(parse_error({{"kind", "vector"}, {"re", {0.5, 0, 0, 0, 0, 0, 0, 0}}, {"im", {0, 0, 0, 0, 0, 0, 0, 0}}}),
              ErrorCode::InvalidInput);
    EXPECT_EQ(parse_error(Json::array()), ErrorCode::InvalidInput);
}

TEST(PlanJson, RoundTripGivesBitIdenticalReports) {
    gen::Source g(400);
    for (const gen::Family& f : gen::families()) {
        for (int trial = 0; trial < 10; ++trial) {
            const ProtocolPlan plan = f.make(g);
            const std::string text = to_json(plan).dump();
            const ProtocolPlan back = plan_from_json(Json::parse(text));
            EXPECT_EQ(to_json(back).dump(), text);
            EXPECT_EQ(to_json(execute_exhaustive(back)).dump(), to_json(execute_exhaustive(plan)).dump()) << f.name;
            EXPECT_EQ(to_json(execute_sampled(back, 500, 9)).dump(), to_json(execute_sampled(plan, 500, 9)).dump());
        }
    }
}

TEST(PlanJson, RejectsMalformedPlans) {
    const Json good = to_json(single_party_plan(single_party_target(Party::B, 0.6, 0.48, 0.64)));
    EXPECT_NO_THROW(plan_from_json(good));
    Json j = good;
    j["steps"][0]["extra"] = true;
    EXPECT_THROW(plan_from_json(j), Error);
    j = good;
    j["steps"][0]["party"] = "D";
    EXPECT_THROW(plan_from_json(j), Error);
    j = good;
    j["steps"][0]["operators"].erase(1);
    EXPECT_THROW(plan_from_json(j), Error);
    j = good;
    j["format"] = "other";
    EXPECT_THROW(plan_from_json(j), Error);
    j = good;
    j["initial"]["re"].push_back(0.0);
    EXPECT_THROW(plan_from_json(j), Error);
}

TEST(Commands, InvariantsOfReferenceStates) {
    const CommandResult g = cmd_invariants(ghz_doc());
    EXPECT_EQ(g.exit_code, kExitOk);
    const Json& inv = g.report["result"]["canonical"];
    EXPECT_NEAR(inv["c_ab"].get<double>(), 0.0, 1e-12);
    EXPECT_NEAR(inv["tau"].get<double>(), 1.0, 1e-12);
    EXPECT_EQ(inv["ep_phase"], "indefinite");
    EXPECT_LE(g.report["result"]["max_difference"].get<double>(), 1e-8);

    const CommandResult w = cmd_invariants(w_doc());
    for (const char* k : {"c_ab", "c_ac", "c_bc"}) EXPECT_NEAR(w.report["result"]["oracle"][k].get<double>(), 2.0 / 3.0, 1e-9);
    EXPECT_NEAR(w.report["result"]["oracle"]["tau"].get<double>(), 0.0, 1e-9);

    const CommandResult p = cmd_invariants(product_doc());
    EXPECT_FALSE(p.report["result"].contains("canonical"));
    EXPECT_EQ(p.report["result"]["classification"], "BISEPARABLE_OR_PRODUCT");
    EXPECT_EQ(p.report["result"]["oracle"]["tau"].get<double>(), 0.0);
}

TEST(Commands, MalformedInputIsExitTwo) {
    const CommandResult r = cmd_invariants({{"kind", "canonical"}});
    EXPECT_EQ(r.exit_code, kExitInvalid);
    EXPECT_EQ(r.report["status"], "error");
    EXPECT_EQ(r.report["command"], "invariants");
}

TEST(Commands, Classify) {
    EXPECT_EQ(cmd_classify(ghz_doc()).report["result"]["classification"], "GHZ_CLASS");
    EXPECT_EQ(cmd_classify(w_doc()).report["result"]["classification"], "W_CLASS");
    EXPECT_EQ(cmd_classify(product_doc()).report["result"]["classification"], "BISEPARABLE_OR_PRODUCT");
}

TEST(Commands, PlanOutcomes) {
    const CommandResult ep = cmd_plan(ghz_doc(), canonical_doc({0.5, 0.3, 0.4, 0.5, 0.5}));
    EXPECT_EQ(ep.exit_code, kExitInfeasible);
    EXPECT_EQ(ep.report["status"], "infeasible");
    EXPECT_NE(ep.report["result"]["verdict"]["reason"].get<std::string>().find("C_AB*C_AC*C_BC"), std::string::npos);

    CliConfig route_a;
    route_a.route = "A";
    const CommandResult a = cmd_plan(ghz_doc(), canonical_doc({0.6, 0.48, 0, 0, 0.64}), route_a);
    EXPECT_EQ(a.exit_code, kExitOk);
    ASSERT_TRUE(a.plan.has_value());
    EXPECT_EQ(a.plan->steps.size(), 1u);
    EXPECT_NEAR(a.report["result"]["step_probabilities"][0][0].get<double>(), 0.5, 1e-10);
    EXPECT_NEAR(a.report["result"]["step_probabilities"][0][1].get<double>(), 0.5, 1e-10);
    EXPECT_EQ(a.report["config"]["route"], "A");

    CliConfig chain;
    chain.route = "W-chain";
    const Json target{{"kind", "w"}, {"x", {std::sqrt(0.5), 0.5, 0.4, 0.3}}};
    const CommandResult w = cmd_plan(w_doc(), target, chain);
    EXPECT_EQ(w.exit_code, kExitOk);
    EXPECT_EQ(w.plan->steps.size(), 3u);

    EXPECT_EQ(cmd_plan(w_doc(), ghz_doc()).exit_code, kExitInvalid);
    EXPECT_EQ(cmd_plan(ghz_doc(), w_doc(), route_a).exit_code, kExitInvalid);
    CliConfig bogus;
    bogus.route = "ABC";
    EXPECT_EQ(cmd_plan(ghz_doc(), canonical_doc({0.6, 0.48, 0, 0, 0.64}), bogus).exit_code, kExitInvalid);
}

TEST(Commands, RunModes) {
    CliConfig cfg;
    const ProtocolPlan ab = two_party_plan(Party::A, Party::B, gen::normalized({0.5, 0.5, 0.5, 0.0, 0.5}));
    const CommandResult ex = cmd_run(to_json(ab), cfg);
    EXPECT_EQ(ex.exit_code, kExitOk);
    EXPECT_TRUE(ex.report["result"]["execution"]["deterministic"].get<bool>());
    EXPECT_EQ(ex.report["result"]["execution"]["leaves"].size(), 4u);

    cfg.mode = "sample";
    cfg.seed = 7;
    const CommandResult sm = cmd_run(to_json(ab), cfg);
    EXPECT_EQ(sm.exit_code, kExitOk);
    EXPECT_TRUE(sm.report["result"]["sampling"]["within_envelope"].get<bool>());
    EXPECT_EQ(sm.report["config"]["seed"], 7);

    cfg.mode = "exhaustive";
    ProtocolPlan tampered = ab;
    tampered.steps[1].corrections[1] = LuCorrection::of(identity2(), pauli_z(), identity2());
    const CommandResult t = cmd_run(to_json(tampered), cfg);
    EXPECT_EQ(t.exit_code, kExitVerification);
    EXPECT_FALSE(t.report["result"]["execution"]["deterministic"].get<bool>());

    ProtocolPlan broken = ab;
    broken.steps[0].corrections[1].u[0] *= 2.0;
    EXPECT_EQ(cmd_run(to_json(broken), cfg).exit_code, kExitInvalid);
    Json missing = to_json(ab);
    missing.erase("target");
    EXPECT_EQ(cmd_run(missing, cfg).exit_code, kExitInvalid);
    cfg.mode = "quantum";
    EXPECT_EQ(cmd_run(to_json(ab), cfg).exit_code, kExitInvalid);
}

TEST(Commands, VerifyOutcomes) {
    const CommandResult ok = cmd_verify(ghz_doc(), canonical_doc(gen::normalized({0.5, 0.3, 0.6, 0.0, 0.5}).lambda));
    EXPECT_EQ(ok.exit_code, kExitOk);
    EXPECT_EQ(ok.report["result"]["route"], "AB");
    EXPECT_TRUE(ok.report["result"]["determinism"]["feasible"].get<bool>());

    const Json raised{{"kind", "w"}, {"x", {0.2, 0.8, 0.4, 0.4}}};
    const CommandResult bad = cmd_verify(w_doc(), raised);
    EXPECT_EQ(bad.exit_code, kExitInfeasible);
    EXPECT_EQ(bad.report["result"]["verdict"]["violated_indices"], Json::array({1}));

    const CommandResult same = cmd_verify(w_doc(), w_doc());
    EXPECT_EQ(same.exit_code, kExitOk);
    EXPECT_EQ(same.report["result"]["route"], "identity");
    EXPECT_EQ(same.report["result"]["execution"]["leaves"].size(), 1u);
}

TEST(Commands, ReportsEchoTheConfiguration) {
    CliConfig cfg;
    cfg.tol.complete = 1e-7;
    cfg.tol.lue = 1e-6;
    cfg.tol.probability = 1e-5;
    const CommandResult r = cmd_classify(ghz_doc(), cfg);
    EXPECT_EQ(r.report["config"]["tolerances"]["complete"].get<double>(), 1e-7);
    EXPECT_EQ(r.report["config"]["tolerances"]["lue"].get<double>(), 1e-6);
    EXPECT_EQ(r.report["config"]["tolerances"]["probability"].get<double>(), 1e-5);
    EXPECT_EQ(r.report["inputs"]["state"], ghz_doc());
}
