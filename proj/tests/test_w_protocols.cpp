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
#include <vector>

#include <gtest/gtest.h>

#include "locc3/w_protocols.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace locc3;

namespace {

// Expected (p1, p2) for a round that raises the |100> weight from `old` to `w`.
std::array<double, 2> closed_form(double old, double w) { return {(w + old) / (2 * w), (w - old) / (2 * w)}; }

StateVector measure(const StateVector& s, const MeasurementPair& pair, int k, double& p) {
    const StateVector out = oracle::apply_kron(pair.outcome(k).m, index_of(pair.party()), s);
    p = out.norm_squared();
    return (1.0 / std::sqrt(p)) * out;
}

StateVector sign_fix(const StateVector& s) {
    return StateVector(oracle::kron3(pauli_z(), pauli_z(), pauli_z()) * s.amplitudes());
}

} // namespace

TEST(WForm, FlipOnAMapsOntoTheCanonicalShape) {
    gen::Source g(200);
    for (int trial = 0; trial < 100; ++trial) {
        const WCoefficients w = gen::w(g);
        const StateVector flipped = w_canonical_flip(w_state(w));
        EXPECT_GE(oracle::fidelity(flipped, canonical_shape(w).state()), 1.0 - 1e-15);
        const WCoefficients back = coefficients_of(canonical_shape(w));
        for (int i = 0; i < 4; ++i) EXPECT_EQ(back.x[i], w.x[i]);
    }
}

TEST(WForm, StandardWHasEqualWeights) {
    EXPECT_GE(oracle::fidelity(w_state(standard_w_coefficients()), standard_w()), 1.0 - 1e-15);
}

TEST(WForm, ValidationRejectsNonWCoefficients) {
    EXPECT_THROW(validated(WCoefficients{{0.0, 1.0, 0.0, 0.0}}), Error);
    EXPECT_THROW(validated(WCoefficients{{-0.1, 0.7, 0.5, 0.5}}), Error);
    EXPECT_THROW(validated(WCoefficients{{0.5, 0.5, 0.5, 0.6}}), Error);
}

class WStepTest : public ::testing::TestWithParam<Party> {};

TEST_P(WStepTest, OperatorsAreCompleteAndBothOutcomesAgreeAfterSignFix) {
    const Party party = GetParam();
    gen::Source g(210 + index_of(party));
    for (int trial = 0; trial < 300; ++trial) {
        const WShape shape = canonical_shape(gen::w(g));
        const double source = party == Party::A ? shape.c000 : party == Party::B ? shape.c110 : shape.c101;
        const double keep = source * g.uniform(0.01, 0.99);
        const WStep step = w_step_pair(shape, party, keep);
        EXPECT_FALSE(step.record.trivial);
        EXPECT_LE(completeness_defect(step.pair), 1e-12);
        const double w = std::sqrt(shape.c100 * shape.c100 + source * source - keep * keep);
        EXPECT_NEAR(step.record.new_weight, w, 1e-14);
        const auto expected = closed_form(shape.c100, w);
        const StateVector want = step.next.state();
        double p1 = 0.0, p2 = 0.0;
        const StateVector s1 = measure(shape.state(), step.pair, 1, p1);
        const StateVector s2 = measure(shape.state(), step.pair, 2, p2);
        EXPECT_NEAR(p1, expected[0], 1e-10);
        EXPECT_NEAR(p2, expected[1], 1e-10);
        EXPECT_GE(oracle::fidelity(s1, want), 1.0 - 1e-12);
        EXPECT_GE(oracle::fidelity(sign_fix(s2), want), 1.0 - 1e-12);
        EXPECT_LE(oracle::hyperdeterminant_tangle(s1), 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(Parties, WStepTest, ::testing::Values(Party::A, Party::B, Party::C),
                         [](const auto& info) { return std::string(1, to_char(info.param)); });

TEST(WStep, TwoQubitSignFixIsNotEnoughForPartyB) {
    const WShape shape = canonical_shape(standard_w_coefficients());
    const WStep step = w_step_pair(shape, Party::B, 0.3);
    double p = 0.0;
    const StateVector s2 = measure(shape.state(), step.pair, 2, p);
    const StateVector partial(oracle::kron3(-pauli_z(), pauli_z(), identity2()) * s2.amplitudes());
    EXPECT_LT(oracle::fidelity(partial, step.next.state()), 1.0 - 1e-3);
    EXPECT_GE(oracle::fidelity(sign_fix(s2), step.next.state()), 1.0 - 1e-12);
}

TEST(WStep, EqualRetainedValueIsTrivial) {
    const WShape shape = canonical_shape(standard_w_coefficients());
    const WStep step = w_step_pair(shape, Party::C, shape.c101);
    EXPECT_TRUE(step.record.trivial);
    EXPECT_EQ(step.record.p1, 1.0);
    EXPECT_EQ(step.record.p2, 0.0);
    EXPECT_LE(completeness_defect(step.pair), 1e-15);
}

TEST(WStep, RaisingACoefficientIsAMonotonicityViolation) {
    const WShape shape = canonical_shape(standard_w_coefficients());
    try {
        w_step_pair(shape, Party::A, 0.9);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MonotonicityViolation);
    }
}

TEST(WStep, VanishingSourceIsDegenerate) {
    WShape shape{0.0, 0.6, 0.0, 0.8};
    try {
        w_step_pair(shape, Party::A, 0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateStep);
    }
}

TEST(WChain, MonotoneTargetsFromStandardWReachTheTargetOnAllEightLeaves) {
    gen::Source g(220);
    const WCoefficients w = standard_w_coefficients();
    for (int trial = 0; trial < 500; ++trial) {
        const WCoefficients t = gen::monotone_target(g, w);
        ASSERT_TRUE(w_feasible(w, t).feasible);
        const auto steps = w_chain_steps(w, t);
        // Closed-form round probabilities, with x0 = 0 for the standard W state.
        const double a1 = std::sqrt(w.x[0] * w.x[0] + w.x[1] * w.x[1] - t.x[1] * t.x[1]);
        const double b1 = std::sqrt(a1 * a1 + w.x[2] * w.x[2] - t.x[2] * t.x[2]);
        const double g1 = std::sqrt(b1 * b1 + w.x[3] * w.x[3] - t.x[3] * t.x[3]);
        const std::array<std::array<double, 2>, 3> expected{closed_form(w.x[0], a1), closed_form(a1, b1), closed_form(b1, g1)};
        EXPECT_NEAR(g1, t.x[0], 1e-12);
        EXPECT_GE(g1 + 1e-12, w.x[0]);

        std::vector<StateVector> leaves{canonical_shape(w).state()};
        std::vector<double> prob{1.0};
        for (int s = 0; s < 3; ++s) {
            std::vector<StateVector> next;
            std::vector<double> next_prob;
            for (std::size_t i = 0; i < leaves.size(); ++i)
                for (int k = 1; k <= 2; ++k) {
                    double p = 0.0;
                    StateVector out = measure(leaves[i], steps[s].pair, k, p);
                    EXPECT_NEAR(p, expected[s][k - 1], 1e-10);
                    if (k == 2) out = sign_fix(out);
                    EXPECT_LE(oracle::hyperdeterminant_tangle(out), 1e-9);
                    next.push_back(out);
                    next_prob.push_back(prob[i] * p);
                }
            leaves = std::move(next);
            prob = std::move(next_prob);
        }
        ASSERT_EQ(leaves.size(), 8u);
        double total = 0.0;
        for (double p : prob) total += p;
        EXPECT_NEAR(total, 1.0, 1e-10);
        const StateVector want = canonical_shape(t).state();
        for (const StateVector& s : leaves) EXPECT_GE(oracle::fidelity(s, want), 1.0 - 1e-9);
    }
}

TEST(WChain, WorksFromGenericWSources) {
    gen::Source g(221);
    for (int trial = 0; trial < 200; ++trial) {
        const WCoefficients w = gen::w(g);
        const WCoefficients t = gen::monotone_target(g, w);
        const ProtocolPlan plan = w_chain_plan(w, t);
        ASSERT_EQ(plan.steps.size(), 3u);
        EXPECT_EQ(plan.family, "w-chain");
        EXPECT_GE(oracle::fidelity(plan.initial, canonical_shape(w).state()), 1.0 - 1e-15);
        for (const ProtocolStep& s : plan.steps) {
            EXPECT_LE(completeness_defect(s.pair), 1e-10);
            EXPECT_TRUE(s.corrections[0].is_identity());
        }
    }
}

TEST(WChain, NonMonotoneTargetsAreRejectedWithTheIndex) {
    gen::Source g(222);
    const WCoefficients w = standard_w_coefficients();
    for (int trial = 0; trial < 500; ++trial) {
        int raised = 0;
        const WCoefficients t = gen::non_monotone_target(g, w, raised);
        const FeasibilityVerdict v = w_feasible(w, t);
        EXPECT_FALSE(v.feasible);
        EXPECT_NE(std::find(v.violated_indices.begin(), v.violated_indices.end(), raised), v.violated_indices.end());
        EXPECT_NE(v.reason.find("x" + std::to_string(raised) + "'"), std::string::npos);
        EXPECT_THROW(w_chain_steps(w, t), Error);
    }
}

TEST(WChain, IdentityTargetHasOnlyTrivialSteps) {
    const WCoefficients w = standard_w_coefficients();
    const auto steps = w_chain_steps(w, w);
    for (const WStep& s : steps) EXPECT_TRUE(s.record.trivial);
}
