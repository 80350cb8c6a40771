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
 * Deterministic W-type to W-type transformations in three rounds (A, B, C).
 *
 * States are handled in the shape c000|000> + c100|100> + c101|101> + c110|110>.
 * Each round lowers one coefficient (c000 for A, c110 for B, c101 for C) to a
 * retained value and raises c100 so the norm is conserved.
 */

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "locc3/entangle.hpp"
#include "locc3/ghz_protocols.hpp"
#include "locc3/measurement.hpp"
#include "locc3/plan.hpp"
#include "locc3/qcore.hpp"

namespace locc3 {

/// x0|000> + x1|100> + x2|010> + x3|001>, with x1, x2, x3 > 0.
struct WCoefficients {
    std::array<double, 4> x{};

    double operator[](std::size_t i) const { return x[i]; }
};

inline WCoefficients standard_w_coefficients() {
    const double t = 1.0 / std::sqrt(3.0);
    return {{0.0, t, t, t}};
}

inline WCoefficients validated(const WCoefficients& w, const Tolerances& tol = {}) {
    double sum = 0.0;
    for (double v : w.x) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "W coefficient is not finite");
        sum += v * v;
    }
    if (w.x[0] < 0.0) throw Error(ErrorCode::InvalidInput, "x0 must be nonnegative");
    for (int i = 1; i < 4; ++i)
        if (w.x[i] <= 0.0) throw Error(ErrorCode::InvalidInput, "x1, x2, x3 must be positive for a W-type state");
    if (std::abs(sum - 1.0) > tol.normalization) throw Error(ErrorCode::InvalidInput, "W coefficients are not normalized");
    WCoefficients out = w;
    const double n = std::sqrt(sum);
    for (double& v : out.x) v /= n;
    return out;
}

/// Amplitudes at |000>, |100>, |101>, |110>.
struct WShape {
    double c000 = 0.0;
    double c100 = 0.0;
    double c101 = 0.0;
    double c110 = 0.0;

    StateVector state() const {
        return StateVector::from_terms({{"000", c000}, {"100", c100}, {"101", c101}, {"110", c110}});
    }
};

/// x1|000> + x0|100> + x3|101> + x2|110>, the sigma_x-on-A image of the
/// x-form ket.
inline WShape canonical_shape(const WCoefficients& w) { return {w.x[1], w.x[0], w.x[3], w.x[2]}; }

/// Inverse of canonical_shape().
inline WCoefficients coefficients_of(const WShape& s) { return {{s.c100, s.c000, s.c110, s.c101}}; }

inline StateVector w_state(const WCoefficients& w) {
    return StateVector::from_terms({{"000", w.x[0]}, {"100", w.x[1]}, {"010", w.x[2]}, {"001", w.x[3]}});
}

/// sigma_x on party A; maps the x-form ket onto its canonical shape.
inline StateVector w_canonical_flip(const StateVector& s) { return apply_local(pauli_x(), Party::A, s); }

struct WStepRecord {
    Party party = Party::A;
    double retained = 0.0;    // alpha0, beta3 or gamma2
    double new_weight = 0.0;  // alpha1, beta1 or gamma1
    double p1 = 1.0;
    double p2 = 0.0;
    bool trivial = false;
};

struct WStep {
    MeasurementPair pair;
    WStepRecord record;
    LuCorrection correction;
    WShape next;  // the outcome-1 ket
};

namespace detail {

inline double& lowered_slot(WShape& s, Party p) {
    return p == Party::A ? s.c000 : p == Party::B ? s.c110 : s.c101;
}

} // namespace detail

/// One round of the W chain: `party` lowers its coefficient to
/// `retained_target` with outcome probabilities (w + c100)/2w and
/// (w - c100)/2w, w being the new |100> weight.
inline WStep w_step_pair(const WShape& current, Party party, double retained_target, const Tolerances& tol = {}) {
    WShape next = current;
    double& slot = detail::lowered_slot(next, party);
    const double source = slot;
    const double x0 = current.c100;
    if (retained_target < 0.0 || !std::isfinite(retained_target))
        throw Error(ErrorCode::InvalidInput, "retained coefficient must be nonnegative");
    if (source <= 0.0 || x0 < 0.0)
        throw Error(ErrorCode::DegenerateStep, "current state is not in W shape (source coefficient must be positive)");
    if (retained_target > source + tol.monotone_slack)
        throw Error(ErrorCode::MonotonicityViolation, std::string("party ") + to_char(party) + " cannot raise its coefficient from " +
                                                          detail::fmt(source) + " to " + detail::fmt(retained_target));

    WStep step;
    step.record.party = party;
    step.pair.label = std::string("w-step-") + to_char(party);
    // sigma_z on every qubit flips the sign of the |100> coefficient only.
    step.correction = LuCorrection::of(pauli_z(), pauli_z(), pauli_z());

    if (std::abs(source - retained_target) <= tol.algebraic || retained_target > source) {
        step.record.retained = source;
        step.record.new_weight = x0;
        step.record.trivial = true;
        step.pair.first = LocalOperator(identity2(), party);
        step.pair.second = LocalOperator(Mat2::Zero(), party);
        step.next = current;
        return step;
    }

    const double w = std::sqrt(x0 * x0 + source * source - retained_target * retained_target);
    if (w <= 0.0) throw Error(ErrorCode::DegenerateStep, "new |100> weight vanishes");
    const double p1 = (w + x0) / (2.0 * w);
    const double p2 = (w - x0) / (2.0 * w);
    const double ratio = retained_target / source;
    const double transfer = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    const std::array<double, 2> p{p1, p2};
    for (int k = 0; k < 2; ++k) {
        const double sign = k == 0 ? 1.0 : -1.0;
        const double keep = std::sqrt(p[k]);
        const double off = sign * std::sqrt(p[1 - k]) * transfer;
        // A moves weight |0> -> |1> (lower triangle); B and C move |1> -> |0>.
        const Mat2 m = party == Party::A ? mat2(keep * ratio, 0.0, off, keep) : mat2(keep, off, 0.0, keep * ratio);
        (k == 0 ? step.pair.first : step.pair.second) = LocalOperator(m, party);
    }
    slot = retained_target;
    next.c100 = w;
    step.next = next;
    step.record.retained = retained_target;
    step.record.new_weight = w;
    step.record.p1 = p1;
    step.record.p2 = p2;
    return step;
}

/// Feasible iff x_i >= x_i' for i = 1, 2, 3.
inline FeasibilityVerdict w_feasible(const WCoefficients& initial, const WCoefficients& target, const Tolerances& tol = {}) {
    const WCoefficients a = validated(initial, tol);
    const WCoefficients b = validated(target, tol);
    FeasibilityVerdict v;
    std::string list;
    for (int i = 1; i < 4; ++i) {
        const double excess = b.x[i] - a.x[i];
        if (excess > tol.monotone_slack) {
            v.violated_indices.push_back(i);
            v.violated_quantity = std::max(v.violated_quantity, excess);
            list += (list.empty() ? "" : ", ") + std::string("x") + std::to_string(i) + "' = " + detail::fmt(b.x[i]) +
                    " > x" + std::to_string(i) + " = " + detail::fmt(a.x[i]);
        }
    }
    v.feasible = v.violated_indices.empty();
    v.reason = v.feasible ? "x_i >= x_i' for i = 1, 2, 3" : "monotonicity violated: " + list;
    return v;
}

/// The three rounds taking `initial` to `target` (both in x-form).
inline std::array<WStep, 3> w_chain_steps(const WCoefficients& initial, const WCoefficients& target, const Tolerances& tol = {}) {
    const FeasibilityVerdict v = w_feasible(initial, target, tol);
    if (!v.feasible) throw Error(ErrorCode::MonotonicityViolation, v.reason);
    const WCoefficients a = validated(initial, tol);
    const WCoefficients b = validated(target, tol);

    const WStep sa = w_step_pair(canonical_shape(a), Party::A, b.x[1], tol);
    const WStep sb = w_step_pair(sa.next, Party::B, b.x[2], tol);
    const WStep sc = w_step_pair(sb.next, Party::C, b.x[3], tol);
    // The final |100> weight must come out as x0' >= x0; conservation makes
    // this automatic, so a failure here is a bug.
    if (sc.next.c100 + tol.monotone_slack < a.x[0] || std::abs(sc.next.c100 - b.x[0]) > tol.fidelity)
        throw Error(ErrorCode::DegenerateStep, "W chain did not land on the target |100> weight");
    return {sa, sb, sc};
}

inline ProtocolPlan w_chain_plan(const WCoefficients& initial, const WCoefficients& target, const Tolerances& tol = {}) {
    const auto steps = w_chain_steps(initial, target, tol);
    ProtocolPlan plan;
    plan.initial = canonical_shape(validated(initial, tol)).state();
    plan.target = canonical_shape(validated(target, tol)).state();
    for (const WStep& s : steps) plan.steps.push_back(make_step(s.pair, s.correction));
    plan.family = "w-chain";
    return plan;
}

} // namespace locc3
