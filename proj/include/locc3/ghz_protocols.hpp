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
 * Deterministic transformations out of the standard GHZ state.
 *
 * One party measuring reaches targets with a single nonzero concurrence;
 * two parties measuring in sequence reach targets with a single vanishing
 * concurrence. Targets with all three concurrences nonzero are not
 * reachable, which ghz_feasible() reports.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "locc3/entangle.hpp"
#include "locc3/measurement.hpp"
#include "locc3/plan.hpp"
#include "locc3/qcore.hpp"

namespace locc3 {

/// Which concurrence a single-party target may carry. The measuring party
/// is the one outside that pair.
enum class GhzPattern { OnlyBC, OnlyAC, OnlyAB };

inline Party measuring_party(GhzPattern pattern) {
    switch (pattern) {
    case GhzPattern::OnlyBC: return Party::A;
    case GhzPattern::OnlyAC: return Party::B;
    case GhzPattern::OnlyAB: return Party::C;
    }
    return Party::A;
}

inline GhzPattern pattern_for(Party measuring) {
    switch (measuring) {
    case Party::A: return GhzPattern::OnlyBC;
    case Party::B: return GhzPattern::OnlyAC;
    case Party::C: return GhzPattern::OnlyAB;
    }
    return GhzPattern::OnlyBC;
}

struct GhzTarget {
    CanonicalCoefficients coefficients;
    GhzPattern pattern = GhzPattern::OnlyBC;
};

/// Target l0|000> + l_mid|m> + l4|111> for the given measuring party, where
/// |m> is |100>, |101> or |110> for A, B, C. Coefficients are normalized.
inline GhzTarget single_party_target(Party measuring, double l0, double l_mid, double l4) {
    CanonicalCoefficients c;
    c.lambda = {l0, 0.0, 0.0, 0.0, l4};
    c.lambda[measuring == Party::A ? 1 : measuring == Party::B ? 2 : 3] = l_mid;
    return {normalized(c), pattern_for(measuring)};
}

struct SinglePartyProtocol {
    MeasurementPair pair;
    LuCorrection correction;  // maps the outcome-2 ket onto the outcome-1 ket
    double kappa = 1.0;
};

namespace detail {

inline Complex i_unit() { return {0.0, 1.0}; }

// (a I - i b sigma_y)/sqrt(a^2 + b^2)
inline Mat2 rotation_y(double a, double b) {
    return (a * identity2() - i_unit() * b * pauli_y()) / std::hypot(a, b);
}

inline bool is_zero(double x, const Tolerances& tol) { return std::abs(x) <= tol.family; }

// Validated, exactly normalized target with a real |100> coefficient.
inline CanonicalCoefficients real_ghz_target(const CanonicalCoefficients& c, const Tolerances& tol) {
    CanonicalCoefficients t = normalized(validated(c, tol));
    const double phi = t.phi;
    const bool real = std::min(phi, 2.0 * std::numbers::pi - phi) <= tol.family;
    if (!real && t.lambda[1] > tol.family)
        throw Error(ErrorCode::InvalidTarget,
                    "GHZ protocols need a real |100> coefficient (phi = 0); supply the real LU-equivalent form");
    t.phi = 0.0;
    if (t.lambda[0] <= tol.family || t.lambda[4] <= tol.family)
        throw Error(ErrorCode::Infeasible, "target is not GHZ class: needs lambda0 > 0 and lambda4 > 0");
    return t;
}

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

} // namespace detail

/// Measurement pair on the standard GHZ state whose two outcomes are the
/// target and an LU-equivalent partner, each with probability 1/2.
inline SinglePartyProtocol single_party_pair(const GhzTarget& target, const Tolerances& tol = {}) {
    const CanonicalCoefficients t = detail::real_ghz_target(target.coefficients, tol);
    const auto& l = t.lambda;
    const Party party = measuring_party(target.pattern);

    const std::array<int, 2> must_vanish = party == Party::A   ? std::array<int, 2>{2, 3}
                                           : party == Party::B ? std::array<int, 2>{1, 3}
                                                               : std::array<int, 2>{1, 2};
    for (int i : must_vanish)
        if (!detail::is_zero(l[i], tol))
            throw Error(ErrorCode::InvalidTarget, std::string("single-party target for party ") + to_char(party) +
                                                      " needs lambda" + std::to_string(i) + " = 0");

    const Complex i = detail::i_unit();
    SinglePartyProtocol out;
    if (party == Party::A) {
        const double r = std::hypot(l[0], l[1]);
        const double kappa = r / l[4];
        out.kappa = kappa;
        out.pair.first = LocalOperator(mat2(l[0], 0.0, l[1], l[4]), party);
        out.pair.second = LocalOperator(mat2(l[0] / kappa, 0.0, -l[1] / kappa, kappa * l[4]), party);
        out.correction = LuCorrection::of((-l[1] * identity2() - i * l[0] * pauli_y()) / r, i * pauli_y(), -pauli_x());
    } else {
        const int mid = party == Party::B ? 2 : 3;
        const double kappa = l[0] / std::hypot(l[mid], l[4]);
        out.kappa = kappa;
        out.pair.first = LocalOperator(mat2(l[0], l[mid], 0.0, l[4]), party);
        out.pair.second = LocalOperator(mat2(l[0] / kappa, -kappa * l[mid], 0.0, kappa * l[4]), party);
        const Mat2 rot = detail::rotation_y(l[mid], l[4]);
        out.correction = party == Party::B ? LuCorrection::of(i * pauli_y(), rot, -pauli_x())
                                           : LuCorrection::of(i * pauli_y(), -pauli_x(), rot);
    }
    out.pair.label = std::string("ghz-single-") + to_char(party);
    return out;
}

inline ProtocolStep make_step(const MeasurementPair& pair, const LuCorrection& correction) {
    ProtocolStep step;
    step.pair = pair;
    step.corrections = {LuCorrection::identity(), correction};
    return step;
}

inline ProtocolPlan single_party_plan(const GhzTarget& target, const Tolerances& tol = {}) {
    const SinglePartyProtocol p = single_party_pair(target, tol);
    ProtocolPlan plan;
    plan.initial = standard_ghz();
    plan.steps.push_back(make_step(p.pair, p.correction));
    CanonicalCoefficients t = normalized(target.coefficients);
    t.phi = 0.0;
    plan.target = state_from_canonical(t, tol);
    plan.family = p.pair.label;
    return plan;
}

/// Two sequential measurements from the standard GHZ state. Supported
/// orders are (A, B), (A, C) and (B, C); the target must lie in the order's
/// family (lambda3 = 0, lambda2 = 0, or l1 l4 = l2 l3 respectively).
inline ProtocolPlan two_party_plan(Party first, Party second, const CanonicalCoefficients& target,
                                   const Tolerances& tol = {}) {
    const CanonicalCoefficients t = detail::real_ghz_target(target, tol);
    const auto& mu = t.lambda;
    const Complex i = detail::i_unit();
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

    ProtocolPlan plan;
    plan.initial = standard_ghz();
    plan.target = state_from_canonical(t, tol);

    if (first == Party::A && (second == Party::B || second == Party::C)) {
        const bool to_b = second == Party::B;
        // Second-step partner slot: |101> for B, |110> for C.
        const int mid = to_b ? 2 : 3;
        const int other = to_b ? 3 : 2;
        if (!detail::is_zero(mu[other], tol))
            throw Error(ErrorCode::Infeasible, std::string("order (A,") + to_char(second) + ") only reaches C_A" +
                                                   (to_b ? "B" : "C") + " = 0 targets: requires lambda" +
                                                   std::to_string(other) + " = 0, got " + detail::fmt(mu[other]));

        // Intermediate l0|000> + l1|100> + |111>/sqrt(2) with l0 mu1 = l1 mu0.
        const double r = std::hypot(mu[0], mu[1]);
        const double l0 = mu[0] * inv_sqrt2 / r;
        const double l1 = mu[1] * inv_sqrt2 / r;
        const SinglePartyProtocol step1 = single_party_pair({{{l0, l1, 0.0, 0.0, inv_sqrt2}, 0.0}, GhzPattern::OnlyBC}, tol);

        const double kappa = r / std::hypot(mu[mid], mu[4]);
        const double d00 = mu[0] / (std::numbers::sqrt2 * l0);
        MeasurementPair pair2;
        pair2.first = LocalOperator(mat2(d00, mu[mid], 0.0, mu[4]), second);
        pair2.second = LocalOperator(mat2(d00 / kappa, -kappa * mu[mid], 0.0, kappa * mu[4]), second);
        pair2.label = std::string("ghz-two-A") + to_char(second) + "-step2";
        const Mat2 ua = (mu[0] * pauli_x() - mu[1] * pauli_z()) / r;
        const Mat2 rot = detail::rotation_y(mu[mid], mu[4]);
        const LuCorrection corr2 = to_b ? LuCorrection::of(ua, rot, -i * pauli_y())
                                        : LuCorrection::of(ua, -i * pauli_y(), rot);

        plan.steps.push_back(make_step(step1.pair, step1.correction));
        plan.steps.push_back(make_step(pair2, corr2));
        plan.family = std::string("ghz-two-A") + to_char(second);
        return plan;
    }

    if (first == Party::B && second == Party::C) {
        const double defect = mu[1] * mu[4] - mu[2] * mu[3];
        if (!detail::is_zero(defect, tol))
            throw Error(ErrorCode::Infeasible,
                        "order (B,C) only reaches C_BC = 0 targets: requires lambda1 lambda4 = lambda2 lambda3, "
                        "defect " + detail::fmt(defect));

        // Intermediate |000>/sqrt(2) + l2|101> + l4|111> with l4 mu2 = l2 mu4.
        const double s24 = std::hypot(mu[2], mu[4]);
        const double s34 = std::hypot(mu[3], mu[4]);
        const double l2 = mu[2] * inv_sqrt2 / s24;
        const double l4 = mu[4] * inv_sqrt2 / s24;
        const SinglePartyProtocol step1 = single_party_pair({{{inv_sqrt2, 0.0, l2, 0.0, l4}, 0.0}, GhzPattern::OnlyAC}, tol);

        const double kappa = mu[0] * mu[4] / (s24 * s34);
        // mu1/l2 = mu3/l4 inside the family; the second form survives l2 = 0.
        const double off = l2 > tol.family ? mu[1] / (std::numbers::sqrt2 * l2) : mu[3] / (std::numbers::sqrt2 * l4);
        const double d11 = mu[4] / (std::numbers::sqrt2 * l4);
        MeasurementPair pair2;
        pair2.first = LocalOperator(mat2(mu[0], off, 0.0, d11), Party::C);
        pair2.second = LocalOperator(mat2(mu[0] / kappa, -kappa * off, 0.0, kappa * d11), Party::C);
        pair2.label = "ghz-two-BC-step2";
        const LuCorrection corr2 = LuCorrection::of(-i * pauli_y(), (mu[2] * pauli_z() + mu[4] * pauli_x()) / s24,
                                                    detail::rotation_y(mu[3], mu[4]));

        plan.steps.push_back(make_step(step1.pair, step1.correction));
        plan.steps.push_back(make_step(pair2, corr2));
        plan.family = "ghz-two-BC";
        return plan;
    }

    throw Error(ErrorCode::InvalidInput, std::string("unsupported party order (") + to_char(first) + "," +
                                             to_char(second) + "); use (A,B), (A,C) or (B,C)");
}

/// Whether the standard GHZ state can reach `target` with unit probability:
/// true iff at least one target concurrence vanishes.
inline FeasibilityVerdict ghz_feasible(const InvariantSet& source, const InvariantSet& target,
                                       const Tolerances& tol = {}) {
    if (std::max({source.c_ab, source.c_ac, source.c_bc}) > tol.concurrence_zero ||
        std::abs(source.tau - 1.0) > tol.fidelity)
        throw Error(ErrorCode::InvalidInput, "source must carry the standard GHZ fingerprint (C = 0, tau = 1)");
    if (target.tau <= tol.concurrence_zero)
        throw Error(ErrorCode::WrongClass, "target has zero three-tangle; use the W-type protocols");

    FeasibilityVerdict v;
    v.violated_quantity = target.concurrence_product();
    if (target.min_concurrence() <= tol.concurrence_zero) {
        const char* which = target.c_ab <= tol.concurrence_zero   ? "C_AB"
                            : target.c_ac <= tol.concurrence_zero ? "C_AC"
                                                                  : "C_BC";
        v.feasible = true;
        v.reason = std::string("target has a vanishing concurrence (") + which + " = 0)";
        return v;
    }
    v.feasible = false;
    v.reason = "all three target concurrences are nonzero: C_AB*C_AC*C_BC = " + detail::fmt(v.violated_quantity) +
               " > 0 (EP-definite target)";
    return v;
}

/// Diagnostics for a third measurement, by party C, on
/// mu0|000> + mu1|100> + mu2|101> + mu4|111>.
struct ThirdStepReport {
    double mu_residual = 0.0;            // max(|mu0^2+mu1^2-1/2|, |mu2^2+mu4^2-1/2|)
    double completeness_residual = 0.0;  // max |sum M^dag M - I|
    std::array<double, 2> probabilities{};
    // |a2 a3| |a2 a3 - a1 a4| per outcome on the normalized branch ket;
    // proportional to C_AB C_AC C_BC of that branch.
    std::array<double, 2> concurrence_residual{};
    std::array<InvariantSet, 2> branch_invariants{};
    double branch_fingerprint_distance = 0.0;
    bool branches_lue = false;
    bool completion_possible = false;
};

inline ThirdStepReport three_party_third_step(const CanonicalCoefficients& initial, const MeasurementPair& pair,
                                              const Tolerances& tol = {}) {
    const CanonicalCoefficients c = validated(initial, tol);
    if (!detail::is_zero(c.lambda[3], tol))
        throw Error(ErrorCode::InvalidInput, "third-step diagnostic expects lambda3 = 0 in the initial state");
    if (pair.party() != Party::C || pair.second.party != Party::C)
        throw Error(ErrorCode::InvalidInput, "third-step diagnostic expects a measurement by party C");

    const auto& mu = c.lambda;
    ThirdStepReport rep;
    rep.mu_residual = std::max(std::abs(mu[0] * mu[0] + mu[1] * mu[1] - 0.5), std::abs(mu[2] * mu[2] + mu[4] * mu[4] - 0.5));
    rep.completeness_residual = completeness_defect(pair);

    const StateVector phi = state_from_canonical(c, tol);
    bool degenerate = false;
    for (int k = 0; k < 2; ++k) {
        const StateVector out = apply_local(pair.outcome(k + 1), phi);
        rep.probabilities[k] = out.norm_squared();
        if (rep.probabilities[k] <= tol.negligible_branch) {
            degenerate = true;
            continue;
        }
        const StateVector s = out.normalized();
        const Complex a1 = s.at("100"), a2 = s.at("101"), a3 = s.at("110"), a4 = s.at("111");
        rep.concurrence_residual[k] = std::abs(a2 * a3) * std::abs(a2 * a3 - a1 * a4);
        rep.branch_invariants[k] = oracle_invariants(s, tol);
    }
    rep.branch_fingerprint_distance =
        degenerate ? 0.0 : fingerprint_distance(rep.branch_invariants[0], rep.branch_invariants[1]);
    rep.branches_lue = rep.branch_fingerprint_distance <= tol.lue;
    rep.completion_possible = rep.completeness_residual <= tol.complete && rep.branches_lue &&
                              std::max(rep.concurrence_residual[0], rep.concurrence_residual[1]) <= tol.concurrence_zero;
    return rep;
}

} // namespace locc3
