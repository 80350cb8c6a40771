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

#pragma once

#include <array>
#include <string>
#include <vector>

#include "locc3/measurement.hpp"
#include "locc3/qcore.hpp"

namespace locc3 {

/// One measurement round. corrections[k-1] is applied after outcome k;
/// outcome 1 always carries the identity.
struct ProtocolStep {
    MeasurementPair pair;
    std::array<LuCorrection, 2> corrections{LuCorrection::identity(), LuCorrection::identity()};
};

struct ProtocolPlan {
    StateVector initial;
    std::vector<ProtocolStep> steps;
    StateVector target;
    std::string family;
};

/// Outcome of a yes/no check, with a human-readable reason on failure.
struct FeasibilityVerdict {
    bool feasible = true;
    std::string reason;
    double violated_quantity = 0.0;
    std::vector<int> violated_indices;

    static FeasibilityVerdict ok(std::string reason = {}) { return {true, std::move(reason), 0.0, {}}; }
};

/// Checks the plan-level invariants: normalized endpoints, complete pairs,
/// unitary corrections and an identity correction on outcome 1.
inline void validate_plan(const ProtocolPlan& plan, const Tolerances& tol = {}) {
    if (!plan.initial.is_normalized(tol.normalization) || !plan.target.is_normalized(tol.normalization))
        throw Error(ErrorCode::InvalidInput, "plan endpoints must be normalized");
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        const ProtocolStep& step = plan.steps[i];
        const std::string where = "step " + std::to_string(i + 1);
        if (!povm_complete(step.pair, tol)) throw Error(ErrorCode::InvalidInput, where + ": measurement is not complete");
        for (const LuCorrection& c : step.corrections)
            if (!c.is_unitary(tol.algebraic))
                throw Error(ErrorCode::InvalidInput, where + ": correction is not unitary");
        if (!step.corrections[0].is_identity(tol.algebraic))
            throw Error(ErrorCode::InvalidInput, where + ": outcome 1 must carry the identity correction");
    }
}

} // namespace locc3
