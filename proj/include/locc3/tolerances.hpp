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

namespace locc3 {

/// Numeric thresholds shared by every module. Defaults are tuned for
/// closed-form inputs; the CLI exposes the user-facing ones as flags.
struct Tolerances {
    double algebraic = 1e-12;      // identities that hold to rounding
    double normalization = 1e-9;   // accepted deviation of sum(lambda^2) from 1
    double complete = 1e-10;       // max-norm of sum M^dag M - I
    double probability = 1e-10;    // probability sums and branch symmetry
    double fidelity = 1e-9;        // leaf fidelity defect
    double lue = 1e-8;             // componentwise invariant agreement
    double density_trace = 1e-10;  // trace check on density matrices
    double psd = 1e-10;            // most negative admissible eigenvalue
    double rank = 1e-9;            // eigenvalue counted towards rank
    double tangle = 1e-9;          // three-tangle above this is GHZ class
    double ep_product = 1e-12;     // C_AB C_AC C_BC at or below: EP indefinite
    double arccos_slack = 1e-6;    // clamp window around [-1, 1]
    double concurrence_zero = 1e-10;
    double monotone_slack = 1e-10;
    double family = 1e-10;         // protocol-family membership constraints
    double negligible_branch = 1e-14;
};

} // namespace locc3
