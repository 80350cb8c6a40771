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
#include <numbers>
#include <string>

#include "locc3/qcore.hpp"

namespace locc3 {

/// Two-outcome generalized measurement {M1, M2} performed by one party.
///
/// `theta` records the off-diagonal phase of each outcome in the canonical
/// operator form; every protocol built here uses 0 for outcome 1 and pi for
/// outcome 2 (a sign flip).
struct MeasurementPair {
    LocalOperator first;
    LocalOperator second;
    std::string label;
    std::array<double, 2> theta{0.0, std::numbers::pi};

    Party party() const { return first.party; }

    const LocalOperator& outcome(int k) const { return k == 1 ? first : second; }
};

/// max |M1^dag M1 + M2^dag M2 - I|.
inline double completeness_defect(const MeasurementPair& pair) {
    if (pair.first.party != pair.second.party)
        throw Error(ErrorCode::InvalidInput, "measurement outcomes act on different parties");
    const Mat2 sum = pair.first.m.adjoint() * pair.first.m + pair.second.m.adjoint() * pair.second.m;
    return (sum - Mat2::Identity()).cwiseAbs().maxCoeff();
}

inline bool povm_complete(const MeasurementPair& pair, const Tolerances& tol = {}) {
    return completeness_defect(pair) <= tol.complete;
}

/// One unitary per party, applied as u_a (x) u_b (x) u_c.
struct LuCorrection {
    std::array<Mat2, 3> u{Mat2::Identity(), Mat2::Identity(), Mat2::Identity()};

    static LuCorrection identity() { return {}; }

    static LuCorrection of(const Mat2& ua, const Mat2& ub, const Mat2& uc) {
        LuCorrection c;
        c.u = {ua, ub, uc};
        return c;
    }

    const Mat2& on(Party p) const { return u[static_cast<std::size_t>(index_of(p))]; }

    StateVector apply(const StateVector& s) const { return apply_product(u[0], u[1], u[2], s); }

    bool is_identity(double tol = 1e-12) const {
        for (const Mat2& m : u)
            if ((m - Mat2::Identity()).cwiseAbs().maxCoeff() > tol) return false;
        return true;
    }

    bool is_unitary(double tol = 1e-12) const {
        for (const Mat2& m : u)
            if (!locc3::is_unitary(m, tol)) return false;
        return true;
    }
};

} // namespace locc3
