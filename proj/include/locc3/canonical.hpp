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
#include <cmath>
#include <numbers>

#include "locc3/errors.hpp"
#include "locc3/tolerances.hpp"

namespace locc3 {

/// Coefficients of the five-term canonical form
///   l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>.
struct CanonicalCoefficients {
    std::array<double, 5> lambda{};
    double phi = 0.0;

    double operator[](std::size_t i) const { return lambda[i]; }
};

inline double wrap_phase(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phi, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

/// Checks nonnegativity, finiteness and normalization; returns a copy with
/// phi wrapped into [0, 2 pi).
inline CanonicalCoefficients validated(CanonicalCoefficients c, const Tolerances& tol = {}) {
    double sum = 0.0;
    for (double l : c.lambda) {
        if (!std::isfinite(l)) throw Error(ErrorCode::InvalidInput, "canonical coefficient is not finite");
        if (l < 0.0) throw Error(ErrorCode::InvalidInput, "canonical coefficients must be nonnegative");
        sum += l * l;
    }
    if (!std::isfinite(c.phi)) throw Error(ErrorCode::InvalidInput, "canonical phase is not finite");
    if (std::abs(sum - 1.0) > tol.normalization)
        throw Error(ErrorCode::InvalidInput, "canonical coefficients are not normalized");
    c.phi = wrap_phase(c.phi);
    return c;
}

/// The same coefficients rescaled to unit norm (phase untouched).
inline CanonicalCoefficients normalized(CanonicalCoefficients c) {
    double sum = 0.0;
    for (double l : c.lambda) sum += l * l;
    const double n = std::sqrt(sum);
    for (double& l : c.lambda) l /= n;
    return c;
}

} // namespace locc3
