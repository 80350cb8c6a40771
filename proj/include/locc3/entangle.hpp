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
 * Local-unitary invariants of three-qubit pure states.
 *
 * Two independent routes are provided: closed forms in the canonical
 * coefficients, and density-matrix oracles (Wootters concurrence, CKW
 * tangle) that accept any ket. The protocol modules and the runner compare
 * states through the oracle route.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "locc3/canonical.hpp"
#include "locc3/qcore.hpp"

namespace locc3 {

/// Pairwise concurrences, three-tangle and entanglement phase. An empty
/// `ep_phase` is the indefinite phase (some concurrence vanishes).
struct InvariantSet {
    double c_ab = 0.0;
    double c_ac = 0.0;
    double c_bc = 0.0;
    double tau = 0.0;
    std::optional<double> ep_phase;

    double concurrence_product() const { return c_ab * c_ac * c_bc; }
    double min_concurrence() const { return std::min({c_ab, c_ac, c_bc}); }
};

enum class ClassLabel { GhzClass, WClass, BiseparableOrProduct };

inline const char* to_string(ClassLabel label) {
    switch (label) {
    case ClassLabel::GhzClass: return "GHZ_CLASS";
    case ClassLabel::WClass: return "W_CLASS";
    case ClassLabel::BiseparableOrProduct: return "BISEPARABLE_OR_PRODUCT";
    }
    return "UNKNOWN";
}

struct KappaRelation {
    double kappa = 1.0;
};

struct LuePartner {
    CanonicalCoefficients coefficients;
    KappaRelation kappa;
};

// ---------------------------------------------------------------------------
// Reference states

inline CanonicalCoefficients ghz_coefficients() {
    const double h = 1.0 / std::numbers::sqrt2;
    return {{h, 0.0, 0.0, 0.0, h}, 0.0};
}

/// (|000> + |111>)/sqrt(2)
inline StateVector standard_ghz() { return state_from_canonical(ghz_coefficients()); }

/// (|001> + |010> + |100>)/sqrt(3)
inline StateVector standard_w() {
    const double t = 1.0 / std::sqrt(3.0);
    return StateVector::from_terms({{"001", t}, {"010", t}, {"100", t}});
}

// ---------------------------------------------------------------------------
// Closed forms in the canonical coefficients

namespace detail {

struct CanonicalConcurrences {
    double c_ab, c_ac, c_bc, tau;
};

inline CanonicalConcurrences canonical_concurrences(const CanonicalCoefficients& c) {
    const auto& l = c.lambda;
    const Complex cross = l[2] * l[3] - std::polar(l[1] * l[4], c.phi);
    return {2.0 * l[0] * l[3], 2.0 * l[0] * l[2], 2.0 * std::abs(cross), 4.0 * l[0] * l[0] * l[4] * l[4]};
}

// arccos with a narrow clamp window; anything further out is reported.
inline double checked_arccos(double ratio, const Tolerances& tol) {
    if (!std::isfinite(ratio) || std::abs(ratio) > 1.0 + tol.arccos_slack)
        throw Error(ErrorCode::InconsistentPhase,
                    "entanglement-phase ratio " + std::to_string(ratio) + " lies outside [-1, 1]");
    return std::acos(std::clamp(ratio, -1.0, 1.0));
}

} // namespace detail

/// l0^2 C_BC^2 + l2^2 C_AB^2 - l1^2 tau, the numerator of cos(phi_5).
inline double ep_numerator(const CanonicalCoefficients& c) {
    const auto k = detail::canonical_concurrences(c);
    const auto& l = c.lambda;
    return l[0] * l[0] * k.c_bc * k.c_bc + l[2] * l[2] * k.c_ab * k.c_ab - l[1] * l[1] * k.tau;
}

/// Entanglement phase in [0, pi], or nullopt when C_AB C_AC C_BC vanishes.
inline std::optional<double> ep_phase(const CanonicalCoefficients& coefficients, const Tolerances& tol = {}) {
    const CanonicalCoefficients c = validated(coefficients, tol);
    const auto k = detail::canonical_concurrences(c);
    const double product = k.c_ab * k.c_ac * k.c_bc;
    if (product <= tol.ep_product) return std::nullopt;
    return detail::checked_arccos(ep_numerator(c) / product, tol);
}

inline InvariantSet invariants_from_canonical(const CanonicalCoefficients& coefficients, const Tolerances& tol = {}) {
    const CanonicalCoefficients c = validated(coefficients, tol);
    const auto k = detail::canonical_concurrences(c);
    return {k.c_ab, k.c_ac, k.c_bc, k.tau, ep_phase(c, tol)};
}

/// The LU-equivalent canonical partner with l0' = l0/kappa and
/// l2', l3', l4' scaled by kappa.
inline LuePartner lue_partner(const CanonicalCoefficients& coefficients, const Tolerances& tol = {}) {
    const CanonicalCoefficients c = validated(coefficients, tol);
    const auto& l = c.lambda;
    const double s24 = l[2] * l[2] + l[4] * l[4];
    const double s34 = l[3] * l[3] + l[4] * l[4];
    const auto k = detail::canonical_concurrences(c);
    const double numerator = k.tau + k.c_bc * k.c_bc;
    if (s24 <= tol.algebraic || s34 <= tol.algebraic || numerator <= tol.algebraic)
        throw Error(ErrorCode::DegenerateFamily, "LUE partner undefined for this degenerate family");

    const double denom = s24 * s34;
    const double kappa = std::sqrt(numerator / (4.0 * denom));
    const double a = (l[4] * l[4] * (l[2] * l[2] + l[3] * l[3] + l[4] * l[4]) - l[2] * l[2] * l[3] * l[3]) / denom;
    const double b =
        l[2] * l[3] * l[4] * (l[0] * l[0] + l[1] * l[1] - l[2] * l[2] - l[3] * l[3] - l[4] * l[4]) / denom;
    // l1 (a cos phi - i sin phi) + b, with the 1/l1 of the last term cancelled.
    const Complex z = (l[1] * Complex(a * std::cos(c.phi), -std::sin(c.phi)) + b) / kappa;

    CanonicalCoefficients out;
    out.lambda = {l[0] / kappa, std::abs(z), l[2] * kappa, l[3] * kappa, l[4] * kappa};
    out.phi = out.lambda[1] <= tol.algebraic ? 0.0 : wrap_phase(std::arg(z));
    if (out.lambda[1] <= tol.algebraic) out.lambda[1] = 0.0;
    return {out, {kappa}};
}

// ---------------------------------------------------------------------------
// Density-matrix oracles

namespace detail {

// Eigencomponents of rho at or below this weight are treated as exact zeros.
inline constexpr double kSpectralFloor = 1e-13;

inline Eigen::Matrix4cd spin_flip() {
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    return yy;
}

inline double det2(const DensityMatrix& rho) { return (rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0)).real(); }

inline double purity(const DensityMatrix& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

} // namespace detail

/// Wootters concurrence of a two-qubit density matrix.
///
/// The r_i (square roots of the eigenvalues of rho (Y(x)Y) rho* (Y(x)Y)) are
/// computed as the singular values of W^T (Y(x)Y) W, where the columns of W
/// are sqrt(p_i) v_i from rho's eigendecomposition. This avoids taking
/// square roots of rounding-level eigenvalues.
inline double mixed_concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw Error(ErrorCode::InvalidInput, "concurrence needs a two-qubit density matrix");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(Eigen::Matrix4cd(rho.matrix()));
    const auto& p = es.eigenvalues();
    int rank = 0;
    for (int i = 0; i < 4; ++i)
        if (p(i) > detail::kSpectralFloor) ++rank;
    if (rank == 0) return 0.0;

    Eigen::MatrixXcd w(4, rank);
    for (int i = 0, col = 0; i < 4; ++i)
        if (p(i) > detail::kSpectralFloor) w.col(col++) = std::sqrt(p(i)) * es.eigenvectors().col(i);
    const Eigen::MatrixXcd t = w.transpose() * detail::spin_flip() * w;
    const Eigen::VectorXd r = Eigen::JacobiSVD<Eigen::MatrixXcd>(t).singularValues();
    double c = r(0);
    for (Eigen::Index i = 1; i < r.size(); ++i) c -= r(i);
    return std::max(0.0, c);
}

/// Concurrence of the two-party reduction of a pure state.
inline double pair_concurrence(const StateVector& s, Party p, Party q, const Tolerances& tol = {}) {
    return mixed_concurrence(reduced_density(s, {p, q}, tol));
}

/// tau = C^2_{A(BC)} - C^2_AB - C^2_AC with C^2_{A(BC)} = 4 det rho_A.
inline double ckw_tangle(const StateVector& s, const Tolerances& tol = {}) {
    const double c_ab = pair_concurrence(s, Party::A, Party::B, tol);
    const double c_ac = pair_concurrence(s, Party::A, Party::C, tol);
    const double tau = 4.0 * detail::det2(reduced_density(s, {Party::A}, tol)) - c_ab * c_ab - c_ac * c_ac;
    return std::max(0.0, tau);
}

/// Numerator of cos(phi_5) from LU-invariant polynomials of the ket:
///   3 - 3 tr rho_A^2 - 3 tr rho_B^2 - tr rho_C^2 - tau/2 + 4 tr[(rho_A (x) rho_B) rho_AB].
/// Agrees with ep_numerator() on canonical kets.
inline double ep_numerator_oracle(const StateVector& s, double tau, const Tolerances& tol = {}) {
    const DensityMatrix ra = reduced_density(s, {Party::A}, tol);
    const DensityMatrix rb = reduced_density(s, {Party::B}, tol);
    const DensityMatrix rc = reduced_density(s, {Party::C}, tol);
    const DensityMatrix rab = reduced_density(s, {Party::A, Party::B}, tol);
    Eigen::Matrix4cd ab;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int m = 0; m < 2; ++m) ab(2 * i + k, 2 * j + m) = ra(i, j) * rb(k, m);
    const double kempe = (ab * rab.matrix()).trace().real();
    return 3.0 - 3.0 * detail::purity(ra) - 3.0 * detail::purity(rb) - detail::purity(rc) - 0.5 * tau + 4.0 * kempe;
}

/// All five invariants from density-matrix oracles; works for any ket.
inline InvariantSet oracle_invariants(const StateVector& s, const Tolerances& tol = {}) {
    InvariantSet inv;
    inv.c_ab = pair_concurrence(s, Party::A, Party::B, tol);
    inv.c_ac = pair_concurrence(s, Party::A, Party::C, tol);
    inv.c_bc = pair_concurrence(s, Party::B, Party::C, tol);
    inv.tau = std::max(0.0, 4.0 * detail::det2(reduced_density(s, {Party::A}, tol)) - inv.c_ab * inv.c_ab -
                                inv.c_ac * inv.c_ac);
    const double product = inv.concurrence_product();
    if (product > tol.ep_product) {
        // Near-indefinite states amplify rounding in the ratio, so clamp
        // without the consistency check used on canonical input.
        const double ratio = ep_numerator_oracle(s, inv.tau, tol) / product;
        inv.ep_phase = std::acos(std::clamp(ratio, -1.0, 1.0));
    }
    return inv;
}

inline ClassLabel classify(const StateVector& s, const Tolerances& tol = {}) {
    if (ckw_tangle(s, tol) > tol.tangle) return ClassLabel::GhzClass;
    for (Party p : kParties) {
        const double det = detail::det2(reduced_density(s, {p}, tol));
        const double largest = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * det)));
        if (det / largest <= tol.rank) return ClassLabel::BiseparableOrProduct;
    }
    return ClassLabel::WClass;
}

/// Largest componentwise difference between two fingerprints. Phases are
/// compared through cos(phi_5), which stays well conditioned at 0 and pi.
/// Definite against indefinite is an infinite distance.
inline double fingerprint_distance(const InvariantSet& a, const InvariantSet& b) {
    double d = std::max({std::abs(a.c_ab - b.c_ab), std::abs(a.c_ac - b.c_ac), std::abs(a.c_bc - b.c_bc),
                         std::abs(a.tau - b.tau)});
    if (a.ep_phase.has_value() != b.ep_phase.has_value()) return std::numeric_limits<double>::infinity();
    if (a.ep_phase) d = std::max(d, std::abs(std::cos(*a.ep_phase) - std::cos(*b.ep_phase)));
    return d;
}

/// Local-unitary equivalence of two genuinely tripartite kets.
inline bool lue_equivalent(const StateVector& a, const StateVector& b, const Tolerances& tol = {}) {
    if (classify(a, tol) == ClassLabel::BiseparableOrProduct || classify(b, tol) == ClassLabel::BiseparableOrProduct)
        throw Error(ErrorCode::UnsupportedClassification,
                    "invariant fingerprint is not complete for biseparable or product states");
    return fingerprint_distance(oracle_invariants(a, tol), oracle_invariants(b, tol)) <= tol.lue;
}

} // namespace locc3
