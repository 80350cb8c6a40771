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
 * Dense linear algebra on three qubits: kets, single-party operators,
 * partial traces and Haar-random local unitaries.
 *
 * Basis labels are |q_A q_B q_C> in lexicographic order, qubit A being the
 * most significant bit of the amplitude index.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "locc3/canonical.hpp"
#include "locc3/errors.hpp"
#include "locc3/tolerances.hpp"

namespace locc3 {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

enum class Party : int { A = 0, B = 1, C = 2 };

inline constexpr std::array<Party, 3> kParties{Party::A, Party::B, Party::C};

inline constexpr int index_of(Party p) { return static_cast<int>(p); }

inline char to_char(Party p) { return "ABC"[index_of(p)]; }

inline Party party_from_char(char c) {
    switch (c) {
    case 'A': case 'a': return Party::A;
    case 'B': case 'b': return Party::B;
    case 'C': case 'c': return Party::C;
    default: throw Error(ErrorCode::InvalidInput, std::string("unknown party '") + c + "'");
    }
}

// Bit position of a party's qubit inside a basis index.
inline constexpr unsigned bit_of(Party p) { return 2u - static_cast<unsigned>(p); }

namespace detail {

inline bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline unsigned parse_label(std::string_view label) {
    if (label.size() != 3) throw Error(ErrorCode::InvalidInput, "basis label must have three bits");
    unsigned b = 0;
    for (char ch : label) {
        if (ch != '0' && ch != '1') throw Error(ErrorCode::InvalidInput, "basis label must be binary");
        b = (b << 1) | static_cast<unsigned>(ch - '0');
    }
    return b;
}

} // namespace detail

/// Eight complex amplitudes of a three-qubit ket.
class StateVector {
  public:
    using Amplitudes = Eigen::Matrix<Complex, 8, 1>;

    StateVector() : amp_(Amplitudes::Zero()) {}

    explicit StateVector(const Amplitudes& amp) : amp_(amp) {
        for (Eigen::Index i = 0; i < 8; ++i)
            if (!detail::finite(amp_(i))) throw Error(ErrorCode::InvalidInput, "amplitude is not finite");
    }

    /// Builds a ket from (label, amplitude) terms such as {"101", 0.5}.
    static StateVector from_terms(std::initializer_list<std::pair<std::string_view, Complex>> terms) {
        Amplitudes amp = Amplitudes::Zero();
        for (const auto& [label, value] : terms) amp(detail::parse_label(label)) += value;
        return StateVector(amp);
    }

    static StateVector basis(unsigned index) {
        Amplitudes amp = Amplitudes::Zero();
        amp(index) = 1.0;
        return StateVector(amp);
    }

    const Amplitudes& amplitudes() const { return amp_; }
    Complex operator[](unsigned index) const { return amp_(index); }
    Complex at(std::string_view label) const { return amp_(detail::parse_label(label)); }

    double norm_squared() const { return amp_.squaredNorm(); }
    double norm() const { return amp_.norm(); }

    StateVector normalized() const {
        const double n = norm();
        if (n == 0.0) throw Error(ErrorCode::InvalidInput, "cannot normalize the zero vector");
        return StateVector(amp_ / n);
    }

    bool is_normalized(double tol = 1e-12) const { return std::abs(norm() - 1.0) <= tol; }

    friend StateVector operator+(const StateVector& a, const StateVector& b) {
        return StateVector(a.amp_ + b.amp_);
    }
    friend StateVector operator*(Complex z, const StateVector& s) { return StateVector(z * s.amp_); }

    friend Complex inner(const StateVector& a, const StateVector& b) { return a.amp_.dot(b.amp_); }

  private:
    Amplitudes amp_;
};

/// A 2x2 operator acting on one party's qubit.
struct LocalOperator {
    Mat2 m = Mat2::Identity();
    Party party = Party::A;

    LocalOperator() = default;
    LocalOperator(const Mat2& matrix, Party p) : m(matrix), party(p) {
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                if (!detail::finite(m(r, c))) throw Error(ErrorCode::InvalidInput, "operator entry is not finite");
    }
};

// Pauli matrices and friends, as plain 2x2 matrices.
inline Mat2 identity2() { return Mat2::Identity(); }

inline Mat2 pauli_x() {
    Mat2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

inline Mat2 pauli_y() {
    Mat2 m;
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

inline Mat2 pauli_z() {
    Mat2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

/// Entries given row-major: [[m00, m01], [m10, m11]].
inline Mat2 mat2(Complex m00, Complex m01, Complex m10, Complex m11) {
    Mat2 m;
    m << m00, m01, m10, m11;
    return m;
}

inline bool is_unitary(const Mat2& u, double tol = 1e-12) {
    return ((u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff()) <= tol;
}

/// (M acting on op.party) |s>, unnormalized.
inline StateVector apply_local(const Mat2& m, Party party, const StateVector& s) {
    const unsigned bit = bit_of(party);
    const unsigned mask = 1u << bit;
    StateVector::Amplitudes out = StateVector::Amplitudes::Zero();
    for (unsigned b = 0; b < 8; ++b) {
        const unsigned row = (b >> bit) & 1u;
        const unsigned b0 = b & ~mask;
        out(b) = m(row, 0) * s[b0] + m(row, 1) * s[b0 | mask];
    }
    return StateVector(out);
}

inline StateVector apply_local(const LocalOperator& op, const StateVector& s) {
    return apply_local(op.m, op.party, s);
}

/// <s| M^dag M |s> for the operator acting on its party.
inline double branch_probability(const LocalOperator& op, const StateVector& s) {
    return apply_local(op, s).norm_squared();
}

/// Applies u_a (x) u_b (x) u_c.
inline StateVector apply_product(const Mat2& ua, const Mat2& ub, const Mat2& uc, const StateVector& s) {
    return apply_local(uc, Party::C, apply_local(ub, Party::B, apply_local(ua, Party::A, s)));
}

/// |<a|b>|; equals 1 exactly when the kets agree up to a global phase.
inline double fidelity_up_to_phase(const StateVector& a, const StateVector& b) {
    return std::abs(inner(a, b));
}

/// Ket of the canonical form for validated coefficients.
inline StateVector state_from_canonical(const CanonicalCoefficients& coefficients, const Tolerances& tol = {}) {
    const CanonicalCoefficients c = validated(coefficients, tol);
    StateVector::Amplitudes amp = StateVector::Amplitudes::Zero();
    amp(0b000) = c[0];
    amp(0b100) = std::polar(c[1], c.phi);
    amp(0b101) = c[2];
    amp(0b110) = c[3];
    amp(0b111) = c[4];
    // Coefficients are accepted up to tol.normalization; the ket is exact.
    return StateVector(amp).normalized();
}

/// Hermitian, unit-trace, positive semidefinite matrix on one or two qubits.
class DensityMatrix {
  public:
    explicit DensityMatrix(Eigen::MatrixXcd m, const Tolerances& tol = {}) : m_(std::move(m)) {
        const auto dim = m_.rows();
        if (m_.cols() != dim || (dim != 2 && dim != 4))
            throw Error(ErrorCode::InvalidInput, "density matrix must be 2x2 or 4x4");
        for (Eigen::Index r = 0; r < dim; ++r)
            for (Eigen::Index c = 0; c < dim; ++c)
                if (!detail::finite(m_(r, c))) throw Error(ErrorCode::InvalidInput, "density entry is not finite");
        if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol.algebraic)
            throw Error(ErrorCode::InvalidInput, "density matrix is not Hermitian");
        if (std::abs(m_.trace() - Complex(1.0)) > tol.density_trace)
            throw Error(ErrorCode::InvalidInput, "density matrix does not have unit trace");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol.psd)
            throw Error(ErrorCode::InvalidInput, "density matrix has a negative eigenvalue");
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return m_; }
    Complex operator()(int r, int c) const { return m_(r, c); }

  private:
    Eigen::MatrixXcd m_;
};

/// Partial trace over every party not in `keep`. The kept qubits stay in
/// A, B, C order, the earliest being most significant.
inline DensityMatrix reduced_density(const StateVector& s, std::vector<Party> keep, const Tolerances& tol = {}) {
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.empty() || keep.size() == 3)
        throw Error(ErrorCode::NothingTraced, "nothing traced: keep one or two parties");

    const auto local_index = [&](unsigned b) {
        unsigned idx = 0;
        for (Party p : keep) idx = (idx << 1) | ((b >> bit_of(p)) & 1u);
        return idx;
    };
    unsigned traced_mask = 0;
    for (Party p : kParties)
        if (std::find(keep.begin(), keep.end(), p) == keep.end()) traced_mask |= 1u << bit_of(p);

    const int dim = 1 << keep.size();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (unsigned b = 0; b < 8; ++b)
        for (unsigned bp = 0; bp < 8; ++bp)
            if ((b & traced_mask) == (bp & traced_mask))
                rho(local_index(b), local_index(bp)) += s[b] * std::conj(s[bp]);
    // Enforce exact hermiticity against rounding in the accumulation order.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(std::move(rho), tol);
}

/// Haar-distributed U(2) element, deterministic per seed: QR of a complex
/// Ginibre matrix with the phases of R's diagonal moved into Q.
inline LocalOperator random_haar_local_unitary(std::uint64_t seed, Party party) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Mat2 z;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(r, c) = Complex(re, im) / std::sqrt(2.0);
        }
    Eigen::HouseholderQR<Mat2> qr(z);
    const Mat2 q = qr.householderQ();
    const Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
    Mat2 phases = Mat2::Zero();
    for (int i = 0; i < 2; ++i) {
        const double a = std::abs(r(i, i));
        phases(i, i) = a > 0.0 ? r(i, i) / a : Complex(1.0);
    }
    return LocalOperator(q * phases, party);
}

} // namespace locc3
