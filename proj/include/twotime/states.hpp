// Copyright 2026 The twotime Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twotime/core.hpp"

namespace twotime {

/// Computational basis ket |k> in dimension d.
inline Vector basis_ket(Index d, Index k) {
    if (k < 0 || k >= d) {
        throw Error(ErrorCode::kInvalidInput, "basis index out of range");
    }
    Vector v = Vector::Zero(d);
    v(k) = 1.0;
    return v;
}

/// <phi| (x) |psi>, i.e. alpha_ij = conj(phi_i) psi_j, normalized.
inline TwoTimeState pure_product(const Vector& post_bra, const Vector& pre_ket) {
    if (post_bra.size() != pre_ket.size() || post_bra.size() < 1) {
        throw Error(ErrorCode::kShapeMismatch, "pure_product: post-selection and preparation dims differ");
    }
    if (!(post_bra.norm() > tol::kDenominator) || !(pre_ket.norm() > tol::kDenominator)) {
        throw Error(ErrorCode::kDegenerateInput, "pure_product: zero vector");
    }
    return TwoTimeState::from_coeffs(post_bra.conjugate() * pre_ket.transpose());
}

/// Sum_k c_k Psi_k, rescaled to unit norm.
inline TwoTimeState superpose(std::span<const std::pair<Complex, TwoTimeState>> terms) {
    if (terms.empty()) {
        throw Error(ErrorCode::kInvalidInput, "superpose: no terms");
    }
    const Index d = terms.front().second.dim();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& [coef, state] : terms) {
        require_same_dim(d, state.dim(), "superpose");
        sum += coef * state.coeffs();
    }
    if (!(sum.norm() > tol::kEqual)) {
        throw Error(ErrorCode::kDegenerateInput, "superpose: terms cancel to the zero array");
    }
    return TwoTimeState::from_coeffs(std::move(sum));
}

inline TwoTimeState superpose(std::initializer_list<std::pair<Complex, TwoTimeState>> terms) {
    return superpose(std::span<const std::pair<Complex, TwoTimeState>>(terms.begin(), terms.size()));
}

struct EnsembleMember {
    double weight;
    TwoTimeState state;
};

/// Weighted list of pure 2-time states; weights are attempt frequencies.
class Ensemble {
   public:
    explicit Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
        if (members_.empty()) {
            throw Error(ErrorCode::kInvalidInput, "ensemble has no members");
        }
        const Index d = members_.front().state.dim();
        double total = 0.0;
        for (std::size_t r = 0; r < members_.size(); ++r) {
            const auto& m = members_[r];
            require_same_dim(d, m.state.dim(), "ensemble");
            if (!(m.weight > 0.0) || m.weight > 1.0 + tol::kEqual) {
                throw Error(ErrorCode::kInvalidInput,
                            "ensemble member " + std::to_string(r) + ": weight must lie in (0, 1]");
            }
            total += m.weight;
        }
        if (std::abs(total - 1.0) > tol::kEqual) {
            throw Error(ErrorCode::kNotNormalized,
                        "ensemble weights sum to " + std::to_string(total) + ", expected 1");
        }
    }

    static Ensemble pure(TwoTimeState state) { return Ensemble({{1.0, std::move(state)}}); }

    Index dim() const noexcept { return members_.front().state.dim(); }
    std::size_t size() const noexcept { return members_.size(); }
    const std::vector<EnsembleMember>& members() const noexcept { return members_; }

   private:
    std::vector<EnsembleMember> members_;
};

/// eta = sum_r p_r v(Psi_r) v(Psi_r)^dagger
inline DensityVector density_from_ensemble(const Ensemble& e) {
    const Index n = e.dim() * e.dim();
    Matrix mat = Matrix::Zero(n, n);
    for (const auto& m : e.members()) {
        const Vector v = m.state.vectorized();
        mat += m.weight * outer(v, v);
    }
    // Kill rounding asymmetry so the Hermitian check is exact.
    mat = (0.5 * (mat + mat.adjoint())).eval();
    return DensityVector::normalized(std::move(mat));
}

inline DensityVector density_from_state(const TwoTimeState& psi) {
    return density_from_ensemble(Ensemble::pure(psi));
}

struct PositivityReport {
    bool is_positive;
    double min_eigenvalue;
};

/// Positivity of an arbitrary Hermitian array (V . eta . V^dagger >= 0 for all V
/// is equivalent to ordinary positive semidefiniteness under the row-major layout).
inline PositivityReport positivity_check(const Matrix& mat) {
    if (mat.rows() != mat.cols()) {
        throw Error(ErrorCode::kShapeMismatch, "positivity_check: array must be square");
    }
    if (double h = hermitian_defect(mat); h > tol::kEqual) {
        throw Error(ErrorCode::kInvalidInput, "positivity_check: not Hermitian (defect " + std::to_string(h) + ")");
    }
    const Matrix sym = 0.5 * (mat + mat.adjoint());
    const double lo = min_eigenvalue(sym);
    return {lo >= -tol::kPsd, lo};
}

inline PositivityReport positivity_check(const DensityVector& eta) {
    return positivity_check(eta.matrix());
}

/// Canonical ensemble of a density vector: eigenvectors as pure states, eigenvalues
/// as weights. Eigenvalues at or below the cutoff are dropped.
inline Ensemble eigen_ensemble(const DensityVector& eta) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(eta.matrix());
    const auto& values = solver.eigenvalues();
    double kept = 0.0;
    for (Index k = 0; k < values.size(); ++k) {
        if (values(k) > tol::kCutoff) kept += values(k);
    }
    std::vector<EnsembleMember> members;
    for (Index k = values.size() - 1; k >= 0; --k) {
        if (values(k) <= tol::kCutoff) continue;
        members.push_back({values(k) / kept, TwoTimeState::from_coeffs(unvectorize(solver.eigenvectors().col(k), eta.dim()))});
    }
    return Ensemble(std::move(members));
}

}  // namespace twotime
