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

// Analytic weak values on pure 2-time states and on density vectors.

#pragma once

#include <string>

#include "twotime/core.hpp"
#include "twotime/states.hpp"

namespace twotime {

struct WeakValueOptions {
    // Weak values of non-Hermitian operators are well defined but usually a mistake.
    bool allow_non_hermitian = false;
};

/// eta_w = I^dagger . eta = sum_r p_r conj(tr alpha_r) alpha_r. A 2-time-vector-shaped
/// array, generally not normalized.
struct WeakValueVector {
    Index dim;
    Matrix coeffs;
};

namespace detail {

inline void require_observable(const KrausOperator& obs, const WeakValueOptions& opts) {
    if (opts.allow_non_hermitian) return;
    if (double h = hermitian_defect(obs.matrix()); h > tol::kEqual) {
        throw Error(ErrorCode::kInvalidInput, "observable is not Hermitian (defect " + std::to_string(h) + ")");
    }
}

/// (A . X) / (I . X) for any 2-time-vector-shaped array X.
inline Complex weak_ratio(const Matrix& obs, const Matrix& x) {
    const Complex den = x.trace();
    if (!(std::abs(den) > tol::kDenominator)) {
        throw Error(ErrorCode::kUndefinedWeakValue, "weak value undefined: I . Psi vanishes");
    }
    return obs.cwiseProduct(x).sum() / den;
}

}  // namespace detail

/// A_w = (A . Psi) / (I . Psi); for <phi| (x) |psi> this is <phi|A|psi> / <phi|psi>.
inline Complex weak_value_pure(const KrausOperator& obs, const TwoTimeState& psi, WeakValueOptions opts = {}) {
    require_same_dim(obs.dim(), psi.dim(), "weak_value_pure");
    detail::require_observable(obs, opts);
    return detail::weak_ratio(obs.matrix(), psi.coeffs());
}

/// Computed over the eigen-ensemble of eta, which the result does not depend on.
inline WeakValueVector weak_value_vector(const DensityVector& eta) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(eta.matrix());
    const Index d = eta.dim();
    Matrix acc = Matrix::Zero(d, d);
    for (Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const double p = solver.eigenvalues()(k);
        if (p <= 0.0) continue;
        const Matrix alpha = unvectorize(solver.eigenvectors().col(k), d);
        acc += p * std::conj(alpha.trace()) * alpha;
    }
    return {d, std::move(acc)};
}

/// A_w = (A . eta_w) / (I . eta_w)
inline Complex weak_value_ensemble(const KrausOperator& obs, const DensityVector& eta, WeakValueOptions opts = {}) {
    require_same_dim(obs.dim(), eta.dim(), "weak_value_ensemble");
    detail::require_observable(obs, opts);
    return detail::weak_ratio(obs.matrix(), weak_value_vector(eta).coeffs);
}

/// The pure 2-time state proportional to eta_w, which reproduces every weak value of eta.
inline TwoTimeState weak_equivalent_pure(const DensityVector& eta) {
    WeakValueVector w = weak_value_vector(eta);
    if (!(w.coeffs.norm() > tol::kEqual)) {
        throw Error(ErrorCode::kNoEquivalentState,
                    "weak value vector vanishes; no pure 2-time state reproduces these weak values");
    }
    return TwoTimeState::from_coeffs(std::move(w.coeffs));
}

}  // namespace twotime
