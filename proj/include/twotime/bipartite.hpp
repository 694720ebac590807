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

// Isomorphism between 2-time objects and bipartite objects on H_A (x) H_B.
//
//   Psi = sum alpha_ij <i| (x) |j>      ->  |Psi>_AB = sum alpha_ij |i>_A |j>_B
//   A   = sum A_ij |i>_t2 (x) _t1<j|    ->  |a>_AB   = sum conj(A_ij) |i>_A |j>_B
//   K   = sum v(A) v(A)^dagger          ->  E        = sum |a><a| = conj(K)
//   eta                                 ->  rho_AB   = eta (same array)
//
// so that K . eta = tr(E rho). The map is tied to the computational basis.
//
// Factor A carries the Kraus output index (t2), factor B the input index (t1).
// Completeness sum A^dagger A = I therefore reads sum_mu tr_A(E^mu) = I_B.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "twotime/core.hpp"
#include "twotime/measurements.hpp"
#include "twotime/states.hpp"

namespace twotime {

class BipartiteDensity {
   public:
    static BipartiteDensity from_matrix(Matrix rho) {
        // Same invariants as a density vector.
        return BipartiteDensity(DensityVector::from_matrix(std::move(rho)));
    }

    Index dim() const noexcept { return eta_.dim(); }
    const Matrix& matrix() const noexcept { return eta_.matrix(); }

   private:
    friend BipartiteDensity density_to_bipartite(const DensityVector& eta);
    explicit BipartiteDensity(DensityVector eta) : eta_(std::move(eta)) {}

    DensityVector eta_;
};

class BipartiteOperator {
   public:
    static BipartiteOperator from_matrix(Matrix op) {
        if (op.rows() != op.cols()) throw Error(ErrorCode::kShapeMismatch, "bipartite operator must be square");
        const Index d = isqrt_exact(op.rows(), "bipartite operator");
        require_hermitian_psd(op, "bipartite operator");
        return BipartiteOperator(d, std::move(op));
    }

    Index dim() const noexcept { return dim_; }
    const Matrix& matrix() const noexcept { return op_; }

   private:
    BipartiteOperator(Index d, Matrix op) : dim_(d), op_(std::move(op)) {}

    Index dim_;
    Matrix op_;
};

inline Vector state_to_bipartite(const TwoTimeState& psi) {
    return psi.vectorized();
}

inline TwoTimeState bipartite_to_state(const Vector& psi_ab) {
    const Index d = isqrt_exact(psi_ab.size(), "bipartite_to_state");
    return TwoTimeState::from_coeffs(unvectorize(psi_ab, d));
}

inline BipartiteDensity density_to_bipartite(const DensityVector& eta) {
    return BipartiteDensity(eta);
}

inline DensityVector bipartite_to_density(const BipartiteDensity& rho) {
    return DensityVector::from_matrix(rho.matrix());
}

/// |a>_AB with entries conj(A_ij), row-major.
inline Vector kraus_to_bipartite_vector(const KrausOperator& a) {
    return a.vectorized().conjugate();
}

inline BipartiteOperator kdv_to_bipartite(const KrausDensityVector& k) {
    return BipartiteOperator::from_matrix(k.matrix().conjugate());
}

/// Pull-back of a positive bipartite operator: K = conj(E).
inline KrausDensityVector bipartite_to_kdv(const BipartiteOperator& e) {
    return KrausDensityVector::from_matrix(e.matrix().conjugate());
}

struct PairingCheck {
    double lhs;  // K . eta
    double rhs;  // tr(E rho)
    double defect;
};

inline PairingCheck pairing_equality_check(const KrausDensityVector& k, const DensityVector& eta) {
    require_same_dim(k.dim(), eta.dim(), "pairing_equality_check");
    const double lhs = pair(k, eta);
    const Matrix e = kdv_to_bipartite(k).matrix();
    const BipartiteDensity rho = density_to_bipartite(eta);
    const double rhs = (e * rho.matrix()).trace().real();
    return {lhs, rhs, std::abs(lhs - rhs)};
}

/// Sum_mu tr_A(E^mu): the bipartite image of sum A^dagger A.
inline Matrix measurement_partial_trace_sum(std::span<const BipartiteOperator> ops) {
    if (ops.empty()) throw Error(ErrorCode::kInvalidInput, "measurement_partial_trace_sum: no operators");
    const Index d = ops.front().dim();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& e : ops) {
        require_same_dim(d, e.dim(), "measurement_partial_trace_sum");
        sum += partial_trace_first(e.matrix(), d);
    }
    return sum;
}

/// ||sum_mu tr_A(E^mu) - I||; zero exactly for images of complete 2-time measurements.
inline double measurement_partial_trace_defect(std::span<const BipartiteOperator> ops) {
    const Matrix sum = measurement_partial_trace_sum(ops);
    return max_abs(sum - Matrix::Identity(sum.rows(), sum.cols()));
}

inline std::vector<BipartiteOperator> measurement_to_bipartite(const Measurement& m) {
    std::vector<BipartiteOperator> out;
    out.reserve(m.size());
    for (const auto& o : m.outcomes()) out.push_back(kdv_to_bipartite(kraus_density_vector(o.kraus)));
    return out;
}

struct PovmPullback {
    std::vector<KrausDensityVector> pulled_back;   // sum_mu K . I_2 = d I
    double supernormalization;                     // d
    double supernormalization_defect;              // ||sum_mu K . I_2 - d I||
    std::vector<KrausDensityVector> subnormalized; // pulled_back / d
    Measurement measurement;                       // Kraus realization of the subnormalized set
};

/// Maps a POVM on H_A (x) H_B to 2-time Kraus density vectors. The image overshoots the
/// 2-time normalization by exactly d; dividing by d gives a valid measurement.
inline PovmPullback povm_to_twotime(std::span<const BipartiteOperator> povm) {
    if (povm.empty()) throw Error(ErrorCode::kInvalidInput, "povm_to_twotime: no operators");
    const Index d = povm.front().dim();
    const Index n = d * d;
    Matrix total = Matrix::Zero(n, n);
    for (const auto& e : povm) {
        require_same_dim(d, e.dim(), "povm_to_twotime");
        total += e.matrix();
    }
    if (double off = max_abs(total - Matrix::Identity(n, n)); off > tol::kPsd) {
        throw Error(ErrorCode::kNotNormalized,
                    "povm_to_twotime: operators do not sum to the identity (off by " + std::to_string(off) + ")");
    }

    std::vector<KrausDensityVector> pulled;
    std::vector<KrausDensityVector> sub;
    std::vector<Outcome> outcomes;
    for (std::size_t mu = 0; mu < povm.size(); ++mu) {
        pulled.push_back(bipartite_to_kdv(povm[mu]));
        sub.push_back(KrausDensityVector::from_matrix(pulled.back().matrix() / static_cast<double>(d)));
        outcomes.push_back({std::to_string(mu), kraus_operators_of(sub.back())});
    }
    const Matrix sum = partial_normalization_sum(pulled);
    const double defect = max_abs(sum - static_cast<double>(d) * Matrix::Identity(d, d));
    return {std::move(pulled), static_cast<double>(d), defect, std::move(sub), Measurement(std::move(outcomes))};
}

}  // namespace twotime
