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

// Detailed and coarse-grained measurements between preparation and post-selection.
//
// An outcome mu carries an explicit set of Kraus operators {A^mu_chi}. Coarse
// graining is never collapsed to summed POVM elements: 2-time statistics depend on
// the Kraus density vector K^mu = sum_chi v(A) v(A)^dagger, which sum_chi A^dagger A
// does not determine.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twotime/core.hpp"

namespace twotime {

struct Outcome {
    std::string name;
    std::vector<KrausOperator> kraus;
};

class Measurement {
   public:
    explicit Measurement(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
        if (outcomes_.empty()) {
            throw Error(ErrorCode::kInvalidInput, "measurement has no outcomes");
        }
        const Index d = outcomes_.front().kraus.empty() ? 0 : outcomes_.front().kraus.front().dim();
        Matrix total = Matrix::Zero(d, d);
        for (std::size_t mu = 0; mu < outcomes_.size(); ++mu) {
            const auto& out = outcomes_[mu];
            if (out.kraus.empty()) {
                throw Error(ErrorCode::kInvalidInput, "measurement outcome " + std::to_string(mu) + " is empty");
            }
            for (const auto& a : out.kraus) {
                require_same_dim(d, a.dim(), "measurement");
                total += a.matrix().adjoint() * a.matrix();
            }
        }
        defect_ = max_abs(total - Matrix::Identity(d, d));
    }

    /// One Kraus operator per outcome, outcomes named "0", "1", ...
    static Measurement detailed(const std::vector<Matrix>& ops) {
        std::vector<Outcome> outcomes;
        outcomes.reserve(ops.size());
        for (std::size_t k = 0; k < ops.size(); ++k) {
            outcomes.push_back({std::to_string(k), {KrausOperator(ops[k])}});
        }
        return Measurement(std::move(outcomes));
    }

    static Measurement coarse(const std::vector<std::vector<Matrix>>& sets) {
        std::vector<Outcome> outcomes;
        outcomes.reserve(sets.size());
        for (std::size_t k = 0; k < sets.size(); ++k) {
            Outcome out{std::to_string(k), {}};
            for (const auto& m : sets[k]) out.kraus.emplace_back(m);
            outcomes.push_back(std::move(out));
        }
        return Measurement(std::move(outcomes));
    }

    Index dim() const noexcept { return outcomes_.front().kraus.front().dim(); }
    std::size_t size() const noexcept { return outcomes_.size(); }
    const std::vector<Outcome>& outcomes() const noexcept { return outcomes_; }
    const Outcome& operator[](std::size_t mu) const { return outcomes_.at(mu); }

    /// ||sum A^dagger A - I|| (largest entry modulus).
    double completeness_defect() const noexcept { return defect_; }
    bool is_complete() const noexcept { return defect_ <= tol::kPsd; }

    bool is_detailed() const noexcept {
        for (const auto& out : outcomes_) {
            if (out.kraus.size() != 1) return false;
        }
        return true;
    }

   private:
    std::vector<Outcome> outcomes_;
    double defect_ = 0.0;
};

inline void require_complete(const Measurement& m, const char* what) {
    if (!m.is_complete()) {
        throw Error(ErrorCode::kIncompleteMeasurement, std::string(what) + ": measurement is not complete (defect " +
                                                           std::to_string(m.completeness_defect()) + ")");
    }
}

/// K^mu = sum_chi v(A_chi) v(A_chi)^dagger
inline KrausDensityVector kraus_density_vector(std::span<const KrausOperator> outcome) {
    if (outcome.empty()) {
        throw Error(ErrorCode::kInvalidInput, "kraus_density_vector: empty Kraus set");
    }
    const Index d = outcome.front().dim();
    Matrix k = Matrix::Zero(d * d, d * d);
    for (const auto& a : outcome) {
        require_same_dim(d, a.dim(), "kraus_density_vector");
        const Vector v = a.vectorized();
        k += outer(v, v);
    }
    k = (0.5 * (k + k.adjoint())).eval();
    return KrausDensityVector::from_matrix(std::move(k));
}

inline std::vector<KrausDensityVector> kraus_density_vectors(const Measurement& m) {
    std::vector<KrausDensityVector> out;
    out.reserve(m.size());
    for (const auto& o : m.outcomes()) out.push_back(kraus_density_vector(o.kraus));
    return out;
}

/// A Kraus realization of K from its eigendecomposition: A_k = sqrt(lambda_k) unvec(u_k).
inline std::vector<KrausOperator> kraus_operators_of(const KrausDensityVector& k) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(k.matrix());
    std::vector<KrausOperator> ops;
    for (Index c = solver.eigenvalues().size() - 1; c >= 0; --c) {
        const double lambda = solver.eigenvalues()(c);
        if (lambda <= tol::kCutoff) continue;
        ops.emplace_back(std::sqrt(lambda) * unvectorize(solver.eigenvectors().col(c), k.dim()));
    }
    if (ops.empty()) {
        ops.emplace_back(Matrix::Zero(k.dim(), k.dim()));
    }
    return ops;
}

struct CompletenessReport {
    bool complete;
    double defect;
};

inline CompletenessReport check_completeness(const Measurement& m) {
    return {m.is_complete(), m.completeness_defect()};
}

/// Sum_mu K^mu . I_2: contracts the t2 ket/dagger pair of every Kraus density vector.
/// The result is (sum A^dagger A)^T, so it equals I exactly for complete measurements.
inline Matrix partial_normalization_sum(std::span<const KrausDensityVector> ks) {
    if (ks.empty()) {
        throw Error(ErrorCode::kInvalidInput, "partial_normalization_sum: no Kraus density vectors");
    }
    const Index d = ks.front().dim();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& k : ks) {
        require_same_dim(d, k.dim(), "partial_normalization_sum");
        sum += partial_trace_first(k.matrix(), d);
    }
    return sum;
}

inline double partial_normalization_defect(std::span<const KrausDensityVector> ks) {
    const Matrix sum = partial_normalization_sum(ks);
    return max_abs(sum - Matrix::Identity(sum.rows(), sum.cols()));
}

inline double partial_normalization_defect(const Measurement& m) {
    return partial_normalization_defect(kraus_density_vectors(m));
}

/// Measurements agree iff their Kraus density vectors agree outcome by outcome
/// (positional correspondence; relabelled outcomes compare unequal).
inline bool measurements_equal(const Measurement& m1, const Measurement& m2) {
    if (m1.size() != m2.size()) {
        throw Error(ErrorCode::kShapeMismatch, "measurements_equal: outcome counts differ (" +
                                                   std::to_string(m1.size()) + " vs " + std::to_string(m2.size()) +
                                                   ")");
    }
    require_same_dim(m1.dim(), m2.dim(), "measurements_equal");
    for (std::size_t mu = 0; mu < m1.size(); ++mu) {
        const auto k1 = kraus_density_vector(m1[mu].kraus);
        const auto k2 = kraus_density_vector(m2[mu].kraus);
        if (max_abs(k1.matrix() - k2.matrix()) > tol::kPsd) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Completion of non-complete positive sets

inline constexpr const char* kDiscardOutcome = "discard";

struct CompletionResult {
    double scale;       // c
    Matrix remainder;   // E' = I - c sum E
    Measurement completed;  // sqrt(c E^mu) per outcome, then sqrt(E') as "discard"
};

/// Completes {E^mu} to c sum E^mu + E' = I. The default scale is the largest
/// admissible one, 1 / lambda_max(sum E^mu).
inline CompletionResult complete_operator_set(std::span<const Matrix> ops, std::optional<double> scale = {}) {
    if (ops.empty()) {
        throw Error(ErrorCode::kInvalidInput, "complete_operator_set: no operators");
    }
    const Index n = ops.front().rows();
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& e : ops) {
        require_square(e, n, "complete_operator_set");
        require_hermitian_psd(e, "complete_operator_set");
        sum += e;
    }
    const double top = hermitian_eigenvalues(0.5 * (sum + sum.adjoint())).maxCoeff();
    if (!(top > tol::kDenominator)) {
        throw Error(ErrorCode::kDegenerateInput, "complete_operator_set: operators sum to zero");
    }
    const double c = scale.value_or(1.0 / top);
    if (!(c > 0.0) || c > (1.0 + tol::kEqual) / top) {
        throw Error(ErrorCode::kInvalidInput, "complete_operator_set: scale outside (0, 1/lambda_max]");
    }
    Matrix remainder = Matrix::Identity(n, n) - c * sum;
    remainder = (0.5 * (remainder + remainder.adjoint())).eval();

    std::vector<Outcome> outcomes;
    for (std::size_t mu = 0; mu < ops.size(); ++mu) {
        outcomes.push_back({std::to_string(mu), {KrausOperator(psd_sqrt(c * ops[mu]))}});
    }
    outcomes.push_back({kDiscardOutcome, {KrausOperator(psd_sqrt(remainder))}});
    return {c, std::move(remainder), Measurement(std::move(outcomes))};
}

/// The same completion for a 2-time Kraus set that is not a measurement: every
/// outcome is rescaled by sqrt(c) and a discard outcome sqrt(I - c sum A^dagger A) is added.
inline CompletionResult complete_kraus_set(const std::vector<std::vector<Matrix>>& sets,
                                           std::optional<double> scale = {}) {
    if (sets.empty()) {
        throw Error(ErrorCode::kInvalidInput, "complete_kraus_set: no outcomes");
    }
    const Index d = sets.front().empty() ? 0 : sets.front().front().rows();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& set : sets) {
        if (set.empty()) throw Error(ErrorCode::kInvalidInput, "complete_kraus_set: empty outcome");
        for (const auto& a : set) {
            require_square(a, d, "complete_kraus_set");
            sum += a.adjoint() * a;
        }
    }
    const double top = hermitian_eigenvalues(0.5 * (sum + sum.adjoint())).maxCoeff();
    if (!(top > tol::kDenominator)) {
        throw Error(ErrorCode::kDegenerateInput, "complete_kraus_set: all Kraus operators vanish");
    }
    const double c = scale.value_or(1.0 / top);
    if (!(c > 0.0) || c > (1.0 + tol::kEqual) / top) {
        throw Error(ErrorCode::kInvalidInput, "complete_kraus_set: scale outside (0, 1/lambda_max]");
    }
    Matrix remainder = Matrix::Identity(d, d) - c * sum;
    remainder = (0.5 * (remainder + remainder.adjoint())).eval();

    std::vector<Outcome> outcomes;
    for (std::size_t mu = 0; mu < sets.size(); ++mu) {
        Outcome out{std::to_string(mu), {}};
        for (const auto& a : sets[mu]) out.kraus.emplace_back(std::sqrt(c) * a);
        outcomes.push_back(std::move(out));
    }
    outcomes.push_back({kDiscardOutcome, {KrausOperator(psd_sqrt(remainder))}});
    return {c, std::move(remainder), Measurement(std::move(outcomes))};
}

}  // namespace twotime
