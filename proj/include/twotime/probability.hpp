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

// Outcome probabilities conditioned on successful post-selection.
//
// Every rule has the ratio form P(mu) = w_mu / sum_nu w_nu, so stored arrays only
// matter up to a positive scale. A vanishing denominator means post-selection never
// succeeds; it is reported as kPostSelectionImpossible rather than NaN.

#pragma once

#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "twotime/core.hpp"
#include "twotime/measurements.hpp"
#include "twotime/states.hpp"

namespace twotime {

namespace detail {

inline std::vector<double> normalize_weights(std::vector<double> w, ErrorCode on_zero, const char* what) {
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(total > tol::kDenominator)) {
        throw Error(on_zero, std::string(what) + ": success probability is zero");
    }
    for (auto& x : w) x /= total;
    return w;
}

inline void require_detailed(const Measurement& m, const char* what) {
    if (!m.is_detailed()) {
        throw Error(ErrorCode::kInvalidInput,
                    std::string(what) + ": measurement is coarse-grained; one Kraus operator per outcome required");
    }
}

/// Density-vector rule on an arbitrary positive array (no trace normalization).
inline std::vector<double> prob_density_raw(const Matrix& mat, const Measurement& m) {
    require_complete(m, "prob_density");
    require_detailed(m, "prob_density");
    std::vector<double> w;
    w.reserve(m.size());
    for (const auto& out : m.outcomes()) w.push_back(sandwich_raw(out.kraus.front().matrix(), mat));
    return normalize_weights(std::move(w), ErrorCode::kPostSelectionImpossible, "prob_density");
}

inline std::vector<double> prob_coarse_raw(const Matrix& mat, const Measurement& m) {
    require_complete(m, "prob_coarse");
    std::vector<double> w;
    w.reserve(m.size());
    for (const auto& out : m.outcomes()) w.push_back(pair_raw(kraus_density_vector(out.kraus).matrix(), mat));
    return normalize_weights(std::move(w), ErrorCode::kPostSelectionImpossible, "prob_coarse");
}

}  // namespace detail

/// |A^mu . Psi|^2 / sum_nu |A^nu . Psi|^2
inline std::vector<double> prob_pure(const TwoTimeState& psi, const Measurement& m) {
    require_complete(m, "prob_pure");
    detail::require_detailed(m, "prob_pure");
    require_same_dim(psi.dim(), m.dim(), "prob_pure");
    std::vector<double> w;
    w.reserve(m.size());
    for (const auto& out : m.outcomes()) w.push_back(std::norm(contract_pure(out.kraus.front(), psi)));
    return detail::normalize_weights(std::move(w), ErrorCode::kPostSelectionImpossible, "prob_pure");
}

/// sum_r p_r |A^mu . Psi_r|^2 / sum_nu sum_s p_s |A^nu . Psi_s|^2
///
/// This is not the p-weighted average of the pure-state distributions: branches
/// that post-select more often are over-represented among successes.
inline std::vector<double> prob_ensemble(const Ensemble& e, const Measurement& m) {
    require_complete(m, "prob_ensemble");
    detail::require_detailed(m, "prob_ensemble");
    require_same_dim(e.dim(), m.dim(), "prob_ensemble");
    std::vector<double> w(m.size(), 0.0);
    for (std::size_t mu = 0; mu < m.size(); ++mu) {
        for (const auto& member : e.members()) {
            w[mu] += member.weight * std::norm(contract_pure(m[mu].kraus.front(), member.state));
        }
    }
    return detail::normalize_weights(std::move(w), ErrorCode::kPostSelectionImpossible, "prob_ensemble");
}

/// A^mu . eta . A^mu^dagger / sum_nu A^nu . eta . A^nu^dagger
inline std::vector<double> prob_density(const DensityVector& eta, const Measurement& m) {
    require_same_dim(eta.dim(), m.dim(), "prob_density");
    return detail::prob_density_raw(eta.matrix(), m);
}

/// K^mu . eta / sum_nu K^nu . eta for coarse-grained outcomes.
inline std::vector<double> prob_coarse(const DensityVector& eta, const Measurement& m) {
    require_same_dim(eta.dim(), m.dim(), "prob_coarse");
    return detail::prob_coarse_raw(eta.matrix(), m);
}

/// Relative probabilities of a set of Kraus density vectors that need not form a
/// measurement. Equivalent to completing the set, measuring, and discarding the
/// completion outcome.
inline std::vector<double> prob_relative(const DensityVector& eta, std::span<const KrausDensityVector> ks) {
    if (ks.empty()) throw Error(ErrorCode::kInvalidInput, "prob_relative: no outcomes");
    std::vector<double> w;
    w.reserve(ks.size());
    for (const auto& k : ks) w.push_back(pair(k, eta));
    return detail::normalize_weights(std::move(w), ErrorCode::kAllDiscarded, "prob_relative");
}

/// Drops the discard outcome of a completed measurement and renormalizes the rest.
inline std::vector<double> prob_kept(const DensityVector& eta, const Measurement& completed) {
    std::vector<double> full = prob_coarse(eta, completed);
    std::vector<double> kept;
    for (std::size_t mu = 0; mu < completed.size(); ++mu) {
        if (completed[mu].name != kDiscardOutcome) kept.push_back(full[mu]);
    }
    return detail::normalize_weights(std::move(kept), ErrorCode::kAllDiscarded, "prob_kept");
}

/// tr(E^mu rho) / sum_nu tr(E^nu rho) for bipartite operators that need not sum to I.
inline std::vector<double> prob_relative_bipartite(const Matrix& rho, std::span<const Matrix> ops) {
    if (ops.empty()) throw Error(ErrorCode::kInvalidInput, "prob_relative_bipartite: no operators");
    std::vector<double> w;
    w.reserve(ops.size());
    for (const auto& e : ops) {
        require_square(e, rho.rows(), "prob_relative_bipartite");
        double t = (e * rho).trace().real();
        if (t < 0.0 && t >= -tol::kEqual) t = 0.0;
        if (t < 0.0) {
            throw Error(ErrorCode::kInvalidInput, "prob_relative_bipartite: negative tr(E rho)");
        }
        w.push_back(t);
    }
    return detail::normalize_weights(std::move(w), ErrorCode::kAllDiscarded, "prob_relative_bipartite");
}

}  // namespace twotime
