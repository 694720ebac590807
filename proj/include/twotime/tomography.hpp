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

// Density-vector tomography with the 4 d^4 Kraus operators
//
//     (O_x + s O_y) / sqrt(8 d^3),   s in {+1, -1, +i, -i},
//
// where O_x = |i><j| for x = (i, j) and (x, y) runs over all ordered pairs.
//
// Outcome order is part of the wire format: lexicographic in (i, j, k, l, variant)
// with variants ordered [+, -, +i, -i]. Outcome index of (x, y, s) is
// 4 * (x * d^2 + y) + s, with x = i * d + j and y = k * d + l.
//
// Reconstruction. For a single Kraus operator A the pairing K . eta equals
// <a|eta|a> with a = conj(v(A)). The operators sum to sum_mu E^mu = I / d in the
// bipartite picture, so with trace-1 eta the unnormalized weights are
// w_mu = P(mu) / d. Polarization then recovers every entry:
//
//     w(+) - w(-)   = 4 c^2 Re eta_xy
//     w(+i) - w(-i) = 4 c^2 Im eta_xy,        c^2 = 1 / (8 d^3).

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "twotime/core.hpp"
#include "twotime/measurements.hpp"
#include "twotime/probability.hpp"

namespace twotime {

enum class TomographyVariant : int { kPlus = 0, kMinus = 1, kPlusI = 2, kMinusI = 3 };

inline constexpr std::array<Complex, 4> kVariantPhase = {Complex(1, 0), Complex(-1, 0), Complex(0, 1),
                                                         Complex(0, -1)};

struct TomographyIndex {
    Index i, j, k, l;
    TomographyVariant variant;
};

struct TomographySet {
    Dim dim;
    Measurement measurement;
    std::vector<TomographyIndex> index;

    std::size_t size() const noexcept { return index.size(); }
};

inline std::size_t tomography_outcome_count(Dim d) {
    const auto n = static_cast<std::size_t>(d.squared());
    return 4 * n * n;
}

inline std::size_t tomography_outcome_index(Dim d, Index x, Index y, TomographyVariant v) {
    return 4 * static_cast<std::size_t>(x * d.squared() + y) + static_cast<std::size_t>(v);
}

inline TomographySet build_tomography_set(Dim dim) {
    const Index d = dim.value();
    const Index n = dim.squared();
    const double c = 1.0 / std::sqrt(8.0 * static_cast<double>(d * d * d));
    std::vector<Outcome> outcomes;
    std::vector<TomographyIndex> index;
    outcomes.reserve(tomography_outcome_count(dim));
    index.reserve(tomography_outcome_count(dim));
    for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y) {
            for (int s = 0; s < 4; ++s) {
                Matrix a = Matrix::Zero(d, d);
                a(x / d, x % d) += c;
                a(y / d, y % d) += c * kVariantPhase[s];
                const auto variant = static_cast<TomographyVariant>(s);
                index.push_back({x / d, x % d, y / d, y % d, variant});
                outcomes.push_back({std::to_string(outcomes.size()), {KrausOperator(std::move(a))}});
            }
        }
    }
    return {dim, Measurement(std::move(outcomes)), std::move(index)};
}

inline std::vector<double> predict_probabilities(const DensityVector& eta, const TomographySet& ts) {
    require_same_dim(eta.dim(), ts.dim.value(), "predict_probabilities");
    return prob_density(eta, ts.measurement);
}

namespace detail {

inline void validate_tomography_input(std::span<const double> probs, Dim dim) {
    const std::size_t expected = tomography_outcome_count(dim);
    if (probs.size() != expected) {
        throw Error(ErrorCode::kMalformedData, "tomography data: expected " + std::to_string(expected) +
                                                   " probabilities, got " + std::to_string(probs.size()));
    }
    double total = 0.0;
    for (std::size_t mu = 0; mu < probs.size(); ++mu) {
        if (!(probs[mu] >= -1e-9)) {
            throw Error(ErrorCode::kMalformedData, "tomography data: entry " + std::to_string(mu) + " is negative");
        }
        total += probs[mu];
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw Error(ErrorCode::kMalformedData,
                    "tomography data: probabilities sum to " + std::to_string(total) + ", expected 1");
    }
}

/// Clips negative eigenvalues and rescales to trace 1. Fails if the most negative
/// eigenvalue is below -clip_tolerance (pass a negative tolerance to always clip).
inline DensityVector project_to_density(const Matrix& estimate, double clip_tolerance) {
    const Matrix h = 0.5 * (estimate + estimate.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    Eigen::VectorXd values = solver.eigenvalues();
    if (clip_tolerance >= 0.0 && values.minCoeff() < -clip_tolerance) {
        throw Error(ErrorCode::kMalformedData, "tomography data: reconstruction has eigenvalue " +
                                                   std::to_string(values.minCoeff()) +
                                                   "; data are not consistent with a density vector");
    }
    values = values.cwiseMax(0.0);
    if (!(values.sum() > tol::kDenominator)) {
        throw Error(ErrorCode::kMalformedData, "tomography data: reconstruction vanishes");
    }
    Matrix rho = solver.eigenvectors() * values.asDiagonal() * solver.eigenvectors().adjoint();
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return DensityVector::normalized(std::move(rho));
}

}  // namespace detail

/// Exact linear inversion by polarization. Intended for noiseless probabilities;
/// inconsistent data beyond a 1e-6 eigenvalue violation are rejected.
inline DensityVector reconstruct(std::span<const double> probs, Dim dim) {
    detail::validate_tomography_input(probs, dim);
    const Index n = dim.squared();
    const double d = static_cast<double>(dim.value());
    const double c2 = 1.0 / (8.0 * d * d * d);
    auto weight = [&](Index x, Index y, TomographyVariant v) {
        return probs[tomography_outcome_index(dim, x, y, v)] / d;
    };
    auto polarize = [&](Index x, Index y) {
        const double re = weight(x, y, TomographyVariant::kPlus) - weight(x, y, TomographyVariant::kMinus);
        const double im = weight(x, y, TomographyVariant::kPlusI) - weight(x, y, TomographyVariant::kMinusI);
        return Complex(re, im) / (4.0 * c2);
    };
    Matrix estimate(n, n);
    for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y) {
            // (x, y) and (y, x) both measure eta_xy; average them.
            estimate(x, y) = 0.5 * (polarize(x, y) + std::conj(polarize(y, x)));
        }
    }
    return detail::project_to_density(estimate, 1e-6);
}

/// Least-squares inversion for noisy (finite-count) frequencies, followed by
/// eigenvalue clipping. Never rejects data for being slightly non-positive.
inline DensityVector reconstruct_least_squares(std::span<const double> probs, Dim dim) {
    detail::validate_tomography_input(probs, dim);
    const Index n = dim.squared();
    const double d = static_cast<double>(dim.value());
    const double c = 1.0 / std::sqrt(8.0 * d * d * d);
    const auto rows = static_cast<Index>(probs.size());

    // Real parameters: eta_xx, then (Re eta_xy, Im eta_xy) for x < y.
    auto pair_column = [n](Index x, Index y) {
        // Columns of the x<y pairs are laid out after the n diagonal entries.
        const Index before = x * n - x * (x + 1) / 2;  // pairs with smaller first index
        return n + 2 * (before + (y - x - 1));
    };
    Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows, n * n);
    Eigen::VectorXd rhs(rows);
    for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y) {
            for (int s = 0; s < 4; ++s) {
                const auto row = static_cast<Index>(tomography_outcome_index(dim, x, y, TomographyVariant(s)));
                rhs(row) = probs[static_cast<std::size_t>(row)] / d;
                // a = c (e_x + conj(s) e_y); w = <a|eta|a>.
                const Complex ax = c;
                const Complex ay = c * std::conj(kVariantPhase[s]);
                if (x == y) {
                    design(row, x) += std::norm(ax + ay);
                    continue;
                }
                design(row, x) += std::norm(ax);
                design(row, y) += std::norm(ay);
                // conj(a_x) a_y eta_xy + c.c. = 2 Re(g eta_xy) with g = conj(a_x) a_y.
                const Index lo = std::min(x, y);
                const Index hi = std::max(x, y);
                const Complex g = (x < y) ? std::conj(ax) * ay : std::conj(ay) * ax;
                const Index col = pair_column(lo, hi);
                design(row, col) += 2.0 * g.real();
                design(row, col + 1) += -2.0 * g.imag();
            }
        }
    }
    const Eigen::VectorXd theta = design.colPivHouseholderQr().solve(rhs);
    Matrix estimate = Matrix::Zero(n, n);
    for (Index x = 0; x < n; ++x) {
        estimate(x, x) = theta(x);
        for (Index y = x + 1; y < n; ++y) {
            const Index col = pair_column(x, y);
            estimate(x, y) = Complex(theta(col), theta(col + 1));
            estimate(y, x) = std::conj(estimate(x, y));
        }
    }
    return detail::project_to_density(estimate, -1.0);
}

}  // namespace twotime
