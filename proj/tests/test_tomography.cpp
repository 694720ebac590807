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


#include <gtest/gtest.h>

#include "test_support.hpp"

namespace twotime {
namespace {

using testing::Rng;

TEST(TomographySet, OutcomeCounts) {
    for (Index d = 1; d <= 3; ++d) {
        const auto ts = build_tomography_set(Dim(d));
        EXPECT_EQ(ts.size(), static_cast<std::size_t>(4 * d * d * d * d));
        EXPECT_EQ(ts.measurement.size(), ts.size());
        EXPECT_TRUE(ts.measurement.is_detailed());
    }
}

TEST(TomographySet, IsCompleteByDirectSummation) {
    for (Index d = 1; d <= 4; ++d) {
        const auto ts = build_tomography_set(Dim(d));
        Matrix total = Matrix::Zero(d, d);
        for (const auto& o : ts.measurement.outcomes()) total += o.kraus[0].matrix().adjoint() * o.kraus[0].matrix();
        EXPECT_LE(max_abs(total - Matrix::Identity(d, d)), 1e-12) << "d=" << d;
    }
}

TEST(TomographySet, OneDimensionalOperatorsAreScalars) {
    const auto ts = build_tomography_set(Dim(1));
    ASSERT_EQ(ts.size(), 4u);
    for (const auto& o : ts.measurement.outcomes()) EXPECT_EQ(o.kraus[0].matrix().size(), 1);
}

TEST(TomographySet, BipartiteImagesSumToIdentityOverD) {
    for (Index d = 2; d <= 3; ++d) {
        const auto ts = build_tomography_set(Dim(d));
        Matrix total = Matrix::Zero(d * d, d * d);
        for (const auto& o : ts.measurement.outcomes()) {
            // E = sum |a><a| with a = conj(v(A)), built here entry by entry.
            const Matrix& a = o.kraus[0].matrix();
            for (Index i = 0; i < d; ++i)
                for (Index j = 0; j < d; ++j)
                    for (Index k = 0; k < d; ++k)
                        for (Index l = 0; l < d; ++l) total(i * d + j, k * d + l) += std::conj(a(i, j)) * a(k, l);
        }
        EXPECT_LE(max_abs(total - Matrix::Identity(d * d, d * d) / double(d)), 1e-12);
    }
}

TEST(TomographySet, OutcomeOrderMatchesIndexTable) {
    const Dim d(2);
    const auto ts = build_tomography_set(d);
    for (std::size_t mu = 0; mu < ts.size(); ++mu) {
        const auto& ix = ts.index[mu];
        EXPECT_EQ(tomography_outcome_index(d, ix.i * 2 + ix.j, ix.k * 2 + ix.l, ix.variant), mu);
    }
}

TEST(Predict, MatchesDensityRule) {
    Rng rng(61);
    const auto ts = build_tomography_set(Dim(2));
    const auto eta = testing::random_density(rng, 2);
    EXPECT_LE(testing::max_deviation(predict_probabilities(eta, ts), prob_density(eta, ts.measurement)), 1e-15);
}

TEST(Predict, MaximallyMixedIsUniformWithinEachVariant) {
    const auto ts = build_tomography_set(Dim(2));
    const auto p = predict_probabilities(DensityVector::from_matrix(Matrix::Identity(4, 4) / 4.0), ts);
    // Off-diagonal pairs (x != y) all share one value; the x == y pairs depend on the phase.
    double off = -1.0;
    for (std::size_t mu = 0; mu < p.size(); ++mu) {
        const auto& ix = ts.index[mu];
        if (ix.i * 2 + ix.j == ix.k * 2 + ix.l) continue;
        if (off < 0) off = p[mu];
        EXPECT_NEAR(p[mu], off, 1e-15);
    }
}

TEST(Predict, ScaleInvariant) {
    Rng rng(62);
    const auto ts = build_tomography_set(Dim(2));
    const auto eta = testing::random_density(rng, 2);
    EXPECT_LE(testing::max_deviation(detail::prob_density_raw(3.5 * eta.matrix(), ts.measurement),
                                     predict_probabilities(eta, ts)),
              1e-14);
}

TEST(Reconstruct, RoundTripOnRandomDensityVectors) {
    Rng rng(63);
    for (Index d = 2; d <= 3; ++d) {
        const auto ts = build_tomography_set(Dim(d));
        for (int t = 0; t < 50; ++t) {
            const auto eta = testing::random_density(rng, d);
            const auto rec = reconstruct(predict_probabilities(eta, ts), Dim(d));
            EXPECT_LE((rec.matrix() - eta.matrix()).norm(), 1e-9);
            EXPECT_LE(max_abs(rec.matrix() - eta.matrix()), 1e-10);
        }
    }
}

TEST(Reconstruct, RoundTripOnPureStates) {
    Rng rng(64);
    const auto ts = build_tomography_set(Dim(3));
    const auto eta = density_from_state(testing::random_state(rng, 3));
    EXPECT_LE((reconstruct(predict_probabilities(eta, ts), Dim(3)).matrix() - eta.matrix()).norm(), 1e-9);
}

TEST(Reconstruct, SeparatesPureSuperpositionFromMixture) {
    const auto ts = build_tomography_set(Dim(2));
    const auto pure = reconstruct(predict_probabilities(density_from_state(testing::correlated_superposition()), ts), Dim(2));
    const auto mixed = reconstruct(predict_probabilities(density_from_ensemble(testing::correlated_mixture()), ts), Dim(2));
    // They differ only in the two coherences eta_03 = eta_30 = 1/2.
    EXPECT_NEAR(max_abs(pure.matrix() - mixed.matrix()), 0.5, 1e-10);
    EXPECT_NEAR((pure.matrix() - mixed.matrix()).norm(), 1.0 / std::sqrt(2.0), 1e-10);
}

TEST(Reconstruct, PureCornerIsRankOne) {
    const auto ts = build_tomography_set(Dim(2));
    const auto eta = density_from_state(pure_product(basis_ket(2, 0), basis_ket(2, 0)));
    const auto rec = reconstruct(predict_probabilities(eta, ts), Dim(2));
    const Eigen::VectorXd ev = hermitian_eigenvalues(rec.matrix());
    EXPECT_NEAR(ev.maxCoeff(), 1.0, 1e-9);
}

TEST(Reconstruct, RejectsMalformedData) {
    const Dim d(2);
    std::vector<double> p(tomography_outcome_count(d), 1.0 / 64.0);
    EXPECT_THROW(reconstruct(std::vector<double>(10, 0.1), d), Error);
    auto neg = p;
    neg[0] = -0.01;
    neg[1] += 0.01;
    EXPECT_THROW(reconstruct(neg, d), Error);
    auto unnormalized = p;
    unnormalized[0] += 0.1;
    EXPECT_THROW(reconstruct(unnormalized, d), Error);
    // Equal probabilities do not come from any density vector: the polarization
    // estimate has a strongly negative eigenvalue.
    try {
        reconstruct(p, d);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kMalformedData);
    }
}

TEST(ReconstructLeastSquares, ExactOnNoiselessData) {
    Rng rng(65);
    for (Index d = 2; d <= 3; ++d) {
        const auto ts = build_tomography_set(Dim(d));
        const auto eta = testing::random_density(rng, d);
        const auto rec = reconstruct_least_squares(predict_probabilities(eta, ts), Dim(d));
        EXPECT_LE((rec.matrix() - eta.matrix()).norm(), 1e-9);
    }
}

TEST(ReconstructLeastSquares, MonteCarloCountsAtOneMillionSuccesses) {
    Rng rng(66);
    const Dim d(2);
    const auto ts = build_tomography_set(d);
    const auto eta = testing::random_density(rng, 2);
    // Success rate of the tomography measurement is 1/d^2, so 4e6 attempts give ~1e6 successes.
    const SimResult r = simulate_tomography(eta, ts, 4'000'000, 20260101);
    EXPECT_GE(r.successes, 990'000u);
    auto f = r.frequencies();
    f.resize(ts.size(), 0.0);
    const auto rec = reconstruct_least_squares(f, d);
    EXPECT_LE((rec.matrix() - eta.matrix()).norm(), 0.02);
}

}  // namespace
}  // namespace twotime
