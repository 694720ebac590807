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

using testing::ket;
using testing::Rng;

const double kS = 1.0 / std::sqrt(2.0);

TEST(PureProduct, CornerAndOffDiagonal) {
    const Vector k0 = basis_ket(2, 0);
    const Vector k1 = basis_ket(2, 1);
    const Matrix a = pure_product(k0, k0).coeffs();
    EXPECT_EQ(a(0, 0), Complex(1));
    EXPECT_EQ(a.cwiseAbs().sum(), 1.0);
    const Matrix b = pure_product(k0, k1).coeffs();
    EXPECT_EQ(b(0, 1), Complex(1));
    EXPECT_EQ(b.cwiseAbs().sum(), 1.0);
}

TEST(PureProduct, SuperposedPostSelection) {
    const Matrix a = pure_product(ket({kS, kS}), basis_ket(2, 0)).coeffs();
    EXPECT_NEAR(std::abs(a(0, 0) - kS), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a(1, 0) - kS), 0.0, 1e-15);
    EXPECT_EQ(a(0, 1), Complex(0));
    EXPECT_EQ(a(1, 1), Complex(0));
}

TEST(PureProduct, ConjugatesThePostSelectedBra) {
    // <phi| carries conj(phi): alpha = conj(phi) psi^T.
    const Complex i(0, 1);
    const Matrix a = pure_product(ket({kS, i * kS}), basis_ket(2, 0)).coeffs();
    EXPECT_NEAR(std::abs(a(1, 0) - (-i * kS)), 0.0, 1e-15);
}

TEST(Superpose, SingleTermIsIdentity) {
    Rng rng(21);
    const auto psi = testing::random_state(rng, 3);
    EXPECT_LE(max_abs(superpose({{Complex(1), psi}}).coeffs() - psi.coeffs()), 1e-15);
}

TEST(Superpose, CorrelatedSuperposition) {
    const Vector k0 = basis_ket(2, 0);
    const Vector k1 = basis_ket(2, 1);
    const auto psi = superpose({{kS, pure_product(k0, k0)}, {kS, pure_product(k1, k1)}});
    EXPECT_LE(max_abs(psi.coeffs() - Matrix::Identity(2, 2) * kS), 1e-15);
}

TEST(Superpose, CancellationIsAnError) {
    const auto psi = pure_product(basis_ket(2, 0), basis_ket(2, 0));
    try {
        superpose({{kS, psi}, {-kS, psi}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kDegenerateInput);
    }
}

TEST(Ensemble, ValidatesWeights) {
    const auto psi = pure_product(basis_ket(2, 0), basis_ket(2, 0));
    EXPECT_THROW(Ensemble({{0.5, psi}, {0.6, psi}}), Error);
    EXPECT_THROW(Ensemble({{0.0, psi}, {1.0, psi}}), Error);
    EXPECT_THROW(Ensemble({}), Error);
    EXPECT_NO_THROW(Ensemble({{0.25, psi}, {0.75, psi}}));
}

TEST(DensityFromEnsemble, SingleMemberIsProjector) {
    Rng rng(22);
    const auto psi = testing::random_state(rng, 3);
    const Vector v = psi.vectorized();
    EXPECT_LE(max_abs(density_from_state(psi).matrix() - v * v.adjoint()), 1e-15);
}

TEST(DensityFromEnsemble, CorrelatedMixtureIsDiagonal) {
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 0.5;
    expected(3, 3) = 0.5;
    EXPECT_LE(max_abs(density_from_ensemble(testing::correlated_mixture()).matrix() - expected), 1e-15);
}

TEST(DensityFromEnsemble, MatchesExplicitOuterProducts) {
    Rng rng(23);
    for (Index d = 2; d <= 3; ++d) {
        for (int t = 0; t < 20; ++t) {
            const auto e = testing::random_ensemble(rng, d, 1 + rng.below(4));
            EXPECT_LE(max_abs(density_from_ensemble(e).matrix() - testing::ref_density(e)), 1e-12);
        }
    }
}

TEST(DensityFromEnsemble, SandwichIsWeightedSquaredAmplitudes) {
    Rng rng(24);
    for (Index d = 2; d <= 4; ++d) {
        for (int t = 0; t < 20; ++t) {
            const auto e = testing::random_ensemble(rng, d, 3);
            const KrausOperator a(testing::random_matrix(rng, d, d));
            double expected = 0.0;
            for (const auto& m : e.members()) expected += m.weight * std::norm(contract_pure(a, m.state));
            EXPECT_NEAR(sandwich(a, density_from_ensemble(e)), expected, 1e-12);
        }
    }
}

TEST(Positivity, ConstructedDensityVectorsArePositive) {
    Rng rng(25);
    for (int t = 0; t < 30; ++t) {
        const auto e = testing::random_ensemble(rng, 2 + rng.below(2), 1 + rng.below(5));
        EXPECT_TRUE(positivity_check(density_from_ensemble(e)).is_positive);
    }
}

TEST(Positivity, ExplicitNegativeEigenvalue) {
    Eigen::VectorXd diag(4);
    diag << 1.0, -0.1, 0.05, 0.05;
    const Matrix mat = Matrix(diag.cast<Complex>().asDiagonal()) / 1.0;
    const PositivityReport r = positivity_check(mat);
    EXPECT_FALSE(r.is_positive);
    EXPECT_NEAR(r.min_eigenvalue, -0.1, 1e-14);
}

TEST(Positivity, MinEigenvalueMatchesKnownSpectrum) {
    Rng rng(26);
    const Matrix u = testing::random_unitary(rng, 9);
    Eigen::VectorXd spectrum(9);
    spectrum << -0.3, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8;
    const Matrix mat = u * spectrum.cast<Complex>().asDiagonal() * u.adjoint();
    const Matrix h = 0.5 * (mat + mat.adjoint());
    EXPECT_NEAR(positivity_check(h).min_eigenvalue, -0.3, 1e-12);
}

TEST(EigenEnsemble, ReproducesTheDensityVector) {
    Rng rng(27);
    for (Index d = 2; d <= 3; ++d) {
        const auto eta = testing::random_density(rng, d);
        EXPECT_LE(max_abs(density_from_ensemble(eigen_ensemble(eta)).matrix() - eta.matrix()), 1e-12);
    }
}

TEST(MixingInvariance, EnsemblesWithEqualDensityGiveEqualProbabilities) {
    Rng rng(28);
    for (int t = 0; t < 100; ++t) {
        const Index d = 2 + static_cast<Index>(rng.below(2));
        const auto e = testing::random_ensemble(rng, d, 3);
        const auto eta = density_from_ensemble(e);
        const auto other = eigen_ensemble(eta);  // a different ensemble with the same eta
        const auto m = testing::random_detailed_measurement(rng, d, 2 + rng.below(3));
        EXPECT_LE(testing::max_deviation(prob_ensemble(e, m), prob_ensemble(other, m)), 1e-12);
    }
}

}  // namespace
}  // namespace twotime
