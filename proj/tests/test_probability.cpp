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
using testing::ket_bra;
using testing::Rng;

const double kS = 1.0 / std::sqrt(2.0);

void expect_distribution(const std::vector<double>& p) {
    EXPECT_NEAR(testing::sum(p), 1.0, 1e-12);
    for (double x : p) EXPECT_GE(x, 0.0);
}

TEST(ProbPure, CornerStateComputationalBasis) {
    const auto psi = pure_product(basis_ket(2, 0), basis_ket(2, 0));
    const auto m = Measurement::detailed(
        {ket_bra(basis_ket(2, 0), basis_ket(2, 0)), ket_bra(basis_ket(2, 1), basis_ket(2, 1))});
    EXPECT_LE(testing::max_deviation(prob_pure(psi, m), {1.0, 0.0}), 1e-15);
}

TEST(ProbPure, CorrelatedSuperpositionIsHalfForEveryDirection) {
    Rng rng(41);
    for (int t = 0; t < 50; ++t) {
        const auto p = prob_pure(testing::correlated_superposition(), testing::random_bloch_projective(rng));
        EXPECT_LE(testing::max_deviation(p, {0.5, 0.5}), 1e-12);
    }
}

TEST(ProbPure, ProductStatesMatchMatrixElements) {
    Rng rng(42);
    for (Index d = 2; d <= 3; ++d) {
        for (int t = 0; t < 20; ++t) {
            const Vector phi = testing::random_unit_vector(rng, d);
            const Vector psi = testing::random_unit_vector(rng, d);
            const auto m = testing::random_detailed_measurement(rng, d, 3);
            std::vector<double> w;
            for (const auto& o : m.outcomes()) w.push_back(std::norm(phi.dot(o.kraus[0].matrix() * psi)));
            expect_distribution(prob_pure(pure_product(phi, psi), m));
            EXPECT_LE(testing::max_deviation(prob_pure(pure_product(phi, psi), m), testing::normalized(w)), 1e-12);
        }
    }
}

TEST(ProbPure, OrthogonalPostSelectionIsADomainError) {
    // Post-selecting |1> after preparing |0> with an identity-like measurement never succeeds.
    const auto psi = pure_product(basis_ket(2, 1), basis_ket(2, 0));
    const auto m = Measurement::detailed({Matrix::Identity(2, 2)});
    try {
        prob_pure(psi, m);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kPostSelectionImpossible);
        EXPECT_TRUE(is_domain_error(e.code()));
    }
}

TEST(ProbPure, RejectsIncompleteAndCoarseMeasurements) {
    const auto psi = testing::correlated_superposition();
    try {
        prob_pure(psi, Measurement::detailed({ket_bra(basis_ket(2, 0), basis_ket(2, 0))}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kIncompleteMeasurement);
    }
    const Measurement lumped = Measurement::coarse({{ket_bra(basis_ket(2, 0), basis_ket(2, 0)),
                                                     ket_bra(basis_ket(2, 1), basis_ket(2, 1))}});
    EXPECT_THROW(prob_pure(psi, lumped), Error);
}

TEST(ProbEnsemble, SingletonEqualsPure) {
    Rng rng(43);
    const auto psi = testing::random_state(rng, 3);
    const auto m = testing::random_detailed_measurement(rng, 3, 4);
    EXPECT_LE(testing::max_deviation(prob_ensemble(Ensemble::pure(psi), m), prob_pure(psi, m)), 1e-14);
}

TEST(ProbEnsemble, CorrelatedMixtureIsHalfForEveryDirection) {
    Rng rng(44);
    for (int t = 0; t < 50; ++t) {
        const auto p = prob_ensemble(testing::correlated_mixture(), testing::random_bloch_projective(rng));
        EXPECT_LE(testing::max_deviation(p, {0.5, 0.5}), 1e-12);
    }
}

TEST(ProbEnsemble, SelectionBiasScenario) {
    const auto p = prob_ensemble(selection_bias_ensemble(), selection_bias_m1());
    EXPECT_LE(testing::max_deviation(p, {2.0 / 3.0, 1.0 / 3.0}), 1e-15);
    EXPECT_LE(testing::max_deviation(p, testing::ref_probabilities(selection_bias_ensemble(), selection_bias_m1())),
              1e-15);
}

TEST(ProbEnsemble, DiffersFromNaiveWeightedAverage) {
    const auto e = selection_bias_ensemble();
    const auto m = selection_bias_m1();
    const auto naive = testing::naive_weighted_average(e, m);
    EXPECT_LE(testing::max_deviation(naive, {0.5, 0.5}), 1e-15);
    EXPECT_GE(testing::max_deviation(prob_ensemble(e, m), naive), 0.05);
}

TEST(ProbDensity, EqualsEnsembleRuleOnRandomInstances) {
    Rng rng(45);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const Index d = 2 + static_cast<Index>(t % 2);
        const auto e = testing::random_ensemble(rng, d, 1 + rng.below(4));
        const auto m = testing::random_detailed_measurement(rng, d, 2 + rng.below(4));
        const auto p = prob_density(density_from_ensemble(e), m);
        expect_distribution(p);
        worst = std::max(worst, testing::max_deviation(p, testing::ref_probabilities(e, m)));
        worst = std::max(worst, testing::max_deviation(p, prob_ensemble(e, m)));
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(ProbDensity, MaximallyMixedGivesOperatorNormWeights) {
    // With eta = I/d^2 the weight of outcome mu is ||A^mu||_F^2 / d^2.
    Rng rng(46);
    const Index d = 3;
    const auto eta = DensityVector::from_matrix(Matrix::Identity(9, 9) / 9.0);
    const auto m = testing::random_projective(rng, d);
    EXPECT_LE(testing::max_deviation(prob_density(eta, m), std::vector<double>(3, 1.0 / 3.0)), 1e-12);
    const auto general = testing::random_detailed_measurement(rng, d, 4);
    std::vector<double> w;
    for (const auto& o : general.outcomes()) w.push_back(o.kraus[0].matrix().squaredNorm());
    EXPECT_LE(testing::max_deviation(prob_density(eta, general), testing::normalized(w)), 1e-12);
}

TEST(ProbDensity, ScaleInvariantUnderRawHook) {
    Rng rng(47);
    const auto eta = testing::random_density(rng, 2);
    const auto m = testing::random_detailed_measurement(rng, 2, 3);
    for (double lambda : {1e-6, 0.3, 7.0, 1e5}) {
        EXPECT_LE(testing::max_deviation(detail::prob_density_raw(lambda * eta.matrix(), m), prob_density(eta, m)),
                  1e-12);
        EXPECT_LE(testing::max_deviation(detail::prob_coarse_raw(lambda * eta.matrix(), m), prob_density(eta, m)),
                  1e-12);
    }
}

TEST(ProbCoarse, SingletonsEqualDensityRule) {
    Rng rng(48);
    const auto eta = testing::random_density(rng, 3);
    const auto m = testing::random_detailed_measurement(rng, 3, 3);
    EXPECT_LE(testing::max_deviation(prob_coarse(eta, m), prob_density(eta, m)), 1e-12);
}

TEST(ProbCoarse, LumpingAddsProbabilities) {
    Rng rng(49);
    const auto eta = testing::random_density(rng, 2);
    const auto ops = testing::random_kraus_family(rng, 2, 3);
    const auto fine = prob_density(eta, Measurement::detailed(ops));
    const auto lumped = prob_coarse(eta, Measurement::coarse({{ops[0], ops[1]}, {ops[2]}}));
    EXPECT_NEAR(lumped[0], fine[0] + fine[1], 1e-12);
    EXPECT_NEAR(lumped[1], fine[2], 1e-12);
}

TEST(ProbCoarse, EqualsEnsembleSumsOnRandomInstances) {
    Rng rng(50);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const Index d = 2 + static_cast<Index>(t % 2);
        const auto e = testing::random_ensemble(rng, d, 1 + rng.below(4));
        const auto m = testing::random_coarse_measurement(rng, d, 2 + rng.below(2), 1 + rng.below(3));
        const auto p = prob_coarse(density_from_ensemble(e), m);
        expect_distribution(p);
        worst = std::max(worst, testing::max_deviation(p, testing::ref_probabilities(e, m)));
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(ProbRelative, CompletionScaleDropsOut) {
    Rng rng(51);
    for (int t = 0; t < 20; ++t) {
        const auto eta = testing::random_density(rng, 2);
        const std::vector<std::vector<Matrix>> sets{{testing::random_matrix(rng, 2, 2)},
                                                   {testing::random_matrix(rng, 2, 2)}};
        const auto reference = prob_kept(eta, complete_kraus_set(sets).completed);
        const double top = 1.0 / complete_kraus_set(sets).scale;
        for (double frac : {0.1, 0.5, 0.999}) {
            const auto p = prob_kept(eta, complete_kraus_set(sets, frac / top).completed);
            EXPECT_LE(testing::max_deviation(p, reference), 1e-12);
        }
        std::vector<KrausDensityVector> ks;
        for (const auto& s : sets) {
            std::vector<KrausOperator> ops;
            for (const auto& a : s) ops.emplace_back(a);
            ks.push_back(kraus_density_vector(ops));
        }
        EXPECT_LE(testing::max_deviation(prob_relative(eta, ks), reference), 1e-12);
    }
}

TEST(ProbRelative, AllDiscardedIsADomainError) {
    // Only the outcome |1><1| is kept, and the state never produces it.
    const auto eta = density_from_state(pure_product(basis_ket(2, 0), basis_ket(2, 0)));
    const std::vector<KrausOperator> ops{KrausOperator(ket_bra(basis_ket(2, 1), basis_ket(2, 1)))};
    const std::vector<KrausDensityVector> ks{kraus_density_vector(ops)};
    try {
        prob_relative(eta, ks);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kAllDiscarded);
    }
}

TEST(ProbRelativeBipartite, IdentityAndScaleInvariance) {
    Rng rng(52);
    const auto eta = testing::random_density(rng, 2);
    const std::vector<Matrix> single{Matrix::Identity(4, 4)};
    EXPECT_LE(testing::max_deviation(prob_relative_bipartite(eta.matrix(), single), {1.0}), 1e-15);
    std::vector<Matrix> ops;
    for (int k = 0; k < 3; ++k) {
        const Matrix g = testing::random_matrix(rng, 4, 4);
        ops.push_back(g * g.adjoint());
    }
    std::vector<Matrix> scaled;
    for (const auto& e : ops) scaled.push_back(7.0 * e);
    EXPECT_LE(testing::max_deviation(prob_relative_bipartite(eta.matrix(), ops),
                                     prob_relative_bipartite(eta.matrix(), scaled)),
              1e-12);
}

TEST(Distinguishing, CompletedMinusPlusSeparatesPureFromMixed) {
    const Matrix mp = ket_bra(ket({kS, -kS}), ket({kS, kS}));
    const Measurement m = complete_kraus_set({{mp}}).completed;
    const auto pure = prob_coarse(density_from_state(testing::correlated_superposition()), m);
    const auto mixed = prob_coarse(density_from_ensemble(testing::correlated_mixture()), m);
    EXPECT_LE(pure[0], 1e-14);
    EXPECT_NEAR(mixed[0], 0.5, 1e-14);
}

TEST(ProjectiveInsufficiency, PureAndMixedAgreeOnProjectiveStatistics) {
    Rng rng(53);
    for (int t = 0; t < 50; ++t) {
        const auto m = testing::random_projective(rng, 2);
        EXPECT_LE(testing::max_deviation(prob_pure(testing::correlated_superposition(), m),
                                         prob_ensemble(testing::correlated_mixture(), m)),
                  1e-12);
    }
}

}  // namespace
}  // namespace twotime
