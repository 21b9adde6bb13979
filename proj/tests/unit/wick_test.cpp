// Copyright 2026 The cvnet Authors
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

#include <cmath>

#include "cvnet/errors.hpp"
#include "cvnet/wick.hpp"
#include "support/random_states.hpp"

namespace cvnet {
namespace {

ContractionTable thermal(std::size_t modes, double nbar) {
    return ContractionTable(CovarianceMatrix((2.0 * nbar + 1.0) * Eigen::MatrixXd::Identity(2 * modes, 2 * modes)));
}

OperatorWord repeat(Token t, std::size_t n) { return OperatorWord(n, t); }

OperatorWord concat(OperatorWord a, const OperatorWord& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

double factorial(std::size_t n) { return n == 0 ? 1.0 : static_cast<double>(n) * factorial(n - 1); }

TEST(Wick, TrivialWords) {
    const auto t = thermal(2, 0.5);
    EXPECT_EQ(wick_expectation({}, t), std::complex<double>(1.0, 0.0));
    EXPECT_EQ(wick_expectation(OperatorWord{creation(0)}, t), std::complex<double>(0.0, 0.0));
    EXPECT_THROW(wick_expectation(OperatorWord{creation(0), annihilation(2)}, t), ParameterError);
}

TEST(Wick, VacuumFactorials) {
    const auto vac = thermal(1, 0.0);
    for (std::size_t n = 0; n <= 10; ++n) {
        const auto word = concat(repeat(annihilation(0), n), repeat(creation(0), n));
        EXPECT_NEAR(wick_expectation(word, vac).real(), factorial(n), 1e-9 * factorial(n));
        const auto normal = concat(repeat(creation(0), n), repeat(annihilation(0), n));
        EXPECT_NEAR(std::abs(wick_expectation(normal, vac)), n == 0 ? 1.0 : 0.0, 1e-12);
    }
}

TEST(Wick, ThermalFactorialMoments) {
    // <a+^n a^n> = n! nbar^n for a thermal state.
    const double nbar = 1.7;
    const auto t = thermal(1, nbar);
    for (std::size_t n = 1; n <= 12; ++n) {
        const auto word = concat(repeat(creation(0), n), repeat(annihilation(0), n));
        const double expected = factorial(n) * std::pow(nbar, static_cast<double>(n));
        EXPECT_NEAR(wick_expectation(word, t).real(), expected, 1e-10 * expected);
    }
}

TEST(Wick, SubtractionFromThermalState) {
    // k photons subtracted from a thermal state: <n> = (k + 1) nbar.
    const double nbar = 0.8;
    const auto t = thermal(1, nbar);
    for (std::size_t k = 0; k <= 6; ++k) {
        EXPECT_NEAR(subtracted_expectation(number_word(0), {0, k}, t), (k + 1) * nbar, 1e-12);
    }
}

TEST(Wick, SqueezedVacuumFourthMoment) {
    const double s = 3.0;
    const ContractionTable t(cluster_covariance(ImprintedNetwork(1), Squeezing::from_ratio(s)));
    const double r = std::log(s) / 2.0;
    const double sh = std::sinh(r);
    const double ch = std::cosh(r);
    const OperatorWord word{creation(0), creation(0), annihilation(0), annihilation(0)};
    EXPECT_NEAR(wick_expectation(word, t).real(), 2.0 * std::pow(sh, 4) + sh * sh * ch * ch, 1e-12);
    // <n^2> = 3 sinh^4 + 2 sinh^2 for a squeezed vacuum.
    EXPECT_NEAR(wick_expectation(number_product_word(0, 0), t).real(), 3.0 * std::pow(sh, 4) + 2.0 * sh * sh,
                1e-12);
}

TEST(WickProperty, DynamicProgrammeMatchesEnumeration) {
    Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t modes = 1 + rng.index(5);
        const ContractionTable t(testing::random_gaussian_state(modes, rng));
        const std::size_t length = 2 * (1 + rng.index(7));
        const OperatorWord word = testing::random_word(length, modes, rng);
        const auto dp = wick_expectation(word, t);
        const auto bf = wick_expectation_bruteforce(word, t);
        ASSERT_LE(std::abs(dp - bf), 1e-10 * std::max(1.0, std::abs(bf))) << "trial " << trial;
    }
}

TEST(WickProperty, MaxTermBoundsValue) {
    Rng rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        const ContractionTable t(testing::random_gaussian_state(3, rng));
        const OperatorWord word = testing::random_word(8, 3, rng);
        const WickValue v = wick_expectation_scaled(word, t);
        // 105 matchings of 8 operators.
        EXPECT_LE(std::abs(v.value), 105.0 * v.max_term * (1.0 + 1e-12));
    }
}

TEST(WickProperty, HermitianWordsAreReal) {
    Rng rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const ContractionTable t(testing::random_gaussian_state(4, rng));
        const NodeIndex i = rng.index(4);
        const NodeIndex j = rng.index(4);
        EXPECT_NEAR(wick_expectation(number_product_word(i, j), t).imag(), 0.0, 1e-10);
        // n_i n_j and n_j n_i agree because photon numbers commute.
        EXPECT_NEAR(std::abs(wick_expectation(number_product_word(i, j), t) -
                             wick_expectation(number_product_word(j, i), t)),
                    0.0, 1e-10);
    }
}

TEST(Wick, BruteForceCapacity) {
    const auto t = thermal(1, 0.1);
    EXPECT_THROW(wick_expectation_bruteforce(repeat(creation(0), 18), t), CapacityError);
}

TEST(Wick, LongSingleModeWordsStayCheap) {
    const auto t = thermal(2, 0.3);
    // 10 photons subtracted around n_0 n_1: 24 operators, far past enumeration.
    const OperatorWord word = concat(concat(repeat(creation(0), 10), number_product_word(0, 1)),
                                     repeat(annihilation(0), 10));
    const double norm = factorial(10) * std::pow(0.3, 10.0);
    EXPECT_NEAR(wick_expectation(word, t).real() / norm, 11.0 * 0.3 * 0.3, 1e-10);
}

TEST(Subtraction, DegenerateVacuum) {
    const auto vac = thermal(2, 0.0);
    EXPECT_THROW(SubtractedState(vac, {0, 1}), DegenerateSubtractionError);
    EXPECT_NO_THROW(SubtractedState(vac, {0, 0}));
    EXPECT_THROW(SubtractedState(vac, {5, 1}), ParameterError);
}

TEST(Subtraction, MultimodeMatchesSingleModeForOneMode) {
    Rng rng(40);
    const ContractionTable t(testing::random_gaussian_state(3, rng));
    const NodeIndex modes[] = {1};
    EXPECT_NEAR(subtracted_expectation_multimode(number_product_word(0, 2), modes, t),
                subtracted_expectation(number_product_word(0, 2), {1, 1}, t), 1e-10);
}

TEST(Subtraction, MultimodeOnIndependentModesFactorises) {
    // Subtracting from two uncorrelated thermal modes multiplies each mean by 2.
    const auto t = thermal(3, 0.4);
    const NodeIndex modes[] = {0, 1};
    EXPECT_NEAR(subtracted_expectation_multimode(number_word(0), modes, t), 0.8, 1e-12);
    EXPECT_NEAR(subtracted_expectation_multimode(number_word(2), modes, t), 0.4, 1e-12);
}

TEST(PhotonNumberMoments, ConsistentWithStatistics) {
    const auto net = generate({WattsStrogatz{2, 0.2}, 12, 4});
    const ContractionTable t(cluster_covariance(net, Squeezing::from_db(8.0)));
    const NodeIndex nodes[] = {0, 5};
    const std::pair<NodeIndex, NodeIndex> pairs[] = {{0, 5}};
    const MomentSet m = photon_number_moments(t, {0, 2}, nodes, pairs);
    const PhotonStatistics stats = photon_statistics(net, t, SubtractionSpec{0, 2}, Evaluation::exact);
    EXPECT_NEAR(m.mean[1], stats.mean(5), 1e-9);
    EXPECT_NEAR(m.square[0] - m.mean[0] * m.mean[0], stats.covariance(0, 0), 1e-9);
    EXPECT_NEAR(m.product[0] - m.mean[0] * m.mean[1], stats.covariance(0, 5), 1e-9);
}

TEST(Locality, NearNodesWithinTwoHops) {
    const auto net = ImprintedNetwork::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    const LocalityFilter f(net, 1);
    EXPECT_EQ(f.near_nodes(), (std::vector<NodeIndex>{0, 1, 2, 3}));
    EXPECT_TRUE(f.affected(0, 3));
    EXPECT_FALSE(f.affected(0, 4));
}

TEST(LocalityProperty, ShortcutEqualsExact) {
    Rng rng(50);
    for (int trial = 0; trial < 6; ++trial) {
        const ModelSpec spec = trial % 2 == 0 ? ModelSpec{WattsStrogatz{2, 0.3}, 20, rng.engine()()}
                                              : ModelSpec{BarabasiAlbert{2}, 20, rng.engine()()};
        const auto net = generate(spec);
        const ContractionTable t(cluster_covariance(net, Squeezing::from_db(10.0)));
        const SubtractionSpec sub{rng.index(20), 1 + rng.index(3)};
        const auto fast = photon_statistics(net, t, sub, Evaluation::shortcut);
        const auto exact = photon_statistics(net, t, sub, Evaluation::exact);
        const double scale = exact.covariance.cwiseAbs().maxCoeff();
        EXPECT_LE((fast.covariance - exact.covariance).cwiseAbs().maxCoeff(), 1e-10 * scale);
        EXPECT_LE((fast.mean - exact.mean).cwiseAbs().maxCoeff(), 1e-10 * scale);
    }
}

TEST(GaussianStatistics, NoSubtractionMatchesWick) {
    const auto net = generate({ErdosRenyi{0.3}, 10, 9});
    const ContractionTable t(cluster_covariance(net, Squeezing::from_db(5.0)));
    const auto closed = photon_statistics(net, t, std::nullopt, Evaluation::shortcut);
    const auto wick = photon_statistics(net, t, std::nullopt, Evaluation::exact);
    EXPECT_LE((closed.covariance - wick.covariance).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((closed.mean - wick.mean).cwiseAbs().maxCoeff(), 1e-10);
}

}  // namespace
}  // namespace cvnet
