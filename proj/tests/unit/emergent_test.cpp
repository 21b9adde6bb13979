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

#include "cvnet/emergent.hpp"
#include "cvnet/errors.hpp"

namespace cvnet {
namespace {

EmergentNetwork uniform(std::size_t n, double w) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), w);
    m.diagonal().setZero();
    return EmergentNetwork(m, StateTag::gaussian());
}

TEST(StateTag, Names) {
    EXPECT_EQ(StateTag::gaussian().to_string(), "gaussian");
    EXPECT_EQ(StateTag::subtracted(4, 10).to_string(), "subtracted(S=4,n=10)");
}

TEST(EmergentNetwork, Validation) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 1) = m(1, 0) = 1.0 + 1e-10;
    const EmergentNetwork clipped(m, StateTag::gaussian());
    EXPECT_EQ(clipped.weight(0, 1), 1.0);
    EXPECT_EQ(clipped.weight(1, 0), 1.0);
    m(0, 1) = m(1, 0) = 1.1;
    EXPECT_THROW(EmergentNetwork(m, StateTag::gaussian()), ConsistencyError);
    m(0, 1) = m(1, 0) = -0.1;
    EXPECT_THROW(EmergentNetwork(m, StateTag::gaussian()), ConsistencyError);
    m(0, 1) = 0.5;
    m(1, 0) = 0.4;
    EXPECT_THROW(EmergentNetwork(m, StateTag::gaussian()), ConsistencyError);
    m(1, 0) = 0.5;
    m(2, 2) = 0.1;
    EXPECT_THROW(EmergentNetwork(m, StateTag::gaussian()), ConsistencyError);
}

TEST(CorrelationNetwork, NormalisesAbsoluteCovariance) {
    PhotonStatistics stats;
    stats.mean = Eigen::Vector2d(1.0, 2.0);
    stats.covariance.resize(2, 2);
    stats.covariance << 4.0, -3.0, -3.0, 9.0;
    const EmergentNetwork net = correlation_network(stats, StateTag::gaussian());
    EXPECT_DOUBLE_EQ(net.weight(0, 1), 0.5);
    EXPECT_EQ(net.weight(0, 0), 0.0);
    stats.covariance(1, 1) = 0.0;
    EXPECT_THROW(correlation_network(stats, StateTag::gaussian()), DegenerateVarianceError);
}

TEST(WeightedDegree, RowSums) {
    EXPECT_EQ(weighted_degree(uniform(4, 0.25)), (std::vector<double>{0.75, 0.75, 0.75, 0.75}));
}

TEST(WeightedClustering, UniformWeights) {
    // Paper convention gives w (N-2)/(N-1); strict gives w.
    const auto net = uniform(5, 0.6);
    EXPECT_NEAR(weighted_clustering(net, ClusteringConvention::paper)[0], 0.6 * 3.0 / 4.0, 1e-15);
    EXPECT_NEAR(weighted_clustering(net, ClusteringConvention::strict)[0], 0.6, 1e-15);
}

TEST(WeightedClustering, BinaryTriangleWithPendant) {
    // Triangle 0-1-2 plus pendant 3 on node 0.
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {0, 2}, {0, 3}}) {
        m(i, j) = m(j, i) = 1.0;
    }
    const EmergentNetwork net(m, StateTag::gaussian());
    const auto strict = weighted_clustering(net, ClusteringConvention::strict);
    // Strict reduces to the binary coefficient.
    EXPECT_NEAR(strict[0], 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(strict[1], 1.0, 1e-15);
    EXPECT_EQ(strict[3], 0.0);
    const auto paper = weighted_clustering(net, ClusteringConvention::paper);
    EXPECT_NEAR(paper[0], 2.0 / 9.0, 1e-15);
    EXPECT_NEAR(paper[1], 0.5, 1e-15);
    EXPECT_EQ(paper[3], 0.0);
}

TEST(WeightedClustering, EmptyNetworkIsZero) {
    const auto c = weighted_clustering(uniform(3, 0.0));
    EXPECT_EQ(c, (std::vector<double>{0.0, 0.0, 0.0}));
}

TEST(ClusteringConvention, Names) {
    EXPECT_EQ(clustering_convention_from_string("strict"), ClusteringConvention::strict);
    EXPECT_EQ(to_string(ClusteringConvention::paper), "paper");
    EXPECT_THROW(clustering_convention_from_string("onnela"), ParameterError);
}

}  // namespace
}  // namespace cvnet
