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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cvnet/graph.hpp"

namespace cvnet {

/// Which state a weighted network was computed from.
struct StateTag {
    /// Subtraction node and photon count; empty for the Gaussian state.
    std::optional<NodeIndex> subtraction_node;
    std::size_t photons = 0;

    static StateTag gaussian() { return {}; }
    static StateTag subtracted(NodeIndex node, std::size_t photons) { return {node, photons}; }

    bool is_gaussian() const noexcept { return !subtraction_node.has_value(); }
    /// "gaussian" or "subtracted(S=<node>,n=<photons>)".
    std::string to_string() const;

    friend bool operator==(const StateTag&, const StateTag&) = default;
};

/// Weighted network of normalised absolute photon-number correlations.
/// Invariants: symmetric, zero diagonal, every weight in [0, 1].
class EmergentNetwork {
   public:
    EmergentNetwork() = default;

    /// Weights above 1 by at most `weight_clip_tolerance` are clipped to 1;
    /// anything further out of range throws ConsistencyError.
    EmergentNetwork(Eigen::MatrixXd weights, StateTag tag);

    std::size_t size() const noexcept { return static_cast<std::size_t>(weights_.rows()); }
    const Eigen::MatrixXd& weights() const noexcept { return weights_; }
    double weight(NodeIndex i, NodeIndex j) const { return weights_(i, j); }
    const StateTag& tag() const noexcept { return tag_; }

    static constexpr double weight_clip_tolerance = 1e-9;

   private:
    Eigen::MatrixXd weights_;
    StateTag tag_;
};

/// Photon-number first and second moments of every mode, packaged as the
/// connected correlation matrix: covariance(i, j) = <n_i n_j> - <n_i><n_j>,
/// with the variances on the diagonal.
struct PhotonStatistics {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;

    std::size_t size() const noexcept { return static_cast<std::size_t>(mean.size()); }
};

/// Variance at or below this value marks a mode without photon-number
/// fluctuations (unsqueezed vacuum).
inline constexpr double variance_floor = 1e-12;

/// weights(i, j) = |cov(i, j)| / sqrt(var_i var_j) off the diagonal, 0 on it.
/// Throws DegenerateVarianceError if any variance is <= variance_floor.
EmergentNetwork correlation_network(const PhotonStatistics& stats, StateTag tag);

/// Row sums of the weight matrix.
std::vector<double> weighted_degree(const EmergentNetwork& net);

/// Denominator convention for the weighted clustering coefficient.
///
/// Both share the numerator sum_{j != k} w_ij w_jk w_ki. The `paper` form
/// divides by (sum_j w_ij)^2, i.e. it keeps the j == k terms in the triplet
/// sum; `strict` drops them, dividing by (sum_j w_ij)^2 - sum_j w_ij^2. The
/// two differ by (N-2)/(N-1) on uniform weights. `paper` is the default
/// because the published complete-graph reference values use it.
enum class ClusteringConvention { paper, strict };

std::string to_string(ClusteringConvention c);
ClusteringConvention clustering_convention_from_string(const std::string& name);

/// Per-node weighted clustering; 0 where the denominator is below 1e-12.
std::vector<double> weighted_clustering(const EmergentNetwork& net,
                                        ClusteringConvention convention = ClusteringConvention::paper);

}  // namespace cvnet
