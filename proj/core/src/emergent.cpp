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

#include "cvnet/emergent.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cvnet/errors.hpp"

namespace cvnet {

std::string StateTag::to_string() const {
    if (is_gaussian()) {
        return "gaussian";
    }
    return fmt::format("subtracted(S={},n={})", *subtraction_node, photons);
}

EmergentNetwork::EmergentNetwork(Eigen::MatrixXd weights, StateTag tag)
    : weights_(std::move(weights)), tag_(std::move(tag)) {
    if (weights_.rows() != weights_.cols()) {
        throw ValidationError("emergent weight matrix must be square");
    }
    const auto n = weights_.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (weights_(i, i) != 0.0) {
            throw ConsistencyError(fmt::format("emergent weight diagonal ({0},{0}) is {1}, expected 0", i,
                                               weights_(i, i)));
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            double& w = weights_(i, j);
            if (!(w >= 0.0) || w > 1.0 + weight_clip_tolerance) {
                throw ConsistencyError(fmt::format("emergent weight ({}, {}) = {:.17g} outside [0, 1]", i, j, w));
            }
            w = std::min(w, 1.0);
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (std::abs(weights_(i, j) - weights_(j, i)) > 1e-12) {
                throw ConsistencyError(fmt::format("emergent weights not symmetric at ({}, {})", i, j));
            }
        }
    }
}

EmergentNetwork correlation_network(const PhotonStatistics& stats, StateTag tag) {
    const auto n = static_cast<Eigen::Index>(stats.size());
    const Eigen::MatrixXd& cov = stats.covariance;
    if (cov.rows() != n || cov.cols() != n) {
        throw ValidationError("photon statistics: covariance shape does not match the number of modes");
    }
    Eigen::VectorXd inv_sd(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(cov(i, i) > variance_floor)) {
            throw DegenerateVarianceError(
                fmt::format("photon-number variance of mode {} is {:.3g}; correlations undefined", i, cov(i, i)));
        }
        inv_sd(i) = 1.0 / std::sqrt(cov(i, i));
    }
    Eigen::MatrixXd w(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            // Symmetrise explicitly so round-off in the two triangles cannot
            // produce an asymmetric matrix.
            const double c = 0.5 * (std::abs(cov(i, j)) + std::abs(cov(j, i)));
            w(i, j) = i == j ? 0.0 : c * inv_sd(i) * inv_sd(j);
        }
    }
    return EmergentNetwork(std::move(w), std::move(tag));
}

std::vector<double> weighted_degree(const EmergentNetwork& net) {
    const Eigen::VectorXd sums = net.weights().rowwise().sum();
    return {sums.data(), sums.data() + sums.size()};
}

std::string to_string(ClusteringConvention c) { return c == ClusteringConvention::paper ? "paper" : "strict"; }

ClusteringConvention clustering_convention_from_string(const std::string& name) {
    if (name == "paper") {
        return ClusteringConvention::paper;
    }
    if (name == "strict") {
        return ClusteringConvention::strict;
    }
    throw ParameterError(fmt::format("unknown clustering convention '{}' (expected paper or strict)", name));
}

std::vector<double> weighted_clustering(const EmergentNetwork& net, ClusteringConvention convention) {
    const Eigen::MatrixXd& w = net.weights();
    const Eigen::MatrixXd w2 = w * w;
    const auto n = w.rows();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        // Zero diagonal makes (W^3)_ii exactly the sum over j != k, both != i.
        const double triangles = w.row(i).dot(w2.col(i));
        const double strength = w.row(i).sum();
        double triplets = strength * strength;
        if (convention == ClusteringConvention::strict) {
            triplets -= w.row(i).squaredNorm();
        }
        if (triplets >= 1e-12) {
            out[static_cast<std::size_t>(i)] = triangles / triplets;
        }
    }
    return out;
}

}  // namespace cvnet
