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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace cvnet {

using NodeIndex = std::size_t;

/// Binary, undirected, loop-free graph describing where entangling gates were
/// applied. Stored as a dense 0/1 matrix: networks here have at most a few
/// hundred nodes and every downstream quantity (A^2, covariance blocks) is
/// dense anyway.
class ImprintedNetwork {
   public:
    ImprintedNetwork() = default;

    /// Empty graph on n nodes.
    explicit ImprintedNetwork(std::size_t n);

    /// Validates symmetry, zero diagonal and 0/1 entries; throws
    /// ValidationError otherwise.
    explicit ImprintedNetwork(Eigen::MatrixXi adjacency);

    static ImprintedNetwork from_edges(std::size_t n,
                                       const std::vector<std::pair<NodeIndex, NodeIndex>>& edges);

    std::size_t size() const noexcept { return static_cast<std::size_t>(adjacency_.rows()); }
    bool has_edge(NodeIndex i, NodeIndex j) const { return adjacency_(i, j) != 0; }

    /// Inserts the undirected edge {i, j}. Self-loops are rejected.
    void add_edge(NodeIndex i, NodeIndex j);
    void remove_edge(NodeIndex i, NodeIndex j);

    std::size_t edge_count() const noexcept;
    std::vector<NodeIndex> neighbors(NodeIndex i) const;

    /// Edges {i, j} with i < j in row-major order.
    std::vector<std::pair<NodeIndex, NodeIndex>> edges() const;

    const Eigen::MatrixXi& adjacency() const noexcept { return adjacency_; }
    Eigen::MatrixXd adjacency_real() const { return adjacency_.cast<double>(); }

    /// Number of walks of length two between every pair of nodes.
    Eigen::MatrixXd two_step_walks() const;

    friend bool operator==(const ImprintedNetwork& a, const ImprintedNetwork& b) {
        return a.adjacency_ == b.adjacency_;
    }

   private:
    Eigen::MatrixXi adjacency_;
};

struct BarabasiAlbert {
    std::size_t m = 1;
};
struct WattsStrogatz {
    std::size_t k = 1;
    double p = 0.0;
};
struct ErdosRenyi {
    double p = 0.0;
};
struct Complete {};

using ModelParams = std::variant<BarabasiAlbert, WattsStrogatz, ErdosRenyi, Complete>;

struct ModelSpec {
    ModelParams model = Complete{};
    std::size_t n = 1;
    std::uint64_t seed = 0;
};

/// Short model tag: "ba", "ws", "er" or "complete".
std::string model_name(const ModelParams& model);

/// Throws ParameterError if the spec violates its parameter domain.
void validate(const ModelSpec& spec);

/// Draws one network. Deterministic in `spec` (including the seed).
///
/// - BA: complete seed graph on m+1 nodes, then each new node links to m
///   distinct existing nodes chosen with probability proportional to degree.
/// - WS: ring lattice i ~ i±1..i±k, then for each offset d = 1..k and node i
///   in order the edge (i, i+d) has its far end rewired with probability p to
///   a uniform node, excluding self-loops and existing edges. Edge count nk is
///   preserved.
/// - ER: each pair independently with probability p.
ImprintedNetwork generate(const ModelSpec& spec);

std::vector<std::size_t> binary_degree(const ImprintedNetwork& net);

/// Triangles through i over connected triplets centred on i; 0 when deg < 2.
std::vector<double> binary_clustering(const ImprintedNetwork& net);

inline constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();

/// Hop distances from `source`; `unreachable` for other components.
std::vector<std::size_t> bfs_distances(const ImprintedNetwork& net, NodeIndex source);

/// Distance strata relative to a source node. Group index 3 collects every
/// node at distance three or more, including unreachable ones.
struct DistanceGroups {
    static constexpr std::size_t count = 4;
    std::array<std::vector<NodeIndex>, count> members;
    /// Group index of every node.
    std::vector<std::size_t> group_of;
};

DistanceGroups distance_groups(const ImprintedNetwork& net, NodeIndex source);

/// Induced subgraph on the neighbours of a node.
struct NeighborSubnetwork {
    /// Neighbours of the source in increasing order.
    std::vector<NodeIndex> nodes;
    /// Subgraph on `nodes`, indexed by position in `nodes`.
    ImprintedNetwork induced;
    /// For every neighbour, the number of other neighbours it links to.
    std::vector<std::size_t> connectivity;
};

NeighborSubnetwork neighbor_subnetwork(const ImprintedNetwork& net, NodeIndex source);

/// Node of maximal degree; ties go to the smallest index.
NodeIndex highest_degree_node(const ImprintedNetwork& net);

/// Edge-list text format: a header line `n=<N>`, then `i j` per edge with
/// 0-based i < j.
void write_edge_list(std::ostream& out, const ImprintedNetwork& net);
ImprintedNetwork read_edge_list(std::istream& in);

}  // namespace cvnet
