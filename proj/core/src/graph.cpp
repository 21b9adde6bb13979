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

#include "cvnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "cvnet/errors.hpp"
#include "cvnet/rng.hpp"

namespace cvnet {

ImprintedNetwork::ImprintedNetwork(std::size_t n)
    : adjacency_(Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))) {}

ImprintedNetwork::ImprintedNetwork(Eigen::MatrixXi adjacency) : adjacency_(std::move(adjacency)) {
    if (adjacency_.rows() != adjacency_.cols()) {
        throw ValidationError("adjacency matrix must be square");
    }
    for (Eigen::Index i = 0; i < adjacency_.rows(); ++i) {
        if (adjacency_(i, i) != 0) {
            throw ValidationError(fmt::format("adjacency has a self-loop at node {}", i));
        }
        for (Eigen::Index j = 0; j < adjacency_.cols(); ++j) {
            const int a = adjacency_(i, j);
            if (a != 0 && a != 1) {
                throw ValidationError(fmt::format("adjacency entry ({}, {}) = {} is not binary", i, j, a));
            }
            if (a != adjacency_(j, i)) {
                throw ValidationError(fmt::format("adjacency is not symmetric at ({}, {})", i, j));
            }
        }
    }
}

ImprintedNetwork ImprintedNetwork::from_edges(std::size_t n,
                                              const std::vector<std::pair<NodeIndex, NodeIndex>>& edges) {
    ImprintedNetwork net(n);
    for (auto [i, j] : edges) {
        if (i >= n || j >= n) {
            throw ValidationError(fmt::format("edge ({}, {}) references a node outside [0, {})", i, j, n));
        }
        net.add_edge(i, j);
    }
    return net;
}

void ImprintedNetwork::add_edge(NodeIndex i, NodeIndex j) {
    if (i == j) {
        throw ValidationError(fmt::format("self-loop at node {}", i));
    }
    adjacency_(i, j) = 1;
    adjacency_(j, i) = 1;
}

void ImprintedNetwork::remove_edge(NodeIndex i, NodeIndex j) {
    adjacency_(i, j) = 0;
    adjacency_(j, i) = 0;
}

std::size_t ImprintedNetwork::edge_count() const noexcept {
    return static_cast<std::size_t>(adjacency_.sum()) / 2;
}

std::vector<NodeIndex> ImprintedNetwork::neighbors(NodeIndex i) const {
    std::vector<NodeIndex> out;
    for (NodeIndex j = 0; j < size(); ++j) {
        if (adjacency_(i, j) != 0) {
            out.push_back(j);
        }
    }
    return out;
}

std::vector<std::pair<NodeIndex, NodeIndex>> ImprintedNetwork::edges() const {
    std::vector<std::pair<NodeIndex, NodeIndex>> out;
    for (NodeIndex i = 0; i < size(); ++i) {
        for (NodeIndex j = i + 1; j < size(); ++j) {
            if (adjacency_(i, j) != 0) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

Eigen::MatrixXd ImprintedNetwork::two_step_walks() const {
    const Eigen::MatrixXd a = adjacency_real();
    return a * a;
}

std::string model_name(const ModelParams& model) {
    struct Visitor {
        std::string operator()(const BarabasiAlbert&) const { return "ba"; }
        std::string operator()(const WattsStrogatz&) const { return "ws"; }
        std::string operator()(const ErdosRenyi&) const { return "er"; }
        std::string operator()(const Complete&) const { return "complete"; }
    };
    return std::visit(Visitor{}, model);
}

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

ImprintedNetwork generate_ba(std::size_t n, std::size_t m, Rng& rng) {
    ImprintedNetwork net(n);
    // Each node appears once per incident edge end, so a uniform pick from
    // this list is a degree-proportional pick.
    std::vector<NodeIndex> endpoints;
    for (NodeIndex i = 0; i <= m; ++i) {
        for (NodeIndex j = i + 1; j <= m; ++j) {
            net.add_edge(i, j);
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    }
    std::vector<NodeIndex> targets;
    for (NodeIndex v = m + 1; v < n; ++v) {
        targets.clear();
        while (targets.size() < m) {
            const NodeIndex t = endpoints[rng.index(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
                targets.push_back(t);
            }
        }
        for (NodeIndex t : targets) {
            net.add_edge(v, t);
            endpoints.push_back(v);
            endpoints.push_back(t);
        }
    }
    return net;
}

ImprintedNetwork generate_ws(std::size_t n, std::size_t k, double p, Rng& rng) {
    ImprintedNetwork net(n);
    for (std::size_t d = 1; d <= k; ++d) {
        for (NodeIndex i = 0; i < n; ++i) {
            net.add_edge(i, (i + d) % n);
        }
    }
    for (std::size_t d = 1; d <= k; ++d) {
        for (NodeIndex i = 0; i < n; ++i) {
            const NodeIndex j = (i + d) % n;
            if (!rng.bernoulli(p)) {
                continue;
            }
            if (!net.has_edge(i, j)) {
                continue;
            }
            const auto degree = static_cast<std::size_t>(net.adjacency().row(static_cast<Eigen::Index>(i)).sum());
            if (degree >= n - 1) {
                continue;  // no free partner
            }
            NodeIndex w = rng.index(n);
            while (w == i || net.has_edge(i, w)) {
                w = rng.index(n);
            }
            net.remove_edge(i, j);
            net.add_edge(i, w);
        }
    }
    return net;
}

ImprintedNetwork generate_er(std::size_t n, double p, Rng& rng) {
    ImprintedNetwork net(n);
    for (NodeIndex i = 0; i < n; ++i) {
        for (NodeIndex j = i + 1; j < n; ++j) {
            if (rng.bernoulli(p)) {
                net.add_edge(i, j);
            }
        }
    }
    return net;
}

ImprintedNetwork generate_complete(std::size_t n) {
    Eigen::MatrixXi a = Eigen::MatrixXi::Ones(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    a.diagonal().setZero();
    return ImprintedNetwork(std::move(a));
}

}  // namespace

void validate(const ModelSpec& spec) {
    if (spec.n < 1) {
        throw ParameterError("network needs at least one node");
    }
    const std::size_t n = spec.n;
    std::visit(
        [n](const auto& model) {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, BarabasiAlbert>) {
                if (model.m < 1 || model.m >= n) {
                    throw ParameterError(fmt::format("BA requires 1 <= m < n (m={}, n={})", model.m, n));
                }
            } else if constexpr (std::is_same_v<T, WattsStrogatz>) {
                if (model.k < 1 || 2 * model.k >= n) {
                    throw ParameterError(fmt::format("WS requires 1 <= k < n/2 (k={}, n={})", model.k, n));
                }
                if (!is_probability(model.p)) {
                    throw ParameterError(fmt::format("WS rewiring probability {} outside [0, 1]", model.p));
                }
            } else if constexpr (std::is_same_v<T, ErdosRenyi>) {
                if (!is_probability(model.p)) {
                    throw ParameterError(fmt::format("ER link probability {} outside [0, 1]", model.p));
                }
            }
        },
        spec.model);
}

ImprintedNetwork generate(const ModelSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);
    return std::visit(
        [&](const auto& model) -> ImprintedNetwork {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, BarabasiAlbert>) {
                return generate_ba(spec.n, model.m, rng);
            } else if constexpr (std::is_same_v<T, WattsStrogatz>) {
                return generate_ws(spec.n, model.k, model.p, rng);
            } else if constexpr (std::is_same_v<T, ErdosRenyi>) {
                return generate_er(spec.n, model.p, rng);
            } else {
                return generate_complete(spec.n);
            }
        },
        spec.model);
}

std::vector<std::size_t> binary_degree(const ImprintedNetwork& net) {
    std::vector<std::size_t> degree(net.size());
    const Eigen::VectorXi sums = net.adjacency().rowwise().sum();
    for (std::size_t i = 0; i < net.size(); ++i) {
        degree[i] = static_cast<std::size_t>(sums(static_cast<Eigen::Index>(i)));
    }
    return degree;
}

std::vector<double> binary_clustering(const ImprintedNetwork& net) {
    std::vector<double> clustering(net.size(), 0.0);
    for (NodeIndex i = 0; i < net.size(); ++i) {
        const auto nb = net.neighbors(i);
        const std::size_t d = nb.size();
        if (d < 2) {
            continue;
        }
        std::size_t links = 0;
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = a + 1; b < d; ++b) {
                links += net.has_edge(nb[a], nb[b]) ? 1 : 0;
            }
        }
        clustering[i] = 2.0 * static_cast<double>(links) / static_cast<double>(d * (d - 1));
    }
    return clustering;
}

std::vector<std::size_t> bfs_distances(const ImprintedNetwork& net, NodeIndex source) {
    if (source >= net.size()) {
        throw ParameterError(fmt::format("source node {} outside [0, {})", source, net.size()));
    }
    std::vector<std::size_t> dist(net.size(), unreachable);
    std::deque<NodeIndex> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const NodeIndex u = queue.front();
        queue.pop_front();
        for (NodeIndex v = 0; v < net.size(); ++v) {
            if (net.has_edge(u, v) && dist[v] == unreachable) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

DistanceGroups distance_groups(const ImprintedNetwork& net, NodeIndex source) {
    const auto dist = bfs_distances(net, source);
    DistanceGroups groups;
    groups.group_of.resize(net.size());
    for (NodeIndex v = 0; v < net.size(); ++v) {
        const std::size_t g = std::min<std::size_t>(dist[v], DistanceGroups::count - 1);
        groups.group_of[v] = g;
        groups.members[g].push_back(v);
    }
    return groups;
}

NeighborSubnetwork neighbor_subnetwork(const ImprintedNetwork& net, NodeIndex source) {
    if (source >= net.size()) {
        throw ParameterError(fmt::format("source node {} outside [0, {})", source, net.size()));
    }
    NeighborSubnetwork sub;
    sub.nodes = net.neighbors(source);
    const std::size_t k = sub.nodes.size();
    sub.induced = ImprintedNetwork(k);
    sub.connectivity.assign(k, 0);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            if (net.has_edge(sub.nodes[a], sub.nodes[b])) {
                sub.induced.add_edge(a, b);
                ++sub.connectivity[a];
                ++sub.connectivity[b];
            }
        }
    }
    return sub;
}

NodeIndex highest_degree_node(const ImprintedNetwork& net) {
    if (net.size() == 0) {
        throw ParameterError("highest_degree_node needs a non-empty network");
    }
    const auto degree = binary_degree(net);
    // max_element returns the first maximum, i.e. the smallest index.
    return static_cast<NodeIndex>(std::max_element(degree.begin(), degree.end()) - degree.begin());
}

void write_edge_list(std::ostream& out, const ImprintedNetwork& net) {
    out << "n=" << net.size() << '\n';
    for (auto [i, j] : net.edges()) {
        out << i << ' ' << j << '\n';
    }
}

ImprintedNetwork read_edge_list(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("n=", 0) != 0) {
        throw ValidationError("edge list must start with a line 'n=<N>'");
    }
    std::size_t n = 0;
    try {
        n = std::stoul(line.substr(2));
    } catch (const std::exception&) {
        throw ValidationError(fmt::format("bad edge-list header '{}'", line));
    }
    ImprintedNetwork net(n);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::istringstream fields(line);
        long long i = -1;
        long long j = -1;
        if (!(fields >> i >> j) || i < 0 || j < 0 || i >= j || static_cast<std::size_t>(j) >= n) {
            throw ValidationError(fmt::format("edge list line {}: expected 'i j' with 0 <= i < j < {}", line_no, n));
        }
        net.add_edge(static_cast<NodeIndex>(i), static_cast<NodeIndex>(j));
    }
    return net;
}

}  // namespace cvnet
