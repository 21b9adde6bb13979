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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cvnet/emergent.hpp"
#include "cvnet/graph.hpp"
#include "cvnet/stats.hpp"
#include "cvnet/wick.hpp"

namespace cvnet {

enum class SubtractionTarget {
    none,
    /// Highest imprinted degree, smallest index on ties.
    hub,
    /// Uniform over all nodes, drawn from the realization's own stream.
    random_node,
};

struct SubtractionPlan {
    SubtractionTarget target = SubtractionTarget::none;
    std::size_t photons = 0;

    bool active() const noexcept { return target != SubtractionTarget::none; }
    friend bool operator==(const SubtractionPlan&, const SubtractionPlan&) = default;
};

/// Parses "none", "hub:<n>" or "random:<n>".
SubtractionPlan parse_subtraction(const std::string& text);
std::string to_string(const SubtractionPlan& plan);

struct ExperimentSpec {
    /// Network model and size; the seed field is ignored (set per realization).
    ModelSpec model;
    double squeezing_db = 15.0;
    SubtractionPlan subtraction;
    std::size_t realizations = 1;
    std::uint64_t master_seed = 0;
    /// Evaluate every photon-number moment with the Wick engine instead of
    /// using the locality shortcut.
    bool exact = false;
    ClusteringConvention clustering = ClusteringConvention::paper;
    std::size_t workers = 1;
    std::size_t bootstrap_resamples = 1000;
    Binning binning;
};

/// Throws ParameterError on an invalid spec.
void validate(const ExperimentSpec& spec);

enum class State : std::size_t { imprinted = 0, gaussian = 1, subtracted = 2 };
inline constexpr std::array<State, 3> all_states{State::imprinted, State::gaussian, State::subtracted};
std::string to_string(State s);

enum class Metric : std::size_t { degree = 0, clustering = 1 };
inline constexpr std::array<Metric, 2> all_metrics{Metric::degree, Metric::clustering};
std::string to_string(Metric m);

/// Seeds of the independent streams inside realization r.
struct RealizationSeeds {
    std::uint64_t realization;
    std::uint64_t network;
    std::uint64_t subtraction_node;
};
RealizationSeeds realization_seeds(std::uint64_t master_seed, std::size_t index);

/// Bootstrap stream for the k-th summary of a report.
std::uint64_t bootstrap_seed(std::uint64_t master_seed, std::size_t summary_index);

inline constexpr int not_applicable = -1;

struct RealizationRecord {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    ImprintedNetwork network;
    std::optional<NodeIndex> subtraction_node;
    /// 0, 1, 2 or 3 (= three or more / unreachable) per node; not_applicable
    /// without subtraction.
    std::vector<int> group_distance;
    /// For distance-1 nodes, links to other neighbours of the subtraction
    /// node; not_applicable elsewhere.
    std::vector<int> nn_connectivity;
    /// Indexed by State then Metric; the subtracted entries are empty without
    /// subtraction.
    std::array<std::array<std::vector<double>, 2>, 3> values;
    EmergentNetwork gaussian;
    std::optional<EmergentNetwork> subtracted;

    const std::vector<double>& series(State s, Metric m) const {
        return values[static_cast<std::size_t>(s)][static_cast<std::size_t>(m)];
    }
};

struct SkippedRealization {
    std::size_t index = 0;
    std::string reason;
};

struct GroupSummary {
    std::string group;
    State state = State::gaussian;
    Metric metric = Metric::degree;
    MomentSummary summary;
};

struct GroupHistogram {
    std::string group;
    State state = State::gaussian;
    Metric metric = Metric::degree;
    Histogram histogram;
};

/// Node groups used for pooling. "all" always; with subtraction also
/// "distance_0", "distance_1", "distance_2", "distance_3plus" and
/// "nn_<c>" for every observed neighbour connectivity c.
using GroupedSamples = std::map<std::string, std::vector<double>>;

struct EnsembleReport {
    ExperimentSpec spec;
    /// Completed realizations ordered by index.
    std::vector<RealizationRecord> realizations;
    std::vector<SkippedRealization> skipped;
    std::vector<GroupSummary> summaries;
    std::vector<GroupHistogram> histograms;

    const GroupSummary* find(const std::string& group, State s, Metric m) const;
};

/// Names of the distance groups in order 0, 1, 2, >= 3.
inline const std::array<std::string, 4> distance_group_names{"distance_0", "distance_1", "distance_2",
                                                             "distance_3plus"};
std::string nn_group_name(int connectivity);

/// Pools all nodes of all realizations for one state and metric.
std::vector<double> pool_all(const std::vector<RealizationRecord>& records, State s, Metric m);
GroupedSamples group_by_distance(const std::vector<RealizationRecord>& records, State s, Metric m);
GroupedSamples group_by_nn_connectivity(const std::vector<RealizationRecord>& records, State s, Metric m);

/// One realization. Throws on degenerate input; run_experiment turns those
/// errors into skip records.
RealizationRecord run_realization(const ExperimentSpec& spec, std::size_t index);

/// Runs every realization on `spec.workers` threads and aggregates in
/// realization order, so the report does not depend on the worker count.
EnsembleReport run_experiment(const ExperimentSpec& spec);

}  // namespace cvnet
