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

#include "cvnet/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include <fmt/format.h>

#include "cvnet/errors.hpp"
#include "cvnet/gaussian.hpp"
#include "cvnet/rng.hpp"

namespace cvnet {

SubtractionPlan parse_subtraction(const std::string& text) {
    if (text == "none") {
        return {};
    }
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    SubtractionPlan plan;
    if (kind == "hub") {
        plan.target = SubtractionTarget::hub;
    } else if (kind == "random") {
        plan.target = SubtractionTarget::random_node;
    } else {
        throw ParameterError(fmt::format("subtraction '{}' is not none, hub:<n> or random:<n>", text));
    }
    if (colon == std::string::npos) {
        throw ParameterError(fmt::format("subtraction '{}' lacks a photon count", text));
    }
    const std::string count = text.substr(colon + 1);
    if (count.empty() || count.find_first_not_of("0123456789") != std::string::npos) {
        throw ParameterError(fmt::format("subtraction '{}': photon count must be a non-negative integer", text));
    }
    plan.photons = std::stoul(count);
    return plan;
}

std::string to_string(const SubtractionPlan& plan) {
    switch (plan.target) {
        case SubtractionTarget::none:
            return "none";
        case SubtractionTarget::hub:
            return fmt::format("hub:{}", plan.photons);
        case SubtractionTarget::random_node:
            return fmt::format("random:{}", plan.photons);
    }
    return "none";
}

void validate(const ExperimentSpec& spec) {
    validate(spec.model);
    if (spec.realizations < 1) {
        throw ParameterError("an experiment needs at least one realization");
    }
    if (spec.workers < 1) {
        throw ParameterError("worker count must be at least 1");
    }
    if (!std::isfinite(spec.squeezing_db)) {
        throw ParameterError("squeezing must be finite");
    }
}

std::string to_string(State s) {
    switch (s) {
        case State::imprinted:
            return "imprinted";
        case State::gaussian:
            return "gaussian";
        case State::subtracted:
            return "subtracted";
    }
    return "?";
}

std::string to_string(Metric m) { return m == Metric::degree ? "degree" : "clustering"; }

RealizationSeeds realization_seeds(std::uint64_t master_seed, std::size_t index) {
    const std::uint64_t r = derive_seed(master_seed, index);
    return {r, derive_seed(r, 0), derive_seed(r, 1)};
}

std::uint64_t bootstrap_seed(std::uint64_t master_seed, std::size_t summary_index) {
    return derive_seed(derive_seed(master_seed, std::numeric_limits<std::uint64_t>::max()), summary_index);
}

std::string nn_group_name(int connectivity) { return fmt::format("nn_{}", connectivity); }

const GroupSummary* EnsembleReport::find(const std::string& group, State s, Metric m) const {
    for (const auto& g : summaries) {
        if (g.group == group && g.state == s && g.metric == m) {
            return &g;
        }
    }
    return nullptr;
}

std::vector<double> pool_all(const std::vector<RealizationRecord>& records, State s, Metric m) {
    std::vector<double> out;
    for (const auto& rec : records) {
        const auto& v = rec.series(s, m);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

GroupedSamples group_by_distance(const std::vector<RealizationRecord>& records, State s, Metric m) {
    GroupedSamples out;
    for (const auto& rec : records) {
        if (!rec.subtraction_node) {
            continue;
        }
        const auto& v = rec.series(s, m);
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[distance_group_names[static_cast<std::size_t>(rec.group_distance[i])]].push_back(v[i]);
        }
    }
    return out;
}

GroupedSamples group_by_nn_connectivity(const std::vector<RealizationRecord>& records, State s, Metric m) {
    GroupedSamples out;
    for (const auto& rec : records) {
        const auto& v = rec.series(s, m);
        for (std::size_t i = 0; i < v.size() && i < rec.nn_connectivity.size(); ++i) {
            if (rec.nn_connectivity[i] != not_applicable) {
                out[nn_group_name(rec.nn_connectivity[i])].push_back(v[i]);
            }
        }
    }
    return out;
}

RealizationRecord run_realization(const ExperimentSpec& spec, std::size_t index) {
    const RealizationSeeds seeds = realization_seeds(spec.master_seed, index);
    ModelSpec model = spec.model;
    model.seed = seeds.network;

    RealizationRecord rec;
    rec.index = index;
    rec.seed = seeds.realization;
    rec.network = generate(model);
    const std::size_t n = rec.network.size();

    const Squeezing squeezing = Squeezing::from_db(spec.squeezing_db);
    auto set = [&rec](State s, Metric m, std::vector<double> v) {
        rec.values[static_cast<std::size_t>(s)][static_cast<std::size_t>(m)] = std::move(v);
    };

    const auto degree = binary_degree(rec.network);
    set(State::imprinted, Metric::degree, {degree.begin(), degree.end()});
    set(State::imprinted, Metric::clustering, binary_clustering(rec.network));

    rec.gaussian = gaussian_emergent(rec.network, squeezing);
    set(State::gaussian, Metric::degree, weighted_degree(rec.gaussian));
    set(State::gaussian, Metric::clustering, weighted_clustering(rec.gaussian, spec.clustering));

    rec.group_distance.assign(n, not_applicable);
    rec.nn_connectivity.assign(n, not_applicable);
    if (!spec.subtraction.active()) {
        return rec;
    }

    NodeIndex node = 0;
    if (spec.subtraction.target == SubtractionTarget::hub) {
        node = highest_degree_node(rec.network);
    } else {
        Rng rng(seeds.subtraction_node);
        node = rng.index(n);
    }
    rec.subtraction_node = node;

    const DistanceGroups groups = distance_groups(rec.network, node);
    for (NodeIndex i = 0; i < n; ++i) {
        rec.group_distance[i] = static_cast<int>(groups.group_of[i]);
    }
    const NeighborSubnetwork nn = neighbor_subnetwork(rec.network, node);
    for (std::size_t a = 0; a < nn.nodes.size(); ++a) {
        rec.nn_connectivity[nn.nodes[a]] = static_cast<int>(nn.connectivity[a]);
    }

    const ContractionTable table(cluster_covariance(rec.network, squeezing));
    const SubtractionSpec sub{node, spec.subtraction.photons};
    const PhotonStatistics stats =
        photon_statistics(rec.network, table, sub, spec.exact ? Evaluation::exact : Evaluation::shortcut);
    rec.subtracted = correlation_network(stats, StateTag::subtracted(node, spec.subtraction.photons));
    set(State::subtracted, Metric::degree, weighted_degree(*rec.subtracted));
    set(State::subtracted, Metric::clustering, weighted_clustering(*rec.subtracted, spec.clustering));
    return rec;
}

namespace {

bool is_recoverable(const std::exception_ptr& error, std::string& reason) {
    try {
        std::rethrow_exception(error);
    } catch (const DegenerateSubtractionError& e) {
        reason = fmt::format("degenerate subtraction: {}", e.what());
    } catch (const DegenerateVarianceError& e) {
        reason = fmt::format("degenerate variance: {}", e.what());
    } catch (const ConsistencyError& e) {
        reason = fmt::format("numerical consistency: {}", e.what());
    } catch (...) {
        return false;
    }
    return true;
}

// Fixed group order: all, distance_0..distance_3plus, nn_0, nn_1, ...
std::vector<std::string> ordered_group_names(const std::vector<RealizationRecord>& records) {
    std::vector<std::string> names{"all"};
    bool any_subtraction = false;
    int max_nn = -1;
    for (const auto& rec : records) {
        any_subtraction = any_subtraction || rec.subtraction_node.has_value();
        for (int c : rec.nn_connectivity) {
            max_nn = std::max(max_nn, c);
        }
    }
    if (any_subtraction) {
        names.insert(names.end(), distance_group_names.begin(), distance_group_names.end());
    }
    for (int c = 0; c <= max_nn; ++c) {
        names.push_back(nn_group_name(c));
    }
    return names;
}

std::vector<double> samples_for(const std::vector<RealizationRecord>& records, const std::string& group, State s,
                                Metric m) {
    if (group == "all") {
        return pool_all(records, s, m);
    }
    const GroupedSamples grouped = group.rfind("distance_", 0) == 0 ? group_by_distance(records, s, m)
                                                                     : group_by_nn_connectivity(records, s, m);
    const auto it = grouped.find(group);
    return it == grouped.end() ? std::vector<double>{} : it->second;
}

}  // namespace

EnsembleReport run_experiment(const ExperimentSpec& spec) {
    validate(spec);
    std::vector<std::optional<RealizationRecord>> results(spec.realizations);
    std::vector<std::exception_ptr> errors(spec.realizations);
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (std::size_t r = next++; r < spec.realizations; r = next++) {
            try {
                results[r] = run_realization(spec, r);
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min(spec.workers, spec.realizations);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    EnsembleReport report;
    report.spec = spec;
    for (std::size_t r = 0; r < spec.realizations; ++r) {
        if (errors[r]) {
            std::string reason;
            if (!is_recoverable(errors[r], reason)) {
                std::rethrow_exception(errors[r]);
            }
            report.skipped.push_back({r, std::move(reason)});
        } else {
            report.realizations.push_back(std::move(*results[r]));
        }
    }
    if (report.realizations.empty()) {
        return report;
    }

    const bool subtracted = spec.subtraction.active();
    std::size_t summary_index = 0;
    for (const std::string& group : ordered_group_names(report.realizations)) {
        for (Metric m : all_metrics) {
            std::array<std::vector<double>, 3> per_state;
            for (State s : all_states) {
                if (s == State::subtracted && !subtracted) {
                    continue;
                }
                per_state[static_cast<std::size_t>(s)] = samples_for(report.realizations, group, s, m);
            }
            for (State s : all_states) {
                const auto& samples = per_state[static_cast<std::size_t>(s)];
                if (samples.empty()) {
                    continue;
                }
                const BootstrapOptions boot{spec.bootstrap_resamples, bootstrap_seed(spec.master_seed, summary_index++)};
                report.summaries.push_back({group, s, m, moments(samples, boot)});
            }

            // Emergent states share edges so before/after histograms overlay.
            std::vector<double> emergent;
            for (State s : {State::gaussian, State::subtracted}) {
                const auto& v = per_state[static_cast<std::size_t>(s)];
                emergent.insert(emergent.end(), v.begin(), v.end());
            }
            for (State s : all_states) {
                const auto& samples = per_state[static_cast<std::size_t>(s)];
                if (samples.empty()) {
                    continue;
                }
                const auto& basis = s == State::imprinted ? samples : emergent;
                report.histograms.push_back(
                    {group, s, m,
                     histogram_with_edges(samples, bin_edges(basis, spec.binning), spec.binning.log_scale)});
            }
        }
    }
    return report;
}

}  // namespace cvnet
