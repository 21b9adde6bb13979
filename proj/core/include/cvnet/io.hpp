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

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "cvnet/emergent.hpp"
#include "cvnet/ensemble.hpp"

namespace cvnet {

inline constexpr int config_schema_version = 1;
inline constexpr int output_schema_version = 1;
inline constexpr const char* tool_version = "1.0.0";

/// Decimal with 17 significant digits ("%.17g").
std::string format_number(double x);

/// Experiment config document:
///
///     {
///       "schema_version": 1,
///       "model": {"type": "ws", "n": 100, "k": 5, "p": 0.2},
///       "squeezing_db": 15,
///       "subtraction": "hub:10",
///       "realizations": 20,
///       "master_seed": 7,
///       "exact": false,
///       "clustering": "paper",
///       "workers": 4,
///       "bootstrap_resamples": 1000,
///       "binning": {"kind": "freedman_diaconis", "log_scale": false}
///     }
///
/// Only "model" is required. "model" takes "m" for ba, "k" and "p" for ws,
/// "p" for er. An optional "out" string is allowed and ignored here.
nlohmann::json config_to_json(const ExperimentSpec& spec);

/// Parses a config document, or the "config" member of a run manifest.
/// Throws ValidationError naming the offending field path, e.g.
/// "config.model.k: expected an integer >= 1".
ExperimentSpec config_from_json(const nlohmann::json& doc);

/// Dense N x N CSV of the weights, 17 significant digits.
void write_emergent_csv(std::ostream& out, const EmergentNetwork& net);

/// {"n": N, "state_tag": "...", "weights": [row-major N*N values]}.
nlohmann::json emergent_to_json(const EmergentNetwork& net);

/// Columns: realization,node,group_distance,nn_connectivity,state,degree,clustering.
/// group_distance is 0, 1, 2 or 3 (three or more); -1 without subtraction.
/// nn_connectivity is -1 except for distance-1 nodes.
void write_samples_csv(std::ostream& out, const EnsembleReport& report);

/// Columns: group,state,metric,bin,lower,upper,count.
void write_histograms_csv(std::ostream& out, const EnsembleReport& report);

nlohmann::json moments_to_json(const EnsembleReport& report);
nlohmann::json manifest_to_json(const EnsembleReport& report);

/// Writes manifest.json, samples.csv, moments.json and histograms.csv.
/// Creates `dir` if needed; throws IoError on failure.
void write_run_directory(const EnsembleReport& report, const std::filesystem::path& dir);

/// Reads a JSON file; throws IoError if missing or unparseable.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace cvnet
