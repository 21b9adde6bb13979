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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "cvnet/ensemble.hpp"
#include "cvnet/graph.hpp"

namespace cvnet::cli {

/// Model flags shared by `generate` and `run`. Unset fields keep the value
/// from the config file (run) or are required (generate).
struct ModelFlags {
    std::optional<std::string> model;
    std::optional<std::size_t> n;
    std::optional<std::size_t> m;
    std::optional<std::size_t> k;
    std::optional<double> p;
};

struct GenerateOptions {
    ModelFlags model;
    std::uint64_t seed = 0;
    /// Edge list destination; empty writes to the output stream.
    std::filesystem::path out;
};

struct RunOptions {
    std::optional<std::filesystem::path> config;
    ModelFlags model;
    std::optional<std::uint64_t> seed;
    std::optional<double> squeezing_db;
    std::optional<std::string> subtract;
    std::optional<std::size_t> realizations;
    std::optional<std::size_t> workers;
    bool exact = false;
    std::optional<std::string> clustering;
    std::optional<std::filesystem::path> out;
};

/// Applies flags on top of `base`. Throws ParameterError when a flag does not
/// belong to the resulting model type or a required parameter is missing.
ModelSpec apply_model_flags(const ModelFlags& flags, std::optional<ModelSpec> base);

/// Config file (if any) with command-line overrides applied; the output
/// directory comes from --out or the config's "out" field.
struct ResolvedRun {
    ExperimentSpec spec;
    std::filesystem::path out;
};
ResolvedRun resolve_run(const RunOptions& options);

// Each command reports errors on `err` and returns an ExitCode value.
int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err);
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_report(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);

/// Full command line, as invoked by main.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cvnet::cli
