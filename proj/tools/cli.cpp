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

#include "cli.hpp"

#include <fstream>
#include <ostream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cvnet/errors.hpp"
#include "cvnet/io.hpp"

namespace cvnet::cli {

namespace {

int code(ExitCode c) { return static_cast<int>(c); }

int report_error(std::ostream& err) {
    const ExitCode c = exit_code_for_current_exception();
    try {
        throw;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
    } catch (...) {
        fmt::print(err, "error: unknown failure\n");
    }
    return code(c);
}

template <typename T>
T require(const std::optional<T>& v, const char* flag, const std::string& model) {
    if (!v) {
        throw ParameterError(fmt::format("model '{}' requires {}", model, flag));
    }
    return *v;
}

void reject(bool present, const char* flag, const std::string& model) {
    if (present) {
        throw ParameterError(fmt::format("{} does not apply to model '{}'", flag, model));
    }
}

}  // namespace

ModelSpec apply_model_flags(const ModelFlags& flags, std::optional<ModelSpec> base) {
    ModelSpec spec;
    if (flags.model) {
        const std::string& name = *flags.model;
        spec.n = flags.n ? *flags.n : (base ? base->n : require(flags.n, "--n", name));
        // A fresh model type takes its parameters from the flags only, unless
        // the config already names the same type.
        const bool same = base && model_name(base->model) == name;
        if (name == "ba") {
            const auto m = flags.m ? flags.m : (same ? std::optional(std::get<BarabasiAlbert>(base->model).m) : std::nullopt);
            reject(flags.k.has_value(), "--k", name);
            reject(flags.p.has_value(), "--p", name);
            spec.model = BarabasiAlbert{require(m, "--m", name)};
        } else if (name == "ws") {
            reject(flags.m.has_value(), "--m", name);
            const auto* old = same ? &std::get<WattsStrogatz>(base->model) : nullptr;
            const auto k = flags.k ? flags.k : (old ? std::optional(old->k) : std::nullopt);
            const auto p = flags.p ? flags.p : (old ? std::optional(old->p) : std::nullopt);
            spec.model = WattsStrogatz{require(k, "--k", name), require(p, "--p", name)};
        } else if (name == "er") {
            reject(flags.m.has_value(), "--m", name);
            reject(flags.k.has_value(), "--k", name);
            const auto p = flags.p ? flags.p : (same ? std::optional(std::get<ErdosRenyi>(base->model).p) : std::nullopt);
            spec.model = ErdosRenyi{require(p, "--p", name)};
        } else if (name == "complete") {
            reject(flags.m.has_value(), "--m", name);
            reject(flags.k.has_value(), "--k", name);
            reject(flags.p.has_value(), "--p", name);
            spec.model = Complete{};
        } else {
            throw ParameterError(fmt::format("unknown model '{}' (expected ba, ws, er or complete)", name));
        }
    } else {
        if (!base) {
            throw ParameterError("--model is required without a config file");
        }
        spec = *base;
        const std::string name = model_name(spec.model);
        if (flags.n) {
            spec.n = *flags.n;
        }
        if (auto* ba = std::get_if<BarabasiAlbert>(&spec.model)) {
            reject(flags.k || flags.p, "--k/--p", name);
            ba->m = flags.m.value_or(ba->m);
        } else if (auto* ws = std::get_if<WattsStrogatz>(&spec.model)) {
            reject(flags.m.has_value(), "--m", name);
            ws->k = flags.k.value_or(ws->k);
            ws->p = flags.p.value_or(ws->p);
        } else if (auto* er = std::get_if<ErdosRenyi>(&spec.model)) {
            reject(flags.m || flags.k, "--m/--k", name);
            er->p = flags.p.value_or(er->p);
        } else {
            reject(flags.m || flags.k || flags.p, "--m/--k/--p", name);
        }
    }
    validate(spec);
    return spec;
}

ResolvedRun resolve_run(const RunOptions& options) {
    ResolvedRun run;
    std::optional<ModelSpec> base;
    if (options.config) {
        const nlohmann::json doc = read_json_file(*options.config);
        run.spec = config_from_json(doc);
        base = run.spec.model;
        if (doc.is_object() && doc.contains("out") && doc.at("out").is_string()) {
            run.out = doc.at("out").get<std::string>();
        }
    }
    run.spec.model = apply_model_flags(options.model, base);
    if (options.seed) {
        run.spec.master_seed = *options.seed;
    }
    if (options.squeezing_db) {
        run.spec.squeezing_db = *options.squeezing_db;
    }
    if (options.subtract) {
        run.spec.subtraction = parse_subtraction(*options.subtract);
    }
    if (options.realizations) {
        run.spec.realizations = *options.realizations;
    }
    if (options.workers) {
        run.spec.workers = *options.workers;
    }
    if (options.exact) {
        run.spec.exact = true;
    }
    if (options.clustering) {
        run.spec.clustering = clustering_convention_from_string(*options.clustering);
    }
    if (options.out) {
        run.out = *options.out;
    }
    if (run.out.empty()) {
        throw ParameterError("no output directory: pass --out or set \"out\" in the config");
    }
    validate(run.spec);
    return run;
}

int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err) {
    try {
        ModelSpec spec = apply_model_flags(options.model, std::nullopt);
        spec.seed = options.seed;
        const ImprintedNetwork net = generate(spec);
        if (options.out.empty()) {
            write_edge_list(out, net);
        } else {
            std::ofstream file(options.out, std::ios::binary | std::ios::trunc);
            if (!file) {
                throw IoError(fmt::format("cannot open {} for writing", options.out.string()));
            }
            write_edge_list(file, net);
            file.flush();
            if (!file) {
                throw IoError(fmt::format("failed writing {}", options.out.string()));
            }
            fmt::print(out, "wrote {} ({} nodes, {} edges)\n", options.out.string(), net.size(), net.edge_count());
        }
        return code(ExitCode::ok);
    } catch (...) {
        return report_error(err);
    }
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
    try {
        const ResolvedRun run = resolve_run(options);
        const EnsembleReport report = run_experiment(run.spec);
        write_run_directory(report, run.out);
        fmt::print(out, "wrote {} ({} realizations, {} skipped)\n", run.out.string(), report.realizations.size(),
                   report.skipped.size());
        return code(ExitCode::ok);
    } catch (...) {
        return report_error(err);
    }
}

namespace {

std::string cell(const nlohmann::json& v) {
    return v.is_null() ? std::string("-") : fmt::format("{:.10g}", v.get<double>());
}

std::string describe_model(const nlohmann::json& model) {
    std::string text = fmt::format("{} n={}", model.at("type").get<std::string>(), model.at("n").get<std::size_t>());
    for (const char* key : {"m", "k", "p"}) {
        if (model.contains(key)) {
            text += fmt::format(" {}={}", key, model.at(key).dump());
        }
    }
    return text;
}

}  // namespace

int cmd_report(const std::filesystem::path& dir, std::ostream& out, std::ostream& err) {
    try {
        if (!std::filesystem::is_directory(dir)) {
            throw IoError(fmt::format("{} is not a directory", dir.string()));
        }
        for (const char* name : {"manifest.json", "samples.csv", "moments.json", "histograms.csv"}) {
            if (!std::filesystem::is_regular_file(dir / name)) {
                throw IoError(fmt::format("{} is missing {}", dir.string(), name));
            }
        }
        const nlohmann::json manifest = read_json_file(dir / "manifest.json");
        const nlohmann::json moments = read_json_file(dir / "moments.json");
        try {
            const auto& config = manifest.at("config");
            fmt::print(out, "model {} | squeezing {} dB | subtraction {} | clustering {}\n",
                       describe_model(config.at("model")), config.at("squeezing_db").dump(),
                       config.at("subtraction").get<std::string>(), config.at("clustering").get<std::string>());
            fmt::print(out, "realizations completed: {} of {}\n", manifest.at("realizations_completed").get<std::size_t>(),
                       manifest.at("realizations_requested").get<std::size_t>());
            const auto& skipped = manifest.at("skipped");
            fmt::print(out, "skipped realizations: {}\n", skipped.size());
            for (const auto& s : skipped) {
                fmt::print(out, "  realization {}: {}\n", s.at("realization").get<std::size_t>(),
                           s.at("reason").get<std::string>());
            }
            fmt::print(out, "\n{:<16} {:<11} {:<10} {:>7} {:>17} {:>17} {:>17} {:>17} {:>17} {:>17}\n", "group", "state",
                       "metric", "count", "mean", "mean_se", "variance", "variance_se", "skewness", "kurtosis");
            for (const auto& row : moments.at("summaries")) {
                fmt::print(out, "{:<16} {:<11} {:<10} {:>7} {:>17} {:>17} {:>17} {:>17} {:>17} {:>17}\n",
                           row.at("group").get<std::string>(), row.at("state").get<std::string>(),
                           row.at("metric").get<std::string>(), row.at("count").get<std::size_t>(),
                           cell(row.at("mean")), cell(row.at("mean_se")), cell(row.at("variance")),
                           cell(row.at("variance_se")), cell(row.at("skewness")), cell(row.at("kurtosis")));
            }
        } catch (const nlohmann::json::exception& e) {
            throw IoError(fmt::format("{} does not match the run-directory schema: {}", dir.string(), e.what()));
        }
        return code(ExitCode::ok);
    } catch (...) {
        return report_error(err);
    }
}

namespace {

void add_model_flags(CLI::App& app, ModelFlags& flags) {
    app.add_option("--model", flags.model, "Network model")->check(CLI::IsMember({"ba", "ws", "er", "complete"}));
    app.add_option("--n", flags.n, "Number of nodes");
    app.add_option("--m", flags.m, "BA links per new node");
    app.add_option("--k", flags.k, "WS neighbours on each side");
    app.add_option("--p", flags.p, "WS rewiring or ER edge probability");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Emergent networks of photon-subtracted continuous-variable cluster states", "cvnet"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);

    GenerateOptions gen;
    auto* generate_cmd = app.add_subcommand("generate", "Draw an imprinted network and write its edge list");
    add_model_flags(*generate_cmd, gen.model);
    generate_cmd->add_option("--seed", gen.seed, "Random seed");
    generate_cmd->add_option("--out", gen.out, "Edge-list file (default: standard output)");

    RunOptions runopt;
    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run an ensemble experiment and write a run directory");
    run_cmd->add_option("config", config_path, "JSON config file");
    add_model_flags(*run_cmd, runopt.model);
    run_cmd->add_option("--seed", runopt.seed, "Master seed");
    run_cmd->add_option("--squeezing-db", runopt.squeezing_db, "Squeezing in dB");
    run_cmd->add_option("--subtract,--subtraction", runopt.subtract, "none, hub:<n> or random:<n>");
    run_cmd->add_option("--realizations", runopt.realizations, "Number of random realizations");
    run_cmd->add_option("--workers", runopt.workers, "Worker threads");
    run_cmd->add_flag("--exact", runopt.exact, "Evaluate every pair with the Wick engine");
    run_cmd->add_option("--clustering", runopt.clustering, "paper or strict")
        ->check(CLI::IsMember({"paper", "strict"}));
    run_cmd->add_option("--out", runopt.out, "Run directory");

    std::string report_dir;
    auto* report_cmd = app.add_subcommand("report", "Print the moment table of a run directory");
    report_cmd->add_option("dir", report_dir, "Run directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : code(ExitCode::usage);
    }

    if (generate_cmd->parsed()) {
        return cmd_generate(gen, out, err);
    }
    if (run_cmd->parsed()) {
        if (!config_path.empty()) {
            runopt.config = config_path;
        }
        return cmd_run(runopt, out, err);
    }
    return cmd_report(report_dir, out, err);
}

}  // namespace cvnet::cli
