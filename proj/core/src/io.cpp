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

#include "cvnet/io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "cvnet/errors.hpp"

namespace cvnet {

using nlohmann::json;

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

namespace {

// Typed accessors that report failures with the full field path.
class ObjectReader {
   public:
    ObjectReader(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
        if (!doc_.is_object()) {
            fail(path_, "expected an object");
        }
    }

    [[noreturn]] static void fail(const std::string& path, const std::string& what) {
        throw ValidationError(fmt::format("{}: {}", path, what));
    }

    std::string field(const std::string& key) const { return path_ + "." + key; }
    bool has(const std::string& key) const { return doc_.contains(key); }
    const json& at(const std::string& key) const {
        if (!doc_.contains(key)) {
            fail(field(key), "required field missing");
        }
        return doc_.at(key);
    }

    void allow_only(std::initializer_list<const char*> keys) const {
        for (const auto& [key, value] : doc_.items()) {
            if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
                fail(field(key), "unknown field");
            }
        }
    }

    std::uint64_t unsigned_at(const std::string& key, std::uint64_t min = 0) const {
        const json& v = at(key);
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
            fail(field(key), fmt::format("expected an integer >= {}", min));
        }
        const auto value = v.get<std::uint64_t>();
        if (value < min) {
            fail(field(key), fmt::format("expected an integer >= {}", min));
        }
        return value;
    }

    double number_at(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_number()) {
            fail(field(key), "expected a number");
        }
        return v.get<double>();
    }

    bool bool_at(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_boolean()) {
            fail(field(key), "expected true or false");
        }
        return v.get<bool>();
    }

    std::string string_at(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_string()) {
            fail(field(key), "expected a string");
        }
        return v.get<std::string>();
    }

   private:
    const json& doc_;
    std::string path_;
};

json model_to_json(const ModelSpec& spec) {
    json j;
    j["type"] = model_name(spec.model);
    j["n"] = spec.n;
    std::visit(
        [&j](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, BarabasiAlbert>) {
                j["m"] = m.m;
            } else if constexpr (std::is_same_v<T, WattsStrogatz>) {
                j["k"] = m.k;
                j["p"] = m.p;
            } else if constexpr (std::is_same_v<T, ErdosRenyi>) {
                j["p"] = m.p;
            }
        },
        spec.model);
    return j;
}

ModelSpec model_from_json(const json& doc, const std::string& path) {
    const ObjectReader r(doc, path);
    const std::string type = r.string_at("type");
    ModelSpec spec;
    spec.n = r.unsigned_at("n", 1);
    if (type == "ba") {
        r.allow_only({"type", "n", "m"});
        spec.model = BarabasiAlbert{r.unsigned_at("m", 1)};
    } else if (type == "ws") {
        r.allow_only({"type", "n", "k", "p"});
        spec.model = WattsStrogatz{r.unsigned_at("k", 1), r.number_at("p")};
    } else if (type == "er") {
        r.allow_only({"type", "n", "p"});
        spec.model = ErdosRenyi{r.number_at("p")};
    } else if (type == "complete") {
        r.allow_only({"type", "n"});
        spec.model = Complete{};
    } else {
        ObjectReader::fail(r.field("type"), fmt::format("unknown model '{}' (expected ba, ws, er or complete)", type));
    }
    try {
        validate(spec);
    } catch (const ParameterError& e) {
        ObjectReader::fail(path, e.what());
    }
    return spec;
}

json binning_to_json(const Binning& b) {
    json j;
    switch (b.kind) {
        case Binning::Kind::freedman_diaconis:
            j["kind"] = "freedman_diaconis";
            break;
        case Binning::Kind::count:
            j["kind"] = "count";
            j["bins"] = b.bins;
            break;
        case Binning::Kind::width:
            j["kind"] = "width";
            j["width"] = b.width;
            break;
        case Binning::Kind::edges:
            j["kind"] = "edges";
            j["edges"] = b.edges;
            break;
    }
    j["log_scale"] = b.log_scale;
    return j;
}

Binning binning_from_json(const json& doc, const std::string& path) {
    const ObjectReader r(doc, path);
    r.allow_only({"kind", "bins", "width", "edges", "log_scale"});
    Binning b;
    const std::string kind = r.has("kind") ? r.string_at("kind") : "freedman_diaconis";
    if (kind == "freedman_diaconis") {
        b.kind = Binning::Kind::freedman_diaconis;
    } else if (kind == "count") {
        b.kind = Binning::Kind::count;
        b.bins = r.unsigned_at("bins", 1);
    } else if (kind == "width") {
        b.kind = Binning::Kind::width;
        b.width = r.number_at("width");
        if (!(b.width > 0.0)) {
            ObjectReader::fail(r.field("width"), "expected a positive number");
        }
    } else if (kind == "edges") {
        b.kind = Binning::Kind::edges;
        const json& e = r.at("edges");
        if (!e.is_array() || e.size() < 2 || !std::all_of(e.begin(), e.end(), [](const json& x) { return x.is_number(); })) {
            ObjectReader::fail(r.field("edges"), "expected an array of at least two numbers");
        }
        b.edges = e.get<std::vector<double>>();
        if (std::adjacent_find(b.edges.begin(), b.edges.end(), std::greater_equal<>()) != b.edges.end()) {
            ObjectReader::fail(r.field("edges"), "edges must be strictly increasing");
        }
    } else {
        ObjectReader::fail(r.field("kind"), fmt::format("unknown binning '{}'", kind));
    }
    if (r.has("log_scale")) {
        b.log_scale = r.bool_at("log_scale");
    }
    return b;
}

}  // namespace

json config_to_json(const ExperimentSpec& spec) {
    json j;
    j["schema_version"] = config_schema_version;
    j["model"] = model_to_json(spec.model);
    j["squeezing_db"] = spec.squeezing_db;
    j["subtraction"] = to_string(spec.subtraction);
    j["realizations"] = spec.realizations;
    j["master_seed"] = spec.master_seed;
    j["exact"] = spec.exact;
    j["clustering"] = to_string(spec.clustering);
    j["workers"] = spec.workers;
    j["bootstrap_resamples"] = spec.bootstrap_resamples;
    j["binning"] = binning_to_json(spec.binning);
    return j;
}

ExperimentSpec config_from_json(const json& input) {
    const bool is_manifest = input.is_object() && input.contains("config") && input.contains("manifest_schema_version");
    const json& doc = is_manifest ? input.at("config") : input;
    const std::string root = "config";
    const ObjectReader r(doc, root);
    r.allow_only({"schema_version", "model", "squeezing_db", "subtraction", "realizations", "master_seed", "exact",
                  "clustering", "workers", "bootstrap_resamples", "binning", "out"});
    if (r.has("schema_version") && r.unsigned_at("schema_version") != config_schema_version) {
        ObjectReader::fail(r.field("schema_version"), fmt::format("unsupported version (expected {})", config_schema_version));
    }
    ExperimentSpec spec;
    spec.model = model_from_json(r.at("model"), r.field("model"));
    if (r.has("squeezing_db")) {
        spec.squeezing_db = r.number_at("squeezing_db");
    }
    if (r.has("subtraction")) {
        try {
            spec.subtraction = parse_subtraction(r.string_at("subtraction"));
        } catch (const ParameterError& e) {
            ObjectReader::fail(r.field("subtraction"), e.what());
        }
    }
    if (r.has("realizations")) {
        spec.realizations = r.unsigned_at("realizations", 1);
    }
    if (r.has("master_seed")) {
        spec.master_seed = r.unsigned_at("master_seed");
    }
    if (r.has("exact")) {
        spec.exact = r.bool_at("exact");
    }
    if (r.has("clustering")) {
        try {
            spec.clustering = clustering_convention_from_string(r.string_at("clustering"));
        } catch (const ParameterError& e) {
            ObjectReader::fail(r.field("clustering"), e.what());
        }
    }
    if (r.has("workers")) {
        spec.workers = r.unsigned_at("workers", 1);
    }
    if (r.has("bootstrap_resamples")) {
        spec.bootstrap_resamples = r.unsigned_at("bootstrap_resamples");
    }
    if (r.has("binning")) {
        spec.binning = binning_from_json(r.at("binning"), r.field("binning"));
    }
    if (r.has("out")) {
        (void)r.string_at("out");
    }
    return spec;
}

void write_emergent_csv(std::ostream& out, const EmergentNetwork& net) {
    const auto& w = net.weights();
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        for (Eigen::Index j = 0; j < w.cols(); ++j) {
            out << (j == 0 ? "" : ",") << format_number(w(i, j));
        }
        out << '\n';
    }
}

json emergent_to_json(const EmergentNetwork& net) {
    json j;
    j["n"] = net.size();
    j["state_tag"] = net.tag().to_string();
    std::vector<double> flat;
    flat.reserve(net.size() * net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        for (std::size_t k = 0; k < net.size(); ++k) {
            flat.push_back(net.weight(i, k));
        }
    }
    j["weights"] = std::move(flat);
    return j;
}

void write_samples_csv(std::ostream& out, const EnsembleReport& report) {
    out << "realization,node,group_distance,nn_connectivity,state,degree,clustering\n";
    for (const auto& rec : report.realizations) {
        const std::size_t n = rec.network.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (State s : all_states) {
                const auto& degree = rec.series(s, Metric::degree);
                if (degree.empty()) {
                    continue;
                }
                out << rec.index << ',' << i << ',' << rec.group_distance[i] << ',' << rec.nn_connectivity[i] << ','
                    << to_string(s) << ',' << format_number(degree[i]) << ','
                    << format_number(rec.series(s, Metric::clustering)[i]) << '\n';
            }
        }
    }
}

void write_histograms_csv(std::ostream& out, const EnsembleReport& report) {
    out << "group,state,metric,bin,lower,upper,count\n";
    for (const auto& h : report.histograms) {
        for (std::size_t b = 0; b < h.histogram.bins(); ++b) {
            out << h.group << ',' << to_string(h.state) << ',' << to_string(h.metric) << ',' << b << ','
                << format_number(h.histogram.edges[b]) << ',' << format_number(h.histogram.edges[b + 1]) << ','
                << h.histogram.counts[b] << '\n';
        }
    }
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json moments_to_json(const EnsembleReport& report) {
    json j;
    j["schema_version"] = output_schema_version;
    j["bootstrap_resamples"] = report.spec.bootstrap_resamples;
    j["summaries"] = json::array();
    for (const auto& g : report.summaries) {
        const MomentSummary& m = g.summary;
        json row;
        row["group"] = g.group;
        row["state"] = to_string(g.state);
        row["metric"] = to_string(g.metric);
        row["count"] = m.count;
        row["mean"] = m.mean;
        row["mean_se"] = optional_number(m.mean_se);
        row["variance"] = m.variance;
        row["variance_se"] = optional_number(m.variance_se);
        row["skewness"] = optional_number(m.skewness);
        row["skewness_se"] = optional_number(m.skewness_se);
        row["kurtosis"] = optional_number(m.kurtosis);
        row["kurtosis_se"] = optional_number(m.kurtosis_se);
        j["summaries"].push_back(std::move(row));
    }
    return j;
}

json manifest_to_json(const EnsembleReport& report) {
    json j;
    j["manifest_schema_version"] = output_schema_version;
    j["tool"] = {{"name", "cvnet"}, {"version", tool_version}};
    j["config"] = config_to_json(report.spec);
    j["seed_derivation"] =
        "realization r: splitmix64(splitmix64(master_seed) ^ (r * 0x9E3779B97F4A7C15 + 1)); "
        "network and subtraction-node streams derive from it with indices 0 and 1";
    j["realizations_requested"] = report.spec.realizations;
    j["realizations_completed"] = report.realizations.size();
    j["skipped"] = json::array();
    for (const auto& s : report.skipped) {
        j["skipped"].push_back({{"realization", s.index}, {"reason", s.reason}});
    }
    j["networks"] = json::array();
    for (const auto& rec : report.realizations) {
        json net;
        net["realization"] = rec.index;
        net["seed"] = rec.seed;
        net["n"] = rec.network.size();
        net["subtraction_node"] = rec.subtraction_node ? json(*rec.subtraction_node) : json(nullptr);
        json adjacency = json::array();
        for (std::size_t i = 0; i < rec.network.size(); ++i) {
            adjacency.push_back(rec.network.neighbors(i));
        }
        net["adjacency"] = std::move(adjacency);
        j["networks"].push_back(std::move(net));
    }
    return j;
}

namespace {

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot open {} for writing", path.string()));
    }
    writer(out);
    out.flush();
    if (!out) {
        throw IoError(fmt::format("failed writing {}", path.string()));
    }
}

}  // namespace

void write_run_directory(const EnsembleReport& report, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError(fmt::format("cannot create run directory {}: {}", dir.string(), ec.message()));
    }
    write_file(dir / "manifest.json", [&](std::ostream& o) { o << manifest_to_json(report).dump(2) << '\n'; });
    write_file(dir / "samples.csv", [&](std::ostream& o) { write_samples_csv(o, report); });
    write_file(dir / "moments.json", [&](std::ostream& o) { o << moments_to_json(report).dump(2) << '\n'; });
    write_file(dir / "histograms.csv", [&](std::ostream& o) { write_histograms_csv(o, report); });
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(fmt::format("cannot read {}", path.string()));
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError(fmt::format("{} is not valid JSON: {}", path.string(), e.what()));
    }
}

}  // namespace cvnet
