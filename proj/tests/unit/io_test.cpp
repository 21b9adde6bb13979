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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cvnet/errors.hpp"
#include "cvnet/io.hpp"

namespace cvnet {
namespace {

using nlohmann::json;

std::string validation_message(const json& doc) {
    try {
        config_from_json(doc);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

ExperimentSpec tiny_spec() {
    ExperimentSpec spec;
    spec.model = {BarabasiAlbert{2}, 12, 0};
    spec.subtraction = {SubtractionTarget::random_node, 1};
    spec.realizations = 2;
    spec.master_seed = 3;
    spec.bootstrap_resamples = 50;
    spec.squeezing_db = 6.0;
    return spec;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

TEST(FormatNumber, SeventeenSignificantDigits) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(97.0), "97");
    EXPECT_EQ(format_number(1e-20), "9.9999999999999995e-21");
}

TEST(Config, MinimalDocumentUsesDefaults) {
    const ExperimentSpec spec = config_from_json(json::parse(R"({"model": {"type": "complete", "n": 10}})"));
    EXPECT_EQ(spec.model.n, 10u);
    EXPECT_TRUE(std::holds_alternative<Complete>(spec.model.model));
    EXPECT_EQ(spec.squeezing_db, 15.0);
    EXPECT_FALSE(spec.subtraction.active());
    EXPECT_EQ(spec.realizations, 1u);
    EXPECT_EQ(spec.clustering, ClusteringConvention::paper);
}

TEST(Config, RoundTrip) {
    ExperimentSpec spec = tiny_spec();
    spec.model = {WattsStrogatz{3, 0.25}, 40, 0};
    spec.exact = true;
    spec.clustering = ClusteringConvention::strict;
    spec.workers = 3;
    spec.binning = Binning::with_edges({0.0, 1.0, 2.5});
    spec.binning.log_scale = true;
    const json doc = config_to_json(spec);
    EXPECT_EQ(doc.at("schema_version"), config_schema_version);
    const ExperimentSpec back = config_from_json(json::parse(doc.dump()));
    EXPECT_EQ(config_to_json(back), doc);
}

TEST(Config, ErrorsNameFieldPaths) {
    EXPECT_EQ(validation_message(json::parse(R"({})")), "config.model: required field missing");
    EXPECT_EQ(validation_message(json::parse(R"({"model": {"type": "ws", "n": 10, "p": 0.1}})")),
              "config.model.k: required field missing");
    EXPECT_EQ(validation_message(json::parse(R"({"model": {"type": "ws", "n": 10, "k": -1, "p": 0.1}})")),
              "config.model.k: expected an integer >= 1");
    EXPECT_EQ(validation_message(json::parse(R"({"model": {"type": "ba", "n": 10, "m": 1}, "colour": 1})")),
              "config.colour: unknown field");
    EXPECT_EQ(validation_message(json::parse(R"({"model": {"type": "ba", "n": 10, "m": 1}, "exact": 1})")),
              "config.exact: expected true or false");
    EXPECT_NE(validation_message(json::parse(R"({"model": {"type": "ba", "n": 10, "m": 1}, "subtraction": "x"})"))
                  .find("config.subtraction: "),
              std::string::npos);
    EXPECT_NE(validation_message(json::parse(R"({"model": {"type": "ba", "n": 5, "m": 7}})")).find("config.model: "),
              std::string::npos);
    EXPECT_EQ(validation_message(json::parse(R"({"model": {"type": "lattice", "n": 5}})")),
              "config.model.type: unknown model 'lattice' (expected ba, ws, er or complete)");
    EXPECT_EQ(validation_message(json::parse(
                  R"({"model": {"type": "complete", "n": 5}, "binning": {"kind": "edges", "edges": [1, 0]}})")),
              "config.binning.edges: edges must be strictly increasing");
    EXPECT_EQ(validation_message(json::parse(R"([1, 2])")), "config: expected an object");
}

TEST(EmergentOutput, CsvAndJson) {
    Eigen::MatrixXd w(2, 2);
    w << 0.0, 0.1, 0.1, 0.0;
    const EmergentNetwork net(w, StateTag::subtracted(1, 2));
    std::ostringstream csv;
    write_emergent_csv(csv, net);
    EXPECT_EQ(csv.str(), "0,0.10000000000000001\n0.10000000000000001,0\n");
    const json j = emergent_to_json(net);
    EXPECT_EQ(j.at("n"), 2);
    EXPECT_EQ(j.at("state_tag"), "subtracted(S=1,n=2)");
    EXPECT_EQ(j.at("weights").size(), 4u);
    EXPECT_EQ(j.at("weights")[1].get<double>(), 0.1);
}

TEST(RunDirectory, SamplesSchema) {
    const EnsembleReport report = run_experiment(tiny_spec());
    std::ostringstream out;
    write_samples_csv(out, report);
    const auto rows = lines(out.str());
    ASSERT_EQ(rows.front(), "realization,node,group_distance,nn_connectivity,state,degree,clustering");
    EXPECT_EQ(rows.size(), 1u + 2u * 12u * 3u);
    EXPECT_EQ(rows[1].substr(0, 4), "0,0,");
    EXPECT_NE(rows[1].find(",imprinted,"), std::string::npos);
    EXPECT_NE(rows[2].find(",gaussian,"), std::string::npos);
    EXPECT_NE(rows[3].find(",subtracted,"), std::string::npos);
}

TEST(RunDirectory, GaussianOnlySamplesHaveNoSubtractedRows) {
    ExperimentSpec spec = tiny_spec();
    spec.subtraction = {};
    const EnsembleReport report = run_experiment(spec);
    std::ostringstream out;
    write_samples_csv(out, report);
    EXPECT_EQ(out.str().find("subtracted"), std::string::npos);
    EXPECT_NE(out.str().find(",-1,-1,gaussian,"), std::string::npos);
}

TEST(RunDirectory, MomentsAndHistogramsSchema) {
    const EnsembleReport report = run_experiment(tiny_spec());
    const json m = moments_to_json(report);
    EXPECT_EQ(m.at("schema_version"), output_schema_version);
    EXPECT_EQ(m.at("bootstrap_resamples"), 50);
    for (const auto& row : m.at("summaries")) {
        for (const char* key : {"group", "state", "metric", "count", "mean", "mean_se", "variance", "variance_se",
                                "skewness", "skewness_se", "kurtosis", "kurtosis_se"}) {
            EXPECT_TRUE(row.contains(key)) << key;
        }
    }
    std::ostringstream h;
    write_histograms_csv(h, report);
    EXPECT_EQ(lines(h.str()).front(), "group,state,metric,bin,lower,upper,count");
}

TEST(RunDirectory, ManifestReproducesRun) {
    const ExperimentSpec spec = tiny_spec();
    const EnsembleReport report = run_experiment(spec);
    const json manifest = manifest_to_json(report);
    EXPECT_EQ(manifest.at("tool").at("version"), tool_version);
    EXPECT_EQ(manifest.at("networks").size(), 2u);
    EXPECT_EQ(manifest.at("networks")[0].at("adjacency").size(), 12u);
    const ExperimentSpec again = config_from_json(json::parse(manifest.dump()));
    std::ostringstream a;
    std::ostringstream b;
    write_samples_csv(a, report);
    write_samples_csv(b, run_experiment(again));
    EXPECT_EQ(a.str(), b.str());
}

TEST(RunDirectory, WritesFourFiles) {
    const auto dir = std::filesystem::temp_directory_path() / "cvnet_io_test_run";
    std::filesystem::remove_all(dir);
    write_run_directory(run_experiment(tiny_spec()), dir);
    for (const char* name : {"manifest.json", "samples.csv", "moments.json", "histograms.csv"}) {
        EXPECT_TRUE(std::filesystem::is_regular_file(dir / name)) << name;
    }
    EXPECT_NO_THROW(read_json_file(dir / "moments.json"));
    std::filesystem::remove_all(dir);
}

TEST(ReadJson, Errors) {
    EXPECT_THROW(read_json_file("/nonexistent/cvnet.json"), IoError);
    const auto path = std::filesystem::temp_directory_path() / "cvnet_bad.json";
    std::ofstream(path) << "{not json";
    EXPECT_THROW(read_json_file(path), IoError);
    std::filesystem::remove(path);
}

TEST(Config, ShippedConfigsParse) {
    std::size_t count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(CVNET_CONFIG_DIR)) {
        if (entry.path().extension() == ".json") {
            EXPECT_NO_THROW(config_from_json(read_json_file(entry.path()))) << entry.path();
            ++count;
        }
    }
    EXPECT_GE(count, 3u);
}

}  // namespace
}  // namespace cvnet
