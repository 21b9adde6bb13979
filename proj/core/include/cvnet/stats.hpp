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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cvnet {

/// First four moments of a sample, with bootstrap standard errors.
///
/// Population (1/n) central moments: variance = E[(X-mu)^2],
/// skewness = E[(X-mu)^3] / var^{3/2}, kurtosis = E[(X-mu)^4] / var^2
/// (not excess; >= 1 for every distribution). Skewness and kurtosis are
/// absent when the variance is zero. Standard errors are absent with fewer
/// than two samples (four for the kurtosis).
struct MomentSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;
    std::optional<double> skewness;
    std::optional<double> kurtosis;
    std::optional<double> mean_se;
    std::optional<double> variance_se;
    std::optional<double> skewness_se;
    std::optional<double> kurtosis_se;
};

struct BootstrapOptions {
    std::size_t resamples = 1000;
    std::uint64_t seed = 0;
};

/// Throws ParameterError on an empty sample.
MomentSummary moments(std::span<const double> samples, const BootstrapOptions& bootstrap = {});

/// Point estimates only (no resampling); standard errors left empty.
MomentSummary point_moments(std::span<const double> samples);

/// Type-7 (linear interpolation) quantile of an unsorted sample, q in [0, 1].
double quantile(std::span<const double> samples, double q);

struct Binning {
    enum class Kind {
        /// Freedman-Diaconis width 2 IQR n^{-1/3} over the sample range.
        freedman_diaconis,
        /// Fixed number of equal-width bins over the sample range.
        count,
        /// Fixed width starting at the sample minimum.
        width,
        /// Caller-supplied monotone edges.
        edges,
    };
    Kind kind = Kind::freedman_diaconis;
    std::size_t bins = 10;
    double width = 0.0;
    std::vector<double> edges;
    /// Geometrically spaced edges over the positive range, for log-log plots.
    bool log_scale = false;

    static Binning freedman_diaconis() { return {}; }
    static Binning with_count(std::size_t bins) { return {Kind::count, bins, 0.0, {}, false}; }
    static Binning with_width(double width) { return {Kind::width, 0, width, {}, false}; }
    static Binning with_edges(std::vector<double> edges) { return {Kind::edges, 0, 0.0, std::move(edges), false}; }
};

inline constexpr std::size_t max_histogram_bins = 1000;

struct Histogram {
    std::vector<double> edges;  // bins + 1 strictly increasing values
    std::vector<std::size_t> counts;
    bool log_scale = false;

    std::size_t bins() const noexcept { return counts.size(); }
};

/// Bin edges for a sample under a binning rule. Throws ParameterError on an
/// empty sample or invalid rule.
std::vector<double> bin_edges(std::span<const double> samples, const Binning& binning);

/// Bin i covers [edges[i], edges[i+1]); the last bin is closed. Values outside
/// the edges are counted in the nearest end bin, so counts always sum to the
/// sample size.
Histogram histogram_with_edges(std::span<const double> samples, std::vector<double> edges, bool log_scale = false);

Histogram histogram(std::span<const double> samples, const Binning& binning = {});

}  // namespace cvnet
