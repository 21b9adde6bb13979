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

#include "cvnet/stats.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cvnet/errors.hpp"
#include "cvnet/rng.hpp"

namespace cvnet {

namespace {

std::optional<double> spread(const std::vector<double>& replicates) {
    if (replicates.size() < 2) {
        return std::nullopt;
    }
    double mean = 0.0;
    for (double x : replicates) {
        mean += x;
    }
    mean /= static_cast<double>(replicates.size());
    double ss = 0.0;
    for (double x : replicates) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(replicates.size() - 1));
}

}  // namespace

MomentSummary point_moments(std::span<const double> samples) {
    if (samples.empty()) {
        throw ParameterError("moments of an empty sample");
    }
    MomentSummary out;
    out.count = samples.size();
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double x : samples) {
        mean += x;
    }
    mean /= n;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double x : samples) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    out.mean = mean;
    out.variance = m2;
    // Relative floor: a constant sample can leave round-off in m2.
    if (m2 > 1e-28 * std::max(1.0, mean * mean)) {
        out.skewness = m3 / std::pow(m2, 1.5);
        out.kurtosis = m4 / (m2 * m2);
    }
    return out;
}

MomentSummary moments(std::span<const double> samples, const BootstrapOptions& bootstrap) {
    MomentSummary out = point_moments(samples);
    if (samples.size() < 2 || bootstrap.resamples < 2) {
        return out;
    }
    Rng rng(bootstrap.seed);
    std::vector<double> resample(samples.size());
    std::vector<double> means;
    std::vector<double> variances;
    std::vector<double> skews;
    std::vector<double> kurts;
    for (std::size_t b = 0; b < bootstrap.resamples; ++b) {
        for (double& x : resample) {
            x = samples[rng.index(samples.size())];
        }
        const MomentSummary r = point_moments(resample);
        means.push_back(r.mean);
        variances.push_back(r.variance);
        if (r.skewness) {
            skews.push_back(*r.skewness);
            kurts.push_back(*r.kurtosis);
        }
    }
    out.mean_se = spread(means);
    out.variance_se = spread(variances);
    if (out.skewness) {
        out.skewness_se = spread(skews);
        if (samples.size() >= 4) {
            out.kurtosis_se = spread(kurts);
        }
    }
    return out;
}

double quantile(std::span<const double> samples, double q) {
    if (samples.empty()) {
        throw ParameterError("quantile of an empty sample");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

namespace {

std::vector<double> uniform_edges(double lo, double hi, std::size_t bins, bool log_scale) {
    std::vector<double> edges(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(bins);
        edges[i] = log_scale ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
    }
    edges.front() = lo;
    edges.back() = hi;
    return edges;
}

}  // namespace

std::vector<double> bin_edges(std::span<const double> samples, const Binning& binning) {
    if (samples.empty()) {
        throw ParameterError("histogram of an empty sample");
    }
    if (binning.kind == Binning::Kind::edges) {
        if (binning.edges.size() < 2 || !std::is_sorted(binning.edges.begin(), binning.edges.end()) ||
            std::adjacent_find(binning.edges.begin(), binning.edges.end()) != binning.edges.end()) {
            throw ParameterError("explicit histogram edges must be strictly increasing with at least two entries");
        }
        return binning.edges;
    }
    if (binning.kind == Binning::Kind::count && binning.bins == 0) {
        throw ParameterError("histogram needs at least one bin");
    }
    if (binning.kind == Binning::Kind::width && (!(binning.width > 0.0) || !std::isfinite(binning.width))) {
        throw ParameterError("histogram bin width must be positive");
    }

    double lo = *std::min_element(samples.begin(), samples.end());
    double hi = *std::max_element(samples.begin(), samples.end());
    if (binning.log_scale) {
        double min_positive = 0.0;
        for (double x : samples) {
            if (x > 0.0 && (min_positive == 0.0 || x < min_positive)) {
                min_positive = x;
            }
        }
        if (min_positive == 0.0) {
            throw ParameterError("log-scale histogram needs at least one positive sample");
        }
        lo = min_positive;
    }
    if (!(hi > lo)) {
        const double pad = std::max(0.5, std::abs(lo) * 1e-6);
        return {lo - (binning.log_scale ? 0.0 : pad), hi + pad};
    }

    std::size_t bins = 1;
    switch (binning.kind) {
        case Binning::Kind::count:
            bins = binning.bins;
            break;
        case Binning::Kind::width: {
            const double span = binning.log_scale ? std::log(hi) - std::log(lo) : hi - lo;
            bins = static_cast<std::size_t>(std::ceil(span / binning.width));
            if (binning.log_scale) {
                break;
            }
            bins = std::clamp<std::size_t>(bins, 1, max_histogram_bins);
            std::vector<double> edges(bins + 1);
            for (std::size_t i = 0; i <= bins; ++i) {
                edges[i] = lo + static_cast<double>(i) * binning.width;
            }
            edges.back() = std::max(edges.back(), hi);
            return edges;
        }
        case Binning::Kind::freedman_diaconis: {
            std::vector<double> values;
            for (double x : samples) {
                if (!binning.log_scale || x > 0.0) {
                    values.push_back(binning.log_scale ? std::log(x) : x);
                }
            }
            const double iqr = quantile(values, 0.75) - quantile(values, 0.25);
            const double width = 2.0 * iqr * std::pow(static_cast<double>(values.size()), -1.0 / 3.0);
            const double span = binning.log_scale ? std::log(hi) - std::log(lo) : hi - lo;
            bins = width > 0.0 ? static_cast<std::size_t>(std::ceil(span / width)) : 1;
            break;
        }
        case Binning::Kind::edges:
            break;
    }
    bins = std::clamp<std::size_t>(bins, 1, max_histogram_bins);
    return uniform_edges(lo, hi, bins, binning.log_scale);
}

Histogram histogram_with_edges(std::span<const double> samples, std::vector<double> edges, bool log_scale) {
    if (edges.size() < 2) {
        throw ParameterError("histogram needs at least two edges");
    }
    Histogram h;
    h.edges = std::move(edges);
    h.counts.assign(h.edges.size() - 1, 0);
    h.log_scale = log_scale;
    for (double x : samples) {
        const auto it = std::upper_bound(h.edges.begin(), h.edges.end(), x);
        std::size_t bin = it == h.edges.begin() ? 0 : static_cast<std::size_t>(it - h.edges.begin()) - 1;
        bin = std::min(bin, h.counts.size() - 1);
        ++h.counts[bin];
    }
    return h;
}

Histogram histogram(std::span<const double> samples, const Binning& binning) {
    return histogram_with_edges(samples, bin_edges(samples, binning), binning.log_scale);
}

}  // namespace cvnet
