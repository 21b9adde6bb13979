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

#include "cvnet/wick.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include <fmt/format.h>

#include "cvnet/errors.hpp"

namespace cvnet {

namespace {

using Complex = std::complex<double>;

void check_modes(std::span<const Token> word, const ContractionTable& table) {
    for (const Token& t : word) {
        if (t.mode >= table.modes()) {
            throw ParameterError(
                fmt::format("operator on mode {} but the contraction table has {} modes", t.mode, table.modes()));
        }
    }
}

Complex contract(const ContractionTable& table, const Token& left, const Token& right) {
    return table(left.mode, left.kind, right.mode, right.kind);
}

// Open-token multiset packed in mixed radix: digit t counts open tokens of
// type t and ranges over [0, occurrences_t], so the key space is
// prod(occurrences_t + 1) <= 2^length.
struct TokenTypes {
    std::vector<Token> type;
    std::vector<std::size_t> of_position;
    std::vector<std::uint64_t> stride;
    std::vector<std::uint64_t> radix;
};

TokenTypes classify(std::span<const Token> word) {
    TokenTypes types;
    std::vector<std::size_t> occurrences;
    for (const Token& t : word) {
        auto it = std::find(types.type.begin(), types.type.end(), t);
        std::size_t id = static_cast<std::size_t>(it - types.type.begin());
        if (it == types.type.end()) {
            types.type.push_back(t);
            occurrences.push_back(0);
        }
        ++occurrences[id];
        types.of_position.push_back(id);
    }
    std::uint64_t stride = 1;
    for (std::size_t count : occurrences) {
        const std::uint64_t radix = count + 1;
        types.stride.push_back(stride);
        types.radix.push_back(radix);
        if (stride > std::numeric_limits<std::uint64_t>::max() / radix) {
            throw CapacityError(fmt::format("operator word with {} tokens has too many open-token states",
                                            word.size()));
        }
        stride *= radix;
    }
    return types;
}

struct DpState {
    std::uint64_t key;
    std::size_t open;
    Complex value;
    double max_term;
};

}  // namespace

WickValue wick_expectation_scaled(std::span<const Token> word, const ContractionTable& table) {
    check_modes(word, table);
    const std::size_t length = word.size();
    if (length % 2 != 0) {
        return {Complex(0.0, 0.0), 0.0};
    }
    if (length == 0) {
        return {Complex(1.0, 0.0), 1.0};
    }

    const TokenTypes types = classify(word);
    const std::size_t type_count = types.type.size();
    std::vector<Complex> pair(type_count * type_count);
    for (std::size_t u = 0; u < type_count; ++u) {
        for (std::size_t t = 0; t < type_count; ++t) {
            pair[u * type_count + t] = contract(table, types.type[u], types.type[t]);
        }
    }

    std::vector<DpState> frontier{{0, 0, Complex(1.0, 0.0), 1.0}};
    std::vector<DpState> next;
    std::unordered_map<std::uint64_t, std::size_t> slot;

    auto accumulate = [&](std::uint64_t key, std::size_t open, Complex value, double max_term) {
        auto [it, inserted] = slot.try_emplace(key, next.size());
        if (inserted) {
            next.push_back({key, open, value, max_term});
        } else {
            DpState& s = next[it->second];
            s.value += value;
            s.max_term = std::max(s.max_term, max_term);
        }
    };

    for (std::size_t pos = 0; pos < length; ++pos) {
        const std::size_t t = types.of_position[pos];
        const std::size_t remaining = length - pos - 1;
        next.clear();
        slot.clear();
        for (const DpState& s : frontier) {
            // Leave this token open for a later partner.
            if (s.open + 1 <= remaining) {
                accumulate(s.key + types.stride[t], s.open + 1, s.value, s.max_term);
            }
            // Close it against every open type; each open copy is a distinct
            // earlier position, hence the multiplicity factor.
            if (s.open == 0 || s.open - 1 > remaining) {
                continue;
            }
            for (std::size_t u = 0; u < type_count; ++u) {
                const std::uint64_t copies = (s.key / types.stride[u]) % types.radix[u];
                const Complex c = pair[u * type_count + t];
                if (copies == 0 || c == Complex(0.0, 0.0)) {
                    continue;
                }
                accumulate(s.key - types.stride[u], s.open - 1, s.value * c * static_cast<double>(copies),
                           s.max_term * std::abs(c));
            }
        }
        frontier.swap(next);
        if (frontier.empty()) {
            return {Complex(0.0, 0.0), 0.0};
        }
    }
    // Only the all-closed state survives the final position.
    return {frontier.front().value, frontier.front().max_term};
}

namespace {

Complex enumerate_matchings(std::span<const Token> word, std::vector<bool>& used, const ContractionTable& table) {
    std::size_t first = 0;
    while (first < word.size() && used[first]) {
        ++first;
    }
    if (first == word.size()) {
        return {1.0, 0.0};
    }
    used[first] = true;
    Complex total(0.0, 0.0);
    for (std::size_t partner = first + 1; partner < word.size(); ++partner) {
        if (used[partner]) {
            continue;
        }
        used[partner] = true;
        total += contract(table, word[first], word[partner]) * enumerate_matchings(word, used, table);
        used[partner] = false;
    }
    used[first] = false;
    return total;
}

}  // namespace

std::complex<double> wick_expectation_bruteforce(std::span<const Token> word, const ContractionTable& table) {
    if (word.size() > bruteforce_max_length) {
        throw CapacityError(fmt::format("brute-force Wick evaluation is limited to {} operators, got {}",
                                        bruteforce_max_length, word.size()));
    }
    check_modes(word, table);
    if (word.size() % 2 != 0) {
        return {0.0, 0.0};
    }
    std::vector<bool> used(word.size(), false);
    return enumerate_matchings(word, used, table);
}

namespace {

OperatorWord sandwich(std::span<const Token> middle, NodeIndex mode, std::size_t photons) {
    OperatorWord word;
    word.reserve(middle.size() + 2 * photons);
    word.insert(word.end(), photons, creation(mode));
    word.insert(word.end(), middle.begin(), middle.end());
    word.insert(word.end(), photons, annihilation(mode));
    return word;
}

double checked_real(const WickValue& v, const char* what) {
    const double scale = std::max(std::abs(v.value), v.max_term);
    if (std::abs(v.value.imag()) > 1e-9 * scale) {
        throw ConsistencyError(fmt::format("{} has imaginary part {:.3g} against scale {:.3g}", what,
                                           v.value.imag(), scale));
    }
    return v.value.real();
}

double checked_normalization(const WickValue& v, NodeIndex mode, std::size_t photons) {
    const double value = v.value.real();
    if (!(v.max_term > 0.0) || !(value > 1e-12 * v.max_term)) {
        throw DegenerateSubtractionError(
            fmt::format("cannot subtract {} photon(s) from mode {}: normalisation {:.3g} (largest term {:.3g})",
                        photons, mode, value, v.max_term));
    }
    return checked_real(v, "subtraction normalisation");
}

}  // namespace

SubtractedState::SubtractedState(const ContractionTable& table, SubtractionSpec spec)
    : table_(&table), spec_(spec) {
    if (spec.mode >= table.modes()) {
        throw ParameterError(
            fmt::format("subtraction mode {} outside a table with {} modes", spec.mode, table.modes()));
    }
    if (spec.photons > 0) {
        const OperatorWord word = sandwich({}, spec.mode, spec.photons);
        normalization_ = checked_normalization(wick_expectation_scaled(word, table), spec.mode, spec.photons);
    }
}

double SubtractedState::expectation(std::span<const Token> middle) const {
    if (spec_.photons == 0) {
        return checked_real(wick_expectation_scaled(middle, *table_), "expectation value");
    }
    const OperatorWord word = sandwich(middle, spec_.mode, spec_.photons);
    return checked_real(wick_expectation_scaled(word, *table_), "subtracted expectation value") / normalization_;
}

double subtracted_expectation(std::span<const Token> middle, SubtractionSpec spec, const ContractionTable& table) {
    return SubtractedState(table, spec).expectation(middle);
}

double subtracted_expectation_multimode(std::span<const Token> middle, std::span<const NodeIndex> modes,
                                        const ContractionTable& table) {
    OperatorWord outer;
    for (auto it = modes.rbegin(); it != modes.rend(); ++it) {
        outer.push_back(creation(*it));
    }
    OperatorWord normalization_word = outer;
    OperatorWord word = outer;
    word.insert(word.end(), middle.begin(), middle.end());
    for (NodeIndex m : modes) {
        word.push_back(annihilation(m));
        normalization_word.push_back(annihilation(m));
    }
    if (word.size() > bruteforce_max_length) {
        throw CapacityError(fmt::format("multi-mode subtraction needs {} operators; the exhaustive path allows {}",
                                        word.size(), bruteforce_max_length));
    }
    const Complex norm = wick_expectation_bruteforce(normalization_word, table);
    const Complex value = wick_expectation_bruteforce(word, table);
    if (!(norm.real() > 0.0)) {
        throw DegenerateSubtractionError("multi-mode subtraction normalisation vanishes");
    }
    const double scale = std::abs(value);
    if (std::abs(value.imag()) > 1e-9 * scale) {
        throw ConsistencyError("multi-mode subtracted expectation value is not real");
    }
    return value.real() / norm.real();
}

OperatorWord number_word(NodeIndex i) { return {creation(i), annihilation(i)}; }

OperatorWord number_product_word(NodeIndex i, NodeIndex j) {
    return {creation(i), annihilation(i), creation(j), annihilation(j)};
}

MomentSet photon_number_moments(const ContractionTable& table, SubtractionSpec spec,
                                std::span<const NodeIndex> nodes,
                                std::span<const std::pair<NodeIndex, NodeIndex>> pairs) {
    const SubtractedState state(table, spec);
    MomentSet out;
    out.nodes.assign(nodes.begin(), nodes.end());
    out.pairs.assign(pairs.begin(), pairs.end());
    for (NodeIndex i : nodes) {
        out.mean.push_back(state.expectation(number_word(i)));
        out.square.push_back(state.expectation(number_product_word(i, i)));
    }
    for (auto [i, j] : pairs) {
        out.product.push_back(state.expectation(number_product_word(i, j)));
    }
    return out;
}

LocalityFilter::LocalityFilter(const ImprintedNetwork& net, NodeIndex subtraction_node) {
    const auto dist = bfs_distances(net, subtraction_node);
    near_.resize(net.size());
    for (NodeIndex i = 0; i < net.size(); ++i) {
        near_[i] = dist[i] <= 2;
        if (near_[i]) {
            near_nodes_.push_back(i);
        }
    }
}

PhotonStatistics gaussian_photon_statistics(const ContractionTable& table) {
    const auto n = static_cast<Eigen::Index>(table.modes());
    PhotonStatistics stats;
    stats.mean = table.create_annihilate().diagonal().real();
    // Two matchings survive after subtracting <n_i><n_j>.
    const Eigen::MatrixXcd& cc = table.create_create();
    const Eigen::MatrixXcd& aa = table.annihilate_annihilate();
    const Eigen::MatrixXcd& ca = table.create_annihilate();
    const Eigen::MatrixXcd& ac = table.annihilate_create();
    stats.covariance.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            stats.covariance(i, j) = (cc(i, j) * aa(i, j) + ca(i, j) * ac(i, j)).real();
        }
    }
    return stats;
}

PhotonStatistics photon_statistics(const ImprintedNetwork& net, const ContractionTable& table,
                                   std::optional<SubtractionSpec> spec, Evaluation mode) {
    if (net.size() != table.modes()) {
        throw ValidationError(
            fmt::format("network has {} nodes but the contraction table {} modes", net.size(), table.modes()));
    }
    const std::size_t n = net.size();
    if (mode == Evaluation::shortcut && (!spec || spec->photons == 0)) {
        return gaussian_photon_statistics(table);
    }
    const SubtractionSpec sub = spec.value_or(SubtractionSpec{0, 0});

    PhotonStatistics stats = mode == Evaluation::shortcut ? gaussian_photon_statistics(table) : PhotonStatistics{};
    std::vector<NodeIndex> nodes;
    if (mode == Evaluation::shortcut) {
        nodes = LocalityFilter(net, sub.mode).near_nodes();
    } else {
        stats.mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        stats.covariance = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (NodeIndex i = 0; i < n; ++i) {
            nodes.push_back(i);
        }
    }

    const SubtractedState state(table, sub);
    for (NodeIndex i : nodes) {
        stats.mean(static_cast<Eigen::Index>(i)) = state.expectation(number_word(i));
    }
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        const auto i = static_cast<Eigen::Index>(nodes[a]);
        for (std::size_t b = a; b < nodes.size(); ++b) {
            const auto j = static_cast<Eigen::Index>(nodes[b]);
            const double product = state.expectation(number_product_word(nodes[a], nodes[b]));
            const double cov = product - stats.mean(i) * stats.mean(j);
            stats.covariance(i, j) = cov;
            stats.covariance(j, i) = cov;
        }
    }
    return stats;
}

}  // namespace cvnet
