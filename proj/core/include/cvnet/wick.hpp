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

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cvnet/emergent.hpp"
#include "cvnet/gaussian.hpp"
#include "cvnet/graph.hpp"

namespace cvnet {

/// One creation or annihilation operator acting on a mode.
struct Token {
    NodeIndex mode;
    Ladder kind;

    friend bool operator==(const Token&, const Token&) = default;
};

inline Token creation(NodeIndex mode) { return {mode, Ladder::create}; }
inline Token annihilation(NodeIndex mode) { return {mode, Ladder::annihilate}; }

/// Ordered operator product, leftmost operator first.
using OperatorWord = std::vector<Token>;

/// Gaussian expectation together with the magnitude of its largest single
/// matching term, which sets the scale for cancellation checks.
struct WickValue {
    std::complex<double> value;
    double max_term = 0.0;
};

/// Zero-mean Gaussian expectation of an ordered operator product: the sum over
/// all perfect matchings of word positions of the product of ordered pair
/// contractions <a#_p a#_q>, p < q.
///
/// Runs a left-to-right dynamic programme whose state is the multiset of
/// still-open (mode, kind) tokens, so the cost depends on the number of
/// distinct token types rather than on the number of matchings. Words built
/// from a handful of modes (photon subtraction in one mode, two probes) stay
/// polynomial in their length.
///
/// Throws ParameterError if a token references a mode outside the table.
WickValue wick_expectation_scaled(std::span<const Token> word, const ContractionTable& table);

inline std::complex<double> wick_expectation(std::span<const Token> word, const ContractionTable& table) {
    return wick_expectation_scaled(word, table).value;
}

inline constexpr std::size_t bruteforce_max_length = 16;

/// Same contract as wick_expectation, by explicit enumeration of every perfect
/// matching. Throws CapacityError above bruteforce_max_length tokens.
std::complex<double> wick_expectation_bruteforce(std::span<const Token> word, const ContractionTable& table);

/// n photons subtracted from a single mode.
struct SubtractionSpec {
    NodeIndex mode = 0;
    std::size_t photons = 0;
};

/// Conditional state after repeated photon subtraction from one mode of a
/// Gaussian state:
///
///     <X>_sub = <(a+_S)^n X (a_S)^n> / <(a+_S)^n (a_S)^n>.
///
/// The normalisation is evaluated once on construction. Throws
/// DegenerateSubtractionError when it is not positive, or is below 1e-12 of
/// its largest matching term (the Gaussian state has no n-photon component in
/// mode S).
class SubtractedState {
   public:
    SubtractedState(const ContractionTable& table, SubtractionSpec spec);

    /// Real part of <middle>_sub. Throws ConsistencyError if the imaginary
    /// part exceeds 1e-9 of the value's scale; only Hermitian words are valid.
    double expectation(std::span<const Token> middle) const;

    double normalization() const noexcept { return normalization_; }
    const SubtractionSpec& spec() const noexcept { return spec_; }
    const ContractionTable& table() const noexcept { return *table_; }

   private:
    const ContractionTable* table_;
    SubtractionSpec spec_;
    double normalization_ = 1.0;
};

double subtracted_expectation(std::span<const Token> middle, SubtractionSpec spec, const ContractionTable& table);

/// Subtraction of one photon from each listed mode (modes may differ). Uses
/// exhaustive enumeration, so 2 * modes.size() + middle.size() must not exceed
/// bruteforce_max_length.
double subtracted_expectation_multimode(std::span<const Token> middle, std::span<const NodeIndex> modes,
                                        const ContractionTable& table);

/// n_i as an operator word.
OperatorWord number_word(NodeIndex i);
/// n_i n_j as [a+_i, a_i, a+_j, a_j]; also n_i^2 when i == j. Ordered
/// contractions absorb the commutators, so no normal ordering is needed.
OperatorWord number_product_word(NodeIndex i, NodeIndex j);

/// Raw photon-number moments in a subtracted state.
struct MomentSet {
    std::vector<NodeIndex> nodes;
    std::vector<double> mean;    // <n_i>, aligned with nodes
    std::vector<double> square;  // <n_i^2>, aligned with nodes
    std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
    std::vector<double> product;  // <n_i n_j>, aligned with pairs
};

MomentSet photon_number_moments(const ContractionTable& table, SubtractionSpec spec,
                                std::span<const NodeIndex> nodes,
                                std::span<const std::pair<NodeIndex, NodeIndex>> pairs);

/// Nodes within imprinted distance two of the subtraction node, i.e. those
/// with delta_{S,i} + A_{S,i} + (A^2)_{S,i} > 0. Photon subtraction in S
/// leaves cov(n_i, n_j) at its Gaussian value unless both i and j are near.
class LocalityFilter {
   public:
    LocalityFilter(const ImprintedNetwork& net, NodeIndex subtraction_node);

    bool near(NodeIndex i) const { return near_[i]; }
    /// True iff cov(n_i, n_j) may differ from the Gaussian value.
    bool affected(NodeIndex i, NodeIndex j) const { return near_[i] && near_[j]; }
    const std::vector<NodeIndex>& near_nodes() const noexcept { return near_nodes_; }

   private:
    std::vector<bool> near_;
    std::vector<NodeIndex> near_nodes_;
};

inline LocalityFilter locality_filter(const ImprintedNetwork& net, NodeIndex s) { return LocalityFilter(net, s); }

/// Photon-number statistics of the Gaussian state straight from the table:
/// <n_i> = <a+_i a_i>, cov_ij = <a+_i a+_j><a_i a_j> + <a+_i a_j><a_i a+_j>.
PhotonStatistics gaussian_photon_statistics(const ContractionTable& table);

enum class Evaluation {
    /// Wick evaluation only where the locality filter allows a change; the
    /// Gaussian closed forms elsewhere.
    shortcut,
    /// Wick evaluation for every mode and pair.
    exact,
};

/// Photon-number statistics of the state obtained from the Gaussian state
/// described by `table` after `spec` (absent = no subtraction).
PhotonStatistics photon_statistics(const ImprintedNetwork& net, const ContractionTable& table,
                                   std::optional<SubtractionSpec> spec, Evaluation mode = Evaluation::shortcut);

}  // namespace cvnet
