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
#include <random>

namespace cvnet {

/// One round of the SplitMix64 output function.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of stream `index` derived from `master`:
///
///     derive_seed(master, index) = splitmix64(splitmix64(master) ^ (index * 0x9E3779B97F4A7C15 + 1))
///
/// Realization r of an ensemble uses derive_seed(master_seed, r); sub-streams
/// of a realization (network, subtraction node, bootstrap) derive from that
/// seed again with fixed indices. Ordering of work never enters the formula.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Mersenne-Twister engine with portable uniform draws. The standard
/// distributions are implementation-defined, so they are avoided wherever
/// output must be bit-reproducible across toolchains.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Uniform integer in [0, n). Requires n > 0. Unbiased (rejection).
    std::size_t index(std::size_t n) noexcept;

    /// True with probability p.
    bool bernoulli(double p) noexcept { return uniform() < p; }

    std::mt19937_64& engine() noexcept { return engine_; }

   private:
    std::mt19937_64 engine_;
};

}  // namespace cvnet
