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

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cvnet/gaussian.hpp"
#include "cvnet/graph.hpp"
#include "cvnet/rng.hpp"
#include "cvnet/wick.hpp"

namespace cvnet::testing {

inline double normal(Rng& rng) {
    // Box-Muller on the portable uniform draws.
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline Eigen::MatrixXcd random_unitary(std::size_t n, Rng& rng) {
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd z(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            z(i, j) = {normal(rng), normal(rng)};
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < m; ++i) {
        const std::complex<double> d = r(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

/// Orthogonal symplectic matrix of the passive transformation a -> U a in
/// (x, p) ordering.
inline Eigen::MatrixXd passive_symplectic(const Eigen::MatrixXcd& u) {
    const auto n = u.rows();
    Eigen::MatrixXd o(2 * n, 2 * n);
    o.topLeftCorner(n, n) = u.real();
    o.topRightCorner(n, n) = -u.imag();
    o.bottomLeftCorner(n, n) = u.imag();
    o.bottomRightCorner(n, n) = u.real();
    return o;
}

/// Random physical covariance: thermal occupations, single-mode squeezing
/// and two passive interferometers. Pure when `thermal` is false.
inline CovarianceMatrix random_gaussian_state(std::size_t n, Rng& rng, bool thermal = true,
                                              double max_squeeze_log = 1.0) {
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::VectorXd diag(2 * m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double nu = thermal ? 1.0 + 2.0 * rng.uniform() : 1.0;
        const double r = max_squeeze_log * (2.0 * rng.uniform() - 1.0);
        diag(i) = nu * std::exp(2.0 * r);
        diag(i + m) = nu * std::exp(-2.0 * r);
    }
    const Eigen::MatrixXd o1 = passive_symplectic(random_unitary(n, rng));
    const Eigen::MatrixXd o2 = passive_symplectic(random_unitary(n, rng));
    Eigen::MatrixXd v = o1 * diag.asDiagonal() * o1.transpose();
    v = o2 * v * o2.transpose();
    v = 0.5 * (v + v.transpose()).eval();
    return CovarianceMatrix(v);
}

inline OperatorWord random_word(std::size_t length, std::size_t modes, Rng& rng) {
    OperatorWord word;
    for (std::size_t i = 0; i < length; ++i) {
        const NodeIndex mode = rng.index(modes);
        word.push_back(rng.bernoulli(0.5) ? creation(mode) : annihilation(mode));
    }
    return word;
}

/// Random model spec covering all four generators, sizes 1..60.
inline ModelSpec random_model_spec(Rng& rng) {
    ModelSpec spec;
    spec.seed = rng.engine()();
    spec.n = 1 + rng.index(60);
    switch (rng.index(4)) {
        case 0:
            spec.n = std::max<std::size_t>(spec.n, 2);
            spec.model = BarabasiAlbert{1 + rng.index(spec.n - 1)};
            break;
        case 1: {
            spec.n = std::max<std::size_t>(spec.n, 3);
            const std::size_t kmax = (spec.n - 1) / 2;
            spec.model = WattsStrogatz{1 + rng.index(kmax), rng.uniform()};
            break;
        }
        case 2:
            spec.model = ErdosRenyi{rng.uniform()};
            break;
        default:
            spec.model = Complete{};
            break;
    }
    return spec;
}

}  // namespace cvnet::testing
