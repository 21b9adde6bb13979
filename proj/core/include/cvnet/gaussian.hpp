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
#include <iosfwd>

#include <Eigen/Core>

#include "cvnet/emergent.hpp"
#include "cvnet/graph.hpp"

// Quadrature convention used throughout:
//
//     x = a^dag + a,   p = i (a^dag - a),   [x, p] = 2i,
//
// so the vacuum has <x^2> = <p^2> = 1. Covariance matrices are ordered
// (x_1..x_N, p_1..p_N). Every contraction formula below assumes this; the
// hbar = 1/2 convention would silently rescale all photon numbers.

namespace cvnet {

/// Uniform squeezing, as a variance ratio `s` of the amplified quadrature
/// relative to vacuum. s = 10^(dB/10).
class Squeezing {
   public:
    /// Throws ParameterError unless `ratio` is finite and > 0.
    static Squeezing from_ratio(double ratio);
    /// Throws ParameterError unless `db` is finite.
    static Squeezing from_db(double db);

    double ratio() const noexcept { return ratio_; }
    double db() const noexcept { return db_; }

   private:
    Squeezing(double ratio, double db) : ratio_(ratio), db_(db) {}
    double ratio_;
    double db_;
};

inline Squeezing squeezing_from_db(double db) { return Squeezing::from_db(db); }

/// Real symmetric 2N x 2N quadrature covariance of a zero-mean Gaussian state.
class CovarianceMatrix {
   public:
    /// Throws ValidationError unless `v` is 2N x 2N and symmetric within
    /// `symmetry_tolerance` (relative to its largest entry, at least 1).
    explicit CovarianceMatrix(Eigen::MatrixXd v);

    std::size_t modes() const noexcept { return static_cast<std::size_t>(v_.rows() / 2); }
    const Eigen::MatrixXd& matrix() const noexcept { return v_; }
    double operator()(Eigen::Index r, Eigen::Index c) const { return v_(r, c); }

    /// log det V; zero for pure states.
    double log_determinant() const;

    static constexpr double symmetry_tolerance = 1e-12;

   private:
    Eigen::MatrixXd v_;
};

/// Covariance of the cluster state obtained by applying C_Z gates along `net`
/// to N modes each squeezed by `s` in p:
///
///     V_xx = s 1,   V_xp = V_px = s A,   V_pp = s A^2 + 1/s.
CovarianceMatrix cluster_covariance(const ImprintedNetwork& net, Squeezing s);

/// Row-major CSV dump of V, 2N values per row, 17 significant digits.
void write_covariance_csv(std::ostream& out, const CovarianceMatrix& v);

enum class Ladder : unsigned char { create, annihilate };

/// Ordered second moments <a#_j a#_k> of the Gaussian state for every pair of
/// modes and ladder kinds:
///
///     <a+_j a+_k> = [V_jk - V_{j+N,k+N} - i (V_{j,k+N} + V_{j+N,k})] / 4
///     <a_j  a_k > = [V_jk - V_{j+N,k+N} + i (V_{j,k+N} + V_{j+N,k})] / 4
///     <a+_j a_k > = [V_jk + V_{j+N,k+N} + i (V_{j,k+N} - V_{j+N,k}) - 2 delta_jk] / 4
///     <a_j  a+_k> = <a+_k a_j> + delta_jk
class ContractionTable {
   public:
    explicit ContractionTable(const CovarianceMatrix& v);

    std::size_t modes() const noexcept { return static_cast<std::size_t>(create_create_.rows()); }

    /// <a#_j a#_k> with the operator for mode j to the left.
    std::complex<double> operator()(std::size_t j, Ladder kj, std::size_t k, Ladder kk) const {
        const auto r = static_cast<Eigen::Index>(j);
        const auto c = static_cast<Eigen::Index>(k);
        if (kj == Ladder::create) {
            return kk == Ladder::create ? create_create_(r, c) : create_annihilate_(r, c);
        }
        return kk == Ladder::create ? annihilate_create_(r, c) : annihilate_annihilate_(r, c);
    }

    const Eigen::MatrixXcd& create_create() const noexcept { return create_create_; }
    const Eigen::MatrixXcd& annihilate_annihilate() const noexcept { return annihilate_annihilate_; }
    const Eigen::MatrixXcd& create_annihilate() const noexcept { return create_annihilate_; }
    const Eigen::MatrixXcd& annihilate_create() const noexcept { return annihilate_create_; }

   private:
    Eigen::MatrixXcd create_create_;
    Eigen::MatrixXcd annihilate_annihilate_;
    Eigen::MatrixXcd create_annihilate_;
    Eigen::MatrixXcd annihilate_create_;
};

inline ContractionTable pair_contractions(const CovarianceMatrix& v) { return ContractionTable(v); }

/// Photon-number variance of a cluster-state node with imprinted degree D:
///
///     (s^2 + 1/s^2 + s^2 D^2 + 2 D - 2) / 8
double photon_number_variance(Squeezing s, double degree);

/// Closed-form connected photon-number correlations of the cluster state:
/// c_ij = s^2/8 ((A^2)_ij^2 + 2 A_ij) off the diagonal and
/// photon_number_variance(s, D_i) on it.
Eigen::MatrixXd gaussian_photon_covariance(const ImprintedNetwork& net, Squeezing s);

/// Closed-form Gaussian emergent network: c_ij / sqrt(c_ii c_jj) off the
/// diagonal, 0 on it. Pairs with c_ij = 0 get weight 0 even when a variance
/// vanishes (s = 1, isolated nodes).
EmergentNetwork gaussian_emergent(const ImprintedNetwork& net, Squeezing s);

}  // namespace cvnet
