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

#include "cvnet/gaussian.hpp"

#include <cmath>
#include <ostream>

#include <Eigen/LU>
#include <fmt/format.h>

#include "cvnet/errors.hpp"

namespace cvnet {

Squeezing Squeezing::from_ratio(double ratio) {
    if (!std::isfinite(ratio) || ratio <= 0.0) {
        throw ParameterError(fmt::format("squeezing ratio must be finite and positive, got {}", ratio));
    }
    return Squeezing(ratio, 10.0 * std::log10(ratio));
}

Squeezing Squeezing::from_db(double db) {
    if (!std::isfinite(db)) {
        throw ParameterError("squeezing in dB must be finite");
    }
    return Squeezing(std::pow(10.0, db / 10.0), db);
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd v) : v_(std::move(v)) {
    if (v_.rows() != v_.cols() || v_.rows() % 2 != 0) {
        throw ValidationError(fmt::format("covariance must be 2N x 2N, got {} x {}", v_.rows(), v_.cols()));
    }
    const double scale = std::max(1.0, v_.cwiseAbs().maxCoeff());
    const double asymmetry = (v_ - v_.transpose()).cwiseAbs().maxCoeff();
    if (asymmetry > symmetry_tolerance * scale) {
        throw ValidationError(fmt::format("covariance is not symmetric (max |V - V^T| = {:.3g})", asymmetry));
    }
}

double CovarianceMatrix::log_determinant() const {
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(v_);
    return lu.matrixLU().diagonal().array().abs().log().sum();
}

CovarianceMatrix cluster_covariance(const ImprintedNetwork& net, Squeezing sq) {
    const auto n = static_cast<Eigen::Index>(net.size());
    const double s = sq.ratio();
    const Eigen::MatrixXd a = net.adjacency_real();
    Eigen::MatrixXd v(2 * n, 2 * n);
    v.topLeftCorner(n, n) = s * Eigen::MatrixXd::Identity(n, n);
    v.topRightCorner(n, n) = s * a;
    v.bottomLeftCorner(n, n) = s * a;
    v.bottomRightCorner(n, n) = s * (a * a) + Eigen::MatrixXd::Identity(n, n) / s;
    return CovarianceMatrix(std::move(v));
}

void write_covariance_csv(std::ostream& out, const CovarianceMatrix& v) {
    const auto& m = v.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out << (c == 0 ? "" : ",") << fmt::format("{:.17g}", m(r, c));
        }
        out << '\n';
    }
}

ContractionTable::ContractionTable(const CovarianceMatrix& cov) {
    using namespace std::complex_literals;
    const auto n = static_cast<Eigen::Index>(cov.modes());
    const auto& v = cov.matrix();
    const Eigen::MatrixXd xx = v.topLeftCorner(n, n);
    const Eigen::MatrixXd xp = v.topRightCorner(n, n);
    const Eigen::MatrixXd px = v.bottomLeftCorner(n, n);
    const Eigen::MatrixXd pp = v.bottomRightCorner(n, n);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);

    create_create_ = (xx - pp).cast<std::complex<double>>() - 1i * (xp + px).cast<std::complex<double>>();
    create_create_ /= 4.0;
    annihilate_annihilate_ = (xx - pp).cast<std::complex<double>>() + 1i * (xp + px).cast<std::complex<double>>();
    annihilate_annihilate_ /= 4.0;
    create_annihilate_ =
        (xx + pp - 2.0 * id).cast<std::complex<double>>() + 1i * (xp - px).cast<std::complex<double>>();
    create_annihilate_ /= 4.0;
    annihilate_create_ = create_annihilate_.transpose();
    annihilate_create_ += id.cast<std::complex<double>>();
}

double photon_number_variance(Squeezing sq, double degree) {
    const double s2 = sq.ratio() * sq.ratio();
    return (s2 + 1.0 / s2 + s2 * degree * degree + 2.0 * degree - 2.0) / 8.0;
}

Eigen::MatrixXd gaussian_photon_covariance(const ImprintedNetwork& net, Squeezing sq) {
    const auto n = static_cast<Eigen::Index>(net.size());
    const double s2 = sq.ratio() * sq.ratio();
    const Eigen::MatrixXd a = net.adjacency_real();
    const Eigen::MatrixXd a2 = a * a;
    Eigen::MatrixXd c = (s2 / 8.0) * (a2.cwiseProduct(a2) + 2.0 * a);
    for (Eigen::Index i = 0; i < n; ++i) {
        c(i, i) = photon_number_variance(sq, a2(i, i));
    }
    return c;
}

EmergentNetwork gaussian_emergent(const ImprintedNetwork& net, Squeezing sq) {
    const Eigen::MatrixXd c = gaussian_photon_covariance(net, sq);
    const auto n = c.rows();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j && c(i, j) != 0.0) {
                w(i, j) = c(i, j) / std::sqrt(c(i, i) * c(j, j));
            }
        }
    }
    return EmergentNetwork(std::move(w), StateTag::gaussian());
}

}  // namespace cvnet
