// Copyright 2026 The byzest Authors.
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

#include "byzest/observation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace byzest {

std::string_view to_string(NoiseKind kind) noexcept {
    switch (kind) {
        case NoiseKind::Zero: return "zero";
        case NoiseKind::UniformBox: return "uniform_box";
        case NoiseKind::TruncatedGaussian: return "truncated_gaussian";
    }
    return "zero";
}

NoiseKind parse_noise_kind(std::string_view name) {
    if (name == "zero") return NoiseKind::Zero;
    if (name == "uniform_box") return NoiseKind::UniformBox;
    if (name == "truncated_gaussian") return NoiseKind::TruncatedGaussian;
    throw std::invalid_argument("unknown noise kind '" + std::string(name) + "'");
}

namespace {

Mat scaled_identity(std::size_t dim, double variance) {
    Mat cov(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) cov(i, i) = variance;
    return cov;
}

}  // namespace

NoiseSpec NoiseSpec::zero(std::size_t dim) {
    return NoiseSpec{NoiseKind::Zero, Mat(dim, dim), 0.0};
}

NoiseSpec NoiseSpec::uniform_box(std::size_t dim, double variance) {
    if (!(variance >= 0.0) || !std::isfinite(variance))
        throw std::invalid_argument("noise variance must be finite and non-negative");
    const double half_width = std::sqrt(3.0 * variance);
    return NoiseSpec{NoiseKind::UniformBox, scaled_identity(dim, variance),
                     half_width * std::sqrt(static_cast<double>(dim))};
}

NoiseSpec NoiseSpec::truncated_gaussian(std::size_t dim, double variance, double bound_C) {
    if (!(variance >= 0.0) || !std::isfinite(variance))
        throw std::invalid_argument("noise variance must be finite and non-negative");
    if (!(bound_C > 0.0) || !std::isfinite(bound_C))
        throw std::invalid_argument("truncated gaussian needs a positive bound_C");
    return NoiseSpec{NoiseKind::TruncatedGaussian, scaled_identity(dim, variance), bound_C};
}

Vec NoiseSpec::sample(Rng& rng) const {
    const std::size_t n = dim();
    Vec w(n);
    switch (kind) {
        case NoiseKind::Zero:
            return w;
        case NoiseKind::UniformBox:
            for (std::size_t k = 0; k < n; ++k) {
                const double a = std::sqrt(3.0 * covariance(k, k));
                w[k] = a > 0.0 ? rng.uniform(-a, a) : 0.0;
            }
            return w;
        case NoiseKind::TruncatedGaussian:
            // Rejection; acceptance is high whenever C exceeds a few standard
            // deviations of the norm.
            for (int attempt = 0; attempt < 1'000'000; ++attempt) {
                for (std::size_t k = 0; k < n; ++k) {
                    const double s = std::sqrt(covariance(k, k));
                    w[k] = s > 0.0 ? rng.normal(0.0, s) : 0.0;
                }
                if (l2_norm(w) <= bound_C) return w;
            }
            throw std::runtime_error("truncated gaussian: bound_C too small to sample");
    }
    return w;
}

ObservationModel::ObservationModel(std::size_t id, Mat h, NoiseSpec n)
    : agent_id(id), H(std::move(h)), noise(std::move(n)) {
    if (H.rows() == 0 || H.cols() == 0)
        throw std::invalid_argument("observation matrix needs at least one row and column");
    if (!H.all_finite()) throw std::invalid_argument("observation matrix has non-finite entries");
    if (noise.dim() != H.rows())
        throw std::invalid_argument("noise dimension " + std::to_string(noise.dim()) +
                                    " does not match " + std::to_string(H.rows()) + " rows");
}

void MeasurementAccumulator::add(const Vec& y) {
    if (count_ == 0 && mean_.empty()) mean_ = Vec(y.size());
    if (y.size() != mean_.size()) throw std::invalid_argument("measurement size mismatch");
    ++count_;
    const double inv = 1.0 / static_cast<double>(count_);
    for (std::size_t i = 0; i < y.size(); ++i) mean_[i] += (y[i] - mean_[i]) * inv;
}

Vec sample_measurement(const ObservationModel& model, const Vec& theta_star, Rng& rng) {
    if (theta_star.size() != model.dim())
        throw std::invalid_argument("theta* has dimension " + std::to_string(theta_star.size()) +
                                    ", model expects " + std::to_string(model.dim()));
    Vec y = matvec(model.H, theta_star);
    y += model.noise.sample(rng);
    return y;
}

Vec empirical_gradient(const ObservationModel& model, const MeasurementAccumulator& acc,
                       const Vec& x) {
    if (acc.count() == 0) throw std::logic_error("empirical gradient of an empty accumulator");
    if (x.size() != model.dim()) throw std::invalid_argument("estimate dimension mismatch");
    Vec residual = matvec(model.H, x);
    residual -= acc.mean();
    return matvec_transpose(model.H, residual);
}

std::vector<ObservationModel> make_coordinate_selection_models(std::size_t d, std::size_t phi,
                                                               std::size_t rows,
                                                               std::size_t multiplicity, Rng& rng,
                                                               const NoiseSpec& noise) {
    if (d == 0 || phi == 0 || rows == 0) throw std::invalid_argument("empty selection layout");
    if (multiplicity == 0) throw std::invalid_argument("multiplicity must be at least 1");
    if (multiplicity > phi)
        throw std::invalid_argument("multiplicity " + std::to_string(multiplicity) +
                                    " exceeds the " + std::to_string(phi) + " available agents");
    if (phi * rows < multiplicity * d)
        throw std::invalid_argument("infeasible coverage: " + std::to_string(phi) + " agents x " +
                                    std::to_string(rows) + " rows cannot observe " +
                                    std::to_string(d) + " coordinates " +
                                    std::to_string(multiplicity) + " times");
    if (noise.dim() != rows) throw std::invalid_argument("noise dimension must equal rows");

    std::vector<std::size_t> agent_order(phi);
    std::vector<std::size_t> coord_order(d);
    std::iota(agent_order.begin(), agent_order.end(), 0);
    std::iota(coord_order.begin(), coord_order.end(), 0);
    std::shuffle(agent_order.begin(), agent_order.end(), rng.engine());
    std::shuffle(coord_order.begin(), coord_order.end(), rng.engine());

    // Coordinate-major slots: the copies of one coordinate are consecutive,
    // so they land on distinct agents as long as multiplicity <= phi.
    std::vector<std::vector<std::size_t>> observed(phi);
    for (std::size_t slot = 0; slot < multiplicity * d; ++slot) {
        const std::size_t agent = agent_order[slot % phi];
        observed[agent].push_back(coord_order[slot / multiplicity]);
    }

    std::vector<ObservationModel> models;
    models.reserve(phi);
    for (std::size_t i = 0; i < phi; ++i) {
        Mat h(rows, d);
        for (std::size_t r = 0; r < observed[i].size(); ++r) h(r, observed[i][r]) = 1.0;
        models.emplace_back(i, std::move(h), noise);
    }
    return models;
}

std::vector<ObservationModel> make_identity_models(std::size_t d, std::size_t phi,
                                                   const NoiseSpec& noise) {
    if (noise.dim() != d) throw std::invalid_argument("noise dimension must equal d");
    std::vector<ObservationModel> models;
    models.reserve(phi);
    for (std::size_t i = 0; i < phi; ++i) models.emplace_back(i, Mat::identity(d), noise);
    return models;
}

std::vector<ObservationModel> make_zero_models(std::size_t d, std::size_t phi, std::size_t rows,
                                               const NoiseSpec& noise) {
    if (noise.dim() != rows) throw std::invalid_argument("noise dimension must equal rows");
    std::vector<ObservationModel> models;
    models.reserve(phi);
    for (std::size_t i = 0; i < phi; ++i) models.emplace_back(i, Mat(rows, d), noise);
    return models;
}

}  // namespace byzest
