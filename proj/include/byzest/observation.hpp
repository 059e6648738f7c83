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

#pragma once

// Linear observation model y_i(t) = H_i theta* + w_i(t) with bounded,
// zero-mean, i.i.d. noise, and the empirical least-squares gradient an agent
// can compute from its own measurement history.

#include <cstddef>
#include <string_view>
#include <vector>

#include "byzest/linalg.hpp"
#include "byzest/rng.hpp"

namespace byzest {

enum class NoiseKind { Zero, UniformBox, TruncatedGaussian };

std::string_view to_string(NoiseKind kind) noexcept;
NoiseKind parse_noise_kind(std::string_view name);

/// Noise distribution for one agent. Covariance targets are diagonal.
///
/// UniformBox draws each component uniformly on [-a_k, a_k] with
/// a_k = sqrt(3 * Sigma_kk), so the covariance is met exactly and the norm
/// bound is C = sqrt(sum_k a_k^2). TruncatedGaussian draws N(0, Sigma) and
/// rejects samples with norm above C; the truncation shrinks the realised
/// covariance slightly below the target.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::Zero;
    Mat covariance;
    double bound_C = 0.0;

    static NoiseSpec zero(std::size_t dim);
    static NoiseSpec uniform_box(std::size_t dim, double variance);
    static NoiseSpec truncated_gaussian(std::size_t dim, double variance, double bound_C);

    std::size_t dim() const noexcept { return covariance.rows(); }
    double covariance_trace() const { return covariance.trace(); }

    Vec sample(Rng& rng) const;
};

struct ObservationModel {
    std::size_t agent_id = 0;
    Mat H;
    NoiseSpec noise;

    ObservationModel() = default;
    ObservationModel(std::size_t id, Mat h, NoiseSpec n);

    std::size_t rows() const noexcept { return H.rows(); }
    std::size_t dim() const noexcept { return H.cols(); }
};

/// Running mean of an agent's measurements. Holds only the average, which is
/// all the empirical gradient depends on.
class MeasurementAccumulator {
public:
    MeasurementAccumulator() = default;
    explicit MeasurementAccumulator(std::size_t rows) : mean_(rows) {}

    void add(const Vec& y);

    std::size_t count() const noexcept { return count_; }
    const Vec& mean() const noexcept { return mean_; }

private:
    std::size_t count_ = 0;
    Vec mean_;
};

Vec sample_measurement(const ObservationModel& model, const Vec& theta_star, Rng& rng);

/// Gradient of f_{i,t}(x) = (1/t) sum_s 0.5 ||H x - y(s)||^2, i.e.
/// H^T (H x - ybar). Throws std::logic_error on an empty accumulator.
Vec empirical_gradient(const ObservationModel& model, const MeasurementAccumulator& acc,
                       const Vec& x);

/// Coordinate-selection observation matrices. Each H_i has `rows` rows, each
/// either a basis row e_k^T or zero padding; every coordinate is observed by
/// exactly `multiplicity` distinct agents. Slots are dealt round-robin over a
/// seeded shuffle of agents and coordinates.
std::vector<ObservationModel> make_coordinate_selection_models(std::size_t d, std::size_t phi,
                                                               std::size_t rows,
                                                               std::size_t multiplicity, Rng& rng,
                                                               const NoiseSpec& noise);

std::vector<ObservationModel> make_identity_models(std::size_t d, std::size_t phi,
                                                   const NoiseSpec& noise);
std::vector<ObservationModel> make_zero_models(std::size_t d, std::size_t phi, std::size_t rows,
                                               const NoiseSpec& noise);

}  // namespace byzest
