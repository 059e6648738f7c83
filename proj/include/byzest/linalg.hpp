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

// Small dense vector/matrix layer. Sizes here are tiny (d up to a few
// hundred), so everything is row-major and allocation-per-value.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace byzest {

/// Dense real vector with finite entries.
class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t n, double fill = 0.0);
    Vec(std::initializer_list<double> values);
    explicit Vec(std::vector<double> values);

    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator[](std::size_t i) noexcept { return data_[i]; }
    double operator[](std::size_t i) const noexcept { return data_[i]; }

    std::span<double> span() noexcept { return data_; }
    std::span<const double> span() const noexcept { return data_; }
    const std::vector<double>& values() const noexcept { return data_; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    bool all_finite() const noexcept;

    Vec& operator+=(const Vec& other);
    Vec& operator-=(const Vec& other);
    Vec& operator*=(double scale) noexcept;

    friend bool operator==(const Vec&, const Vec&) = default;

    static Vec basis(std::size_t n, std::size_t k);

private:
    std::vector<double> data_;
};

Vec operator+(Vec lhs, const Vec& rhs);
Vec operator-(Vec lhs, const Vec& rhs);
Vec operator*(double scale, Vec v);

/// Row-major dense matrix.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0);
    Mat(std::initializer_list<std::initializer_list<double>> rows);

    static Mat identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }

    bool all_finite() const noexcept;
    bool is_diagonal() const noexcept;
    double trace() const;

    friend bool operator==(const Mat&, const Mat&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Sum of |M(r, k)| over rows r. Throws std::out_of_range for a bad column.
double l1_norm_column(const Mat& m, std::size_t k);

double linf_norm(std::span<const double> v) noexcept;
double l2_norm(std::span<const double> v) noexcept;
inline double linf_norm(const Vec& v) noexcept { return linf_norm(v.span()); }
inline double l2_norm(const Vec& v) noexcept { return l2_norm(v.span()); }

/// M v. Throws std::invalid_argument on shape mismatch.
Vec matvec(const Mat& m, const Vec& v);
/// M^T v.
Vec matvec_transpose(const Mat& m, const Vec& v);
/// M^T M.
Mat matmul_transpose_self(const Mat& m);
/// I - M^T M, the per-agent error propagation matrix of a unit gradient step.
Mat identity_minus_gram(const Mat& m);

/// Largest singular value by power iteration on M^T M.
double operator_norm(const Mat& m, double tolerance = 1e-10, int max_iterations = 10000);

}  // namespace byzest
