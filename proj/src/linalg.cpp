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

#include "byzest/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace byzest {

Vec::Vec(std::size_t n, double fill) : data_(n, fill) {}
Vec::Vec(std::initializer_list<double> values) : data_(values) {}
Vec::Vec(std::vector<double> values) : data_(std::move(values)) {}

bool Vec::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

Vec& Vec::operator+=(const Vec& other) {
    if (other.size() != size()) throw std::invalid_argument("vector size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& other) {
    if (other.size() != size()) throw std::invalid_argument("vector size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

Vec& Vec::operator*=(double scale) noexcept {
    for (auto& x : data_) x *= scale;
    return *this;
}

Vec Vec::basis(std::size_t n, std::size_t k) {
    if (k >= n) throw std::out_of_range("basis index out of range");
    Vec e(n);
    e[k] = 1.0;
    return e;
}

Vec operator+(Vec lhs, const Vec& rhs) { return lhs += rhs; }
Vec operator-(Vec lhs, const Vec& rhs) { return lhs -= rhs; }
Vec operator*(double scale, Vec v) { return v *= scale; }

Mat::Mat(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool Mat::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

bool Mat::is_diagonal() const noexcept {
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (r != c && (*this)(r, c) != 0.0) return false;
    return true;
}

double Mat::trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace of a non-square matrix");
    double t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double l1_norm_column(const Mat& m, std::size_t k) {
    if (k >= m.cols())
        throw std::out_of_range("column " + std::to_string(k) + " out of range for " +
                                std::to_string(m.cols()) + " columns");
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) s += std::abs(m(r, k));
    return s;
}

double linf_norm(std::span<const double> v) noexcept {
    double best = 0.0;
    for (double x : v) best = std::max(best, std::abs(x));
    return best;
}

double l2_norm(std::span<const double> v) noexcept {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

Vec matvec(const Mat& m, const Vec& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("matvec: shape mismatch");
    Vec out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        double s = 0.0;
        for (std::size_t c = 0; c < row.size(); ++c) s += row[c] * v[c];
        out[r] = s;
    }
    return out;
}

Vec matvec_transpose(const Mat& m, const Vec& v) {
    if (v.size() != m.rows()) throw std::invalid_argument("matvec_transpose: shape mismatch");
    Vec out(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        const double vr = v[r];
        if (vr == 0.0) continue;
        for (std::size_t c = 0; c < row.size(); ++c) out[c] += row[c] * vr;
    }
    return out;
}

Mat matmul_transpose_self(const Mat& m) {
    Mat g(m.cols(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i] == 0.0) continue;
            for (std::size_t j = 0; j < row.size(); ++j) g(i, j) += row[i] * row[j];
        }
    }
    return g;
}

Mat identity_minus_gram(const Mat& m) {
    Mat g = matmul_transpose_self(m);
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = (i == j ? 1.0 : 0.0) - g(i, j);
    return g;
}

double operator_norm(const Mat& m, double tolerance, int max_iterations) {
    const std::size_t n = m.cols();
    if (n == 0 || m.rows() == 0) return 0.0;
    const Mat gram = matmul_transpose_self(m);

    // Fixed-seed start so a start orthogonal to the top eigenvector is
    // vanishingly unlikely and the result is reproducible.
    std::mt19937_64 gen(0x5eedULL);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    Vec v(n);
    for (auto& x : v) x = u(gen);
    double norm = l2_norm(v);
    if (norm == 0.0) return 0.0;
    v *= 1.0 / norm;

    double lambda = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        Vec w = matvec(gram, v);
        const double next = l2_norm(w);
        if (next == 0.0) return 0.0;
        w *= 1.0 / next;
        const bool done = std::abs(next - lambda) <= tolerance * std::max(1.0, next);
        lambda = next;
        v = std::move(w);
        if (done) break;
    }
    return std::sqrt(lambda);
}

}  // namespace byzest
