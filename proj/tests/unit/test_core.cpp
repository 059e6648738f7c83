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


#include <doctest.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "byzest/format.hpp"
#include "byzest/linalg.hpp"
#include "byzest/rng.hpp"

using namespace byzest;

TEST_SUITE("core_numerics") {

TEST_CASE("column l1 norms") {
    CHECK(l1_norm_column(Mat::identity(3), 1) == 1.0);
    CHECK(l1_norm_column(Mat(3, 3), 2) == 0.0);
    CHECK(l1_norm_column(Mat{{1, -2}, {3, 0}}, 0) == 4.0);
    CHECK_THROWS_AS(l1_norm_column(Mat(2, 2), 2), std::out_of_range);
}

TEST_CASE("vector norms") {
    CHECK(linf_norm(Vec{0, 0, 0}) == 0.0);
    CHECK(linf_norm(Vec{-3, 2}) == 3.0);
    CHECK(linf_norm(Vec{0.5, -0.7, 0.7}) == 0.7);
    CHECK(l2_norm(Vec{3, 4}) == 5.0);
    CHECK(l2_norm(Vec(5)) == 0.0);
    CHECK(l2_norm(Vec{1, 1, 1, 1}) == 2.0);
}

TEST_CASE("matrix products") {
    const Vec v{1.5, -2.0};
    CHECK(matvec(Mat::identity(2), v) == v);
    CHECK(matvec(Mat(2, 2), v) == Vec(2));
    CHECK(matvec(Mat{{1, 2}, {0, 1}}, Vec{1, 1}) == Vec{3, 1});
    CHECK(matvec_transpose(Mat{{1, 2}, {0, 1}}, Vec{1, 1}) == Vec{1, 3});

    const Mat g = matmul_transpose_self(Mat{{1, 2}, {3, 4}});
    CHECK(g == Mat{{10, 14}, {14, 20}});
    CHECK(identity_minus_gram(Mat{{1, 0}}) == Mat{{0, 0}, {0, 1}});
    CHECK_THROWS_AS(matvec(Mat(2, 3), Vec(2)), std::invalid_argument);
}

TEST_CASE("operator norm by power iteration") {
    CHECK(operator_norm(Mat{{3, 0}, {0, 1}}) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(operator_norm(Mat{{0, 1, 0}, {1, 0, 0}}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(operator_norm(Mat(2, 2)) == 0.0);
    // [[1,1],[0,1]] has largest singular value the golden ratio.
    CHECK(operator_norm(Mat{{1, 1}, {0, 1}}) ==
          doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-9));
}

TEST_CASE("norm properties on random inputs") {
    Rng rng(2024);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t d = 1 + rng.next() % 20;
        Vec v(d);
        for (auto& x : v) x = rng.uniform(-5, 5);
        const double inf = linf_norm(v), two = l2_norm(v);
        REQUIRE(inf <= two + 1e-12);
        REQUIRE(two <= std::sqrt(static_cast<double>(d)) * inf + 1e-12);
        REQUIRE(matvec(Mat::identity(d), v) == v);
    }
    for (int trial = 0; trial < 1000; ++trial) {
        Mat m(4, 3);
        const std::size_t zero_col = rng.next() % 3;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                m(r, c) = c == zero_col ? 0.0 : rng.uniform(-1, 1) + (rng.uniform(0, 1) < 0.5 ? 2 : -2);
        for (std::size_t c = 0; c < 3; ++c) {
            const double n1 = l1_norm_column(m, c);
            REQUIRE(n1 >= 0.0);
            REQUIRE((n1 == 0.0) == (c == zero_col));
        }
    }
}

TEST_CASE("non-finite entries are detected") {
    Vec v{1.0, std::numeric_limits<double>::quiet_NaN()};
    CHECK_FALSE(v.all_finite());
    Mat m(1, 1, std::numeric_limits<double>::infinity());
    CHECK_FALSE(m.all_finite());
}

TEST_CASE("seed derivation separates streams") {
    CHECK(derive_seed(1, "noise", 0) != derive_seed(1, "noise", 1));
    CHECK(derive_seed(1, "noise", 0) != derive_seed(1, "init", 0));
    CHECK(derive_seed(1, "noise", 0) != derive_seed(2, "noise", 0));
    CHECK(derive_seed(5, "theta", 3) == derive_seed(5, "theta", 3));

    Rng a(9, "x", 2), b(9, "x", 2);
    for (int i = 0; i < 100; ++i) REQUIRE(a.next() == b.next());
}

TEST_CASE("shortest round-trip formatting") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1e300) == "1e+300");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_double(std::nan("")) == "nan");
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double x = rng.normal(0, 1e3);
        const std::string s = format_double(x);
        double back = 0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(back == x);
    }
}

}  // TEST_SUITE
