/* Copyright 2026 The hoca Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

#include "doctest.h"

#include "hoca/errors.hpp"
#include "hoca/linalg.hpp"
#include "hoca/sampling.hpp"
#include "hoca/series.hpp"
#include "hoca/sign.hpp"

#include <vector>

using namespace hoca;

TEST_CASE("rational canonical form and text")
{
    Rational r(6, -4);
    CHECK(r.str() == "-3/2");
    CHECK(Rational(3).str() == "3/1");
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK_THROWS_AS(Rational::parse("1/0"), ArgumentError);
    CHECK_THROWS_AS(Rational::parse("x"), ArgumentError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), ArgumentError);
    CHECK(factorial(5) == Rational(120));
    CHECK(binomial(6, 2) == Rational(15));
}

TEST_CASE("koszul sign examples")
{
    std::vector<int> id{0, 1, 2}, deg{1, 3, 2};
    CHECK(koszul_sign(id, deg) == 1);
    std::vector<int> sw{1, 0};
    std::vector<int> odd{1, 1}, mixed{0, 1};
    CHECK(koszul_sign(sw, odd) == -1);
    CHECK(koszul_sign(sw, mixed) == 1);
    std::vector<int> bad{0, 0};
    CHECK_THROWS_AS(koszul_sign(bad, odd), ArgumentError);
    std::vector<int> short_deg{1};
    CHECK_THROWS_AS(koszul_sign(sw, short_deg), ArgumentError);
}

TEST_CASE("koszul sign is multiplicative under composition")
{
    Sampler s(7);
    for (int n = 1; n <= 5; ++n) {
        auto perms = all_permutations(n);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<int> deg(static_cast<std::size_t>(n));
            for (auto& x : deg)
                x = s.uniform(-2, 3);
            const auto& sigma = perms[static_cast<std::size_t>(s.uniform(0, static_cast<int>(perms.size()) - 1))];
            const auto& tau = perms[static_cast<std::size_t>(s.uniform(0, static_cast<int>(perms.size()) - 1))];
            std::vector<int> rho(static_cast<std::size_t>(n)), deg_tau(static_cast<std::size_t>(n));
            for (std::size_t i = 0; i < rho.size(); ++i) {
                rho[i] = tau[static_cast<std::size_t>(sigma[i])];
                deg_tau[i] = deg[static_cast<std::size_t>(tau[i])];
            }
            CHECK(koszul_sign(rho, deg) == koszul_sign(sigma, deg_tau) * koszul_sign(tau, deg));
        }
    }
}

TEST_CASE("series multiplication examples")
{
    auto a = series_from_strings({"1", "1", "0"});
    auto b = series_from_strings({"1", "-1", "0"});
    CHECK(series_mul(a, b) == series_from_strings({"1", "0", "-1"}));
    auto one = series_from_strings({"1", "0", "0"});
    CHECK(series_mul(a, one) == a);
    auto h = series_from_strings({"0", "1"});
    CHECK(series_mul(h, h).is_zero());
    CHECK_THROWS_AS(series_mul(a, h), ArgumentError);
    CHECK(to_strings(a) == std::vector<std::string>{"1/1", "1/1", "0/1"});
}

TEST_CASE("series form a commutative ring")
{
    Sampler s(11);
    for (int K = 0; K <= 4; ++K)
        for (int trial = 0; trial < 20; ++trial) {
            auto rnd = [&] {
                FormalSeries x = make_series(K);
                for (int k = 0; k <= K; ++k)
                    x[k] = s.uniform(0, 2) == 0 ? Rational(0) : s.small_rational();
                return x;
            };
            auto a = rnd(), b = rnd(), c = rnd();
            CHECK(series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c)));
            CHECK(series_mul(a, b + c) == series_mul(a, b) + series_mul(a, c));
            CHECK(series_mul(a, b) == series_mul(b, a));
        }
}

TEST_CASE("solve_linear examples")
{
    SparseMatrix id = SparseMatrix::identity(3);
    DenseVector rhs{Rational(1), Rational(-2), Rational(1, 3)};
    auto sol = solve_linear(id, rhs);
    REQUIRE(sol.particular);
    CHECK(*sol.particular == rhs);
    CHECK(sol.rank == 3);

    SparseMatrix zero(2, 3);
    auto z = solve_linear(zero, DenseVector(2));
    CHECK(z.rank == 0);
    CHECK(z.nullity() == 3);
    REQUIRE(z.particular);

    // hand row reduction: [[1,1],[1,1]] x = (1,1) has x = (1,0) + s(-1,1)
    SparseMatrix a(2, 2);
    a.set(0, 0, 1);
    a.set(0, 1, 1);
    a.set(1, 0, 1);
    a.set(1, 1, 1);
    auto s1 = solve_linear(a, {Rational(1), Rational(1)});
    CHECK(s1.rank == 1);
    REQUIRE(s1.particular);
    CHECK(*s1.particular == DenseVector{Rational(1), Rational(0)});
    REQUIRE(s1.kernel.size() == 1);
    CHECK(s1.kernel[0] == DenseVector{Rational(-1), Rational(1)});

    auto s2 = solve_linear(a, {Rational(1), Rational(2)});
    CHECK_FALSE(s2.particular);
}

TEST_CASE("solve_linear solutions and rank-nullity on random systems")
{
    Sampler s(3);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = static_cast<std::size_t>(s.uniform(1, 5)), c = static_cast<std::size_t>(s.uniform(1, 5));
        SparseMatrix a(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (s.uniform(0, 2) == 0)
                    a.set(i, j, s.small_rational());
        DenseVector x(c);
        for (auto& v : x)
            v = s.small_rational();
        DenseVector rhs = a.apply(x);
        auto sol = solve_linear(a, rhs);
        REQUIRE(sol.particular);
        CHECK(a.apply(*sol.particular) == rhs);
        CHECK(sol.rank + sol.nullity() == c);
        for (const auto& k : sol.kernel)
            CHECK(a.apply(k) == DenseVector(r));
        CHECK(matrix_rank(a) == sol.rank);
    }
}

TEST_CASE("row space reduction is canonical")
{
    RowSpace rs;
    SparseVector v{{0, Rational(1)}, {1, Rational(1)}};
    CHECK(rs.insert(v));
    CHECK_FALSE(rs.insert(v));
    SparseVector w{{0, Rational(2)}, {1, Rational(2)}};
    CHECK(rs.contains(w));
    SparseVector u{{1, Rational(1)}};
    CHECK(rs.reduce(u) == SparseVector{{1, Rational(1)}});
}
