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
#include "hoca/hkr.hpp"
#include "hoca/json_io.hpp"
#include "hoca/sampling.hpp"

#include <thread>

using namespace hoca;

TEST_CASE("hkr_i examples")
{
    const int d = 2;
    auto f = PolyVector::function(d, monomial({1, 2}, Rational(3)));
    CHECK(hkr_i(f) == PolyDiffOp::function(d, monomial({1, 2}, Rational(3))));
    CHECK(hkr_i(PolyVector::term(d, 1, {0, 0}, {0})) == PolyDiffOp::term(d, 1, {0, 0}, {{1, 0}}));
    auto bi = hkr_i(PolyVector::term(d, 1, {0, 0}, {0, 1}));
    CHECK(bi == PolyDiffOp::term(d, Rational(1, 2), {0, 0}, {{1, 0}, {0, 1}}) +
                    PolyDiffOp::term(d, Rational(-1, 2), {0, 0}, {{0, 1}, {1, 0}}));
}

TEST_CASE("hkr_p examples")
{
    const int d = 2;
    CHECK(hkr_p(PolyDiffOp::term(d, 1, {0, 0}, {{1, 0}, {1, 0}})).is_zero());
    CHECK(hkr_p(PolyDiffOp::term(d, 1, {0, 0}, {{2, 0}, {0, 1}})).is_zero());
    CHECK(hkr_p(PolyDiffOp::term(d, 1, {1, 0}, {{0, 1}, {1, 0}})) == PolyVector::term(d, -1, {1, 0}, {0, 1}));
}

TEST_CASE("hkr lands in cocycles and p i = id on random poly-vectors")
{
    Sampler s(4);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = s.uniform(1, 3);
        auto a = s.polyvector(d, 3, 0, 3, 3);
        CHECK(hochschild_d(hkr_i(a)).is_zero());
        CHECK(hkr_p(hkr_i(a)) == a);
        auto D = s.polydiff(d, 2, 0, 3, 2, 3);
        CHECK(hkr_p(hochschild_d(D)).is_zero());
    }
}

TEST_CASE("block bases and the differential")
{
    CHECK(block_basis(2, BlockKey{0, {0, 0}}).size() == 1);
    CHECK(block_basis(2, BlockKey{0, {1, 0}}).empty());
    CHECK(block_basis(2, BlockKey{2, {1, 1}}).size() == 4);
    for (int n = 0; n <= 3; ++n)
        for (const auto& g : indices_of_total(2, 2)) {
            BlockKey b{n, g};
            SparseMatrix dd = block_differential(2, BlockKey{n + 1, g}) * block_differential(2, b);
            CHECK(dd.is_zero());
        }
}

TEST_CASE("homotopy block examples")
{
    HomotopyTable t(2, 4, 3);
    CHECK(t.block(BlockKey{1, {0, 0}}).h.is_zero());
    CHECK(t.block(BlockKey{1, {1, 0}}).h.is_zero());
    CHECK(t.block(BlockKey{1, {0, 1}}).h.is_zero());
    CHECK_FALSE(t.block(BlockKey{2, {2, 0}}).h.is_zero());
    CHECK_THROWS_AS(t.block(BlockKey{5, {1, 0}}), ResourceError);
    CHECK_THROWS_AS(t.block(BlockKey{1, {4, 0}}), ResourceError);
    CHECK_THROWS_AS(t.block(BlockKey{1, {1, 0, 0}}), ArgumentError);
}

TEST_CASE("cohomology dimensions match the exterior algebra")
{
    HomotopyTable t(2, 3, 3);
    CHECK(t.cohomology_dim(1, 1) == 2);
    CHECK(t.cohomology_dim(2, 2) == 1);
    CHECK(t.cohomology_dim(2, 0) == 0);
    CHECK(t.cohomology_dim(0, 0) == 1);
    CHECK(t.cohomology_dim(1, 0) == 0);
    CHECK_THROWS_AS(t.cohomology_dim(4, 1), ResourceError);
    for (int n = 0; n <= 3; ++n)
        for (int w = 0; w <= 3; ++w) {
            std::size_t expect = (w == n) ? static_cast<std::size_t>(binomial(2, n).raw().get_num().get_si()) : 0;
            if (n > 2)
                expect = 0;
            CHECK(t.cohomology_dim(n, w) == expect);
        }
    HomotopyTable t3(3, 3, 3);
    CHECK(t3.cohomology_dim(2, 2) == 3);
    CHECK(t3.cohomology_dim(3, 3) == 1);
    CHECK(t3.cohomology_dim(2, 3) == 0);
}

TEST_CASE("every block satisfies the homotopy identities exactly")
{
    HomotopyTable t(2, 3, 3);
    for (int n = 0; n <= 3; ++n)
        for (int w = 0; w <= 3; ++w)
            for (const auto& b : t.blocks(n, w)) {
                auto r = t.verify(b);
                CAPTURE(n);
                CAPTURE(w);
                CHECK(r.ok());
            }
}

TEST_CASE("base-extended H: identities on random operators and R-linearity")
{
    const int d = 2;
    HomotopyTable t(d, 5, 4);
    Sampler s(77);
    for (int trial = 0; trial < 40; ++trial) {
        auto D = s.polydiff(d, 2, 1, 3, 1, 3);
        auto a = s.polyvector(d, 2, 0, 2, 2);
        CHECK(hkr_i(hkr_p(D)) - D == hochschild_d(t.apply(D)) + t.apply(hochschild_d(D)));
        CHECK(t.apply(hkr_i(a)).is_zero());
        CHECK(hkr_p(t.apply(D)).is_zero());
        CHECK(t.apply(t.apply(D)).is_zero());
        auto f = s.polynomial(d, 2, 2);
        CHECK(t.apply(multiply(f, D)) == multiply(f, t.apply(D)));
    }
}

TEST_CASE("homotopy table JSON round trip")
{
    HomotopyTable t(2, 3, 2);
    for (int n = 0; n <= 3; ++n)
        for (int w = 0; w <= 2; ++w)
            for (const auto& b : t.blocks(n, w))
                t.block(b);
    auto j = t.to_json();
    HomotopyTable u(2, 3, 2);
    u.load_json(j);
    CHECK(u.cached_blocks() == t.cached_blocks());
    CHECK(u.to_json() == j);
    CHECK(u.block(BlockKey{2, {1, 1}}).h == t.block(BlockKey{2, {1, 1}}).h);
    auto bad = j;
    bad["blocks"][0]["basis"] = json::array();
    HomotopyTable v(2, 3, 2);
    CHECK_THROWS_AS(v.load_json(bad), ArgumentError);
}

TEST_CASE("concurrent block requests build each block once")
{
    HomotopyTable t(2, 3, 3);
    std::vector<std::thread> threads;
    std::vector<const HomotopyBlock*> seen(8);
    for (int k = 0; k < 8; ++k)
        threads.emplace_back([&, k] { seen[static_cast<std::size_t>(k)] = &t.block(BlockKey{3, {2, 1}}); });
    for (auto& th : threads)
        th.join();
    for (auto* p : seen)
        CHECK(p == seen[0]);
    CHECK(t.cached_blocks() == 1);
}
