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
#include "hoca/sampling.hpp"
#include "hoca/transfer.hpp"

using namespace hoca;

namespace {

std::shared_ptr<TransferContext> context2()
{
    static auto ctx = std::make_shared<TransferContext>(2, 4);
    return ctx;
}

std::vector<PolyVector> random_tuple(Sampler& s, const std::vector<PolyVector>& basis, int n)
{
    std::vector<PolyVector> t;
    for (int i = 0; i < n; ++i)
        t.push_back(basis[static_cast<std::size_t>(s.uniform(0, static_cast<int>(basis.size()) - 1))]);
    return t;
}

} // namespace

TEST_CASE("planar tree enumeration")
{
    CHECK(enumerate_trees(1).size() == 1);
    CHECK(enumerate_trees(2).size() == 1);
    CHECK(enumerate_trees(3).size() == 3);
    CHECK(enumerate_trees(4).size() == 11);
    CHECK(enumerate_trees(5).size() == 45);
    CHECK(enumerate_trees(3, true).size() == 2);
    CHECK(enumerate_trees(4, true).size() == 5);
    auto t3 = enumerate_trees(3);
    std::set<std::string> shapes;
    for (const auto& t : t3) {
        shapes.insert(tree_json(t).dump());
        CHECK(t.leaves() == 3);
    }
    CHECK(shapes == std::set<std::string>{"[1,2,3]", "[[1,2],3]", "[1,[2,3]]"});
    CHECK_THROWS_AS(enumerate_trees(0), ArgumentError);
    CHECK_THROWS_AS(enumerate_trees(9), ResourceError);
}

TEST_CASE("tree weights and serialization")
{
    CHECK(tree_weight(tree_from(nlohmann::json::parse("[1,2,3]"))) == 6);
    CHECK(tree_weight(tree_from(nlohmann::json::parse("[[1,[2,3]],4]"))) == 8);
    CHECK(tree_weight(tree_from(nlohmann::json::parse("[[1,2],3]"))) == 4);
    for (const auto& t : enumerate_trees(4))
        CHECK(tree_from(tree_json(t)) == t);
    CHECK_THROWS_AS(tree_from(nlohmann::json::parse("[1]")), ArgumentError);
}

TEST_CASE("low arity coefficients")
{
    auto ctx = context2();
    Sampler s(4);
    for (int trial = 0; trial < 10; ++trial) {
        PolyVector a = s.polyvector(2, 2, 0, 2, 2);
        std::vector<PolyVector> in{a};
        CHECK(ctx->psi(in) == hkr_i(a));
        CHECK(ctx->q1(in).is_zero());
    }
    std::vector<PolyVector> none;
    CHECK_THROWS_AS(ctx->psi(none), ArgumentError);
    std::vector<PolyVector> many(5, PolyVector::term(2, 1, {0, 0}, {0}));
    CHECK_THROWS_AS(ctx->psi(many), ResourceError);
}

TEST_CASE("second coefficient is the Schouten bracket")
{
    auto ctx = context2();
    Sampler s(11);
    for (int trial = 0; trial < 40; ++trial) {
        PolyVector a = s.polyvector(2, 2, 0, 2, 2), b = s.polyvector(2, 2, 0, 2, 2);
        std::vector<PolyVector> in{a, b};
        CHECK(ctx->q1(in) == schouten(a, b));
    }
    for (int trial = 0; trial < 10; ++trial) {
        PolyVector x = s.homogeneous_polyvector(2, 2, 1, 2);
        std::vector<PolyVector> in{x, x};
        CHECK(ctx->q1(in).is_zero());
    }
}

TEST_CASE("vector fields: second coefficient vanishes")
{
    auto ctx = context2();
    Sampler s(12);
    for (int trial = 0; trial < 20; ++trial) {
        PolyVector x = s.homogeneous_polyvector(2, 2, 1, 2), y = s.homogeneous_polyvector(2, 2, 1, 2);
        std::vector<PolyVector> in{x, y};
        CHECK(ctx->psi(in).is_zero());
        CHECK(g_bracket(hkr_i(x), hkr_i(y)) == hkr_i(schouten(x, y)));
    }
}

TEST_CASE("planar tree sum agrees with the set-partition recursion")
{
    auto ctx = context2();
    auto basis = polyvector_basis(2, 1);
    Sampler s(21);
    for (int n : {2, 3}) {
        for (int trial = 0; trial < 15; ++trial) {
            auto t = random_tuple(s, basis, n);
            CHECK(ctx->psi_raw(t) == ctx->psi_oracle(t));
            CHECK(ctx->q1_raw(t) == ctx->q1_oracle(t));
            CHECK(ctx->psi_raw(t, false) == ctx->psi_raw(t, true));
        }
    }
    // multilinearity on non-basis inputs
    PolyVector a = s.polyvector(2, 1, 0, 2, 3), b = s.polyvector(2, 1, 0, 2, 2), c = s.polyvector(2, 1, 1, 2, 2);
    std::vector<PolyVector> t{a, b, c};
    CHECK(ctx->psi_raw(t) == ctx->psi_oracle(t));
    CHECK(ctx->stats().memo_entries > 0);
    CHECK(ctx->stats().memo_hits > 0);
}

TEST_CASE("full tree set and binary filter agree")
{
    OperationFamily full = dg_lie_operations(2);
    full.max_arity = 3; // keeps the corollas, which evaluate to zero
    auto h = std::make_shared<HomotopyTable>(2, 7, 8);
    TransferContext all(2, 3, full, h), binary(2, 3, dg_lie_operations(2), h);
    auto basis = polyvector_basis(2, 1);
    Sampler s(31);
    for (int trial = 0; trial < 10; ++trial) {
        auto t = random_tuple(s, basis, 3);
        CHECK(all.psi_raw(t) == binary.psi_raw(t));
        CHECK(all.q1_raw(t) == binary.q1_raw(t));
    }
}

TEST_CASE("transfer identities at arities 2 and 3")
{
    auto ctx = context2();
    for (int n : {2, 3}) {
        auto r = check_transfer(*ctx, n, 25, 1000 + static_cast<std::uint64_t>(n));
        CHECK(r.samples == 25);
        CHECK(r.morphism_ok);
        CHECK(r.square_zero_ok);
        CHECK(r.failures.empty());
        CHECK(report_json(r)["ok"] == true);
    }
    std::vector<std::vector<PolyVector>> empty;
    auto r = check_transfer(*ctx, 2, empty);
    CHECK(r.no_coverage);
    CHECK(r.ok());
}

TEST_CASE("structure preconditions and a mismatched homotopy")
{
    OperationFamily unsigned_ops = dg_lie_operations(2);
    unsigned_ops.apply = [](std::span<const PolyDiffOp> x) {
        if (x.size() == 1)
            return hochschild_d(x[0]);
        return x.size() == 2 ? g_bracket(x[0], x[1]) : PolyDiffOp(2);
    };
    auto h = std::make_shared<HomotopyTable>(2, 7, 8);
    CHECK_THROWS_AS(TransferContext(2, 3, unsigned_ops, h), ArgumentError);

    // 2d is still a differential and a derivation, but H is not a homotopy for it
    OperationFamily doubled = dg_lie_operations(2);
    auto base = doubled.apply;
    doubled.apply = [base](std::span<const PolyDiffOp> x) {
        PolyDiffOp v = base(x);
        return x.size() == 1 ? v * Rational(2) : v;
    };
    TransferContext bad(2, 3, doubled, h);
    auto r = check_transfer(bad, 3, 10, 77);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.failures.empty());
}

TEST_CASE("Schouten bracket in three variables")
{
    TransferContext ctx(3, 2);
    Sampler s(41);
    for (int trial = 0; trial < 25; ++trial) {
        PolyVector a = s.polyvector(3, 1, 0, 3, 2), b = s.polyvector(3, 1, 0, 3, 2);
        std::vector<PolyVector> in{a, b};
        CHECK(ctx.q1(in) == schouten(a, b));
    }
}
