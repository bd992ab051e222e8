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

#include "hoca/bar.hpp"
#include "hoca/errors.hpp"
#include "hoca/polydiff.hpp"
#include "hoca/sampling.hpp"
#include "hoca/sign.hpp"

#include <functional>

using namespace hoca;

namespace {

PolyDiffOp op(int d, Rational c, MultiIndex m, DiffWord w) { return PolyDiffOp::term(d, c, m, w); }

std::vector<Polynomial> random_args(Sampler& s, int d, std::size_t n)
{
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(s.polynomial(d, 4, 3));
    return out;
}

// Pointwise composition: D{E}(f..) = sum_j (-1)^{|E| j} D(f_1..f_j, E(f_{j+1}..), ..)
Polynomial brace_pointwise(const PolyDiffKey& dk, const PolyDiffKey& ek, const std::vector<Polynomial>& f, int d)
{
    const std::size_t m = dk.word.size(), k = ek.word.size();
    PolyDiffOp D = op(d, 1, dk.mono, dk.word), E = op(d, 1, ek.mono, ek.word);
    Polynomial out;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<Polynomial> inner(f.begin() + static_cast<long>(j), f.begin() + static_cast<long>(j + k));
        std::vector<Polynomial> outer(f.begin(), f.begin() + static_cast<long>(j));
        outer.push_back(evaluate(E, inner));
        outer.insert(outer.end(), f.begin() + static_cast<long>(j + k), f.end());
        out.add(evaluate(D, outer), Rational(minus_one_pow(static_cast<long>(shifted_degree(ek)) * static_cast<long>(j))));
    }
    return out;
}

// Hochschild coboundary on evaluations, independent of the brace code.
Polynomial hochschild_pointwise(const PolyDiffOp& D, std::size_t n, const std::vector<Polynomial>& a)
{
    const long deg = static_cast<long>(n) - 1;
    std::vector<Polynomial> tail(a.begin() + 1, a.end());
    std::vector<Polynomial> head(a.begin(), a.end() - 1);
    Polynomial out;
    out.add(a[0] * evaluate(D, tail), Rational(minus_one_pow(deg)));
    out += evaluate(D, head) * a[n];
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Polynomial> merged(a.begin(), a.begin() + static_cast<long>(j));
        merged.push_back(a[j] * a[j + 1]);
        merged.insert(merged.end(), a.begin() + static_cast<long>(j + 2), a.end());
        out.add(evaluate(D, merged), Rational(-minus_one_pow(deg + static_cast<long>(j))));
    }
    return out;
}

// a{b_1..b_q}{c_1..c_r} expanded by the right-hand side of the brace relation.
PolyDiffOp brace_relation_rhs(const PolyDiffOp& a, const std::vector<PolyDiffOp>& b, const std::vector<PolyDiffOp>& c)
{
    PolyDiffOp out(a.dim());
    std::vector<PolyDiffOp> args;
    std::function<void(std::size_t, std::size_t, long)> rec = [&](std::size_t k, std::size_t j, long exp) {
        if (k == b.size()) {
            auto all = args;
            for (std::size_t l = j; l < c.size(); ++l)
                all.push_back(c[l]);
            out += Rational(minus_one_pow(exp)) * brace(a, std::span<const PolyDiffOp>(all));
            return;
        }
        const std::size_t keep = args.size();
        long cdeg = 0;
        for (std::size_t l = 0; l < j; ++l)
            cdeg += *c[l].degree();
        for (std::size_t s = j; s <= c.size(); ++s) {
            if (s > j) {
                args.push_back(c[s - 1]);
                cdeg += *c[s - 1].degree();
            }
            for (std::size_t e = s; e <= c.size(); ++e) {
                std::vector<PolyDiffOp> inner(c.begin() + static_cast<long>(s), c.begin() + static_cast<long>(e));
                args.push_back(brace(b[k], std::span<const PolyDiffOp>(inner)));
                rec(k + 1, e, exp + static_cast<long>(*b[k].degree()) * cdeg);
                args.pop_back();
            }
        }
        args.erase(args.begin() + static_cast<long>(keep), args.end());
    };
    rec(0, 0, 0);
    return out;
}

PolyDiffOp homogeneous_sample(Sampler& s, int d, int len, int max_order, int max_coef)
{
    PolyDiffOp x(d);
    while (x.is_zero())
        x = s.polydiff(d, max_coef, len, len, max_order, s.uniform(1, 2));
    return x;
}

} // namespace

TEST_CASE("ul_coproduct examples")
{
    auto c0 = ul_coproduct({0});
    REQUIRE(c0.size() == 1);
    CHECK(c0[0].coefficient == Rational(1));
    auto c1 = ul_coproduct({1, 0});
    REQUIRE(c1.size() == 2);
    CHECK(c1[0].left == MultiIndex{0, 0});
    CHECK(c1[1].left == MultiIndex{1, 0});
    auto c2 = ul_coproduct({2});
    REQUIRE(c2.size() == 3);
    CHECK(c2[0].coefficient == Rational(1));
    CHECK(c2[1].coefficient == Rational(2));
    CHECK(c2[2].coefficient == Rational(1));
    CHECK(c2[1].left == MultiIndex{1});
    CHECK(c2[1].right == MultiIndex{1});
}

TEST_CASE("brace examples")
{
    const int d = 2;
    auto d1 = op(d, 1, {0, 0}, {{1, 0}}), d2 = op(d, 1, {0, 0}, {{0, 1}});
    CHECK(brace(d1, {d2}) == op(d, 1, {0, 0}, {{1, 1}}));
    CHECK(brace(d1, {d2, d1}).is_zero());
    // mu{d1}(f,g) = d1 f g + f d1 g
    auto mu = PolyDiffOp::mu(d);
    CHECK(brace(mu, {d1}) == op(d, 1, {0, 0}, {{1, 0}, {0, 0}}) + op(d, 1, {0, 0}, {{0, 0}, {1, 0}}));
    CHECK(brace(mu, {mu}).is_zero());
    CHECK_THROWS_AS(brace(d1, {PolyDiffOp(3)}), ArgumentError);
    // inserting a function into a slot
    auto t1 = PolyDiffOp::function(d, monomial({1, 0}));
    CHECK(brace(d1, {t1}) == PolyDiffOp::function(d, constant_polynomial(d, 1)));
}

TEST_CASE("brace agrees with pointwise composition")
{
    Sampler s(17);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = s.uniform(1, 2);
        auto D = homogeneous_sample(s, d, s.uniform(1, 3), 2, 2);
        auto E = homogeneous_sample(s, d, s.uniform(0, 2), 2, 2);
        const std::size_t m = D.terms().begin()->first.word.size(), k = E.terms().begin()->first.word.size();
        auto f = random_args(s, d, m + k - 1);
        Polynomial expected;
        for (const auto& [dk, dc] : D.terms())
            for (const auto& [ek, ec] : E.terms())
                expected.add(brace_pointwise(dk, ek, f, d), dc * ec);
        CHECK(evaluate(brace(D, {E}), f) == expected);
    }
}

TEST_CASE("hochschild differential examples")
{
    const int d = 2;
    CHECK(hochschild_d(PolyDiffOp::mu(d)).is_zero());
    CHECK(hochschild_d(op(d, 1, {0, 0}, {{1, 0}})).is_zero());
    CHECK(hochschild_d(op(d, 1, {1, 0}, {{0, 0}})) == op(d, 1, {1, 0}, {{0, 0}, {0, 0}}));
    CHECK(hochschild_d(PolyDiffOp::function(d, monomial({2, 1}))).is_zero());
    // constant bidifferential words are cocycles
    auto pi = op(d, 1, {0, 0}, {{1, 0}, {0, 1}}) - op(d, 1, {0, 0}, {{0, 1}, {1, 0}});
    CHECK(hochschild_d(pi).is_zero());
}

TEST_CASE("hochschild differential agrees with the pointwise coboundary and squares to zero")
{
    Sampler s(23);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = s.uniform(1, 2);
        const int n = s.uniform(1, 3);
        auto D = homogeneous_sample(s, d, n, 2, 2);
        auto a = random_args(s, d, static_cast<std::size_t>(n + 1));
        CHECK(evaluate(hochschild_d(D), a) == hochschild_pointwise(D, static_cast<std::size_t>(n), a));
        auto mixed = s.polydiff(d, 2, 0, 3, 2, 3);
        CHECK(hochschild_d(hochschild_d(mixed)).is_zero());
    }
}

TEST_CASE("gerstenhaber bracket examples")
{
    const int d = 2;
    auto d1 = op(d, 1, {0, 0}, {{1, 0}}), d2 = op(d, 1, {0, 0}, {{0, 1}});
    CHECK(g_bracket(d1, d2).is_zero());
    CHECK(g_bracket(d1, op(d, 1, {1, 0}, {{1, 0}})) == d1);
    auto mu = PolyDiffOp::mu(d);
    CHECK(g_bracket(mu, mu).is_zero());
    CHECK(brace(mu, {mu}).is_zero());
    auto D = op(d, 3, {1, 1}, {{1, 0}});
    CHECK(g_bracket(D, D).is_zero());
}

TEST_CASE("bracket on 1-words is the operator commutator")
{
    Sampler s(41);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = s.uniform(1, 2);
        auto x = homogeneous_sample(s, d, 1, 2, 2);
        auto y = homogeneous_sample(s, d, 1, 2, 2);
        std::vector<Polynomial> f{s.polynomial(d, 4, 3)};
        std::vector<Polynomial> yf{evaluate(y, f)}, xf{evaluate(x, f)};
        CHECK(evaluate(g_bracket(x, y), f) == evaluate(x, yf) - evaluate(y, xf));
    }
}

TEST_CASE("brace relation on random triples")
{
    Sampler s(99);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2;
        const std::size_t q = static_cast<std::size_t>(s.uniform(1, 2)), r = static_cast<std::size_t>(s.uniform(0, 2));
        auto a = homogeneous_sample(s, d, s.uniform(static_cast<int>(q), 3), 2, 1);
        std::vector<PolyDiffOp> b, c;
        for (std::size_t k = 0; k < q; ++k)
            b.push_back(homogeneous_sample(s, d, s.uniform(0, 2), 2, 1));
        for (std::size_t k = 0; k < r; ++k)
            c.push_back(homogeneous_sample(s, d, s.uniform(0, 2), 2, 1));
        PolyDiffOp lhs = brace(brace(a, std::span<const PolyDiffOp>(b)), std::span<const PolyDiffOp>(c));
        CHECK(lhs == brace_relation_rhs(a, b, c));
    }
}

TEST_CASE("cup product matches Q^2 and is associative")
{
    const int d = 2;
    auto d1 = op(d, 1, {0, 0}, {{1, 0}}), d2 = op(d, 1, {0, 0}, {{0, 1}});
    CHECK(cup(d1, d2) == op(d, 1, {0, 0}, {{1, 0}, {0, 1}}));
    CHECK(cup(d1, PolyDiffOp(d)).is_zero());
    auto f = PolyDiffOp::function(d, monomial({1, 0})), g = PolyDiffOp::function(d, monomial({0, 1}));
    CHECK(cup(f, g) == PolyDiffOp::function(d, monomial({1, 1})));
    Sampler s(5);
    for (int trial = 0; trial < 30; ++trial) {
        auto x = homogeneous_sample(s, d, s.uniform(0, 2), 2, 1);
        auto y = homogeneous_sample(s, d, s.uniform(0, 2), 2, 1);
        std::vector<PolyDiffOp> xy{x, y};
        CHECK(q_component(xy) == cup(x, y));
        CHECK(brace(PolyDiffOp::mu(d), {x, y}) == cup(x, y));
    }
}

TEST_CASE("inner structure: Q^1 is hochschild_d and Q^n vanishes for n > 2")
{
    const int d = 2;
    Sampler s(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = homogeneous_sample(s, d, s.uniform(0, 2), 2, 1);
        std::vector<PolyDiffOp> one{x};
        CHECK(q_component(one) == hochschild_d(x));
        for (std::size_t n : {3u, 4u}) {
            std::vector<PolyDiffOp> letters;
            for (std::size_t k = 0; k < n; ++k)
                letters.push_back(homogeneous_sample(s, d, s.uniform(0, 2), 1, 1));
            CHECK(q_component(letters).is_zero());
        }
    }
}

TEST_CASE("bar product: unit, low-arity expansion, associativity, coproduct compatibility")
{
    const int d = 2;
    auto mu = PolyDiffOp::mu(d);
    auto wmu = BarElement::word(d, {mu});
    CHECK(m_product(wmu, wmu).letter_part().is_zero());

    Sampler s(12);
    auto unit = BarElement::unit(d);
    for (int trial = 0; trial < 15; ++trial) {
        auto a = homogeneous_sample(s, d, s.uniform(0, 2), 1, 1);
        auto b = homogeneous_sample(s, d, s.uniform(0, 2), 1, 1);
        auto wa = BarElement::word(d, {a}), wb = BarElement::word(d, {b});
        CHECK(m_product(unit, wa) == wa);
        CHECK(m_product(wa, unit) == wa);
        BarElement expect = BarElement::word(d, {a, b}) + BarElement::word(d, {brace(a, {b})}) +
                            Rational(minus_one_pow(static_cast<long>(*a.degree()) * *b.degree())) *
                                BarElement::word(d, {b, a});
        CHECK(m_product(wa, wb) == expect);
    }
    for (int trial = 0; trial < 10; ++trial) {
        auto rnd_word = [&] {
            std::vector<PolyDiffOp> letters;
            int len = s.uniform(1, 2);
            for (int k = 0; k < len; ++k)
                letters.push_back(homogeneous_sample(s, d, s.uniform(0, 2), 1, 1));
            return BarElement::word(d, letters);
        };
        auto x = rnd_word(), y = rnd_word(), z = rnd_word();
        CHECK(m_product(m_product(x, y), z) == m_product(x, m_product(y, z)));
        CHECK(deconcat(m_product(x, y)) == tensor_product_m(deconcat(x), deconcat(y), d));
    }
}
