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
#include "hoca/polyvector.hpp"
#include "hoca/sampling.hpp"
#include "hoca/sign.hpp"

using namespace hoca;

namespace {

PolyVector pv(int d, Rational c, MultiIndex m, std::vector<int> w) { return PolyVector::term(d, c, m, w); }

// {f,g} = sum_{i<j} pi^{ij} (d_i f d_j g - d_j f d_i g), straight from the definition.
Polynomial poisson_bracket(const PolyVector& pi, const Polynomial& f, const Polynomial& g)
{
    Polynomial out;
    const int d = pi.dim();
    for (const auto& [k, c] : pi.terms()) {
        MultiIndex ei = unit_index(d, k.wedge[0]), ej = unit_index(d, k.wedge[1]);
        Polynomial coef = monomial(k.mono, c);
        out += coef * derivative(f, ei) * derivative(g, ej);
        out -= coef * derivative(f, ej) * derivative(g, ei);
    }
    return out;
}

bool jacobiator_vanishes(const PolyVector& pi)
{
    const int d = pi.dim();
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
            for (int c = b + 1; c < d; ++c) {
                Polynomial x = monomial(unit_index(d, a)), y = monomial(unit_index(d, b)), z = monomial(unit_index(d, c));
                Polynomial j = poisson_bracket(pi, x, poisson_bracket(pi, y, z));
                j += poisson_bracket(pi, y, poisson_bracket(pi, z, x));
                j += poisson_bracket(pi, z, poisson_bracket(pi, x, y));
                if (!j.is_zero())
                    return false;
            }
    return true;
}

} // namespace

TEST_CASE("wedge examples")
{
    const int d = 2;
    auto d1 = pv(d, 1, {0, 0}, {0}), d2 = pv(d, 1, {0, 0}, {1});
    CHECK(wedge(d1, d1).is_zero());
    CHECK(wedge(d1, d2) == pv(d, 1, {0, 0}, {0, 1}));
    CHECK(wedge(d2, d1) == pv(d, -1, {0, 0}, {0, 1}));
    CHECK(wedge(pv(d, 1, {1, 0}, {0}), d2) == pv(d, 1, {1, 0}, {0, 1}));
    CHECK_THROWS_AS(wedge(d1, PolyVector(3)), ArgumentError);
    CHECK(pv(d, 1, {0, 0}, {1, 0}) == pv(d, -1, {0, 0}, {0, 1}));
    CHECK_THROWS_AS(pv(d, 1, {0, 0}, {2}), ArgumentError);
}

TEST_CASE("schouten examples")
{
    const int d = 2;
    auto d1 = pv(d, 1, {0, 0}, {0});
    CHECK(schouten(d1, pv(d, 1, {1, 0}, {0})) == d1);
    CHECK(schouten(d1, d1).is_zero());
    // contraction by hand: [d1^d2, t1] = -(d_{t1} t1) d2 in this convention
    CHECK(schouten(pv(d, 1, {0, 0}, {0, 1}), pv(d, 1, {1, 0}, {})) == pv(d, -1, {0, 0}, {1}));
    CHECK(schouten(pv(d, 1, {1, 0}, {}), pv(d, 1, {0, 0}, {0, 1})) == pv(d, -1, {0, 0}, {1}));
    CHECK(schouten(pv(d, 1, {1, 0}, {}), pv(d, 1, {0, 1}, {})).is_zero());
}

TEST_CASE("poisson_check examples and Jacobiator oracle")
{
    CHECK(poisson_check(pv(2, 1, {0, 0}, {0, 1})));
    CHECK(poisson_check(PolyVector(2)));
    CHECK_THROWS_AS(poisson_check(pv(2, 1, {0, 0}, {0})), ArgumentError);
    CHECK_THROWS_AS(poisson_check(pv(2, 1, {0, 0}, {0}) + pv(2, 1, {0, 0}, {0, 1})), ArgumentError);

    PolyVector pi = pv(3, 1, {1, 0, 0}, {0, 1}) + pv(3, 1, {0, 0, 0}, {1, 2});
    CHECK(poisson_check(pi) == jacobiator_vanishes(pi));
    CHECK(poisson_check(pi));
    PolyVector rot = pv(3, 1, {0, 0, 1}, {0, 1}) + pv(3, 1, {1, 0, 0}, {1, 2}) + pv(3, 1, {0, 1, 0}, {2, 0});
    CHECK(poisson_check(rot));
    PolyVector bad = pv(3, 1, {0, 0, 1}, {0, 1}) + pv(3, 1, {0, 0, 1}, {1, 2});
    CHECK(poisson_check(bad) == jacobiator_vanishes(bad));

    Sampler s(5);
    int agree = 0;
    for (int trial = 0; trial < 40; ++trial) {
        PolyVector p = s.homogeneous_polyvector(3, 2, 2, s.uniform(1, 3));
        if (p.is_zero())
            continue;
        CHECK(poisson_check(p) == jacobiator_vanishes(p));
        ++agree;
    }
    CHECK(agree > 30);
}

TEST_CASE("Gerstenhaber identities on random samples")
{
    Sampler s(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = s.uniform(1, 3);
        auto a = s.homogeneous_polyvector(d, 3, s.uniform(0, d), s.uniform(1, 2));
        auto b = s.homogeneous_polyvector(d, 3, s.uniform(0, d), s.uniform(1, 2));
        auto c = s.homogeneous_polyvector(d, 3, s.uniform(0, d), s.uniform(1, 2));
        if (a.is_zero() || b.is_zero() || c.is_zero())
            continue;
        const long da = *a.degree(), db = *b.degree();
        CHECK(schouten(a, b) == Rational(-minus_one_pow(da * db)) * schouten(b, a));
        CHECK(schouten(a, schouten(b, c)) ==
              schouten(schouten(a, b), c) + Rational(minus_one_pow(da * db)) * schouten(b, schouten(a, c)));
        CHECK(schouten(a, wedge(b, c)) ==
              wedge(schouten(a, b), c) + Rational(minus_one_pow(da * (db + 1))) * wedge(b, schouten(a, c)));
        // wedge is graded commutative for the unshifted degree |x| + 1
        CHECK(wedge(a, b) == Rational(minus_one_pow((da + 1) * (db + 1))) * wedge(b, a));
    }
}

TEST_CASE("vector fields: schouten is the commutator of derivations")
{
    Sampler s(9);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = s.uniform(1, 3);
        auto x = s.homogeneous_polyvector(d, 3, 1, 2);
        auto y = s.homogeneous_polyvector(d, 3, 1, 2);
        auto f = s.polynomial(d, 4, 3);
        Polynomial lhs = apply_vector_field(schouten(x, y), f);
        Polynomial rhs = apply_vector_field(x, apply_vector_field(y, f));
        rhs -= apply_vector_field(y, apply_vector_field(x, f));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("coordinate changes act by automorphisms")
{
    Sampler s(31);
    RationalMatrix g = to_rational({{1, 2}, {1, 1}});
    std::vector<Rational> shift{Rational(1, 2), Rational(-2)};
    for (int trial = 0; trial < 20; ++trial) {
        auto a = s.polyvector(2, 2, 0, 2, 2);
        auto b = s.polyvector(2, 2, 0, 2, 2);
        CHECK(linear_change(schouten(a, b), g) == schouten(linear_change(a, g), linear_change(b, g)));
        CHECK(translate(schouten(a, b), shift) == schouten(translate(a, shift), translate(b, shift)));
        CHECK(linear_change(wedge(a, b), g) == wedge(linear_change(a, g), linear_change(b, g)));
    }
}
