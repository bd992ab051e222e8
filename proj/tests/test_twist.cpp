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

#include "hoca/sampling.hpp"
#include "hoca/twist.hpp"

using namespace hoca;

namespace {

PolyDiffOp word2(int d, const Rational& c, MultiIndex a, MultiIndex b)
{
    return PolyDiffOp::term(d, c, zero_index(d), {a, b});
}

PolyDiffOp poisson_word(int d = 2)
{
    return word2(d, 1, {1, 0}, {0, 1}) + word2(d, -1, {0, 1}, {1, 0});
}

SeriesOp hbar(const PolyDiffOp& x, int K, int power = 1)
{
    SeriesOp s = zero_series(x.dim(), K);
    s[power] = x;
    return s;
}

SeriesVec hbar_vec(const PolyVector& x, int K, int power = 1)
{
    SeriesVec s = zero_series_vec(x.dim(), K);
    s[power] = x;
    return s;
}

using PolySeries = std::vector<Polynomial>;

// f * g = sum_k hbar^k B_k(f, g) with B_0 = multiplication.
PolySeries star(const SeriesOp& w, const PolySeries& f, const PolySeries& g)
{
    const int K = w.order();
    PolySeries out(static_cast<std::size_t>(K + 1));
    for (int a = 0; a <= K; ++a)
        for (int b = 0; a + b <= K; ++b) {
            const auto& fa = f[static_cast<std::size_t>(a)];
            const auto& gb = g[static_cast<std::size_t>(b)];
            out[static_cast<std::size_t>(a + b)] += fa * gb;
            for (int k = 1; a + b + k <= K; ++k) {
                Polynomial args[2] = {fa, gb};
                out[static_cast<std::size_t>(a + b + k)] += evaluate(w[k], args);
            }
        }
    return out;
}

SeriesOp random_series(Sampler& s, int d, int K, int slots)
{
    SeriesOp g = zero_series(d, K);
    for (int k = 0; k <= K; ++k)
        g[k] = s.polydiff(d, 1, slots, slots, 2, 2);
    return g;
}

} // namespace

TEST_CASE("MC element validation")
{
    SeriesOp w = zero_series(2, 2);
    w[0] = poisson_word();
    CHECK_THROWS_AS(mc_check_b(w), ArgumentError);
    SeriesOp v = hbar(PolyDiffOp::term(2, 1, {0, 0}, {{1, 0}}), 2);
    CHECK_THROWS_AS(mc_check_b(v), ArgumentError);
    SeriesVec p = hbar_vec(PolyVector::term(2, 1, {0, 0}, {0}), 2);
    CHECK_THROWS_AS(mc_check_l(schouten_family(2), p), ArgumentError);
}

TEST_CASE("B-infinity Maurer-Cartan examples")
{
    CHECK(mc_check_b(zero_series(2, 3)));
    CHECK(mc_check_b(hbar(poisson_word(), 1)));
    CHECK_FALSE(mc_check_b(hbar(poisson_word(), 2)));
    for (int K = 1; K <= 4; ++K)
        CHECK(mc_check_b(moyal_series(poisson_word(), K)));
    // a non-standard constant bivector in three variables
    PolyDiffOp pi3 = word2(3, 2, {1, 0, 0}, {0, 0, 1}) + word2(3, -2, {0, 0, 1}, {1, 0, 0}) +
                     word2(3, Rational(1, 3), {0, 1, 0}, {0, 0, 1}) + word2(3, Rational(-1, 3), {0, 0, 1}, {0, 1, 0});
    CHECK(mc_check_b(moyal_series(pi3, 3)));
}

TEST_CASE("Moyal series")
{
    auto w = moyal_series(poisson_word(), 2);
    CHECK(w[1] == poisson_word());
    PolyDiffOp second = word2(2, Rational(1, 2), {2, 0}, {0, 2}) + word2(2, -1, {1, 1}, {1, 1}) +
                        word2(2, Rational(1, 2), {0, 2}, {2, 0});
    CHECK(w[2] == second);
    CHECK_THROWS_AS(moyal_series(PolyDiffOp::term(2, 1, {1, 0}, {{1, 0}, {0, 1}}), 2), ArgumentError);
    CHECK_THROWS_AS(moyal_series(word2(2, 1, {1, 0}, {0, 1}), 2), ArgumentError);

    // associativity oracle: (f*g)*h = f*(g*h) on polynomials
    Sampler s(5);
    auto m = moyal_series(poisson_word(), 3);
    for (int trial = 0; trial < 10; ++trial) {
        PolySeries f, g, h;
        for (int k = 0; k <= 3; ++k) {
            f.push_back(s.polynomial(2, 4, 3));
            g.push_back(s.polynomial(2, 4, 3));
            h.push_back(s.polynomial(2, 4, 3));
        }
        CHECK(star(m, star(m, f, g), h) == star(m, f, star(m, g, h)));
    }
}

TEST_CASE("L-infinity MC equation on D_poly agrees with the B-infinity one")
{
    auto q = dg_lie_operations(2);
    CHECK(mc_check_l(q, zero_series(2, 2)));
    auto m = moyal_series(poisson_word(), 3);
    CHECK(mc_check_l(q, m));
    CHECK(mc_residual_l(q, m, PolyDiffOp(2)) == mc_residual_b(m));
    SeriesOp bad = m;
    bad[2] += PolyDiffOp::term(2, 1, {1, 0}, {{1, 0}, {0, 1}});
    CHECK_FALSE(mc_check_l(q, bad));
    CHECK_FALSE(mc_check_b(bad));
    Sampler s(8);
    for (int trial = 0; trial < 5; ++trial) {
        SeriesOp w = random_series(s, 2, 2, 2);
        w[0] = PolyDiffOp(2);
        CHECK(mc_residual_l(q, w, PolyDiffOp(2)) == mc_residual_b(w));
    }
}

TEST_CASE("B-infinity twisting")
{
    Sampler s(13);
    auto m = moyal_series(poisson_word(), 2);
    TwistedB zero = twist_b(zero_series(2, 2));
    TwistedB tw = twist_b(m);
    CHECK_THROWS_AS(twist_b(hbar(poisson_word(), 2)), McFailure);
    for (int trial = 0; trial < 10; ++trial) {
        SeriesOp g = random_series(s, 2, 2, s.uniform(0, 2));
        SeriesOp dg = zero_series(2, 2), bracket = cauchy(m, g, PolyDiffOp(2), g_bracket);
        for (int k = 0; k <= 2; ++k)
            dg[k] = hochschild_d(g[k]);
        CHECK(zero.differential(g) == dg);
        CHECK(tw.differential(g) == dg + bracket);
        CHECK(tw.differential(g) - bracket == dg);
        CHECK(tw.differential(tw.differential(g)).is_zero());
        SeriesOp h = random_series(s, 2, 2, 1);
        std::vector<SeriesOp> two{g, h};
        SeriesOp expect = zero.q(two);
        std::vector<SeriesOp> wrapped{g, h};
        CHECK(tw.q(two) == expect + tw.m(m, wrapped));
        CHECK(tw.m(g, std::vector<SeriesOp>{}) == g);
    }
}

TEST_CASE("L-infinity twisting")
{
    Sampler s(17);
    auto q = dg_lie_operations(2);
    auto m = moyal_series(poisson_word(), 2);
    auto zero = twist_l(q, zero_series(2, 2), PolyDiffOp(2));
    auto tw = twist_l(q, m, PolyDiffOp(2));
    auto lq = lift(q, 2, PolyDiffOp(2));
    for (int trial = 0; trial < 8; ++trial) {
        SeriesOp g = random_series(s, 2, 2, s.uniform(1, 2)), h = random_series(s, 2, 2, 1);
        std::vector<SeriesOp> one{g}, two{g, h};
        CHECK(zero.apply(one) == lq.apply(one));
        SeriesOp dg = zero_series(2, 2);
        for (int k = 0; k <= 2; ++k)
            dg[k] = hochschild_d(g[k]);
        CHECK(tw.apply(one) == dg + cauchy(m, g, PolyDiffOp(2), g_bracket));
        CHECK(tw.apply(two) == lq.apply(two));
        std::vector<SeriesOp> dd{tw.apply(one)};
        CHECK(tw.apply(dd).is_zero());
    }

    // Poisson bivectors twist T_poly into the Lichnerowicz complex
    auto sf = schouten_family(3);
    PolyVector lin = PolyVector::term(3, 1, {0, 0, 1}, {0, 1});           // t3 d1^d2
    PolyVector nonp = PolyVector::term(3, 1, {0, 1, 0}, {0, 1}) + PolyVector::term(3, 1, {1, 0, 0}, {1, 2});
    CHECK(poisson_check(lin));
    CHECK_FALSE(poisson_check(nonp));
    CHECK(mc_check_l(sf, hbar_vec(lin, 2)));
    CHECK_FALSE(mc_check_l(sf, hbar_vec(nonp, 2)));
    auto lich = twist_l(sf, hbar_vec(lin, 2), PolyVector(3));
    for (int trial = 0; trial < 8; ++trial) {
        PolyVector g = s.homogeneous_polyvector(3, 2, s.uniform(0, 2), 2);
        std::vector<SeriesVec> one{hbar_vec(g, 2, 0)};
        SeriesVec dg = lich.apply(one);
        CHECK(dg[0].is_zero());
        CHECK(dg[1] == schouten(lin, g));
        CHECK(dg[2].is_zero());
        std::vector<SeriesVec> again{dg};
        CHECK(lich.apply(again).is_zero());
    }
}

TEST_CASE("morphism twisting: trivial morphisms")
{
    MorphismFamily<PolyDiffOp, PolyDiffOp> id{1, [](std::span<const PolyDiffOp> x) { return x[0]; }};
    auto m = moyal_series(poisson_word(), 3);
    auto t = twist_morphism(id, m, PolyDiffOp(2));
    CHECK(t.omega_prime == m);
    Sampler s(3);
    SeriesOp g = random_series(s, 2, 3, 2);
    std::vector<SeriesOp> one{g};
    CHECK(t.psi.apply(one) == g);

    MorphismFamily<PolyVector, PolyDiffOp> strict{1, [](std::span<const PolyVector> x) { return hkr_i(x[0]); }};
    PolyVector pi = PolyVector::term(2, 1, {1, 0}, {0, 1});
    auto ts = twist_morphism(strict, hbar_vec(pi, 2), PolyDiffOp(2));
    CHECK(ts.omega_prime == hbar(hkr_i(pi), 2));
}

TEST_CASE("morphism twisting through the transfer: a star product from a Poisson bivector")
{
    TransferContext ctx(2, 4);
    auto psi = transfer_morphism(ctx);
    auto q1 = transferred_family(ctx);
    auto q2 = dg_lie_operations(2);
    PolyVector pi = PolyVector::term(2, 1, {1, 0}, {0, 1}); // t1 d1^d2
    const int K = 3;
    SeriesVec w = hbar_vec(pi, K);
    CHECK(mc_check_l(q1, w));
    auto t = twist_morphism(psi, w, PolyDiffOp(2));
    // brute-force series expansion through the set-partition oracle
    std::vector<PolyVector> p1{pi}, p2{pi, pi}, p3{pi, pi, pi};
    CHECK(t.omega_prime[1] == hkr_i(pi));
    CHECK(t.omega_prime[2] == ctx.psi_oracle(p2) * Rational(1, 2));
    CHECK(t.omega_prime[3] == ctx.psi_oracle(p3) * Rational(1, 6));
    CHECK(mc_check_l(q2, t.omega_prime));
    CHECK(mc_check_b(t.omega_prime));

    // the twisted morphism intertwines the twisted structures
    const int K2 = 2;
    SeriesVec w2 = hbar_vec(pi, K2);
    auto t2 = twist_morphism(psi, w2, PolyDiffOp(2));
    auto qs = twist_l(q1, w2, PolyVector(2));
    auto qt = twist_l(q2, t2.omega_prime, PolyDiffOp(2));
    auto par = series_parity<PolyVector>([](const PolyVector& x) { return shifted_parity(x); });
    Sampler s(9);
    for (int trial = 0; trial < 6; ++trial) {
        PolyVector g = s.homogeneous_polyvector(2, 1, s.uniform(0, 2), 2);
        std::vector<SeriesVec> in{hbar_vec(g, K2, 0)};
        CHECK(morphism_defect(qs, qt, t2.psi, std::span<const SeriesVec>(in), par, zero_series(2, K2)).is_zero());
    }
    // arity two at first order
    SeriesVec w1 = hbar_vec(pi, 1);
    auto t1 = twist_morphism(psi, w1, PolyDiffOp(2));
    auto qs1 = twist_l(q1, w1, PolyVector(2));
    auto qt1 = twist_l(q2, t1.omega_prime, PolyDiffOp(2));
    for (int trial = 0; trial < 4; ++trial) {
        PolyVector a = s.homogeneous_polyvector(2, 1, s.uniform(0, 2), 1);
        PolyVector b = s.homogeneous_polyvector(2, 1, s.uniform(0, 2), 1);
        std::vector<SeriesVec> in{hbar_vec(a, 1, 0), hbar_vec(b, 1, 0)};
        CHECK(morphism_defect(qs1, qt1, t1.psi, std::span<const SeriesVec>(in), par, zero_series(2, 1)).is_zero());
    }
}

TEST_CASE("group-like exponential")
{
    CHECK(grouplike_check(zero_series(2, 2)));
    for (int K = 1; K <= 3; ++K)
        CHECK(grouplike_check(moyal_series(poisson_word(), K)));
    SeriesOp odd = hbar(PolyDiffOp::term(2, 1, {0, 0}, {{1, 0}}) + PolyDiffOp::term(2, 1, {1, 0}, {{0, 1}}), 2);
    CHECK_FALSE(grouplike_check(odd));
    SeriesOp w = zero_series(2, 2);
    w[0] = poisson_word();
    CHECK_THROWS_AS(grouplike_check(w), ArgumentError);
}
