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
#include "hoca/graphs.hpp"
#include "hoca/sampling.hpp"

#include <chrono>
#include <set>

using namespace hoca;

namespace {

AdmissibleGraph graph(int t, int n, std::vector<std::vector<GraphTarget>> out)
{
    AdmissibleGraph g{t, n, std::move(out)};
    g.validate();
    return g;
}

constexpr GraphTarget sink(int j) { return {2, j}; }
constexpr GraphTarget vertex(int v) { return {1, v}; }

RationalMatrix random_invertible(Sampler& s, int d)
{
    for (;;) {
        std::vector<std::vector<int>> m(static_cast<std::size_t>(d), std::vector<int>(static_cast<std::size_t>(d)));
        for (auto& row : m)
            for (auto& x : row)
                x = s.uniform(-2, 2);
        auto r = to_rational(m);
        try {
            invert(r);
            return r;
        } catch (const ArgumentError&) {
        }
    }
}

} // namespace

TEST_CASE("enumeration counts")
{
    const std::vector<int> two{2};
    CHECK(enumerate_graphs(two, 2, false).size() == 4);
    CHECK(enumerate_graphs(two, 2, true).size() == 9);
    CHECK(enumerate_graphs(std::vector<int>{}, 1, false).size() == 1);
    auto iso = enumerate_graphs(std::vector<int>{0}, 0, false);
    REQUIRE(iso.size() == 1);
    CHECK(iso[0].t == 1);
    CHECK(iso[0].edge_count() == 0);
    // both edges to the two sinks is among them
    auto g4 = enumerate_graphs(two, 2, false);
    CHECK(std::find(g4.begin(), g4.end(), graph(1, 2, {{sink(0), sink(1)}})) != g4.end());

    for (bool loops : {false, true})
        for (const auto& degs : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 2, 0}, {2, 2}})
            for (int n : {0, 1, 2}) {
                auto gs = enumerate_graphs(degs, n, loops);
                CHECK(gs.size() == graph_count(degs, n, loops));
                std::set<AdmissibleGraph> unique(gs.begin(), gs.end());
                CHECK(unique.size() == gs.size());
                for (const auto& g : gs) {
                    CHECK(g.out_degrees() == degs);
                    if (!loops)
                        CHECK_FALSE(g.has_loops());
                }
            }
    CHECK_THROWS_AS(enumerate_graphs(std::vector<int>{3, 3, 3}, 3, true, 1000), ResourceError);
    CHECK_THROWS_AS(enumerate_graphs(std::vector<int>{-1}, 1, true), ArgumentError);
}

TEST_CASE("graph JSON")
{
    auto g = graph(2, 1, {{vertex(1), sink(0)}, {sink(0)}});
    auto j = graph_json(g);
    CHECK(j["out"][0][0] == "T1:2");
    CHECK(j["out"][1][0] == "T2:1");
    CHECK(graph_from(j) == g);
    CHECK_THROWS_AS(graph_from(nlohmann::json::parse(R"({"t":1,"n":1,"out":[["T2:2"]]})")), ArgumentError);
    CHECK_THROWS_AS(graph_from(nlohmann::json::parse(R"({"t":1,"n":1,"out":[["X2:1"]]})")), ArgumentError);
    CHECK_THROWS_AS(graph_from(nlohmann::json::parse(R"({"t":1,"n":1})")), ArgumentError);
}

TEST_CASE("tensor components")
{
    auto a = PolyVector::term(3, Rational(2), {1, 0, 0}, {0, 2});
    CHECK(tensor_component(a, {0, 2}) == monomial({1, 0, 0}, Rational(2)));
    CHECK(tensor_component(a, {2, 0}) == monomial({1, 0, 0}, Rational(-2)));
    CHECK(tensor_component(a, {0, 0}).is_zero());
    CHECK(tensor_component(a, {0, 1}).is_zero());
}

TEST_CASE("bivector to two sinks gives the antisymmetrized bidifferential operator")
{
    auto g = graph(1, 2, {{sink(0), sink(1)}});
    std::vector<PolyVector> in{PolyVector::term(2, Rational(1), {0, 0}, {0, 1})};
    PolyDiffOp expect(2);
    expect += PolyDiffOp::term(2, Rational(1), {0, 0}, {{1, 0}, {0, 1}});
    expect += PolyDiffOp::term(2, Rational(-1), {0, 0}, {{0, 1}, {1, 0}});
    CHECK(evaluate_graph_op(g, in) == expect);

    std::vector<Polynomial> fs{monomial({2, 1}), monomial({0, 3})};
    // d1(x^2 y) d2(y^3) - d2(x^2 y) d1(y^3) = 2xy * 3y^2
    CHECK(evaluate_graph(g, in, fs) == monomial({1, 3}, Rational(6)));
}

TEST_CASE("edge between vertices of the first type differentiates the target")
{
    // a = d1 points at b = t1^2 d2, b points at the sink: d1(t1^2) d2 f = 2 t1 d2 f
    auto g = graph(2, 1, {{vertex(1)}, {sink(0)}});
    std::vector<PolyVector> in{PolyVector::term(2, Rational(1), {0, 0}, {0}), PolyVector::term(2, Rational(1), {2, 0}, {1})};
    CHECK(evaluate_graph_op(g, in) == PolyDiffOp::term(2, Rational(2), {1, 0}, {{0, 1}}));

    // constant coefficients on the receiving vertex give zero
    std::vector<PolyVector> flat{PolyVector::term(2, Rational(1), {0, 0}, {0}), PolyVector::term(2, Rational(3), {0, 0}, {1})};
    CHECK(evaluate_graph_op(g, flat).is_zero());
}

TEST_CASE("loop gives the divergence")
{
    auto g = graph(1, 1, {{vertex(0)}});
    // X = t1 d1 + t1 t2 d2: div X = 1 + t1
    PolyVector x = PolyVector::term(2, Rational(1), {1, 0}, {0}) + PolyVector::term(2, Rational(1), {1, 1}, {1});
    std::vector<PolyVector> in{x};
    PolyDiffOp expect = PolyDiffOp::term(2, Rational(1), {0, 0}, {{0, 0}}) + PolyDiffOp::term(2, Rational(1), {1, 0}, {{0, 0}});
    CHECK(evaluate_graph_op(g, in) == expect);
}

TEST_CASE("arity checks and the empty graph")
{
    auto g = graph(1, 2, {{sink(0), sink(1)}});
    std::vector<PolyVector> vf{PolyVector::term(2, Rational(1), {0, 0}, {0})};
    CHECK_THROWS_AS(evaluate_graph_op(g, vf), ArgumentError);
    std::vector<PolyVector> none;
    CHECK_THROWS_AS(evaluate_graph_op(g, none), ArgumentError);
    std::vector<PolyVector> bi{PolyVector::term(2, Rational(1), {0, 0}, {0, 1})};
    std::vector<Polynomial> one{monomial({1, 0})};
    CHECK_THROWS_AS(evaluate_graph(g, bi, one), ArgumentError);

    auto empty = graph(0, 2, {});
    std::vector<Polynomial> fs{monomial({1, 0}), monomial({0, 2})};
    CHECK(evaluate_graph(empty, none, fs) == monomial({1, 2}));
}

TEST_CASE("operator form, parallel split and equivariance")
{
    Sampler s(7);
    const int d = 2;
    for (const auto& degs : std::vector<std::vector<int>>{{2}, {1, 1}, {2, 1}})
        for (int n : {1, 2}) {
            for (const auto& g : enumerate_graphs(degs, n, true)) {
                std::vector<PolyVector> in;
                for (int nv : degs)
                    in.push_back(s.homogeneous_polyvector(d, 2, nv, 2));
                std::vector<Polynomial> fs;
                for (int j = 0; j < n; ++j)
                    fs.push_back(s.polynomial(d, 3, 3));
                auto op = evaluate_graph_op(g, in, true);
                CHECK(op == evaluate_graph_op(g, in, false));
                CHECK(evaluate(op, fs) == evaluate_graph(g, in, fs));
                CHECK(evaluate_graph(g, in, fs, false) == evaluate_graph(g, in, fs, true));

                std::vector<Rational> shift{s.small_rational(), s.small_rational()};
                std::vector<PolyVector> moved;
                for (const auto& a : in)
                    moved.push_back(translate(a, shift));
                CHECK(evaluate_graph_op(g, moved) == translate(op, shift));

                auto m = random_invertible(s, d);
                std::vector<PolyVector> changed;
                for (const auto& a : in)
                    changed.push_back(linear_change(a, m));
                CHECK(evaluate_graph_op(g, changed) == linear_change(op, m));
            }
        }
}

TEST_CASE("span comparison on small blocks")
{
    const auto start = std::chrono::steady_clock::now();
    const std::vector<int> one{1}, two{2}, o1{1}, o11{1, 1};

    auto r1 = invariant_span_compare(2, one, 1, o1);
    CHECK(r1.equal);
    CHECK(r1.graphs_invariant);
    CHECK(r1.rank_invariants == 2); // X(f) and div(X) f
    CHECK(r1.rank_graphs == 2);

    auto r2 = invariant_span_compare(2, two, 2, o11);
    CHECK(r2.equal);
    CHECK(r2.graphs_invariant);
    CHECK(r2.rank_invariants == 3);

    auto lin = invariant_span_compare(2, one, 1, o1, Invariance::linear_only);
    CHECK(lin.graphs_invariant);
    CHECK(lin.rank_invariants > lin.rank_graphs);
    CHECK_FALSE(lin.equal);

    // without loops the divergence is missing
    auto nl = invariant_span_compare(2, one, 1, o1, Invariance::affine, false);
    CHECK(nl.rank_graphs == 1);
    CHECK_FALSE(nl.equal);

    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    MESSAGE("span comparison seconds: " << dt);
    CHECK(span_report_json(r2)["equal"] == true);
    CHECK_THROWS_AS(invariant_span_compare(2, one, 2, o1), ArgumentError);
}
