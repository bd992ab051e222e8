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

#ifndef HOCA_GRAPHS_HPP
#define HOCA_GRAPHS_HPP

#include "hoca/polydiff.hpp"
#include "hoca/polyvector.hpp"

#include "json.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace hoca {

// Edge target: a vertex of the first type (type 1) or a sink (type 2), 0-based index.
struct GraphTarget {
    int type = 2;
    int index = 0;
    auto operator<=>(const GraphTarget&) const = default;
};

/* Admissible graph: t vertices of the first type, vertex v with the ordered
 * out-edge list out[v]; n sinks without outgoing edges. */
struct AdmissibleGraph {
    int t = 0;
    int n = 0;
    std::vector<std::vector<GraphTarget>> out;

    void validate() const; // ArgumentError on a bad target or size
    std::vector<int> out_degrees() const;
    int edge_count() const;
    bool has_loops() const;
    std::vector<int> sink_in_degrees() const;
    auto operator<=>(const AdmissibleGraph&) const = default;
};

nlohmann::json graph_json(const AdmissibleGraph& g); // targets "T1:k" / "T2:k", 1-based
AdmissibleGraph graph_from(const nlohmann::json& j);

/* All target assignments, in lexicographic order of the flattened target list
 * (type-1 vertices before sinks). Count: prod_v (t + n - [loops off])^{n_v}.
 * ResourceError above max_graphs. */
std::vector<AdmissibleGraph> enumerate_graphs(std::span<const int> out_degrees, int n, bool allow_loops,
                                              std::size_t max_graphs = 200000);
std::size_t graph_count(std::span<const int> out_degrees, int n, bool allow_loops);

/* Component a^{s_1..s_k} of a poly-vector for an ordered index tuple: the
 * coefficient of d_{sorted s} times the sign of the sorting permutation, zero
 * on a repeated index. No 1/k! factor, so d1^d2 yields a^{12} = 1, a^{21} = -1. */
Polynomial tensor_component(const PolyVector& a, const std::vector<int>& s);

/* U_Gamma(a_1..a_t)(f_1..f_n): sum over labelings of the edges by coordinate
 * indices of prod_v d_{In(v)} a_v^{Out(v)} * prod_j d_{In(j)} f_j. Inputs must
 * have wedge arity n_v (zero allowed). The parallel flag splits the labeling
 * range across OpenMP threads; the result does not depend on it. */
Polynomial evaluate_graph(const AdmissibleGraph& g, std::span<const PolyVector> inputs,
                          std::span<const Polynomial> functions, bool parallel = true);
PolyDiffOp evaluate_graph_op(const AdmissibleGraph& g, std::span<const PolyVector> inputs, bool parallel = true);

enum class Invariance { affine, linear_only };

/* Span comparison on the block of multilinear poly-differential operators
 * T^{n_1} x .. x T^{n_t} -> D^n whose j-th slot has order <= sink_orders[j]:
 * operators c(t) prod_v d^{alpha_v} a_v^{S_v} prod_j d^{beta_j} f_j with deg c <= 1.
 * The invariant space is the joint kernel of the equivariance defects for
 * t_k d_l (and d_k in the affine case), tested on all monomial inputs of
 * sufficient degree; it is compared with the span of U_Gamma over graphs whose
 * sink in-degrees respect the orders. */
struct SpanReport {
    int d = 0;
    std::vector<int> out_degrees;
    int n = 0;
    std::vector<int> sink_orders;
    Invariance invariance = Invariance::affine;
    bool allow_loops = true;
    std::size_t unknowns = 0;
    std::size_t graphs = 0;
    std::size_t rank_graphs = 0;
    std::size_t rank_invariants = 0;
    bool graphs_invariant = false; // every U_Gamma lies in the invariant space
    bool equal = false;
};
SpanReport invariant_span_compare(int d, std::span<const int> out_degrees, int n, std::span<const int> sink_orders,
                                  Invariance invariance = Invariance::affine, bool allow_loops = true);
nlohmann::json span_report_json(const SpanReport& r);

} // namespace hoca

#endif
