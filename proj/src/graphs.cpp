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

#include "hoca/graphs.hpp"

#include "hoca/errors.hpp"
#include "hoca/linalg.hpp"
#include "hoca/sign.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <string>

namespace hoca {

// ---- graph data ----

void AdmissibleGraph::validate() const
{
    if (t < 0 || n < 0 || static_cast<int>(out.size()) != t)
        throw ArgumentError("graph: out list must have one entry per vertex of the first type");
    for (const auto& edges : out)
        for (const auto& e : edges) {
            const int bound = e.type == 1 ? t : (e.type == 2 ? n : -1);
            if (bound < 0 || e.index < 0 || e.index >= bound)
                throw ArgumentError("graph: edge target out of range");
        }
}

std::vector<int> AdmissibleGraph::out_degrees() const
{
    std::vector<int> r;
    for (const auto& e : out)
        r.push_back(static_cast<int>(e.size()));
    return r;
}

int AdmissibleGraph::edge_count() const
{
    int c = 0;
    for (const auto& e : out)
        c += static_cast<int>(e.size());
    return c;
}

bool AdmissibleGraph::has_loops() const
{
    for (int v = 0; v < t; ++v)
        for (const auto& e : out[static_cast<std::size_t>(v)])
            if (e.type == 1 && e.index == v)
                return true;
    return false;
}

std::vector<int> AdmissibleGraph::sink_in_degrees() const
{
    std::vector<int> r(static_cast<std::size_t>(n), 0);
    for (const auto& edges : out)
        for (const auto& e : edges)
            if (e.type == 2)
                ++r[static_cast<std::size_t>(e.index)];
    return r;
}

nlohmann::json graph_json(const AdmissibleGraph& g)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& edges : g.out) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& e : edges)
            row.push_back("T" + std::to_string(e.type) + ":" + std::to_string(e.index + 1));
        out.push_back(row);
    }
    return {{"type", "graph"}, {"t", g.t}, {"n", g.n}, {"out", out}};
}

AdmissibleGraph graph_from(const nlohmann::json& j)
{
    AdmissibleGraph g;
    try {
        g.t = j.at("t").get<int>();
        g.n = j.at("n").get<int>();
        for (const auto& row : j.at("out")) {
            std::vector<GraphTarget> edges;
            for (const auto& s : row) {
                const std::string text = s.get<std::string>();
                if (text.size() < 4 || text[0] != 'T' || text[2] != ':' || (text[1] != '1' && text[1] != '2'))
                    throw ArgumentError("graph: bad target '" + text + "'");
                edges.push_back({text[1] - '0', std::stoi(text.substr(3)) - 1});
            }
            g.out.push_back(std::move(edges));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("graph: malformed JSON: ") + e.what());
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const ArgumentError*>(&e))
            throw;
        throw ArgumentError("graph: bad target index");
    }
    g.validate();
    return g;
}

// ---- enumeration ----

std::size_t graph_count(std::span<const int> out_degrees, int n, bool allow_loops)
{
    const int t = static_cast<int>(out_degrees.size());
    std::size_t count = 1;
    for (int nv : out_degrees) {
        if (nv < 0)
            throw ArgumentError("out-degrees must be non-negative");
        const std::size_t choices = static_cast<std::size_t>(t + n - (allow_loops ? 0 : 1));
        for (int k = 0; k < nv; ++k) {
            if (choices == 0)
                return 0;
            if (count > (std::size_t(1) << 40) / choices)
                return std::size_t(1) << 40; // saturate
            count *= choices;
        }
    }
    return count;
}

std::vector<AdmissibleGraph> enumerate_graphs(std::span<const int> out_degrees, int n, bool allow_loops,
                                              std::size_t max_graphs)
{
    if (n < 0)
        throw ArgumentError("sink count must be non-negative");
    const std::size_t total = graph_count(out_degrees, n, allow_loops);
    if (total > max_graphs)
        throw ResourceError("graph enumeration bound exceeded (" + std::to_string(total) + " graphs)");
    const int t = static_cast<int>(out_degrees.size());
    std::vector<AdmissibleGraph> result;
    AdmissibleGraph g;
    g.t = t;
    g.n = n;
    g.out.resize(static_cast<std::size_t>(t));
    std::vector<GraphTarget> all;
    for (int v = 0; v < t; ++v)
        all.push_back({1, v});
    for (int j = 0; j < n; ++j)
        all.push_back({2, j});
    std::function<void(int, int)> rec = [&](int v, int k) {
        if (v == t) {
            result.push_back(g);
            return;
        }
        if (k == out_degrees[static_cast<std::size_t>(v)]) {
            rec(v + 1, 0);
            return;
        }
        for (const auto& target : all) {
            if (!allow_loops && target.type == 1 && target.index == v)
                continue;
            g.out[static_cast<std::size_t>(v)].push_back(target);
            rec(v, k + 1);
            g.out[static_cast<std::size_t>(v)].pop_back();
        }
    };
    rec(0, 0);
    return result;
}

// ---- evaluation ----

Polynomial tensor_component(const PolyVector& a, const std::vector<int>& s)
{
    std::vector<int> perm(s.size()), ones(s.size(), 1);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int x, int y) { return s[static_cast<std::size_t>(x)] < s[static_cast<std::size_t>(y)]; });
    std::vector<int> sorted;
    for (int p : perm)
        sorted.push_back(s[static_cast<std::size_t>(p)]);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return {};
    Polynomial c = a.component(sorted);
    c *= Rational(koszul_sign(perm, ones));
    return c;
}

namespace {

struct Labeling {
    std::vector<std::vector<int>> out_labels; // per type-1 vertex, in edge order
    std::vector<MultiIndex> in_first;         // In(v) as a multi-index
    std::vector<MultiIndex> in_sink;          // In(j) as a multi-index
};

class LabelingRange {
public:
    LabelingRange(const AdmissibleGraph& g, int d) : g_(g), d_(d)
    {
        edges_ = g.edge_count();
        total_ = 1;
        for (int e = 0; e < edges_; ++e) {
            if (total_ > 50000000L / d)
                throw ResourceError("graph evaluation: too many edge labelings");
            total_ *= d;
        }
    }
    long size() const { return total_; }

    Labeling at(long idx) const
    {
        Labeling l;
        l.out_labels.resize(static_cast<std::size_t>(g_.t));
        l.in_first.assign(static_cast<std::size_t>(g_.t), zero_index(d_));
        l.in_sink.assign(static_cast<std::size_t>(g_.n), zero_index(d_));
        for (int v = 0; v < g_.t; ++v)
            for (const auto& e : g_.out[static_cast<std::size_t>(v)]) {
                const int s = static_cast<int>(idx % d_);
                idx /= d_;
                l.out_labels[static_cast<std::size_t>(v)].push_back(s);
                auto& in = e.type == 1 ? l.in_first[static_cast<std::size_t>(e.index)] : l.in_sink[static_cast<std::size_t>(e.index)];
                ++in[static_cast<std::size_t>(s)];
            }
        return l;
    }

private:
    const AdmissibleGraph& g_;
    int d_;
    int edges_ = 0;
    long total_ = 1;
};

void check_inputs(const AdmissibleGraph& g, std::span<const PolyVector> inputs, int d)
{
    g.validate();
    if (static_cast<int>(inputs.size()) != g.t)
        throw ArgumentError("graph evaluation: expected " + std::to_string(g.t) + " poly-vector inputs");
    for (int v = 0; v < g.t; ++v) {
        const auto& a = inputs[static_cast<std::size_t>(v)];
        if (a.dim() != d)
            throw ArgumentError("graph evaluation: dimension mismatch");
        for (const auto& [k, c] : a.terms())
            if (k.wedge.size() != g.out[static_cast<std::size_t>(v)].size())
                throw ArgumentError("graph evaluation: input " + std::to_string(v + 1) + " has the wrong wedge arity");
    }
}

// prod_v d_{In(v)} a_v^{Out(v)}
Polynomial vertex_product(const Labeling& l, std::span<const PolyVector> inputs, int d)
{
    Polynomial p = constant_polynomial(d, Rational(1));
    for (std::size_t v = 0; v < inputs.size() && !p.is_zero(); ++v)
        p = p * derivative(tensor_component(inputs[v], l.out_labels[v]), l.in_first[v]);
    return p;
}

template <class Acc, class F>
Acc accumulate_labelings(const LabelingRange& range, const Acc& zero, bool parallel, F&& term)
{
    const long total = range.size();
    Acc acc = zero;
    if (parallel) {
#pragma omp parallel
        {
            Acc local = zero;
#pragma omp for schedule(dynamic, 16)
            for (long idx = 0; idx < total; ++idx)
                local += term(range.at(idx));
#pragma omp critical(hoca_graph_sum)
            acc += local;
        }
    } else {
        for (long idx = 0; idx < total; ++idx)
            acc += term(range.at(idx));
    }
    return acc;
}

} // namespace

Polynomial evaluate_graph(const AdmissibleGraph& g, std::span<const PolyVector> inputs,
                          std::span<const Polynomial> functions, bool parallel)
{
    if (static_cast<int>(functions.size()) != g.n)
        throw ArgumentError("graph evaluation: expected " + std::to_string(g.n) + " functions");
    if (inputs.empty()) {
        // no vertices of the first type, hence no edges: the plain product
        g.validate();
        if (g.t != 0)
            throw ArgumentError("graph evaluation: expected " + std::to_string(g.t) + " poly-vector inputs");
        if (functions.empty())
            throw ArgumentError("graph evaluation: dimension unknown for the empty graph on no sinks");
        Polynomial p = functions[0];
        for (std::size_t j = 1; j < functions.size(); ++j)
            p = p * functions[j];
        return p;
    }
    const int d = inputs[0].dim();
    check_inputs(g, inputs, d);
    LabelingRange range(g, d);
    return accumulate_labelings(range, Polynomial{}, parallel, [&](const Labeling& l) {
        Polynomial p = vertex_product(l, inputs, d);
        for (int j = 0; j < g.n && !p.is_zero(); ++j)
            p = p * derivative(functions[static_cast<std::size_t>(j)], l.in_sink[static_cast<std::size_t>(j)]);
        return p;
    });
}

PolyDiffOp evaluate_graph_op(const AdmissibleGraph& g, std::span<const PolyVector> inputs, bool parallel)
{
    if (inputs.empty())
        throw ArgumentError("graph evaluation: the operator form needs at least one poly-vector input");
    const int d = inputs[0].dim();
    check_inputs(g, inputs, d);
    LabelingRange range(g, d);
    return accumulate_labelings(range, PolyDiffOp(d), parallel, [&](const Labeling& l) {
        PolyDiffOp out(d);
        Polynomial p = vertex_product(l, inputs, d);
        for (const auto& [mono, c] : p)
            out.add_term(PolyDiffKey{mono, l.in_sink}, c);
        return out;
    });
}

// ---- span comparison ----

namespace {

// c t^gamma prod_v d^{alpha_v} a_v^{S_v} prod_j d^{beta_j} f_j
struct OperatorKey {
    MultiIndex gamma;
    std::vector<std::vector<int>> sets;
    std::vector<MultiIndex> alpha;
    std::vector<MultiIndex> beta;
    auto operator<=>(const OperatorKey&) const = default;
};

struct VectorTerm {
    Rational c;
    MultiIndex mono;
    std::vector<int> wedge;
};
struct FunctionTerm {
    Rational c;
    MultiIndex mono;
};
using VectorSlot = std::vector<VectorTerm>;
using FunctionSlot = std::vector<FunctionTerm>;

std::vector<std::vector<int>> increasing_sets(int d, int k)
{
    std::vector<std::vector<int>> out;
    for (unsigned long mask = 0; mask < (1ul << d); ++mask)
        if (std::popcount(mask) == k) {
            std::vector<int> s;
            for (int i = 0; i < d; ++i)
                if (mask & (1ul << i))
                    s.push_back(i);
            out.push_back(s);
        }
    return out;
}

std::vector<MultiIndex> indices_up_to(int d, int max_total)
{
    std::vector<MultiIndex> out;
    for (int w = 0; w <= max_total; ++w)
        for (const auto& m : indices_of_total(d, w))
            out.push_back(m);
    return out;
}

// Cartesian product of per-slot choices.
template <class T>
std::vector<std::vector<T>> product(const std::vector<std::vector<T>>& choices)
{
    std::vector<std::vector<T>> out{{}};
    for (const auto& c : choices) {
        std::vector<std::vector<T>> next;
        for (const auto& prefix : out)
            for (const auto& x : c) {
                auto p = prefix;
                p.push_back(x);
                next.push_back(std::move(p));
            }
        out = std::move(next);
    }
    return out;
}

Polynomial apply_key(const OperatorKey& k, std::span<const VectorSlot> a, std::span<const FunctionSlot> f)
{
    std::vector<std::pair<Rational, MultiIndex>> acc{{Rational(1), k.gamma}};
    auto step = [&](const MultiIndex& mono, const MultiIndex& order, const Rational& c) -> std::optional<std::pair<Rational, MultiIndex>> {
        if (!dominates(mono, order))
            return std::nullopt;
        return std::make_pair(c * falling_factorial(mono, order), mono - order);
    };
    for (std::size_t v = 0; v < a.size() && !acc.empty(); ++v) {
        std::vector<std::pair<Rational, MultiIndex>> next;
        for (const auto& term : a[v]) {
            if (term.wedge != k.sets[v])
                continue;
            auto s = step(term.mono, k.alpha[v], term.c);
            if (!s)
                continue;
            for (const auto& [c, m] : acc)
                next.emplace_back(c * s->first, m + s->second);
        }
        acc = std::move(next);
    }
    for (std::size_t j = 0; j < f.size() && !acc.empty(); ++j) {
        std::vector<std::pair<Rational, MultiIndex>> next;
        for (const auto& term : f[j]) {
            auto s = step(term.mono, k.beta[j], term.c);
            if (!s)
                continue;
            for (const auto& [c, m] : acc)
                next.emplace_back(c * s->first, m + s->second);
        }
        acc = std::move(next);
    }
    Polynomial p;
    for (const auto& [c, m] : acc)
        p.add(m, c);
    return p;
}

VectorSlot to_slot(const PolyVector& a)
{
    VectorSlot s;
    for (const auto& [k, c] : a.terms())
        s.push_back({c, k.mono, k.wedge});
    return s;
}

FunctionSlot to_slot(const Polynomial& p)
{
    FunctionSlot s;
    for (const auto& [m, c] : p)
        s.push_back({c, m});
    return s;
}

} // namespace

SpanReport invariant_span_compare(int d, std::span<const int> out_degrees, int n, std::span<const int> sink_orders,
                                  Invariance invariance, bool allow_loops)
{
    if (d < 1 || d > 3)
        throw ArgumentError("span comparison needs 1 <= d <= 3");
    if (n < 0 || static_cast<int>(sink_orders.size()) != n)
        throw ArgumentError("span comparison needs one order bound per sink");
    for (int o : sink_orders)
        if (o < 0)
            throw ArgumentError("order bounds must be non-negative");
    const int t = static_cast<int>(out_degrees.size());
    int edges = 0;
    for (int nv : out_degrees) {
        if (nv < 0 || nv > d)
            throw ArgumentError("out-degrees must lie in 0..d");
        edges += nv;
    }
    const int coef_degree = 1;
    const int alpha_max = edges + coef_degree;

    // unknowns
    std::vector<std::vector<std::vector<int>>> set_choices;
    std::vector<std::vector<MultiIndex>> alpha_choices, beta_choices;
    for (int nv : out_degrees) {
        set_choices.push_back(increasing_sets(d, nv));
        alpha_choices.push_back(indices_up_to(d, alpha_max));
    }
    for (int o : sink_orders)
        beta_choices.push_back(indices_up_to(d, o));
    const auto gammas = indices_up_to(d, coef_degree);
    const auto sets = product(set_choices);
    const auto alphas = product(alpha_choices);
    const auto betas = product(beta_choices);
    const std::size_t unknowns = gammas.size() * sets.size() * alphas.size() * betas.size();
    if (unknowns > 6000)
        throw ResourceError("span comparison block too large (" + std::to_string(unknowns) + " unknowns)");
    std::vector<OperatorKey> keys;
    for (const auto& gm : gammas)
        for (const auto& s : sets)
            for (const auto& al : alphas)
                for (const auto& be : betas)
                    keys.push_back({gm, s, al, be});
    std::sort(keys.begin(), keys.end());
    std::map<OperatorKey, std::size_t> column;
    for (std::size_t i = 0; i < keys.size(); ++i)
        column.emplace(keys[i], i);

    // generators of the symmetry algebra
    std::vector<PolyVector> gens;
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
            gens.push_back(PolyVector::term(d, Rational(1), unit_index(d, k), {l}));
    if (invariance == Invariance::affine)
        for (int k = 0; k < d; ++k)
            gens.push_back(PolyVector::term(d, Rational(1), zero_index(d), {k}));

    // monomial test inputs: jets of order alpha_max + 1 resp. order + 1
    std::vector<std::vector<VectorSlot>> a_inputs;
    std::vector<std::vector<FunctionSlot>> f_inputs;
    for (int nv : out_degrees) {
        std::vector<VectorSlot> c;
        for (const auto& m : indices_up_to(d, alpha_max + 1))
            for (const auto& s : increasing_sets(d, nv))
                c.push_back({{Rational(1), m, s}});
        a_inputs.push_back(std::move(c));
    }
    for (int o : sink_orders) {
        std::vector<FunctionSlot> c;
        for (const auto& m : indices_up_to(d, o + 1))
            c.push_back({{Rational(1), m}});
        f_inputs.push_back(std::move(c));
    }
    const auto a_tuples = product(a_inputs);
    const auto f_tuples = product(f_inputs);
    if (a_tuples.size() * f_tuples.size() * gens.size() > 100000)
        throw ResourceError("span comparison needs too many test inputs");

    RowSpace equations;
    for (const auto& gen : gens) {
        for (const auto& at : a_tuples)
            for (const auto& ft : f_tuples) {
                // transformed inputs, one slot at a time
                std::vector<VectorSlot> la;
                for (int v = 0; v < t; ++v) {
                    const auto& term = at[static_cast<std::size_t>(v)][0];
                    la.push_back(to_slot(schouten(gen, PolyVector::term(d, term.c, term.mono, term.wedge))));
                }
                std::vector<FunctionSlot> lf;
                for (int j = 0; j < n; ++j)
                    lf.push_back(to_slot(apply_vector_field(gen, monomial(ft[static_cast<std::size_t>(j)][0].mono))));
                std::map<MultiIndex, SparseVector> rows;
                for (std::size_t col = 0; col < keys.size(); ++col) {
                    const auto& key = keys[col];
                    Polynomial defect = apply_vector_field(gen, apply_key(key, at, ft));
                    for (int v = 0; v < t; ++v) {
                        auto args = at;
                        args[static_cast<std::size_t>(v)] = la[static_cast<std::size_t>(v)];
                        defect -= apply_key(key, args, ft);
                    }
                    for (int j = 0; j < n; ++j) {
                        auto args = ft;
                        args[static_cast<std::size_t>(j)] = lf[static_cast<std::size_t>(j)];
                        defect -= apply_key(key, at, args);
                    }
                    for (const auto& [m, c] : defect)
                        rows[m][col] = c;
                }
                for (const auto& [m, row] : rows)
                    equations.insert(row);
            }
    }

    SpanReport r;
    r.d = d;
    r.out_degrees.assign(out_degrees.begin(), out_degrees.end());
    r.n = n;
    r.sink_orders.assign(sink_orders.begin(), sink_orders.end());
    r.invariance = invariance;
    r.allow_loops = allow_loops;
    r.unknowns = keys.size();
    r.rank_invariants = keys.size() - equations.rank();

    // graph vectors in the same coordinates
    RowSpace graph_span;
    r.graphs_invariant = true;
    for (const auto& g : enumerate_graphs(out_degrees, n, allow_loops)) {
        auto in = g.sink_in_degrees();
        bool fits = true;
        for (int j = 0; j < n; ++j)
            fits = fits && in[static_cast<std::size_t>(j)] <= sink_orders[static_cast<std::size_t>(j)];
        if (!fits)
            continue;
        ++r.graphs;
        LabelingRange range(g, d);
        SparseVector vec;
        for (long idx = 0; idx < range.size(); ++idx) {
            Labeling l = range.at(idx);
            OperatorKey key{zero_index(d), {}, l.in_first, l.in_sink};
            int sign = 1;
            for (auto labels : l.out_labels) {
                std::vector<int> perm(labels.size()), ones(labels.size(), 1);
                std::iota(perm.begin(), perm.end(), 0);
                std::sort(perm.begin(), perm.end(), [&](int x, int y) { return labels[static_cast<std::size_t>(x)] < labels[static_cast<std::size_t>(y)]; });
                std::vector<int> sorted;
                for (int p : perm)
                    sorted.push_back(labels[static_cast<std::size_t>(p)]);
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                    sign = 0;
                else
                    sign *= koszul_sign(perm, ones);
                key.sets.push_back(sorted);
            }
            if (sign == 0)
                continue;
            auto it = column.find(key);
            if (it == column.end())
                throw ArgumentError("span comparison: graph operator leaves the block");
            Rational& c = vec[it->second];
            c += Rational(sign);
            if (c.is_zero())
                vec.erase(it->second);
        }
        // invariant iff orthogonal to every equation row
        for (const auto& [pivot, row] : equations.rows()) {
            Rational dot(0);
            for (const auto& [col, c] : row) {
                auto v = vec.find(col);
                if (v != vec.end())
                    dot += c * v->second;
            }
            if (!dot.is_zero())
                r.graphs_invariant = false;
        }
        graph_span.insert(vec);
    }
    r.rank_graphs = graph_span.rank();
    r.equal = r.graphs_invariant && r.rank_graphs == r.rank_invariants;
    return r;
}

nlohmann::json span_report_json(const SpanReport& r)
{
    return {{"type", "span_report"},
            {"d", r.d},
            {"out_degrees", r.out_degrees},
            {"n", r.n},
            {"sink_orders", r.sink_orders},
            {"invariance", r.invariance == Invariance::affine ? "affine" : "linear"},
            {"allow_loops", r.allow_loops},
            {"unknowns", r.unknowns},
            {"graphs", r.graphs},
            {"rank_graphs", r.rank_graphs},
            {"rank_invariants", r.rank_invariants},
            {"graphs_invariant", r.graphs_invariant},
            {"equal", r.equal}};
}

} // namespace hoca
