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

#include "hoca/audit.hpp"

#include "hoca/bar.hpp"
#include "hoca/descent.hpp"
#include "hoca/graphs.hpp"
#include "hoca/hkr.hpp"
#include "hoca/polyvector.hpp"
#include "hoca/sampling.hpp"
#include "hoca/sign.hpp"
#include "hoca/transfer.hpp"
#include "hoca/twist.hpp"

#include <functional>
#include <memory>

namespace hoca {

void CheckResult::record(bool ok, const std::string& what)
{
    ++samples;
    if (!ok) {
        ++failures;
        if (first_failure.empty())
            first_failure = what;
    }
}

nlohmann::json check_json(const CheckResult& r)
{
    nlohmann::json j = {{"name", r.name}, {"samples", r.samples}, {"failures", r.failures}, {"passed", r.passed()}};
    if (!r.first_failure.empty())
        j["first_failure"] = r.first_failure;
    return j;
}

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

namespace {

PolyDiffOp nonzero_word(Sampler& s, int d, int len, int max_order, int max_coef)
{
    PolyDiffOp x(d);
    while (x.is_zero())
        x = s.polydiff(d, max_coef, len, len, max_order, s.uniform(1, 2));
    return x;
}

PolyVector nonzero_polyvector(Sampler& s, int d, int max_coef, int wedge)
{
    PolyVector x(d);
    while (x.is_zero())
        x = s.homogeneous_polyvector(d, max_coef, wedge, s.uniform(1, 2));
    return x;
}

PolyDiffOp poisson_word(int d)
{
    return PolyDiffOp::term(d, Rational(1), zero_index(d), {unit_index(d, 0), unit_index(d, 1)}) +
           PolyDiffOp::term(d, Rational(-1), zero_index(d), {unit_index(d, 1), unit_index(d, 0)});
}

} // namespace

CheckResult check_gerstenhaber(std::uint64_t seed, std::size_t samples)
{
    CheckResult r{"gerstenhaber axioms for schouten and wedge"};
    Sampler s(seed);
    while (r.samples < samples) {
        const int d = s.uniform(1, 3);
        auto a = nonzero_polyvector(s, d, 3, s.uniform(0, d));
        auto b = nonzero_polyvector(s, d, 3, s.uniform(0, d));
        auto c = nonzero_polyvector(s, d, 3, s.uniform(0, d));
        const long da = *a.degree(), db = *b.degree();
        bool ok = schouten(a, b) == Rational(-minus_one_pow(da * db)) * schouten(b, a);
        ok = ok && schouten(a, schouten(b, c)) ==
                       schouten(schouten(a, b), c) + Rational(minus_one_pow(da * db)) * schouten(b, schouten(a, c));
        ok = ok && schouten(a, wedge(b, c)) ==
                       wedge(schouten(a, b), c) + Rational(minus_one_pow(da * (db + 1))) * wedge(b, schouten(a, c));
        ok = ok && wedge(a, b) == Rational(minus_one_pow((da + 1) * (db + 1))) * wedge(b, a);
        r.record(ok, "triple " + std::to_string(r.samples));
    }
    return r;
}

CheckResult check_brace_relation(std::uint64_t seed, std::size_t samples)
{
    CheckResult r{"brace relation on D_poly"};
    Sampler s(seed);
    const int d = 2;
    while (r.samples < samples) {
        const std::size_t q = static_cast<std::size_t>(s.uniform(1, 2)), m = static_cast<std::size_t>(s.uniform(0, 2));
        auto a = nonzero_word(s, d, s.uniform(static_cast<int>(q), 2), 2, 1);
        std::vector<PolyDiffOp> b, c;
        for (std::size_t k = 0; k < q; ++k)
            b.push_back(nonzero_word(s, d, s.uniform(0, 2), 2, 1));
        for (std::size_t k = 0; k < m; ++k)
            c.push_back(nonzero_word(s, d, s.uniform(0, 2), 2, 1));
        PolyDiffOp lhs = brace(brace(a, std::span<const PolyDiffOp>(b)), std::span<const PolyDiffOp>(c));
        r.record(lhs == brace_relation_rhs(a, b, c), "triple " + std::to_string(r.samples));
    }
    return r;
}

CheckResult check_inner_structure(std::uint64_t seed, std::size_t samples)
{
    CheckResult r{"inner brace structure"};
    const int d = 2;
    auto wmu = BarElement::word(d, {PolyDiffOp::mu(d)});
    r.record(m_product(wmu, wmu).letter_part().is_zero(), "m11(mu, mu)");
    Sampler s(seed);
    while (r.samples < samples) {
        auto x = nonzero_word(s, d, s.uniform(0, 3), 2, 2);
        bool ok = hochschild_d(hochschild_d(x)).is_zero();
        std::vector<PolyDiffOp> one{x};
        ok = ok && q_component(one) == hochschild_d(x);
        for (std::size_t n : {3u, 4u}) {
            std::vector<PolyDiffOp> letters;
            for (std::size_t k = 0; k < n; ++k)
                letters.push_back(nonzero_word(s, d, s.uniform(0, 2), 1, 1));
            ok = ok && q_component(letters).is_zero();
        }
        r.record(ok, "sample " + std::to_string(r.samples));
    }
    return r;
}

CheckResult check_hkr_blocks(int d, int max_words, int max_order)
{
    CheckResult r{"HKR homotopy identities and cohomology"};
    HomotopyTable t(d, max_words, max_order);
    for (int n = 0; n <= max_words; ++n)
        for (int w = 0; w <= max_order; ++w)
            for (const auto& b : t.blocks(n, w))
                r.record(t.verify(b).ok(), "block n=" + std::to_string(n) + " w=" + std::to_string(w));
    return r;
}

CheckResult check_transfer_identities(std::uint64_t seed, std::size_t samples)
{
    CheckResult r{"transfer identities"};
    TransferContext ctx(2, 4);
    for (int n : {2, 3}) {
        auto rep = check_transfer(ctx, n, samples, seed + static_cast<std::uint64_t>(n));
        // one record per sampled tuple
        for (std::size_t k = 0; k < rep.samples; ++k)
            r.record(rep.ok() && !rep.no_coverage, "arity " + std::to_string(n));
    }
    const auto basis = polyvector_basis(2, 1);
    Sampler s(seed);
    for (std::size_t k = 0; k < samples; ++k) {
        std::vector<PolyVector> ab{basis[static_cast<std::size_t>(s.uniform(0, static_cast<int>(basis.size()) - 1))],
                                   basis[static_cast<std::size_t>(s.uniform(0, static_cast<int>(basis.size()) - 1))]};
        r.record(ctx.q1(ab) == schouten(ab[0], ab[1]), "q1 versus schouten");
    }
    return r;
}

CheckResult check_tree_combinatorics()
{
    CheckResult r{"planar tree combinatorics"};
    const std::size_t counts[] = {1, 1, 3, 11};
    for (int n = 1; n <= 4; ++n)
        r.record(enumerate_trees(n).size() == counts[n - 1], "tree count n=" + std::to_string(n));
    auto t = tree_from(nlohmann::json::parse("[[1,[2,3]],4]"));
    r.record(tree_weight(t) == 8, "weight of ((1(23))4)");
    return r;
}

CheckResult check_twisting(std::uint64_t seed, std::size_t samples)
{
    CheckResult r{"Maurer-Cartan twisting"};
    const int d = 2;
    for (int K = 1; K <= 3; ++K) {
        auto m = moyal_series(poisson_word(d), K);
        r.record(mc_check_b(m), "Moyal MC, K=" + std::to_string(K));
        r.record(grouplike_check(m), "group-like, K=" + std::to_string(K));
    }
    const int K = 2;
    auto m = moyal_series(poisson_word(d), K);
    TwistedB tw = twist_b(m);
    Sampler s(seed);
    while (r.samples < samples) {
        SeriesOp g = zero_series(d, K);
        const int slots = s.uniform(0, 2);
        for (int k = 0; k <= K; ++k)
            g[k] = s.polydiff(d, 1, slots, slots, 2, 2);
        SeriesOp dg = zero_series(d, K);
        for (int k = 0; k <= K; ++k)
            dg[k] = hochschild_d(g[k]);
        SeriesOp qg = tw.differential(g);
        bool ok = qg == dg + cauchy(m, g, PolyDiffOp(d), g_bracket);
        ok = ok && tw.differential(qg).is_zero();
        r.record(ok, "twisted differential, sample " + std::to_string(r.samples));
    }
    return r;
}

CheckResult check_brace_vanishing(std::uint64_t seed, std::size_t samples)
{
    CheckResult r{"brace vanishing on 1-slot words"};
    Sampler s(seed);
    while (r.samples < samples) {
        const int d = s.uniform(1, 3);
        auto w = nonzero_word(s, d, 1, 2, 2);
        std::vector<PolyDiffOp> args;
        const int n = s.uniform(2, 3);
        for (int k = 0; k < n; ++k)
            args.push_back(nonzero_word(s, d, s.uniform(0, 2), 2, 1));
        r.record(brace(w, std::span<const PolyDiffOp>(args)).is_zero(), "sample " + std::to_string(r.samples));
    }
    return r;
}

CheckResult check_graph_span()
{
    CheckResult r{"admissible graph span"};
    const std::vector<int> one{1}, two{2}, o1{1}, o11{1, 1};
    r.record(invariant_span_compare(2, one, 1, o1).equal, "block t=1 n1=1 n=1");
    r.record(invariant_span_compare(2, two, 2, o11).equal, "block t=1 n1=2 n=2");
    auto lin = invariant_span_compare(2, one, 1, o1, Invariance::linear_only);
    r.record(lin.rank_invariants > lin.rank_graphs, "linear-only invariants exceed the graph span");
    return r;
}

CheckResult check_descent()
{
    CheckResult r{"descent under a gl-action"};
    auto model = de_rham_model(2, 4);
    auto field = [](int var, int der) { return PolyVector::term(2, Rational(1), unit_index(2, var), {der}); };
    const std::vector<std::vector<PolyVector>> actions{
        {field(0, 1)}, {field(0, 1), field(1, 0)}, {field(0, 0) + field(1, 1)}};
    for (const auto& xs : actions) {
        std::vector<std::string> names;
        std::vector<BlockOperator> ops;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            names.push_back("s" + std::to_string(k + 1));
            ops.push_back(model.contraction(xs[k]));
        }
        auto act = register_action(model.module, names, ops, {model.wedge});
        for (const auto& i : act.ops) {
            auto l = lie_operator(model.module, i, model.differential);
            // blockwise against composition of the operators on basis vectors
            for (const auto& [b, n] : model.module.dims) {
                bool ok = true;
                for (std::size_t c = 0; c < n; ++c) {
                    DenseVector e(n, Rational(0));
                    e[c] = Rational(1);
                    HomogeneousVector x{b, e};
                    DenseVector expect(n, Rational(0));
                    const BlockIndex down{b.degree - 1, b.weight}, up{b.degree + 1, b.weight};
                    if (model.module.dim(down) > 0)
                        expect = model.differential.apply(model.module, i.apply(model.module, x)).coords;
                    if (model.module.dim(up) > 0) {
                        auto y = i.apply(model.module, model.differential.apply(model.module, x)).coords;
                        for (std::size_t k = 0; k < n; ++k)
                            expect[k] += y[k];
                    }
                    ok = ok && l.apply(model.module, x).coords == expect;
                }
                r.record(ok, "L = d i + i d on a block");
            }
            r.record(commutes_with_d(model.module, l, model.differential), "L commutes with d");
        }
        auto fixed = fixed_subspace(model.module, model.differential, act);
        auto c = closure_check(model.module, model.differential, act, fixed, {model.wedge});
        r.record(c.closed && c.products > 0, "closure: " + c.failure);
    }
    return r;
}

bool AuditReport::passed() const
{
    for (const auto& c : checks)
        if (!c.passed())
            return false;
    return !checks.empty();
}

AuditReport run_audit(std::uint64_t seed, bool parallel)
{
    const std::vector<std::function<CheckResult()>> jobs{
        [seed] { return check_gerstenhaber(seed, 200); },
        [seed] { return check_brace_relation(seed + 1, 100); },
        [seed] { return check_inner_structure(seed + 2, 200); },
        [] { return check_hkr_blocks(2, 3, 3); },
        [seed] { return check_transfer_identities(seed + 3, 50); },
        [] { return check_tree_combinatorics(); },
        [seed] { return check_twisting(seed + 4, 30); },
        [seed] { return check_brace_vanishing(seed + 5, 100); },
        [] { return check_graph_span(); },
        [] { return check_descent(); },
    };
    // an exception inside a check counts as a failed sample of that check
    auto run = [&jobs](std::size_t k) {
        try {
            return jobs[k]();
        } catch (const std::exception& e) {
            CheckResult r{"check " + std::to_string(k + 1)};
            r.record(false, std::string("exception: ") + e.what());
            return r;
        }
    };
    AuditReport rep;
    rep.seed = seed;
    rep.checks.resize(jobs.size());
    const long n = static_cast<long>(jobs.size());
    if (parallel) {
        // batches own their inputs; results land in fixed slots
#pragma omp parallel for schedule(dynamic)
        for (long k = 0; k < n; ++k)
            rep.checks[static_cast<std::size_t>(k)] = run(static_cast<std::size_t>(k));
    } else {
        for (long k = 0; k < n; ++k)
            rep.checks[static_cast<std::size_t>(k)] = run(static_cast<std::size_t>(k));
    }
    return rep;
}

nlohmann::json audit_json(const AuditReport& r)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back(check_json(c));
    return {{"type", "audit_report"}, {"seed", r.seed}, {"passed", r.passed()}, {"checks", checks}};
}

} // namespace hoca
