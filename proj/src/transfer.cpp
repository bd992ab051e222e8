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

#include "hoca/transfer.hpp"

#include "hoca/errors.hpp"
#include "hoca/json_io.hpp"
#include "hoca/multi_index.hpp"
#include "hoca/sampling.hpp"
#include "hoca/sign.hpp"

#include <algorithm>
#include <numeric>

namespace hoca {

// ---- planar trees ----

int PlanarTree::leaves() const
{
    if (is_leaf())
        return 1;
    int n = 0;
    for (const auto& c : children)
        n += c.leaves();
    return n;
}

std::string PlanarTree::shape() const
{
    if (is_leaf())
        return "*";
    std::string s = "(";
    for (const auto& c : children)
        s += c.shape();
    return s + ")";
}

namespace {

std::vector<PlanarTree> shapes(int n, bool binary_only)
{
    if (n == 1)
        return {PlanarTree{}};
    std::vector<PlanarTree> out;
    // children leaf counts: ordered compositions of n into m >= 2 parts
    std::vector<int> parts;
    std::function<void(int)> rec = [&](int left) {
        if (left == 0) {
            if (parts.size() < 2)
                return;
            std::vector<PlanarTree> acc{PlanarTree{}};
            acc[0].leaf = 0;
            for (int p : parts) {
                std::vector<PlanarTree> next;
                for (const auto& partial : acc)
                    for (const auto& c : shapes(p, binary_only)) {
                        PlanarTree t = partial;
                        t.children.push_back(c);
                        next.push_back(std::move(t));
                    }
                acc = std::move(next);
            }
            out.insert(out.end(), acc.begin(), acc.end());
            return;
        }
        if (binary_only && parts.size() == 2)
            return;
        for (int p = 1; p <= left; ++p) {
            if (parts.empty() && p == n)
                continue;
            parts.push_back(p);
            rec(left - p);
            parts.pop_back();
        }
    };
    rec(n);
    return out;
}

void label(PlanarTree& t, int& next)
{
    if (t.is_leaf()) {
        t.leaf = ++next;
        return;
    }
    for (auto& c : t.children)
        label(c, next);
}

} // namespace

std::vector<PlanarTree> enumerate_trees(int n, bool binary_only, int max_leaves)
{
    if (n < 1)
        throw ArgumentError("tree enumeration needs n >= 1");
    if (n > max_leaves)
        throw ResourceError("tree enumeration beyond the configured leaf bound");
    auto out = shapes(n, binary_only);
    for (auto& t : out) {
        int next = 0;
        label(t, next);
    }
    return out;
}

long tree_weight(const PlanarTree& t)
{
    if (t.is_leaf())
        return 1;
    long w = 1;
    for (long k = 2; k <= static_cast<long>(t.children.size()); ++k)
        w *= k;
    for (const auto& c : t.children)
        w *= tree_weight(c);
    return w;
}

nlohmann::json tree_json(const PlanarTree& t)
{
    if (t.is_leaf())
        return t.leaf;
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : t.children)
        a.push_back(tree_json(c));
    return a;
}

PlanarTree tree_from(const nlohmann::json& j)
{
    PlanarTree t;
    if (j.is_number_integer()) {
        t.leaf = j.get<int>();
        if (t.leaf < 1)
            throw ArgumentError("tree leaf labels start at 1");
        return t;
    }
    if (!j.is_array() || j.size() < 2)
        throw ArgumentError("internal tree vertex needs at least two children");
    for (const auto& c : j)
        t.children.push_back(tree_from(c));
    return t;
}

// ---- operations ----

OperationFamily dg_lie_operations(int d)
{
    OperationFamily f;
    f.max_arity = 2;
    f.apply = [d](std::span<const PolyDiffOp> x) {
        if (x.size() == 1)
            return hochschild_d(x[0]);
        PolyDiffOp out(d);
        if (x.size() != 2)
            return out;
        for (const auto& [deg, part] : x[0].homogeneous_components()) {
            PolyDiffOp b = g_bracket(part, x[1]);
            out += is_odd(deg - 1) ? b * Rational(-1) : b;
        }
        return out;
    };
    return f;
}

// ---- context ----

namespace {

using Terms = std::vector<std::pair<PolyVectorKey, Rational>>;

Terms terms_of(const PolyVector& a)
{
    Terms t;
    for (const auto& [k, c] : a.terms())
        t.emplace_back(k, c);
    return t;
}

int parity(const PolyVectorKey& k) { return static_cast<int>(k.wedge.size()) % 2; } // of |k| - 1

PolyVector basis_vector(int d, const PolyVectorKey& k) { return PolyVector::term(d, Rational(1), k.mono, k.wedge); }

// Calls f(tuple, coefficient) for every basis tuple in the multilinear expansion.
template <class F>
void expand(std::span<const PolyVector> in, F&& f)
{
    std::vector<Terms> t;
    for (const auto& a : in)
        t.push_back(terms_of(a));
    std::vector<PolyVectorKey> cur(in.size());
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t i, Rational c) {
        if (i == in.size()) {
            f(cur, c);
            return;
        }
        for (const auto& [k, v] : t[i]) {
            cur[i] = k;
            rec(i + 1, c * v);
        }
    };
    rec(0, Rational(1));
}

// Set partitions of {0..n-1} into blocks, blocks ordered by their least element.
std::vector<std::vector<std::vector<int>>> set_partitions(int n)
{
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t b = 0; b < cur.size(); ++b) {
            cur[b].push_back(i);
            rec(i + 1);
            cur[b].pop_back();
        }
        cur.push_back({i});
        rec(i + 1);
        cur.pop_back();
    };
    rec(0);
    return out;
}

int block_sign(const std::vector<std::vector<int>>& blocks, std::span<const int> deg)
{
    std::vector<int> perm;
    for (const auto& b : blocks)
        perm.insert(perm.end(), b.begin(), b.end());
    return koszul_sign(perm, deg);
}

std::vector<int> parities(std::span<const PolyVectorKey> x)
{
    std::vector<int> p;
    for (const auto& k : x)
        p.push_back(parity(k));
    return p;
}

// (-1)^{sum_i (n - i)(|x_i| - 1)}
int decalage_sign(std::span<const PolyVectorKey> x)
{
    long e = 0;
    const long n = static_cast<long>(x.size());
    for (long i = 0; i < n; ++i)
        e += (n - 1 - i) * parity(x[static_cast<std::size_t>(i)]);
    return minus_one_pow(e);
}

// (-1)^{p(p-1)/2} on p-vectors
int hkr_normalization(const PolyVectorKey& k)
{
    const long p = static_cast<long>(k.wedge.size());
    return minus_one_pow(p * (p - 1) / 2);
}

} // namespace

TransferContext::TransferContext(int d, int max_arity, std::shared_ptr<const HomotopyTable> h)
    : TransferContext(d, max_arity, dg_lie_operations(d), std::move(h))
{
}

TransferContext::TransferContext(int d, int max_arity, OperationFamily ops, std::shared_ptr<const HomotopyTable> h)
    : d_(d), max_arity_(max_arity), ops_(std::move(ops)), h_(std::move(h))
{
    if (d < 1 || max_arity < 1)
        throw ArgumentError("transfer context needs d >= 1 and arity >= 1");
    if (max_arity > 6)
        throw ResourceError("transfer arity bound above 6");
    if (!h_)
        h_ = std::make_shared<HomotopyTable>(d, d * (max_arity + 1) + 1, d * (max_arity + 1));
    if (h_->dim() != d)
        throw ArgumentError("homotopy table dimension mismatch");
    trees_.resize(static_cast<std::size_t>(max_arity + 1));
    for (int n = 1; n <= max_arity; ++n)
        trees_[static_cast<std::size_t>(n)] = enumerate_trees(n, ops_.max_arity <= 2, max_arity);

    // structure precondition on a few seeded samples: Q1 Q1 = 0 and Q1 a derivation of Q2
    Sampler s(0x5eed);
    for (int trial = 0; trial < 3; ++trial) {
        PolyDiffOp x = s.polydiff(d, 1, 1, 2, 2, 2), y = s.polydiff(d, 1, 1, 2, 2, 2);
        PolyDiffOp one[1] = {x};
        PolyDiffOp dx = ops_.apply(one);
        PolyDiffOp ddx[1] = {dx};
        if (!ops_.apply(ddx).is_zero())
            throw ArgumentError("structure differential does not square to zero");
        if (ops_.max_arity < 2)
            continue;
        for (const auto& [deg, xp] : x.homogeneous_components()) {
            PolyDiffOp xy[2] = {xp, y};
            PolyDiffOp q2 = ops_.apply(xy);
            PolyDiffOp q2a[1] = {q2};
            PolyDiffOp lhs = ops_.apply(q2a);
            PolyDiffOp xpa[1] = {xp}, ya[1] = {y};
            PolyDiffOp a1[2] = {ops_.apply(xpa), y};
            PolyDiffOp a2[2] = {xp, ops_.apply(ya)};
            lhs += ops_.apply(a1);
            PolyDiffOp t = ops_.apply(a2);
            lhs += is_odd(deg - 1) ? t * Rational(-1) : t;
            if (!lhs.is_zero())
                throw ArgumentError("structure differential is not a derivation of the bracket");
        }
    }
}

void TransferContext::check_arity(std::size_t n) const
{
    if (n < 1)
        throw ArgumentError("transfer needs at least one input");
    if (static_cast<int>(n) > max_arity_)
        throw ResourceError("transfer arity above the context bound");
}

PolyDiffOp TransferContext::subtree(const PlanarTree& t, std::span<const PolyVectorKey> x) const
{
    if (t.is_leaf())
        return hkr_i(basis_vector(d_, x[0]));
    auto key = std::make_pair("H" + t.shape(), TermTuple(x.begin(), x.end()));
    {
        std::lock_guard lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) {
            ++hits_;
            return it->second;
        }
    }
    std::vector<PolyDiffOp> args;
    std::size_t pos = 0;
    for (const auto& c : t.children) {
        const auto len = static_cast<std::size_t>(c.leaves());
        args.push_back(subtree(c, x.subspan(pos, len)));
        pos += len;
    }
    PolyDiffOp v = static_cast<int>(args.size()) > ops_.max_arity ? PolyDiffOp(d_) : h_->apply(ops_.apply(args));
    std::lock_guard lock(mutex_);
    memo_.emplace(std::move(key), v);
    return v;
}

PolyDiffOp TransferContext::root_sum(const TermTuple& x, bool parallel) const
{
    const int n = static_cast<int>(x.size());
    const auto& trees = trees_[static_cast<std::size_t>(n)];
    const auto perms = all_permutations(n);
    const auto deg = parities(x);
    const long total = static_cast<long>(perms.size() * trees.size());
    PolyDiffOp sum(d_);

    auto term = [&](long idx) {
        const auto& perm = perms[static_cast<std::size_t>(idx) / trees.size()];
        const auto& t = trees[static_cast<std::size_t>(idx) % trees.size()];
        PolyDiffOp out(d_);
        if (static_cast<int>(t.children.size()) > ops_.max_arity)
            return out;
        TermTuple y;
        for (int p : perm)
            y.push_back(x[static_cast<std::size_t>(p)]);
        std::vector<PolyDiffOp> args;
        std::size_t pos = 0;
        for (const auto& c : t.children) {
            const auto len = static_cast<std::size_t>(c.leaves());
            args.push_back(subtree(c, std::span<const PolyVectorKey>(y).subspan(pos, len)));
            pos += len;
        }
        out = ops_.apply(args);
        out *= Rational(koszul_sign(perm, deg)) / Rational(tree_weight(t));
        return out;
    };

    if (parallel) {
#pragma omp parallel
        {
            PolyDiffOp local(d_);
#pragma omp for schedule(dynamic)
            for (long idx = 0; idx < total; ++idx)
                local += term(idx);
#pragma omp critical(hoca_transfer_sum)
            sum += local;
        }
    } else {
        for (long idx = 0; idx < total; ++idx)
            sum += term(idx);
    }
    return sum;
}

PolyDiffOp TransferContext::psi_raw(std::span<const PolyVector> in, bool parallel) const
{
    check_arity(in.size());
    PolyDiffOp out(d_);
    expand(in, [&](const TermTuple& x, const Rational& c) {
        if (x.size() == 1)
            out += hkr_i(basis_vector(d_, x[0])) * c;
        else
            out += h_->apply(root_sum(x, parallel)) * c;
    });
    return out;
}

PolyVector TransferContext::q1_raw(std::span<const PolyVector> in, bool parallel) const
{
    check_arity(in.size());
    PolyVector out(d_);
    if (in.size() == 1)
        return out;
    expand(in, [&](const TermTuple& x, const Rational& c) { out += hkr_p(root_sum(x, parallel)) * c; });
    return out;
}

PolyDiffOp TransferContext::psi(std::span<const PolyVector> in) const
{
    check_arity(in.size());
    PolyDiffOp out(d_);
    expand(in, [&](const TermTuple& x, const Rational& c) {
        std::vector<PolyVector> b;
        for (const auto& k : x)
            b.push_back(basis_vector(d_, k));
        out += psi_raw(b) * (c * Rational(decalage_sign(x)));
    });
    return out;
}

PolyVector TransferContext::q1(std::span<const PolyVector> in) const
{
    check_arity(in.size());
    PolyVector out(d_);
    expand(in, [&](const TermTuple& x, const Rational& c) {
        std::vector<PolyVector> b;
        int sign = decalage_sign(x);
        for (const auto& k : x) {
            b.push_back(basis_vector(d_, k));
            sign *= hkr_normalization(k);
        }
        const PolyVector raw = q1_raw(b);
        for (const auto& [k, v] : raw.terms())
            out.add_term(k, v * c * Rational(sign * hkr_normalization(k)));
    });
    return out;
}

PolyDiffOp TransferContext::oracle_psi(std::span<const PolyVectorKey> x) const
{
    if (x.size() == 1)
        return hkr_i(basis_vector(d_, x[0]));
    return h_->apply(oracle_root(x));
}

PolyDiffOp TransferContext::oracle_root(std::span<const PolyVectorKey> x) const
{
    const int n = static_cast<int>(x.size());
    const auto deg = parities(x);
    PolyDiffOp out(d_);
    for (const auto& blocks : set_partitions(n)) {
        if (blocks.size() < 2 || static_cast<int>(blocks.size()) > ops_.max_arity)
            continue;
        std::vector<PolyDiffOp> args;
        for (const auto& b : blocks) {
            TermTuple sub;
            for (int i : b)
                sub.push_back(x[static_cast<std::size_t>(i)]);
            args.push_back(oracle_psi(sub));
        }
        out += ops_.apply(args) * Rational(block_sign(blocks, deg));
    }
    return out;
}

PolyDiffOp TransferContext::psi_oracle(std::span<const PolyVector> in) const
{
    check_arity(in.size());
    PolyDiffOp out(d_);
    expand(in, [&](const TermTuple& x, const Rational& c) { out += oracle_psi(x) * c; });
    return out;
}

PolyVector TransferContext::q1_oracle(std::span<const PolyVector> in) const
{
    check_arity(in.size());
    PolyVector out(d_);
    if (in.size() == 1)
        return out;
    expand(in, [&](const TermTuple& x, const Rational& c) { out += hkr_p(oracle_root(x)) * c; });
    return out;
}

TransferStats TransferContext::stats() const
{
    std::lock_guard lock(mutex_);
    return {memo_.size(), hits_};
}

void TransferContext::clear_memo() const
{
    std::lock_guard lock(mutex_);
    memo_.clear();
    hits_ = 0;
}

// ---- identities ----

namespace {

// Subsets I of {0..n-1} with lo <= |I| <= hi, increasing.
std::vector<std::vector<int>> subsets(int n, int lo, int hi)
{
    std::vector<std::vector<int>> out;
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1ul << i))
                s.push_back(i);
        if (static_cast<int>(s.size()) >= lo && static_cast<int>(s.size()) <= hi)
            out.push_back(std::move(s));
    }
    return out;
}

std::vector<int> complement(int n, const std::vector<int>& s)
{
    std::vector<int> c;
    for (int i = 0; i < n; ++i)
        if (!std::binary_search(s.begin(), s.end(), i))
            c.push_back(i);
    return c;
}

} // namespace

PolyDiffOp morphism_residual(const TransferContext& ctx, std::span<const PolyVector> in)
{
    const int d = ctx.dim();
    const int n = static_cast<int>(in.size());
    PolyDiffOp out(d);
    expand(in, [&](const std::vector<PolyVectorKey>& x, const Rational& c) {
        std::vector<PolyVector> v;
        for (const auto& k : x)
            v.push_back(basis_vector(d, k));
        const auto deg = parities(x);
        PolyDiffOp r(d);
        // P Q2 psi I_n
        PolyDiffOp top[1] = {ctx.psi_raw(v)};
        r += ctx.operations().apply(top);
        for (const auto& blocks : set_partitions(n)) {
            if (blocks.size() < 2 || static_cast<int>(blocks.size()) > ctx.operations().max_arity)
                continue;
            std::vector<PolyDiffOp> args;
            for (const auto& b : blocks) {
                std::vector<PolyVector> sub;
                for (int i : b)
                    sub.push_back(v[static_cast<std::size_t>(i)]);
                args.push_back(ctx.psi_raw(sub));
            }
            r += ctx.operations().apply(args) * Rational(block_sign(blocks, deg));
        }
        // - P psi Q1 I_n
        for (const auto& s : subsets(n, 2, n)) {
            auto rest = complement(n, s);
            std::vector<PolyVector> sub, args;
            for (int i : s)
                sub.push_back(v[static_cast<std::size_t>(i)]);
            args.push_back(ctx.q1_raw(sub));
            for (int i : rest)
                args.push_back(v[static_cast<std::size_t>(i)]);
            r -= ctx.psi_raw(args) * Rational(block_sign({s, rest}, deg));
        }
        out += r * c;
    });
    return out;
}

PolyVector square_residual(const TransferContext& ctx, std::span<const PolyVector> in)
{
    const int d = ctx.dim();
    const int n = static_cast<int>(in.size()) - 1;
    PolyVector out(d);
    expand(in, [&](const std::vector<PolyVectorKey>& x, const Rational& c) {
        std::vector<PolyVector> v;
        for (const auto& k : x)
            v.push_back(basis_vector(d, k));
        const auto deg = parities(x);
        for (const auto& s : subsets(n + 1, 2, n)) {
            auto rest = complement(n + 1, s);
            std::vector<PolyVector> sub, args;
            for (int i : s)
                sub.push_back(v[static_cast<std::size_t>(i)]);
            args.push_back(ctx.q1_raw(sub));
            for (int i : rest)
                args.push_back(v[static_cast<std::size_t>(i)]);
            out += ctx.q1_raw(args) * (c * Rational(block_sign({s, rest}, deg)));
        }
    });
    return out;
}

std::vector<PolyVector> polyvector_basis(int d, int max_coef)
{
    std::vector<PolyVector> out;
    for (unsigned long mask = 0; mask < (1ul << d); ++mask) {
        std::vector<int> w;
        for (int i = 0; i < d; ++i)
            if (mask & (1ul << i))
                w.push_back(i);
        for (int t = 0; t <= max_coef; ++t)
            for (const auto& m : indices_of_total(d, t))
                out.push_back(PolyVector::term(d, Rational(1), m, w));
    }
    return out;
}

TransferReport check_transfer(const TransferContext& ctx, int n, std::span<const std::vector<PolyVector>> tuples)
{
    TransferReport r;
    r.arity = n;
    r.samples = tuples.size();
    r.no_coverage = tuples.empty();
    for (const auto& t : tuples) {
        if (static_cast<int>(t.size()) != n + 1)
            throw ArgumentError("transfer check tuples must have n + 1 entries");
        std::span<const PolyVector> first(t.data(), static_cast<std::size_t>(n));
        PolyDiffOp m = morphism_residual(ctx, first);
        if (!m.is_zero()) {
            r.morphism_ok = false;
            r.failures.push_back({"Q2 psi = psi Q1", {first.begin(), first.end()}, polydiff_json(m)});
        }
        PolyVector s = square_residual(ctx, t);
        if (!s.is_zero()) {
            r.square_zero_ok = false;
            r.failures.push_back({"Q1^2 = 0", t, polyvector_json(s)});
        }
    }
    return r;
}

TransferReport check_transfer(const TransferContext& ctx, int n, std::size_t samples, std::uint64_t seed, int max_coef)
{
    if (n < 1 || n > ctx.max_arity())
        throw ResourceError("transfer check arity above the context bound");
    const auto basis = polyvector_basis(ctx.dim(), max_coef);
    std::vector<std::vector<PolyVector>> tuples;
    for (std::size_t k = 0; k < samples; ++k) {
        Sampler s(seed + k);
        std::vector<PolyVector> t;
        for (int i = 0; i <= n; ++i)
            t.push_back(basis[static_cast<std::size_t>(s.uniform(0, static_cast<int>(basis.size()) - 1))]);
        tuples.push_back(std::move(t));
    }
    return check_transfer(ctx, n, tuples);
}

nlohmann::json report_json(const TransferReport& r)
{
    nlohmann::json f = nlohmann::json::array();
    for (const auto& x : r.failures) {
        nlohmann::json in = nlohmann::json::array();
        for (const auto& a : x.inputs)
            in.push_back(polyvector_json(a));
        f.push_back({{"identity", x.identity}, {"inputs", in}, {"residual", x.residual}});
    }
    return {{"type", "transfer_report"},
            {"arity", r.arity},
            {"samples", r.samples},
            {"morphism", r.morphism_ok},
            {"square_zero", r.square_zero_ok},
            {"no_coverage", r.no_coverage},
            {"ok", r.ok()},
            {"failures", f}};
}

} // namespace hoca
