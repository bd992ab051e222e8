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

#include "hoca/descent.hpp"

#include "hoca/errors.hpp"
#include "hoca/json_io.hpp"
#include "hoca/sampling.hpp"
#include "hoca/sign.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

namespace hoca {

std::size_t TruncatedModule::dim(const BlockIndex& b) const
{
    auto it = dims.find(b);
    return it == dims.end() ? 0 : it->second;
}

std::size_t TruncatedModule::total_dim() const
{
    std::size_t n = 0;
    for (const auto& [b, k] : dims)
        n += k;
    return n;
}

void BlockOperator::validate(const TruncatedModule& v) const
{
    for (const auto& [b, m] : blocks) {
        if (m.cols() != v.dim(b) || m.rows() != v.dim(target(b)))
            throw ArgumentError("operator block size does not match the module");
    }
}

SparseMatrix BlockOperator::matrix(const TruncatedModule& v, const BlockIndex& b) const
{
    auto it = blocks.find(b);
    if (it == blocks.end())
        return SparseMatrix(v.dim(target(b)), v.dim(b));
    return it->second;
}

HomogeneousVector BlockOperator::apply(const TruncatedModule& v, const HomogeneousVector& x) const
{
    if (x.coords.size() != v.dim(x.block))
        throw ArgumentError("vector does not match its block");
    return {target(x.block), matrix(v, x.block).apply(x.coords)};
}

namespace {

bool is_zero(const DenseVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c.is_zero(); });
}

HomogeneousVector basis_vector(const TruncatedModule& v, const BlockIndex& b, std::size_t k)
{
    DenseVector c(v.dim(b), Rational(0));
    c[k] = Rational(1);
    return {b, c};
}

void add_into(std::optional<HomogeneousVector>& acc, const HomogeneousVector& x, const Rational& s)
{
    if (!acc) {
        acc = HomogeneousVector{x.block, DenseVector(x.coords.size(), Rational(0))};
    }
    if (acc->block != x.block)
        throw ArgumentError("derivation check mixes blocks");
    for (std::size_t i = 0; i < x.coords.size(); ++i)
        acc->coords[i] += s * x.coords[i];
}

} // namespace

DerivationAction register_action(const TruncatedModule& v, std::vector<std::string> names,
                                 std::vector<BlockOperator> ops, const std::vector<BilinearOperation>& operations,
                                 std::uint64_t seed, std::size_t samples)
{
    if (names.size() != ops.size())
        throw ArgumentError("action names and operators differ in number");
    std::vector<std::pair<BlockIndex, std::size_t>> all;
    for (const auto& [b, n] : v.dims)
        for (std::size_t k = 0; k < n; ++k)
            all.emplace_back(b, k);
    Sampler rng(seed);
    for (std::size_t s = 0; s < ops.size(); ++s) {
        const auto& op = ops[s];
        if (op.shift != -1)
            throw ArgumentError("action " + names[s] + " must have degree -1");
        op.validate(v);
        if (all.empty())
            continue;
        for (const auto& mult : operations)
            for (std::size_t t = 0; t < samples; ++t) {
                const auto& pa = all[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(all.size()) - 1))];
                const auto& pb = all[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(all.size()) - 1))];
                HomogeneousVector a = basis_vector(v, pa.first, pa.second);
                HomogeneousVector b = basis_vector(v, pb.first, pb.second);
                auto ab = mult.apply(a, b);
                auto left = mult.apply(op.apply(v, a), b);
                auto right = mult.apply(a, op.apply(v, b));
                if (!ab || !left || !right)
                    continue; // outside the truncation
                HomogeneousVector lhs = op.apply(v, *ab);
                std::optional<HomogeneousVector> rhs;
                add_into(rhs, *left, Rational(1));
                add_into(rhs, *right, Rational(minus_one_pow(a.block.degree)));
                if (rhs->block != lhs.block || rhs->coords != lhs.coords)
                    throw ArgumentError("action " + names[s] + " is not a derivation of " + mult.name);
            }
    }
    return {std::move(names), std::move(ops)};
}

BlockOperator lie_operator(const TruncatedModule& v, const BlockOperator& i, const BlockOperator& d)
{
    if (i.shift != -1 || d.shift != 1)
        throw ArgumentError("lie_operator needs i of degree -1 and d of degree +1");
    i.validate(v);
    d.validate(v);
    BlockOperator l;
    l.shift = 0;
    for (const auto& [b, n] : v.dims) {
        const BlockIndex down{b.degree - 1, b.weight}, up{b.degree + 1, b.weight};
        SparseMatrix m(n, n);
        if (v.dim(down) > 0)
            m = m + d.matrix(v, down) * i.matrix(v, b);
        if (v.dim(up) > 0)
            m = m + i.matrix(v, up) * d.matrix(v, b);
        if (!m.is_zero())
            l.blocks.emplace(b, std::move(m));
    }
    return l;
}

std::size_t FixedSubspace::dim() const
{
    std::size_t n = 0;
    for (const auto& [b, vs] : basis)
        n += vs.size();
    return n;
}

FixedSubspace fixed_subspace(const TruncatedModule& v, const BlockOperator& d, const DerivationAction& s)
{
    std::vector<BlockOperator> ls;
    for (const auto& i : s.ops)
        ls.push_back(lie_operator(v, i, d));
    FixedSubspace out;
    for (const auto& [b, n] : v.dims) {
        std::vector<SparseMatrix> parts;
        for (std::size_t k = 0; k < s.ops.size(); ++k) {
            parts.push_back(s.ops[k].matrix(v, b));
            parts.push_back(ls[k].matrix(v, b));
        }
        std::size_t rows = 0;
        for (const auto& p : parts)
            rows += p.rows();
        SparseMatrix stacked(rows, n);
        std::size_t r0 = 0;
        for (const auto& p : parts) {
            for (std::size_t r = 0; r < p.rows(); ++r)
                for (const auto& [c, x] : p.row(r))
                    stacked.set(r0 + r, c, x);
            r0 += p.rows();
        }
        auto ker = kernel_basis(stacked);
        if (!ker.empty())
            out.basis.emplace(b, std::move(ker));
    }
    return out;
}

bool commutes_with_d(const TruncatedModule& v, const BlockOperator& l, const BlockOperator& d)
{
    for (const auto& [b, n] : v.dims) {
        const BlockIndex up{b.degree + 1, b.weight};
        if (v.dim(up) == 0)
            continue;
        if (!(l.matrix(v, up) * d.matrix(v, b) == d.matrix(v, b) * l.matrix(v, b)))
            return false;
    }
    return true;
}

ClosureReport closure_check(const TruncatedModule& v, const BlockOperator& d, const DerivationAction& s,
                            const FixedSubspace& fixed, const std::vector<BilinearOperation>& operations)
{
    std::vector<BlockOperator> ls;
    for (const auto& i : s.ops)
        ls.push_back(lie_operator(v, i, d));
    ClosureReport r;
    std::vector<HomogeneousVector> vecs;
    for (const auto& [b, vs] : fixed.basis)
        for (const auto& x : vs)
            vecs.push_back({b, x});
    for (const auto& op : operations)
        for (const auto& a : vecs)
            for (const auto& b : vecs) {
                auto ab = op.apply(a, b);
                if (!ab)
                    continue;
                ++r.products;
                for (std::size_t k = 0; k < s.ops.size(); ++k) {
                    if (!is_zero(s.ops[k].apply(v, *ab).coords) || !is_zero(ls[k].apply(v, *ab).coords)) {
                        r.closed = false;
                        if (r.failure.empty())
                            r.failure = op.name + " leaves the fixed subspace of " + s.names[k];
                    }
                }
            }
    return r;
}

// ---- polynomial de Rham forms ----

namespace {

using FormKey = std::pair<MultiIndex, std::vector<int>>;
using Form = std::map<FormKey, Rational>;

// Merges increasing index sets with the sign of the shuffle; 0 on a repeat.
int merge(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out)
{
    out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::vector<int> perm(out.size()), ones(out.size(), 1);
    for (std::size_t i = 0; i < perm.size(); ++i)
        perm[i] = static_cast<int>(i);
    std::sort(perm.begin(), perm.end(), [&](int x, int y) { return out[static_cast<std::size_t>(x)] < out[static_cast<std::size_t>(y)]; });
    std::vector<int> sorted;
    for (int p : perm)
        sorted.push_back(out[static_cast<std::size_t>(p)]);
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            return 0;
    out = sorted;
    return koszul_sign(perm, ones);
}

} // namespace

DeRhamModel de_rham_model(int d, int max_weight)
{
    if (d < 1 || d > 4 || max_weight < 0)
        throw ArgumentError("de Rham model needs 1 <= d <= 4 and max_weight >= 0");
    if (max_weight > 8)
        throw ResourceError("de Rham model weight bound above 8");
    DeRhamModel m;
    m.d = d;
    m.max_weight = max_weight;
    for (int w = 0; w <= max_weight; ++w)
        for (unsigned long mask = 0; mask < (1ul << d); ++mask) {
            std::vector<int> idx;
            for (int i = 0; i < d; ++i)
                if (mask & (1ul << i))
                    idx.push_back(i);
            const int k = static_cast<int>(idx.size());
            if (k > w)
                continue;
            for (const auto& mono : indices_of_total(d, w - k))
                m.basis[{k, w}].emplace_back(mono, idx);
        }
    for (auto& [b, keys] : m.basis) {
        std::sort(keys.begin(), keys.end());
        m.module.dims[b] = keys.size();
    }

    auto index_of = [&m](const BlockIndex& b, const FormKey& key) -> std::optional<std::size_t> {
        auto it = m.basis.find(b);
        if (it == m.basis.end())
            return std::nullopt;
        auto pos = std::lower_bound(it->second.begin(), it->second.end(), key);
        if (pos == it->second.end() || *pos != key)
            return std::nullopt;
        return static_cast<std::size_t>(pos - it->second.begin());
    };

    // d(t^a dt_I) = sum_j a_j t^{a - e_j} dt_j ^ dt_I
    m.differential.shift = 1;
    for (const auto& [b, keys] : m.basis) {
        const BlockIndex up{b.degree + 1, b.weight};
        if (m.module.dim(up) == 0)
            continue;
        SparseMatrix mat(m.module.dim(up), keys.size());
        for (std::size_t c = 0; c < keys.size(); ++c) {
            const auto& [mono, idx] = keys[c];
            for (int j = 0; j < d; ++j) {
                if (mono[static_cast<std::size_t>(j)] == 0)
                    continue;
                MultiIndex a = mono;
                --a[static_cast<std::size_t>(j)];
                std::vector<int> merged;
                int s = merge({j}, idx, merged);
                if (s == 0)
                    continue;
                auto r = index_of(up, {a, merged});
                mat.add(*r, c, Rational(s * mono[static_cast<std::size_t>(j)]));
            }
        }
        m.differential.blocks.emplace(b, std::move(mat));
    }

    m.wedge.name = "wedge";
    auto shared = std::make_shared<const decltype(m.basis)>(m.basis);
    m.wedge.apply = [shared, d, max_weight](const HomogeneousVector& x,
                                            const HomogeneousVector& y) -> std::optional<HomogeneousVector> {
        const auto* mp = shared.get();
        const BlockIndex out{x.block.degree + y.block.degree, x.block.weight + y.block.weight};
        if (out.weight > max_weight)
            return std::nullopt;
        auto it = mp->find(out);
        HomogeneousVector r{out, DenseVector(it == mp->end() ? 0 : it->second.size(), Rational(0))};
        auto ix = mp->find(x.block), iy = mp->find(y.block);
        if (ix == mp->end() || iy == mp->end() || it == mp->end())
            return r; // an empty block contributes zero
        const auto& kx = ix->second;
        const auto& ky = iy->second;
        for (std::size_t i = 0; i < kx.size(); ++i) {
            if (x.coords[i].is_zero())
                continue;
            for (std::size_t j = 0; j < ky.size(); ++j) {
                if (y.coords[j].is_zero())
                    continue;
                std::vector<int> merged;
                int s = merge(kx[i].second, ky[j].second, merged);
                if (s == 0)
                    continue;
                MultiIndex a(static_cast<std::size_t>(d));
                for (int t = 0; t < d; ++t)
                    a[static_cast<std::size_t>(t)] = kx[i].first[static_cast<std::size_t>(t)] + ky[j].first[static_cast<std::size_t>(t)];
                const auto& keys = it->second;
                auto pos = std::lower_bound(keys.begin(), keys.end(), FormKey{a, merged});
                r.coords[static_cast<std::size_t>(pos - keys.begin())] += x.coords[i] * y.coords[j] * Rational(s);
            }
        }
        return r;
    };
    m.differential.validate(m.module);
    return m;
}

BlockOperator DeRhamModel::contraction(const PolyVector& x) const
{
    if (x.dim() != d)
        throw ArgumentError("vector field dimension mismatch");
    for (const auto& [k, c] : x.terms())
        if (k.wedge.size() != 1 || total(k.mono) != 1)
            throw ArgumentError("contraction needs a vector field with linear coefficients");
    BlockOperator op;
    op.shift = -1;
    for (const auto& [b, keys] : basis) {
        const BlockIndex down{b.degree - 1, b.weight};
        if (b.degree == 0)
            continue;
        const auto& target = basis.at(down);
        SparseMatrix mat(target.size(), keys.size());
        for (std::size_t c = 0; c < keys.size(); ++c) {
            const auto& [mono, idx] = keys[c];
            // i_X(f dt_{i_1}..dt_{i_k}) = sum_r (-1)^r f X^{i_r} dt_{I minus i_r}
            for (std::size_t r = 0; r < idx.size(); ++r) {
                std::vector<int> rest = idx;
                rest.erase(rest.begin() + static_cast<long>(r));
                for (const auto& [k, coef] : x.terms()) {
                    if (k.wedge[0] != idx[r])
                        continue;
                    MultiIndex a = mono;
                    for (int t = 0; t < d; ++t)
                        a[static_cast<std::size_t>(t)] += k.mono[static_cast<std::size_t>(t)];
                    auto pos = std::lower_bound(target.begin(), target.end(), FormKey{a, rest});
                    mat.add(static_cast<std::size_t>(pos - target.begin()), c, coef * Rational(minus_one_pow(static_cast<long>(r))));
                }
            }
        }
        op.blocks.emplace(b, std::move(mat));
    }
    op.validate(module);
    return op;
}

std::string DeRhamModel::label(const BlockIndex& b, const DenseVector& v) const
{
    std::ostringstream s;
    const auto& keys = basis.at(b);
    bool first = true;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (v[i].is_zero())
            continue;
        if (!first)
            s << " + ";
        first = false;
        s << "(" << v[i] << ")";
        for (int t = 0; t < d; ++t)
            for (int e = 0; e < keys[i].first[static_cast<std::size_t>(t)]; ++e)
                s << "*t" << t + 1;
        for (int j : keys[i].second)
            s << "*dt" << j + 1;
    }
    return first ? "0" : s.str();
}

nlohmann::json block_operator_json(const BlockOperator& op)
{
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& [b, m] : op.blocks)
        blocks.push_back({{"degree", b.degree}, {"weight", b.weight}, {"matrix", matrix_json(m)}});
    return {{"type", "block_operator"}, {"shift", op.shift}, {"blocks", blocks}};
}

nlohmann::json fixed_subspace_json(const FixedSubspace& f)
{
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& [b, vs] : f.basis) {
        nlohmann::json vecs = nlohmann::json::array();
        for (const auto& v : vs) {
            nlohmann::json c = nlohmann::json::array();
            for (const auto& x : v)
                c.push_back(x.str());
            vecs.push_back(c);
        }
        blocks.push_back({{"degree", b.degree}, {"weight", b.weight}, {"basis", vecs}});
    }
    return {{"type", "fixed_subspace"}, {"dim", f.dim()}, {"blocks", blocks}};
}

} // namespace hoca
