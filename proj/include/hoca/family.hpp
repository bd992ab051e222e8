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

#ifndef HOCA_FAMILY_HPP
#define HOCA_FAMILY_HPP

#include "hoca/series.hpp"
#include "hoca/sign.hpp"

#include <algorithm>
#include <functional>
#include <span>
#include <vector>

namespace hoca {

/* Taylor coefficients Q^m : S^m(V) -> V of a degree +1 coderivation of the
 * symmetric coalgebra on a shifted space V. Arities above max_arity vanish. */
template <class T>
struct StructureFamily {
    int max_arity = 2;
    std::function<T(std::span<const T>)> apply;
    // Set when coefficients above max_arity exist but were not computed.
    bool truncated = false;
};

// Taylor coefficients psi^m : S^m(V) -> W of a coalgebra morphism.
template <class S, class T>
struct MorphismFamily {
    int max_arity = 1;
    std::function<T(std::span<const S>)> apply;
    bool truncated = false;
};

// Parity of the shifted degree of a homogeneous element.
template <class T>
using ParityFn = std::function<int(const T&)>;

namespace family_detail {

inline std::vector<std::vector<int>> subsets(int n, int lo, int hi)
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

inline std::vector<std::vector<std::vector<int>>> set_partitions(int n)
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

inline int block_sign(const std::vector<std::vector<int>>& blocks, std::span<const int> parity)
{
    std::vector<int> perm;
    for (const auto& b : blocks)
        perm.insert(perm.end(), b.begin(), b.end());
    return koszul_sign(perm, parity);
}

template <class T>
std::vector<T> pick(std::span<const T> x, const std::vector<int>& idx)
{
    std::vector<T> out;
    for (int i : idx)
        out.push_back(x[static_cast<std::size_t>(i)]);
    return out;
}

} // namespace family_detail

// P Q Q I_n on homogeneous inputs.
template <class T>
T structure_square(const StructureFamily<T>& q, std::span<const T> x, const ParityFn<T>& parity, const T& zero)
{
    using namespace family_detail;
    const int n = static_cast<int>(x.size());
    std::vector<int> deg;
    for (const auto& e : x)
        deg.push_back(parity(e));
    T out = zero;
    for (const auto& s : subsets(n, 1, std::min(n, q.max_arity))) {
        if (n - static_cast<int>(s.size()) + 1 > q.max_arity)
            continue;
        std::vector<int> rest;
        for (int i = 0; i < n; ++i)
            if (std::find(s.begin(), s.end(), i) == s.end())
                rest.push_back(i);
        auto inner_args = pick(x, s);
        std::vector<T> args{q.apply(inner_args)};
        for (int i : rest)
            args.push_back(x[static_cast<std::size_t>(i)]);
        T v = q.apply(args);
        v *= Rational(block_sign({s, rest}, deg));
        out += v;
    }
    return out;
}

// P Q_T psi I_n - P psi Q_S I_n on homogeneous inputs.
template <class S, class T>
T morphism_defect(const StructureFamily<S>& qs, const StructureFamily<T>& qt, const MorphismFamily<S, T>& psi,
                  std::span<const S> x, const ParityFn<S>& parity, const T& zero)
{
    using namespace family_detail;
    const int n = static_cast<int>(x.size());
    std::vector<int> deg;
    for (const auto& e : x)
        deg.push_back(parity(e));
    T out = zero;
    for (const auto& blocks : set_partitions(n)) {
        if (static_cast<int>(blocks.size()) > qt.max_arity)
            continue;
        std::vector<T> args;
        bool skip = false;
        for (const auto& b : blocks) {
            if (static_cast<int>(b.size()) > psi.max_arity) {
                skip = true;
                break;
            }
            auto sub = pick(x, b);
            args.push_back(psi.apply(sub));
        }
        if (skip)
            continue;
        T v = qt.apply(args);
        v *= Rational(block_sign(blocks, deg));
        out += v;
    }
    for (const auto& s : subsets(n, 1, std::min(n, qs.max_arity))) {
        if (n - static_cast<int>(s.size()) + 1 > psi.max_arity)
            continue;
        std::vector<int> rest;
        for (int i = 0; i < n; ++i)
            if (std::find(s.begin(), s.end(), i) == s.end())
                rest.push_back(i);
        auto inner_args = pick(x, s);
        std::vector<S> args{qs.apply(inner_args)};
        for (int i : rest)
            args.push_back(x[static_cast<std::size_t>(i)]);
        T v = psi.apply(args);
        v *= Rational(-block_sign({s, rest}, deg));
        out += v;
    }
    return out;
}

/* Multilinear series lift: sum over hbar-order tuples of total <= K of
 * f(a_1[k_1], .., a_n[k_n]) hbar^{k_1+..+k_n}. */
template <class R, class T, class F>
Truncated<R> series_apply(std::span<const Truncated<T>> args, const R& zero, int order, F&& f)
{
    Truncated<R> out(order, zero);
    std::vector<T> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
        if (i == args.size()) {
            out[used] += f(std::span<const T>(cur));
            return;
        }
        if (args[i].order() != order)
            throw ArgumentError("series truncation orders differ");
        for (int k = 0; used + k <= order; ++k) {
            if (args[i][k].is_zero())
                continue;
            cur.push_back(args[i][k]);
            rec(i + 1, used + k);
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

template <class T>
StructureFamily<Truncated<T>> lift(const StructureFamily<T>& q, int order, const T& zero)
{
    return {q.max_arity,
            [q, order, zero](std::span<const Truncated<T>> x) {
                return series_apply<T, T>(x, zero, order, [&](std::span<const T> c) { return q.apply(c); });
            },
            q.truncated};
}

template <class S, class T>
MorphismFamily<Truncated<S>, Truncated<T>> lift(const MorphismFamily<S, T>& psi, int order, const T& zero)
{
    return {psi.max_arity,
            [psi, order, zero](std::span<const Truncated<S>> x) {
                return series_apply<T, S>(x, zero, order, [&](std::span<const S> c) { return psi.apply(c); });
            },
            psi.truncated};
}

// Parity of a series whose nonzero coefficients share one parity.
template <class T>
ParityFn<Truncated<T>> series_parity(ParityFn<T> p)
{
    return [p](const Truncated<T>& s) {
        for (int k = 0; k <= s.order(); ++k)
            if (!s[k].is_zero())
                return p(s[k]);
        return 0;
    };
}

} // namespace hoca

#endif
