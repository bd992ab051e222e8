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

#include "hoca/multi_index.hpp"

#include "hoca/errors.hpp"

#include <algorithm>
#include <numeric>

namespace hoca {

MultiIndex unit_index(int d, int i)
{
    if (i < 0 || i >= d)
        throw ArgumentError("variable index out of range");
    MultiIndex e = zero_index(d);
    e[static_cast<std::size_t>(i)] = 1;
    return e;
}

int total(const MultiIndex& a)
{
    return std::accumulate(a.begin(), a.end(), 0);
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b)
{
    if (a.size() != b.size())
        throw ArgumentError("multi-index dimension mismatch");
    MultiIndex c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = a[i] + b[i];
    return c;
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b)
{
    if (a.size() != b.size())
        throw ArgumentError("multi-index dimension mismatch");
    MultiIndex c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = a[i] - b[i];
    return c;
}

bool dominates(const MultiIndex& a, const MultiIndex& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i])
            return false;
    return true;
}

Rational falling_factorial(const MultiIndex& a, const MultiIndex& g)
{
    long long f = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (g[i] > a[i])
            return Rational(0);
        for (int k = 0; k < g[i]; ++k)
            f *= a[i] - k;
    }
    return Rational(f);
}

Rational multi_binomial(const MultiIndex& a, const MultiIndex& b)
{
    Rational r(1);
    for (std::size_t i = 0; i < a.size(); ++i)
        r *= binomial(a[i], b[i]);
    return r;
}

Rational multinomial(const MultiIndex& a, const std::vector<MultiIndex>& parts)
{
    Rational r(1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        r *= factorial(a[i]);
        for (const auto& p : parts)
            r /= factorial(p[i]);
    }
    return r;
}

std::vector<MultiIndex> sub_indices(const MultiIndex& a)
{
    std::vector<MultiIndex> out;
    MultiIndex cur(a.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == a.size()) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= a[i]; ++v) {
            cur[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<std::vector<MultiIndex>> compositions(const MultiIndex& a, int k)
{
    if (k < 1)
        throw ArgumentError("compositions need at least one part");
    std::vector<std::vector<MultiIndex>> out;
    std::vector<MultiIndex> cur;
    std::function<void(const MultiIndex&, int)> rec = [&](const MultiIndex& rest, int left) {
        if (left == 1) {
            cur.push_back(rest);
            out.push_back(cur);
            cur.pop_back();
            return;
        }
        for (const auto& b : sub_indices(rest)) {
            cur.push_back(b);
            rec(rest - b, left - 1);
            cur.pop_back();
        }
    };
    rec(a, k);
    return out;
}

std::vector<MultiIndex> indices_of_total(int d, int w)
{
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<std::size_t>(d), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == d - 1) {
            cur[static_cast<std::size_t>(i)] = left;
            out.push_back(cur);
            return;
        }
        for (int v = left; v >= 0; --v) {
            cur[static_cast<std::size_t>(i)] = v;
            rec(i + 1, left - v);
        }
    };
    if (d == 0) {
        if (w == 0)
            out.emplace_back();
        return out;
    }
    rec(0, w);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace hoca
