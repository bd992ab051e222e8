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

#include "hoca/polynomial.hpp"

#include "hoca/errors.hpp"
#include "hoca/linalg.hpp"

namespace hoca {

Polynomial monomial(const MultiIndex& a, const Rational& c)
{
    Polynomial p;
    p.add(a, c);
    return p;
}

Polynomial constant_polynomial(int d, const Rational& c)
{
    return monomial(zero_index(d), c);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    Polynomial out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b)
            out.add(ea + eb, ca * cb);
    return out;
}

Polynomial derivative(const Polynomial& p, const MultiIndex& order)
{
    Polynomial out;
    for (const auto& [e, c] : p) {
        Rational f = falling_factorial(e, order);
        if (!f.is_zero())
            out.add(e - order, c * f);
    }
    return out;
}

Polynomial substitute(const Polynomial& p, const RationalMatrix& m, const std::vector<Rational>& shift)
{
    Polynomial out;
    if (p.is_zero())
        return out;
    const int d = static_cast<int>(p.begin()->first.size());
    if (static_cast<int>(m.size()) != d)
        throw ArgumentError("substitution matrix has wrong size");
    std::vector<Polynomial> images;
    for (int i = 0; i < d; ++i) {
        Polynomial img;
        for (int j = 0; j < d; ++j)
            img.add(unit_index(d, j), m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        if (!shift.empty())
            img.add(zero_index(d), shift[static_cast<std::size_t>(i)]);
        images.push_back(std::move(img));
    }
    for (const auto& [e, c] : p) {
        Polynomial term = constant_polynomial(d, c);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k)
                term = term * images[static_cast<std::size_t>(i)];
        out += term;
    }
    return out;
}

RationalMatrix invert(const RationalMatrix& m)
{
    const std::size_t n = m.size();
    SparseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a.set(i, j, m[i][j]);
    RationalMatrix inv(n, std::vector<Rational>(n));
    for (std::size_t col = 0; col < n; ++col) {
        DenseVector e(n);
        e[col] = Rational(1);
        auto sol = solve_linear(a, e);
        if (sol.rank != n || !sol.particular)
            throw ArgumentError("matrix is singular");
        for (std::size_t i = 0; i < n; ++i)
            inv[i][col] = (*sol.particular)[i];
    }
    return inv;
}

RationalMatrix to_rational(const std::vector<std::vector<int>>& m)
{
    RationalMatrix r;
    for (const auto& row : m) {
        std::vector<Rational> rr;
        for (int v : row)
            rr.emplace_back(v);
        r.push_back(std::move(rr));
    }
    return r;
}

} // namespace hoca
