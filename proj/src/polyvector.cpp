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

#include "hoca/polyvector.hpp"

#include "hoca/errors.hpp"
#include "hoca/sign.hpp"

#include <algorithm>
#include <numeric>

namespace hoca {

namespace {

void check_dims(const PolyVector& a, const PolyVector& b)
{
    if (a.dim() != b.dim())
        throw ArgumentError("poly-vector dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
}

// Sorts an index list, returning the permutation sign, or 0 on a repeat.
int sort_wedge(std::vector<int>& w)
{
    std::vector<int> perm(w.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int x, int y) { return w[static_cast<std::size_t>(x)] < w[static_cast<std::size_t>(y)]; });
    std::vector<int> sorted;
    sorted.reserve(w.size());
    for (int p : perm)
        sorted.push_back(w[static_cast<std::size_t>(p)]);
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            return 0;
    int s = permutation_sign(perm);
    w = std::move(sorted);
    return s;
}

// Product of two basis terms in R[t, xi].
void add_product(PolyVector& out, const PolyVectorKey& a, const PolyVectorKey& b, const Rational& c)
{
    std::vector<int> w = a.wedge;
    w.insert(w.end(), b.wedge.begin(), b.wedge.end());
    int s = sort_wedge(w);
    if (s == 0)
        return;
    out.add_term(PolyVectorKey{a.mono + b.mono, std::move(w)}, s > 0 ? c : -c);
}

// Right derivative with respect to xi_i; returns sign 0 if i does not occur.
int right_derivative(const std::vector<int>& w, int i, std::vector<int>& rest)
{
    auto it = std::find(w.begin(), w.end(), i);
    if (it == w.end())
        return 0;
    auto pos = static_cast<long>(it - w.begin());
    rest = w;
    rest.erase(rest.begin() + pos);
    return minus_one_pow(static_cast<long>(w.size()) - 1 - pos);
}

// sum_i (A <-d/dxi_i)(d_{t_i} B) for single terms
void add_half_bracket(PolyVector& out, const PolyVectorKey& a, const Rational& ca, const PolyVectorKey& b,
                      const Rational& cb, const Rational& scale)
{
    const int d = out.dim();
    for (int i = 0; i < d; ++i) {
        std::vector<int> rest;
        int s = right_derivative(a.wedge, i, rest);
        if (s == 0)
            continue;
        MultiIndex e = unit_index(d, i);
        Rational f = falling_factorial(b.mono, e);
        if (f.is_zero())
            continue;
        PolyVectorKey left{a.mono, rest};
        PolyVectorKey right{b.mono - e, b.wedge};
        add_product(out, left, right, scale * ca * cb * f * Rational(s));
    }
}

} // namespace

PolyVector::PolyVector(int d) : d_(d)
{
    if (d < 0)
        throw ArgumentError("negative dimension");
}

PolyVector PolyVector::term(int d, const Rational& c, const MultiIndex& mono, const std::vector<int>& wedge)
{
    PolyVector p(d);
    if (static_cast<int>(mono.size()) != d)
        throw ArgumentError("monomial length differs from dimension");
    for (int e : mono)
        if (e < 0)
            throw ArgumentError("negative exponent");
    for (int i : wedge)
        if (i < 0 || i >= d)
            throw ArgumentError("wedge index out of range");
    std::vector<int> w = wedge;
    int s = sort_wedge(w);
    if (s != 0)
        p.terms_.add(PolyVectorKey{mono, std::move(w)}, s > 0 ? c : -c);
    return p;
}

PolyVector PolyVector::function(int d, const Polynomial& f)
{
    PolyVector p(d);
    for (const auto& [e, c] : f)
        p.add_term(PolyVectorKey{e, {}}, c);
    return p;
}

void PolyVector::add_term(const PolyVectorKey& k, const Rational& c)
{
    if (static_cast<int>(k.mono.size()) != d_)
        throw ArgumentError("monomial length differs from dimension");
    terms_.add(k, c);
}

std::set<int> PolyVector::degrees() const
{
    std::set<int> out;
    for (const auto& [k, c] : terms_)
        out.insert(shifted_degree(k));
    return out;
}

std::optional<int> PolyVector::degree() const
{
    auto ds = degrees();
    if (ds.size() != 1)
        return std::nullopt;
    return *ds.begin();
}

PolyVector PolyVector::homogeneous_part(int degree) const
{
    PolyVector out(d_);
    for (const auto& [k, c] : terms_)
        if (shifted_degree(k) == degree)
            out.terms_.add(k, c);
    return out;
}

Polynomial PolyVector::component(const std::vector<int>& wedge) const
{
    Polynomial p;
    for (const auto& [k, c] : terms_)
        if (k.wedge == wedge)
            p.add(k.mono, c);
    return p;
}

PolyVector& PolyVector::operator+=(const PolyVector& o)
{
    check_dims(*this, o);
    terms_ += o.terms_;
    return *this;
}

PolyVector& PolyVector::operator-=(const PolyVector& o)
{
    check_dims(*this, o);
    terms_ -= o.terms_;
    return *this;
}

PolyVector& PolyVector::operator*=(const Rational& s)
{
    terms_ *= s;
    return *this;
}

PolyVector wedge(const PolyVector& a, const PolyVector& b)
{
    check_dims(a, b);
    PolyVector out(a.dim());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            add_product(out, ka, kb, ca * cb);
    return out;
}

PolyVector schouten(const PolyVector& a, const PolyVector& b)
{
    check_dims(a, b);
    PolyVector out(a.dim());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            add_half_bracket(out, ka, ca, kb, cb, Rational(1));
            long e = static_cast<long>(shifted_degree(ka)) * shifted_degree(kb);
            add_half_bracket(out, kb, cb, ka, ca, Rational(-minus_one_pow(e)));
        }
    return out;
}

bool poisson_check(const PolyVector& pi)
{
    if (pi.is_zero())
        return true;
    auto deg = pi.degree();
    if (!deg || *deg != 1)
        throw ArgumentError("poisson_check expects a homogeneous bivector field (shifted degree 1)");
    return schouten(pi, pi).is_zero();
}

PolyVector multiply(const Polynomial& f, const PolyVector& a)
{
    return wedge(PolyVector::function(a.dim(), f), a);
}

PolyVector coefficient_derivative(const PolyVector& a, const MultiIndex& order)
{
    PolyVector out(a.dim());
    for (const auto& [k, c] : a.terms()) {
        Rational f = falling_factorial(k.mono, order);
        if (!f.is_zero())
            out.add_term(PolyVectorKey{k.mono - order, k.wedge}, c * f);
    }
    return out;
}

Polynomial apply_vector_field(const PolyVector& x, const Polynomial& f)
{
    Polynomial out;
    for (const auto& [k, c] : x.terms()) {
        if (k.wedge.size() != 1)
            throw ArgumentError("apply_vector_field expects a vector field");
        out += monomial(k.mono, c) * derivative(f, unit_index(x.dim(), k.wedge[0]));
    }
    return out;
}

PolyVector translate(const PolyVector& a, const std::vector<Rational>& shift)
{
    const int d = a.dim();
    RationalMatrix id(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i)
        id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rational(1);
    PolyVector out(d);
    for (const auto& [k, c] : a.terms())
        for (const auto& [e, v] : substitute(monomial(k.mono, c), id, shift))
            out.add_term(PolyVectorKey{e, k.wedge}, v);
    return out;
}

PolyVector linear_change(const PolyVector& a, const RationalMatrix& g)
{
    const int d = a.dim();
    RationalMatrix ginv = invert(g);
    PolyVector out(d);
    for (const auto& [k, c] : a.terms()) {
        PolyVector acc = PolyVector::function(d, substitute(monomial(k.mono, c), ginv, {}));
        for (int j : k.wedge) {
            PolyVector col(d);
            for (int i = 0; i < d; ++i)
                col += PolyVector::term(d, g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], zero_index(d), {i});
            acc = wedge(acc, col);
        }
        out += acc;
    }
    return out;
}

} // namespace hoca
