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

#ifndef HOCA_SERIES_HPP
#define HOCA_SERIES_HPP

#include "hoca/errors.hpp"
#include "hoca/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hoca {

/* Truncated power series sum_{k<=K} hbar^k c_k with coefficients in a module T.
 * T needs +, -, scaling by Rational, equality and an is_zero() test. Products
 * are supplied by the caller as bilinear maps; powers above K are dropped. */
template <class T>
class Truncated {
public:
    Truncated(int order, const T& zero) : c_(check(order) + 1, zero) {}
    explicit Truncated(std::vector<T> coefficients) : c_(std::move(coefficients))
    {
        if (c_.empty())
            throw ArgumentError("series needs at least one coefficient");
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const T& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
    T& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }
    const std::vector<T>& coefficients() const { return c_; }

    bool is_zero() const
    {
        for (const auto& c : c_)
            if (!is_zero_value(c))
                return false;
        return true;
    }

    // Lowest hbar power with a nonzero coefficient, or order()+1.
    int valuation() const
    {
        for (int k = 0; k <= order(); ++k)
            if (!is_zero_value(c_[static_cast<std::size_t>(k)]))
                return k;
        return order() + 1;
    }

    Truncated& operator+=(const Truncated& o)
    {
        same_order(o);
        for (std::size_t k = 0; k < c_.size(); ++k)
            c_[k] += o.c_[k];
        return *this;
    }
    Truncated& operator-=(const Truncated& o)
    {
        same_order(o);
        for (std::size_t k = 0; k < c_.size(); ++k)
            c_[k] -= o.c_[k];
        return *this;
    }
    Truncated& operator*=(const Rational& s)
    {
        for (auto& c : c_)
            c *= s;
        return *this;
    }
    friend Truncated operator+(Truncated a, const Truncated& b) { return a += b; }
    friend Truncated operator-(Truncated a, const Truncated& b) { return a -= b; }
    friend Truncated operator*(Truncated a, const Rational& s) { return a *= s; }
    friend Truncated operator*(const Rational& s, Truncated a) { return a *= s; }
    friend bool operator==(const Truncated& a, const Truncated& b) { return a.c_ == b.c_; }

    // Multiply by hbar^shift, dropping what falls past the order.
    Truncated shifted(int shift) const
    {
        Truncated out = *this;
        for (int k = order(); k >= 0; --k)
            out.c_[static_cast<std::size_t>(k)] =
                k - shift >= 0 ? c_[static_cast<std::size_t>(k - shift)] : zero_like(c_[0]);
        return out;
    }

    void same_order(const Truncated& o) const
    {
        if (o.order() != order())
            throw ArgumentError("series truncation orders differ: " + std::to_string(order()) + " vs " +
                                std::to_string(o.order()));
    }

private:
    static int check(int order)
    {
        if (order < 0)
            throw ArgumentError("negative truncation order");
        return order;
    }
    static bool is_zero_value(const T& v) { return v.is_zero(); }
    static T zero_like(const T& v)
    {
        T z = v;
        z *= Rational(0);
        return z;
    }

    std::vector<T> c_;
};

/* Truncated Cauchy product through a bilinear map f(T1, T2) -> R. */
template <class R, class T1, class T2, class F>
Truncated<R> cauchy(const Truncated<T1>& a, const Truncated<T2>& b, const R& zero, F&& f)
{
    if (a.order() != b.order())
        throw ArgumentError("series truncation orders differ");
    Truncated<R> out(a.order(), zero);
    for (int i = 0; i <= a.order(); ++i) {
        if (a[i].is_zero())
            continue;
        for (int j = 0; i + j <= a.order(); ++j) {
            if (b[j].is_zero())
                continue;
            out[i + j] += f(a[i], b[j]);
        }
    }
    return out;
}

using FormalSeries = Truncated<Rational>;

inline FormalSeries make_series(int order) { return FormalSeries(order, Rational(0)); }

// Cauchy product truncated at the common order.
FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b);

std::vector<std::string> to_strings(const FormalSeries& s);
FormalSeries series_from_strings(const std::vector<std::string>& parts);

} // namespace hoca

#endif
