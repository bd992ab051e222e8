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

#include "hoca/bar.hpp"

#include "hoca/errors.hpp"
#include "hoca/sign.hpp"

#include <functional>

namespace hoca {

int bar_degree(const BarKey& w)
{
    int s = 0;
    for (const auto& k : w)
        s += shifted_degree(k);
    return s;
}

BarElement BarElement::unit(int d)
{
    BarElement e(d);
    e.add({}, Rational(1));
    return e;
}

BarElement BarElement::word(int d, const std::vector<PolyDiffOp>& letters)
{
    BarElement out(d);
    BarKey cur;
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t j, Rational c) {
        if (j == letters.size()) {
            out.add(cur, c);
            return;
        }
        if (letters[j].dim() != d)
            throw ArgumentError("bar word letter dimension mismatch");
        for (const auto& [k, v] : letters[j].terms()) {
            cur.push_back(k);
            rec(j + 1, c * v);
            cur.pop_back();
        }
    };
    rec(0, Rational(1));
    return out;
}

BarElement BarElement::length_part(std::size_t n) const
{
    BarElement out(d_);
    for (const auto& [k, c] : terms_)
        if (k.size() == n)
            out.add(k, c);
    return out;
}

PolyDiffOp BarElement::letter_part() const
{
    PolyDiffOp out(d_);
    for (const auto& [k, c] : terms_)
        if (k.size() == 1)
            out.add_term(k[0], c);
    return out;
}

namespace {

void product_terms(BarElement& out, const BarKey& a, const BarKey& b, const Rational& c)
{
    const int d = out.dim();
    const std::size_t p = a.size(), q = b.size();
    BarKey cur;
    std::function<void(std::size_t, std::size_t, long, Rational)> rec = [&](std::size_t k, std::size_t pos, long left_deg,
                                                                            Rational coef) {
        if (k == p) {
            std::size_t keep = cur.size();
            for (std::size_t l = pos; l < q; ++l)
                cur.push_back(b[l]);
            out.add(cur, coef);
            cur.resize(keep);
            return;
        }
        const std::size_t keep = cur.size();
        long deg = left_deg;
        for (std::size_t s = pos; s <= q; ++s) {
            if (s > pos) {
                cur.push_back(b[s - 1]);
                deg += shifted_degree(b[s - 1]);
            }
            Rational sc = coef * Rational(minus_one_pow(deg * shifted_degree(a[k])));
            for (std::size_t e = s; e <= q; ++e) {
                std::vector<PolyDiffOp> args;
                for (std::size_t l = s; l < e; ++l)
                    args.push_back(PolyDiffOp::term(d, Rational(1), b[l].mono, b[l].word));
                PolyDiffOp ak = PolyDiffOp::term(d, Rational(1), a[k].mono, a[k].word);
                PolyDiffOp br = brace(ak, std::span<const PolyDiffOp>(args));
                long deg_after = deg;
                for (std::size_t l = s; l < e; ++l)
                    deg_after += shifted_degree(b[l]);
                for (const auto& [key, v] : br.terms()) {
                    cur.push_back(key);
                    rec(k + 1, e, deg_after, sc * v);
                    cur.pop_back();
                }
            }
        }
        cur.resize(keep);
    };
    rec(0, 0, 0, c);
}

} // namespace

BarElement m_product(const BarElement& x, const BarElement& y)
{
    if (x.dim() != y.dim())
        throw ArgumentError("bar product dimension mismatch");
    BarElement out(x.dim());
    for (const auto& [a, ca] : x.terms())
        for (const auto& [b, cb] : y.terms())
            product_terms(out, a, b, ca * cb);
    return out;
}

LinComb<BarPairKey> deconcat(const BarElement& x)
{
    LinComb<BarPairKey> out;
    for (const auto& [w, c] : x.terms())
        for (std::size_t i = 0; i <= w.size(); ++i)
            out.add(BarPairKey{BarKey(w.begin(), w.begin() + static_cast<long>(i)),
                               BarKey(w.begin() + static_cast<long>(i), w.end())},
                    c);
    return out;
}

LinComb<BarPairKey> tensor_product_m(const LinComb<BarPairKey>& u, const LinComb<BarPairKey>& v, int d)
{
    LinComb<BarPairKey> out;
    for (const auto& [ku, cu] : u)
        for (const auto& [kv, cv] : v) {
            BarElement x1(d), x2(d), y1(d), y2(d);
            x1.add(ku.first, Rational(1));
            x2.add(ku.second, Rational(1));
            y1.add(kv.first, Rational(1));
            y2.add(kv.second, Rational(1));
            long e = static_cast<long>(bar_degree(ku.second)) * bar_degree(kv.first);
            Rational s = cu * cv * Rational(minus_one_pow(e));
            BarElement l = m_product(x1, y1);
            BarElement r = m_product(x2, y2);
            for (const auto& [kl, cl] : l.terms())
                for (const auto& [kr, cr] : r.terms())
                    out.add(BarPairKey{kl, kr}, s * cl * cr);
        }
    return out;
}

BarElement inner_q(const BarElement& x)
{
    BarElement mu = BarElement::word(x.dim(), {PolyDiffOp::mu(x.dim())});
    BarElement out(x.dim());
    for (const auto& [w, c] : x.terms()) {
        BarElement single(x.dim());
        single.add(w, c);
        out += m_product(mu, single);
        out -= Rational(minus_one_pow(bar_degree(w))) * m_product(single, mu);
    }
    return out;
}

PolyDiffOp q_component(std::span<const PolyDiffOp> letters)
{
    if (letters.empty())
        throw ArgumentError("q_component needs at least one letter");
    const int d = letters[0].dim();
    return inner_q(BarElement::word(d, std::vector<PolyDiffOp>(letters.begin(), letters.end()))).letter_part();
}

} // namespace hoca
