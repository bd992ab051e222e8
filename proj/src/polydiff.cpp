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

#include "hoca/polydiff.hpp"

#include "hoca/errors.hpp"
#include "hoca/sign.hpp"

#include <functional>

namespace hoca {

namespace {

void check_dims(int a, int b)
{
    if (a != b)
        throw ArgumentError("poly-differential operator dimension mismatch: " + std::to_string(a) + " vs " +
                            std::to_string(b));
}

struct Inserted {
    const PolyDiffKey* key;
    Rational coef;
};

/* Composite of one D-term with one term of each argument placed at the given
 * increasing slot positions. Slot j of D receiving E = g t^a (x)_r d^{e_r}
 * expands d^{beta}(t^a prod_r d^{e_r} f_r) by the multinomial Leibniz rule. */
void compose_terms(LinComb<PolyDiffKey>& out, const PolyDiffKey& dk, const Rational& dc,
                   const std::vector<Inserted>& ins, const std::vector<std::size_t>& pos, int d)
{
    const std::size_t m = dk.word.size();
    long sign_exp = 0;
    long args_before = 0;
    std::size_t s = 0;
    for (std::size_t j = 0; j < m; ++j) {
        if (s < pos.size() && pos[s] == j) {
            sign_exp += static_cast<long>(shifted_degree(*ins[s].key)) * args_before;
            args_before += static_cast<long>(ins[s].key->word.size());
            ++s;
        } else {
            ++args_before;
        }
    }
    Rational base = dc * Rational(minus_one_pow(sign_exp));
    for (const auto& e : ins)
        base *= e.coef;

    DiffWord word;
    MultiIndex mono = dk.mono;
    std::function<void(std::size_t, std::size_t, Rational)> rec = [&](std::size_t j, std::size_t s2, Rational c) {
        if (j == m) {
            out.add(PolyDiffKey{mono, word}, c);
            return;
        }
        if (s2 < pos.size() && pos[s2] == j) {
            const PolyDiffKey& ek = *ins[s2].key;
            const MultiIndex& beta = dk.word[j];
            const int k = static_cast<int>(ek.word.size());
            for (const auto& parts : compositions(beta, k + 1)) {
                Rational f = falling_factorial(ek.mono, parts[0]);
                if (f.is_zero())
                    continue;
                Rational coef = c * f * multinomial(beta, parts);
                MultiIndex saved = mono;
                mono = mono + (ek.mono - parts[0]);
                for (int r = 0; r < k; ++r)
                    word.push_back(ek.word[static_cast<std::size_t>(r)] + parts[static_cast<std::size_t>(r + 1)]);
                rec(j + 1, s2 + 1, coef);
                word.resize(word.size() - static_cast<std::size_t>(k));
                mono = std::move(saved);
            }
        } else {
            word.push_back(dk.word[j]);
            rec(j + 1, s2, c);
            word.pop_back();
        }
    };
    (void)d;
    rec(0, 0, base);
}

} // namespace

int total_order(const DiffWord& w)
{
    int t = 0;
    for (const auto& a : w)
        t += total(a);
    return t;
}

MultiIndex multidegree(const DiffWord& w, int d)
{
    MultiIndex g = zero_index(d);
    for (const auto& a : w)
        g = g + a;
    return g;
}

PolyDiffOp::PolyDiffOp(int d) : d_(d)
{
    if (d < 0)
        throw ArgumentError("negative dimension");
}

PolyDiffOp PolyDiffOp::term(int d, const Rational& c, const MultiIndex& mono, const DiffWord& word)
{
    PolyDiffOp p(d);
    p.add_term(PolyDiffKey{mono, word}, c);
    return p;
}

PolyDiffOp PolyDiffOp::function(int d, const Polynomial& f)
{
    PolyDiffOp p(d);
    for (const auto& [e, c] : f)
        p.add_term(PolyDiffKey{e, {}}, c);
    return p;
}

PolyDiffOp PolyDiffOp::mu(int d)
{
    return term(d, Rational(1), zero_index(d), {zero_index(d), zero_index(d)});
}

void PolyDiffOp::add_term(const PolyDiffKey& k, const Rational& c)
{
    if (static_cast<int>(k.mono.size()) != d_)
        throw ArgumentError("monomial length differs from dimension");
    for (int e : k.mono)
        if (e < 0)
            throw ArgumentError("negative exponent");
    for (const auto& a : k.word) {
        if (static_cast<int>(a.size()) != d_)
            throw ArgumentError("slot multi-index length differs from dimension");
        for (int e : a)
            if (e < 0)
                throw ArgumentError("negative derivative order");
    }
    terms_.add(k, c);
}

std::set<int> PolyDiffOp::degrees() const
{
    std::set<int> out;
    for (const auto& [k, c] : terms_)
        out.insert(shifted_degree(k));
    return out;
}

std::optional<int> PolyDiffOp::degree() const
{
    auto ds = degrees();
    if (ds.size() != 1)
        return std::nullopt;
    return *ds.begin();
}

std::map<int, PolyDiffOp> PolyDiffOp::homogeneous_components() const
{
    std::map<int, PolyDiffOp> out;
    for (const auto& [k, c] : terms_)
        out.try_emplace(shifted_degree(k), d_).first->second.terms_.add(k, c);
    return out;
}

PolyDiffOp& PolyDiffOp::operator+=(const PolyDiffOp& o)
{
    check_dims(d_, o.d_);
    terms_ += o.terms_;
    return *this;
}

PolyDiffOp& PolyDiffOp::operator-=(const PolyDiffOp& o)
{
    check_dims(d_, o.d_);
    terms_ -= o.terms_;
    return *this;
}

PolyDiffOp& PolyDiffOp::operator*=(const Rational& s)
{
    terms_ *= s;
    return *this;
}

std::vector<CoproductTerm> ul_coproduct(const MultiIndex& a)
{
    std::vector<CoproductTerm> out;
    for (const auto& b : sub_indices(a))
        out.push_back(CoproductTerm{b, a - b, multi_binomial(a, b)});
    return out;
}

PolyDiffOp brace(const PolyDiffOp& D, std::span<const PolyDiffOp> args)
{
    for (const auto& e : args)
        check_dims(D.dim(), e.dim());
    if (args.empty())
        return D;
    const std::size_t n = args.size();
    LinComb<PolyDiffKey> out;
    std::vector<Inserted> ins(n);
    std::vector<std::size_t> pos(n);

    for (const auto& [dk, dc] : D.terms()) {
        const std::size_t m = dk.word.size();
        if (m < n)
            continue;
        // every choice of one term per argument, then every slot placement
        std::function<void(std::size_t)> pick = [&](std::size_t s) {
            if (s == n) {
                std::function<void(std::size_t, std::size_t)> place = [&](std::size_t r, std::size_t from) {
                    if (r == n) {
                        compose_terms(out, dk, dc, ins, pos, D.dim());
                        return;
                    }
                    for (std::size_t j = from; j + (n - r) <= m; ++j) {
                        pos[r] = j;
                        place(r + 1, j + 1);
                    }
                };
                place(0, 0);
                return;
            }
            for (const auto& [ek, ec] : args[s].terms()) {
                ins[s] = Inserted{&ek, ec};
                pick(s + 1);
            }
        };
        pick(0);
    }
    PolyDiffOp result(D.dim());
    for (const auto& [k, c] : out)
        result.add_term(k, c);
    return result;
}

PolyDiffOp brace(const PolyDiffOp& D, std::initializer_list<PolyDiffOp> args)
{
    std::vector<PolyDiffOp> v(args);
    return brace(D, std::span<const PolyDiffOp>(v));
}

PolyDiffOp cup(const PolyDiffOp& D, const PolyDiffOp& E)
{
    check_dims(D.dim(), E.dim());
    PolyDiffOp out(D.dim());
    for (const auto& [dk, dc] : D.terms())
        for (const auto& [ek, ec] : E.terms()) {
            DiffWord w = dk.word;
            w.insert(w.end(), ek.word.begin(), ek.word.end());
            long e = (static_cast<long>(shifted_degree(dk)) + 1) * shifted_degree(ek);
            out.add_term(PolyDiffKey{dk.mono + ek.mono, std::move(w)}, dc * ec * Rational(minus_one_pow(e)));
        }
    return out;
}

PolyDiffOp hochschild_d(const PolyDiffOp& D)
{
    PolyDiffOp mu = PolyDiffOp::mu(D.dim());
    PolyDiffOp out(D.dim());
    for (const auto& [deg, part] : D.homogeneous_components()) {
        out += brace(mu, {part});
        out -= Rational(minus_one_pow(deg)) * brace(part, {mu});
    }
    return out;
}

PolyDiffOp g_bracket(const PolyDiffOp& D, const PolyDiffOp& E)
{
    check_dims(D.dim(), E.dim());
    PolyDiffOp out(D.dim());
    auto dc = D.homogeneous_components();
    auto ec = E.homogeneous_components();
    for (const auto& [da, a] : dc)
        for (const auto& [db, b] : ec) {
            out += brace(a, {b});
            out -= Rational(minus_one_pow(static_cast<long>(da) * db)) * brace(b, {a});
        }
    return out;
}

Polynomial evaluate(const PolyDiffOp& D, std::span<const Polynomial> args)
{
    Polynomial out;
    for (const auto& [k, c] : D.terms()) {
        if (k.word.size() != args.size())
            throw ArgumentError("evaluate: argument count differs from word length");
        Polynomial v = monomial(k.mono, c);
        for (std::size_t j = 0; j < args.size(); ++j)
            v = v * derivative(args[j], k.word[j]);
        out += v;
    }
    return out;
}

PolyDiffOp multiply(const Polynomial& f, const PolyDiffOp& D)
{
    PolyDiffOp out(D.dim());
    for (const auto& [e, a] : f)
        for (const auto& [k, c] : D.terms())
            out.add_term(PolyDiffKey{k.mono + e, k.word}, a * c);
    return out;
}

PolyDiffOp translate(const PolyDiffOp& D, const std::vector<Rational>& shift)
{
    const int d = D.dim();
    RationalMatrix id(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i)
        id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rational(1);
    PolyDiffOp out(d);
    for (const auto& [k, c] : D.terms())
        for (const auto& [e, v] : substitute(monomial(k.mono, c), id, shift))
            out.add_term(PolyDiffKey{e, k.word}, v);
    return out;
}

PolyDiffOp linear_change(const PolyDiffOp& D, const RationalMatrix& g)
{
    const int d = D.dim();
    RationalMatrix ginv = invert(g);
    RationalMatrix gt(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
    for (std::size_t i = 0; i < gt.size(); ++i)
        for (std::size_t j = 0; j < gt.size(); ++j)
            gt[i][j] = g[j][i];
    PolyDiffOp out(d);
    for (const auto& [k, c] : D.terms()) {
        // each slot d_t^beta becomes prod_j (sum_i g_ij d_{y_i})^{beta_j}
        std::vector<std::pair<PolyDiffKey, Rational>> acc;
        for (const auto& [e, v] : substitute(monomial(k.mono, c), ginv, {}))
            acc.emplace_back(PolyDiffKey{e, {}}, v);
        for (const auto& slot : k.word) {
            Polynomial sym = substitute(monomial(slot), gt, {});
            std::vector<std::pair<PolyDiffKey, Rational>> next;
            for (const auto& [key, v] : acc)
                for (const auto& [e, w] : sym) {
                    PolyDiffKey nk = key;
                    nk.word.push_back(e);
                    next.emplace_back(std::move(nk), v * w);
                }
            acc = std::move(next);
        }
        for (const auto& [key, v] : acc)
            out.add_term(key, v);
    }
    return out;
}

} // namespace hoca
