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

#include "hoca/twist.hpp"

#include "hoca/json_io.hpp"
#include "hoca/sign.hpp"

#include <map>
#include <numeric>

namespace hoca {

int shifted_parity(const PolyDiffOp& x)
{
    if (x.is_zero())
        return 0;
    auto deg = x.degree();
    if (!deg)
        throw ArgumentError("element is not homogeneous");
    return is_odd(*deg - 1) ? 1 : 0;
}

int shifted_parity(const PolyVector& x)
{
    if (x.is_zero())
        return 0;
    auto deg = x.degree();
    if (!deg)
        throw ArgumentError("element is not homogeneous");
    return is_odd(*deg - 1) ? 1 : 0;
}

SeriesOp zero_series(int d, int order) { return SeriesOp(order, PolyDiffOp(d)); }
SeriesVec zero_series_vec(int d, int order) { return SeriesVec(order, PolyVector(d)); }

void validate_mc_element(const SeriesOp& w)
{
    if (!w[0].is_zero())
        throw ArgumentError("MC element has a nonzero hbar^0 part");
    for (int k = 1; k <= w.order(); ++k)
        for (const auto& [key, c] : w[k].terms())
            if (key.word.size() != 2)
                throw ArgumentError("MC element must consist of 2-slot words (degree 1)");
}

void validate_mc_element(const SeriesVec& w)
{
    if (!w[0].is_zero())
        throw ArgumentError("MC element has a nonzero hbar^0 part");
    for (int k = 1; k <= w.order(); ++k)
        for (const auto& [key, c] : w[k].terms())
            if (key.wedge.size() != 2)
                throw ArgumentError("MC element must be a bivector series (degree 1)");
}

namespace {

PolyDiffOp brace1(const PolyDiffOp& a, const PolyDiffOp& b) { return brace(a, {b}); }

SeriesOp series_brace(const SeriesOp& x, std::span<const SeriesOp> ys)
{
    std::vector<SeriesOp> all{x};
    all.insert(all.end(), ys.begin(), ys.end());
    const int d = x[0].dim();
    return series_apply<PolyDiffOp, PolyDiffOp>(all, PolyDiffOp(d), x.order(), [](std::span<const PolyDiffOp> c) {
        return brace(c[0], c.subspan(1));
    });
}

std::string residual_text(const SeriesOp& r)
{
    return series_polydiff_json(r).dump();
}

} // namespace

SeriesOp mc_residual_b(const SeriesOp& w)
{
    const int d = w[0].dim();
    SeriesOp out(w.order(), PolyDiffOp(d));
    for (int k = 0; k <= w.order(); ++k)
        out[k] = hochschild_d(w[k]);
    out += cauchy(w, w, PolyDiffOp(d), brace1);
    return out;
}

bool mc_check_b(const SeriesOp& w)
{
    validate_mc_element(w);
    return mc_residual_b(w).is_zero();
}

bool mc_check_l(const StructureFamily<PolyDiffOp>& q, const SeriesOp& w)
{
    validate_mc_element(w);
    return mc_residual_l(q, w, PolyDiffOp(w[0].dim())).is_zero();
}

bool mc_check_l(const StructureFamily<PolyVector>& q, const SeriesVec& w)
{
    validate_mc_element(w);
    return mc_residual_l(q, w, PolyVector(w[0].dim())).is_zero();
}

// ---- B-infinity twisting ----

TwistedB twist_b(const SeriesOp& w)
{
    validate_mc_element(w);
    SeriesOp r = mc_residual_b(w);
    if (!r.is_zero())
        throw McFailure("Maurer-Cartan equation fails; residual " + residual_text(r), r.valuation());
    return TwistedB{w};
}

SeriesOp TwistedB::differential(const SeriesOp& g) const
{
    std::vector<SeriesOp> one{g};
    return q(one);
}

SeriesOp TwistedB::q(std::span<const SeriesOp> g) const
{
    const int d = omega[0].dim();
    const int K = omega.order();
    if (g.empty())
        throw ArgumentError("twisted coefficients start at arity 1");
    SeriesOp mw = omega;
    mw[0] += PolyDiffOp::mu(d);
    SeriesOp out = series_brace(mw, g);
    if (g.size() == 1) {
        // - (-1)^{|g|} g{mu + w}, per homogeneous component of each coefficient
        for (int k = 0; k <= K; ++k)
            for (const auto& [deg, part] : g[0][k].homogeneous_components()) {
                SeriesOp single(K, PolyDiffOp(d));
                single[k] = part;
                std::vector<SeriesOp> arg{mw};
                SeriesOp t = series_brace(single, arg);
                out += is_odd(deg) ? t : t * Rational(-1);
            }
    }
    return out;
}

SeriesOp TwistedB::m(const SeriesOp& x, std::span<const SeriesOp> ys) const
{
    if (ys.empty())
        return x;
    return series_brace(x, ys);
}

// ---- group-like exponential ----

namespace {

using SymKeyOp = std::vector<PolyDiffKey>;
using SymElt = LinComb<std::pair<int, SymKeyOp>>; // (hbar order, sorted monomial)
using SymTens = LinComb<std::tuple<int, SymKeyOp, SymKeyOp>>;

int key_parity(const PolyDiffKey& k) { return static_cast<int>(k.word.size()) % 2; }

// Sorts with the Koszul sign; 0 when an odd factor repeats.
int normalize(SymKeyOp& seq)
{
    std::vector<int> perm(seq.size()), deg(seq.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
        return seq[static_cast<std::size_t>(a)] < seq[static_cast<std::size_t>(b)];
    });
    for (std::size_t i = 0; i < seq.size(); ++i)
        deg[i] = key_parity(seq[i]);
    int s = koszul_sign(perm, deg);
    SymKeyOp sorted;
    for (int p : perm)
        sorted.push_back(seq[static_cast<std::size_t>(p)]);
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1] && key_parity(sorted[i]))
            return 0;
    seq = std::move(sorted);
    return s;
}

SymElt sym_product(const SymElt& a, const SymElt& b, int K)
{
    SymElt out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            if (ka.first + kb.first > K)
                continue;
            SymKeyOp seq = ka.second;
            seq.insert(seq.end(), kb.second.begin(), kb.second.end());
            int s = normalize(seq);
            if (s != 0)
                out.add({ka.first + kb.first, seq}, ca * cb * Rational(s));
        }
    return out;
}

SymElt exponential(const SeriesOp& w)
{
    const int K = w.order();
    SymElt gen, power, out;
    for (int k = 0; k <= K; ++k)
        for (const auto& [key, c] : w[k].terms())
            gen.add({k, SymKeyOp{key}}, c);
    power.add({0, SymKeyOp{}}, Rational(1));
    out = power;
    Rational inv(1);
    for (int n = 1; n <= K; ++n) {
        power = sym_product(power, gen, K);
        inv /= Rational(n);
        for (const auto& [k, c] : power)
            out.add(k, c * inv);
    }
    return out;
}

SymTens coproduct(const SymElt& x)
{
    SymTens out;
    for (const auto& [key, c] : x) {
        const auto& mono = key.second;
        const int n = static_cast<int>(mono.size());
        std::vector<int> deg;
        for (const auto& m : mono)
            deg.push_back(key_parity(m));
        for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
            std::vector<int> perm;
            SymKeyOp l, r;
            for (int i = 0; i < n; ++i)
                if (mask & (1ul << i)) {
                    perm.push_back(i);
                    l.push_back(mono[static_cast<std::size_t>(i)]);
                }
            for (int i = 0; i < n; ++i)
                if (!(mask & (1ul << i))) {
                    perm.push_back(i);
                    r.push_back(mono[static_cast<std::size_t>(i)]);
                }
            out.add({key.first, l, r}, c * Rational(koszul_sign(perm, deg)));
        }
    }
    return out;
}

SymTens tensor(const SymElt& a, const SymElt& b, int K)
{
    SymTens out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b)
            if (ka.first + kb.first <= K)
                out.add({ka.first + kb.first, ka.second, kb.second}, ca * cb);
    return out;
}

} // namespace

bool grouplike_check(const SeriesOp& w)
{
    if (!w[0].is_zero())
        throw ArgumentError("group-like check needs an element without hbar^0 part");
    SymElt e = exponential(w);
    return coproduct(e) == tensor(e, e, w.order());
}

// ---- Moyal ----

SeriesOp moyal_series(const PolyDiffOp& pi, int order)
{
    const int d = pi.dim();
    if (order < 1)
        throw ArgumentError("Moyal series needs order >= 1");
    std::map<std::pair<MultiIndex, MultiIndex>, Rational> c;
    for (const auto& [key, v] : pi.terms()) {
        if (key.word.size() != 2 || total(key.mono) != 0)
            throw ArgumentError("Moyal input must be a constant-coefficient combination of 2-slot words");
        c[{key.word[0], key.word[1]}] = v;
    }
    for (const auto& [ab, v] : c) {
        auto it = c.find({ab.second, ab.first});
        Rational other = it == c.end() ? Rational(0) : it->second;
        if (other != -v)
            throw ArgumentError("Moyal input must be antisymmetric");
    }
    SeriesOp out(order, PolyDiffOp(d));
    std::map<std::pair<MultiIndex, MultiIndex>, Rational> power{{{zero_index(d), zero_index(d)}, Rational(1)}};
    Rational inv(1);
    for (int n = 1; n <= order; ++n) {
        std::map<std::pair<MultiIndex, MultiIndex>, Rational> next;
        for (const auto& [p, pv] : power)
            for (const auto& [q, qv] : c) {
                MultiIndex a = p.first, b = p.second;
                for (int i = 0; i < d; ++i) {
                    a[static_cast<std::size_t>(i)] += q.first[static_cast<std::size_t>(i)];
                    b[static_cast<std::size_t>(i)] += q.second[static_cast<std::size_t>(i)];
                }
                next[{a, b}] += pv * qv;
            }
        power = std::move(next);
        inv /= Rational(n);
        for (const auto& [p, v] : power)
            if (!v.is_zero())
                out[n].add_term(PolyDiffKey{zero_index(d), {p.first, p.second}}, v * inv);
    }
    return out;
}

// ---- families ----

StructureFamily<PolyVector> schouten_family(int d)
{
    StructureFamily<PolyVector> f;
    f.max_arity = 2;
    f.apply = [d](std::span<const PolyVector> x) {
        PolyVector out(d);
        if (x.size() != 2)
            return out;
        for (int deg : x[0].degrees()) {
            PolyVector b = schouten(x[0].homogeneous_part(deg), x[1]);
            out += is_odd(deg - 1) ? b * Rational(-1) : b;
        }
        return out;
    };
    return f;
}

StructureFamily<PolyVector> transferred_family(const TransferContext& ctx)
{
    StructureFamily<PolyVector> f;
    f.max_arity = ctx.max_arity();
    f.truncated = true;
    const int d = ctx.dim();
    f.apply = [&ctx, d](std::span<const PolyVector> x) {
        if (x.size() < 2)
            return PolyVector(d);
        return ctx.q1_raw(x);
    };
    return f;
}

MorphismFamily<PolyVector, PolyDiffOp> transfer_morphism(const TransferContext& ctx)
{
    MorphismFamily<PolyVector, PolyDiffOp> f;
    f.max_arity = ctx.max_arity();
    f.truncated = true;
    f.apply = [&ctx](std::span<const PolyVector> x) { return ctx.psi_raw(x); };
    return f;
}

} // namespace hoca
