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

#include "hoca/coalgebra.hpp"

#include "hoca/errors.hpp"
#include "hoca/sign.hpp"

#include <algorithm>
#include <numeric>

namespace hoca {

int Alphabet::degree(int letter) const
{
    if (letter < 0 || letter >= size())
        throw ArgumentError("letter " + std::to_string(letter) + " not in alphabet");
    return degrees[static_cast<std::size_t>(letter)];
}

int word_degree(const Alphabet& a, const TensorWord& w)
{
    int s = 0;
    for (int l : w)
        s += a.degree(l);
    return s;
}

std::vector<TensorPair> deconcat(const TensorWord& w)
{
    std::vector<TensorPair> out;
    for (std::size_t i = 0; i <= w.size(); ++i)
        out.emplace_back(TensorWord(w.begin(), w.begin() + static_cast<long>(i)),
                         TensorWord(w.begin() + static_cast<long>(i), w.end()));
    return out;
}

LinComb<TensorPair> deconcat(const TensorComb& x)
{
    LinComb<TensorPair> out;
    for (const auto& [w, c] : x)
        for (auto& p : deconcat(w))
            out.add(std::move(p), c);
    return out;
}

TensorComb shuffle(const Alphabet& a, const TensorWord& u, const TensorWord& v)
{
    TensorComb out;
    std::vector<int> suffix_deg(u.size() + 1, 0); // degree of u[i..]
    for (std::size_t i = u.size(); i-- > 0;)
        suffix_deg[i] = suffix_deg[i + 1] + a.degree(u[i]);
    TensorWord cur;
    std::function<void(std::size_t, std::size_t, long)> rec = [&](std::size_t i, std::size_t j, long e) {
        if (i == u.size() && j == v.size()) {
            out.add(cur, Rational(minus_one_pow(e)));
            return;
        }
        if (i < u.size()) {
            cur.push_back(u[i]);
            rec(i + 1, j, e);
            cur.pop_back();
        }
        if (j < v.size()) {
            cur.push_back(v[j]);
            rec(i, j + 1, e + static_cast<long>(a.degree(v[j])) * suffix_deg[i]);
            cur.pop_back();
        }
    };
    rec(0, 0, 0);
    return out;
}

TensorComb shuffle(const Alphabet& a, const TensorComb& x, const TensorComb& y)
{
    TensorComb out;
    for (const auto& [u, cu] : x)
        for (const auto& [v, cv] : y)
            out.add(shuffle(a, u, v), cu * cv);
    return out;
}

namespace {

TensorWord sorted_copy(TensorWord w)
{
    std::sort(w.begin(), w.end());
    return w;
}

std::vector<TensorWord> arrangements_of(const TensorWord& multiset)
{
    TensorWord w = sorted_copy(multiset);
    std::vector<TensorWord> out;
    do
        out.push_back(w);
    while (std::next_permutation(w.begin(), w.end()));
    return out;
}

// Every split of a sorted multiset into two non-empty sub-multisets (first, second).
std::vector<std::pair<TensorWord, TensorWord>> splits(const TensorWord& multiset)
{
    std::vector<int> letters, counts;
    for (int l : multiset) {
        if (letters.empty() || letters.back() != l) {
            letters.push_back(l);
            counts.push_back(0);
        }
        ++counts.back();
    }
    std::vector<std::pair<TensorWord, TensorWord>> out;
    std::vector<int> take(letters.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == letters.size()) {
            TensorWord a, b;
            for (std::size_t i = 0; i < letters.size(); ++i) {
                a.insert(a.end(), static_cast<std::size_t>(take[i]), letters[i]);
                b.insert(b.end(), static_cast<std::size_t>(counts[i] - take[i]), letters[i]);
            }
            if (!a.empty() && !b.empty())
                out.emplace_back(std::move(a), std::move(b));
            return;
        }
        for (int t = 0; t <= counts[k]; ++t) {
            take[k] = t;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

} // namespace

std::unique_ptr<LieQuotient::Block> LieQuotient::build(const TensorWord& multiset) const
{
    auto blk = std::make_unique<Block>();
    blk->words = arrangements_of(multiset);
    for (std::size_t i = 0; i < blk->words.size(); ++i)
        blk->index.emplace(blk->words[i], i);
    for (const auto& [a, b] : splits(multiset))
        for (const auto& u : arrangements_of(a))
            for (const auto& v : arrangements_of(b)) {
                SparseVector vec;
                for (const auto& [w, c] : shuffle(alphabet_, u, v))
                    vec[blk->index.at(w)] += c;
                std::erase_if(vec, [](const auto& e) { return e.second.is_zero(); });
                if (!vec.empty())
                    blk->shuffles.insert(vec);
            }
    return blk;
}

const LieQuotient::Block& LieQuotient::block(const TensorWord& multiset) const
{
    TensorWord key = sorted_copy(multiset);
    for (int l : key)
        alphabet_.degree(l);
    Slot* slot;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto& p = cache_[key];
        if (!p)
            p = std::make_unique<Slot>();
        slot = p.get();
    }
    std::call_once(slot->once, [&] { slot->data = build(key); });
    return *slot->data;
}

TensorComb LieQuotient::project(const TensorComb& x) const
{
    std::map<TensorWord, TensorComb> by_block;
    for (const auto& [w, c] : x) {
        if (w.empty())
            throw ArgumentError("lie_project: input has an empty-word component");
        by_block[sorted_copy(w)].add(w, c);
    }
    TensorComb out;
    for (const auto& [key, part] : by_block) {
        const Block& blk = block(key);
        SparseVector v;
        for (const auto& [w, c] : part)
            v[blk.index.at(w)] += c;
        std::erase_if(v, [](const auto& e) { return e.second.is_zero(); });
        for (const auto& [i, c] : blk.shuffles.reduce(v))
            out.add(blk.words[i], c);
    }
    return out;
}

std::vector<TensorWord> LieQuotient::quotient_basis(const TensorWord& multiset) const
{
    const Block& blk = block(multiset);
    std::vector<TensorWord> out;
    for (std::size_t i = 0; i < blk.words.size(); ++i)
        if (!blk.shuffles.is_pivot(i))
            out.push_back(blk.words[i]);
    return out;
}

std::size_t LieQuotient::shuffle_rank(const TensorWord& multiset) const { return block(multiset).shuffles.rank(); }
std::size_t LieQuotient::arrangements(const TensorWord& multiset) const { return block(multiset).words.size(); }

LinComb<TensorPair> LieQuotient::cobracket(const TensorComb& x) const
{
    LinComb<TensorPair> raw;
    for (const auto& [w, c] : x) {
        if (w.empty())
            throw ArgumentError("cobracket: input has an empty-word component");
        for (std::size_t i = 1; i < w.size(); ++i) {
            TensorWord u(w.begin(), w.begin() + static_cast<long>(i)), v(w.begin() + static_cast<long>(i), w.end());
            long e = static_cast<long>(word_degree(alphabet_, u)) * word_degree(alphabet_, v);
            raw.add(TensorPair{u, v}, c);
            raw.add(TensorPair{v, u}, -c * Rational(minus_one_pow(e)));
        }
    }
    std::map<TensorWord, TensorComb> memo;
    auto proj = [&](const TensorWord& w) -> const TensorComb& {
        auto it = memo.find(w);
        if (it == memo.end()) {
            TensorComb single;
            single.add(w, Rational(1));
            it = memo.emplace(w, project(single)).first;
        }
        return it->second;
    };
    LinComb<TensorPair> out;
    for (const auto& [p, c] : raw)
        for (const auto& [u, cu] : proj(p.first))
            for (const auto& [v, cv] : proj(p.second))
                out.add(TensorPair{u, v}, c * cu * cv);
    return out;
}

LinComb<TensorTriple> LieQuotient::iterated_cobracket(const TensorComb& x) const
{
    LinComb<TensorTriple> out;
    for (const auto& [p, c] : cobracket(x)) {
        TensorComb first;
        first.add(p.first, Rational(1));
        for (const auto& [q, c2] : cobracket(first))
            out.add(TensorTriple{q.first, q.second, p.second}, c * c2);
    }
    return out;
}

LinComb<TensorTriple> co_jacobi_defect(const Alphabet& a, const LinComb<TensorTriple>& dd)
{
    LinComb<TensorTriple> out = dd;
    auto rotate = [&](const LinComb<TensorTriple>& x) {
        LinComb<TensorTriple> r;
        for (const auto& [t, c] : x) {
            long e = static_cast<long>(word_degree(a, t[2])) * (word_degree(a, t[0]) + word_degree(a, t[1]));
            r.add(TensorTriple{t[2], t[0], t[1]}, c * Rational(minus_one_pow(e)));
        }
        return r;
    };
    auto once = rotate(dd);
    out += once;
    out += rotate(once);
    return out;
}

// ---- S(g[1]) ----

int sym_degree(const LieCoalgebra& g, const SymKey& k)
{
    int s = 0;
    for (int x : k)
        s += g.shifted(x);
    return s;
}

namespace {

// Sorts a generator sequence with its Koszul sign; 0 when an odd generator repeats.
int normalize(const LieCoalgebra& g, SymKey& seq)
{
    std::vector<int> perm(seq.size()), deg(seq.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int x, int y) { return seq[static_cast<std::size_t>(x)] < seq[static_cast<std::size_t>(y)]; });
    for (std::size_t i = 0; i < seq.size(); ++i)
        deg[i] = g.shifted(seq[i]);
    int s = koszul_sign(perm, deg);
    SymKey sorted;
    for (int p : perm)
        sorted.push_back(seq[static_cast<std::size_t>(p)]);
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1] && is_odd(g.shifted(sorted[i])))
            return 0;
    seq = std::move(sorted);
    return s;
}

void add_product(const LieCoalgebra& g, SymComb& out, const SymKey& a, const SymKey& b, const Rational& c)
{
    SymKey seq = a;
    seq.insert(seq.end(), b.begin(), b.end());
    int s = normalize(g, seq);
    if (s != 0)
        out.add(std::move(seq), s > 0 ? c : -c);
}

} // namespace

SymComb sym_generator(int k)
{
    SymComb x;
    x.add(SymKey{k}, Rational(1));
    return x;
}

SymComb sym_mul(const LieCoalgebra& g, const SymComb& a, const SymComb& b)
{
    SymComb out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b)
            add_product(g, out, ka, kb, ca * cb);
    return out;
}

SymTensor sym_tensor_mul(const LieCoalgebra& g, const SymTensor& a, const SymTensor& b)
{
    SymTensor out;
    for (const auto& [pa, ca] : a)
        for (const auto& [pb, cb] : b) {
            SymKey l = pa.first, r = pa.second;
            l.insert(l.end(), pb.first.begin(), pb.first.end());
            r.insert(r.end(), pb.second.begin(), pb.second.end());
            long e = static_cast<long>(sym_degree(g, pa.second)) * sym_degree(g, pb.first);
            int sl = normalize(g, l), sr = normalize(g, r);
            if (sl == 0 || sr == 0)
                continue;
            out.add(SymPair{l, r}, ca * cb * Rational(sl * sr * minus_one_pow(e)));
        }
    return out;
}

namespace {

SymTensor unit_tensor()
{
    SymTensor t;
    t.add(SymPair{{}, {}}, Rational(1));
    return t;
}

SymTensor generator_coproduct(int k)
{
    SymTensor t;
    t.add(SymPair{{k}, {}}, Rational(1));
    t.add(SymPair{{}, {k}}, Rational(1));
    return t;
}

SymTensor generator_cobracket(const LieCoalgebra& g, int k)
{
    SymTensor t;
    for (const auto& [p, c] : g.delta.at(static_cast<std::size_t>(k)))
        t.add(SymPair{{p.first}, {p.second}}, c * Rational(minus_one_pow(g.degrees.at(static_cast<std::size_t>(p.first)))));
    return t;
}

} // namespace

SymTensor coshuffle(const LieCoalgebra& g, const SymComb& x)
{
    SymTensor out;
    for (const auto& [k, c] : x) {
        SymTensor t = unit_tensor();
        for (int gen : k)
            t = sym_tensor_mul(g, t, generator_coproduct(gen));
        out.add(t, c);
    }
    return out;
}

SymTensor extend_cobracket(const LieCoalgebra& g, const SymComb& x)
{
    SymTensor out;
    for (const auto& [k, c] : x) {
        long e = 0;
        for (std::size_t i = 0; i < k.size(); ++i) {
            SymTensor t = unit_tensor();
            for (std::size_t j = 0; j < k.size(); ++j)
                t = sym_tensor_mul(g, t, j == i ? generator_cobracket(g, k[j]) : generator_coproduct(k[j]));
            out.add(t, c * Rational(minus_one_pow(e)));
            e += g.degrees.at(static_cast<std::size_t>(k[i])) + 1;
        }
    }
    return out;
}

SymComb coderivation(const LieCoalgebra& g, const TaylorFamily& q, const SymComb& x)
{
    SymComb out;
    for (const auto& [k, c] : x) {
        const std::size_t n = k.size();
        std::vector<int> deg(n);
        for (std::size_t i = 0; i < n; ++i)
            deg[i] = g.shifted(k[i]);
        for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
            std::vector<int> perm;
            SymKey in, rest;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1ul << i)) {
                    perm.push_back(static_cast<int>(i));
                    in.push_back(k[i]);
                }
            for (std::size_t i = 0; i < n; ++i)
                if (!(mask & (1ul << i))) {
                    perm.push_back(static_cast<int>(i));
                    rest.push_back(k[i]);
                }
            Rational s = c * Rational(koszul_sign(perm, deg));
            for (const auto& [gen, v] : q(in))
                add_product(g, out, SymKey{gen}, rest, s * v);
        }
    }
    return out;
}

SymTensor coderivation_tensor(const LieCoalgebra& g, const TaylorFamily& q, const SymTensor& t)
{
    SymTensor out;
    for (const auto& [p, c] : t) {
        SymComb a, b;
        a.add(p.first, Rational(1));
        b.add(p.second, Rational(1));
        for (const auto& [k, v] : coderivation(g, q, a))
            out.add(SymPair{k, p.second}, c * v);
        Rational s = c * Rational(minus_one_pow(sym_degree(g, p.first)));
        for (const auto& [k, v] : coderivation(g, q, b))
            out.add(SymPair{p.first, k}, s * v);
    }
    return out;
}

std::vector<SymKey> sym_basis(const LieCoalgebra& g, int max_len)
{
    std::vector<SymKey> out;
    SymKey cur;
    std::function<void(int)> rec = [&](int from) {
        if (!cur.empty())
            out.push_back(cur);
        if (static_cast<int>(cur.size()) == max_len)
            return;
        for (int k = from; k < g.size(); ++k) {
            if (!cur.empty() && cur.back() == k && is_odd(g.shifted(k)))
                continue;
            cur.push_back(k);
            rec(k);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

CshlbReport cshlb_check(const LieCoalgebra& g, const TaylorFamily& q, int arity_bound)
{
    CshlbReport r;
    for (const auto& k : sym_basis(g, arity_bound)) {
        SymComb x;
        x.add(k, Rational(1));
        SymTensor lhs = extend_cobracket(g, coderivation(g, q, x));
        lhs += coderivation_tensor(g, q, extend_cobracket(g, x));
        bool ok = lhs.is_zero();
        bool sq = coderivation(g, q, coderivation(g, q, x)).is_zero();
        r.compatible = r.compatible && ok;
        r.square_zero = r.square_zero && sq;
        if (!ok || !sq)
            r.failures.push_back(k);
        ++r.checked;
    }
    return r;
}

TruncatedLc truncated_lie_coalgebra(const LieQuotient& lq, int max_length)
{
    TruncatedLc out;
    const int n = lq.alphabet().size();
    std::map<TensorWord, int> id;
    TensorWord cur;
    std::function<void(int)> rec = [&](int from) {
        if (!cur.empty())
            for (auto& w : lq.quotient_basis(cur)) {
                id.emplace(w, static_cast<int>(out.words.size()));
                out.words.push_back(w);
            }
        if (static_cast<int>(cur.size()) == max_length)
            return;
        for (int l = from; l < n; ++l) {
            cur.push_back(l);
            rec(l);
            cur.pop_back();
        }
    };
    rec(0);
    for (const auto& w : out.words) {
        out.coalgebra.degrees.push_back(word_degree(lq.alphabet(), w));
        TensorComb x;
        x.add(w, Rational(1));
        LinComb<std::pair<int, int>> d;
        for (const auto& [p, c] : lq.cobracket(x))
            d.add(std::pair<int, int>{id.at(p.first), id.at(p.second)}, c);
        out.coalgebra.delta.push_back(std::move(d));
    }
    return out;
}

} // namespace hoca
