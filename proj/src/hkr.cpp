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

#include "hoca/hkr.hpp"

#include "hoca/errors.hpp"
#include "hoca/json_io.hpp"
#include "hoca/sign.hpp"

#include <algorithm>

namespace hoca {

PolyDiffOp hkr_i(const PolyVector& a)
{
    const int d = a.dim();
    PolyDiffOp out(d);
    for (const auto& [k, c] : a.terms()) {
        const int n = static_cast<int>(k.wedge.size());
        Rational scale = c / factorial(n);
        for (const auto& perm : all_permutations(n)) {
            DiffWord w;
            for (int p : perm)
                w.push_back(unit_index(d, k.wedge[static_cast<std::size_t>(p)]));
            out.add_term(PolyDiffKey{k.mono, std::move(w)}, scale * Rational(permutation_sign(perm)));
        }
    }
    return out;
}

PolyVector hkr_p(const PolyDiffOp& D)
{
    const int d = D.dim();
    PolyVector out(d);
    for (const auto& [k, c] : D.terms()) {
        std::vector<int> w;
        bool keep = true;
        for (const auto& slot : k.word) {
            if (total(slot) != 1) {
                keep = false;
                break;
            }
            w.push_back(static_cast<int>(std::find(slot.begin(), slot.end(), 1) - slot.begin()));
        }
        if (keep)
            out += PolyVector::term(d, c, k.mono, w);
    }
    return out;
}

std::vector<DiffWord> block_basis(int d, const BlockKey& b)
{
    if (b.n < 0 || static_cast<int>(b.gamma.size()) != d)
        throw ArgumentError("malformed block key");
    if (b.n == 0) {
        if (total(b.gamma) == 0)
            return {DiffWord{}};
        return {};
    }
    auto words = compositions(b.gamma, b.n);
    std::sort(words.begin(), words.end());
    return words;
}

namespace {

std::map<DiffWord, std::size_t> index_of(const std::vector<DiffWord>& basis)
{
    std::map<DiffWord, std::size_t> idx;
    for (std::size_t i = 0; i < basis.size(); ++i)
        idx.emplace(basis[i], i);
    return idx;
}

// Vector in the exterior block (0 or 1 dimensional) spanned by d_S, S = supp(gamma).
bool exterior_nonzero(const BlockKey& b)
{
    int ones = 0;
    for (int e : b.gamma) {
        if (e > 1)
            return false;
        ones += e;
    }
    return ones == b.n;
}

std::vector<int> exterior_support(const BlockKey& b)
{
    std::vector<int> s;
    for (std::size_t i = 0; i < b.gamma.size(); ++i)
        if (b.gamma[i] == 1)
            s.push_back(static_cast<int>(i));
    return s;
}

// Column matrix of i' (basis x exterior_dim) and row matrix of p'.
SparseMatrix i_matrix(int d, const BlockKey& b, const std::vector<DiffWord>& basis)
{
    SparseMatrix m(basis.size(), exterior_dim(d, b));
    if (!exterior_nonzero(b))
        return m;
    auto idx = index_of(basis);
    PolyDiffOp img = hkr_i(PolyVector::term(d, Rational(1), zero_index(d), exterior_support(b)));
    for (const auto& [k, c] : img.terms())
        m.set(idx.at(k.word), 0, c);
    return m;
}

SparseMatrix p_matrix(int d, const BlockKey& b, const std::vector<DiffWord>& basis)
{
    SparseMatrix m(exterior_dim(d, b), basis.size());
    if (!exterior_nonzero(b))
        return m;
    auto s = exterior_support(b);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        PolyVector v = hkr_p(PolyDiffOp::term(d, Rational(1), zero_index(d), basis[j]));
        for (const auto& [k, c] : v.terms())
            if (k.wedge == s)
                m.set(0, j, c);
    }
    return m;
}

SparseMatrix column_block(const std::vector<DenseVector>& cols, std::size_t rows)
{
    SparseMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i)
            if (!cols[j][i].is_zero())
                m.set(i, j, cols[j][i]);
    return m;
}

// Kernel of p' on block b, and the subset of it complementary to ker d.
struct WData {
    std::vector<DenseVector> kernel;     // basis of W = ker p
    std::vector<DenseVector> complement; // C: d restricted to C is injective, W = ker d|W (+) C
};

WData w_data(int d, const BlockKey& b)
{
    WData out;
    auto basis = block_basis(d, b);
    if (basis.empty())
        return out;
    SparseMatrix p = p_matrix(d, b, basis);
    if (p.rows() == 0) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            DenseVector e(basis.size());
            e[j] = Rational(1);
            out.kernel.push_back(std::move(e));
        }
    } else {
        out.kernel = kernel_basis(p);
    }
    SparseMatrix dk = block_differential(d, b) * column_block(out.kernel, basis.size());
    auto sol = solve_linear(dk, DenseVector(dk.rows()));
    for (std::size_t c : sol.pivot_columns)
        out.complement.push_back(out.kernel[c]);
    return out;
}

} // namespace

std::size_t exterior_dim(int d, const BlockKey& b)
{
    (void)d;
    return exterior_nonzero(b) ? 1 : 0;
}

SparseMatrix block_differential(int d, const BlockKey& b)
{
    auto src = block_basis(d, b);
    auto dst = block_basis(d, BlockKey{b.n + 1, b.gamma});
    auto idx = index_of(dst);
    SparseMatrix m(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        PolyDiffOp img = hochschild_d(PolyDiffOp::term(d, Rational(1), zero_index(d), src[j]));
        for (const auto& [k, c] : img.terms())
            m.set(idx.at(k.word), j, c);
    }
    return m;
}

HomotopyTable::HomotopyTable(int d, int max_words, int max_order) : d_(d), max_words_(max_words), max_order_(max_order)
{
    if (d < 1 || max_words < 0 || max_order < 0)
        throw ArgumentError("homotopy table bounds must be non-negative and d >= 1");
}

void HomotopyTable::check_bounds(const BlockKey& b) const
{
    if (static_cast<int>(b.gamma.size()) != d_ || b.n < 0)
        throw ArgumentError("block key does not match the table dimension");
    if (b.n > max_words_ || total(b.gamma) > max_order_)
        throw ResourceError("homotopy block (n=" + std::to_string(b.n) + ", w=" + std::to_string(total(b.gamma)) +
                            ") exceeds configured bounds (max words " + std::to_string(max_words_) + ", max order " +
                            std::to_string(max_order_) + ")");
}

std::unique_ptr<HomotopyBlock> HomotopyTable::build(const BlockKey& b) const
{
    auto blk = std::make_unique<HomotopyBlock>();
    blk->key = b;
    blk->basis = block_basis(d_, b);
    if (b.n > 0)
        blk->lower_basis = block_basis(d_, BlockKey{b.n - 1, b.gamma});
    blk->h = SparseMatrix(blk->lower_basis.size(), blk->basis.size());
    if (b.n == 0 || blk->basis.empty() || blk->lower_basis.empty())
        return blk;

    const BlockKey lower{b.n - 1, b.gamma};
    WData wl = w_data(d_, lower), wn = w_data(d_, b);
    SparseMatrix dl = block_differential(d_, lower);
    const std::size_t dim = blk->basis.size();

    // columns: d(C_{n-1}) then C_n; they span W_n
    std::vector<DenseVector> cols;
    for (const auto& c : wl.complement)
        cols.push_back(dl.apply(c));
    for (const auto& c : wn.complement)
        cols.push_back(c);
    SparseMatrix a = column_block(cols, dim);
    SparseMatrix ip_t = (i_matrix(d_, b, blk->basis) * p_matrix(d_, b, blk->basis)).transpose();

    for (std::size_t j = 0; j < dim; ++j) {
        DenseVector x(dim);
        x[j] = Rational(1);
        for (const auto& [c, v] : ip_t.row(j))
            x[c] -= v;
        auto sol = solve_linear(a, x);
        if (!sol.particular)
            throw std::logic_error("constant-coefficient complex is not acyclic on ker p");
        for (std::size_t r = 0; r < wl.complement.size(); ++r) {
            const Rational& y = (*sol.particular)[r];
            if (y.is_zero())
                continue;
            for (std::size_t i = 0; i < blk->lower_basis.size(); ++i)
                if (!wl.complement[r][i].is_zero())
                    blk->h.add(i, j, -y * wl.complement[r][i]);
        }
    }
    return blk;
}

const HomotopyBlock& HomotopyTable::block(const BlockKey& b) const
{
    check_bounds(b);
    Slot* slot;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto& ptr = cache_[b];
        if (!ptr)
            ptr = std::make_unique<Slot>();
        slot = ptr.get();
    }
    std::call_once(slot->once, [&] {
        if (!slot->data)
            slot->data = build(b);
    });
    return *slot->data;
}

PolyDiffOp HomotopyTable::apply(const PolyDiffOp& D) const
{
    PolyDiffOp out(d_);
    for (const auto& [k, c] : D.terms()) {
        if (k.word.empty())
            continue;
        const HomotopyBlock& blk = block(BlockKey{static_cast<int>(k.word.size()), multidegree(k.word, d_)});
        auto it = std::lower_bound(blk.basis.begin(), blk.basis.end(), k.word);
        const auto j = static_cast<std::size_t>(it - blk.basis.begin());
        for (std::size_t i = 0; i < blk.h.rows(); ++i) {
            Rational v = blk.h.get(i, j);
            if (!v.is_zero())
                out.add_term(PolyDiffKey{k.mono, blk.lower_basis[i]}, c * v);
        }
    }
    return out;
}

std::size_t HomotopyTable::cohomology_dim(const BlockKey& b) const
{
    check_bounds(b);
    auto basis = block_basis(d_, b);
    if (basis.empty())
        return 0;
    std::size_t rank_out = matrix_rank(block_differential(d_, b));
    std::size_t rank_in = b.n == 0 ? 0 : matrix_rank(block_differential(d_, BlockKey{b.n - 1, b.gamma}));
    return basis.size() - rank_out - rank_in;
}

std::vector<BlockKey> HomotopyTable::blocks(int n, int w) const
{
    std::vector<BlockKey> out;
    for (auto& g : indices_of_total(d_, w))
        out.push_back(BlockKey{n, g});
    return out;
}

std::size_t HomotopyTable::cohomology_dim(int n, int w) const
{
    if (n > max_words_ || w > max_order_)
        throw ResourceError("cohomology block exceeds configured bounds");
    std::size_t s = 0;
    for (const auto& b : blocks(n, w))
        s += cohomology_dim(b);
    return s;
}

BlockReport HomotopyTable::verify(const BlockKey& b) const
{
    BlockReport r;
    r.key = b;
    const HomotopyBlock& hn = block(b);
    const auto& basis = hn.basis;
    const std::size_t dim = basis.size();
    SparseMatrix I = i_matrix(d_, b, basis), P = p_matrix(d_, b, basis);
    SparseMatrix dn = block_differential(d_, b);

    // H on the block above; built ad hoc when it sits past the table bound
    SparseMatrix h_up;
    const BlockKey up{b.n + 1, b.gamma};
    if (up.n <= max_words_)
        h_up = block(up).h;
    else
        h_up = build(up)->h;

    SparseMatrix lhs = I * P - SparseMatrix::identity(dim);
    SparseMatrix rhs = h_up * dn;
    if (b.n > 0)
        rhs = rhs + block_differential(d_, BlockKey{b.n - 1, b.gamma}) * hn.h;
    r.homotopy_identity = lhs == rhs;
    r.p_i_identity = P * I == SparseMatrix::identity(P.rows());
    r.h_i_zero = (hn.h * I).is_zero();
    r.p_d_zero = b.n == 0 || (P * block_differential(d_, BlockKey{b.n - 1, b.gamma})).is_zero();
    bool ph = true, hh = true;
    if (b.n > 0) {
        SparseMatrix pl = p_matrix(d_, BlockKey{b.n - 1, b.gamma}, hn.lower_basis);
        ph = (pl * hn.h).is_zero();
        hh = (hn.h * h_up).is_zero();
    } else {
        hh = (hn.h * h_up).is_zero();
    }
    r.side_conditions = ph && hh;
    r.cohomology = cohomology_dim(b);
    r.exterior_dim = exterior_dim(d_, b);
    return r;
}

json HomotopyTable::to_json() const
{
    json blocks = json::array();
    std::lock_guard<std::mutex> lock(mutex_);
    for (const auto& [key, slot] : cache_) {
        if (!slot || !slot->data)
            continue;
        const auto& blk = *slot->data;
        json basis = json::array(), lower = json::array();
        for (const auto& w : blk.basis)
            basis.push_back(word_json(w));
        for (const auto& w : blk.lower_basis)
            lower.push_back(word_json(w));
        blocks.push_back({{"n", key.n}, {"gamma", key.gamma}, {"basis", basis}, {"lower_basis", lower},
                          {"h", matrix_json(blk.h)}});
    }
    return {{"type", "homotopy_table"}, {"d", d_}, {"max_words", max_words_}, {"max_order", max_order_},
            {"blocks", blocks}};
}

void HomotopyTable::load_json(const json& j)
{
    if (!j.contains("d") || j["d"].get<int>() != d_ || !j.contains("blocks"))
        throw ArgumentError("homotopy table JSON does not match this table");
    for (const auto& e : j["blocks"]) {
        auto blk = std::make_unique<HomotopyBlock>();
        blk->key = BlockKey{e.at("n").get<int>(), e.at("gamma").get<MultiIndex>()};
        check_bounds(blk->key);
        blk->basis = block_basis(d_, blk->key);
        if (blk->key.n > 0)
            blk->lower_basis = block_basis(d_, BlockKey{blk->key.n - 1, blk->key.gamma});
        std::vector<DiffWord> basis, lower;
        for (const auto& w : e.at("basis"))
            basis.push_back(word_from(w, d_));
        for (const auto& w : e.at("lower_basis"))
            lower.push_back(word_from(w, d_));
        if (basis != blk->basis || lower != blk->lower_basis)
            throw ArgumentError("homotopy table block basis does not match the canonical basis");
        blk->h = matrix_from(e.at("h"));
        if (blk->h.rows() != lower.size() || blk->h.cols() != basis.size())
            throw ArgumentError("homotopy table block has wrong shape");
        auto slot = std::make_unique<Slot>();
        slot->data = std::move(blk);
        std::lock_guard<std::mutex> lock(mutex_);
        cache_[slot->data->key] = std::move(slot);
    }
}

std::size_t HomotopyTable::cached_blocks() const
{
    std::lock_guard<std::mutex> lock(mutex_);
    std::size_t n = 0;
    for (const auto& [k, s] : cache_)
        if (s && s->data)
            ++n;
    return n;
}

} // namespace hoca
