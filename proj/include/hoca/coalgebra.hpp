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

#ifndef HOCA_COALGEBRA_HPP
#define HOCA_COALGEBRA_HPP

#include "hoca/lincomb.hpp"
#include "hoca/linalg.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace hoca {

// Letter id -> degree.
struct Alphabet {
    std::vector<int> degrees;
    int size() const { return static_cast<int>(degrees.size()); }
    int degree(int letter) const;
};

using TensorWord = std::vector<int>;
using TensorComb = LinComb<TensorWord>;
using TensorPair = std::pair<TensorWord, TensorWord>;
using TensorTriple = std::vector<TensorWord>;

int word_degree(const Alphabet& a, const TensorWord& w);

// All n + 1 splittings, empty sides included.
std::vector<TensorPair> deconcat(const TensorWord& w);
LinComb<TensorPair> deconcat(const TensorComb& x);
// Sum over (p,q)-shuffles, each with the Koszul sign of its letter reordering.
TensorComb shuffle(const Alphabet& a, const TensorWord& u, const TensorWord& v);
TensorComb shuffle(const Alphabet& a, const TensorComb& x, const TensorComb& y);

/* Cofree Lie coalgebra L^c(V) = ker eps / (ker eps shuffled with ker eps).
 * Each multiset of letters is a block; the shuffle span of a block is kept in
 * reduced row echelon form over the lexicographically sorted arrangements, and
 * the canonical representative of a class is its reduction, supported on the
 * non-pivot words. Blocks are built at most once, thread-safely. */
class LieQuotient {
public:
    explicit LieQuotient(Alphabet a) : alphabet_(std::move(a)) {}
    const Alphabet& alphabet() const { return alphabet_; }

    TensorComb project(const TensorComb& x) const; // ArgumentError on an empty-word component
    std::vector<TensorWord> quotient_basis(const TensorWord& multiset) const;
    std::size_t shuffle_rank(const TensorWord& multiset) const;
    std::size_t arrangements(const TensorWord& multiset) const;

    // delta = Delta - flip(Delta) on ker eps, both factors projected.
    LinComb<TensorPair> cobracket(const TensorComb& x) const;
    // (delta (x) id) delta, every factor projected.
    LinComb<TensorTriple> iterated_cobracket(const TensorComb& x) const;

private:
    struct Block {
        std::vector<TensorWord> words;
        std::map<TensorWord, std::size_t> index;
        RowSpace shuffles;
    };
    struct Slot {
        std::once_flag once;
        std::unique_ptr<Block> data;
    };
    const Block& block(const TensorWord& multiset) const;
    std::unique_ptr<Block> build(const TensorWord& multiset) const;

    Alphabet alphabet_;
    mutable std::mutex mutex_;
    mutable std::map<TensorWord, std::unique_ptr<Slot>> cache_;
};

// Cyclic sum of (delta (x) id) delta with Koszul signs; zero for a Lie coalgebra.
LinComb<TensorTriple> co_jacobi_defect(const Alphabet& a, const LinComb<TensorTriple>& dd);

/* Symmetric coalgebra S(g[1]) of a finite graded Lie coalgebra g. Keys are
 * sorted multisets of generator ids; shifted degree of generator k is
 * degree[k] - 1, and products carry the Koszul sign in shifted degrees. */
using SymKey = std::vector<int>;
using SymComb = LinComb<SymKey>;
using SymPair = std::pair<SymKey, SymKey>;
using SymTensor = LinComb<SymPair>;

struct LieCoalgebra {
    std::vector<int> degrees;                       // degree in g
    std::vector<LinComb<std::pair<int, int>>> delta; // cobracket of each generator
    int size() const { return static_cast<int>(degrees.size()); }
    int shifted(int g) const { return degrees.at(static_cast<std::size_t>(g)) - 1; }
};

int sym_degree(const LieCoalgebra& g, const SymKey& k);
SymComb sym_mul(const LieCoalgebra& g, const SymComb& a, const SymComb& b);
SymTensor sym_tensor_mul(const LieCoalgebra& g, const SymTensor& a, const SymTensor& b);
SymTensor coshuffle(const LieCoalgebra& g, const SymComb& x);
SymComb sym_generator(int k);

/* Bicoderivation extension of deltabar(g) = (-1)^{|g_[1]|} g_[1] (x) g_[2]:
 * deltabar(g_1..g_n) = sum_i (-1)^{|g_1|+..+|g_{i-1}|+i-1}
 *     Delta(g_1)..Delta(g_{i-1}) deltabar(g_i) Delta(g_{i+1})..Delta(g_n). */
SymTensor extend_cobracket(const LieCoalgebra& g, const SymComb& x);

// Q^n(g_1 .. g_n) in g[1] for a sorted key of length n.
using TaylorFamily = std::function<LinComb<int>(const SymKey&)>;

// Coderivation of S(g[1]) with the given Taylor coefficients.
SymComb coderivation(const LieCoalgebra& g, const TaylorFamily& q, const SymComb& x);
// (Q (x) id + id (x) Q) with the Koszul sign of Q passing the left factor.
SymTensor coderivation_tensor(const LieCoalgebra& g, const TaylorFamily& q, const SymTensor& t);

// All basis keys with 1 <= length <= max_len (odd generators not repeated).
std::vector<SymKey> sym_basis(const LieCoalgebra& g, int max_len);

struct CshlbReport {
    bool compatible = true; // deltabar Q + (Q (x) id + id (x) Q) deltabar = 0
    bool square_zero = true;
    std::size_t checked = 0;
    std::vector<SymKey> failures;
};
CshlbReport cshlb_check(const LieCoalgebra& g, const TaylorFamily& q, int arity_bound);

// Finite Lie coalgebra of canonical L^c(V) basis words up to the given length.
struct TruncatedLc {
    LieCoalgebra coalgebra;
    std::vector<TensorWord> words; // generator id -> representative word
};
TruncatedLc truncated_lie_coalgebra(const LieQuotient& lq, int max_length);

} // namespace hoca

#endif
