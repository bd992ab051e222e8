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

#ifndef HOCA_POLYDIFF_HPP
#define HOCA_POLYDIFF_HPP

#include "hoca/lincomb.hpp"
#include "hoca/multi_index.hpp"
#include "hoca/polynomial.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <tuple>
#include <vector>

namespace hoca {

using DiffWord = std::vector<MultiIndex>; // d^{a_1} (x) ... (x) d^{a_n}

/* Basis element t^mono d^{word[0]} (x) ... (x) d^{word[n-1]}: the operator
 * (f_1..f_n) -> t^mono * prod_j d^{word[j]} f_j. Polynomial coefficients sit in
 * the leftmost position; all slots are constant-coefficient. The empty word is
 * the 0-cochain t^mono itself. */
struct PolyDiffKey {
    MultiIndex mono;
    DiffWord word;
    auto operator<=>(const PolyDiffKey&) const = default;
};

inline int shifted_degree(const PolyDiffKey& k) { return static_cast<int>(k.word.size()) - 1; }
int total_order(const DiffWord& w);
MultiIndex multidegree(const DiffWord& w, int d);

/* Poly-differential operator in D_poly(Q[t_1..t_d]); an n-slot word has
 * shifted degree n - 1.
 *
 * Brace sign: inserting E_s so that a_s arguments of the composite precede it
 * contributes (-1)^{|E_s| a_s} (Gerstenhaber's composition sign). With this
 * choice the brace relations hold with the Koszul sign of the reordering of
 * the inserted elements, m^{1,1}(mu,mu) = 0, and the cupproduct extracted from
 * [mu,-] is cup(D,E) = (-1)^{(|D|+1)|E|} D (x) E. */
class PolyDiffOp {
public:
    explicit PolyDiffOp(int d);
    static PolyDiffOp term(int d, const Rational& c, const MultiIndex& mono, const DiffWord& word);
    static PolyDiffOp function(int d, const Polynomial& f); // 0-cochain
    static PolyDiffOp mu(int d);                             // 1 (x) 1

    int dim() const { return d_; }
    const LinComb<PolyDiffKey>& terms() const { return terms_; }
    void add_term(const PolyDiffKey& k, const Rational& c);
    bool is_zero() const { return terms_.is_zero(); }

    std::set<int> degrees() const;
    std::optional<int> degree() const;
    std::map<int, PolyDiffOp> homogeneous_components() const;

    PolyDiffOp& operator+=(const PolyDiffOp& o);
    PolyDiffOp& operator-=(const PolyDiffOp& o);
    PolyDiffOp& operator*=(const Rational& s);
    friend PolyDiffOp operator+(PolyDiffOp a, const PolyDiffOp& b) { return a += b; }
    friend PolyDiffOp operator-(PolyDiffOp a, const PolyDiffOp& b) { return a -= b; }
    friend PolyDiffOp operator*(PolyDiffOp a, const Rational& s) { return a *= s; }
    friend PolyDiffOp operator*(const Rational& s, PolyDiffOp a) { return a *= s; }
    friend bool operator==(const PolyDiffOp& a, const PolyDiffOp& b) { return a.d_ == b.d_ && a.terms_ == b.terms_; }

private:
    int d_;
    LinComb<PolyDiffKey> terms_;
};

struct CoproductTerm {
    MultiIndex left, right;
    Rational coefficient;
};
// Delta(d^a) = sum_b binom(a,b) d^b (x) d^(a-b) in U(Der), lexicographic in b.
std::vector<CoproductTerm> ul_coproduct(const MultiIndex& a);

PolyDiffOp brace(const PolyDiffOp& D, std::span<const PolyDiffOp> args);
PolyDiffOp brace(const PolyDiffOp& D, std::initializer_list<PolyDiffOp> args);
PolyDiffOp cup(const PolyDiffOp& D, const PolyDiffOp& E);
PolyDiffOp hochschild_d(const PolyDiffOp& D);            // [mu, -]
PolyDiffOp g_bracket(const PolyDiffOp& D, const PolyDiffOp& E);

// Apply the operator to polynomial arguments (one per slot).
Polynomial evaluate(const PolyDiffOp& D, std::span<const Polynomial> args);

PolyDiffOp multiply(const Polynomial& f, const PolyDiffOp& D);
PolyDiffOp translate(const PolyDiffOp& D, const std::vector<Rational>& shift);
PolyDiffOp linear_change(const PolyDiffOp& D, const RationalMatrix& g);

} // namespace hoca

#endif
