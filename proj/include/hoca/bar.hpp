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

#ifndef HOCA_BAR_HPP
#define HOCA_BAR_HPP

#include "hoca/polydiff.hpp"

#include <utility>
#include <vector>

namespace hoca {

// (a_1|...|a_n) in T^c(D_poly) with each a_j a basis term.
using BarKey = std::vector<PolyDiffKey>;
int bar_degree(const BarKey& w);

class BarElement {
public:
    explicit BarElement(int d) : d_(d) {}
    static BarElement unit(int d);                                   // ()
    static BarElement word(int d, const std::vector<PolyDiffOp>& letters); // multilinear expansion

    int dim() const { return d_; }
    const LinComb<BarKey>& terms() const { return terms_; }
    void add(const BarKey& k, const Rational& c) { terms_.add(k, c); }
    bool is_zero() const { return terms_.is_zero(); }
    // Length-n component read back as an operator (n = 1) or kept as a bar element.
    BarElement length_part(std::size_t n) const;
    PolyDiffOp letter_part() const; // length-1 component

    BarElement& operator+=(const BarElement& o) { terms_ += o.terms_; return *this; }
    BarElement& operator-=(const BarElement& o) { terms_ -= o.terms_; return *this; }
    BarElement& operator*=(const Rational& s) { terms_ *= s; return *this; }
    friend BarElement operator+(BarElement a, const BarElement& b) { return a += b; }
    friend BarElement operator-(BarElement a, const BarElement& b) { return a -= b; }
    friend BarElement operator*(const Rational& s, BarElement a) { return a *= s; }
    friend bool operator==(const BarElement& a, const BarElement& b) { return a.d_ == b.d_ && a.terms_ == b.terms_; }

private:
    int d_;
    LinComb<BarKey> terms_;
};

/* Brace-algebra product on T^c:
 *   m((a_1|..|a_p),(b_1|..|b_q)) = sum (-1)^e (b..| a_1{b..} | b..| a_p{b..} | b..)
 * each a_k absorbing a consecutive, possibly empty, run of b's; e collects
 * |a_k| |b_l| for every b_l left of a_k's run. */
BarElement m_product(const BarElement& x, const BarElement& y);

// Tensor square element of T^c (x) T^c.
using BarPairKey = std::pair<BarKey, BarKey>;
LinComb<BarPairKey> deconcat(const BarElement& x);
// (x' (x) x'')(y' (x) y'') -> (-1)^{|x''||y'|} m(x',y') (x) m(x'',y'')
LinComb<BarPairKey> tensor_product_m(const LinComb<BarPairKey>& u, const LinComb<BarPairKey>& v, int d);

// Inner biderivation Q = [mu, -] on T^c and its Taylor component Q^n on letters.
BarElement inner_q(const BarElement& x);
PolyDiffOp q_component(std::span<const PolyDiffOp> letters);

} // namespace hoca

#endif
