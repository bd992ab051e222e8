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

#ifndef HOCA_POLYVECTOR_HPP
#define HOCA_POLYVECTOR_HPP

#include "hoca/lincomb.hpp"
#include "hoca/multi_index.hpp"
#include "hoca/polynomial.hpp"

#include <compare>
#include <optional>
#include <set>
#include <vector>

namespace hoca {

/* Basis element t^mono d_{i1} ^ ... ^ d_{in} of T_poly(Q[t_1..t_d]).
 * Wedge indices are 0-based and strictly increasing. */
struct PolyVectorKey {
    MultiIndex mono;
    std::vector<int> wedge;
    auto operator<=>(const PolyVectorKey&) const = default;
};

/* Poly-vector field on affine d-space. Shifted grading: a term with n wedge
 * factors has degree n - 1, so functions sit in degree -1 and vector fields in
 * degree 0.
 *
 * Conventions, enforced by the property suite:
 *   wedge:    exterior product, |a ^ b| = |a| + |b| + 1.
 *   schouten: [A,B] = sum_i (A <-d/dxi_i)(d_{t_i} B)
 *                     - (-1)^{|A||B|} (B <-d/dxi_i)(d_{t_i} A)
 *             with <-d/dxi_i the right derivative in the odd symbol xi_i = d_i.
 *   On vector fields this is the commutator of derivations; it is graded
 *   antisymmetric and Jacobi in the shifted grading and satisfies
 *   [a, b ^ c] = [a,b] ^ c + (-1)^{|a|(|b|+1)} b ^ [a,c]. */
class PolyVector {
public:
    explicit PolyVector(int d);

    // c t^mono d_{wedge...}; wedge may be unsorted (sorted with sign) and
    // repeated indices give zero.
    static PolyVector term(int d, const Rational& c, const MultiIndex& mono, const std::vector<int>& wedge);
    static PolyVector function(int d, const Polynomial& f);

    int dim() const { return d_; }
    const LinComb<PolyVectorKey>& terms() const { return terms_; }
    void add_term(const PolyVectorKey& k, const Rational& c);
    bool is_zero() const { return terms_.is_zero(); }

    std::set<int> degrees() const;
    std::optional<int> degree() const; // set when homogeneous and nonzero
    PolyVector homogeneous_part(int degree) const;
    Polynomial component(const std::vector<int>& wedge) const; // coefficient of d_wedge

    PolyVector& operator+=(const PolyVector& o);
    PolyVector& operator-=(const PolyVector& o);
    PolyVector& operator*=(const Rational& s);
    friend PolyVector operator+(PolyVector a, const PolyVector& b) { return a += b; }
    friend PolyVector operator-(PolyVector a, const PolyVector& b) { return a -= b; }
    friend PolyVector operator*(PolyVector a, const Rational& s) { return a *= s; }
    friend PolyVector operator*(const Rational& s, PolyVector a) { return a *= s; }
    friend bool operator==(const PolyVector& a, const PolyVector& b) { return a.d_ == b.d_ && a.terms_ == b.terms_; }

private:
    int d_;
    LinComb<PolyVectorKey> terms_;
};

inline int shifted_degree(const PolyVectorKey& k) { return static_cast<int>(k.wedge.size()) - 1; }

PolyVector wedge(const PolyVector& a, const PolyVector& b);
PolyVector schouten(const PolyVector& a, const PolyVector& b);

// [pi, pi] == 0 for a bivector field; zero counts as Poisson.
bool poisson_check(const PolyVector& pi);

PolyVector multiply(const Polynomial& f, const PolyVector& a);
// Partial derivative of every coefficient.
PolyVector coefficient_derivative(const PolyVector& a, const MultiIndex& order);
// Vector field applied to a function.
Polynomial apply_vector_field(const PolyVector& x, const Polynomial& f);

// Coefficients pulled back along t -> t + shift.
PolyVector translate(const PolyVector& a, const std::vector<Rational>& shift);
// Push-forward along the linear map y = g t.
PolyVector linear_change(const PolyVector& a, const RationalMatrix& g);

} // namespace hoca

#endif
