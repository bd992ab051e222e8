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

#ifndef HOCA_POLYNOMIAL_HPP
#define HOCA_POLYNOMIAL_HPP

#include "hoca/lincomb.hpp"
#include "hoca/multi_index.hpp"

#include <vector>

namespace hoca {

// Element of Q[t_1..t_d]: exponent vector -> coefficient.
using Polynomial = LinComb<MultiIndex>;
using RationalMatrix = std::vector<std::vector<Rational>>;

Polynomial monomial(const MultiIndex& a, const Rational& c = Rational(1));
Polynomial constant_polynomial(int d, const Rational& c);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial derivative(const Polynomial& p, const MultiIndex& order);

/* Affine substitution t_i -> sum_j m[i][j] t_j + shift[i] (shift may be empty).
 * Also used for the commuting symbols d_i when changing coordinates. */
Polynomial substitute(const Polynomial& p, const RationalMatrix& m, const std::vector<Rational>& shift);

RationalMatrix invert(const RationalMatrix& m); // throws ArgumentError if singular
RationalMatrix to_rational(const std::vector<std::vector<int>>& m);

} // namespace hoca

#endif
