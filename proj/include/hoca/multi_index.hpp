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

#ifndef HOCA_MULTI_INDEX_HPP
#define HOCA_MULTI_INDEX_HPP

#include "hoca/rational.hpp"

#include <functional>
#include <vector>

namespace hoca {

// Exponent vector over t_1..t_d; also used for derivative orders d^alpha.
using MultiIndex = std::vector<int>;

inline MultiIndex zero_index(int d) { return MultiIndex(static_cast<std::size_t>(d), 0); }
MultiIndex unit_index(int d, int i); // e_i, 0-based i
int total(const MultiIndex& a);
MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);
bool dominates(const MultiIndex& a, const MultiIndex& b); // a >= b componentwise

// d^g t^a = falling_factorial(a, g) t^(a-g); zero unless a >= g.
Rational falling_factorial(const MultiIndex& a, const MultiIndex& g);
// prod_i binom(a_i, b_i)
Rational multi_binomial(const MultiIndex& a, const MultiIndex& b);
// prod_i a_i! / (parts_0,i! ... parts_k,i!) for parts summing to a
Rational multinomial(const MultiIndex& a, const std::vector<MultiIndex>& parts);

// All multi-indices b <= a in lexicographic order.
std::vector<MultiIndex> sub_indices(const MultiIndex& a);
// All ways to write a as an ordered sum of k multi-indices (k >= 1).
std::vector<std::vector<MultiIndex>> compositions(const MultiIndex& a, int k);
// All multi-indices in N^d with total exactly w (lexicographic).
std::vector<MultiIndex> indices_of_total(int d, int w);

} // namespace hoca

#endif
