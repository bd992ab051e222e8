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

#ifndef HOCA_SIGN_HPP
#define HOCA_SIGN_HPP

#include <span>
#include <vector>

namespace hoca {

inline bool is_odd(long n) { return (n % 2) != 0; }

// (-1)^e for any integer e, negative included.
inline int minus_one_pow(long e) { return is_odd(e) ? -1 : 1; }

/* Koszul sign of reordering graded symbols. The reordered sequence is
 * (x[perm[0]], x[perm[1]], ...); every pair of symbols that changes relative
 * order contributes (-1)^(deg_a * deg_b). Degrees are the shifted degrees used
 * throughout the library. Throws ArgumentError on length mismatch or if perm is
 * not a permutation. */
int koszul_sign(std::span<const int> perm, std::span<const int> degrees);

// Sign of a permutation (all symbols odd).
int permutation_sign(std::span<const int> perm);

// All permutations of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> all_permutations(int n);

} // namespace hoca

#endif
