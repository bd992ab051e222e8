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

#include "hoca/sign.hpp"

#include "hoca/errors.hpp"

#include <algorithm>
#include <numeric>

namespace hoca {

int koszul_sign(std::span<const int> perm, std::span<const int> degrees)
{
    if (perm.size() != degrees.size())
        throw ArgumentError("koszul_sign: permutation and degree list lengths differ");
    std::vector<char> seen(perm.size(), 0);
    for (int p : perm) {
        if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || seen[static_cast<std::size_t>(p)])
            throw ArgumentError("koszul_sign: not a permutation");
        seen[static_cast<std::size_t>(p)] = 1;
    }
    long exponent = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b])
                exponent += static_cast<long>(degrees[static_cast<std::size_t>(perm[a])]) *
                            degrees[static_cast<std::size_t>(perm[b])];
    return minus_one_pow(exponent);
}

int permutation_sign(std::span<const int> perm)
{
    std::vector<int> ones(perm.size(), 1);
    return koszul_sign(perm, ones);
}

std::vector<std::vector<int>> all_permutations(int n)
{
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

} // namespace hoca
