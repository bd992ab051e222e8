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

#include "hoca/sampling.hpp"

#include <algorithm>

namespace hoca {

int Sampler::uniform(int lo, int hi)
{
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng_() % span);
}

Rational Sampler::small_rational()
{
    int num = 0;
    while (num == 0)
        num = uniform(-3, 3);
    return Rational(num, uniform(1, 3));
}

MultiIndex Sampler::index(int d, int max_total)
{
    MultiIndex a = zero_index(d);
    int w = uniform(0, max_total);
    for (int k = 0; k < w && d > 0; ++k)
        ++a[static_cast<std::size_t>(uniform(0, d - 1))];
    return a;
}

PolyVector Sampler::homogeneous_polyvector(int d, int max_coef_degree, int wedge_size, int terms)
{
    PolyVector out(d);
    for (int k = 0; k < terms; ++k) {
        std::vector<int> all(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            all[static_cast<std::size_t>(i)] = i;
        // partial Fisher-Yates with the portable draw
        for (int i = 0; i < wedge_size; ++i)
            std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(uniform(i, d - 1))]);
        std::vector<int> w(all.begin(), all.begin() + wedge_size);
        out += PolyVector::term(d, small_rational(), index(d, max_coef_degree), w);
    }
    return out;
}

PolyVector Sampler::polyvector(int d, int max_coef_degree, int min_wedge, int max_wedge, int terms)
{
    PolyVector out(d);
    for (int k = 0; k < terms; ++k)
        out += homogeneous_polyvector(d, max_coef_degree, uniform(min_wedge, std::min(max_wedge, d)), 1);
    return out;
}

PolyDiffOp Sampler::polydiff(int d, int max_coef_degree, int min_len, int max_len, int max_order, int terms)
{
    PolyDiffOp out(d);
    for (int k = 0; k < terms; ++k) {
        DiffWord w;
        int len = uniform(min_len, max_len);
        for (int j = 0; j < len; ++j)
            w.push_back(index(d, max_order));
        out.add_term(PolyDiffKey{index(d, max_coef_degree), w}, small_rational());
    }
    return out;
}

Polynomial Sampler::polynomial(int d, int max_degree, int terms)
{
    Polynomial p;
    for (int k = 0; k < terms; ++k)
        p.add(index(d, max_degree), small_rational());
    return p;
}

} // namespace hoca
