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

#ifndef HOCA_SAMPLING_HPP
#define HOCA_SAMPLING_HPP

#include "hoca/polydiff.hpp"
#include "hoca/polyvector.hpp"

#include <cstdint>
#include <random>

namespace hoca {

/* Seeded generator of small random elements. Draws use rng() % n only, so the
 * stream is identical on every platform. */
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi); // inclusive
    Rational small_rational();   // nonzero, numerator in [-3,3], denominator in [1,3]
    MultiIndex index(int d, int max_total);

    // Sum of `terms` random terms; wedge sizes in [min_wedge, max_wedge].
    PolyVector polyvector(int d, int max_coef_degree, int min_wedge, int max_wedge, int terms);
    PolyVector homogeneous_polyvector(int d, int max_coef_degree, int wedge_size, int terms);
    // Sum of random terms with word lengths in [min_len, max_len] and slot order <= max_order.
    PolyDiffOp polydiff(int d, int max_coef_degree, int min_len, int max_len, int max_order, int terms);
    Polynomial polynomial(int d, int max_degree, int terms);

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace hoca

#endif
