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

#include "hoca/series.hpp"

namespace hoca {

FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b)
{
    return cauchy(a, b, Rational(0), [](const Rational& x, const Rational& y) { return x * y; });
}

std::vector<std::string> to_strings(const FormalSeries& s)
{
    std::vector<std::string> out;
    out.reserve(s.coefficients().size());
    for (const auto& c : s.coefficients())
        out.push_back(c.str());
    return out;
}

FormalSeries series_from_strings(const std::vector<std::string>& parts)
{
    std::vector<Rational> c;
    c.reserve(parts.size());
    for (const auto& p : parts)
        c.push_back(Rational::parse(p));
    return FormalSeries(std::move(c));
}

} // namespace hoca
