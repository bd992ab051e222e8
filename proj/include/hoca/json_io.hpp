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

#ifndef HOCA_JSON_IO_HPP
#define HOCA_JSON_IO_HPP

#include "hoca/linalg.hpp"
#include "hoca/polydiff.hpp"
#include "hoca/polyvector.hpp"
#include "hoca/series.hpp"

#include "json.hpp"

namespace hoca {

using nlohmann::json;

inline constexpr const char* kSchema = "hoca/1";

/* Canonical JSON. Rationals are "p/q" strings ("p" accepted on input);
 * wedge indices are 1-based in files and 0-based in memory. Terms are emitted in
 * the canonical key order, so equal values serialize to identical bytes. */
json rational_json(const Rational& r);
Rational rational_from(const json& j); // string or integer

json polyvector_json(const PolyVector& a);
PolyVector polyvector_from(const json& j); // {"d":..,"terms":[..]} or {"d":..,"terms":..,"schema":..}

json polydiff_json(const PolyDiffOp& D);
PolyDiffOp polydiff_from(const json& j);

// Series-valued operator: term coefficients are arrays of K+1 rationals.
json series_polydiff_json(const Truncated<PolyDiffOp>& w);
Truncated<PolyDiffOp> series_polydiff_from(const json& j);

json polynomial_json(const Polynomial& p, int d);
Polynomial polynomial_from(const json& j, int d);

json matrix_json(const SparseMatrix& m); // {"rows","cols","entries":[[r,c,"p/q"],..]}
SparseMatrix matrix_from(const json& j);

json word_json(const DiffWord& w);
DiffWord word_from(const json& j, int d);

// Adds "schema" and serializes with a fixed layout.
std::string dump_document(json j);

} // namespace hoca

#endif
