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

#include "hoca/json_io.hpp"

#include "hoca/errors.hpp"

namespace hoca {

namespace {

int get_dim(const json& j)
{
    if (!j.is_object() || !j.contains("d") || !j["d"].is_number_integer())
        throw ArgumentError("element JSON needs an integer field \"d\"");
    int d = j["d"].get<int>();
    if (d < 0)
        throw ArgumentError("negative dimension in JSON");
    return d;
}

const json& get_terms(const json& j)
{
    if (!j.contains("terms") || !j["terms"].is_array())
        throw ArgumentError("element JSON needs an array field \"terms\"");
    return j["terms"];
}

MultiIndex index_from(const json& j, int d, const char* what)
{
    if (!j.is_array() || static_cast<int>(j.size()) != d)
        throw ArgumentError(std::string(what) + " must be an array of length d");
    MultiIndex a;
    for (const auto& e : j) {
        if (!e.is_number_integer() || e.get<int>() < 0)
            throw ArgumentError(std::string(what) + " entries must be non-negative integers");
        a.push_back(e.get<int>());
    }
    return a;
}

} // namespace

json rational_json(const Rational& r) { return r.str(); }

Rational rational_from(const json& j)
{
    if (j.is_string())
        return Rational::parse(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(j.get<long>());
    throw ArgumentError("rational must be a \"p/q\" string or an integer");
}

json polyvector_json(const PolyVector& a)
{
    json terms = json::array();
    for (const auto& [k, c] : a.terms()) {
        json w = json::array();
        for (int i : k.wedge)
            w.push_back(i + 1);
        terms.push_back({{"coef", c.str()}, {"mono", k.mono}, {"wedge", w}});
    }
    return {{"type", "polyvector"}, {"d", a.dim()}, {"terms", terms}};
}

PolyVector polyvector_from(const json& j)
{
    const int d = get_dim(j);
    PolyVector out(d);
    for (const auto& t : get_terms(j)) {
        if (!t.contains("coef") || !t.contains("mono") || !t.contains("wedge") || !t["wedge"].is_array())
            throw ArgumentError("poly-vector term needs coef, mono, wedge");
        std::vector<int> w;
        for (const auto& e : t["wedge"]) {
            if (!e.is_number_integer())
                throw ArgumentError("wedge indices must be integers");
            w.push_back(e.get<int>() - 1);
        }
        out += PolyVector::term(d, rational_from(t["coef"]), index_from(t["mono"], d, "mono"), w);
    }
    return out;
}

json word_json(const DiffWord& w)
{
    json a = json::array();
    for (const auto& s : w)
        a.push_back(s);
    return a;
}

DiffWord word_from(const json& j, int d)
{
    if (!j.is_array())
        throw ArgumentError("word must be an array of multi-indices");
    DiffWord w;
    for (const auto& s : j)
        w.push_back(index_from(s, d, "word slot"));
    return w;
}

json polydiff_json(const PolyDiffOp& D)
{
    json terms = json::array();
    for (const auto& [k, c] : D.terms())
        terms.push_back({{"coef", c.str()}, {"mono", k.mono}, {"word", word_json(k.word)}});
    return {{"type", "polydiff"}, {"d", D.dim()}, {"terms", terms}};
}

PolyDiffOp polydiff_from(const json& j)
{
    const int d = get_dim(j);
    PolyDiffOp out(d);
    for (const auto& t : get_terms(j)) {
        if (!t.contains("coef") || !t.contains("mono") || !t.contains("word"))
            throw ArgumentError("poly-differential term needs coef, mono, word");
        out.add_term(PolyDiffKey{index_from(t["mono"], d, "mono"), word_from(t["word"], d)}, rational_from(t["coef"]));
    }
    return out;
}

json series_polydiff_json(const Truncated<PolyDiffOp>& w)
{
    const int d = w[0].dim();
    std::map<PolyDiffKey, std::vector<Rational>> by_key;
    for (int k = 0; k <= w.order(); ++k)
        for (const auto& [key, c] : w[k].terms()) {
            auto& v = by_key.try_emplace(key, static_cast<std::size_t>(w.order() + 1), Rational(0)).first->second;
            v[static_cast<std::size_t>(k)] = c;
        }
    json terms = json::array();
    for (const auto& [key, v] : by_key) {
        json coef = json::array();
        for (const auto& c : v)
            coef.push_back(c.str());
        terms.push_back({{"coef", coef}, {"mono", key.mono}, {"word", word_json(key.word)}});
    }
    return {{"type", "polydiff_series"}, {"d", d}, {"hbar_order", w.order()}, {"terms", terms}};
}

Truncated<PolyDiffOp> series_polydiff_from(const json& j)
{
    const int d = get_dim(j);
    if (!j.contains("hbar_order") || !j["hbar_order"].is_number_integer())
        throw ArgumentError("series element needs integer \"hbar_order\"");
    const int K = j["hbar_order"].get<int>();
    Truncated<PolyDiffOp> out(K, PolyDiffOp(d));
    for (const auto& t : get_terms(j)) {
        if (!t.contains("coef") || !t["coef"].is_array() || static_cast<int>(t["coef"].size()) != K + 1)
            throw ArgumentError("series term coef must be an array of hbar_order + 1 rationals");
        PolyDiffKey key{index_from(t["mono"], d, "mono"), word_from(t["word"], d)};
        for (int k = 0; k <= K; ++k)
            out[k].add_term(key, rational_from(t["coef"][static_cast<std::size_t>(k)]));
    }
    return out;
}

json polynomial_json(const Polynomial& p, int d)
{
    json terms = json::array();
    for (const auto& [e, c] : p)
        terms.push_back({{"coef", c.str()}, {"mono", e}});
    return {{"type", "polynomial"}, {"d", d}, {"terms", terms}};
}

Polynomial polynomial_from(const json& j, int d)
{
    if (get_dim(j) != d)
        throw ArgumentError("polynomial dimension mismatch");
    Polynomial p;
    for (const auto& t : get_terms(j))
        p.add(index_from(t.at("mono"), d, "mono"), rational_from(t.at("coef")));
    return p;
}

json matrix_json(const SparseMatrix& m)
{
    json entries = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r))
            entries.push_back({r, c, v.str()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

SparseMatrix matrix_from(const json& j)
{
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw ArgumentError("matrix JSON needs rows, cols, entries");
    SparseMatrix m(j["rows"].get<std::size_t>(), j["cols"].get<std::size_t>());
    for (const auto& e : j["entries"]) {
        if (!e.is_array() || e.size() != 3)
            throw ArgumentError("matrix entry must be [row, col, value]");
        auto r = e[0].get<std::size_t>(), c = e[1].get<std::size_t>();
        if (r >= m.rows() || c >= m.cols())
            throw ArgumentError("matrix entry out of range");
        m.set(r, c, rational_from(e[2]));
    }
    return m;
}

std::string dump_document(json j)
{
    j["schema"] = kSchema;
    return j.dump(2) + "\n";
}

} // namespace hoca
