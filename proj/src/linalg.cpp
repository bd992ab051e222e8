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

#include "hoca/linalg.hpp"

#include "hoca/errors.hpp"

#include <utility>

namespace hoca {

void axpy(SparseVector& y, const Rational& a, const SparseVector& x)
{
    if (a.is_zero())
        return;
    for (const auto& [i, v] : x) {
        auto [it, inserted] = y.try_emplace(i, a * v);
        if (!inserted) {
            it->second += a * v;
            if (it->second.is_zero())
                y.erase(it);
        }
    }
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& v)
{
    if (c >= cols_)
        throw ArgumentError("matrix column out of range");
    auto& row = rows_.at(r);
    if (v.is_zero())
        row.erase(c);
    else
        row[c] = v;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v)
{
    if (c >= cols_)
        throw ArgumentError("matrix column out of range");
    SparseVector e{{c, v}};
    axpy(rows_.at(r), Rational(1), e);
}

Rational SparseMatrix::get(std::size_t r, std::size_t c) const
{
    const auto& row = rows_.at(r);
    auto it = row.find(c);
    return it == row.end() ? Rational(0) : it->second;
}

DenseVector SparseMatrix::apply(const DenseVector& x) const
{
    if (x.size() != cols_)
        throw ArgumentError("matrix-vector size mismatch");
    DenseVector y(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r])
            y[r] += v * x[c];
    return y;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const
{
    if (cols_ != o.rows())
        throw ArgumentError("matrix product size mismatch");
    SparseMatrix out(rows(), o.cols());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [k, v] : rows_[r])
            axpy(out.rows_[r], v, o.rows_[k]);
    return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const
{
    if (rows() != o.rows() || cols() != o.cols())
        throw ArgumentError("matrix sum size mismatch");
    SparseMatrix out = *this;
    for (std::size_t r = 0; r < rows_.size(); ++r)
        axpy(out.rows_[r], Rational(1), o.rows_[r]);
    return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const
{
    if (rows() != o.rows() || cols() != o.cols())
        throw ArgumentError("matrix difference size mismatch");
    SparseMatrix out = *this;
    for (std::size_t r = 0; r < rows_.size(); ++r)
        axpy(out.rows_[r], Rational(-1), o.rows_[r]);
    return out;
}

SparseMatrix SparseMatrix::transpose() const
{
    SparseMatrix t(cols_, rows());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r])
            t.rows_[c][r] = v;
    return t;
}

bool SparseMatrix::is_zero() const
{
    for (const auto& r : rows_)
        if (!r.empty())
            return false;
    return true;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b)
{
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.rows_[i][i] = Rational(1);
    return m;
}

namespace {

struct Reduced {
    std::vector<SparseVector> rows; // RREF rows (first `rank` are the pivot rows)
    std::vector<Rational> rhs;
    std::vector<std::size_t> pivots;
};

Reduced row_reduce(const SparseMatrix& a, const DenseVector* rhs)
{
    Reduced red;
    red.rows.reserve(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        red.rows.push_back(a.row(r));
    red.rhs = rhs ? *rhs : DenseVector(a.rows());
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < red.rows.size(); ++c) {
        std::size_t pr = red.rows.size();
        for (std::size_t r = rank; r < red.rows.size(); ++r)
            if (red.rows[r].count(c)) {
                pr = r;
                break;
            }
        if (pr == red.rows.size())
            continue;
        std::swap(red.rows[rank], red.rows[pr]);
        std::swap(red.rhs[rank], red.rhs[pr]);
        Rational inv = Rational(1) / red.rows[rank].at(c);
        for (auto& [k, v] : red.rows[rank])
            v *= inv;
        red.rhs[rank] *= inv;
        for (std::size_t r = 0; r < red.rows.size(); ++r) {
            if (r == rank)
                continue;
            auto it = red.rows[r].find(c);
            if (it == red.rows[r].end())
                continue;
            Rational f = -it->second;
            axpy(red.rows[r], f, red.rows[rank]);
            red.rhs[r] += f * red.rhs[rank];
        }
        red.pivots.push_back(c);
        ++rank;
    }
    return red;
}

std::vector<DenseVector> kernel_from(const Reduced& red, std::size_t cols)
{
    std::vector<char> is_pivot(cols, 0);
    for (auto p : red.pivots)
        is_pivot[p] = 1;
    std::vector<DenseVector> kernel;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        DenseVector v(cols);
        v[f] = Rational(1);
        for (std::size_t i = 0; i < red.pivots.size(); ++i) {
            auto it = red.rows[i].find(f);
            if (it != red.rows[i].end())
                v[red.pivots[i]] = -it->second;
        }
        kernel.push_back(std::move(v));
    }
    return kernel;
}

} // namespace

LinearSolution solve_linear(const SparseMatrix& a, const DenseVector& rhs)
{
    if (rhs.size() != a.rows())
        throw ArgumentError("solve_linear: right-hand side length differs from row count");
    Reduced red = row_reduce(a, &rhs);
    LinearSolution sol;
    sol.rank = red.pivots.size();
    sol.pivot_columns = red.pivots;
    bool consistent = true;
    for (std::size_t r = sol.rank; r < red.rows.size(); ++r)
        if (!red.rhs[r].is_zero())
            consistent = false;
    if (consistent) {
        DenseVector x(a.cols());
        for (std::size_t i = 0; i < red.pivots.size(); ++i)
            x[red.pivots[i]] = red.rhs[i];
        sol.particular = std::move(x);
    }
    sol.kernel = kernel_from(red, a.cols());
    return sol;
}

std::size_t matrix_rank(const SparseMatrix& a)
{
    return row_reduce(a, nullptr).pivots.size();
}

std::vector<DenseVector> kernel_basis(const SparseMatrix& a)
{
    return kernel_from(row_reduce(a, nullptr), a.cols());
}

SparseVector RowSpace::reduce(const SparseVector& v) const
{
    SparseVector out = v;
    for (const auto& [p, row] : rows_) {
        auto it = out.find(p);
        if (it == out.end())
            continue;
        Rational f = -it->second;
        axpy(out, f, row);
    }
    return out;
}

bool RowSpace::insert(const SparseVector& v)
{
    SparseVector r = reduce(v);
    if (r.empty())
        return false;
    auto lead = r.begin()->first;
    Rational inv = Rational(1) / r.begin()->second;
    for (auto& [k, x] : r)
        x *= inv;
    for (auto& [p, row] : rows_) {
        auto it = row.find(lead);
        if (it == row.end())
            continue;
        Rational f = -it->second;
        axpy(row, f, r);
    }
    rows_.emplace(lead, std::move(r));
    return true;
}

SparseVector to_sparse(const DenseVector& v)
{
    SparseVector s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero())
            s.emplace(i, v[i]);
    return s;
}

DenseVector to_dense(const SparseVector& v, std::size_t n)
{
    DenseVector d(n);
    for (const auto& [i, x] : v) {
        if (i >= n)
            throw ArgumentError("sparse index exceeds dense length");
        d[i] = x;
    }
    return d;
}

} // namespace hoca
