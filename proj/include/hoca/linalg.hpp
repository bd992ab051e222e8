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

#ifndef HOCA_LINALG_HPP
#define HOCA_LINALG_HPP

#include "hoca/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace hoca {

using SparseVector = std::map<std::size_t, Rational>;
using DenseVector = std::vector<Rational>;

void axpy(SparseVector& y, const Rational& a, const SparseVector& x); // y += a x

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    void set(std::size_t r, std::size_t c, const Rational& v);
    void add(std::size_t r, std::size_t c, const Rational& v);
    Rational get(std::size_t r, std::size_t c) const;
    const SparseVector& row(std::size_t r) const { return rows_.at(r); }
    SparseVector& row(std::size_t r) { return rows_.at(r); }

    DenseVector apply(const DenseVector& x) const;
    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    SparseMatrix transpose() const;
    bool is_zero() const;
    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

    static SparseMatrix identity(std::size_t n);

private:
    std::size_t cols_ = 0;
    std::vector<SparseVector> rows_;
};

struct LinearSolution {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
    // Set when the system is consistent; free variables are taken as zero.
    std::optional<DenseVector> particular;
    // One vector per free column, in increasing column order.
    std::vector<DenseVector> kernel;
    std::size_t nullity() const { return kernel.size(); }
};

/* Exact Gauss-Jordan elimination. Pivot rule: the leftmost column holding a
 * nonzero entry among the unpivoted rows, taking the lowest such row. An
 * inconsistent system yields particular == nullopt, never an exception. */
LinearSolution solve_linear(const SparseMatrix& a, const DenseVector& rhs);

std::size_t matrix_rank(const SparseMatrix& a);
std::vector<DenseVector> kernel_basis(const SparseMatrix& a);

/* Incrementally maintained reduced row echelon basis of a subspace. reduce()
 * gives a canonical representative of v modulo the span. */
class RowSpace {
public:
    bool insert(const SparseVector& v); // false if already in the span
    SparseVector reduce(const SparseVector& v) const;
    bool contains(const SparseVector& v) const { return reduce(v).empty(); }
    std::size_t rank() const { return rows_.size(); }
    bool is_pivot(std::size_t col) const { return rows_.count(col) != 0; }
    const std::map<std::size_t, SparseVector>& rows() const { return rows_; }

private:
    std::map<std::size_t, SparseVector> rows_; // keyed by pivot column, pivot entry 1
};

SparseVector to_sparse(const DenseVector& v);
DenseVector to_dense(const SparseVector& v, std::size_t n);

} // namespace hoca

#endif
