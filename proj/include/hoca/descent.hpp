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

#ifndef HOCA_DESCENT_HPP
#define HOCA_DESCENT_HPP

#include "hoca/linalg.hpp"
#include "hoca/polyvector.hpp"

#include "json.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hoca {

// Block of a finitely truncated module: cohomological degree and an auxiliary weight.
struct BlockIndex {
    int degree = 0;
    int weight = 0;
    auto operator<=>(const BlockIndex&) const = default;
};

struct TruncatedModule {
    std::map<BlockIndex, std::size_t> dims;
    std::size_t dim(const BlockIndex& b) const;
    std::size_t total_dim() const;
};

struct HomogeneousVector {
    BlockIndex block;
    DenseVector coords;
};

/* Operator of fixed degree shift, weight preserving. blocks[b] maps block b to
 * block (b.degree + shift, b.weight); missing entries are zero. */
struct BlockOperator {
    int shift = 0;
    std::map<BlockIndex, SparseMatrix> blocks;

    void validate(const TruncatedModule& v) const; // ArgumentError on a size mismatch
    BlockIndex target(const BlockIndex& b) const { return {b.degree + shift, b.weight}; }
    // Matrix on block b, zero-filled to the module's sizes.
    SparseMatrix matrix(const TruncatedModule& v, const BlockIndex& b) const;
    HomogeneousVector apply(const TruncatedModule& v, const HomogeneousVector& x) const;
};

// Bilinear operation on homogeneous vectors; nullopt when the result leaves the truncation.
struct BilinearOperation {
    std::string name;
    std::function<std::optional<HomogeneousVector>(const HomogeneousVector&, const HomogeneousVector&)> apply;
};

struct DerivationAction {
    std::vector<std::string> names;
    std::vector<BlockOperator> ops; // degree -1 each
};

/* Registers an action: each operator must have shift -1 and be a graded
 * derivation of every operation, i(ab) = i(a)b + (-1)^{|a|} a i(b), checked on
 * seeded basis pairs. ArgumentError on failure. */
DerivationAction register_action(const TruncatedModule& v, std::vector<std::string> names,
                                  std::vector<BlockOperator> ops, const std::vector<BilinearOperation>& operations,
                                  std::uint64_t seed = 1, std::size_t samples = 64);

// L = d i + i d, blockwise.
BlockOperator lie_operator(const TruncatedModule& v, const BlockOperator& i, const BlockOperator& d);

struct FixedSubspace {
    std::map<BlockIndex, std::vector<DenseVector>> basis;
    std::size_t dim() const;
};

// Joint kernel of every i_s and L_s on each block.
FixedSubspace fixed_subspace(const TruncatedModule& v, const BlockOperator& d, const DerivationAction& s);

bool commutes_with_d(const TruncatedModule& v, const BlockOperator& l, const BlockOperator& d);

struct ClosureReport {
    bool closed = true;
    std::size_t products = 0;  // products landing inside the truncation
    std::string failure;
};
// Products of fixed basis vectors are fixed.
ClosureReport closure_check(const TruncatedModule& v, const BlockOperator& d, const DerivationAction& s,
                            const FixedSubspace& fixed, const std::vector<BilinearOperation>& operations);

/* Polynomial de Rham forms on Q^d, blocks (form degree k, weight w) with weight
 * = polynomial degree + k, truncated at w <= max_weight. Basis of a block: pairs
 * (monomial, increasing index set) in lexicographic order. */
struct DeRhamModel {
    int d = 0;
    int max_weight = 0;
    TruncatedModule module;
    std::map<BlockIndex, std::vector<std::pair<MultiIndex, std::vector<int>>>> basis;
    BlockOperator differential;
    BilinearOperation wedge;

    // Contraction with a vector field whose coefficients are linear forms.
    BlockOperator contraction(const PolyVector& x) const;
    std::string label(const BlockIndex& b, const DenseVector& v) const;
};
DeRhamModel de_rham_model(int d, int max_weight);

nlohmann::json block_operator_json(const BlockOperator& op);
nlohmann::json fixed_subspace_json(const FixedSubspace& f);

} // namespace hoca

#endif
