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

#ifndef HOCA_TRANSFER_HPP
#define HOCA_TRANSFER_HPP

#include "hoca/family.hpp"
#include "hoca/hkr.hpp"
#include "hoca/polydiff.hpp"
#include "hoca/polyvector.hpp"

#include "json.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace hoca {

// Leaf(index) when children is empty; leaves are 1..n in planar order.
struct PlanarTree {
    int leaf = 0;
    std::vector<PlanarTree> children;

    bool is_leaf() const { return children.empty(); }
    int leaves() const;
    std::string shape() const; // nested brackets, labels dropped
    auto operator<=>(const PlanarTree&) const = default;
};

std::vector<PlanarTree> enumerate_trees(int n, bool binary_only = false, int max_leaves = 8);
long tree_weight(const PlanarTree& t);
nlohmann::json tree_json(const PlanarTree& t);
PlanarTree tree_from(const nlohmann::json& j);

// Structure maps on D_poly[1]; m = 1 is the differential.
using OperationFamily = StructureFamily<PolyDiffOp>;

// Q^1 = hochschild_d, Q^2(x, y) = (-1)^{|x|-1} [x, y], Q^m = 0 for m >= 3.
OperationFamily dg_lie_operations(int d);

struct TransferStats {
    std::size_t memo_entries = 0;
    std::size_t memo_hits = 0;
};

/* Transfer of the structure on D_poly onto T_poly along (hkr_i, hkr_p, H).
 * All maps are multilinear; inputs are expanded into basis terms and every
 * (tree shape, basis tuple) evaluation is memoized under a mutex.
 *
 * psi / q1 return Taylor coefficients in the bracket form
 *   l_n(x_1..x_n) = (-1)^{sum_i (n - i)(|x_i| - 1)} c_n(x_1..x_n),
 * where c_n is the coefficient on S^c(g[1]); psi_raw / q1_raw return c_n.
 * q1 is further conjugated by s(a) = (-1)^{p(p-1)/2} a on p-vectors, the
 * normalization of the HKR identification under which q1 at arity 2 is the
 * Schouten bracket; psi keeps psi^1 = hkr_i. */
class TransferContext {
public:
    TransferContext(int d, int max_arity, std::shared_ptr<const HomotopyTable> h = nullptr);
    TransferContext(int d, int max_arity, OperationFamily ops, std::shared_ptr<const HomotopyTable> h);

    int dim() const { return d_; }
    int max_arity() const { return max_arity_; }
    const HomotopyTable& homotopy() const { return *h_; }
    const OperationFamily& operations() const { return ops_; }

    PolyDiffOp psi_raw(std::span<const PolyVector> in, bool parallel = true) const;
    PolyVector q1_raw(std::span<const PolyVector> in, bool parallel = true) const;
    PolyDiffOp psi(std::span<const PolyVector> in) const;
    PolyVector q1(std::span<const PolyVector> in) const;

    // Set-partition recursion, no planar trees, no memo. Cross-check oracle.
    PolyDiffOp psi_oracle(std::span<const PolyVector> in) const;
    PolyVector q1_oracle(std::span<const PolyVector> in) const;

    TransferStats stats() const;
    void clear_memo() const;

private:
    using TermTuple = std::vector<PolyVectorKey>;
    PolyDiffOp root_sum(const TermTuple& x, bool parallel) const; // sum_{sigma,T} +-1/w_T Q_T
    PolyDiffOp subtree(const PlanarTree& t, std::span<const PolyVectorKey> x) const;
    PolyDiffOp oracle_root(std::span<const PolyVectorKey> x) const;
    PolyDiffOp oracle_psi(std::span<const PolyVectorKey> x) const;
    void check_arity(std::size_t n) const;

    int d_, max_arity_;
    OperationFamily ops_;
    std::shared_ptr<const HomotopyTable> h_;
    std::vector<std::vector<PlanarTree>> trees_; // by leaf count
    mutable std::mutex mutex_;
    mutable std::map<std::pair<std::string, TermTuple>, PolyDiffOp> memo_;
    mutable std::size_t hits_ = 0;
};

struct TransferResidual {
    std::string identity; // "Q2 psi = psi Q1" or "Q1^2 = 0"
    std::vector<PolyVector> inputs;
    nlohmann::json residual;
};

struct TransferReport {
    int arity = 0;
    std::size_t samples = 0;
    bool morphism_ok = true;
    bool square_zero_ok = true;
    bool no_coverage = false;
    std::vector<TransferResidual> failures;
    bool ok() const { return morphism_ok && square_zero_ok; }
};

// P Q2 psi I_n - P psi Q1 I_n on a tuple of basis terms.
PolyDiffOp morphism_residual(const TransferContext& ctx, std::span<const PolyVector> in);
// P Q1 Q1 I_{n+1} on a tuple of basis terms (length n + 1).
PolyVector square_residual(const TransferContext& ctx, std::span<const PolyVector> in);

/* Samples basis tuples from the seed: wedge size <= d, coefficient degree
 * <= max_coef. Identity one is checked on n-tuples, identity two on
 * (n + 1)-tuples. */
TransferReport check_transfer(const TransferContext& ctx, int n, std::size_t samples, std::uint64_t seed,
                              int max_coef = 1);
TransferReport check_transfer(const TransferContext& ctx, int n, std::span<const std::vector<PolyVector>> tuples);
nlohmann::json report_json(const TransferReport& r);

// Basis terms of T_poly with wedge size <= d and coefficient degree <= max_coef.
std::vector<PolyVector> polyvector_basis(int d, int max_coef);

} // namespace hoca

#endif
