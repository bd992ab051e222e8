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

#ifndef HOCA_HKR_HPP
#define HOCA_HKR_HPP

#include "hoca/linalg.hpp"
#include "hoca/polydiff.hpp"
#include "hoca/polyvector.hpp"

#include "json.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace hoca {

// f d_{s1}^..^d_{sn} -> f (1/n!) sum_sigma sgn(sigma) d_{s_sigma(1)} (x) .. (x) d_{s_sigma(n)}
PolyDiffOp hkr_i(const PolyVector& a);
// Kills words with a slot of order != 1, sends d_{i1} (x) .. (x) d_{in} to d_{i1}^..^d_{in}.
PolyVector hkr_p(const PolyDiffOp& D);

// Constant-coefficient block: words with n slots and slot multidegree gamma.
struct BlockKey {
    int n;
    MultiIndex gamma;
    auto operator<=>(const BlockKey&) const = default;
};

// Basis of the block, in a fixed order (lexicographic on words).
std::vector<DiffWord> block_basis(int d, const BlockKey& b);
// Matrix of hochschild_d from block (n, gamma) to (n + 1, gamma).
SparseMatrix block_differential(int d, const BlockKey& b);

struct HomotopyBlock {
    BlockKey key;
    std::vector<DiffWord> basis;       // block (n, gamma)
    std::vector<DiffWord> lower_basis; // block (n - 1, gamma)
    SparseMatrix h;                    // lower_basis.size() x basis.size()
};

struct BlockReport {
    BlockKey key;
    bool p_i_identity = false;   // p i = id
    bool h_i_zero = false;       // H i = 0
    bool homotopy_identity = false; // i p - id = d H + H d
    bool p_d_zero = false;       // p d = 0
    bool side_conditions = false;   // p H = 0, H H = 0
    std::size_t cohomology = 0;
    std::size_t exterior_dim = 0;
    bool ok() const
    {
        return p_i_identity && h_i_zero && homotopy_identity && p_d_zero && side_conditions &&
               cohomology == exterior_dim;
    }
};

/* Memoized homotopy H' on the constant-coefficient Hochschild complex of
 * Q[t_1..t_d], base-extended R-linearly. Block construction is at most once
 * per block and safe to call concurrently. Blocks with n > max_words or
 * total order > max_order raise ResourceError. */
class HomotopyTable {
public:
    HomotopyTable(int d, int max_words, int max_order);

    int dim() const { return d_; }
    int max_words() const { return max_words_; }
    int max_order() const { return max_order_; }

    const HomotopyBlock& block(const BlockKey& b) const;
    PolyDiffOp apply(const PolyDiffOp& D) const; // H

    // dim ker d_n - rank d_{n-1} on the block, and summed over |gamma| = w.
    std::size_t cohomology_dim(const BlockKey& b) const;
    std::size_t cohomology_dim(int n, int w) const;
    BlockReport verify(const BlockKey& b) const;
    std::vector<BlockKey> blocks(int n, int w) const; // all gamma with |gamma| = w

    nlohmann::json to_json() const; // every block built so far
    // Seed blocks from exported data (validated). Call before sharing the table.
    void load_json(const nlohmann::json& j);
    std::size_t cached_blocks() const;

private:
    void check_bounds(const BlockKey& b) const;
    std::unique_ptr<HomotopyBlock> build(const BlockKey& b) const;

    struct Slot {
        std::once_flag once;
        std::unique_ptr<HomotopyBlock> data;
    };

    int d_, max_words_, max_order_;
    mutable std::mutex mutex_;
    mutable std::map<BlockKey, std::unique_ptr<Slot>> cache_;
};

std::size_t exterior_dim(int d, const BlockKey& b);

} // namespace hoca

#endif
