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

#ifndef HOCA_AUDIT_HPP
#define HOCA_AUDIT_HPP

#include "hoca/polydiff.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hoca {

// Outcome of one identity family over a batch of samples.
struct CheckResult {
    CheckResult() = default;
    explicit CheckResult(std::string n) : name(std::move(n)) {}
    std::string name;
    std::size_t samples = 0;
    std::size_t failures = 0;
    std::string first_failure;
    bool passed() const { return samples > 0 && failures == 0; }
    void record(bool ok, const std::string& what);
};
nlohmann::json check_json(const CheckResult& r);

/* a{b_1..b_q}{c_1..c_r} expanded by the brace relation: the sum over ways of
 * letting each b_k absorb a consecutive run of c's, with the Koszul sign of
 * moving the b's past the c's they overtake. */
PolyDiffOp brace_relation_rhs(const PolyDiffOp& a, const std::vector<PolyDiffOp>& b, const std::vector<PolyDiffOp>& c);

// Antisymmetry, Jacobi and Leibniz for schouten / wedge; d in 1..3, coefficient degree <= 3.
CheckResult check_gerstenhaber(std::uint64_t seed, std::size_t samples);
// Brace relation on words of length <= 2, slot order <= 2, d = 2.
CheckResult check_brace_relation(std::uint64_t seed, std::size_t samples);
// m^{1,1}(mu, mu) = 0, hochschild_d^2 = 0, Q^n = 0 for n = 3, 4.
CheckResult check_inner_structure(std::uint64_t seed, std::size_t samples);
// Cohomology and homotopy identities on every block with n <= max_words, order <= max_order.
CheckResult check_hkr_blocks(int d, int max_words, int max_order);
// Transfer identities at arities 2 and 3 and q1(a, b) = schouten(a, b), d = 2.
CheckResult check_transfer_identities(std::uint64_t seed, std::size_t samples);
// Tree counts 1, 1, 3, 11 and the weight of ((1(23))4).
CheckResult check_tree_combinatorics();
// Moyal MC for K <= 3, twisted differential, its square, group-like exponential.
CheckResult check_twisting(std::uint64_t seed, std::size_t samples);
// brace(w, args) = 0 for a 1-slot word w and at least two arguments.
CheckResult check_brace_vanishing(std::uint64_t seed, std::size_t samples);
// Span equality on the two reference blocks and the strict linear-only inequality.
CheckResult check_graph_span();
// Fixed subspace of a toy gl-action on de Rham forms: closure and L = d i + i d.
CheckResult check_descent();

// All checks in a fixed order; the report holds no timings so it is reproducible.
struct AuditReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    bool passed() const;
};
AuditReport run_audit(std::uint64_t seed, bool parallel = true);
nlohmann::json audit_json(const AuditReport& r);

} // namespace hoca

#endif
