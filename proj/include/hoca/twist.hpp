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

#ifndef HOCA_TWIST_HPP
#define HOCA_TWIST_HPP

#include "hoca/errors.hpp"
#include "hoca/family.hpp"
#include "hoca/polydiff.hpp"
#include "hoca/polyvector.hpp"
#include "hoca/series.hpp"
#include "hoca/transfer.hpp"

#include <span>
#include <string>
#include <vector>

namespace hoca {

using SeriesOp = Truncated<PolyDiffOp>;
using SeriesVec = Truncated<PolyVector>;

// Parity of |x| - 1 for a homogeneous element (0 for zero).
int shifted_parity(const PolyDiffOp& x);
int shifted_parity(const PolyVector& x);

// Raised when an element fails the Maurer-Cartan equation; carries the residual.
class McFailure : public ArgumentError {
public:
    McFailure(const std::string& what, int first_order) : ArgumentError(what), first_order_(first_order) {}
    int first_order() const { return first_order_; }

private:
    int first_order_;
};

/* MC elements: degree 1 (2-slot words, resp. bivectors) and no hbar^0 part.
 * Violations raise ArgumentError. */
void validate_mc_element(const SeriesOp& w);
void validate_mc_element(const SeriesVec& w);

SeriesOp zero_series(int d, int order);
SeriesVec zero_series_vec(int d, int order);

// d w + w{w}
SeriesOp mc_residual_b(const SeriesOp& w);
bool mc_check_b(const SeriesOp& w);

// sum_{i >= 1} (1/i!) Q^i(w, .., w), truncated.
template <class T>
Truncated<T> mc_residual_l(const StructureFamily<T>& q, const Truncated<T>& w, const T& zero)
{
    const int K = w.order();
    if (q.truncated && q.max_arity < K)
        throw ResourceError("MC residual needs structure coefficients up to the truncation order");
    auto lq = lift(q, K, zero);
    Truncated<T> out(K, zero);
    Rational inv(1);
    for (int i = 1; i <= std::min(K, q.max_arity); ++i) {
        inv /= Rational(i);
        std::vector<Truncated<T>> args(static_cast<std::size_t>(i), w);
        out += lq.apply(args) * inv;
    }
    return out;
}
bool mc_check_l(const StructureFamily<PolyDiffOp>& q, const SeriesOp& w);
bool mc_check_l(const StructureFamily<PolyVector>& q, const SeriesVec& w);

/* B-infinity structure of the brace algebra, twisted by w:
 *   m_w = m,  Q_w^1(g) = (mu + w){g} - (-1)^{|g|} g{mu + w},
 *   Q_w^p(g_1..g_p) = (mu + w){g_1..g_p} for p >= 2. */
struct TwistedB {
    SeriesOp omega;
    SeriesOp differential(const SeriesOp& g) const;
    SeriesOp q(std::span<const SeriesOp> g) const;
    SeriesOp m(const SeriesOp& x, std::span<const SeriesOp> ys) const;
};
TwistedB twist_b(const SeriesOp& w); // McFailure when the MC equation fails

/* Q_w^i(g) = sum_j (1/j!) Q^{i+j}(w^j, g), i >= 1. */
template <class T>
StructureFamily<Truncated<T>> twist_l(const StructureFamily<T>& q, const Truncated<T>& w, const T& zero)
{
    const int K = w.order();
    auto lq = lift(q, K, zero);
    StructureFamily<Truncated<T>> out;
    out.max_arity = q.max_arity;
    out.truncated = q.truncated;
    out.apply = [lq, w, K, zero](std::span<const Truncated<T>> g) {
        const int i = static_cast<int>(g.size());
        if (i == 0)
            throw ArgumentError("twisted coefficients start at arity 1");
        if (lq.truncated && i + K > lq.max_arity)
            throw ResourceError("twisted coefficient needs structure maps beyond the computed arity");
        Truncated<T> sum(K, zero);
        Rational inv(1);
        for (int j = 0; j <= K && i + j <= lq.max_arity; ++j) {
            if (j > 0)
                inv /= Rational(j);
            std::vector<Truncated<T>> args(static_cast<std::size_t>(j), w);
            args.insert(args.end(), g.begin(), g.end());
            sum += lq.apply(args) * inv;
        }
        return sum;
    };
    return out;
}

template <class S, class T>
struct TwistedMorphism {
    MorphismFamily<Truncated<S>, Truncated<T>> psi;
    Truncated<T> omega_prime; // sum_{j >= 1} (1/j!) psi^j(w^j)
};

// psi_w^i(g) = sum_j (1/j!) psi^{i+j}(w^j, g).
template <class S, class T>
TwistedMorphism<S, T> twist_morphism(const MorphismFamily<S, T>& psi, const Truncated<S>& w, const T& zero)
{
    const int K = w.order();
    if (psi.truncated && psi.max_arity < K)
        throw ResourceError("twisted MC element needs morphism coefficients up to the truncation order");
    auto lp = lift(psi, K, zero);
    Truncated<T> wp(K, zero);
    Rational inv(1);
    for (int j = 1; j <= std::min(K, psi.max_arity); ++j) {
        inv /= Rational(j);
        std::vector<Truncated<S>> args(static_cast<std::size_t>(j), w);
        wp += lp.apply(args) * inv;
    }
    MorphismFamily<Truncated<S>, Truncated<T>> tw;
    tw.max_arity = psi.max_arity;
    tw.truncated = psi.truncated;
    tw.apply = [lp, w, K, zero](std::span<const Truncated<S>> g) {
        const int i = static_cast<int>(g.size());
        if (i == 0)
            throw ArgumentError("twisted coefficients start at arity 1");
        if (lp.truncated && i + K > lp.max_arity)
            throw ResourceError("twisted coefficient needs morphism maps beyond the computed arity");
        Truncated<T> sum(K, zero);
        Rational c(1);
        for (int j = 0; j <= K && i + j <= lp.max_arity; ++j) {
            if (j > 0)
                c /= Rational(j);
            std::vector<Truncated<S>> args(static_cast<std::size_t>(j), w);
            args.insert(args.end(), g.begin(), g.end());
            sum += lp.apply(args) * c;
        }
        return sum;
    };
    return {tw, wp};
}

/* Delta(e^w) = e^w (x) e^w in the symmetric coalgebra on D_poly[1], with
 * coefficients truncated at the order of w. w needs no hbar^0 part; its
 * degree is not checked, so odd elements make the identity fail. */
bool grouplike_check(const SeriesOp& w);

/* sum_{n=1..K} (hbar^n / n!) pi^n, the n-th power taken slotwise. pi must be a
 * constant-coefficient antisymmetric combination of 2-slot words. */
SeriesOp moyal_series(const PolyDiffOp& pi, int order);

// Q^2(x, y) = (-1)^{|x|-1} schouten(x, y) on T_poly[1]; no differential.
StructureFamily<PolyVector> schouten_family(int d);
// Transferred structure (raw coefficients) and transfer morphism of a context.
StructureFamily<PolyVector> transferred_family(const TransferContext& ctx);
MorphismFamily<PolyVector, PolyDiffOp> transfer_morphism(const TransferContext& ctx);

} // namespace hoca

#endif
