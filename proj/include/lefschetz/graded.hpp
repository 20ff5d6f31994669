/*
   Copyright 2026 The lefschetz authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/**
 * @file graded.hpp
 * @brief Graded maps phi: (+)_i R(-a_i) -> (+)_j R(-b_j) with n+2 source and n
 *        target summands, their degree-d matrices, and the Hilbert functions
 *        of kernel and cokernel.
 *
 * When M = coker phi has finite length, the Buchsbaum-Rim complex
 *
 *     0 -> G^v(b-a) -> F^v(b-a) -> F -> G -> M -> 0
 *
 * is exact, so dim M_d is the alternating sum of four free-module dimensions.
 * coker_dims measures dim M_d by rank and insists on agreement with that sum
 * at every degree up to one past the top; this is the finite-length test.
 */

#ifndef LEFSCHETZ_GRADED_HPP
#define LEFSCHETZ_GRADED_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace lefschetz {

/// Twists (c_1, ..., c_m) of the free module (+)_i R(-c_i).
class TwistSequence {
public:
    TwistSequence() = default;
    TwistSequence(std::initializer_list<int> twists) : twists_(twists) {}
    explicit TwistSequence(std::vector<int> twists) : twists_(std::move(twists)) {}

    std::size_t size() const { return twists_.size(); }
    bool empty() const { return twists_.empty(); }
    int operator[](std::size_t i) const { return twists_[i]; }
    const std::vector<int>& values() const { return twists_; }

    int sum() const { return std::accumulate(twists_.begin(), twists_.end(), 0); }
    int min() const { return *std::min_element(twists_.begin(), twists_.end()); }
    int max() const { return *std::max_element(twists_.begin(), twists_.end()); }

    /// Second elementary symmetric function of the twists.
    std::int64_t e2() const {
        std::int64_t out = 0;
        for (std::size_t i = 0; i < twists_.size(); ++i)
            for (std::size_t j = i + 1; j < twists_.size(); ++j)
                out += static_cast<std::int64_t>(twists_[i]) * twists_[j];
        return out;
    }

    /// (shift - c_i)_i, the twists of the dual module twisted by R(-shift).
    TwistSequence dual_twisted(int shift) const {
        std::vector<int> out;
        out.reserve(twists_.size());
        for (int c : twists_) out.push_back(shift - c);
        return TwistSequence(std::move(out));
    }

    friend bool operator==(const TwistSequence&, const TwistSequence&) = default;

private:
    std::vector<int> twists_;
};

/// dim of (+)_i R(-c_i) in degree d.
inline std::size_t free_dim(const TwistSequence& tw, int d) {
    std::size_t out = 0;
    for (int c : tw.values()) out += monomial_count(d - c);
    return out;
}

/// Alternating sum over the Buchsbaum-Rim complex; equals dim M_d when the
/// cokernel has finite length.
inline std::int64_t expected_hilbert(const TwistSequence& src, const TwistSequence& tgt, int d) {
    if (src.size() != tgt.size() + 2)
        throw ShapeError("expected_hilbert: source must have two more summands than target");
    const int shift = src.sum() - tgt.sum();
    const auto dim = [d](const TwistSequence& tw) { return static_cast<std::int64_t>(free_dim(tw, d)); };
    return dim(tgt) - dim(src) + dim(src.dual_twisted(shift)) - dim(tgt.dual_twisted(shift));
}

/// a - b - min(b_j) - 3: the last degree where M can be nonzero.
inline int top_degree(const TwistSequence& src, const TwistSequence& tgt) {
    return src.sum() - tgt.sum() - tgt.min() - 3;
}

/// Hilbert function with finite support, stored from its first nonzero degree.
class HilbertFunction {
public:
    HilbertFunction() = default;

    /// Trims leading and trailing zeros.
    HilbertFunction(int offset, std::vector<std::size_t> dims) {
        auto first = std::find_if(dims.begin(), dims.end(), [](auto v) { return v != 0; });
        if (first == dims.end()) return;
        auto last = std::find_if(dims.rbegin(), dims.rend(), [](auto v) { return v != 0; }).base();
        offset_ = offset + static_cast<int>(first - dims.begin());
        dims_.assign(first, last);
    }

    int offset() const { return offset_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    bool is_zero() const { return dims_.empty(); }
    /// One past the last nonzero degree.
    int end_degree() const { return offset_ + static_cast<int>(dims_.size()); }

    std::size_t at(int d) const {
        if (d < offset_ || d >= end_degree()) return 0;
        return dims_[static_cast<std::size_t>(d - offset_)];
    }

    std::size_t total() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }

    friend bool operator==(const HilbertFunction&, const HilbertFunction&) = default;

private:
    int offset_ = 0;
    std::vector<std::size_t> dims_;
};

/**
 * phi as an n x (n+2) grid of forms; entry (j, i) has degree a_i - b_j and is
 * the zero form when that is negative.
 */
template <Field F>
class GradedMap {
public:
    using Poly = HomogPoly<F>;

    GradedMap(TwistSequence source, TwistSequence target, std::vector<Poly> entries)
        : source_(std::move(source)), target_(std::move(target)), entries_(std::move(entries)) {
        if (target_.empty()) throw ShapeError("GradedMap: target must have at least one summand");
        if (source_.size() != target_.size() + 2)
            throw ShapeError("GradedMap: source has " + std::to_string(source_.size()) +
                             " summands, expected " + std::to_string(target_.size() + 2));
        if (entries_.size() != source_.size() * target_.size())
            throw ShapeError("GradedMap: entry grid must be n x (n+2)");
        for (std::size_t j = 0; j < target_.size(); ++j)
            for (std::size_t i = 0; i < source_.size(); ++i) {
                const int want = source_[i] - target_[j];
                const int got = entry(j, i).degree();
                if (want >= 0 ? got != want : got >= 0)
                    throw DegreeError("GradedMap: entry (" + std::to_string(j) + "," + std::to_string(i) +
                                      ") has degree " + std::to_string(got) + ", expected " +
                                      std::to_string(want));
            }
    }

    const TwistSequence& source() const { return source_; }
    const TwistSequence& target() const { return target_; }
    std::size_t n() const { return target_.size(); }

    const Poly& entry(std::size_t j, std::size_t i) const { return entries_[j * source_.size() + i]; }
    const std::vector<Poly>& entries() const { return entries_; }

private:
    TwistSequence source_;
    TwistSequence target_;
    std::vector<Poly> entries_;
};

/// Degree-d matrix of phi: free_dim(target, d) x free_dim(source, d), blocks
/// ordered summand-then-monomial.
template <Field F>
Matrix<typename F::Element> phi_matrix(const F& field, const GradedMap<F>& m, int d) {
    const auto& src = m.source();
    const auto& tgt = m.target();
    Matrix<typename F::Element> out(free_dim(tgt, d), free_dim(src, d), field.zero());

    std::size_t row0 = 0;
    for (std::size_t j = 0; j < tgt.size(); ++j) {
        std::size_t col0 = 0;
        for (std::size_t i = 0; i < src.size(); ++i) {
            const auto& f = m.entry(j, i);
            const int src_deg = d - src[i];
            if (f.degree() >= 0 && src_deg >= 0) {
                const auto cols = monomial_basis(src_deg);
                const auto terms = monomial_basis(f.degree());
                for (std::size_t c = 0; c < cols.size(); ++c)
                    for (std::size_t k = 0; k < terms.size(); ++k) {
                        if (field.is_zero(f.coeffs()[k])) continue;
                        const Monomial prod{cols[c].x + terms[k].x, cols[c].y + terms[k].y,
                                            cols[c].z + terms[k].z};
                        out(row0 + monomial_index(prod), col0 + c) = f.coeffs()[k];
                    }
            }
            col0 += monomial_count(src_deg);
        }
        row0 += monomial_count(d - tgt[j]);
    }
    return out;
}

/**
 * A basis of M_d = G_d / im(phi_d) in reduced form: the reduced row-echelon
 * form of phi_d^T has one row per pivot coordinate of G_d, and the standard
 * vectors on the remaining ("free") coordinates map to a basis of M_d.
 * `reducer(r, k)` is row r of that form at free coordinate k.
 */
template <Field F>
struct CokernelBasis {
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> free;
    Matrix<typename F::Element> reducer;

    std::size_t dim() const { return free.size(); }

    /// Coordinates in the M_d basis of the class of w in G_d.
    std::vector<typename F::Element> project(const F& field, const std::vector<typename F::Element>& w) const {
        std::vector<typename F::Element> out;
        out.reserve(free.size());
        for (auto k : free) out.push_back(w[k]);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            const auto& c = w[pivots[r]];
            if (field.is_zero(c)) continue;
            for (std::size_t k = 0; k < free.size(); ++k)
                if (!field.is_zero(reducer(r, k))) out[k] = field.sub(out[k], field.mul(c, reducer(r, k)));
        }
        return out;
    }
};

template <Field F>
CokernelBasis<F> cokernel_basis(const F& field, const GradedMap<F>& m, int d) {
    const std::size_t target_dim = free_dim(m.target(), d);
    CokernelBasis<F> basis;
    if (free_dim(m.source(), d) != 0 && target_dim != 0) {
        auto ech = reduced_echelon_form(field, transpose(phi_matrix(field, m, d)));
        basis.pivots = std::move(ech.pivots);
        std::vector<bool> is_pivot(target_dim, false);
        for (auto p : basis.pivots) is_pivot[p] = true;
        for (std::size_t k = 0; k < target_dim; ++k)
            if (!is_pivot[k]) basis.free.push_back(k);
        basis.reducer = Matrix<typename F::Element>(basis.pivots.size(), basis.free.size(), field.zero());
        for (std::size_t r = 0; r < basis.pivots.size(); ++r)
            for (std::size_t k = 0; k < basis.free.size(); ++k) basis.reducer(r, k) = ech.rows(r, basis.free[k]);
    } else {
        for (std::size_t k = 0; k < target_dim; ++k) basis.free.push_back(k);
    }
    return basis;
}

/**
 * Memoized per-degree cokernel bases of phi, and the ranks they carry.
 * Kernel and cokernel dimensions, the cohomology table, the classifier and
 * the rank profiles all read from one of these, so each degree is eliminated
 * once per instance.
 */
template <Field F>
class DegreeRanks {
public:
    DegreeRanks(const F& field, const GradedMap<F>& map) : field_(field), map_(map) {}

    const F& field() const { return field_; }
    const GradedMap<F>& map() const { return map_; }

    std::size_t phi_rank(int d) const { return cokernel_basis(d).pivots.size(); }

    /// dim M_d measured directly.
    std::size_t coker_dim(int d) const { return free_dim(map_.target(), d) - phi_rank(d); }

    /// dim ker phi_t = h^0(E(t)).
    std::size_t kernel_dim(int t) const { return free_dim(map_.source(), t) - phi_rank(t); }

    const CokernelBasis<F>& cokernel_basis(int d) const {
        auto it = bases_.find(d);
        if (it == bases_.end()) it = bases_.emplace(d, lefschetz::cokernel_basis(field_, map_, d)).first;
        return it->second;
    }

private:
    const F& field_;
    const GradedMap<F>& map_;
    mutable std::map<int, CokernelBasis<F>> bases_;
};

template <Field F>
HilbertFunction coker_dims(const DegreeRanks<F>& ranks) {
    const auto& src = ranks.map().source();
    const auto& tgt = ranks.map().target();
    const int lo = tgt.min();
    const int top = top_degree(src, tgt);
    // M is generated in degrees <= max(b_j), so a zero past both the top and
    // the generators forces every later degree to vanish too.
    const int hi = std::max(top, tgt.max()) + 1;

    std::vector<std::size_t> dims;
    for (int d = lo; d <= hi; ++d) {
        const auto direct = static_cast<std::int64_t>(ranks.coker_dim(d));
        const auto expected = expected_hilbert(src, tgt, d);
        if (direct != expected)
            throw NotFiniteLength("cokernel has dimension " + std::to_string(direct) + " in degree " +
                                  std::to_string(d) + " but the Buchsbaum-Rim alternating sum gives " +
                                  std::to_string(expected));
        if (d > top && direct != 0)
            throw NotFiniteLength("cokernel is nonzero in degree " + std::to_string(d) +
                                  ", past the top degree " + std::to_string(top));
        dims.push_back(static_cast<std::size_t>(direct));
    }
    return HilbertFunction(lo, std::move(dims));
}

template <Field F>
HilbertFunction coker_dims(const F& field, const GradedMap<F>& m) {
    return coker_dims(DegreeRanks<F>(field, m));
}

/// h^0(E(t)) = dim ker phi_t.
template <Field F>
std::size_t kernel_dims(const F& field, const GradedMap<F>& m, int t) {
    return DegreeRanks<F>(field, m).kernel_dim(t);
}

/// Every column needs an entry of non-negative degree, or the generic map
/// has a zero column and the cokernel cannot have finite length.
inline bool degree_pattern_admissible(const TwistSequence& src, const TwistSequence& tgt) {
    for (int a : src.values())
        if (std::none_of(tgt.values().begin(), tgt.values().end(), [a](int b) { return a >= b; }))
            return false;
    return true;
}

template <Field F>
GradedMap<F> random_map(const F& field, const TwistSequence& src, const TwistSequence& tgt,
                        std::mt19937_64& rng) {
    std::vector<HomogPoly<F>> entries;
    entries.reserve(src.size() * tgt.size());
    for (std::size_t j = 0; j < tgt.size(); ++j)
        for (std::size_t i = 0; i < src.size(); ++i) {
            const int deg = src[i] - tgt[j];
            entries.push_back(deg >= 0 ? random_homog(field, deg, rng) : HomogPoly<F>::zero(field, deg));
        }
    return GradedMap<F>(src, tgt, std::move(entries));
}

/**
 * A random map with finite-length cokernel. Each attempt redraws every entry;
 * after `max_attempts` failures the degree pattern is declared infeasible.
 */
template <Field F>
GradedMap<F> random_instance(const F& field, const TwistSequence& src, const TwistSequence& tgt,
                             std::mt19937_64& rng, int max_attempts = 8) {
    if (tgt.empty() || src.size() != tgt.size() + 2)
        throw ShapeError("random_instance: source must have two more summands than target");
    if (!degree_pattern_admissible(src, tgt))
        throw GenerationFailed("random_instance: some source summand maps to zero for every target twist");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        auto m = random_map(field, src, tgt, rng);
        try {
            coker_dims(field, m);
            return m;
        } catch (const NotFiniteLength&) {
        }
    }
    throw GenerationFailed("random_instance: no finite-length cokernel after " + std::to_string(max_attempts) +
                           " attempts");
}

/// Koszul presentation R(-d1) + R(-d2) + R(-d3) -> R of R/(f1, f2, f3).
template <Field F>
GradedMap<F> ci_instance(const HomogPoly<F>& f1, const HomogPoly<F>& f2, const HomogPoly<F>& f3) {
    for (const auto* f : {&f1, &f2, &f3})
        if (f->degree() < 1) throw DegreeError("ci_instance: forms must have positive degree");
    return GradedMap<F>(TwistSequence{f1.degree(), f2.degree(), f3.degree()}, TwistSequence{0}, {f1, f2, f3});
}

}  // namespace lefschetz

#endif  // LEFSCHETZ_GRADED_HPP
