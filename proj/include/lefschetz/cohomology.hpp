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
 * @file cohomology.hpp
 * @brief The rank-2 bundle E = ker(phi) on P^2: Chern data, cohomology
 *        tables, stability class, index of instability and splitting type on
 *        a general line.
 *
 * Twists t in this header are in module grading (E(t) with E the sheafified
 * kernel) unless a name says "norm". The normalized bundle is E(s) with
 * c1 + 2s in {-1, 0}, so h^0(E_norm(j)) = dim ker phi_{j+s}.
 */

#ifndef LEFSCHETZ_COHOMOLOGY_HPP
#define LEFSCHETZ_COHOMOLOGY_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "graded.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace lefschetz {

/// floor(a / b) for b > 0.
constexpr int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

constexpr std::int64_t binomial2(std::int64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

struct ChernData {
    int c1 = 0;
    std::int64_t c2 = 0;
    int s = 0;        // normalization twist
    int c1_norm = 0;  // c1 + 2s

    /// Slope c1/2 as a reduced fraction (numerator, denominator).
    std::pair<int, int> slope() const { return c1 % 2 == 0 ? std::pair{c1 / 2, 1} : std::pair{c1, 2}; }

    /// c2 of E(s).
    std::int64_t c2_norm() const { return c2 + static_cast<std::int64_t>(c1) * s + static_cast<std::int64_t>(s) * s; }

    /// Chern data of E(s) itself.
    ChernData normalized() const { return {c1_norm, c2_norm(), 0, c1_norm}; }

    friend bool operator==(const ChernData&, const ChernData&) = default;
};

/**
 * c(E) = c(F) / c(G) with c(F) = prod(1 - a_i h), c(G) = prod(1 - b_j h),
 * truncated at h^2.
 */
inline ChernData chern_classes(const TwistSequence& src, const TwistSequence& tgt) {
    if (tgt.empty() || src.size() != tgt.size() + 2)
        throw ShapeError("chern_classes: source must have two more summands than target");
    ChernData c;
    const int a = src.sum();
    const int b = tgt.sum();
    c.c1 = b - a;
    c.c2 = src.e2() - tgt.e2() + static_cast<std::int64_t>(b) * (b - a);
    c.s = floor_div(-c.c1, 2);
    c.c1_norm = c.c1 + 2 * c.s;
    return c;
}

/// Riemann-Roch for a rank-2 sheaf on P^2: chi(E(t)).
inline std::int64_t euler_char(const ChernData& c, int t) {
    const std::int64_t c1 = c.c1 + 2 * static_cast<std::int64_t>(t);
    const std::int64_t c2 = c.c2 + static_cast<std::int64_t>(c.c1) * t + static_cast<std::int64_t>(t) * t;
    return 2 + (3 * c1 + c1 * c1 - 2 * c2) / 2;
}

struct CohomologyRow {
    int t = 0;
    std::size_t h0 = 0;
    std::size_t h1 = 0;
    std::size_t h2 = 0;

    friend bool operator==(const CohomologyRow&, const CohomologyRow&) = default;
};

struct TwistRange {
    int lo = 0;
    int hi = -1;
};

/// Rows for t in a contiguous range, module grading.
struct CohomologyTable {
    std::vector<CohomologyRow> rows;

    const CohomologyRow& at(int t) const {
        for (const auto& r : rows)
            if (r.t == t) return r;
        throw std::out_of_range("CohomologyTable: twist " + std::to_string(t) + " not in table");
    }
};

/// A window symmetric under t -> -3 - c1 - t that covers the support of M,
/// the first nonzero h^0 and the last nonzero h^2, with one twist to spare.
inline TwistRange default_cohomology_range(const TwistSequence& src, const TwistSequence& tgt, const ChernData& c) {
    const int lo = std::min(tgt.min(), src.min()) - 1;
    return {lo, -3 - c.c1 - lo};
}

/**
 * h0 from kernel ranks, h1 from cokernel ranks, h2(t) = h0(-3 - c1 - t) by
 * Serre duality and E^v = E(-c1). Every row is checked against Riemann-Roch
 * and the h1 palindrome.
 */
template <Field F>
CohomologyTable cohomology_table(const DegreeRanks<F>& ranks, const ChernData& c, TwistRange range) {
    CohomologyTable table;
    for (int t = range.lo; t <= range.hi; ++t) {
        const int dual = -3 - c.c1 - t;
        CohomologyRow row{t, ranks.kernel_dim(t), ranks.coker_dim(t), ranks.kernel_dim(dual)};
        const auto chi = static_cast<std::int64_t>(row.h0) - static_cast<std::int64_t>(row.h1) +
                         static_cast<std::int64_t>(row.h2);
        if (chi != euler_char(c, t))
            throw ConsistencyFailure("h0 - h1 + h2 = " + std::to_string(chi) + " at t = " + std::to_string(t) +
                                     " but Riemann-Roch gives " + std::to_string(euler_char(c, t)));
        if (row.h1 != ranks.coker_dim(dual))
            throw ConsistencyFailure("h1 is not palindromic: h1(" + std::to_string(t) + ") = " +
                                     std::to_string(row.h1) + ", h1(" + std::to_string(dual) +
                                     ") = " + std::to_string(ranks.coker_dim(dual)));
        table.rows.push_back(row);
    }
    return table;
}

template <Field F>
CohomologyTable cohomology_table(const DegreeRanks<F>& ranks, const ChernData& c) {
    return cohomology_table(ranks, c, default_cohomology_range(ranks.map().source(), ranks.map().target(), c));
}

// ---------------------------------------------------------------------------
// Stability

enum class Stability { Stable, StrictlySemistable, Unstable };

inline const char* to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "Stable";
        case Stability::StrictlySemistable: return "StrictlySemistable";
        case Stability::Unstable: return "Unstable";
    }
    return "?";
}

struct BundleClass {
    Stability variant = Stability::Stable;
    int k = 0;  // index of instability; meaningful for Unstable only
    int c1_norm = 0;

    friend bool operator==(const BundleClass&, const BundleClass&) = default;
};

/// h^0(E_norm(j)).
template <Field F>
std::size_t h0_normalized(const DegreeRanks<F>& ranks, const ChernData& c, int j) {
    return ranks.kernel_dim(j + c.s);
}

/**
 * Largest j with h^0(E_norm(-j)) != 0. Sections only get fewer as the twist
 * drops, so the scan stops at the first zero; it cannot run past
 * s - min(a_i), below which the source itself vanishes.
 */
template <Field F>
int instability_index(const DegreeRanks<F>& ranks, const ChernData& c) {
    int j = c.c1_norm == 0 ? 1 : 0;
    if (h0_normalized(ranks, c, -j) == 0)
        throw std::invalid_argument("instability_index: bundle is not unstable");
    while (h0_normalized(ranks, c, -j - 1) != 0) ++j;
    return j;
}

template <Field F>
BundleClass classify(const DegreeRanks<F>& ranks, const ChernData& c) {
    BundleClass b;
    b.c1_norm = c.c1_norm;
    if (h0_normalized(ranks, c, 0) == 0) {
        b.variant = Stability::Stable;
    } else if (c.c1_norm == 0 && h0_normalized(ranks, c, -1) == 0) {
        b.variant = Stability::StrictlySemistable;
    } else {
        b.variant = Stability::Unstable;
        b.k = instability_index(ranks, c);
    }
    return b;
}

// ---------------------------------------------------------------------------
// Splitting on a line

/// E|_L = O(e) + O(f), e <= f.
struct SplittingType {
    int e = 0;
    int f = 0;

    friend bool operator==(const SplittingType&, const SplittingType&) = default;
};

/// Normalized splitting type forced by the class (Grauert-Mulich for the
/// semistable cases, the instability section otherwise).
inline SplittingType predicted_splitting(const BundleClass& b) {
    switch (b.variant) {
        case Stability::Stable:
        case Stability::StrictlySemistable:
            return b.c1_norm == 0 ? SplittingType{0, 0} : SplittingType{-1, 0};
        case Stability::Unstable:
            return b.c1_norm == 0 ? SplittingType{-b.k, b.k} : SplittingType{-b.k - 1, b.k};
    }
    return {};
}

/// h^0(O(e+t) + O(f+t)) on P^1.
inline std::size_t h0_on_line(const SplittingType& st, int t) {
    return static_cast<std::size_t>(std::max(0, st.e + t + 1) + std::max(0, st.f + t + 1));
}

/// phi restricted to a line: binary-form entries, same degrees.
template <Field F>
class RestrictedMap {
public:
    RestrictedMap(const F& field, const GradedMap<F>& m, const LineParam<F>& line) : field_(field), map_(m) {
        entries_.reserve(m.entries().size());
        for (const auto& f : m.entries()) entries_.push_back(restrict_to_line(field, f, line));
    }

    /// dim ker of the degree-m map (+)S(-a_i)_m -> (+)S(-b_j)_m over S = K[s,t],
    /// i.e. h^0(E|_L(m)).
    std::size_t kernel_dim(int m) const {
        const auto& src = map_.source();
        const auto& tgt = map_.target();
        const auto dim = [](int deg) { return deg < 0 ? std::size_t{0} : static_cast<std::size_t>(deg + 1); };
        std::size_t rows = 0, cols = 0;
        for (std::size_t j = 0; j < tgt.size(); ++j) rows += dim(m - tgt[j]);
        for (std::size_t i = 0; i < src.size(); ++i) cols += dim(m - src[i]);
        if (cols == 0) return 0;

        Matrix<typename F::Element> mat(rows, cols, field_.zero());
        std::size_t row0 = 0;
        for (std::size_t j = 0; j < tgt.size(); ++j) {
            std::size_t col0 = 0;
            for (std::size_t i = 0; i < src.size(); ++i) {
                const auto& g = entries_[j * src.size() + i];
                const int src_deg = m - src[i];
                if (g.degree >= 0 && src_deg >= 0)
                    for (std::size_t c = 0; c < dim(src_deg); ++c)
                        for (std::size_t k = 0; k < g.coeffs.size(); ++k) mat(row0 + c + k, col0 + c) = g.coeffs[k];
                col0 += dim(src_deg);
            }
            row0 += dim(m - tgt[j]);
        }
        return cols - rank(field_, mat);
    }

private:
    const F& field_;
    const GradedMap<F>& map_;
    std::vector<BinaryForm<F>> entries_;
};

/**
 * Splitting type of E|_L for one line, normalized, or nullopt when the
 * restricted kernel dimensions do not follow h^0(O(e) + O(f)) for any pair.
 *
 * A subbundle O(f) of (+)O(-a_i) has f <= -min(a_i), and the larger summand
 * satisfies f >= c1/2, so the first twist with sections lies in
 * [min(a_i), s]. That twist is -f; then e = c1 - f, and the profile is
 * compared against the staircase up to the twist where both summands are
 * live.
 */
template <Field F>
std::optional<SplittingType> splitting_on_line(const F& field, const GradedMap<F>& m, const LineParam<F>& line,
                                               const ChernData& c) {
    const RestrictedMap<F> restricted(field, m, line);
    std::optional<int> first;
    for (int t = m.source().min(); t <= c.s; ++t)
        if (restricted.kernel_dim(t) != 0) {
            first = t;
            break;
        }
    if (!first) return std::nullopt;

    const SplittingType raw{c.c1 + *first, -*first};
    if (raw.e > raw.f) return std::nullopt;
    for (int t = *first - 1; t <= -raw.e + 1; ++t)
        if (restricted.kernel_dim(t) != h0_on_line(raw, t)) return std::nullopt;
    return SplittingType{raw.e + c.s, raw.f + c.s};
}

template <Field F>
struct ComputedSplitting {
    SplittingType type;
    LineParam<F> line;
    int attempts = 0;
};

/// Samples up to `max_attempts` random lines until one yields a consistent
/// restricted kernel profile.
template <Field F>
ComputedSplitting<F> computed_splitting(const F& field, const GradedMap<F>& m, const ChernData& c,
                                        std::mt19937_64& rng, int max_attempts = 8) {
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        auto line = random_line(field, rng);
        if (auto st = splitting_on_line(field, m, line, c)) return {*st, line, attempt};
    }
    throw LineDegenerate("no consistent splitting type on " + std::to_string(max_attempts) + " random lines");
}

// ---------------------------------------------------------------------------
// h^0 of an unstable bundle below its index of instability

struct H0Mismatch {
    int t = 0;  // normalized twist
    std::size_t measured = 0;
    std::int64_t expected = 0;
};

struct H0FormulaReport {
    int t_lo = 0;
    int t_hi = -1;
    std::vector<H0Mismatch> mismatches;

    bool ok() const { return mismatches.empty(); }
};

/// Checks h^0(E_norm(t)) = C(k+t+2, 2) for -k-2 <= t < k (c1 = 0) or
/// t <= k (c1 = -1).
template <Field F>
H0FormulaReport h0_formula_check(const DegreeRanks<F>& ranks, const BundleClass& b, const ChernData& c) {
    if (b.variant != Stability::Unstable) throw std::invalid_argument("h0_formula_check: bundle is not unstable");
    H0FormulaReport report;
    report.t_lo = -b.k - 2;
    report.t_hi = b.c1_norm == 0 ? b.k - 1 : b.k;
    for (int t = report.t_lo; t <= report.t_hi; ++t) {
        const auto measured = h0_normalized(ranks, c, t);
        const auto expected = binomial2(b.k + t + 2);
        if (static_cast<std::int64_t>(measured) != expected) report.mismatches.push_back({t, measured, expected});
    }
    return report;
}

}  // namespace lefschetz

#endif  // LEFSCHETZ_COHOMOLOGY_HPP
