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
 * @file lefschetz.hpp
 * @brief Ranks of x L : M_{d-1} -> M_d, the Weak Lefschetz verdict, and the
 *        injectivity/surjectivity ranges predicted from the bundle class.
 *
 * The rank of x L on the cokernel is read off the presentation. With
 * A = phi_d and B the block-diagonal matrix of x L : G_{d-1} -> G_d it is
 * rank([A | B]) - rank(A); mult_rank computes the same number from reduced
 * cokernel bases, which is what the profiles use.
 *
 * Predicted ranges are stated for the normalized twist t; the module degree
 * is d = t + s.
 */

#ifndef LEFSCHETZ_LEFSCHETZ_HPP
#define LEFSCHETZ_LEFSCHETZ_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cohomology.hpp"
#include "field.hpp"
#include "graded.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace lefschetz {

struct ProfileEntry {
    int d = 0;
    std::size_t dim_prev = 0;  // dim M_{d-1}
    std::size_t dim_cur = 0;   // dim M_d
    std::size_t rank = 0;
    std::size_t best_sample = 0;  // index into RankProfile::forms reaching `rank`

    friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};

template <Field F>
struct RankProfile {
    std::vector<ProfileEntry> entries;
    std::vector<HomogPoly<F>> forms;

    std::size_t samples() const { return forms.size(); }
};

/// Matrix of x L : G_{d-1} -> G_d, block diagonal over the target summands.
template <Field F>
Matrix<typename F::Element> target_mult_matrix(const F& field, const TwistSequence& tgt, const HomogPoly<F>& L,
                                               int d) {
    Matrix<typename F::Element> out(free_dim(tgt, d), free_dim(tgt, d - 1), field.zero());
    std::size_t row0 = 0, col0 = 0;
    for (std::size_t j = 0; j < tgt.size(); ++j) {
        const auto block = mult_matrix(field, L, d - 1 - tgt[j]);
        if (block.cols() > 0)
            for (std::size_t r = 0; r < block.rows(); ++r)
                for (std::size_t c = 0; c < block.cols(); ++c) out(row0 + r, col0 + c) = block(r, c);
        row0 += monomial_count(d - tgt[j]);
        col0 += monomial_count(d - 1 - tgt[j]);
    }
    return out;
}

/// Rank of x L : M_{d-1} -> M_d from the presentation, rank([A | B]) - rank(A).
template <Field F>
std::size_t mult_rank_direct(const DegreeRanks<F>& ranks, const HomogPoly<F>& L, int d) {
    const auto& field = ranks.field();
    const auto B = target_mult_matrix(field, ranks.map().target(), L, d);
    if (B.rows() == 0 || B.cols() == 0) return 0;
    const auto A = phi_matrix(field, ranks.map(), d);
    return rank(field, hconcat(A, B)) - ranks.phi_rank(d);
}

/**
 * Rank of x L : M_{d-1} -> M_d through cokernel bases: the free coordinates
 * of G_{d-1} span a complement of im(phi_{d-1}), so their images under x L,
 * reduced modulo im(phi_d), span the image in M_d. Agrees with
 * mult_rank_direct; the per-form work is only dim M_{d-1} reductions.
 */
template <Field F>
std::size_t mult_rank(const DegreeRanks<F>& ranks, const HomogPoly<F>& L, int d) {
    const auto& field = ranks.field();
    const auto& tgt = ranks.map().target();
    const auto& prev = ranks.cokernel_basis(d - 1);
    const auto& cur = ranks.cokernel_basis(d);
    if (prev.dim() == 0 || cur.dim() == 0) return 0;

    // Offsets of each target summand inside G_{d-1} and G_d.
    std::vector<std::size_t> off_prev(tgt.size() + 1, 0), off_cur(tgt.size() + 1, 0);
    for (std::size_t j = 0; j < tgt.size(); ++j) {
        off_prev[j + 1] = off_prev[j] + monomial_count(d - 1 - tgt[j]);
        off_cur[j + 1] = off_cur[j] + monomial_count(d - tgt[j]);
    }
    const Monomial vars[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    std::vector<std::vector<Monomial>> prev_monomials;
    for (std::size_t j = 0; j < tgt.size(); ++j) prev_monomials.push_back(monomial_basis(d - 1 - tgt[j]));

    Matrix<typename F::Element> images(prev.dim(), cur.dim(), field.zero());
    std::vector<typename F::Element> w(free_dim(tgt, d), field.zero());
    for (std::size_t row = 0; row < prev.dim(); ++row) {
        const std::size_t k = prev.free[row];
        std::size_t j = 0;
        while (k >= off_prev[j + 1]) ++j;
        const auto& mono = prev_monomials[j][k - off_prev[j]];
        std::fill(w.begin(), w.end(), field.zero());
        for (int v = 0; v < 3; ++v) {
            const auto& c = L.coeffs()[static_cast<std::size_t>(v)];
            if (field.is_zero(c)) continue;
            const Monomial prod{mono.x + vars[v].x, mono.y + vars[v].y, mono.z + vars[v].z};
            w[off_cur[j] + monomial_index(prod)] = c;
        }
        const auto projected = cur.project(field, w);
        for (std::size_t col = 0; col < cur.dim(); ++col) images(row, col) = projected[col];
    }
    return rank(field, images);
}

/// Profile of one linear form over every d with M_{d-1} or M_d nonzero.
template <Field F>
RankProfile<F> mult_rank_profile(const DegreeRanks<F>& ranks, const HilbertFunction& h, const HomogPoly<F>& L) {
    if (L.degree() != 1 || L.is_zero(ranks.field()))
        throw std::invalid_argument("mult_rank_profile: L must be a nonzero linear form");
    RankProfile<F> p;
    p.forms.push_back(L);
    if (h.is_zero()) return p;
    for (int d = h.offset(); d <= h.end_degree(); ++d)
        p.entries.push_back({d, h.at(d - 1), h.at(d), mult_rank(ranks, L, d), 0});
    return p;
}

/// Componentwise maximum over the given forms. Rank is lower semicontinuous,
/// so the maximum is the generic rank once one sample is general.
template <Field F>
RankProfile<F> max_profile(const DegreeRanks<F>& ranks, const HilbertFunction& h, const std::vector<HomogPoly<F>>& forms) {
    RankProfile<F> best;
    for (std::size_t s = 0; s < forms.size(); ++s) {
        auto p = mult_rank_profile(ranks, h, forms[s]);
        if (s == 0) {
            best.entries = p.entries;
        } else {
            for (std::size_t i = 0; i < p.entries.size(); ++i)
                if (p.entries[i].rank > best.entries[i].rank) {
                    best.entries[i].rank = p.entries[i].rank;
                    best.entries[i].best_sample = s;
                }
        }
        best.forms.push_back(forms[s]);
    }
    return best;
}

template <Field F>
RankProfile<F> generic_profile(const DegreeRanks<F>& ranks, const HilbertFunction& h, std::mt19937_64& rng,
                               std::size_t samples = 3) {
    if (samples == 0) throw std::invalid_argument("generic_profile: need at least one sample");
    std::vector<HomogPoly<F>> forms;
    while (forms.size() < samples) {
        auto L = random_homog(ranks.field(), 1, rng);
        if (!L.is_zero(ranks.field())) forms.push_back(std::move(L));
    }
    return max_profile(ranks, h, forms);
}

// ---------------------------------------------------------------------------
// Verdict

enum class MapFlag { Injective, Surjective, Bijective, Neither };

inline const char* to_string(MapFlag f) {
    switch (f) {
        case MapFlag::Injective: return "injective";
        case MapFlag::Surjective: return "surjective";
        case MapFlag::Bijective: return "bijective";
        case MapFlag::Neither: return "neither";
    }
    return "?";
}

inline bool is_injective(MapFlag f) { return f == MapFlag::Injective || f == MapFlag::Bijective; }
inline bool is_surjective(MapFlag f) { return f == MapFlag::Surjective || f == MapFlag::Bijective; }

struct VerdictEntry {
    int d = 0;
    std::size_t dim_prev = 0;
    std::size_t dim_cur = 0;
    std::size_t rank = 0;
    MapFlag flag = MapFlag::Neither;
};

struct WlpVerdict {
    std::vector<VerdictEntry> entries;
    bool wlp = true;
    /// Smallest degree from which every map is surjective.
    std::optional<int> first_surjective_degree;
};

template <Field F>
WlpVerdict wlp_verdict(const RankProfile<F>& p) {
    WlpVerdict v;
    for (const auto& e : p.entries) {
        const bool inj = e.rank == e.dim_prev;
        const bool surj = e.rank == e.dim_cur;
        const MapFlag flag = inj && surj ? MapFlag::Bijective
                             : inj       ? MapFlag::Injective
                             : surj      ? MapFlag::Surjective
                                         : MapFlag::Neither;
        if (flag == MapFlag::Neither) v.wlp = false;
        v.entries.push_back({e.d, e.dim_prev, e.dim_cur, e.rank, flag});
    }
    for (auto it = v.entries.rbegin(); it != v.entries.rend() && is_surjective(it->flag); ++it)
        v.first_surjective_degree = it->d;
    return v;
}

/// x L on M_{d-1} -> M_d is claimed injective for t <= inj_max_t and
/// surjective for t >= surj_min_t, with t = d - shift.
struct PredictedRanges {
    int inj_max_t = 0;
    int surj_min_t = 0;
    int shift = 0;
    /// True for the strictly semistable case, whose ranges come from the
    /// restriction criteria with splitting (0, 0) rather than a stated case.
    bool derived = false;

    int inj_max_d() const { return inj_max_t + shift; }
    int surj_min_d() const { return surj_min_t + shift; }
};

inline PredictedRanges theorem_ranges(const BundleClass& b, int shift) {
    PredictedRanges r;
    r.shift = shift;
    switch (b.variant) {
        case Stability::Stable:
            r.inj_max_t = -1;
            r.surj_min_t = b.c1_norm == 0 ? -1 : 0;
            break;
        case Stability::StrictlySemistable:
            r.inj_max_t = -1;
            r.surj_min_t = -1;
            r.derived = true;
            break;
        case Stability::Unstable:
            r.inj_max_t = b.c1_norm == 0 ? b.k - 1 : b.k;
            r.surj_min_t = -b.k - 1;
            break;
    }
    return r;
}

enum class DiscrepancyKind { NotInjective, NotSurjective, Uncovered, MissingDegrees, NotWlp };

inline const char* to_string(DiscrepancyKind k) {
    switch (k) {
        case DiscrepancyKind::NotInjective: return "not-injective";
        case DiscrepancyKind::NotSurjective: return "not-surjective";
        case DiscrepancyKind::Uncovered: return "uncovered";
        case DiscrepancyKind::MissingDegrees: return "missing-degrees";
        case DiscrepancyKind::NotWlp: return "not-wlp";
    }
    return "?";
}

struct Discrepancy {
    DiscrepancyKind kind;
    int d = 0;
    std::string message;
};

struct Concordance {
    std::vector<Discrepancy> discrepancies;

    bool ok() const { return discrepancies.empty(); }
    /// A measured rank contradicts a claimed range.
    bool violates_theorem() const {
        return std::any_of(discrepancies.begin(), discrepancies.end(), [](const Discrepancy& x) {
            return x.kind == DiscrepancyKind::NotInjective || x.kind == DiscrepancyKind::NotSurjective ||
                   x.kind == DiscrepancyKind::NotWlp;
        });
    }
};

/**
 * Compares a verdict with predicted ranges. The verdict must span the whole
 * support: contiguous degrees, starting where dim M_{d-1} = 0 and ending where
 * dim M_d = 0; anything else is reported as missing degrees.
 */
inline Concordance verify_theorem(const WlpVerdict& v, const PredictedRanges& r) {
    Concordance out;
    auto add = [&](DiscrepancyKind k, int d, std::string msg) { out.discrepancies.push_back({k, d, std::move(msg)}); };

    if (!v.entries.empty()) {
        if (v.entries.front().dim_prev != 0)
            add(DiscrepancyKind::MissingDegrees, v.entries.front().d, "profile starts where M_{d-1} is nonzero");
        if (v.entries.back().dim_cur != 0)
            add(DiscrepancyKind::MissingDegrees, v.entries.back().d, "profile ends where M_d is nonzero");
        for (std::size_t i = 1; i < v.entries.size(); ++i)
            if (v.entries[i].d != v.entries[i - 1].d + 1)
                add(DiscrepancyKind::MissingDegrees, v.entries[i - 1].d + 1, "degree absent from profile");
    }

    for (const auto& e : v.entries) {
        const int t = e.d - r.shift;
        const bool claim_inj = t <= r.inj_max_t;
        const bool claim_surj = t >= r.surj_min_t;
        const std::string where = "d = " + std::to_string(e.d) + " (t = " + std::to_string(t) + ")";
        if (claim_inj && !is_injective(e.flag)) add(DiscrepancyKind::NotInjective, e.d, "predicted injective at " + where);
        if (claim_surj && !is_surjective(e.flag))
            add(DiscrepancyKind::NotSurjective, e.d, "predicted surjective at " + where);
        if (!claim_inj && !claim_surj) add(DiscrepancyKind::Uncovered, e.d, "no prediction covers " + where);
    }
    if (!v.wlp) add(DiscrepancyKind::NotWlp, 0, "some multiplication map has neither full rank");
    return out;
}

/// Non-decreasing, then non-increasing.
inline bool unimodality(const HilbertFunction& h) {
    const auto& v = h.dims();
    std::size_t i = 1;
    while (i < v.size() && v[i] >= v[i - 1]) ++i;
    while (i < v.size() && v[i] <= v[i - 1]) ++i;
    return i >= v.size();
}

}  // namespace lefschetz

#endif  // LEFSCHETZ_LEFSCHETZ_HPP
