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
 * @file matrix.hpp
 * @brief Dense matrices over an exact field: rank and right-kernel bases.
 *
 * Everything here is Gaussian elimination on a private copy. Row updates
 * only touch the nonzero columns of the pivot row while it is sparse, since
 * the matrices built from multiplication maps start out that way.
 */

#ifndef LEFSCHETZ_MATRIX_HPP
#define LEFSCHETZ_MATRIX_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <cstdint>
#include <utility>
#include <vector>

#include "field.hpp"

namespace lefschetz {

template <class E>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const E& fill = E{})
        : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<E> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw std::invalid_argument("Matrix: entry count does not match shape");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<E>& entries() const { return entries_; }

    E& operator()(std::size_t r, std::size_t c) {
        assert(r < rows_ && c < cols_);
        return entries_[r * cols_ + c];
    }
    const E& operator()(std::size_t r, std::size_t c) const {
        assert(r < rows_ && c < cols_);
        return entries_[r * cols_ + c];
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<E> entries_;
};

template <class E>
Matrix<E> transpose(const Matrix<E>& m) {
    Matrix<E> t(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
    return t;
}

/// [a | b]; both must have the same row count.
template <class E>
Matrix<E> hconcat(const Matrix<E>& a, const Matrix<E>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row counts differ");
    Matrix<E> out(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
    }
    return out;
}

template <Field F>
Matrix<typename F::Element> identity_matrix(const F& field, std::size_t n) {
    Matrix<typename F::Element> m(n, n, field.zero());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
}

template <Field F>
Matrix<typename F::Element> multiply(const F& field, const Matrix<typename F::Element>& a,
                                     const Matrix<typename F::Element>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
    Matrix<typename F::Element> out(a.rows(), b.cols(), field.zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (field.is_zero(a(i, k))) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) = field.add(out(i, j), field.mul(a(i, k), b(k, j)));
        }
    return out;
}

template <Field F>
bool is_zero_matrix(const F& field, const Matrix<typename F::Element>& m) {
    return std::all_of(m.entries().begin(), m.entries().end(),
                       [&](const auto& e) { return field.is_zero(e); });
}

namespace detail {

/// Row-echelon reduction in place; returns the pivot columns in order.
/// With `reduced` set, entries above each pivot are cleared as well.
template <Field F>
std::vector<std::size_t> echelonize(const F& field, std::vector<typename F::Element>& a,
                                    std::size_t rows, std::size_t cols, bool reduced) {
    using E = typename F::Element;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> support;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pr = rank;
        while (pr < rows && field.is_zero(a[pr * cols + c])) ++pr;
        if (pr == rows) continue;
        if (pr != rank)
            std::swap_ranges(a.begin() + pr * cols, a.begin() + (pr + 1) * cols, a.begin() + rank * cols);

        E* piv = a.data() + rank * cols;
        const E scale = field.inv(piv[c]);
        support.clear();
        piv[c] = field.one();
        for (std::size_t j = c + 1; j < cols; ++j) {
            if (field.is_zero(piv[j])) continue;
            piv[j] = field.mul(piv[j], scale);
            support.push_back(j);
        }

        const std::size_t first = reduced ? 0 : rank + 1;
        for (std::size_t i = first; i < rows; ++i) {
            if (i == rank) continue;
            E* row = a.data() + i * cols;
            if (field.is_zero(row[c])) continue;
            const E f = row[c];
            for (std::size_t j : support) row[j] = field.sub(row[j], field.mul(f, piv[j]));
            row[c] = field.zero();
        }
        pivots.push_back(c);
        ++rank;
    }
    return pivots;
}

/**
 * GF(p) specialization. Rows are held as unreduced 64-bit accumulators and
 * every update adds one product of two residues, so an entry is only reduced
 * when it is inspected as a pivot candidate, when its row becomes the pivot
 * row, or when the row runs out of headroom (never, for p below 2^16).
 */
inline std::vector<std::size_t> echelonize(const PrimeField& field, std::vector<std::uint32_t>& out,
                                           std::size_t rows, std::size_t cols, bool reduced) {
    const std::uint64_t p = field.modulus();
    // Headroom before an accumulator must be folded back below p.
    const std::uint64_t max_updates = (UINT64_MAX - p) / ((p - 1) * (p - 1));
    std::vector<std::uint64_t> a(out.begin(), out.end());
    std::vector<std::uint32_t> updates(rows, 0);
    std::vector<std::uint32_t> piv(cols);
    std::vector<std::size_t> support;
    std::vector<std::size_t> pivots;

    const auto fold = [&](std::size_t i) {
        std::uint64_t* row = a.data() + i * cols;
        for (std::size_t j = 0; j < cols; ++j) row[j] %= p;
        updates[i] = 0;
    };

    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pr = rank;
        for (; pr < rows; ++pr) {
            auto& v = a[pr * cols + c];
            v %= p;
            if (v != 0) break;
        }
        if (pr == rows) continue;
        if (pr != rank) {
            std::swap_ranges(a.begin() + pr * cols, a.begin() + (pr + 1) * cols, a.begin() + rank * cols);
            std::swap(updates[pr], updates[rank]);
        }

        std::uint64_t* prow = a.data() + rank * cols;
        const auto scale = field.inv(static_cast<std::uint32_t>(prow[c] % p));
        support.clear();
        std::fill(piv.begin(), piv.end(), 0u);
        prow[c] = 1;
        for (std::size_t j = c + 1; j < cols; ++j) {
            const auto v = static_cast<std::uint32_t>(prow[j] % p);
            prow[j] = v == 0 ? 0 : field.mul(v, scale);
            piv[j] = static_cast<std::uint32_t>(prow[j]);
            if (piv[j] != 0) support.push_back(j);
        }
        updates[rank] = 0;
        const bool dense = support.size() * 4 > cols - c;

        const std::size_t first = reduced ? 0 : rank + 1;
        for (std::size_t i = first; i < rows; ++i) {
            if (i == rank) continue;
            std::uint64_t* row = a.data() + i * cols;
            const std::uint64_t f = row[c] % p;
            row[c] = 0;
            if (f == 0) continue;
            if (updates[i] >= max_updates) fold(i);
            const auto g = static_cast<std::uint32_t>(p - f);
            if (dense) {
                for (std::size_t j = c + 1; j < cols; ++j) row[j] += static_cast<std::uint64_t>(g) * piv[j];
            } else {
                for (std::size_t j : support) row[j] += static_cast<std::uint64_t>(g) * piv[j];
            }
            ++updates[i];
        }
        pivots.push_back(c);
        ++rank;
    }
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = static_cast<std::uint32_t>(a[k] % p);
    return pivots;
}

}  // namespace detail

/// Echelon form of a matrix: the pivot columns and the nonzero rows.
template <class E>
struct EchelonForm {
    std::vector<std::size_t> pivots;
    Matrix<E> rows;  // pivots.size() x cols, pivot entries equal to one
};

/// Reduced row-echelon form (entries above and below each pivot cleared).
template <Field F>
EchelonForm<typename F::Element> reduced_echelon_form(const F& field, const Matrix<typename F::Element>& m) {
    auto work = m.entries();
    auto pivots = detail::echelonize(field, work, m.rows(), m.cols(), true);
    work.resize(pivots.size() * m.cols());
    return {pivots, Matrix<typename F::Element>(pivots.size(), m.cols(), std::move(work))};
}

/// Rank over the given field.
template <Field F>
std::size_t rank(const F& field, const Matrix<typename F::Element>& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    // Eliminate along the shorter side; the pivot search is per column.
    if (m.cols() > m.rows()) {
        auto t = transpose(m);
        auto work = t.entries();
        return detail::echelonize(field, work, t.rows(), t.cols(), false).size();
    }
    auto work = m.entries();
    return detail::echelonize(field, work, m.rows(), m.cols(), false).size();
}

/**
 * Basis of the right kernel {v : m v = 0}, returned as the columns of a
 * cols() x (cols() - rank) matrix. Built from the reduced row-echelon form:
 * one basis vector per free column.
 */
template <Field F>
Matrix<typename F::Element> kernel_basis(const F& field, const Matrix<typename F::Element>& m) {
    using E = typename F::Element;
    const std::size_t n = m.cols();
    auto work = m.entries();
    const auto pivots = detail::echelonize(field, work, m.rows(), n, true);

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;

    Matrix<E> basis(n, n - pivots.size(), field.zero());
    std::size_t k = 0;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        basis(free, k) = field.one();
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis(pivots[r], k) = field.neg(work[r * n + free]);
        ++k;
    }
    return basis;
}

}  // namespace lefschetz

#endif  // LEFSCHETZ_MATRIX_HPP
