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
 * @file poly.hpp
 * @brief Homogeneous forms in x, y, z and binary forms in s, t.
 *
 * Coefficients of a degree-d form are stored densely in the canonical
 * monomial order: graded lex with x > y > z, i.e. exponent triples (i, j, k)
 * in descending lexicographic order. Multiplication maps R_d -> R_{d+e} are
 * materialized as matrices in that basis.
 *
 * Binary forms (restrictions to a line) store the coefficients of
 * s^d, s^(d-1) t, ..., t^d in that order.
 */

#ifndef LEFSCHETZ_POLY_HPP
#define LEFSCHETZ_POLY_HPP

#include <array>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "matrix.hpp"

namespace lefschetz {

struct Monomial {
    int x = 0;
    int y = 0;
    int z = 0;

    constexpr int degree() const { return x + y + z; }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// dim R_d = C(d+2, 2); zero for negative d.
constexpr std::size_t monomial_count(int d) {
    return d < 0 ? 0 : static_cast<std::size_t>(d + 1) * static_cast<std::size_t>(d + 2) / 2;
}

inline std::vector<Monomial> monomial_basis(int d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    out.reserve(monomial_count(d));
    for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
    return out;
}

/// Position of m inside monomial_basis(m.degree()).
constexpr std::size_t monomial_index(const Monomial& m) {
    const int d = m.degree();
    const auto rest = static_cast<std::size_t>(d - m.x);
    return rest * (rest + 1) / 2 + static_cast<std::size_t>(d - m.x - m.y);
}

template <Field F>
class HomogPoly {
public:
    using Element = typename F::Element;

    HomogPoly() = default;
    HomogPoly(int degree, std::vector<Element> coeffs) : degree_(degree), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != monomial_count(degree_))
            throw std::invalid_argument("HomogPoly: expected " + std::to_string(monomial_count(degree_)) +
                                        " coefficients for degree " + std::to_string(degree_));
    }

    /// The zero form of the given degree. Negative degrees are allowed and
    /// have no coefficients; they fill graded-map slots where a_i < b_j.
    static HomogPoly zero(const F& field, int degree) {
        return HomogPoly(degree, std::vector<Element>(monomial_count(degree), field.zero()));
    }

    static HomogPoly monomial(const F& field, const Monomial& m, const Element& c) {
        auto p = zero(field, m.degree());
        p.coeffs_[monomial_index(m)] = c;
        return p;
    }

    int degree() const { return degree_; }
    const std::vector<Element>& coeffs() const { return coeffs_; }
    const Element& coefficient(const Monomial& m) const { return coeffs_.at(monomial_index(m)); }
    void set_coefficient(const Monomial& m, const Element& c) { coeffs_.at(monomial_index(m)) = c; }

    bool is_zero(const F& field) const {
        for (const auto& c : coeffs_)
            if (!field.is_zero(c)) return false;
        return true;
    }

    friend bool operator==(const HomogPoly&, const HomogPoly&) = default;

private:
    int degree_ = 0;
    std::vector<Element> coeffs_;
};

template <Field F>
HomogPoly<F> add(const F& field, const HomogPoly<F>& f, const HomogPoly<F>& g) {
    if (f.degree() != g.degree()) throw std::invalid_argument("add: degrees differ");
    auto c = f.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = field.add(c[i], g.coeffs()[i]);
    return HomogPoly<F>(f.degree(), std::move(c));
}

template <Field F>
HomogPoly<F> multiply(const F& field, const HomogPoly<F>& f, const HomogPoly<F>& g) {
    if (f.degree() < 0 || g.degree() < 0) return HomogPoly<F>::zero(field, f.degree() + g.degree());
    auto out = HomogPoly<F>::zero(field, f.degree() + g.degree());
    const auto bf = monomial_basis(f.degree());
    const auto bg = monomial_basis(g.degree());
    std::vector<typename F::Element> c = out.coeffs();
    for (std::size_t i = 0; i < bf.size(); ++i) {
        if (field.is_zero(f.coeffs()[i])) continue;
        for (std::size_t j = 0; j < bg.size(); ++j) {
            const Monomial m{bf[i].x + bg[j].x, bf[i].y + bg[j].y, bf[i].z + bg[j].z};
            auto& slot = c[monomial_index(m)];
            slot = field.add(slot, field.mul(f.coeffs()[i], g.coeffs()[j]));
        }
    }
    return HomogPoly<F>(out.degree(), std::move(c));
}

/**
 * Matrix of g -> f*g from R_d to R_{d+e}, e = deg f. Column c is the image of
 * the c-th basis monomial of degree d. A negative-degree f gives a matrix with
 * zero rows.
 */
template <Field F>
Matrix<typename F::Element> mult_matrix(const F& field, const HomogPoly<F>& f, int d) {
    const int e = f.degree();
    Matrix<typename F::Element> m(monomial_count(d + e), monomial_count(d), field.zero());
    if (d < 0 || e < 0) return m;
    const auto src = monomial_basis(d);
    const auto fb = monomial_basis(e);
    for (std::size_t col = 0; col < src.size(); ++col)
        for (std::size_t k = 0; k < fb.size(); ++k) {
            if (field.is_zero(f.coeffs()[k])) continue;
            const Monomial prod{src[col].x + fb[k].x, src[col].y + fb[k].y, src[col].z + fb[k].z};
            m(monomial_index(prod), col) = f.coeffs()[k];
        }
    return m;
}

/// Every coefficient drawn independently from field.sample.
template <Field F>
HomogPoly<F> random_homog(const F& field, int d, std::mt19937_64& rng) {
    std::vector<typename F::Element> c;
    c.reserve(monomial_count(d));
    for (std::size_t i = 0; i < monomial_count(d); ++i) c.push_back(field.sample(rng));
    return HomogPoly<F>(d, std::move(c));
}

// ---------------------------------------------------------------------------
// Binary forms and lines

template <Field F>
struct BinaryForm {
    int degree = 0;
    std::vector<typename F::Element> coeffs;  // s^d, s^(d-1)t, ..., t^d

    friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
};

template <Field F>
BinaryForm<F> multiply(const F& field, const BinaryForm<F>& f, const BinaryForm<F>& g) {
    BinaryForm<F> out{f.degree + g.degree, {}};
    if (f.degree < 0 || g.degree < 0) return out;
    out.coeffs.assign(static_cast<std::size_t>(out.degree + 1), field.zero());
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (field.is_zero(f.coeffs[i])) continue;
        for (std::size_t j = 0; j < g.coeffs.size(); ++j)
            out.coeffs[i + j] = field.add(out.coeffs[i + j], field.mul(f.coeffs[i], g.coeffs[j]));
    }
    return out;
}

/// Matrix of h -> g*h from S_m to S_{m+e} in the s^m..t^m bases.
template <Field F>
Matrix<typename F::Element> binary_mult_matrix(const F& field, const BinaryForm<F>& g, int m) {
    const int e = g.degree;
    const std::size_t rows = m + e < 0 ? 0 : static_cast<std::size_t>(m + e + 1);
    const std::size_t cols = m < 0 ? 0 : static_cast<std::size_t>(m + 1);
    Matrix<typename F::Element> out(rows, cols, field.zero());
    if (e < 0 || m < 0) return out;
    for (std::size_t col = 0; col < cols; ++col)
        for (std::size_t k = 0; k < g.coeffs.size(); ++k) out(col + k, col) = g.coeffs[k];
    return out;
}

/// The line {s*p0 + t*p1} in P^2.
template <Field F>
struct LineParam {
    std::array<typename F::Element, 3> p0;
    std::array<typename F::Element, 3> p1;
};

template <Field F>
bool is_valid_line(const F& field, const LineParam<F>& line) {
    const auto& a = line.p0;
    const auto& b = line.p1;
    const auto c0 = field.sub(field.mul(a[1], b[2]), field.mul(a[2], b[1]));
    const auto c1 = field.sub(field.mul(a[2], b[0]), field.mul(a[0], b[2]));
    const auto c2 = field.sub(field.mul(a[0], b[1]), field.mul(a[1], b[0]));
    return !(field.is_zero(c0) && field.is_zero(c1) && field.is_zero(c2));
}

template <Field F>
LineParam<F> random_line(const F& field, std::mt19937_64& rng) {
    for (;;) {
        LineParam<F> line{{field.sample(rng), field.sample(rng), field.sample(rng)},
                          {field.sample(rng), field.sample(rng), field.sample(rng)}};
        if (is_valid_line(field, line)) return line;
    }
}

/// f(s*p0 + t*p1) as a binary form of the same degree.
template <Field F>
BinaryForm<F> restrict_to_line(const F& field, const HomogPoly<F>& f, const LineParam<F>& line) {
    const int d = f.degree();
    if (d < 0) return {d, {}};

    // powers[v][e] = (s*p0[v] + t*p1[v])^e
    std::array<std::vector<BinaryForm<F>>, 3> powers;
    for (int v = 0; v < 3; ++v) {
        const BinaryForm<F> lin{1, {line.p0[v], line.p1[v]}};
        powers[v].push_back({0, {field.one()}});
        for (int e = 1; e <= d; ++e) powers[v].push_back(multiply(field, powers[v].back(), lin));
    }

    BinaryForm<F> out{d, std::vector<typename F::Element>(static_cast<std::size_t>(d + 1), field.zero())};
    const auto basis = monomial_basis(d);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& c = f.coeffs()[i];
        if (field.is_zero(c)) continue;
        const auto& m = basis[i];
        const auto term =
            multiply(field, multiply(field, powers[0][m.x], powers[1][m.y]), powers[2][m.z]);
        for (std::size_t k = 0; k < term.coeffs.size(); ++k)
            out.coeffs[k] = field.add(out.coeffs[k], field.mul(c, term.coeffs[k]));
    }
    return out;
}

}  // namespace lefschetz

#endif  // LEFSCHETZ_POLY_HPP
