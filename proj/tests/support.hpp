// Shared oracles and seeded generators for the test suites. Nothing here
// calls into the library's elimination code, so it can serve as a check on it.

#ifndef LEFSCHETZ_TESTS_SUPPORT_HPP
#define LEFSCHETZ_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include <lefschetz/field.hpp>
#include <lefschetz/matrix.hpp>

namespace oracle {

using Exponent = std::tuple<int, int, int>;

/// Monomials of degree d, any order.
inline std::vector<Exponent> monomials(int d) {
    std::vector<Exponent> out;
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j) out.emplace_back(i, j, d - i - j);
    return out;
}

inline bool divides(const Exponent& g, const Exponent& m) {
    return std::get<0>(g) <= std::get<0>(m) && std::get<1>(g) <= std::get<1>(m) && std::get<2>(g) <= std::get<2>(m);
}

/// dim (R/I)_d for a monomial ideal I: standard monomials of degree d.
inline std::size_t monomial_quotient_dim(const std::vector<Exponent>& gens, int d) {
    if (d < 0) return 0;
    std::size_t n = 0;
    for (const auto& m : monomials(d)) {
        bool in_ideal = false;
        for (const auto& g : gens) in_ideal = in_ideal || divides(g, m);
        n += in_ideal ? 0 : 1;
    }
    return n;
}

/// Degree-d monomials lying in a monomial ideal; each is a multiple of a
/// generator, so their count is the rank of the degree-d generator map.
inline std::size_t monomial_ideal_dim(const std::vector<Exponent>& gens, int d) {
    std::set<Exponent> hit;
    for (const auto& m : monomials(d))
        for (const auto& g : gens)
            if (divides(g, m)) hit.insert(m);
    return hit.size();
}

/// Coefficients of prod(1 - t^d_i) / (1 - t)^3, the Hilbert series of a
/// complete intersection of three forms.
inline std::vector<std::int64_t> ci_hilbert(int d1, int d2, int d3) {
    std::vector<std::int64_t> num{1};
    for (int d : {d1, d2, d3}) {
        std::vector<std::int64_t> next(num.size() + static_cast<std::size_t>(d), 0);
        for (std::size_t k = 0; k < num.size(); ++k) {
            next[k] += num[k];
            next[k + static_cast<std::size_t>(d)] -= num[k];
        }
        num = next;
    }
    // Divide by (1 - t) three times: running prefix sums.
    for (int pass = 0; pass < 3; ++pass)
        for (std::size_t k = 1; k < num.size(); ++k) num[k] += num[k - 1];
    while (!num.empty() && num.back() == 0) num.pop_back();
    return num;
}

/// Rank over GF(p) by textbook elimination with plain % arithmetic.
inline std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
    auto norm = [p](std::int64_t v) { return ((v % p) + p) % p; };
    auto inv = [&](std::int64_t v) {
        std::int64_t r = 1, b = norm(v), e = p - 2;
        while (e) {
            if (e & 1) r = static_cast<std::int64_t>((__int128)r * b % p);
            b = static_cast<std::int64_t>((__int128)b * b % p);
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pr = rank;
        while (pr < rows && norm(a[pr][c]) == 0) ++pr;
        if (pr == rows) continue;
        std::swap(a[pr], a[rank]);
        const std::int64_t iv = inv(a[rank][c]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || norm(a[r][c]) == 0) continue;
            const std::int64_t f = static_cast<std::int64_t>((__int128)norm(a[r][c]) * iv % p);
            for (std::size_t k = 0; k < cols; ++k)
                a[r][k] = norm(a[r][k] - static_cast<std::int64_t>((__int128)f * norm(a[rank][k]) % p));
        }
        ++rank;
    }
    return rank;
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < k) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

}  // namespace oracle

namespace gen {

/// Random matrix over GF(p); `density` in percent of nonzero entries.
inline lefschetz::Matrix<std::uint32_t> prime_matrix(const lefschetz::PrimeField& f, std::size_t rows,
                                                     std::size_t cols, int density, std::mt19937_64& rng) {
    lefschetz::Matrix<std::uint32_t> m(rows, cols, 0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (static_cast<int>(lefschetz::uniform_below(rng, 100)) < density) m(r, c) = f.sample(rng);
    return m;
}

/// A matrix of the given rank: product of random rows x k and k x cols.
inline lefschetz::Matrix<std::uint32_t> prime_matrix_of_rank(const lefschetz::PrimeField& f, std::size_t rows,
                                                             std::size_t cols, std::size_t k, std::mt19937_64& rng) {
    return lefschetz::multiply(f, prime_matrix(f, rows, k, 100, rng), prime_matrix(f, k, cols, 100, rng));
}

}  // namespace gen

#endif  // LEFSCHETZ_TESTS_SUPPORT_HPP
