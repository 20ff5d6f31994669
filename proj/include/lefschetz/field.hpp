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
 * @file field.hpp
 * @brief Coefficient fields: a prime field GF(p) with runtime modulus and the
 *        rationals backed by GMP.
 *
 * A field is a small value object. Elements are plain values and every
 * arithmetic operation goes through the field, so GF(p) can carry its modulus
 * at runtime. Both types model the `Field` concept below, which is what the
 * rest of the library is templated on.
 */

#ifndef LEFSCHETZ_FIELD_HPP
#define LEFSCHETZ_FIELD_HPP

#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace lefschetz {

/// Uniform draw from [0, bound) using rejection sampling on raw engine output.
/// std::uniform_int_distribution is implementation-defined, which would make
/// seeded runs differ between standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

/// Uniform draw from the closed interval [lo, hi].
inline std::int64_t uniform_in(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

template <class F>
concept Field = requires(const F& f, const typename F::Element& a, std::mt19937_64& rng) {
    typename F::Element;
    { f.zero() } -> std::convertible_to<typename F::Element>;
    { f.one() } -> std::convertible_to<typename F::Element>;
    { f.from_int(std::int64_t{}) } -> std::convertible_to<typename F::Element>;
    { f.add(a, a) } -> std::convertible_to<typename F::Element>;
    { f.sub(a, a) } -> std::convertible_to<typename F::Element>;
    { f.mul(a, a) } -> std::convertible_to<typename F::Element>;
    { f.neg(a) } -> std::convertible_to<typename F::Element>;
    { f.inv(a) } -> std::convertible_to<typename F::Element>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.sample(rng) } -> std::convertible_to<typename F::Element>;
    { f.to_string(a) } -> std::convertible_to<std::string>;
    { f.name() } -> std::convertible_to<std::string>;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

/**
 * GF(p) for an odd prime p < 2^31.
 *
 * Elements are stored reduced in [0, p). Reduction uses a precomputed
 * reciprocal instead of hardware division whenever the operand fits in 32
 * bits, which covers every product for the default modulus 32003.
 */
class PrimeField {
public:
    using Element = std::uint32_t;

    static constexpr std::uint32_t default_modulus = 32003;

    explicit PrimeField(std::uint32_t p = default_modulus) : p_(p) {
        if (p <= 3 || p >= (1u << 31) || !is_prime(p))
            throw std::invalid_argument("PrimeField: modulus must be a prime in (3, 2^31), got " +
                                        std::to_string(p));
        reciprocal_ = UINT64_MAX / p + 1;
    }

    std::uint32_t modulus() const { return p_; }

    Element zero() const { return 0; }
    Element one() const { return 1; }

    Element from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<Element>(r < 0 ? r + p_ : r);
    }

    Element add(Element a, Element b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element mul(Element a, Element b) const {
        return reduce(static_cast<std::uint64_t>(a) * b);
    }

    Element inv(Element a) const {
        if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
        // Fermat: a^(p-2)
        std::uint64_t result = 1, base = a;
        std::uint32_t e = p_ - 2;
        while (e) {
            if (e & 1u) result = reduce(result * base);
            base = reduce(base * base);
            e >>= 1;
        }
        return static_cast<Element>(result);
    }

    bool is_zero(Element a) const { return a == 0; }

    Element sample(std::mt19937_64& rng) const { return static_cast<Element>(uniform_below(rng, p_)); }

    /// Reduce any value below 2^62. Values that fit in 32 bits (always the
    /// case for p + p^2 when p < 2^16) use Lemire's fastmod.
    Element reduce(std::uint64_t v) const {
        if (v <= UINT32_MAX) {
            const std::uint64_t low = reciprocal_ * static_cast<std::uint32_t>(v);
            return static_cast<Element>((static_cast<unsigned __int128>(low) * p_) >> 64);
        }
        return static_cast<Element>(v % p_);
    }

    /// Symmetric integer representative in (-p/2, p/2].
    std::int64_t to_int(Element a) const {
        return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
    }

    std::string to_string(Element a) const { return std::to_string(a); }
    std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
    std::uint64_t reciprocal_ = 0;
};

/**
 * The rationals, exact via GMP. Used for audit runs against GF(p).
 *
 * Sampling draws integers uniformly from [-sample_bound, sample_bound]; the
 * bound is kept small so elimination over Q stays fast on small instances.
 */
class RationalField {
public:
    using Element = mpq_class;

    explicit RationalField(std::int64_t sample_bound = 100) : bound_(sample_bound) {}

    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element from_int(std::int64_t v) const { return mpq_class(mpz_class(static_cast<long>(v))); }
    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element neg(const Element& a) const { return -a; }
    Element inv(const Element& a) const {
        if (sgn(a) == 0) throw std::domain_error("RationalField: inverse of zero");
        return 1 / a;
    }
    bool is_zero(const Element& a) const { return sgn(a) == 0; }
    Element sample(std::mt19937_64& rng) const { return from_int(uniform_in(rng, -bound_, bound_)); }
    std::string to_string(const Element& a) const { return a.get_str(); }
    std::string name() const { return "Q"; }

    std::int64_t sample_bound() const { return bound_; }

private:
    std::int64_t bound_;
};

static_assert(Field<PrimeField>);
static_assert(Field<RationalField>);

}  // namespace lefschetz

#endif  // LEFSCHETZ_FIELD_HPP
