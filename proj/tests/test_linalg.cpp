// Fields and exact elimination.

#include <cstdint>
#include <random>

#include <gtest/gtest.h>

#include <lefschetz/field.hpp>
#include <lefschetz/matrix.hpp>

#include "support.hpp"

using namespace lefschetz;

namespace {

constexpr int kTrials = 60;

std::vector<std::vector<std::int64_t>> as_rows(const Matrix<std::uint32_t>& m) {
    std::vector<std::vector<std::int64_t>> out(m.rows(), std::vector<std::int64_t>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
    return out;
}

}  // namespace

TEST(PrimeField, RejectsCompositeAndTinyModuli) {
    EXPECT_THROW(PrimeField(32001), std::invalid_argument);
    EXPECT_THROW(PrimeField(3), std::invalid_argument);
    EXPECT_NO_THROW(PrimeField(5));
    EXPECT_NO_THROW(PrimeField(2147483647u));
}

TEST(PrimeField, FieldAxiomsOnRandomElements) {
    std::mt19937_64 rng(11);
    for (std::uint32_t p : {5u, 32003u, 65521u, 2147483647u}) {
        const PrimeField f(p);
        for (int i = 0; i < 2000; ++i) {
            const auto a = f.sample(rng), b = f.sample(rng), c = f.sample(rng);
            ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            ASSERT_EQ(f.add(f.sub(a, b), b), a);
            ASSERT_EQ(f.add(a, f.neg(a)), 0u);
            ASSERT_EQ(f.mul(a, b), static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p));
            if (a != 0) ASSERT_EQ(f.mul(a, f.inv(a)), 1u);
        }
    }
}

TEST(PrimeField, FromIntAndSymmetricRepresentative) {
    const PrimeField f;
    EXPECT_EQ(f.from_int(-1), 32002u);
    EXPECT_EQ(f.from_int(32003 * 5 + 7), 7u);
    EXPECT_EQ(f.to_int(f.from_int(-42)), -42);
    EXPECT_EQ(f.to_int(f.from_int(16001)), 16001);
}

TEST(PrimeField, InverseOfZeroThrows) { EXPECT_THROW(PrimeField().inv(0), std::domain_error); }

TEST(RationalField, ExactArithmetic) {
    const RationalField q;
    const auto a = q.from_int(3), b = q.from_int(-7);
    EXPECT_EQ(q.mul(q.inv(a), a), q.one());
    EXPECT_EQ(q.to_string(q.mul(q.inv(b), a)), "-3/7");
    EXPECT_THROW(q.inv(q.zero()), std::domain_error);
}

TEST(Sampling, SameSeedSameDraws) {
    std::mt19937_64 r1(5), r2(5);
    const PrimeField f;
    for (int i = 0; i < 100; ++i) ASSERT_EQ(f.sample(r1), f.sample(r2));
}

TEST(Sampling, UniformBelowStaysInRange) {
    std::mt19937_64 rng(1);
    for (std::uint64_t bound : {1ull, 2ull, 3ull, 32003ull, (1ull << 63) + 5})
        for (int i = 0; i < 500; ++i) ASSERT_LT(uniform_below(rng, bound), std::max<std::uint64_t>(bound, 1));
    for (int i = 0; i < 500; ++i) {
        const auto v = uniform_in(rng, -3, 3);
        ASSERT_GE(v, -3);
        ASSERT_LE(v, 3);
    }
}

TEST(Rank, IdentityAndZero) {
    const PrimeField f;
    EXPECT_EQ(rank(f, identity_matrix(f, 3)), 3u);
    EXPECT_EQ(rank(f, Matrix<std::uint32_t>(4, 7, 0)), 0u);
    EXPECT_EQ(rank(f, Matrix<std::uint32_t>(0, 5, 0)), 0u);
}

TEST(Rank, KoszulDegreeThreeMatchesMonomialCount) {
    // x^2, y^2, z^2 times x, y, z, written in the exponent basis by hand.
    const PrimeField f;
    const auto src = oracle::monomials(1);
    const auto tgt = oracle::monomials(3);
    const std::vector<oracle::Exponent> gens{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
    Matrix<std::uint32_t> m(tgt.size(), gens.size() * src.size(), 0);
    std::size_t col = 0;
    for (const auto& g : gens)
        for (const auto& s : src) {
            const oracle::Exponent prod{std::get<0>(g) + std::get<0>(s), std::get<1>(g) + std::get<1>(s),
                                        std::get<2>(g) + std::get<2>(s)};
            for (std::size_t r = 0; r < tgt.size(); ++r)
                if (tgt[r] == prod) m(r, col) = 1;
            ++col;
        }
    EXPECT_EQ(rank(f, m), oracle::monomial_ideal_dim(gens, 3));
    EXPECT_EQ(rank(f, m), 9u);
}

TEST(Rank, AgreesWithTextbookEliminationOnRandomMatrices) {
    std::mt19937_64 rng(2024);
    for (std::uint32_t p : {7u, 32003u, 2147483647u}) {
        const PrimeField f(p);
        for (int trial = 0; trial < kTrials; ++trial) {
            const auto rows = static_cast<std::size_t>(uniform_in(rng, 1, 24));
            const auto cols = static_cast<std::size_t>(uniform_in(rng, 1, 24));
            const int density = static_cast<int>(uniform_in(rng, 5, 100));
            const auto m = gen::prime_matrix(f, rows, cols, density, rng);
            ASSERT_EQ(rank(f, m), oracle::rank_mod_p(as_rows(m), p)) << "p=" << p << " trial " << trial;
        }
    }
}

TEST(Rank, ManyUpdatesPerRowStayExact) {
    // Tall low-rank products push every row through hundreds of lazy updates.
    std::mt19937_64 rng(99);
    for (std::uint32_t p : {32003u, 2147483647u}) {
        const PrimeField f(p);
        for (std::size_t k : {0u, 5u, 150u}) {
            const auto m = gen::prime_matrix_of_rank(f, 200, 180, k, rng);
            EXPECT_EQ(rank(f, m), k);
        }
    }
}

TEST(Rank, TransposeInvariant) {
    std::mt19937_64 rng(3);
    const PrimeField f;
    for (int trial = 0; trial < kTrials; ++trial) {
        const auto k = static_cast<std::size_t>(uniform_in(rng, 0, 8));
        const auto m = gen::prime_matrix_of_rank(f, static_cast<std::size_t>(uniform_in(rng, 8, 20)),
                                                 static_cast<std::size_t>(uniform_in(rng, 8, 20)), k, rng);
        ASSERT_EQ(rank(f, m), rank(f, transpose(m)));
    }
}

TEST(Rank, RationalsMatchPrimeFieldOnSmallIntegerMatrices) {
    std::mt19937_64 rng(8);
    const PrimeField f;
    const RationalField q;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t rows = 6, cols = 7;
        Matrix<std::uint32_t> mp(rows, cols, 0);
        Matrix<mpq_class> mq(rows, cols, 0);
        const std::size_t k = static_cast<std::size_t>(uniform_in(rng, 0, 5));
        // Integer rank-k matrix as a product of small integer factors.
        std::vector<std::int64_t> a(rows * k), b(k * cols);
        for (auto& v : a) v = uniform_in(rng, -3, 3);
        for (auto& v : b) v = uniform_in(rng, -3, 3);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                std::int64_t s = 0;
                for (std::size_t t = 0; t < k; ++t) s += a[r * k + t] * b[t * cols + c];
                mp(r, c) = f.from_int(s);
                mq(r, c) = q.from_int(s);
            }
        ASSERT_EQ(rank(f, mp), rank(q, mq));
    }
}

TEST(KernelBasis, TrivialShapes) {
    const PrimeField f;
    EXPECT_EQ(kernel_basis(f, identity_matrix(f, 2)).cols(), 0u);
    const auto k = kernel_basis(f, Matrix<std::uint32_t>(2, 3, 0));
    EXPECT_EQ(k.cols(), 3u);
    EXPECT_EQ(rank(f, k), 3u);
}

TEST(KernelBasis, AnnihilatedAndFullNullity) {
    std::mt19937_64 rng(17);
    const PrimeField f;
    const RationalField q;
    for (int trial = 0; trial < kTrials; ++trial) {
        const auto rows = static_cast<std::size_t>(uniform_in(rng, 1, 9));
        const auto cols = static_cast<std::size_t>(uniform_in(rng, 1, 12));
        const auto m = gen::prime_matrix(f, rows, cols, static_cast<int>(uniform_in(rng, 10, 100)), rng);
        const auto k = kernel_basis(f, m);
        ASSERT_EQ(k.rows(), cols);
        ASSERT_EQ(rank(f, m) + k.cols(), cols);
        ASSERT_EQ(rank(f, k), k.cols());
        if (k.cols() > 0) ASSERT_TRUE(is_zero_matrix(f, multiply(f, m, k)));
    }
    Matrix<mpq_class> m(2, 4, 0);
    m(0, 0) = 1; m(0, 1) = 2; m(0, 3) = -1;
    m(1, 1) = 3; m(1, 2) = mpq_class(1, 2);
    const auto k = kernel_basis(q, m);
    EXPECT_EQ(k.cols(), 2u);
    EXPECT_TRUE(is_zero_matrix(q, multiply(q, m, k)));
}

TEST(KernelBasis, RandomFiveByEightOverDefaultPrime) {
    std::mt19937_64 rng(5);
    const PrimeField f;
    const auto m = gen::prime_matrix(f, 5, 8, 100, rng);
    const auto k = kernel_basis(f, m);
    EXPECT_EQ(k.cols(), 3u);
    EXPECT_TRUE(is_zero_matrix(f, multiply(f, m, k)));
}

TEST(EchelonForm, ReducedRowsHaveUnitPivotsAndClearedColumns) {
    std::mt19937_64 rng(23);
    const PrimeField f;
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = gen::prime_matrix_of_rank(f, 10, 12, static_cast<std::size_t>(uniform_in(rng, 1, 9)), rng);
        const auto e = reduced_echelon_form(f, m);
        ASSERT_EQ(e.pivots.size(), rank(f, m));
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            for (std::size_t s = 0; s < e.pivots.size(); ++s) ASSERT_EQ(e.rows(s, e.pivots[r]), r == s ? 1u : 0u);
        // Same row space: stacking adds nothing.
        Matrix<std::uint32_t> both(m.rows() + e.rows.rows(), m.cols(), 0);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) both(r, c) = m(r, c);
        for (std::size_t r = 0; r < e.rows.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) both(m.rows() + r, c) = e.rows(r, c);
        ASSERT_EQ(rank(f, both), e.pivots.size());
    }
}
