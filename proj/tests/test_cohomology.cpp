// Chern data, the cohomology table, stability and splitting types.

#include <random>

#include <gtest/gtest.h>

#include <lefschetz/cohomology.hpp>
#include <lefschetz/pipeline.hpp>

#include "support.hpp"

using namespace lefschetz;

namespace {

using P = HomogPoly<PrimeField>;

const TwistSequence kEx1Source{7, 2, 2, 2};
const TwistSequence kEx1Target{1, 0};
const TwistSequence kEx2Source{8, 2, 2, 2, 2};
const TwistSequence kEx2Target{1, 0, 0};

P pure_power(const PrimeField& f, int i, int j, int k) { return P::monomial(f, {i, j, k}, 1); }

/// c1, c2 of E(s) by dividing prod(1 + (s - a_i) h) by prod(1 + (s - b_j) h)
/// as power series in h, truncated after h^2.
std::pair<std::int64_t, std::int64_t> twisted_chern_by_series(const TwistSequence& src, const TwistSequence& tgt,
                                                              int s) {
    auto product = [s](const TwistSequence& tw) {
        std::int64_t e1 = 0, e2 = 0;
        for (int c : tw.values()) {
            const std::int64_t r = s - c;
            e2 += e1 * r;
            e1 += r;
        }
        return std::pair{e1, e2};
    };
    const auto [f1, f2] = product(src);
    const auto [g1, g2] = product(tgt);
    // (1 + f1 h + f2 h^2) / (1 + g1 h + g2 h^2) = 1 + q1 h + q2 h^2 + ...
    const std::int64_t q1 = f1 - g1;
    const std::int64_t q2 = f2 - g1 * q1 - g2;
    return {q1, q2};
}

struct Fixture {
    PrimeField field;
    GradedMap<PrimeField> map;
    DegreeRanks<PrimeField> ranks;
    ChernData chern;

    Fixture(const TwistSequence& src, const TwistSequence& tgt, std::uint64_t seed)
        : map(make(field, src, tgt, seed)), ranks(field, map), chern(chern_classes(src, tgt)) {}
    explicit Fixture(GradedMap<PrimeField> m)
        : map(std::move(m)), ranks(field, map), chern(chern_classes(map.source(), map.target())) {}

    static GradedMap<PrimeField> make(const PrimeField& f, const TwistSequence& src, const TwistSequence& tgt,
                                      std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return random_instance(f, src, tgt, rng);
    }
};

}  // namespace

TEST(ChernClasses, ExampleNormalizations) {
    const auto c1 = chern_classes(kEx1Source, kEx1Target);
    EXPECT_EQ(c1.c1, -12);
    EXPECT_EQ(c1.s, 6);
    EXPECT_EQ(c1.c1_norm, 0);
    const auto c2 = chern_classes(kEx2Source, kEx2Target);
    EXPECT_EQ(c2.c1, -15);
    EXPECT_EQ(c2.s, 7);
    EXPECT_EQ(c2.c1_norm, -1);
}

TEST(ChernClasses, NormalizedSecondClassMatchesSeriesDivision) {
    const auto c = chern_classes(kEx1Source, kEx1Target);
    const auto [q1, q2] = twisted_chern_by_series(kEx1Source, kEx1Target, c.s);
    EXPECT_EQ(q1, 0);
    EXPECT_EQ(q2, 6);
    EXPECT_EQ(c.c2_norm(), 6);

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(uniform_in(rng, 1, 5));
        std::vector<int> a(n + 2), b(n);
        for (auto& x : a) x = static_cast<int>(uniform_in(rng, -3, 9));
        for (auto& x : b) x = static_cast<int>(uniform_in(rng, -3, 9));
        const TwistSequence src(a), tgt(b);
        const auto cd = chern_classes(src, tgt);
        for (int t : {0, cd.s, -2, 5}) {
            const auto [s1, s2] = twisted_chern_by_series(src, tgt, t);
            ASSERT_EQ(s1, cd.c1 + 2 * t);
            ASSERT_EQ(s2, cd.c2 + static_cast<std::int64_t>(cd.c1) * t + static_cast<std::int64_t>(t) * t);
        }
    }
}

TEST(EulerChar, SplitBundlesAndExampleOne) {
    EXPECT_EQ(euler_char(ChernData{0, 0, 0, 0}, 0), 2);
    EXPECT_EQ(euler_char(ChernData{-1, 0, 0, -1}, 0), 1);
    const auto c = chern_classes(kEx1Source, kEx1Target).normalized();
    EXPECT_EQ(euler_char(c, -2), -6);
}

TEST(EulerChar, SumOfLineBundles) {
    // chi(O(p) + O(q)) = C(p+2, 2) + C(q+2, 2) for p, q >= -2.
    for (int p = -2; p <= 6; ++p)
        for (int q = -2; q <= 6; ++q) {
            const ChernData c{p + q, static_cast<std::int64_t>(p) * q, 0, 0};
            ASSERT_EQ(euler_char(c, 0), static_cast<std::int64_t>(oracle::binomial(p + 2, 2) + oracle::binomial(q + 2, 2)));
        }
}

TEST(CohomologyTable, ExampleOneRows) {
    const Fixture fx(kEx1Source, kEx1Target, 42);
    const auto table = cohomology_table(fx.ranks, fx.chern);
    const auto row = table.at(4);
    EXPECT_EQ(row.h0, 0u);
    EXPECT_EQ(row.h1, 7u);
    EXPECT_EQ(row.h2, 1u);
    // Past the module and the h2 support only h0 survives, and equals chi.
    const auto& last = table.rows.back();
    EXPECT_EQ(last.h1, 0u);
    EXPECT_EQ(last.h2, 0u);
    EXPECT_EQ(static_cast<std::int64_t>(last.h0), euler_char(fx.chern, last.t));
    for (const auto& r : table.rows)
        ASSERT_EQ(static_cast<std::int64_t>(r.h0) - static_cast<std::int64_t>(r.h1) + static_cast<std::int64_t>(r.h2),
                  euler_char(fx.chern, r.t));
}

TEST(CohomologyTable, ExampleTwoMiddleDegree) {
    const Fixture fx(kEx2Source, kEx2Target, 42);
    EXPECT_EQ(cohomology_table(fx.ranks, fx.chern).at(6).h1, 17u);
}

TEST(Classify, ExamplesAndKoszul) {
    const Fixture ex1(kEx1Source, kEx1Target, 42);
    EXPECT_EQ(classify(ex1.ranks, ex1.chern), (BundleClass{Stability::Unstable, 1, 0}));
    EXPECT_EQ(instability_index(ex1.ranks, ex1.chern), 1);

    const Fixture ex2(kEx2Source, kEx2Target, 42);
    EXPECT_EQ(classify(ex2.ranks, ex2.chern), (BundleClass{Stability::Unstable, 0, -1}));
    EXPECT_EQ(instability_index(ex2.ranks, ex2.chern), 0);

    const PrimeField f;
    const Fixture sq(ci_instance(pure_power(f, 2, 0, 0), pure_power(f, 0, 2, 0), pure_power(f, 0, 0, 2)));
    EXPECT_EQ(sq.ranks.kernel_dim(3), 0u);
    EXPECT_EQ(classify(sq.ranks, sq.chern).variant, Stability::Stable);
    EXPECT_THROW(instability_index(sq.ranks, sq.chern), std::invalid_argument);
}

TEST(Classify, StrictlySemistableKoszul) {
    // (x, y, z^2): the Koszul syzygy of x and y lives exactly at the normalization twist.
    const PrimeField f;
    const Fixture fx(ci_instance(pure_power(f, 1, 0, 0), pure_power(f, 0, 1, 0), pure_power(f, 0, 0, 2)));
    EXPECT_EQ(fx.chern.c1_norm, 0);
    EXPECT_EQ(classify(fx.ranks, fx.chern).variant, Stability::StrictlySemistable);
}

TEST(Classify, IndexTwoFromALinearSyzygy) {
    // Two linear forms and a sextic: c1 = -8, s = 4, and the syzygy of the
    // linear forms sits in degree 2 = s - 2, so h0(E_norm(-2)) != 0 and
    // h0(E_norm(-3)) = 0.
    const Fixture fx(TwistSequence{6, 1, 1}, TwistSequence{0}, 3);
    EXPECT_EQ(fx.chern.s, 4);
    EXPECT_EQ(h0_normalized(fx.ranks, fx.chern, -2), 1u);
    EXPECT_EQ(h0_normalized(fx.ranks, fx.chern, -3), 0u);
    EXPECT_EQ(classify(fx.ranks, fx.chern), (BundleClass{Stability::Unstable, 2, 0}));
}

TEST(PredictedSplitting, AllCases) {
    EXPECT_EQ(predicted_splitting({Stability::Unstable, 1, 0}), (SplittingType{-1, 1}));
    EXPECT_EQ(predicted_splitting({Stability::Unstable, 0, -1}), (SplittingType{-1, 0}));
    EXPECT_EQ(predicted_splitting({Stability::Unstable, 3, -1}), (SplittingType{-4, 3}));
    EXPECT_EQ(predicted_splitting({Stability::Stable, 0, 0}), (SplittingType{0, 0}));
    EXPECT_EQ(predicted_splitting({Stability::Stable, 0, -1}), (SplittingType{-1, 0}));
    EXPECT_EQ(predicted_splitting({Stability::StrictlySemistable, 0, 0}), (SplittingType{0, 0}));
}

TEST(ComputedSplitting, ExamplesAndKoszulOnRandomLines) {
    const Fixture ex1(kEx1Source, kEx1Target, 42);
    const Fixture ex2(kEx2Source, kEx2Target, 42);
    const PrimeField f;
    const Fixture sq(ci_instance(pure_power(f, 2, 0, 0), pure_power(f, 0, 2, 0), pure_power(f, 0, 0, 2)));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::mt19937_64 rng(seed);
        EXPECT_EQ(computed_splitting(f, ex1.map, ex1.chern, rng).type, (SplittingType{-1, 1}));
        EXPECT_EQ(computed_splitting(f, ex2.map, ex2.chern, rng).type, (SplittingType{-1, 0}));
        EXPECT_EQ(computed_splitting(f, sq.map, sq.chern, rng).type, (SplittingType{0, 0}));
    }
}

TEST(ComputedSplitting, SpecialLineCanJump) {
    // On z = 0 the squares restrict to x^2, y^2, 0: the restricted kernel
    // gains a section in degree 2 and the line is rejected or jumps.
    const PrimeField f;
    const Fixture sq(ci_instance(pure_power(f, 2, 0, 0), pure_power(f, 0, 2, 0), pure_power(f, 0, 0, 2)));
    const LineParam<PrimeField> z0{{1, 0, 0}, {0, 1, 0}};
    const auto st = splitting_on_line(f, sq.map, z0, sq.chern);
    EXPECT_TRUE((!st || *st != SplittingType{0, 0}));
}

TEST(H0Formula, ExamplesHoldOnTheirRanges) {
    const Fixture ex1(kEx1Source, kEx1Target, 42);
    const auto b1 = classify(ex1.ranks, ex1.chern);
    EXPECT_EQ(h0_normalized(ex1.ranks, ex1.chern, -1), 1u);
    EXPECT_EQ(h0_normalized(ex1.ranks, ex1.chern, -b1.k - 2), 0u);
    const auto r1 = h0_formula_check(ex1.ranks, b1, ex1.chern);
    EXPECT_EQ(r1.t_lo, -3);
    EXPECT_EQ(r1.t_hi, 0);
    EXPECT_TRUE(r1.ok());

    const Fixture ex2(kEx2Source, kEx2Target, 42);
    const auto b2 = classify(ex2.ranks, ex2.chern);
    EXPECT_EQ(h0_normalized(ex2.ranks, ex2.chern, 0), 1u);
    const auto r2 = h0_formula_check(ex2.ranks, b2, ex2.chern);
    EXPECT_EQ(r2.t_hi, 0);
    EXPECT_TRUE(r2.ok());
}

// ---------------------------------------------------------------------------
// Properties on seeded random instances

class RandomBundles : public ::testing::Test {
protected:
    static constexpr std::size_t kInstances = 40;

    template <class Body>
    void for_each_instance(std::uint64_t seed, Body body) {
        FuzzConfig cfg;
        cfg.max_n = 3;
        cfg.max_twist = 6;
        for (std::size_t i = 0; i < kInstances; ++i) {
            std::mt19937_64 rng(mix_seed(seed, i));
            const auto [src, tgt] = draw_pattern(cfg, rng);
            try {
                const auto g = generate_map(field_, src, tgt, rng);
                body(*g.ranks, chern_classes(src, tgt), rng);
            } catch (const GenerationFailed&) {
            }
        }
    }

    PrimeField field_;
};

TEST_F(RandomBundles, SectionsGrowWithTheTwist) {
    for_each_instance(100, [&](const DegreeRanks<PrimeField>& ranks, const ChernData& c, std::mt19937_64&) {
        const int lo = ranks.map().source().min() - 2;
        for (int t = lo; t < lo + 14; ++t) ASSERT_LE(ranks.kernel_dim(t), ranks.kernel_dim(t + 1)) << "t=" << t;
        (void)c;
    });
}

TEST_F(RandomBundles, SectionJumpsBoundedByTheLine) {
    // 0 -> E(t) -> E(t+1) -> E|_L(t+1) gives h0(E(t+1)) - h0(E(t)) <= h0(E|_L(t+1)).
    for_each_instance(200, [&](const DegreeRanks<PrimeField>& ranks, const ChernData& c, std::mt19937_64& rng) {
        const auto line = random_line(field_, rng);
        const RestrictedMap<PrimeField> restricted(field_, ranks.map(), line);
        const int lo = ranks.map().source().min() - 1;
        for (int t = lo; t < lo + 10; ++t)
            ASSERT_LE(ranks.kernel_dim(t + 1) - ranks.kernel_dim(t), restricted.kernel_dim(t + 1)) << "t=" << t;
        (void)c;
    });
}

TEST_F(RandomBundles, SplittingMatchesClassificationAndSumsToC1) {
    for_each_instance(300, [&](const DegreeRanks<PrimeField>& ranks, const ChernData& c, std::mt19937_64& rng) {
        const auto b = classify(ranks, c);
        const auto st = computed_splitting(field_, ranks.map(), c, rng).type;
        ASSERT_EQ(st.e + st.f, c.c1_norm);
        ASSERT_LE(st.e, st.f);
        ASSERT_EQ(st, predicted_splitting(b));
    });
}

TEST_F(RandomBundles, TableRowsSatisfyRiemannRochAndDuality) {
    for_each_instance(400, [&](const DegreeRanks<PrimeField>& ranks, const ChernData& c, std::mt19937_64&) {
        const auto table = cohomology_table(ranks, c);
        for (const auto& r : table.rows) {
            ASSERT_EQ(static_cast<std::int64_t>(r.h0) - static_cast<std::int64_t>(r.h1) +
                          static_cast<std::int64_t>(r.h2),
                      euler_char(c, r.t));
            ASSERT_EQ(r.h1, table.at(-3 - c.c1 - r.t).h1);
        }
    });
}
