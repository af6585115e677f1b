#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "symhyp/rs.hpp"

using namespace symhyp;

namespace {

UniPoly random_poly(const Field& F, std::size_t max_deg, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, F.q() - 1);
    std::vector<Elem> c(max_deg + 1);
    for (auto& x : c) x = Elem{pick(rng)};
    return UniPoly(F, std::move(c));
}

// sum over F_q of a^t, from the cyclic structure of F_q^*: q*1 = 0 for t = 0,
// -1 when (q-1) | t > 0, else 0.
Elem power_sum(const Field& F, std::size_t t) {
    if (t > 0 && t % (F.q() - 1) == 0) return F.neg(Field::one());
    return Field::zero();
}

std::vector<Elem> syndrome_of_monomial_oracle(const Field& F, std::size_t k, std::size_t e) {
    std::vector<Elem> w;
    for (std::size_t i = 0; i <= F.q() - k; ++i) w.push_back(F.neg(power_sum(F, i + e)));
    return w;
}

const std::vector<std::pair<unsigned, unsigned>> kFields{{5, 1}, {7, 1}, {2, 3}, {3, 2}};

}  // namespace

TEST(GeneratorMatrix, F5DimTwo) {
    const auto F = Field::make(5, 1);
    const RSSpec rs(F, 2);
    const Matrix g = generator_matrix(rs);
    ASSERT_EQ(g.rows(), 2u);
    ASSERT_EQ(g.cols(), 5u);
    for (std::uint32_t j = 0; j < 5; ++j) {
        EXPECT_EQ(g(0, j), Field::one());
        EXPECT_EQ(g(1, j), Elem{j});
    }
    EXPECT_EQ(rank(F, g), 2u);
    EXPECT_TRUE(is_mds(F, g).mds);
    EXPECT_THROW(RSSpec(F, 0), std::invalid_argument);
    EXPECT_THROW(RSSpec(F, 5), std::invalid_argument);
}

TEST(GeneratorMatrix, AlwaysMds) {
    for (auto [p, m] : kFields) {
        const auto F = Field::make(p, m);
        for (std::size_t dim = 1; dim < F.q(); ++dim) {
            const Matrix g = generator_matrix(RSSpec(F, dim));
            EXPECT_TRUE(is_mds(F, g).mds);
            EXPECT_EQ(rank(F, g), dim);
        }
    }
}

TEST(IsMds, RepeatedColumnFails) {
    const auto F = Field::make(7, 1);
    Matrix m = generator_matrix(RSSpec(F, 3));
    for (std::size_t r = 0; r < 3; ++r) m(r, 5) = m(r, 2);
    const auto res = is_mds(F, m);
    EXPECT_FALSE(res.mds);
    ASSERT_TRUE(res.failing_columns);
    // colex-first singular set contains columns 2 and 5 completed by the smallest column
    EXPECT_EQ(*res.failing_columns, (std::vector<std::size_t>{0, 2, 5}));
}

TEST(ExtendedMatrix, ShapeAndRows) {
    const auto F = Field::make(7, 1);
    const RSSpec rs(F, 2);
    const auto f = UniPoly::from_indices(F, std::vector<std::uint64_t>{3, 0, 1, 5});
    const Matrix e = extended_matrix(rs, f);
    ASSERT_EQ(e.rows(), 3u);
    ASSERT_EQ(e.cols(), 8u);
    EXPECT_EQ(e(0, 7), Field::zero());
    EXPECT_EQ(e(1, 7), Field::zero());
    EXPECT_EQ(e(2, 7), Field::one());
    for (std::uint32_t j = 0; j < 7; ++j) EXPECT_EQ(e(2, j), f.eval(Elem{j}));
    EXPECT_TRUE(is_mds(F, extended_matrix(rs, UniPoly::monomial(F, Field::one(), 2))).mds);
}

TEST(DualExtended, SyndromeShapes) {
    for (auto [p, m] : kFields) {
        const auto F = Field::make(p, m);
        const std::size_t q = F.q();
        for (std::size_t k = 2; k + 2 <= q; ++k) {
            const RSSpec rs(F, k - 1);
            const auto w1 = dual_extended_matrix(rs, UniPoly::monomial(F, Field::one(), k - 1)).syndrome.w;
            EXPECT_EQ(w1, syndrome_of_monomial_oracle(F, k, k - 1));
            std::vector<Elem> expect(q - k + 1, Field::zero());
            expect.back() = Field::one();
            EXPECT_EQ(w1, expect);

            const auto w2 = syndrome(rs, UniPoly::monomial(F, Field::one(), q - 2)).w;
            EXPECT_EQ(w2, syndrome_of_monomial_oracle(F, k, q - 2));
            std::vector<Elem> expect2(q - k + 1, Field::zero());
            expect2[1] = Field::one();
            EXPECT_EQ(w2, expect2);
        }
    }
}

TEST(DualExtended, OrthogonalToExtendedMatrix) {
    std::mt19937_64 rng(42);
    for (auto [p, m] : kFields) {
        const auto F = Field::make(p, m);
        for (int t = 0; t < 100; ++t) {
            const std::size_t k = 2 + t % (F.q() - 1);
            const RSSpec rs(F, k - 1);
            const auto f = random_poly(F, F.q() - 1, rng);
            const auto dual = dual_extended_matrix(rs, f);
            ASSERT_EQ(dual.matrix.rows(), F.q() + 1 - k);
            ASSERT_TRUE(multiply(F, extended_matrix(rs, f), dual.matrix.transposed()).is_zero());
        }
    }
}

TEST(SeroussiRoth, Shapes) {
    EXPECT_TRUE(seroussi_roth_test({{Elem{0}, Elem{0}, Elem{1}}}));
    EXPECT_FALSE(seroussi_roth_test({{Elem{0}, Elem{0}, Elem{0}}}));
    EXPECT_FALSE(seroussi_roth_test({{Elem{0}, Elem{1}, Elem{0}}}));
    EXPECT_FALSE(seroussi_roth_test({{}}));
}

TEST(Duality, RsDualIsRs) {
    for (auto [p, m] : kFields) {
        const auto F = Field::make(p, m);
        const std::size_t q = F.q();
        for (std::size_t k = 2; k < q; ++k) {
            const Matrix a = generator_matrix(RSSpec(F, k - 1));
            const Matrix b = generator_matrix(RSSpec(F, q + 1 - k));
            EXPECT_TRUE(multiply(F, a, b.transposed()).is_zero()) << F.name() << " k=" << k;
        }
    }
}

TEST(Duality, EvaluationOrthogonality) {
    std::mt19937_64 rng(12);
    for (auto [p, m] : kFields) {
        const auto F = Field::make(p, m);
        const std::size_t q = F.q();
        for (int t = 0; t < 100; ++t) {
            const std::size_t k = 2 + t % (q - 2);
            const auto a = random_poly(F, k - 2, rng);
            const auto b = random_poly(F, q - k, rng);
            Elem acc = Field::zero();
            for (auto x : F.elements()) acc = F.add(acc, F.mul(a.eval(x), b.eval(x)));
            ASSERT_EQ(acc, Field::zero());
        }
    }
}

TEST(Duality, MdsIffDualMds) {
    std::mt19937_64 rng(6);
    for (auto [p, m] : kFields) {
        const auto F = Field::make(p, m);
        for (std::size_t k = 2; k + 1 <= F.q(); ++k) {
            const RSSpec rs(F, k - 1);
            for (int t = 0; t < 10; ++t) {
                // mix in low-degree words so both outcomes occur
                const auto f = random_poly(F, t % 2 ? F.q() - 1 : k - 1, rng);
                ASSERT_EQ(is_mds(F, extended_matrix(rs, f)).mds, is_mds(F, dual_extended_matrix(rs, f).matrix).mds);
            }
        }
    }
}

TEST(IsDeepHole, Examples) {
    const auto F5 = Field::make(5, 1);
    const RSSpec rs(F5, 2);
    const auto v1 = is_deep_hole(rs, UniPoly::monomial(F5, Field::one(), 2));
    EXPECT_TRUE(v1.is_deep_hole);
    EXPECT_FALSE(v1.witness);
    EXPECT_TRUE(v1.sr_form);
    EXPECT_EQ(v1.f_degree, Degree{2});

    const auto v2 = is_deep_hole(rs, UniPoly::monomial(F5, Field::one(), 3));
    EXPECT_FALSE(v2.is_deep_hole);
    ASSERT_TRUE(v2.witness);
    const GenVanderInstance inst(UniPoly::monomial(F5, Field::one(), 3), 3);
    EXPECT_EQ(det_Df(inst, *v2.witness), Field::zero());

    const auto v3 = is_deep_hole(rs, UniPoly::from_indices(F5, std::vector<std::uint64_t>{2, 3}));
    EXPECT_FALSE(v3.is_deep_hole);
    EXPECT_TRUE(v3.is_codeword);
    EXPECT_FALSE(is_deep_hole_by_minors(rs, UniPoly::from_indices(F5, std::vector<std::uint64_t>{2, 3})));
}

TEST(IsDeepHole, FastPathMatchesMinorEnumeration) {
    std::mt19937_64 rng(19);
    for (auto [p, m] : kFields) {
        const auto F = Field::make(p, m);
        for (int t = 0; t < 40; ++t) {
            const std::size_t k = 2 + t % (F.q() - 2);
            const RSSpec rs(F, k - 1);
            const auto f = random_poly(F, t % 3 ? F.q() - 1 : k - 1, rng);
            const auto v = is_deep_hole(rs, f);
            ASSERT_EQ(v.is_deep_hole, is_deep_hole_by_minors(rs, f));
            if (!v.is_deep_hole && v.f_degree && *v.f_degree + 1 >= k) {
                ASSERT_TRUE(v.witness);
                ASSERT_EQ(det_Df(GenVanderInstance(f, k), *v.witness), Field::zero());
            }
        }
    }
}

TEST(IsDeepHole, SeroussiRothBridgeInCoveredRange) {
    // Within 3 <= k <= p, or max(3, floor((q-1)/2)) <= k <= q-2 (odd q),
    // the dual extension is MDS exactly when w has the (0,...,0,a) shape.
    std::mt19937_64 rng(23);
    for (auto [p, m] : kFields) {
        const auto F = Field::make(p, m);
        const std::size_t q = F.q();
        const bool even = q % 2 == 0;
        for (std::size_t k = 3; k + 2 <= q; ++k) {
            const bool small_k = k <= F.p();
            const std::size_t lo = std::max<std::size_t>(even ? 4 : 3, (q - 1) / 2);
            const bool sr = k >= lo && k + (even ? 3 : 2) <= q;
            if (!small_k && !sr) continue;
            const RSSpec rs(F, k - 1);
            for (int t = 0; t < 30; ++t) {
                const auto f = random_poly(F, t % 2 ? q - 1 : k - 1, rng);
                const auto dual = dual_extended_matrix(rs, f);
                ASSERT_EQ(is_mds(F, dual.matrix).mds, seroussi_roth_test(dual.syndrome)) << F.name() << " k=" << k;
            }
        }
    }
}
