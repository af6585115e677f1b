#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "symhyp/poly.hpp"

using namespace symhyp;

namespace {

UniPoly poly(const Field& F, std::vector<std::uint64_t> idx) { return UniPoly::from_indices(F, idx); }

UniPoly random_poly(const Field& F, std::size_t max_deg, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, F.q() - 1);
    std::vector<Elem> c(max_deg + 1);
    for (auto& x : c) x = Elem{pick(rng)};
    return UniPoly(F, std::move(c));
}

bool same_function(const UniPoly& a, const UniPoly& b) {
    for (std::uint32_t x = 0; x < a.field().q(); ++x)
        if (a.eval(Elem{x}) != b.eval(Elem{x})) return false;
    return true;
}

}  // namespace

TEST(PolyEval, Examples) {
    const auto F5 = Field::make(5, 1), F7 = Field::make(7, 1), F8 = Field::make(2, 3);
    EXPECT_EQ(poly(F5, {1, 0, 1}).eval(Elem{2}), Elem{0});
    for (std::uint32_t x = 0; x < 7; ++x) EXPECT_EQ(UniPoly(F7).eval(Elem{x}), Elem{0});
    const auto x7 = UniPoly::monomial(F8, Field::one(), 7);
    for (std::uint32_t x = 1; x < 8; ++x) EXPECT_EQ(x7.eval(Elem{x}), Elem{1});
    EXPECT_THROW((void)poly(F5, {1}).eval(Elem{5}), std::out_of_range);
}

TEST(PolyDegree, SentinelDistinctFromZero) {
    const auto F = Field::make(5, 1);
    EXPECT_EQ(poly(F, {1, 0, 0, 1}).degree(), Degree{3});
    EXPECT_EQ(poly(F, {3}).degree(), Degree{0});
    EXPECT_EQ(UniPoly(F).degree(), std::nullopt);
    EXPECT_NE(UniPoly(F).degree(), Degree{0});
    EXPECT_EQ(poly(F, {0, 0, 0}).degree(), std::nullopt);  // normalized
    EXPECT_EQ(poly(F, {1, 2, 0}).coeffs().size(), 2u);
}

TEST(PolyReduce, Examples) {
    const auto F = Field::make(5, 1);
    EXPECT_EQ(reduce_mod_qx(UniPoly::monomial(F, Field::one(), 5)), poly(F, {0, 1}));
    const auto x9 = UniPoly::monomial(F, Field::one(), 9);
    EXPECT_EQ(reduce_mod_qx(x9), poly(F, {0, 1}));
    EXPECT_TRUE(same_function(x9, reduce_mod_qx(x9)));
    const auto f = poly(F, {0, 0, 0, 0, 1, 0, 0, 0, 1});  // x^4 + x^8
    EXPECT_EQ(reduce_mod_qx(f), poly(F, {0, 0, 0, 0, 2}));
    EXPECT_TRUE(same_function(f, reduce_mod_qx(f)));
    // constant term never folds
    EXPECT_EQ(reduce_mod_qx(poly(F, {3, 0, 0, 0, 0, 0, 0, 0, 0, 0})), poly(F, {3}));
}

TEST(PolyReduce, PreservesFunctionAndIsIdempotent) {
    std::mt19937_64 rng(11);
    for (auto [p, m] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {7u, 1u}, {2u, 2u}, {2u, 3u}, {3u, 2u}}) {
        const auto F = Field::make(p, m);
        for (int t = 0; t < 40; ++t) {
            const auto f = random_poly(F, 3 * (F.q() - 1), rng);
            const auto g = reduce_mod_qx(f);
            ASSERT_TRUE(same_function(f, g));
            ASSERT_TRUE(!g.degree() || *g.degree() <= F.q() - 1);
            ASSERT_EQ(reduce_mod_qx(g), g);
        }
    }
}

TEST(PolyInterpolate, Examples) {
    const auto F5 = Field::make(5, 1);
    std::vector<std::pair<Elem, Elem>> pts{{Elem{0}, Elem{1}}, {Elem{1}, Elem{1}}, {Elem{2}, Elem{1}}};
    EXPECT_EQ(interpolate(F5, pts), poly(F5, {1}));

    const auto F7 = Field::make(7, 1);
    const auto cube = UniPoly::monomial(F7, Field::one(), 3);
    std::vector<std::pair<Elem, Elem>> samples;
    for (std::uint32_t x : {1u, 3u, 4u, 6u}) samples.emplace_back(Elem{x}, cube.eval(Elem{x}));
    const auto got = interpolate(F7, samples);
    for (const auto& [x, y] : samples) EXPECT_EQ(got.eval(x), y);
    EXPECT_EQ(got, cube);

    pts.emplace_back(Elem{2}, Elem{3});
    EXPECT_THROW(interpolate(F5, pts), std::invalid_argument);
    EXPECT_TRUE(interpolate(F5, {}).is_zero());
}

TEST(PolyInterpolate, RoundTripOnWholeField) {
    std::mt19937_64 rng(5);
    for (auto [p, m] : {std::pair{5u, 1u}, {7u, 1u}, {2u, 3u}, {3u, 2u}, {2u, 4u}}) {
        const auto F = Field::make(p, m);
        for (int t = 0; t < 20; ++t) {
            const auto f = random_poly(F, F.q() - 1, rng);
            std::vector<std::pair<Elem, Elem>> pts;
            for (auto x : F.elements()) pts.emplace_back(x, f.eval(x));
            ASSERT_EQ(interpolate(F, pts), f);
        }
    }
}

TEST(PolyArithmetic, MixedFieldsRejected) {
    const auto F5 = Field::make(5, 1), F7 = Field::make(7, 1);
    EXPECT_THROW(poly(F5, {1}) + poly(F7, {1}), std::invalid_argument);
    EXPECT_THROW(poly(F5, {1}) * poly(F7, {1}), std::invalid_argument);
    EXPECT_EQ(poly(F5, {1, 1}) * poly(F5, {4, 1}), poly(F5, {4, 0, 1}));  // (x+1)(x-1)
}

TEST(PolyParse, IndexLists) {
    EXPECT_EQ(parse_index_list("0,0,1"), (std::vector<std::uint64_t>{0, 0, 1}));
    EXPECT_TRUE(parse_index_list("").empty());
    EXPECT_THROW(parse_index_list("1,,2"), std::invalid_argument);
    EXPECT_THROW(parse_index_list("1,a"), std::invalid_argument);
    const auto F = Field::make(5, 1);
    EXPECT_THROW(poly(F, {1, 5}), std::out_of_range);
}
