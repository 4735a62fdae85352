#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace coarse;
using fixtures::line10;
using fixtures::line10_cover;
using fixtures::set_of;

TEST(Ostrand, Line10Sets) {
    auto r = ostrand_split(line10(), line10_cover());
    ASSERT_EQ(r.levels.size(), 2u);
    EXPECT_EQ(r.levels[0]["A"], Subset::range(10, 0, 3));
    EXPECT_EQ(r.levels[0]["B"], Subset::range(10, 5, 9));
    ASSERT_EQ(r.levels[1].size(), 1u);
    EXPECT_EQ(r.levels[1]["A+B"], set_of(10, {3, 4, 5}));
    EXPECT_TRUE(r.certificate.passed());
    EXPECT_TRUE(r.uncovered.empty());
    EXPECT_TRUE(point_ball(line10(), 4, 0.5).is_subset_of(r.levels[1]["A+B"]));
}

TEST(Ostrand, SingleMember) {
    auto X = line10();
    IndexedFamily U(10);
    U.add("X", Subset::all(10));
    auto r = ostrand_split(X, U);
    ASSERT_EQ(r.levels.size(), 1u);
    EXPECT_TRUE(r.levels[0]["X"].full());
    EXPECT_TRUE(r.certificate.passed());
}

TEST(Ostrand, UncoveredPointsStayOut) {
    auto X = line10();
    IndexedFamily U(10);
    U.add("a", Subset::range(10, 0, 4));
    U.add("b", Subset::range(10, 3, 7));
    auto r = ostrand_split(X, U);
    EXPECT_EQ(r.uncovered, (std::vector<Index>{8, 9}));
    EXPECT_FALSE(r.certificate.notes.empty());
    EXPECT_TRUE(r.certificate.passed());
}

TEST(Ostrand, RandomBound) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 11;
        auto X = random_graph_space(n, 6, rng());
        auto U = random_cover(n, 1 + rng() % 4, rng());
        auto r = ostrand_split(X, U);
        const auto Lin = local_lebesgue(X, U);
        const auto Lout = local_lebesgue(X, r.combined());
        const double k = 2.0 * static_cast<double>(r.order);
        for (Index x = 0; x < n; ++x) EXPECT_GE(Lout[x] * k, Lin[x]);
        for (const auto& lvl : r.levels)
            for (std::size_t a = 0; a < lvl.size(); ++a)
                for (std::size_t b = a + 1; b < lvl.size(); ++b) EXPECT_FALSE(lvl.set(a).intersects(lvl.set(b)));
        EXPECT_TRUE(r.certificate.passed());
    }
}

TEST(Ostrand, ScaleEquivariance) {
    auto r1 = ostrand_split(line10(), line10_cover());
    auto X10 = line10().scaled(10);
    auto r10 = ostrand_split(X10, line10_cover());
    EXPECT_EQ(r1.combined(), r10.combined());
    auto L1 = local_lebesgue(line10(), line10_cover());
    auto L10 = local_lebesgue(X10, line10_cover());
    for (Index x = 0; x < 10; ++x) EXPECT_EQ(L10[x], 10 * L1[x]);
}

TEST(Annuli, Line10) {
    auto r = squared_annuli(line10());
    ASSERT_EQ(r.family.size(), 4u);
    EXPECT_EQ(r.family["V1"], Subset::range(10, 0, 3));
    EXPECT_EQ(r.family["V2"], Subset::range(10, 1, 8));
    EXPECT_EQ(r.family["V3"], Subset::range(10, 4, 9));
    EXPECT_EQ(r.family["V4"], set_of(10, {9}));
    EXPECT_EQ(pointwise_multiplicity(r.family)[4], 2u);
    EXPECT_TRUE(r.certificate.passed());
}

TEST(Annuli, SinglePoint) {
    auto r = squared_annuli(line_space(1));
    EXPECT_TRUE(r.family["V1"].full());
}

TEST(Annuli, ProfileGrows) {
    auto X = line_space(100);
    auto r = squared_annuli(X);
    EXPECT_LE(multiplicity(r.family), 2u);
    auto p = coarseness_profile(X, r.family);
    EXPECT_TRUE(p.nondecreasing());
    for (double k = 3; (k + 1) * (k + 1) < 100; ++k) EXPECT_GT(p.at((k + 1) * (k + 1)), p.at(k * k)) << k;
}

TEST(BoundedAnnulus, Line10) {
    auto r = bounded_annulus_refine(line10(), line10_cover());
    EXPECT_EQ(r.family["A/0"], set_of(10, {2, 3, 4}));
    EXPECT_EQ(r.family["A/1"], set_of(10, {3, 4, 5}));
    EXPECT_EQ(r.family["B/2"], Subset::range(10, 5, 9));
    EXPECT_EQ(multiplicity(r.family), 4u);
    EXPECT_EQ(pointwise_multiplicity(r.family)[4], 4u);
    EXPECT_TRUE(r.certificate.passed());
    auto res = bounded_annulus_refine(line10(), line10_cover(), {true});
    EXPECT_EQ(res.family["A/res"], set_of(10, {0, 1}));
    EXPECT_TRUE(res.family.covers());
    EXPECT_TRUE(res.certificate.passed());
}

TEST(Paracompact, Line10) {
    auto r = paracompact_shrink(line10(), line10_cover());
    EXPECT_EQ(r.f[4], 1.0);
    ASSERT_TRUE(r.choice[4].has_value());
    EXPECT_EQ(*r.choice[4], 0u);
    EXPECT_TRUE(r.family["A"].contains(4));
    EXPECT_EQ(r.f[0], 0.0);
    EXPECT_EQ(*r.choice[0], 0u);
    EXPECT_TRUE(r.certificate.passed());
    EXPECT_FALSE(r.table.empty());
}

TEST(Paracompact, RandomShrinking) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng() % 14;
        auto X = random_graph_space(n, 5, rng());
        auto U = random_cover(n, 1 + rng() % 4, rng());
        auto r = paracompact_shrink(X, U);
        EXPECT_TRUE(is_shrinking_of(r.family, U));
        EXPECT_TRUE(r.certificate.find("threshold")->passed);
    }
}

TEST(Inward, Line10) {
    auto r = inward_shrink(line10(), line10_cover());
    EXPECT_EQ(r.f[0], 0.5);
    EXPECT_EQ(r.family["A"], Subset::range(10, 0, 5));
    EXPECT_TRUE(r.certificate.passed());
    auto s = inward_shrink(line10().scaled(10), line10_cover());
    EXPECT_EQ(s.f[0], 5.0);
    EXPECT_EQ(s.family, r.family);
    IndexedFamily W(10);
    W.add("X", Subset::all(10));
    auto w = inward_shrink(line10(), W);
    EXPECT_EQ(w.f[0], kInf);
    EXPECT_TRUE(w.family["X"].full());
    IndexedFamily E(10);
    E.add("e", Subset(10));
    EXPECT_THROW(inward_shrink(line10(), E), ValidationError);
}

namespace {

IndexedFamily stripes(std::size_t n) {
    IndexedFamily U(n);
    for (std::size_t k = 0; 16 * k < n; ++k)
        U.add("I" + std::to_string(k), Subset::range(n, 16 * k, std::min(n - 1, 16 * k + 31)));
    return U;
}

}  // namespace

TEST(Gromov, Stripes) {
    auto X = line_space(200);
    auto U = stripes(200);
    EXPECT_EQ(multiplicity(U), 2u);
    EXPECT_EQ(lebesgue(X, U), 9.0);
    auto r = gromov_disjointify(X, U, 1, 1);
    EXPECT_EQ(r.families.size(), 2u);
    EXPECT_TRUE(r.certificate.passed());
    try {
        gromov_disjointify(X, U, 4, 4);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("9 < 2(n+1)(M+N) = 32"), std::string::npos) << e.what();
    }
    IndexedFamily W(200);
    W.add("X", Subset::all(200));
    auto w = gromov_disjointify(X, W, 1, 1);
    ASSERT_EQ(w.families.size(), 1u);
    EXPECT_TRUE(w.families[0]["X"].full());
}

TEST(Extension, Evens) {
    auto X = line10();
    auto A = set_of(10, {0, 2, 4, 6, 8});
    IndexedFamily V(10);
    V.add("v1", set_of(10, {0, 2, 4}));
    V.add("v2", set_of(10, {6, 8}));
    auto r = subset_cover_extension(X, A, V);
    EXPECT_EQ(r.family["v1"], Subset::range(10, 0, 4));
    EXPECT_EQ(r.family["v2"], Subset::range(10, 6, 9));
    EXPECT_EQ(multiplicity(r.family), 1u);
    EXPECT_TRUE(r.certificate.passed());
    IndexedFamily bad(10);
    bad.add("b", set_of(10, {1}));
    EXPECT_THROW(subset_cover_extension(X, A, bad), ValidationError);
}

TEST(Extension, RandomNerve) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 3 + rng() % 12;
        auto X = random_graph_space(n, 4, rng());
        Subset A(n);
        for (Index x = 0; x < n; ++x)
            if (rng() % 2) A.insert(x);
        IndexedFamily V(n);
        for (std::size_t s = 0; s < 3; ++s) {
            Subset S(n);
            for (Index x : A.members())
                if (rng() % 3 == 0) S.insert(x);
            V.add("v" + std::to_string(s), S);
        }
        auto r = subset_cover_extension(X, A, V);
        EXPECT_TRUE(r.certificate.passed());
    }
}

TEST(Merge, EvensOdds) {
    auto X = line10();
    auto A = set_of(10, {0, 2, 4, 6, 8}), B = set_of(10, {1, 3, 5, 7, 9});
    IndexedFamily UA(10), UB(10);
    UA.add("a1", set_of(10, {0, 2, 4}));
    UA.add("a2", set_of(10, {6, 8}));
    UB.add("b1", set_of(10, {1, 3, 5}));
    UB.add("b2", set_of(10, {7, 9}));
    auto r = union_merge(X, A, UA, B, UB, 1);
    EXPECT_TRUE(r.family.covers());
    EXPECT_EQ(multiplicity(r.family), 1u);
    EXPECT_GE(lebesgue(X, r.family), 1.0);
    EXPECT_TRUE(r.certificate.passed());
    auto z = union_merge(X, A, UA, B, UB, 0);
    EXPECT_EQ(z.family["A:a1"], UA["a1"]);
    EXPECT_THROW(union_merge(X, A, UA, set_of(10, {1}), IndexedFamily(10), 1), ValidationError);
}

namespace {

// intervals of index span `span` every `step` indices, clipped to 0..n-1
IndexedFamily intervals(std::size_t n, std::size_t span, std::size_t step) {
    IndexedFamily V(n);
    for (std::size_t a = 0; a < n; a += step) {
        V.add("[" + std::to_string(a) + "]", Subset::range(n, a, std::min(n - 1, a + span)));
        if (a + span >= n - 1) break;
    }
    return V;
}

IndexedFamily halves(std::size_t n) {
    IndexedFamily U(n);
    U.add("left", Subset::range(n, 0, 300));
    U.add("right", Subset::range(n, 200, n - 1));
    return U;
}

}  // namespace

TEST(Paste, LineThreeScales) {
    auto X = line_space(501);
    std::vector<double> M{1, 4, 16, 64};
    std::vector<IndexedFamily> V{intervals(501, 3, 2), intervals(501, 15, 8), intervals(501, 63, 32)};
    auto r = annulus_paste(X, halves(501), M, V);
    EXPECT_LE(multiplicity(r.family), 2u);
    EXPECT_TRUE(is_shrinking_of(r.family, halves(501)));
    EXPECT_TRUE(r.uncovered.empty());
    EXPECT_TRUE(r.certificate.passed());
}

TEST(Paste, BallGuaranteeExercised) {
    auto X = line_space(501, 8);
    std::vector<double> M{1, 4, 16, 64, 256, 1024};
    std::vector<IndexedFamily> V{intervals(501, 0, 1), intervals(501, 0, 1), intervals(501, 7, 4),
                                 intervals(501, 31, 16), intervals(501, 127, 64)};
    auto r = annulus_paste(X, halves(501), M, V);
    EXPECT_LE(multiplicity(r.family), 2u);
    EXPECT_TRUE(r.certificate.passed());
    EXPECT_NE(r.certificate.find("ball-guarantee")->detail.find("points"), std::string::npos);
    EXPECT_TRUE(r.uncovered.empty());
}

TEST(Paste, SingleAnnulusAndErrors) {
    auto X = line_space(501);
    auto r = annulus_paste(X, halves(501), {1, 4}, {intervals(501, 3, 2)});
    EXPECT_TRUE(is_shrinking_of(r.family, halves(501)));
    EXPECT_THROW(annulus_paste(X, halves(501), {1, 4}, {intervals(501, 7, 2)}), ValidationError);
    try {
        annulus_paste(X, halves(501), {1, 4, 8}, {intervals(501, 3, 2), intervals(501, 3, 2)});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("condition (d)"), std::string::npos) << e.what();
    }
}
