#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace coarse;
using fixtures::line10;
using fixtures::line10_cover;
using fixtures::set_of;

TEST(HigherLebesgue, Line10) {
    auto X = line10();
    auto all = Subset::all(10);
    EXPECT_EQ(higher_lebesgue_exact(X, line10_cover(), all, 0), 1.0);
    EXPECT_EQ(higher_lebesgue_exact(X, line10_cover(), all, 1), 2.0);
    EXPECT_EQ(oracles::naive_higher_lebesgue(X, line10_cover(), all, 0), 1.0);
    EXPECT_EQ(oracles::naive_higher_lebesgue(X, line10_cover(), all, 1), 2.0);
    auto r = higher_lebesgue(X, line10_cover(), all, 0);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(multiplicity(r.shrinking), 1u);
    EXPECT_TRUE(is_shrinking_of(r.shrinking, line10_cover()));
}

TEST(HigherLebesgue, WholeSpaceMember) {
    IndexedFamily U(10);
    U.add("X", Subset::all(10));
    for (std::size_t n : {0u, 1u, 3u}) EXPECT_EQ(higher_lebesgue_exact(line10(), U, Subset::all(10), n), kInf);
}

TEST(HigherLebesgue, LimitsAndModes) {
    auto X = line_space(20);
    IndexedFamily U(20);
    U.add("a", Subset::range(20, 0, 12));
    U.add("b", Subset::range(20, 8, 19));
    EXPECT_THROW(higher_lebesgue_exact(X, U, Subset::all(20), 0), SizeLimitError);
    auto h = higher_lebesgue(X, U, Subset::all(20), 0, {16, true, std::nullopt});
    EXPECT_FALSE(h.exact);
    EXPECT_LE(h.value, higher_lebesgue_exact(X, U, Subset::all(20), 0, 20));
    auto yes = higher_lebesgue(line10(), line10_cover(), Subset::all(10), 1, {16, false, 1.5});
    EXPECT_FALSE(yes.at_most_threshold);
    EXPECT_GT(yes.value, 1.5);
    auto no = higher_lebesgue(line10(), line10_cover(), Subset::all(10), 0, {16, false, 1.0});
    EXPECT_TRUE(no.at_most_threshold);
}

TEST(HigherLebesgue, OracleEquivalence) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        auto X = random_graph_space(n, 4, rng());
        auto U = random_cover(n, 1 + rng() % 3, rng());
        Subset A(n);
        for (Index x = 0; x < n; ++x)
            if (A.count() < 8 && rng() % 4) A.insert(x);
        const std::size_t k = rng() % 3;
        EXPECT_EQ(higher_lebesgue_exact(X, U, A, k), oracles::naive_higher_lebesgue(X, U, A, k)) << trial;
    }
}

TEST(HigherLebesgue, MonotoneAndStable) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng() % 8;
        auto X = random_graph_space(n, 5, rng());
        auto U = random_cover(n, 1 + rng() % 4, rng());
        const auto all = Subset::all(n);
        const double full = lebesgue(X, U);
        double prev = -1.0;
        for (std::size_t k = 0; k < 4; ++k) {
            const double v = higher_lebesgue_exact(X, U, all, k);
            EXPECT_GE(v, prev);
            EXPECT_LE(v, full);
            if (k + 1 >= multiplicity(U)) { EXPECT_EQ(v, full); }
            prev = v;
        }
        IndexedFamily W(n);
        for (std::size_t s = 0; s < U.size(); ++s) {
            Subset S = U.set(s);
            S.insert(rng() % n);
            W.add(U.label(s), S);
        }
        for (std::size_t k = 0; k < 2; ++k)
            EXPECT_GE(higher_lebesgue_exact(X, W, all, k), higher_lebesgue_exact(X, U, all, k));
    }
}

TEST(ScaleSearch, Examples) {
    auto line = line_space(100);
    auto a = asdim_at_scale(line, 5, 1, 40);
    EXPECT_TRUE(a.found);
    EXPECT_TRUE(a.certificate.passed());
    EXPECT_LE(a.multiplicity, 2u);
    EXPECT_GE(a.lebesgue, 5.0);
    EXPECT_LE(a.mesh, 40.0);
    auto b = asdim_at_scale(line10(), 2, 0, 5);
    EXPECT_FALSE(b.found);
    EXPECT_TRUE(b.exact);
    auto grid = grid_space(20, 20);
    auto c = asdim_at_scale(grid, 2, 2, 30);
    EXPECT_TRUE(c.found);
    EXPECT_EQ(c.strategy, "star-cover");
    EXPECT_LE(c.multiplicity, 3u);
    EXPECT_THROW(asdim_at_scale(line, 0, 1, 4), ValidationError);
}

TEST(ScaleSearch, SmallExhaustive) {
    auto X = line_space(8);
    auto r = asdim_at_scale(X, 2, 1, 4);
    EXPECT_TRUE(r.found);
    EXPECT_EQ(r.strategy, "exhaustive");
    auto no = asdim_at_scale(X, 3, 1, 2);
    EXPECT_FALSE(no.found);
    EXPECT_TRUE(no.exact);
}

TEST(DOfM, Examples) {
    auto r = d_of_M(line_space(100), 5, 40);
    ASSERT_TRUE(r.d.has_value());
    EXPECT_EQ(*r.d, 1u);
    EXPECT_TRUE(r.exact);
    auto g = d_of_M(geometric_space(10), 3, 4);
    ASSERT_TRUE(g.d.has_value());
    EXPECT_EQ(*g.d, 0u);
    auto s = d_of_M(grid_space(20, 20), 2, 30);
    ASSERT_TRUE(s.d.has_value());
    EXPECT_LE(*s.d, 2u);
    auto [rows, p] = d_of_M_table(line_space(100), {5, 2}, 8);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].M, 2.0);
    EXPECT_EQ(p.at(5), 1.0 / 5.0);
}

TEST(ZeroWitness, Examples) {
    auto G = geometric_space(10);
    auto w = asdim_zero_witness(G, 3);
    for (const auto& row : w.rows)
        if (row.r >= 4) { EXPECT_EQ(row.max_diameter, 0.0); }
    auto line = line_space(100);
    auto z = asdim_zero_witness(line, 2);
    EXPECT_FALSE(z.none);
    for (const auto& row : z.rows) {
        EXPECT_EQ(row.components, 1u);
        EXPECT_EQ(row.max_diameter, 99.0 - row.r);
        double diam = 0.0;
        for (const auto& c : m_scale_components(line, tail(line, row.r), 2))
            diam = std::max(diam, set_diameter(line, Subset::of(100, std::span<const Index>(c))));
        EXPECT_EQ(diam, row.max_diameter);
    }
    auto big = asdim_zero_witness(line10(), 100);
    EXPECT_EQ(big.rows.front().max_diameter, 9.0);
    const auto& row = big.rows.front();
    EXPECT_EQ(std::min(row.x, row.y), 0u);
    EXPECT_EQ(std::max(row.x, row.y), 9u);
    ASSERT_EQ(row.chain.size(), 2u);
    EXPECT_EQ(row.chain.front(), row.x);
    EXPECT_EQ(row.chain.back(), row.y);
}

TEST(Sperner, SmallSubdivisions) {
    auto one = sperner_bound(equilateral_subdivision(1));
    EXPECT_EQ(one.vertices, 3u);
    EXPECT_TRUE(one.confirmed);
    auto two = sperner_bound(equilateral_subdivision(2));
    EXPECT_EQ(two.vertices, 6u);
    EXPECT_EQ(two.mesh, 0.5);
    EXPECT_TRUE(two.confirmed);
    ASSERT_TRUE(two.exact_l1.has_value());
    EXPECT_LE(*two.exact_l1, 0.5);
    EXPECT_TRUE(two.certificate.passed());
    auto three = sperner_bound(equilateral_subdivision(3));
    EXPECT_EQ(three.vertices, 10u);
    EXPECT_TRUE(three.confirmed);
    EXPECT_TRUE(three.certificate.passed());
    EXPECT_FALSE(three.witness.has_value());
}

TEST(Sperner, WitnessAtFour) {
    auto S = equilateral_subdivision(4);
    auto r = sperner_bound(S, 16, false);
    EXPECT_TRUE(r.confirmed);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(r.witness->triple_covered);
    EXPECT_TRUE(r.certificate.passed());
    EXPECT_THROW(sperner_bound(equilateral_subdivision(5)), SizeLimitError);
}

TEST(Sperner, RejectsBrokenSubdivisions) {
    auto S = equilateral_subdivision(2);
    S.triangles.pop_back();
    EXPECT_THROW(validate_subdivision(S), ValidationError);
    auto T = equilateral_subdivision(2);
    T.triangles[0][1] = T.triangles[0][0];
    EXPECT_THROW(validate_subdivision(T), ValidationError);
    auto Q = square_subdivision(2);
    EXPECT_NO_THROW(validate_subdivision(Q));
}

TEST(CubeFamily, Segments) {
    auto f = rn_lower_bound_family(1, {4, 8, 12});
    ASSERT_EQ(f.rows.size(), 3u);
    double prev = 0.0;
    for (const auto& row : f.rows) {
        EXPECT_EQ(row.higher, 1.0);
        EXPECT_TRUE(row.bounded_by_mesh);
        EXPECT_GT(row.lebesgue, prev);
        prev = row.lebesgue;
    }
    EXPECT_TRUE(f.profile.nondecreasing());
}

TEST(CubeFamily, Squares) {
    auto f = rn_lower_bound_family(2, {2, 3, 4}, 25);
    ASSERT_EQ(f.rows.size(), 3u);
    double prev = 0.0;
    for (const auto& row : f.rows) {
        EXPECT_TRUE(row.bounded_by_mesh) << row.k;
        EXPECT_LE(row.higher, row.mesh);
        EXPECT_GE(row.lebesgue, prev);
        prev = row.lebesgue;
    }
    EXPECT_EQ(f.rows[0].lebesgue, 1.0);
    EXPECT_EQ(f.rows[1].lebesgue, 2.0);
    EXPECT_EQ(f.rows[2].lebesgue, 2.0);
    EXPECT_THROW(rn_lower_bound_family(2, {2, 4}), SizeLimitError);
    EXPECT_THROW(rn_lower_bound_family(3, {2}), ValidationError);
}

TEST(StarCover, GridScales) {
    for (double M : {1.0, 2.0, 4.0}) {
        auto g = rn_star_cover(2, M, 20);
        EXPECT_EQ(multiplicity(*g.cover), 3u) << M;
        EXPECT_GE(lebesgue(g.space, *g.cover), M);
    }
    auto one = rn_star_cover(1, 2, 40);
    EXPECT_LE(multiplicity(*one.cover), 2u);
    auto three = rn_star_cover(3, 1, 6);
    EXPECT_LE(multiplicity(*three.cover), 4u);
    EXPECT_GE(lebesgue(three.space, *three.cover), 1.0);
}
