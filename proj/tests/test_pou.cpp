#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"

using namespace coarse;
using fixtures::line10;
using fixtures::line10_cover;
using fixtures::set_of;

namespace {

PartitionOfUnity indicator(const IndexedFamily& U) {
    PartitionOfUnity phi;
    phi.labels = U.labels();
    phi.domain = U.union_all();
    for (std::size_t s = 0; s < U.size(); ++s) {
        std::vector<double> w(U.universe(), 0.0);
        for (Index x : U.set(s).members()) w[x] = 1.0;
        phi.weights.push_back(w);
    }
    phi.validate();
    return phi;
}

IndexedFamily gapped(std::size_t n, std::size_t width, std::size_t gap) {
    IndexedFamily U(n);
    for (std::size_t a = 0; a < n; a += width + gap)
        U.add("g" + std::to_string(a), Subset::range(n, a, std::min(n - 1, a + width - 1)));
    return U;
}

}  // namespace

TEST(Canonical, Line10Weights) {
    auto c = canonical_pou(line10(), line10_cover());
    const auto& w = c.pou.weights;
    EXPECT_EQ(w[0][4], 0.5);
    EXPECT_EQ(w[0][0], 1.0);
    EXPECT_EQ(w[1][9], 1.0);
    EXPECT_TRUE(c.excluded.empty());
    EXPECT_NO_THROW(c.pou.validate());
    auto cell = c.nerve_cell({0, 1});
    EXPECT_TRUE(cell.cell.full());
    EXPECT_EQ(cell.boundary, set_of(10, {0, 1, 2, 6, 7, 8, 9}));
}

TEST(Canonical, DisjointCoverIsIndicator) {
    auto X = line10();
    auto U = gapped(10, 3, 1);
    auto c = canonical_pou(X, U);
    auto ind = indicator(U);
    EXPECT_EQ(c.pou.weights, ind.weights);
    Subset seen(10);
    for (std::size_t s = 0; s < U.size(); ++s) {
        auto cell = c.nerve_cell({s});
        EXPECT_FALSE(seen.intersects(cell.cell));
        seen |= cell.cell;
    }
    EXPECT_EQ(seen, c.pou.domain);
}

TEST(Canonical, EmptyDomainAndScaling) {
    IndexedFamily E(10);
    E.add("e", Subset(10));
    EXPECT_THROW(canonical_pou(line10(), E), ValidationError);
    auto a = canonical_pou(line10(), line10_cover());
    auto b = canonical_pou(line10().scaled(10), line10_cover());
    EXPECT_EQ(a.pou.weights, b.pou.weights);
}

TEST(Carriers, Line10) {
    auto c = canonical_pou(line10(), line10_cover());
    auto r = carriers(line10(), c.pou);
    EXPECT_EQ(r.carriers["A"], Subset::range(10, 0, 5));
    EXPECT_EQ(r.carriers["B"], Subset::range(10, 3, 9));
    EXPECT_EQ(r.multiplicity, 2u);
}

TEST(Oscillation, Examples) {
    auto X = line10();
    std::vector<double> g(10);
    for (Index x = 0; x < 10; ++x) g[x] = double(x);
    EXPECT_EQ(oscillation(X, g, 2)[5], 1.0);
    for (double v : oscillation(X, std::vector<double>(10, 3.0), 2)) EXPECT_EQ(v, 0.0);
    EXPECT_THROW(oscillation(X, g, 0), ValidationError);
}

TEST(Oscillation, SquareRootProfileDecays) {
    auto X = line_space(401);
    std::vector<double> g(401);
    for (Index x = 0; x < 401; ++x) g[x] = std::sqrt(double(x));
    auto p = oscillation_profile(X, oscillation(X, g, 2));
    EXPECT_EQ(p.at(100), std::sqrt(100.0) - std::sqrt(99.0));
    EXPECT_LT(p.at(400), p.at(100));
    double prev = kInf;
    for (const auto& e : p.entries()) {
        EXPECT_LE(e.value, prev);
        prev = e.value;
    }
}

TEST(EquiRadius, Examples) {
    auto X = line10();
    auto ind = indicator(gapped(10, 3, 1));
    EXPECT_EQ(equi_oscillation_radius(X, ind, 1, 0.1), 0.0);
    auto c = canonical_pou(X, line10_cover());
    const double r = equi_oscillation_radius(X, c.pou, 2, 0.5);
    auto per = label_oscillation(X, c.pou, 2);
    for (std::size_t s = 0; s < per.size(); ++s)
        for (Index x = 0; x < 10; ++x)
            if (X.from_basepoint(x) >= r) { EXPECT_LT(per[s][x], 0.5); }
    EXPECT_EQ(r, 0.0);
    auto cl = cloud_space(5);
    EXPECT_EQ(equi_oscillation_radius(cl.space, *cl.pou, 2, 0.4), 4.0);
    EXPECT_THROW(equi_oscillation_radius(X, c.pou, 2, 0), ValidationError);
}

TEST(PouLebesgue, Examples) {
    auto X = line10();
    auto ind = indicator(gapped(10, 2, 2));
    auto r = pou_lebesgue_bound(X, ind, 1);
    EXPECT_TRUE(r.hypothesis);
    EXPECT_GE(r.lebesgue, 1.0);
    EXPECT_TRUE(r.certificate.passed());
    auto c = canonical_pou(X, line10_cover());
    auto q = pou_lebesgue_bound(X, c.pou, 1);
    EXPECT_TRUE(q.hypothesis);
    EXPECT_EQ(q.lebesgue, lebesgue(X, line10_cover()));
    EXPECT_TRUE(q.certificate.passed());
    IndexedFamily J(10);
    J.add("a", Subset::range(10, 0, 4));
    J.add("b", Subset::range(10, 5, 9));
    auto jump = pou_lebesgue_bound(X, indicator(J), 2);
    EXPECT_FALSE(jump.hypothesis);
    EXPECT_EQ(jump.certificate.find("lebesgue"), nullptr);
    bool at_jump = false;
    for (auto [a, s] : jump.violations) at_jump = at_jump || a == 4 || a == 5;
    EXPECT_TRUE(at_jump);
}

TEST(Fraction, Examples) {
    auto X = line10();
    std::vector<double> f(10, 2.0);
    auto sym = fraction_pou(X, f, f, 2);
    for (Index x = 0; x < 10; ++x) {
        EXPECT_EQ(sym.h[x], 0.5);
        EXPECT_EQ(sym.osc_h[x], 0.0);
    }
    auto c = canonical_pou(X, line10_cover());
    auto l = fraction_pou(X, c.f[0], c.f[1], 1);
    EXPECT_TRUE(l.certificate.passed());
    EXPECT_FALSE(l.probes.empty());

    auto Y = line_space(401);
    std::vector<double> a(401), b(401);
    for (Index x = 0; x < 401; ++x) {
        a[x] = double(x);
        b[x] = 400.0 - double(x);
    }
    auto r = fraction_pou(Y, a, b, 2, {{2.0, 399.0}});
    ASSERT_EQ(r.probes.size(), 1u);
    EXPECT_NEAR(r.probes[0].measured, 0.0025, 1e-15);
    EXPECT_EQ(r.probes[0].bound, 6.0 / 399.0);
    EXPECT_TRUE(r.certificate.passed());
    std::vector<double> z(401, 0.0);
    auto ex = fraction_pou(Y, z, z, 2);
    EXPECT_EQ(ex.excluded.size(), 401u);
    EXPECT_THROW(fraction_pou(Y, std::vector<double>(401, -1.0), b, 2), ValidationError);
}

TEST(Properties, RandomPous) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t n = 3 + rng() % 12;
        auto X = random_graph_space(n, 4, rng());
        auto U = random_cover(n, 1 + rng() % 4, rng());
        auto c = canonical_pou(X, U);
        EXPECT_NO_THROW(c.pou.validate());
        auto car = carriers(X, c.pou);
        for (std::size_t s = 0; s < U.size(); ++s) EXPECT_TRUE(car.carriers.set(s).is_subset_of(U.set(s)));
        const double M = 1 + double(rng() % 6);
        EXPECT_TRUE(equi_slow_check(X, c.pou, M).holds);
        auto r = pou_lebesgue_bound(X, c.pou, M);
        if (r.hypothesis) {
            EXPECT_GE(r.lebesgue, M);
        }
        EXPECT_TRUE(r.certificate.passed());
        auto fr = fraction_pou(X, c.f[0], c.total, M);
        EXPECT_TRUE(fr.certificate.passed());
    }
}
