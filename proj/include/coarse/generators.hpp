#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "coarse/cover_analysis.hpp"
#include "coarse/errors.hpp"
#include "coarse/family.hpp"
#include "coarse/lower_bounds.hpp"
#include "coarse/maps.hpp"
#include "coarse/metric.hpp"
#include "coarse/pou.hpp"
#include "coarse/star_cover.hpp"

namespace coarse {

/// Generator kind plus numeric parameters; list-valued parameters keep all
/// their entries.
struct GeneratorSpec {
    std::string kind;
    std::map<std::string, std::vector<double>> params;
    std::uint64_t seed = 0;

    GeneratorSpec& set(const std::string& k, double v) {
        params[k] = {v};
        return *this;
    }
    GeneratorSpec& set(const std::string& k, std::vector<double> v) {
        params[k] = std::move(v);
        return *this;
    }

    double get(const std::string& k, double fallback) const {
        auto it = params.find(k);
        if (it == params.end() || it->second.empty()) return fallback;
        if (it->second.size() != 1) throw ValidationError("parameter '" + k + "' expects one value");
        return it->second.front();
    }

    std::vector<double> list(const std::string& k, std::vector<double> fallback) const {
        auto it = params.find(k);
        return it == params.end() ? fallback : it->second;
    }

    std::size_t count(const std::string& k, double fallback, std::size_t lo, std::size_t hi) const {
        const double v = get(k, fallback);
        if (!(v >= static_cast<double>(lo) && v <= static_cast<double>(hi)) || v != std::floor(v))
            throw ValidationError("parameter '" + k + "' must be an integer in [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
        return static_cast<std::size_t>(v);
    }
};

struct Generated {
    FiniteMetricSpace space = FiniteMetricSpace::from_matrix({{0.0}});
    std::optional<IndexedFamily> cover;
    std::optional<PartitionOfUnity> pou;
    std::optional<ChainData> chain;
};

inline FiniteMetricSpace line_space(std::size_t n, double step = 1.0) {
    if (n == 0) throw ValidationError("line needs at least one point");
    std::vector<std::vector<double>> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back({step * static_cast<double>(i)});
    return FiniteMetricSpace::from_euclidean(std::move(c), 2.0, 0);
}

inline FiniteMetricSpace grid_space(std::size_t w, std::size_t h, double p = 2.0) {
    if (w == 0 || h == 0) throw ValidationError("grid needs positive sides");
    std::vector<std::vector<double>> c;
    for (std::size_t j = 0; j < h; ++j)
        for (std::size_t i = 0; i < w; ++i) c.push_back({static_cast<double>(i), static_cast<double>(j)});
    return FiniteMetricSpace::from_euclidean(std::move(c), p, 0);
}

/// {base^i : i = 0..n-1} on the real line.
inline FiniteMetricSpace geometric_space(std::size_t n, double base = 2.0) {
    if (n == 0) throw ValidationError("geometric sample needs at least one point");
    if (!(base > 1.0)) throw ValidationError("geometric base must exceed 1");
    std::vector<std::vector<double>> c;
    double v = 1.0;
    for (std::size_t i = 0; i < n; ++i, v *= base) c.push_back({v});
    return FiniteMetricSpace::from_euclidean(std::move(c), 2.0, 0);
}

/// Basepoint 0 plus clouds C_1..C_n; C_k has 2^k + 1 points at distance 2^k
/// from the basepoint, mutually at distance 1. Points of different clouds
/// are |2^k - 2^j| + 1 apart. Label "x0" carries the basepoint; every other
/// point x carries weight 2^-k on its cloud minus x.
inline Generated cloud_space(std::size_t clouds) {
    if (clouds == 0 || clouds > 12) throw ValidationError("cloud count must be in [1, 12]");
    std::vector<double> loc{0.0};
    std::vector<std::size_t> which{0};
    for (std::size_t k = 1; k <= clouds; ++k) {
        const std::size_t size = (std::size_t{1} << k) + 1;
        for (std::size_t i = 0; i < size; ++i) {
            loc.push_back(std::ldexp(1.0, static_cast<int>(k)));
            which.push_back(k);
        }
    }
    const std::size_t N = loc.size();
    std::vector<std::vector<double>> d(N, std::vector<double>(N, 0.0));
    for (Index a = 0; a < N; ++a)
        for (Index b = 0; b < N; ++b) {
            if (a == b) continue;
            if (which[a] == 0 || which[b] == 0) d[a][b] = std::abs(loc[a] - loc[b]);
            else if (which[a] == which[b]) d[a][b] = 1.0;
            else d[a][b] = std::abs(loc[a] - loc[b]) + 1.0;
        }
    Generated g;
    g.space = FiniteMetricSpace::from_matrix(std::move(d), 0);
    PartitionOfUnity phi;
    phi.domain = Subset::all(N);
    phi.labels.push_back("x0");
    phi.weights.push_back(std::vector<double>(N, 0.0));
    phi.weights[0][0] = 1.0;
    std::vector<std::size_t> pos(clouds + 1, 0);
    for (Index x = 1; x < N; ++x) {
        const std::size_t k = which[x];
        phi.labels.push_back("c" + std::to_string(k) + "." + std::to_string(pos[k]++));
        std::vector<double> w(N, 0.0);
        const double v = std::ldexp(1.0, -static_cast<int>(k));
        for (Index y = 1; y < N; ++y)
            if (which[y] == k && y != x) w[y] = v;
        phi.weights.push_back(std::move(w));
    }
    phi.validate();
    g.pou = std::move(phi);
    return g;
}

/// Root 0 with spokes to x_i; x_i joined to y_i by a path of L_i = factor * i
/// steps of length M. Partial function f(x_i) = i, f(y_i) = i + i L_i.
inline Generated chain_space(std::size_t count, double M = 1.0, std::size_t factor = 2) {
    if (count == 0) throw ValidationError("chain count must be positive");
    if (!(M > 0.0)) throw ValidationError("chain step M must be positive");
    if (factor == 0) throw ValidationError("chain length factor must be positive");
    std::vector<WeightedEdge> edges;
    ChainData data;
    data.M = M;
    Index next = 1;
    for (std::size_t i = 1; i <= count; ++i) {
        const std::size_t L = factor * i;
        const double di = static_cast<double>(i);
        ChainPair p;
        p.x = next;
        edges.push_back({0, p.x, 10.0 * di * M * static_cast<double>(factor) + di});
        p.path.push_back(next++);
        for (std::size_t s = 0; s < L; ++s) {
            edges.push_back({next - 1, next, M});
            p.path.push_back(next++);
        }
        p.y = p.path.back();
        data.fx.push_back(di);
        data.fy.push_back(di + di * static_cast<double>(L));
        data.pairs.push_back(std::move(p));
    }
    Generated g;
    g.space = FiniteMetricSpace::from_graph(next, edges, 0);
    validate_chains(g.space, data);
    g.chain = std::move(data);
    return g;
}

/// Star cover on the integer grid [0, side)^n, re-verified for multiplicity
/// <= n + 1 and Lebesgue >= M.
inline Generated rn_star_cover(std::size_t n, double M, std::size_t side) {
    if (n < 1 || n > 3) throw ValidationError("star cover dimension must be 1, 2 or 3");
    if (side == 0) throw ValidationError("box side must be positive");
    std::vector<std::vector<double>> c;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= side;
    for (std::size_t k = 0; k < total; ++k) {
        std::vector<double> p(n);
        std::size_t r = k;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = static_cast<double>(r % side);
            r /= side;
        }
        c.push_back(std::move(p));
    }
    Generated g;
    g.space = FiniteMetricSpace::from_euclidean(std::move(c), 2.0, 0);
    g.cover = star_cover_of_sample(g.space, M);
    const std::size_t m = multiplicity(*g.cover);
    const double L = lebesgue(g.space, *g.cover);
    if (m > n + 1)
        throw CertificateError("star cover multiplicity " + std::to_string(m) + " exceeds " + std::to_string(n + 1));
    if (!(L >= M)) throw CertificateError("star cover Lebesgue number " + format_number(L) + " below " + format_number(M));
    return g;
}

/// Integer coordinates drawn uniformly from [0, range)^dim.
inline FiniteMetricSpace random_space(std::size_t n, std::size_t dim, std::size_t range, std::uint64_t seed) {
    if (n == 0 || dim == 0 || range == 0) throw ValidationError("random space needs positive size, dimension, range");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> c(n, std::vector<double>(dim));
    for (auto& p : c)
        for (double& v : p) v = static_cast<double>(rng() % range);
    return FiniteMetricSpace::from_euclidean(std::move(c), 1.0, 0);
}

/// Shortest-path metric of a random connected graph with integer weights in
/// [1, max_weight].
inline FiniteMetricSpace random_graph_space(std::size_t n, std::size_t max_weight, std::uint64_t seed) {
    if (n == 0 || max_weight == 0) throw ValidationError("random graph needs points and weights");
    std::mt19937_64 rng(seed);
    std::vector<WeightedEdge> edges;
    for (Index v = 1; v < n; ++v)
        edges.push_back({static_cast<Index>(rng() % v), v, static_cast<double>(1 + rng() % max_weight)});
    const std::size_t extra = n;
    for (std::size_t e = 0; e < extra; ++e) {
        const Index a = rng() % n, b = rng() % n;
        if (a != b) edges.push_back({a, b, static_cast<double>(1 + rng() % max_weight)});
    }
    return FiniteMetricSpace::from_graph(n, edges, 0);
}

/// Random family of `labels` members whose union covers X.
inline IndexedFamily random_cover(std::size_t n, std::size_t labels, std::uint64_t seed, unsigned density = 40) {
    if (labels == 0) throw ValidationError("random cover needs at least one label");
    std::mt19937_64 rng(seed);
    std::vector<Subset> sets(labels, Subset(n));
    for (Index x = 0; x < n; ++x) {
        sets[rng() % labels].insert(x);
        for (auto& s : sets)
            if (rng() % 100 < density) s.insert(x);
    }
    IndexedFamily U(n);
    for (std::size_t s = 0; s < labels; ++s) U.add("U" + std::to_string(s), std::move(sets[s]));
    return U;
}

inline Generated generate(const GeneratorSpec& spec) {
    Generated g;
    const auto& k = spec.kind;
    if (k == "line") {
        g.space = line_space(spec.count("n", 10, 1, 100000), spec.get("step", 1.0));
    } else if (k == "grid") {
        g.space = grid_space(spec.count("w", 10, 1, 1000), spec.count("h", 10, 1, 1000), spec.get("p", 2.0));
    } else if (k == "geometric") {
        g.space = geometric_space(spec.count("n", 10, 1, 60), spec.get("base", 2.0));
    } else if (k == "cloud") {
        g = cloud_space(spec.count("n", 5, 1, 12));
    } else if (k == "chain") {
        g = chain_space(spec.count("n", 10, 1, 200), spec.get("M", 1.0), spec.count("factor", 2, 1, 100));
    } else if (k == "cube-family") {
        std::vector<std::size_t> ks;
        for (double v : spec.list("k", {2, 3})) {
            if (!(v >= 2.0) || v != std::floor(v)) throw ValidationError("cube sizes k must be integers >= 2");
            ks.push_back(static_cast<std::size_t>(v));
        }
        auto fam = rn_lower_bound_family(spec.count("n", 1, 1, 2), ks,
                                         spec.count("limit", static_cast<double>(kDefaultExactLimit), 1, 40));
        g.space = fam.space;
        g.cover = fam.family;
    } else if (k == "rn-star-cover") {
        g = rn_star_cover(spec.count("n", 2, 1, 3), spec.get("M", 2.0), spec.count("side", 20, 1, 200));
    } else if (k == "simplex-subdivision") {
        const auto S = equilateral_subdivision(spec.count("k", 2, 1, 50));
        const auto info = validate_subdivision(S);
        g.space = subdivision_space(S);
        g.cover = corner_star_cover(S, info);
    } else if (k == "random") {
        const auto n = spec.count("n", 10, 1, 5000);
        g.space = random_space(n, spec.count("dim", 2, 1, 8), spec.count("range", 100, 1, 1000000), spec.seed);
        const auto labels = spec.count("labels", 0, 0, 64);
        if (labels) g.cover = random_cover(n, labels, spec.seed ^ 0x9e3779b97f4a7c15ULL);
    } else {
        throw ValidationError("unknown generator kind '" + k + "'");
    }
    if (g.cover && g.cover->universe() != g.space.size()) throw ValidationError("generated cover size mismatch");
    if (g.pou) g.pou->validate();
    return g;
}

}  // namespace coarse
