#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "coarse/errors.hpp"
#include "coarse/family.hpp"
#include "coarse/metric.hpp"

namespace coarse {

/// Depths below this (in lattice units) count as boundary points.
inline constexpr double kStarBoundary = 1e-9;

/// Lebesgue number of the vertex-star cover of the unit cube triangulated by
/// starring at every face center, rounded down. Produced by
/// tools/star_constant.cpp.
inline constexpr double kStarLebesgue1 = 0.2499;
inline constexpr double kStarLebesgue2 = 0.1463;
inline constexpr double kStarLebesgue3 = 0.1026;

inline double star_lebesgue_constant(std::size_t n) {
    switch (n) {
        case 1: return kStarLebesgue1;
        case 2: return kStarLebesgue2;
        case 3: return kStarLebesgue3;
        default: throw ValidationError("star cover constant only tabulated for n = 1, 2, 3");
    }
}

/// A vertex of the starred lattice, in half-units: coordinate c stands for c/2.
/// Odd entries are the half-integer axes.
using StarVertex = std::vector<std::int64_t>;

/// Depth of p (in lattice units) inside the open star of v: the Euclidean
/// distance from p to the star's complement, 0 when p is outside.
inline double star_depth(const std::vector<double>& p, const StarVertex& v) {
    double a = 0.0, b = 0.0;  // sup-norms over half-integer and integer axes
    bool has_half = false, has_int = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double delta = std::abs(p[i] - static_cast<double>(v[i]) / 2.0);
        if (v[i] % 2 != 0) {
            has_half = true;
            a = std::max(a, delta);
        } else {
            has_int = true;
            b = std::max(b, delta);
        }
    }
    if (!has_half || !has_int) {
        const double r = 0.5 - std::max(a, b);
        return r > kStarBoundary ? r : 0.0;
    }
    const double r = 0.5 - a - b;
    return r > kStarBoundary ? r / std::sqrt(2.0) : 0.0;
}

/// Vertices whose open star contains p (lattice units).
inline std::vector<StarVertex> stars_containing(const std::vector<double>& p) {
    std::vector<std::vector<std::int64_t>> axis(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto lo = static_cast<std::int64_t>(std::floor(2.0 * p[i] - 1.0));
        for (std::int64_t c = lo; c <= lo + 3; ++c)
            if (std::abs(p[i] - static_cast<double>(c) / 2.0) < 0.5) axis[i].push_back(c);
    }
    std::vector<StarVertex> out;
    StarVertex v(p.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == p.size()) {
            if (star_depth(p, v) > 0.0) out.push_back(v);
            return;
        }
        for (auto c : axis[i]) {
            v[i] = c;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

inline std::string star_label(const StarVertex& v) {
    std::string s = "v(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s + ")";
}

/// Restriction of the rescaled star cover (lattice unit M/k) to an embedded
/// sample. Only stars meeting the sample become members, in vertex order.
inline IndexedFamily star_cover_of_sample(const FiniteMetricSpace& X, double M) {
    if (!X.embedded()) throw ValidationError("star cover needs embedded coordinates");
    if (!(M > 0.0)) throw ValidationError("scale M must be positive");
    const std::size_t n = X.embedding_dimension();
    const double unit = M / star_lebesgue_constant(n);
    std::map<StarVertex, Subset> stars;
    std::vector<double> p(n);
    for (Index x = 0; x < X.size(); ++x) {
        for (std::size_t i = 0; i < n; ++i) p[i] = X.coordinates()[x][i] / unit;
        for (auto& v : stars_containing(p)) stars.try_emplace(v, Subset(X.size())).first->second.insert(x);
    }
    IndexedFamily F(X.size());
    for (auto& [v, S] : stars) F.add(star_label(v), std::move(S));
    return F;
}

}  // namespace coarse
