#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarse/certificate.hpp"
#include "coarse/cover_analysis.hpp"
#include "coarse/dimension.hpp"
#include "coarse/errors.hpp"
#include "coarse/family.hpp"
#include "coarse/metric.hpp"

namespace coarse {

using Point2 = std::array<double, 2>;
using Triangle = std::array<Index, 3>;

/// Triangulated disk with three marked boundary corners.
struct Subdivision {
    std::vector<Point2> coords;
    std::vector<Triangle> triangles;
    std::array<Index, 3> corners{};
};

struct SubdivisionInfo {
    std::vector<Index> boundary;  // boundary cycle, starting at corners[0]
    double mesh = 0.0;            // longest edge
};

inline double edge_length(const Subdivision& S, Index a, Index b) {
    return std::hypot(S.coords[a][0] - S.coords[b][0], S.coords[a][1] - S.coords[b][1]);
}

/// Checks the triangulation and returns its boundary cycle and mesh.
inline SubdivisionInfo validate_subdivision(const Subdivision& S) {
    const std::size_t n = S.coords.size();
    if (n < 3 || S.triangles.empty()) throw ValidationError("subdivision needs points and triangles");
    std::map<std::pair<Index, Index>, int> edges;
    std::vector<char> used(n, 0);
    double area = 0.0;
    SubdivisionInfo info;
    for (const auto& t : S.triangles) {
        for (Index v : t)
            if (v >= n) throw ValidationError("triangle references missing vertex " + std::to_string(v));
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) throw ValidationError("triangle repeats a vertex");
        const auto &p = S.coords[t[0]], &q = S.coords[t[1]], &r = S.coords[t[2]];
        const double a = 0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]));
        if (a == 0.0) throw ValidationError("degenerate triangle");
        area += std::abs(a);
        for (int k = 0; k < 3; ++k) {
            Index u = t[k], v = t[(k + 1) % 3];
            used[u] = 1;
            info.mesh = std::max(info.mesh, edge_length(S, u, v));
            if (++edges[{std::min(u, v), std::max(u, v)}] > 2)
                throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                      ") lies in more than two triangles");
        }
    }
    for (Index v = 0; v < n; ++v)
        if (!used[v]) throw ValidationError("vertex " + std::to_string(v) + " is in no triangle");
    std::vector<std::vector<Index>> nbr(n);
    std::size_t boundary_edges = 0;
    for (const auto& [e, c] : edges)
        if (c == 1) {
            nbr[e.first].push_back(e.second);
            nbr[e.second].push_back(e.first);
            ++boundary_edges;
        }
    for (Index c : S.corners)
        if (c >= n || nbr[c].size() != 2) throw ValidationError("corner " + std::to_string(c) + " is not on the boundary");
    Index prev = S.corners[0], cur = std::min(nbr[prev][0], nbr[prev][1]);
    info.boundary.push_back(prev);
    while (cur != S.corners[0]) {
        if (nbr[cur].size() != 2) throw ValidationError("boundary is not a simple cycle at " + std::to_string(cur));
        info.boundary.push_back(cur);
        Index next = nbr[cur][0] == prev ? nbr[cur][1] : nbr[cur][0];
        prev = cur;
        cur = next;
        if (info.boundary.size() > boundary_edges) throw ValidationError("boundary does not close");
    }
    if (info.boundary.size() != boundary_edges) throw ValidationError("boundary has more than one component");
    double poly = 0.0;
    for (std::size_t i = 0; i < info.boundary.size(); ++i) {
        const auto& p = S.coords[info.boundary[i]];
        const auto& q = S.coords[info.boundary[(i + 1) % info.boundary.size()]];
        poly += p[0] * q[1] - q[0] * p[1];
    }
    poly = std::abs(poly) / 2.0;
    if (std::abs(poly - area) > 1e-9 * std::max(1.0, poly))
        throw ValidationError("triangles overlap or leave holes: area " + format_number(area) + " vs " +
                              format_number(poly));
    return info;
}

inline FiniteMetricSpace subdivision_space(const Subdivision& S) {
    std::vector<std::vector<double>> pts;
    for (const auto& p : S.coords) pts.push_back({p[0], p[1]});
    return FiniteMetricSpace::from_euclidean(std::move(pts), 2.0, S.corners[0]);
}

/// Corner stars: every vertex except the boundary arc facing the corner.
inline IndexedFamily corner_star_cover(const Subdivision& S, const SubdivisionInfo& info) {
    const std::size_t n = S.coords.size();
    const auto& B = info.boundary;
    auto pos = [&](Index v) {
        return static_cast<std::size_t>(std::find(B.begin(), B.end(), v) - B.begin());
    };
    IndexedFamily U(n);
    for (int i = 0; i < 3; ++i) {
        const Index a = S.corners[(i + 1) % 3], b = S.corners[(i + 2) % 3], c = S.corners[i];
        // walk from a to b in the direction that avoids c
        const std::size_t pa = pos(a), pb = pos(b), pc = pos(c), len = B.size();
        auto between = [&](std::size_t from, std::size_t to, std::size_t x) {
            return (x + len - from) % len <= (to + len - from) % len;
        };
        const bool forward = !between(pa, pb, pc);
        Subset arc(n);
        for (std::size_t k = pa;; k = forward ? (k + 1) % len : (k + len - 1) % len) {
            arc.insert(B[k]);
            if (k == pb) break;
        }
        U.add(std::to_string(i), Subset::all(n) - arc);
    }
    return U;
}

/// Equilateral unit triangle cut into k^2 congruent triangles.
inline Subdivision equilateral_subdivision(std::size_t k) {
    if (k == 0) throw ValidationError("subdivision level must be positive");
    Subdivision S;
    std::map<std::pair<std::size_t, std::size_t>, Index> id;
    const double h = std::sqrt(3.0) / 2.0;
    for (std::size_t j = 0; j <= k; ++j)
        for (std::size_t i = 0; i + j <= k; ++i) {
            id[{i, j}] = S.coords.size();
            S.coords.push_back({(static_cast<double>(i) + static_cast<double>(j) / 2.0) / static_cast<double>(k),
                                static_cast<double>(j) * h / static_cast<double>(k)});
        }
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i + j < k; ++i) {
            S.triangles.push_back({id[{i, j}], id[{i + 1, j}], id[{i, j + 1}]});
            if (i + j + 1 < k) S.triangles.push_back({id[{i + 1, j}], id[{i + 1, j + 1}], id[{i, j + 1}]});
        }
    S.corners = {id[{0, 0}], id[{k, 0}], id[{0, k}]};
    return S;
}

/// Integer grid on [0,k]^2, each unit square cut along its rising diagonal,
/// corners (0,0), (k,0), (0,k).
inline Subdivision square_subdivision(std::size_t k) {
    if (k == 0) throw ValidationError("subdivision level must be positive");
    Subdivision S;
    auto id = [&](std::size_t i, std::size_t j) { return static_cast<Index>(j * (k + 1) + i); };
    for (std::size_t j = 0; j <= k; ++j)
        for (std::size_t i = 0; i <= k; ++i) S.coords.push_back({static_cast<double>(i), static_cast<double>(j)});
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) {
            S.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            S.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    S.corners = {id(0, 0), id(k, 0), id(0, k)};
    return S;
}

struct SpernerWitness {
    Triangle triangle{};
    std::array<std::size_t, 3> labels{};
    bool triple_covered = false;  // all three vertices lie in every member
};

/// Labels each vertex by the first member it sits deeper than `mesh` in and
/// returns a fully labeled triangle. Requires L(V) > mesh.
inline std::optional<SpernerWitness> sperner_witness(const Subdivision& S, const IndexedFamily& U,
                                                     const IndexedFamily& V, double mesh) {
    const auto X = subdivision_space(S);
    const auto depth = depth_table(X, V);
    const std::size_t n = S.coords.size();
    std::vector<std::size_t> label(n);
    for (Index v = 0; v < n; ++v) {
        std::size_t s = 0;
        while (s < V.size() && !(depth[s][v] > mesh)) ++s;
        if (s == V.size())
            throw ValidationError("vertex " + std::to_string(v) + " is not deeper than the mesh in any member");
        if (!U.set(s).contains(v)) throw CertificateError("labeling breaks the boundary condition at " + std::to_string(v));
        label[v] = s;
    }
    for (const auto& t : S.triangles) {
        std::array<std::size_t, 3> l{label[t[0]], label[t[1]], label[t[2]]};
        auto sorted = l;
        std::sort(sorted.begin(), sorted.end());
        if (sorted[0] == 0 && sorted[1] == 1 && sorted[2] == 2) {
            SpernerWitness w{t, l, true};
            for (Index v : t)
                for (std::size_t s = 0; s < 3; ++s)
                    if (!V.set(s).contains(v)) w.triple_covered = false;
            return w;
        }
    }
    return std::nullopt;
}

struct SpernerReport {
    double mesh = 0.0;
    std::size_t vertices = 0;
    bool confirmed = false;          // no multiplicity <= 2 shrinking has L > mesh
    std::optional<double> exact_l1;  // L^1 of the corner-star cover on the vertices
    std::size_t nodes = 0;
    std::optional<SpernerWitness> witness;  // for the star cover itself when L(U) > mesh
    Certificate certificate{"sperner"};
};

inline SpernerReport sperner_bound(const Subdivision& S, std::size_t limit = kDefaultExactLimit,
                                   bool compute_exact = true) {
    const auto info = validate_subdivision(S);
    const auto X = subdivision_space(S);
    const auto U = corner_star_cover(S, info);
    SpernerReport r;
    r.mesh = info.mesh;
    r.vertices = X.size();
    if (X.size() > limit) throw SizeLimitError(X.size(), limit);
    const Subset all = Subset::all(X.size());
    auto decide = higher_lebesgue(X, U, all, 1, {limit, false, info.mesh});
    r.nodes = decide.nodes;
    r.confirmed = decide.at_most_threshold;
    r.certificate.add("l1-at-most-mesh", r.confirmed,
                      "exhaustive: no shrinking of multiplicity <= 2 has L > " + format_number(info.mesh),
                      decide.at_most_threshold ? std::vector<Index>{} : decide.shrinking.set(0).members());
    if (compute_exact) {
        auto exact = higher_lebesgue(X, U, all, 1, {limit, false, std::nullopt});
        r.exact_l1 = exact.value;
        r.nodes += exact.nodes;
        r.certificate.add("exact-consistent", (exact.value <= info.mesh) == r.confirmed,
                          "L^1 = " + format_number(exact.value));
    }
    if (lebesgue(X, U) > info.mesh) {
        r.witness = sperner_witness(S, U, U, info.mesh);
        r.certificate.add("witness", r.witness && r.witness->triple_covered,
                          "fully labeled triangle with all vertices in three members");
    } else {
        r.certificate.note("star cover has L <= mesh; no witness candidate");
    }
    return r;
}

// ---------------------------------------------------------------------------
// Scaled cube samples along a ray

struct CubePieceRow {
    std::size_t k = 0;
    Subset piece;
    double mesh = 0.0;
    double higher = 0.0;      // L^{n-1}(V, piece) exact, or the mesh when only bounded by it
    bool bounded_by_mesh = false;
    double lebesgue = 0.0;    // L(V, piece)
};

struct CubeFamily {
    std::size_t n = 0;
    FiniteMetricSpace space = FiniteMetricSpace::from_matrix({{0.0}});
    IndexedFamily family;
    std::vector<CubePieceRow> rows;
    ScaleProfile profile;
};

inline CubeFamily rn_lower_bound_family(std::size_t n, std::vector<std::size_t> ks,
                                        std::size_t limit = kDefaultExactLimit) {
    if (n != 1 && n != 2) throw ValidationError("cube family supports n = 1 or 2");
    if (ks.empty()) throw ValidationError("need at least one piece");
    for (auto k : ks)
        if (k < 2) throw ValidationError("piece size k must be at least 2");
    const std::size_t kmax = *std::max_element(ks.begin(), ks.end());
    const double gap = 2.0 * static_cast<double>(kmax);
    std::vector<std::vector<double>> coords;
    std::vector<std::pair<std::size_t, std::size_t>> ranges;  // point index range per piece
    std::vector<std::vector<std::size_t>> tags;              // per point: labels
    double offset = 0.0;
    for (std::size_t k : ks) {
        const std::size_t start = coords.size();
        const double kd = static_cast<double>(k);
        if (n == 1) {
            for (std::size_t i = 0; i <= k; ++i) {
                const double x = static_cast<double>(i);
                coords.push_back({offset + x});
                std::vector<std::size_t> t;
                if (x < 3.0 * kd / 4.0) t.push_back(0);
                if (x > kd / 4.0) t.push_back(1);
                tags.push_back(t);
            }
        } else {
            const auto S = square_subdivision(k);
            const auto info = validate_subdivision(S);
            const auto U = corner_star_cover(S, info);
            for (Index v = 0; v < S.coords.size(); ++v) {
                coords.push_back({offset + S.coords[v][0], S.coords[v][1]});
                tags.push_back(U.labels_at(v));
            }
        }
        ranges.emplace_back(start, coords.size());
        offset += kd + gap;
    }
    CubeFamily out;
    out.n = n;
    out.space = FiniteMetricSpace::from_euclidean(coords, 2.0, 0);
    const std::size_t N = coords.size();
    const std::size_t labels = n == 1 ? 2 : 3;
    std::vector<Subset> sets(labels, Subset(N));
    for (Index x = 0; x < N; ++x)
        for (std::size_t s : tags[x]) sets[s].insert(x);
    out.family = IndexedFamily(N);
    const char* names1[] = {"low", "high"};
    for (std::size_t s = 0; s < labels; ++s)
        out.family.add(n == 1 ? names1[s] : std::to_string(s), sets[s]);
    const auto local = local_lebesgue(out.space, out.family);
    for (std::size_t p = 0; p < ks.size(); ++p) {
        CubePieceRow row;
        row.k = ks[p];
        row.piece = Subset::range(N, ranges[p].first, ranges[p].second - 1);
        row.mesh = n == 1 ? 1.0 : std::sqrt(2.0);
        if (row.piece.count() > limit) throw SizeLimitError(row.piece.count(), limit);
        if (n == 1) {
            row.higher = higher_lebesgue(out.space, out.family, row.piece, 0, {limit, false, std::nullopt}).value;
            row.bounded_by_mesh = row.higher <= row.mesh;
        } else {
            auto d = higher_lebesgue(out.space, out.family, row.piece, 1, {limit, false, row.mesh});
            row.bounded_by_mesh = d.at_most_threshold;
            row.higher = d.at_most_threshold ? row.mesh : d.value;
        }
        row.lebesgue = lebesgue(local, row.piece);
        out.rows.push_back(std::move(row));
    }
    out.profile = tail_min_profile(out.space, local, "coarseness");
    return out;
}

}  // namespace coarse
