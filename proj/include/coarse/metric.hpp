#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "coarse/errors.hpp"
#include "coarse/subset.hpp"

namespace coarse {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class MetricKind { Matrix, Euclidean, Graph };

struct WeightedEdge {
    Index u;
    Index v;
    double weight;
};

/// A finite metric space on points 0..n-1 with a distinguished basepoint.
///
/// Distances are stored densely. Matrix input is checked for symmetry, zero
/// diagonal and the triangle inequality; embedded and graph inputs are metrics
/// by construction. Instances are immutable once built.
class FiniteMetricSpace {
public:
    static FiniteMetricSpace from_matrix(std::vector<std::vector<double>> rows, Index basepoint = 0) {
        const std::size_t n = rows.size();
        if (n == 0) throw ValidationError("metric space needs at least one point");
        std::vector<double> d(n * n);
        for (Index i = 0; i < n; ++i) {
            if (rows[i].size() != n)
                throw ValidationError("distance matrix row " + std::to_string(i) + " has " +
                                      std::to_string(rows[i].size()) + " entries, expected " +
                                      std::to_string(n));
            for (Index j = 0; j < n; ++j) d[i * n + j] = rows[i][j];
        }
        for (Index i = 0; i < n; ++i) {
            if (d[i * n + i] != 0.0)
                throw ValidationError("d(" + std::to_string(i) + "," + std::to_string(i) + ") must be 0");
            for (Index j = 0; j < n; ++j) {
                const double v = d[i * n + j];
                if (!(v >= 0.0) || std::isinf(v))
                    throw ValidationError("distance d(" + std::to_string(i) + "," + std::to_string(j) +
                                          ") must be finite and nonnegative");
                if (v != d[j * n + i])
                    throw ValidationError("asymmetric matrix at (" + std::to_string(i) + "," +
                                          std::to_string(j) + ")");
            }
        }
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                for (Index k = 0; k < n; ++k)
                    if (d[i * n + k] > d[i * n + j] + d[j * n + k])
                        throw TriangleViolation(i, j, k, d[i * n + k], d[i * n + j], d[j * n + k]);
        return FiniteMetricSpace(n, std::move(d), basepoint, MetricKind::Matrix, {}, 0.0);
    }

    /// Points in R^dim under the p-norm (p >= 1, or +inf for the max norm).
    static FiniteMetricSpace from_euclidean(std::vector<std::vector<double>> coords, double p = 2.0,
                                            Index basepoint = 0) {
        const std::size_t n = coords.size();
        if (n == 0) throw ValidationError("metric space needs at least one point");
        if (!(p >= 1.0)) throw ValidationError("p-norm requires p >= 1");
        const std::size_t dim = coords.front().size();
        for (const auto& c : coords)
            if (c.size() != dim) throw ValidationError("all coordinates must share one dimension");
        std::vector<double> d(n * n, 0.0);
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j) {
                const double v = norm_distance(coords[i], coords[j], p);
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        return FiniteMetricSpace(n, std::move(d), basepoint, MetricKind::Euclidean, std::move(coords), p);
    }

    /// Shortest-path metric of a connected graph with positive edge weights.
    static FiniteMetricSpace from_graph(std::size_t n, std::span<const WeightedEdge> edges, Index basepoint = 0) {
        if (n == 0) throw ValidationError("metric space needs at least one point");
        std::vector<std::vector<std::pair<Index, double>>> adj(n);
        for (const auto& e : edges) {
            if (e.u >= n || e.v >= n)
                throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                      ") references a missing vertex");
            if (!(e.weight > 0.0) || std::isinf(e.weight))
                throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                      ") needs a positive finite weight");
            adj[e.u].emplace_back(e.v, e.weight);
            adj[e.v].emplace_back(e.u, e.weight);
        }
        std::vector<double> d(n * n, kInf);
        using Item = std::pair<double, Index>;
        for (Index s = 0; s < n; ++s) {
            double* row = &d[s * n];
            row[s] = 0.0;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            pq.emplace(0.0, s);
            while (!pq.empty()) {
                auto [du, u] = pq.top();
                pq.pop();
                if (du > row[u]) continue;
                for (auto [v, w] : adj[u])
                    if (du + w < row[v]) {
                        row[v] = du + w;
                        pq.emplace(row[v], v);
                    }
            }
            for (Index v = 0; v < n; ++v)
                if (std::isinf(row[v]))
                    throw ValidationError("graph is disconnected: no path from " + std::to_string(s) +
                                          " to " + std::to_string(v));
        }
        return FiniteMetricSpace(n, std::move(d), basepoint, MetricKind::Graph, {}, 0.0);
    }

    std::size_t size() const noexcept { return n_; }
    Index basepoint() const noexcept { return basepoint_; }
    MetricKind kind() const noexcept { return kind_; }

    double d(Index i, Index j) const noexcept { return dist_[i * n_ + j]; }
    std::span<const double> row(Index i) const noexcept { return {&dist_[i * n_], n_}; }

    /// Coordinates for embedded spaces, empty otherwise.
    const std::vector<std::vector<double>>& coordinates() const noexcept { return coords_; }
    bool embedded() const noexcept { return kind_ == MetricKind::Euclidean; }
    std::size_t embedding_dimension() const noexcept { return coords_.empty() ? 0 : coords_.front().size(); }
    double norm_p() const noexcept { return p_; }

    double from_basepoint(Index i) const noexcept { return d(basepoint_, i); }

    FiniteMetricSpace with_basepoint(Index b) const {
        FiniteMetricSpace out = *this;
        out.set_basepoint(b);
        return out;
    }

    /// Same points with every distance multiplied by `factor` > 0.
    FiniteMetricSpace scaled(double factor) const {
        if (!(factor > 0.0)) throw ValidationError("scale factor must be positive");
        FiniteMetricSpace out = *this;
        for (double& v : out.dist_) v *= factor;
        for (auto& c : out.coords_)
            for (double& x : c) x *= factor;
        return out;
    }

    /// Induced metric on `members` (in the given order); basepoint maps to the
    /// first member unless the original basepoint is among them.
    FiniteMetricSpace subspace(std::span<const Index> members) const {
        if (members.empty()) throw ValidationError("subspace needs at least one point");
        const std::size_t m = members.size();
        std::vector<double> d(m * m);
        Index base = 0;
        for (Index a = 0; a < m; ++a) {
            if (members[a] == basepoint_) base = a;
            for (Index b = 0; b < m; ++b) d[a * m + b] = this->d(members[a], members[b]);
        }
        std::vector<std::vector<double>> coords;
        if (!coords_.empty())
            for (Index i : members) coords.push_back(coords_[i]);
        return FiniteMetricSpace(m, std::move(d), base, kind_ == MetricKind::Graph ? MetricKind::Matrix : kind_,
                                 std::move(coords), p_);
    }

    double diameter() const noexcept {
        return n_ ? *std::max_element(dist_.begin(), dist_.end()) : 0.0;
    }

    /// Smallest positive distance between two points (+inf for one point).
    double min_positive_distance() const noexcept {
        double best = kInf;
        for (double v : dist_)
            if (v > 0.0 && v < best) best = v;
        return best;
    }

private:
    FiniteMetricSpace(std::size_t n, std::vector<double> d, Index basepoint, MetricKind kind,
                      std::vector<std::vector<double>> coords, double p)
        : n_(n), dist_(std::move(d)), kind_(kind), coords_(std::move(coords)), p_(p) {
        set_basepoint(basepoint);
    }

    void set_basepoint(Index b) {
        if (b >= n_)
            throw ValidationError("basepoint " + std::to_string(b) + " out of range for " + std::to_string(n_) +
                                  " points");
        basepoint_ = b;
    }

    static double norm_distance(const std::vector<double>& a, const std::vector<double>& b, double p) {
        if (std::isinf(p)) {
            double m = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
            return m;
        }
        if (p == 1.0) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
            return s;
        }
        if (p == 2.0) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
            return std::sqrt(s);
        }
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) s += std::pow(std::abs(a[k] - b[k]), p);
        return std::pow(s, 1.0 / p);
    }

    std::size_t n_ = 0;
    std::vector<double> dist_;
    Index basepoint_ = 0;
    MetricKind kind_ = MetricKind::Matrix;
    std::vector<std::vector<double>> coords_;
    double p_ = 0.0;
};

// ---------------------------------------------------------------------------
// Set-level operations. dist(x, empty) = +inf throughout.

inline double dist_to_set(const FiniteMetricSpace& X, Index x, const Subset& A) {
    double best = kInf;
    auto r = X.row(x);
    for (Index y = 0; y < X.size(); ++y)
        if (A.contains(y) && r[y] < best) best = r[y];
    return best;
}

/// dist(x, X \ A): how deep x sits inside A (0 when x is outside A).
inline double depth_in(const FiniteMetricSpace& X, Index x, const Subset& A) {
    if (!A.contains(x)) return 0.0;
    double best = kInf;
    auto r = X.row(x);
    for (Index y = 0; y < X.size(); ++y)
        if (!A.contains(y) && r[y] < best) best = r[y];
    return best;
}

/// Signed-radius ball: M>0 gives the open M-neighbourhood of A, M<0 the
/// points further than |M| from the complement of A, M=0 gives A itself.
inline Subset ball(const FiniteMetricSpace& X, const Subset& A, double M) {
    if (M == 0.0) return A;
    Subset out(X.size());
    if (M > 0.0) {
        for (Index x = 0; x < X.size(); ++x)
            if (dist_to_set(X, x, A) < M) out.insert(x);
    } else {
        const Subset rest = A.complement();
        for (Index x = 0; x < X.size(); ++x)
            if (dist_to_set(X, x, rest) > -M) out.insert(x);
    }
    return out;
}

/// Open ball B(x, r) around a single point; radius 0 gives {x}.
inline Subset point_ball(const FiniteMetricSpace& X, Index x, double r) {
    Subset out(X.size());
    if (r <= 0.0) {
        out.insert(x);
        return out;
    }
    auto row = X.row(x);
    for (Index y = 0; y < X.size(); ++y)
        if (row[y] < r) out.insert(y);
    return out;
}

struct SetDistances {
    double distance;   // min over pairs
    double hausdorff;  // max of both directed radii
};

/// sup_{a in A} dist(a, B): the least R with A inside B(B, R) (up to the
/// infimum), 0 for empty A, +inf when A is nonempty and B empty.
inline double relation_radius(const FiniteMetricSpace& X, const Subset& A, const Subset& B) {
    double worst = 0.0;
    for (Index a = 0; a < X.size(); ++a)
        if (A.contains(a)) worst = std::max(worst, dist_to_set(X, a, B));
    return worst;
}

inline SetDistances set_distances(const FiniteMetricSpace& X, const Subset& A, const Subset& B) {
    if (A.empty() || B.empty()) return {kInf, kInf};
    double best = kInf;
    for (Index a = 0; a < X.size(); ++a)
        if (A.contains(a)) best = std::min(best, dist_to_set(X, a, B));
    return {best, std::max(relation_radius(X, A, B), relation_radius(X, B, A))};
}

inline double set_diameter(const FiniteMetricSpace& X, const Subset& A) {
    double m = 0.0;
    const auto pts = A.members();
    for (Index a : pts)
        for (Index b : pts) m = std::max(m, X.d(a, b));
    return m;
}

/// Components of A under the transitive closure of d(x,y) < M, each sorted,
/// ordered by smallest member.
inline std::vector<std::vector<Index>> m_scale_components(const FiniteMetricSpace& X, const Subset& A, double M) {
    if (!(M > 0.0)) throw ValidationError("scale M must be positive");
    const auto pts = A.members();
    std::vector<Index> parent(pts.size());
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (Index a = 0; a < pts.size(); ++a)
        for (Index b = a + 1; b < pts.size(); ++b)
            if (X.d(pts[a], pts[b]) < M) {
                Index ra = find(a), rb = find(b);
                if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
            }
    std::vector<std::vector<Index>> comps;
    std::vector<Index> slot(pts.size(), static_cast<Index>(-1));
    for (Index a = 0; a < pts.size(); ++a) {
        Index r = find(a);
        if (slot[r] == static_cast<Index>(-1)) {
            slot[r] = comps.size();
            comps.emplace_back();
        }
        comps[slot[r]].push_back(pts[a]);
    }
    return comps;
}

/// A shortest-hop chain from `from` to `to` inside A with every step < M,
/// or nullopt when the two points are in different M-scale components.
inline std::optional<std::vector<Index>> m_scale_chain(const FiniteMetricSpace& X, const Subset& A, double M,
                                                       Index from, Index to) {
    if (!A.contains(from) || !A.contains(to)) return std::nullopt;
    std::vector<Index> prev(X.size(), static_cast<Index>(-1));
    std::vector<char> seen(X.size(), 0);
    std::queue<Index> q;
    q.push(from);
    seen[from] = 1;
    while (!q.empty()) {
        Index u = q.front();
        q.pop();
        if (u == to) break;
        for (Index v = 0; v < X.size(); ++v)
            if (!seen[v] && A.contains(v) && X.d(u, v) < M) {
                seen[v] = 1;
                prev[v] = u;
                q.push(v);
            }
    }
    if (!seen[to]) return std::nullopt;
    std::vector<Index> chain{to};
    while (chain.back() != from) chain.push_back(prev[chain.back()]);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

/// Distinct values of d(x0, x), ascending.
inline std::vector<double> basepoint_radii(const FiniteMetricSpace& X) {
    std::vector<double> r(X.size());
    for (Index i = 0; i < X.size(); ++i) r[i] = X.from_basepoint(i);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

/// X \ B(x0, t) = {x : d(x0, x) >= t}.
inline Subset tail(const FiniteMetricSpace& X, double t) {
    Subset out(X.size());
    for (Index i = 0; i < X.size(); ++i)
        if (X.from_basepoint(i) >= t) out.insert(i);
    return out;
}

/// Distinct pairwise distances, ascending.
inline std::vector<double> distance_values(const FiniteMetricSpace& X) {
    std::vector<double> v;
    v.reserve(X.size() * (X.size() + 1) / 2);
    for (Index i = 0; i < X.size(); ++i)
        for (Index j = i; j < X.size(); ++j) v.push_back(X.d(i, j));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace coarse
