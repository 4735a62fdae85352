#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarse/certificate.hpp"
#include "coarse/cover_analysis.hpp"
#include "coarse/errors.hpp"
#include "coarse/family.hpp"
#include "coarse/metric.hpp"
#include "coarse/profile.hpp"
#include "coarse/star_cover.hpp"

namespace coarse {

inline constexpr std::size_t kDefaultExactLimit = 16;

// ---------------------------------------------------------------------------
// Higher Lebesgue numbers

struct HigherLebesgueOptions {
    std::size_t limit = kDefaultExactLimit;
    bool heuristic = false;         // greedy lower bound instead of search
    std::optional<double> exceed;   // only look for shrinkings with L > exceed
};

struct HigherLebesgueResult {
    double value = 0.0;
    bool exact = true;
    /// Decision mode: no shrinking beats the threshold (value is then the
    /// threshold, an upper bound).
    bool at_most_threshold = false;
    IndexedFamily shrinking;                       // on X, labels of U
    std::vector<std::vector<std::size_t>> labels;  // chosen labels per member of A
    std::size_t nodes = 0;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> subsets_of_size(const std::vector<std::size_t>& from, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        if (from.size() - i < k - cur.size()) return;
        for (std::size_t j = i; j < from.size(); ++j) {
            cur.push_back(from[j]);
            self(self, j + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline IndexedFamily family_from_labels(const IndexedFamily& U, const std::vector<Index>& pts,
                                        const std::vector<std::vector<std::size_t>>& T) {
    std::vector<Subset> acc(U.size(), Subset(U.universe()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t s : T[i]) acc[s].insert(pts[i]);
    IndexedFamily out(U.universe());
    for (std::size_t s = 0; s < U.size(); ++s) out.add(U.label(s), std::move(acc[s]));
    return out;
}

}  // namespace detail

/// L^n(U, A): the best Lebesgue number on A (in the metric of A) of a
/// shrinking of U|A with multiplicity at most n+1.
inline HigherLebesgueResult higher_lebesgue(const FiniteMetricSpace& X, const IndexedFamily& U, const Subset& A,
                                            std::size_t n, HigherLebesgueOptions opt = {}) {
    HigherLebesgueResult res;
    const auto pts = A.members();
    const std::size_t m = pts.size();
    const std::size_t labels = U.size();
    res.shrinking = IndexedFamily(U.universe());
    if (m == 0) {
        res.value = kInf;
        for (std::size_t s = 0; s < labels; ++s) res.shrinking.add(U.label(s), Subset(U.universe()));
        return res;
    }
    std::vector<std::vector<std::size_t>> S(m);
    for (std::size_t i = 0; i < m; ++i) {
        S[i] = U.labels_at(pts[i]);
        if (S[i].empty()) {
            res.value = 0.0;
            res.labels.assign(m, {});
            for (std::size_t j = 0; j < m; ++j)
                if (!S[j].empty()) res.labels[j] = {S[j].front()};
            res.shrinking = detail::family_from_labels(U, pts, res.labels);
            return res;
        }
    }
    const auto D = X.subspace(pts);
    const std::size_t width = n + 1;

    // greedy: the n+1 deepest labels at every point
    std::vector<std::vector<std::size_t>> greedy(m);
    {
        IndexedFamily UA(m);
        for (std::size_t s = 0; s < labels; ++s) {
            Subset R(m);
            for (std::size_t i = 0; i < m; ++i)
                if (U.set(s).contains(pts[i])) R.insert(i);
            UA.add(U.label(s), std::move(R));
        }
        const auto depth = depth_table(D, UA);
        for (std::size_t i = 0; i < m; ++i) {
            auto order = S[i];
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return depth[a][i] > depth[b][i]; });
            order.resize(std::min(width, order.size()));
            std::sort(order.begin(), order.end());
            greedy[i] = order;
        }
    }
    auto evaluate = [&](const std::vector<std::vector<std::size_t>>& T) {
        IndexedFamily V(m);
        std::vector<Subset> acc(labels, Subset(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t s : T[i]) acc[s].insert(i);
        for (std::size_t s = 0; s < labels; ++s) V.add(U.label(s), std::move(acc[s]));
        return lebesgue(D, V);
    };

    if (opt.heuristic || m > opt.limit) {
        if (!opt.heuristic) throw SizeLimitError(m, opt.limit);
        res.exact = false;
        res.labels = greedy;
        res.value = evaluate(greedy);
        res.shrinking = detail::family_from_labels(U, pts, greedy);
        return res;
    }

    // Enlarging T(a) never lowers the Lebesgue number, so only label sets of
    // the largest admissible size need to be tried.
    std::vector<std::vector<std::vector<std::size_t>>> choices(m);
    for (std::size_t i = 0; i < m; ++i) choices[i] = detail::subsets_of_size(S[i], std::min(width, S[i].size()));

    std::vector<std::vector<char>> member(labels, std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t s : S[i]) member[s][i] = 1;
    // dist[s][a] = dist(a, C_s), C_s = points known to be outside V_s
    std::vector<std::vector<double>> dist(labels, std::vector<double>(m, kInf));
    for (std::size_t s = 0; s < labels; ++s)
        for (std::size_t b = 0; b < m; ++b)
            if (!member[s][b])
                for (std::size_t a = 0; a < m; ++a) dist[s][a] = std::min(dist[s][a], D.d(a, b));

    std::vector<std::vector<std::size_t>> current(m);
    std::vector<char> assigned(m, 0);
    auto upper = [&]() {
        double ub = kInf;
        for (std::size_t a = 0; a < m && ub > 0.0; ++a) {
            double best = 0.0;
            const auto& allowed = assigned[a] ? current[a] : S[a];
            for (std::size_t s : allowed) best = std::max(best, dist[s][a]);
            ub = std::min(ub, best);
        }
        return ub;
    };

    double best = opt.exceed ? *opt.exceed : -1.0;
    bool found = false;
    std::vector<std::vector<std::size_t>> best_T;
    if (!opt.exceed) {
        best = evaluate(greedy);
        best_T = greedy;
        found = true;
    }
    auto search = [&](auto&& self, std::size_t i) -> void {
        ++res.nodes;
        const double ub = upper();
        if (!(ub > best)) return;
        if (i == m) {
            best = ub;
            best_T = current;
            found = true;
            return;
        }
        for (const auto& T : choices[i]) {
            auto saved = dist;
            current[i] = T;
            assigned[i] = 1;
            for (std::size_t s : S[i]) {
                if (std::find(T.begin(), T.end(), s) != T.end()) continue;
                for (std::size_t a = 0; a < m; ++a) dist[s][a] = std::min(dist[s][a], D.d(a, i));
            }
            self(self, i + 1);
            dist = std::move(saved);
            assigned[i] = 0;
            current[i].clear();
            if (std::isinf(best)) return;
        }
    };
    search(search, 0);

    if (!found) {
        res.at_most_threshold = true;
        res.value = *opt.exceed;
        res.labels = greedy;
        res.shrinking = detail::family_from_labels(U, pts, greedy);
        return res;
    }
    res.value = best;
    res.labels = best_T;
    res.shrinking = detail::family_from_labels(U, pts, best_T);
    return res;
}

inline double higher_lebesgue_exact(const FiniteMetricSpace& X, const IndexedFamily& U, const Subset& A,
                                    std::size_t n, std::size_t limit = kDefaultExactLimit) {
    return higher_lebesgue(X, U, A, n, {limit, false, std::nullopt}).value;
}

// ---------------------------------------------------------------------------
// Covers at a given scale

struct ScaleSearch {
    bool found = false;
    bool exact = false;  // a NOT-FOUND answer is exact
    std::string strategy;
    IndexedFamily cover;
    std::size_t multiplicity = 0;
    double lebesgue = 0.0;
    double mesh = 0.0;
    std::size_t nodes = 0;
    Certificate certificate{"scale-cover"};
};

struct ScaleSearchOptions {
    std::size_t limit = kDefaultExactLimit;
    std::size_t node_budget = 2'000'000;
};

namespace detail {

inline bool verify_scale_cover(const FiniteMetricSpace& X, ScaleSearch& r, double M, std::size_t n, double mesh_bound) {
    r.multiplicity = multiplicity(r.cover);
    r.lebesgue = lebesgue(X, r.cover);
    r.mesh = coarse::mesh(X, r.cover);
    r.certificate = Certificate("scale-cover");
    r.certificate.add("covers", r.cover.covers());
    r.certificate.add("multiplicity", r.multiplicity <= n + 1,
                      std::to_string(r.multiplicity) + " <= " + std::to_string(n + 1));
    r.certificate.add("lebesgue", r.lebesgue >= M, format_number(r.lebesgue) + " >= " + format_number(M));
    r.certificate.add("mesh", r.mesh <= mesh_bound, format_number(r.mesh) + " <= " + format_number(mesh_bound));
    return r.certificate.passed();
}

inline IndexedFamily groups_to_family(std::size_t universe, const std::vector<Subset>& groups) {
    IndexedFamily F(universe);
    for (std::size_t g = 0; g < groups.size(); ++g) F.add("G" + std::to_string(g), groups[g]);
    return F;
}

/// Exhaustive search over covers whose members are unions of balls B(x, M).
/// Returns nullopt when the node budget runs out.
inline std::optional<std::optional<std::vector<Subset>>> ball_union_search(const FiniteMetricSpace& X, double M,
                                                                           std::size_t n, double mesh_bound,
                                                                           std::size_t budget, std::size_t& nodes) {
    const std::size_t N = X.size();
    if (N > 64) return std::nullopt;
    using Mask = std::uint64_t;
    std::vector<Mask> balls(N, 0);
    for (Index x = 0; x < N; ++x)
        for (Index y = 0; y < N; ++y)
            if (X.d(x, y) < M) balls[x] |= Mask{1} << y;
    auto diam_of = [&](Mask m) {
        double d = 0.0;
        for (Index a = 0; a < N; ++a)
            if (m >> a & 1)
                for (Index b = a + 1; b < N; ++b)
                    if (m >> b & 1) d = std::max(d, X.d(a, b));
        return d;
    };
    for (Index x = 0; x < N; ++x)
        if (diam_of(balls[x]) > mesh_bound) return std::optional<std::vector<Subset>>{};
    std::vector<Mask> groups;
    std::vector<std::size_t> load(N, 0);
    bool exhausted = false;
    std::optional<std::vector<Mask>> answer;
    auto rec = [&](auto&& self, Index x) -> bool {
        if (++nodes > budget) {
            exhausted = true;
            return true;
        }
        if (x == N) {
            answer = groups;
            return true;
        }
        for (Mask g : groups)
            if ((balls[x] & g) == balls[x]) return self(self, x + 1);
        for (std::size_t g = 0; g <= groups.size(); ++g) {
            const bool fresh = g == groups.size();
            const Mask before = fresh ? 0 : groups[g];
            const Mask after = before | balls[x];
            const Mask added = after & ~before;
            bool ok = true;
            for (Index y = 0; y < N && ok; ++y)
                if ((added >> y & 1) && load[y] + 1 > n + 1) ok = false;
            if (!ok || diam_of(after) > mesh_bound) continue;
            for (Index y = 0; y < N; ++y)
                if (added >> y & 1) ++load[y];
            if (fresh)
                groups.push_back(after);
            else
                groups[g] = after;
            if (self(self, x + 1)) return true;
            for (Index y = 0; y < N; ++y)
                if (added >> y & 1) --load[y];
            if (fresh)
                groups.pop_back();
            else
                groups[g] = before;
        }
        return false;
    };
    rec(rec, 0);
    if (exhausted) return std::nullopt;
    if (!answer) return std::optional<std::vector<Subset>>{};
    std::vector<Subset> out;
    for (Mask g : *answer) {
        Subset s(N);
        for (Index y = 0; y < N; ++y)
            if (g >> y & 1) s.insert(y);
        out.push_back(std::move(s));
    }
    return std::optional<std::vector<Subset>>{std::move(out)};
}

inline std::optional<std::vector<Subset>> greedy_ball_cover(const FiniteMetricSpace& X, double M, std::size_t n,
                                                            double mesh_bound) {
    const std::size_t N = X.size();
    std::vector<Index> order(N);
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return X.from_basepoint(a) < X.from_basepoint(b); });
    std::vector<Subset> groups;
    std::vector<double> diam;
    std::vector<std::size_t> load(N, 0);
    for (Index x : order) {
        const Subset B = point_ball(X, x, M);
        bool inside = false;
        for (const auto& g : groups)
            if (B.is_subset_of(g)) {
                inside = true;
                break;
            }
        if (inside) continue;
        bool placed = false;
        for (std::size_t g = 0; g <= groups.size() && !placed; ++g) {
            const bool fresh = g == groups.size();
            const Subset before = fresh ? Subset(N) : groups[g];
            const Subset added = B - before;
            bool ok = true;
            for (Index y : added.members())
                if (load[y] + 1 > n + 1) ok = false;
            if (!ok) continue;
            double d = fresh ? 0.0 : diam[g];
            for (Index a : added.members())
                for (Index b : (before | B).members()) d = std::max(d, X.d(a, b));
            if (d > mesh_bound) continue;
            for (Index y : added.members()) ++load[y];
            if (fresh) {
                groups.push_back(B);
                diam.push_back(d);
            } else {
                groups[g] |= B;
                diam[g] = d;
            }
            placed = true;
        }
        if (!placed) return std::nullopt;
    }
    return groups;
}

}  // namespace detail

/// Looks for a cover with mesh <= mesh_bound, multiplicity <= n+1 and
/// Lebesgue number >= M. Every returned cover is re-verified.
inline ScaleSearch asdim_at_scale(const FiniteMetricSpace& X, double M, std::size_t n, double mesh_bound,
                                  ScaleSearchOptions opt = {}) {
    if (!(M > 0.0) || !(mesh_bound > 0.0)) throw ValidationError("M and mesh bound must be positive");
    ScaleSearch r;
    r.cover = IndexedFamily(X.size());
    auto accept = [&](std::vector<Subset> groups, std::string strategy) {
        r.cover = detail::groups_to_family(X.size(), groups);
        r.strategy = std::move(strategy);
        if (detail::verify_scale_cover(X, r, M, n, mesh_bound)) {
            r.found = true;
            r.exact = true;
            return true;
        }
        return false;
    };

    if (n == 0) {
        const auto comps = m_scale_components(X, Subset::all(X.size()), M);
        std::vector<Subset> groups;
        double worst = 0.0;
        for (const auto& c : comps) {
            groups.push_back(Subset::of(X.size(), std::span<const Index>(c)));
            worst = std::max(worst, set_diameter(X, groups.back()));
        }
        r.exact = true;
        r.strategy = "components";
        if (worst <= mesh_bound) accept(std::move(groups), "components");
        return r;
    }

    bool budget_hit = false;
    if (X.size() <= opt.limit && X.size() <= 64) {
        auto out = detail::ball_union_search(X, M, n, mesh_bound, opt.node_budget, r.nodes);
        if (out) {
            r.strategy = "exhaustive";
            if (*out) {
                accept(std::move(**out), "exhaustive");
            } else {
                r.exact = true;
            }
            return r;
        }
        budget_hit = true;
    }
    if (X.embedded() && X.embedding_dimension() >= 1 && X.embedding_dimension() <= 3 &&
        n >= X.embedding_dimension() && X.norm_p() == 2.0) {
        auto F = star_cover_of_sample(X, M);
        std::vector<Subset> groups(F.sets().begin(), F.sets().end());
        ScaleSearch probe = r;
        probe.cover = F;
        if (detail::verify_scale_cover(X, probe, M, n, mesh_bound)) {
            r = std::move(probe);
            r.found = true;
            r.exact = true;
            r.strategy = "star-cover";
            return r;
        }
    }
    if (auto groups = detail::greedy_ball_cover(X, M, n, mesh_bound)) {
        if (accept(std::move(*groups), "greedy")) return r;
    }
    r.found = false;
    r.exact = false;
    r.strategy = budget_hit ? "exhaustive-budget" : "greedy";
    r.cover = IndexedFamily(X.size());
    r.certificate = Certificate("scale-cover");
    r.certificate.note("no cover found; heuristic answer");
    return r;
}

struct DOfM {
    double M = 0.0;
    std::optional<std::size_t> d;  // nullopt: nothing found up to n_max
    bool exact = false;            // every smaller n was ruled out exactly
    ScaleSearch witness;
};

inline DOfM d_of_M(const FiniteMetricSpace& X, double M, double mesh_bound, std::size_t n_max = 3,
                   ScaleSearchOptions opt = {}) {
    DOfM out;
    out.M = M;
    bool all_exact = true;
    for (std::size_t n = 0; n <= n_max; ++n) {
        auto s = asdim_at_scale(X, M, n, mesh_bound, opt);
        if (s.found) {
            out.d = n;
            out.exact = all_exact;
            out.witness = std::move(s);
            return out;
        }
        all_exact = all_exact && s.exact;
    }
    out.exact = false;
    return out;
}

/// d(M) over a grid of scales with mesh bound ratio * M; the profile holds d(M)/M.
inline std::pair<std::vector<DOfM>, ScaleProfile> d_of_M_table(const FiniteMetricSpace& X, std::vector<double> Ms,
                                                               double mesh_ratio, std::size_t n_max = 3,
                                                               ScaleSearchOptions opt = {}) {
    std::sort(Ms.begin(), Ms.end());
    Ms.erase(std::unique(Ms.begin(), Ms.end()), Ms.end());
    std::vector<DOfM> rows;
    ScaleProfile p("d(M)/M");
    for (double M : Ms) {
        rows.push_back(d_of_M(X, M, mesh_ratio * M, n_max, opt));
        p.push(M, rows.back().d ? static_cast<double>(*rows.back().d) / M : kInf);
    }
    return {std::move(rows), std::move(p)};
}

// ---------------------------------------------------------------------------
// Witnesses for positive dimension at scale M

struct ZeroWitnessRow {
    double r;
    std::size_t components = 0;
    double max_diameter = 0.0;
    Index x = 0, y = 0;
    std::vector<Index> chain;
};

struct ZeroWitness {
    std::vector<ZeroWitnessRow> rows;
    ScaleProfile diameters;
    bool none = true;  // every diameter at most the smallest positive distance
};

inline ZeroWitness asdim_zero_witness(const FiniteMetricSpace& X, double M) {
    if (!(M > 0.0)) throw ValidationError("scale M must be positive");
    ZeroWitness out;
    out.diameters.set_name("component-diameter");
    const double floor_d = X.min_positive_distance();
    for (double r : basepoint_radii(X)) {
        const Subset T = tail(X, r);
        ZeroWitnessRow row;
        row.r = r;
        const auto comps = m_scale_components(X, T, M);
        row.components = comps.size();
        bool have = false;
        for (const auto& c : comps)
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = i; j < c.size(); ++j) {
                    const double d = X.d(c[i], c[j]);
                    if (!have || d > row.max_diameter) {
                        have = true;
                        row.max_diameter = d;
                        row.x = c[i];
                        row.y = c[j];
                    }
                }
        row.chain = m_scale_chain(X, T, M, row.x, row.y).value_or(std::vector<Index>{row.x});
        if (row.max_diameter > floor_d) out.none = false;
        out.diameters.push(r, row.max_diameter);
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace coarse
