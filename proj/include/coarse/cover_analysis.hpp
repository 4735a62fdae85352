#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "coarse/errors.hpp"
#include "coarse/family.hpp"
#include "coarse/metric.hpp"
#include "coarse/profile.hpp"

namespace coarse {

/// f_s(x) = dist(x, X \ U_s) for every label and point: depth[s][x].
inline std::vector<std::vector<double>> depth_table(const FiniteMetricSpace& X, const IndexedFamily& U) {
    std::vector<std::vector<double>> out(U.size(), std::vector<double>(X.size(), 0.0));
    for (std::size_t s = 0; s < U.size(); ++s)
        for (Index x = 0; x < X.size(); ++x) out[s][x] = depth_in(X, x, U.set(s));
    return out;
}

/// L_U(x) for every point.
inline std::vector<double> local_lebesgue(const FiniteMetricSpace& X, const IndexedFamily& U) {
    std::vector<double> L(X.size(), 0.0);
    for (std::size_t s = 0; s < U.size(); ++s)
        for (Index x = 0; x < X.size(); ++x) L[x] = std::max(L[x], depth_in(X, x, U.set(s)));
    return L;
}

/// L(U, A) = min over A of L_U; +inf for empty A.
inline double lebesgue(const std::vector<double>& local, const Subset& A) {
    double m = kInf;
    for (Index x = 0; x < local.size(); ++x)
        if (A.contains(x)) m = std::min(m, local[x]);
    return m;
}

inline double lebesgue(const FiniteMetricSpace& X, const IndexedFamily& U, const Subset& A) {
    return lebesgue(local_lebesgue(X, U), A);
}

inline double lebesgue(const FiniteMetricSpace& X, const IndexedFamily& U) {
    return lebesgue(X, U, Subset::all(X.size()));
}

inline std::vector<std::size_t> pointwise_multiplicity(const IndexedFamily& U) {
    std::vector<std::size_t> m(U.universe(), 0);
    for (const auto& set : U.sets())
        for (Index x = 0; x < m.size(); ++x)
            if (set.contains(x)) ++m[x];
    return m;
}

inline std::size_t multiplicity(const IndexedFamily& U, const Subset& A) {
    auto m = pointwise_multiplicity(U);
    std::size_t best = 0;
    for (Index x = 0; x < m.size(); ++x)
        if (A.contains(x)) best = std::max(best, m[x]);
    return best;
}

inline std::size_t multiplicity(const IndexedFamily& U) {
    return multiplicity(U, Subset::all(U.universe()));
}

/// Largest member diameter (0 for an empty family).
inline double mesh(const FiniteMetricSpace& X, const IndexedFamily& U) {
    double m = 0.0;
    for (const auto& s : U.sets()) m = std::max(m, set_diameter(X, s));
    return m;
}

/// t -> min of `pointwise` over the tail {d(x0,x) >= t}, t ranging over the
/// distinct basepoint distances. Nondecreasing by construction.
inline ScaleProfile tail_min_profile(const FiniteMetricSpace& X, const std::vector<double>& pointwise,
                                     std::string name = {}) {
    ScaleProfile p(std::move(name));
    for (double t : basepoint_radii(X)) p.push(t, lebesgue(pointwise, tail(X, t)));
    return p;
}

/// t -> max of `pointwise` over the tail; nonincreasing.
inline ScaleProfile tail_max_profile(const FiniteMetricSpace& X, const std::vector<double>& pointwise,
                                     std::string name = {}) {
    ScaleProfile p(std::move(name));
    for (double t : basepoint_radii(X)) {
        double m = 0.0;
        for (Index x = 0; x < X.size(); ++x)
            if (X.from_basepoint(x) >= t) m = std::max(m, pointwise[x]);
        p.push(t, m);
    }
    return p;
}

inline ScaleProfile coarseness_profile(const FiniteMetricSpace& X, const IndexedFamily& U) {
    return tail_min_profile(X, local_lebesgue(X, U), "coarseness");
}

struct PairProfile {
    std::size_t first;
    std::size_t second;
    ScaleProfile profile;
};

struct FiniteFamilyDiagnostics {
    std::vector<double> d_sum;       // d_U(x) = sum_s dist(x, X \ U_s)
    std::vector<double> local;       // L_U(x)
    ScaleProfile d_profile;          // min of d_U over tails
    std::vector<PairProfile> pairs;  // dist between truncated complements
    bool lower_sandwich = true;      // L_U <= d_U everywhere
    bool upper_sandwich = true;      // d_U <= |labels| L_U everywhere
    std::vector<Index> sandwich_failures;
};

inline FiniteFamilyDiagnostics finite_family_diagnostics(const FiniteMetricSpace& X, const IndexedFamily& U) {
    FiniteFamilyDiagnostics out;
    auto depth = depth_table(X, U);
    out.local = local_lebesgue(X, U);
    out.d_sum.assign(X.size(), 0.0);
    for (const auto& row : depth)
        for (Index x = 0; x < X.size(); ++x) out.d_sum[x] += row[x];
    const double m = static_cast<double>(U.size());
    for (Index x = 0; x < X.size(); ++x) {
        bool lo = out.local[x] <= out.d_sum[x];
        bool hi = out.d_sum[x] <= m * out.local[x];
        out.lower_sandwich = out.lower_sandwich && lo;
        out.upper_sandwich = out.upper_sandwich && hi;
        if (!lo || !hi) out.sandwich_failures.push_back(x);
    }
    out.d_profile = tail_min_profile(X, out.d_sum, "d_sum");
    const auto radii = basepoint_radii(X);
    for (std::size_t a = 0; a < U.size(); ++a)
        for (std::size_t b = a + 1; b < U.size(); ++b) {
            PairProfile pp{a, b, ScaleProfile(U.label(a) + "|" + U.label(b))};
            const Subset ca = U.set(a).complement(), cb = U.set(b).complement();
            for (double t : radii) {
                const Subset T = tail(X, t);
                pp.profile.push(t, set_distances(X, ca & T, cb & T).distance);
            }
            out.pairs.push_back(std::move(pp));
        }
    return out;
}

/// r -> dist(A \ B(x0,r), B \ B(x0,r)).
inline ScaleProfile asymptotic_pair_profile(const FiniteMetricSpace& X, const Subset& A, const Subset& B) {
    ScaleProfile p("pair");
    for (double t : basepoint_radii(X)) {
        const Subset T = tail(X, t);
        p.push(t, set_distances(X, A & T, B & T).distance);
    }
    return p;
}

struct SeparatorReport {
    bool disjoint = false;
    bool complement_matches = false;
    ScaleProfile profile_a;  // coarseness of {X \ A, W_A}
    ScaleProfile profile_b;  // coarseness of {X \ B, W_B}
    bool profile_a_nondecreasing = false;
    bool profile_b_nondecreasing = false;
    bool ok() const { return disjoint && complement_matches; }
};

inline SeparatorReport separator_check(const FiniteMetricSpace& X, const Subset& A, const Subset& B,
                                       const Subset& C, const Subset& WA, const Subset& WB) {
    SeparatorReport r;
    r.disjoint = !WA.intersects(WB);
    r.complement_matches = C == (WA | WB).complement();
    IndexedFamily fa(X.size()), fb(X.size());
    fa.add("X-A", A.complement());
    fa.add("W_A", WA);
    fb.add("X-B", B.complement());
    fb.add("W_B", WB);
    r.profile_a = coarseness_profile(X, fa);
    r.profile_b = coarseness_profile(X, fb);
    r.profile_a_nondecreasing = r.profile_a.nondecreasing();
    r.profile_b_nondecreasing = r.profile_b.nondecreasing();
    return r;
}

/// Turns a refinement V of U into a shrinking indexed by U's labels: each V
/// member goes to the first U label containing it.
inline IndexedFamily to_shrinking(const IndexedFamily& U, const IndexedFamily& V) {
    IndexedFamily out(U.universe());
    std::vector<Subset> acc(U.size(), Subset(U.universe()));
    for (std::size_t t = 0; t < V.size(); ++t) {
        std::size_t s = 0;
        while (s < U.size() && !V.set(t).is_subset_of(U.set(s))) ++s;
        if (s == U.size())
            throw ValidationError("member '" + V.label(t) + "' is not contained in any member of the cover");
        acc[s] |= V.set(t);
    }
    for (std::size_t s = 0; s < U.size(); ++s) out.add(U.label(s), std::move(acc[s]));
    return out;
}

inline bool refines(const IndexedFamily& V, const IndexedFamily& U) {
    for (const auto& v : V.sets()) {
        bool inside = false;
        for (const auto& u : U.sets())
            if (v.is_subset_of(u)) {
                inside = true;
                break;
            }
        if (!inside) return false;
    }
    return true;
}

/// V_s within U_s for every shared label position.
inline bool is_shrinking_of(const IndexedFamily& V, const IndexedFamily& U) {
    if (V.size() != U.size()) return false;
    for (std::size_t s = 0; s < U.size(); ++s)
        if (!V.set(s).is_subset_of(U.set(s))) return false;
    return true;
}

}  // namespace coarse
