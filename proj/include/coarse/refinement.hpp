#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
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

namespace coarse {

namespace detail {

inline std::string join_labels(const IndexedFamily& U, const std::vector<std::size_t>& T) {
    std::string out;
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (i) out += '+';
        out += U.label(T[i]);
    }
    return out;
}

inline std::string describe(const std::vector<Index>& pts) {
    std::string s = "{";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(pts[i]);
    }
    return s + "}";
}

inline double minimum_gap(const FiniteMetricSpace& X, const IndexedFamily& F, std::vector<Index>& witness) {
    double best = kInf;
    for (std::size_t a = 0; a < F.size(); ++a)
        for (std::size_t b = a + 1; b < F.size(); ++b) {
            for (Index x : F.set(a).members())
                for (Index y : F.set(b).members())
                    if (X.d(x, y) < best) {
                        best = X.d(x, y);
                        witness = {x, y};
                    }
        }
    return best;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Splitting into disjoint subfamilies

struct OstrandResult {
    /// levels[i] holds the sets W_T with |T| = i + 1, pairwise disjoint.
    std::vector<IndexedFamily> levels;
    /// Label sets (indices into the input family) per level member.
    std::vector<std::vector<std::vector<std::size_t>>> label_sets;
    std::vector<Index> uncovered;
    std::size_t order = 0;  // n + 1
    Certificate certificate{"ostrand-bound"};

    IndexedFamily combined() const {
        IndexedFamily out(levels.empty() ? 0 : levels.front().universe());
        for (const auto& lvl : levels)
            for (std::size_t s = 0; s < lvl.size(); ++s) out.add(lvl.label(s), lvl.set(s));
        return out;
    }
};

/// W_T = {x : min_{t in T} f_t(x) > max_{s not in T} f_s(x)} split by |T|.
inline OstrandResult ostrand_split(const FiniteMetricSpace& X, const IndexedFamily& U) {
    OstrandResult res;
    const std::size_t n = X.size();
    res.order = multiplicity(U);
    const auto depth = depth_table(X, U);
    std::map<std::vector<std::size_t>, Subset> cells;
    std::vector<std::size_t> order(U.size());
    for (Index x = 0; x < n; ++x) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return depth[a][x] > depth[b][x]; });
        bool placed = false;
        for (std::size_t j = 0; j < order.size(); ++j) {
            const double here = depth[order[j]][x];
            const double next = j + 1 < order.size() ? depth[order[j + 1]][x] : 0.0;
            if (!(here > 0.0)) break;
            if (here > next) {
                std::vector<std::size_t> T(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(j + 1));
                std::sort(T.begin(), T.end());
                auto it = cells.try_emplace(std::move(T), Subset(n)).first;
                it->second.insert(x);
                placed = true;
            }
        }
        if (!placed) res.uncovered.push_back(x);
    }

    std::size_t top = res.order;
    for (const auto& [T, W] : cells) top = std::max(top, T.size());
    res.levels.assign(top, IndexedFamily(n));
    res.label_sets.assign(top, {});
    for (const auto& [T, W] : cells) {
        res.levels[T.size() - 1].add(detail::join_labels(U, T), W);
        res.label_sets[T.size() - 1].push_back(T);
    }

    auto& cert = res.certificate;
    bool refines_ok = true;
    std::vector<Index> bad;
    for (std::size_t i = 0; i < res.levels.size(); ++i)
        for (std::size_t m = 0; m < res.levels[i].size(); ++m)
            for (std::size_t t : res.label_sets[i][m])
                if (!res.levels[i].set(m).is_subset_of(U.set(t))) {
                    refines_ok = false;
                    bad = (res.levels[i].set(m) - U.set(t)).members();
                }
    cert.add("refines", refines_ok, "W_T inside U_t for every t in T", bad);

    bool disjoint_ok = true;
    std::vector<Index> clash;
    for (const auto& lvl : res.levels)
        for (std::size_t a = 0; a < lvl.size() && disjoint_ok; ++a)
            for (std::size_t b = a + 1; b < lvl.size(); ++b)
                if (lvl.set(a).intersects(lvl.set(b))) {
                    disjoint_ok = false;
                    clash = (lvl.set(a) & lvl.set(b)).members();
                    break;
                }
    cert.add("disjoint-levels", disjoint_ok, "members of equal size label sets are disjoint", clash);

    const auto L_in = local_lebesgue(X, U);
    const auto L_out = local_lebesgue(X, res.combined());
    const double factor = 2.0 * static_cast<double>(res.order);
    bool bound_ok = true;
    std::vector<Index> weak;
    for (Index x = 0; x < n; ++x)
        if (L_out[x] * factor < L_in[x]) {
            bound_ok = false;
            weak.push_back(x);
        }
    cert.add("lebesgue-bound", bound_ok,
             "L_out(x) >= L_in(x)/" + format_number(factor) + " at every point", weak);
    cert.add("level-count", res.levels.size() == res.order, "n+1 = " + std::to_string(res.order) + " levels");
    if (!res.uncovered.empty())
        cert.note("points outside every member stay outside: " + detail::describe(res.uncovered));
    return res;
}

// ---------------------------------------------------------------------------
// Annuli around the basepoint

struct FamilyResult {
    IndexedFamily family;
    Certificate certificate;
};

inline FamilyResult squared_annuli(const FiniteMetricSpace& X) {
    FamilyResult res{IndexedFamily(X.size()), Certificate("annulus-mult2")};
    double ecc = 0.0;
    for (Index x = 0; x < X.size(); ++x) ecc = std::max(ecc, X.from_basepoint(x));
    const auto top = static_cast<std::size_t>(std::ceil(std::sqrt(ecc))) + 1;
    for (std::size_t k = 1; k <= top; ++k) {
        const double lo = static_cast<double>((k - 1) * (k - 1));
        const double hi = static_cast<double>((k + 1) * (k + 1));
        Subset V(X.size());
        for (Index x = 0; x < X.size(); ++x) {
            const double r = X.from_basepoint(x);
            if (lo <= r && r < hi) V.insert(x);
        }
        res.family.add("V" + std::to_string(k), std::move(V));
    }
    res.certificate.add("covers", res.family.covers());
    const auto m = multiplicity(res.family);
    res.certificate.add("multiplicity", m <= 2, "measured " + std::to_string(m) + " <= 2");
    const auto prof = coarseness_profile(X, res.family);
    res.certificate.add("profile-monotone", prof.nondecreasing());
    return res;
}

struct BoundedAnnulusOptions {
    bool residual = false;
};

/// V_{s,m} = {x in U_s : 2^m < d(x0,x) <= 2^{m+2}}, labels "s/m".
inline FamilyResult bounded_annulus_refine(const FiniteMetricSpace& X, const IndexedFamily& U,
                                           BoundedAnnulusOptions opt = {}) {
    FamilyResult res{IndexedFamily(X.size()), Certificate("bounded-refine")};
    double ecc = 0.0;
    for (Index x = 0; x < X.size(); ++x) ecc = std::max(ecc, X.from_basepoint(x));
    std::vector<double> bands;
    for (double p = 1.0; p < ecc; p *= 2.0) bands.push_back(p);
    for (std::size_t s = 0; s < U.size(); ++s) {
        for (std::size_t m = 0; m < bands.size(); ++m) {
            const double lo = bands[m], hi = 4.0 * bands[m];
            Subset V(X.size());
            for (Index x : U.set(s).members()) {
                const double r = X.from_basepoint(x);
                if (lo < r && r <= hi) V.insert(x);
            }
            res.family.add(U.label(s) + "/" + std::to_string(m), std::move(V));
        }
        if (opt.residual) {
            Subset V(X.size());
            for (Index x : U.set(s).members())
                if (X.from_basepoint(x) <= 1.0) V.insert(x);
            res.family.add(U.label(s) + "/res", std::move(V));
        }
    }
    auto& cert = res.certificate;
    const auto m_in = multiplicity(U), m_out = multiplicity(res.family);
    cert.add("multiplicity", m_out <= 2 * m_in,
             "measured " + std::to_string(m_out) + " <= 2*" + std::to_string(m_in));
    bool bounded = true, inside = true;
    std::size_t idx = 0;
    for (std::size_t s = 0; s < U.size(); ++s) {
        for (std::size_t m = 0; m < bands.size(); ++m, ++idx) {
            const auto& V = res.family.set(idx);
            if (set_diameter(X, V) > 8.0 * bands[m]) bounded = false;
            if (!V.is_subset_of(U.set(s))) inside = false;
        }
        if (opt.residual) {
            if (!res.family.set(idx).is_subset_of(U.set(s))) inside = false;
            ++idx;
        }
    }
    cert.add("bounded-members", bounded, "diam V_{s,m} <= 2^{m+3}");
    cert.add("refines", inside, "V_{s,m} inside U_s");
    Subset far(X.size());
    for (Index x = 0; x < X.size(); ++x)
        if (X.from_basepoint(x) > 1.0 || opt.residual) far.insert(x);
    const Subset missing = (far & U.union_all()) - res.family.union_all();
    cert.add("coverage", missing.empty(), "covers U beyond the unit ball", missing.members());
    return res;
}

// ---------------------------------------------------------------------------
// Shrinkings

struct ProbeEntry {
    double M;
    double radius;            // max d(x0,x) over points where the implication fails
    std::size_t violations;   // number of such points
    bool certified_ok;        // points with f(x) >= 11M/2 all satisfy it
    std::size_t stated_violations;  // points with f(x) > 3M that fail it
};

struct ParacompactResult {
    IndexedFamily family;
    std::vector<double> f;
    std::vector<std::optional<std::size_t>> choice;
    std::vector<ProbeEntry> table;
    Certificate certificate{"paracompact"};
};

inline std::vector<double> default_probe_grid(const FiniteMetricSpace& X) {
    std::vector<double> g;
    const double diam = X.diameter();
    for (double p = 1.0; p <= std::max(diam, 1.0); p *= 2.0) g.push_back(p);
    return g;
}

inline ParacompactResult paracompact_shrink(const FiniteMetricSpace& X, const IndexedFamily& U,
                                            std::vector<double> probes = {}) {
    const std::size_t n = X.size();
    ParacompactResult res;
    res.family = IndexedFamily(n);
    const auto L = local_lebesgue(X, U);
    const auto depth = depth_table(X, U);
    res.f.resize(n);
    res.choice.assign(n, std::nullopt);
    std::vector<Subset> acc(U.size(), Subset(n));
    std::vector<Index> orphan;
    for (Index x = 0; x < n; ++x) {
        res.f[x] = std::min(X.from_basepoint(x) / 2.0, L[x] / 2.0);
        for (std::size_t s = 0; s < U.size(); ++s) {
            const bool fits = res.f[x] > 0.0 ? depth[s][x] >= res.f[x] : U.set(s).contains(x);
            if (fits) {
                res.choice[x] = s;
                break;
            }
        }
        if (!res.choice[x]) {
            orphan.push_back(x);
            continue;
        }
        acc[*res.choice[x]] |= point_ball(X, x, res.f[x] / 2.0);
    }
    for (std::size_t s = 0; s < U.size(); ++s) res.family.add(U.label(s), std::move(acc[s]));

    auto& cert = res.certificate;
    cert.add("shrinking", is_shrinking_of(res.family, U), "V_s inside U_s");
    if (!orphan.empty()) cert.note("points in no member: " + detail::describe(orphan));

    if (probes.empty()) probes = default_probe_grid(X);
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    bool certified_all = true;
    for (double M : probes) {
        if (!(M > 0.0)) throw ValidationError("probe scales must be positive");
        ProbeEntry e{M, 0.0, 0, true, 0};
        for (Index x = 0; x < n; ++x) {
            const Subset B = point_ball(X, x, M);
            bool good = true;
            for (std::size_t s = 0; s < U.size() && good; ++s)
                if (B.intersects(res.family.set(s)) && !B.is_subset_of(U.set(s))) good = false;
            if (good) continue;
            ++e.violations;
            e.radius = std::max(e.radius, X.from_basepoint(x));
            if (res.f[x] >= 5.5 * M) e.certified_ok = false;
            if (res.f[x] > 3.0 * M) ++e.stated_violations;
        }
        certified_all = certified_all && e.certified_ok;
        res.table.push_back(e);
    }
    cert.add("threshold", certified_all, "f(x) >= 11M/2 implies B(x,M) meets V_s only inside U_s");
    return res;
}

struct InwardResult {
    IndexedFamily family;
    std::vector<double> f;  // per label
    std::vector<std::size_t> zero_labels;
    Certificate certificate{"inward"};
};

inline InwardResult inward_shrink(const FiniteMetricSpace& X, const IndexedFamily& U) {
    const std::size_t n = X.size();
    InwardResult res;
    res.family = IndexedFamily(n);
    const auto L = local_lebesgue(X, U);
    for (std::size_t s = 0; s < U.size(); ++s) {
        if (U.set(s).empty()) throw ValidationError("member '" + U.label(s) + "' is empty");
        double f = kInf;
        for (Index x : U.set(s).members()) f = std::min(f, L[x] / 4.0);
        res.f.push_back(f);
        if (U.set(s).full()) {
            res.family.add(U.label(s), U.set(s));
            continue;
        }
        if (f == 0.0) res.zero_labels.push_back(s);
        res.family.add(U.label(s), ball(X, U.set(s), -f));
    }
    auto& cert = res.certificate;
    for (std::size_t s : res.zero_labels)
        cert.note("member '" + U.label(s) + "' has Lebesgue 0 somewhere; shrunk by 0");
    const auto depth = depth_table(X, U);
    bool contain_ok = true;
    std::vector<Index> bad;
    std::size_t skipped = 0;
    for (Index x = 0; x < n; ++x) {
        if (!(L[x] > 0.0)) {
            ++skipped;
            continue;
        }
        std::size_t s = 0;
        while (s < U.size() && !(depth[s][x] >= L[x] / 2.0)) ++s;
        if (s == U.size()) {
            contain_ok = false;
            bad.push_back(x);
            continue;
        }
        if (std::isinf(L[x])) continue;
        if (!point_ball(X, x, L[x] / 4.0).is_subset_of(res.family.set(s))) {
            contain_ok = false;
            bad.push_back(x);
        }
    }
    cert.add("containment", contain_ok, "B(x, L(x)/4) inside the shrunk member of the first label with depth >= L(x)/2",
             bad);
    const auto L_out = local_lebesgue(X, res.family);
    bool quarter = true;
    for (Index x = 0; x < n; ++x)
        if (L_out[x] * 4.0 < L[x] && !std::isinf(L[x])) quarter = false;
    cert.add("lebesgue-quarter", quarter, "L_out(x) >= L_in(x)/4");
    cert.add("shrinking", is_shrinking_of(res.family, U));
    if (skipped) cert.note(std::to_string(skipped) + " points with L = 0 are vacuous");
    return res;
}

// ---------------------------------------------------------------------------
// N-disjoint subfamilies

struct GromovResult {
    std::vector<IndexedFamily> families;
    std::size_t order = 0;
    double input_lebesgue = 0.0;
    bool covers = false;
    Certificate certificate{"gromov"};
};

inline GromovResult gromov_disjointify(const FiniteMetricSpace& X, const IndexedFamily& U, double M, double N) {
    if (!(M > 0.0) || !(N > 0.0)) throw ValidationError("M and N must be positive");
    GromovResult res;
    res.order = multiplicity(U);
    res.input_lebesgue = lebesgue(X, U);
    const double need = 2.0 * static_cast<double>(res.order) * (M + N);
    if (!(res.input_lebesgue >= need))
        throw ValidationError("Lebesgue number " + format_number(res.input_lebesgue) + " < 2(n+1)(M+N) = " +
                              format_number(need));
    auto split = ostrand_split(X, U);
    IndexedFamily all(X.size());
    for (const auto& lvl : split.levels) {
        IndexedFamily eroded(X.size());
        for (std::size_t s = 0; s < lvl.size(); ++s) {
            Subset E = ball(X, lvl.set(s), -N);
            all.add(lvl.label(s), E);
            eroded.add(lvl.label(s), std::move(E));
        }
        res.families.push_back(std::move(eroded));
    }
    auto& cert = res.certificate;
    for (std::size_t i = 0; i < res.families.size(); ++i) {
        std::vector<Index> w;
        const double gap = detail::minimum_gap(X, res.families[i], w);
        cert.add("disjoint-" + std::to_string(i + 1), gap >= N,
                 "min gap " + format_number(gap) + " >= N = " + format_number(N), w);
    }
    const double L = lebesgue(X, all);
    cert.add("lebesgue", L >= M, "L = " + format_number(L) + " >= M = " + format_number(M));
    res.covers = all.covers();
    cert.note(res.covers ? "union covers X" : "union does not cover X");
    return res;
}

// ---------------------------------------------------------------------------
// Extensions and merges

/// e(V_s) = {x in B(V_s, r_s) : dist(x, V_s) < dist(x, A \ V_s)}.
inline FamilyResult subset_cover_extension(const FiniteMetricSpace& X, const Subset& A, const IndexedFamily& V,
                                           std::vector<double> radii = {}) {
    if (radii.empty()) radii.assign(V.size(), kInf);
    if (radii.size() != V.size()) throw ValidationError("need one radius per label");
    for (std::size_t s = 0; s < V.size(); ++s)
        if (!V.set(s).is_subset_of(A)) throw ValidationError("member '" + V.label(s) + "' leaves the subset");
    FamilyResult res{IndexedFamily(X.size()), Certificate("extension")};
    for (std::size_t s = 0; s < V.size(); ++s) {
        const Subset rest = A - V.set(s);
        const Subset reach = std::isinf(radii[s]) ? Subset::all(X.size()) : ball(X, V.set(s), radii[s]);
        Subset E(X.size());
        for (Index x : reach.members())
            if (dist_to_set(X, x, V.set(s)) < dist_to_set(X, x, rest)) E.insert(x);
        res.family.add(V.label(s), std::move(E));
    }
    bool nerve = true;
    std::vector<Index> bad;
    for (Index x = 0; x < X.size(); ++x) {
        Subset common = A;
        for (std::size_t s : res.family.labels_at(x)) common &= V.set(s);
        if (common.empty() && !res.family.labels_at(x).empty()) {
            nerve = false;
            bad.push_back(x);
        }
    }
    res.certificate.add("nerve", nerve, "labels meeting at a point also meet inside the subset", bad);
    const auto mv = multiplicity(V), me = multiplicity(res.family);
    res.certificate.add("multiplicity", me <= mv, std::to_string(me) + " <= " + std::to_string(mv));
    return res;
}

inline FamilyResult union_merge(const FiniteMetricSpace& X, const Subset& A, const IndexedFamily& UA,
                                const Subset& B, const IndexedFamily& UB, double M) {
    for (std::size_t s = 0; s < UA.size(); ++s)
        if (!UA.set(s).is_subset_of(A)) throw ValidationError("member '" + UA.label(s) + "' leaves A");
    for (std::size_t s = 0; s < UB.size(); ++s)
        if (!UB.set(s).is_subset_of(B)) throw ValidationError("member '" + UB.label(s) + "' leaves B");
    const Subset missing = (A | B).complement();
    if (!missing.empty())
        throw ValidationError("A and B do not cover the space; missing " + detail::describe(missing.members()));
    FamilyResult res{IndexedFamily(X.size()), Certificate("merge")};
    for (std::size_t s = 0; s < UA.size(); ++s) res.family.add("A:" + UA.label(s), ball(X, UA.set(s), M));
    for (std::size_t s = 0; s < UB.size(); ++s) res.family.add("B:" + UB.label(s), ball(X, UB.set(s), M));
    const auto mA = multiplicity(UA), mB = multiplicity(UB), m = multiplicity(res.family);
    res.certificate.add("multiplicity", m <= mA + mB,
                        "measured " + std::to_string(m) + " <= " + std::to_string(mA) + "+" + std::to_string(mB));
    if (UA.covers(A) && UB.covers(B)) {
        const double L = lebesgue(X, res.family);
        res.certificate.add("lebesgue", L >= M, "L = " + format_number(L) + " >= M = " + format_number(M));
    } else {
        res.certificate.note("input families do not cover their subsets; no Lebesgue claim");
    }
    return res;
}

// ---------------------------------------------------------------------------
// Pasting covers of growing scale over annuli

struct PasteResult {
    IndexedFamily family;
    Subset uncovered;
    std::vector<std::vector<std::size_t>> chain_maps;                  // j(k) for k = 1..K-1
    std::vector<std::vector<std::optional<std::size_t>>> assignment;  // alpha on each V^k
    Certificate certificate{"paste"};
};

/// scales = M_0..M_K, covers = V^1..V^K. Annulus A_k = {M_k <= d < M_{k+1}}
/// (the last one unbounded) takes its pieces from V^{k-1}, A_1 from V^1.
inline PasteResult annulus_paste(const FiniteMetricSpace& X, const IndexedFamily& U, const std::vector<double>& scales,
                                 const std::vector<IndexedFamily>& covers) {
    const std::size_t K = covers.size();
    if (K == 0) throw ValidationError("need at least one cover");
    if (scales.size() != K + 1)
        throw ValidationError("need scales M_0..M_K: got " + std::to_string(scales.size()) + " for K = " +
                              std::to_string(K));
    const std::size_t n = X.size();
    auto M = [&](std::size_t k) { return scales[k]; };
    const auto L_U = local_lebesgue(X, U);
    for (std::size_t k = 1; k <= K; ++k) {
        const auto& V = covers[k - 1];
        const std::string tag = "V^" + std::to_string(k);
        const double L = lebesgue(X, V);
        if (!(L >= M(k - 1)))
            throw ValidationError("condition (a) fails: L(" + tag + ") = " + format_number(L) + " < M_" +
                                  std::to_string(k - 1) + " = " + format_number(M(k - 1)));
        for (std::size_t t = 0; t < V.size(); ++t) {
            const double diam = set_diameter(X, V.set(t));
            if (!(diam < M(k)))
                throw ValidationError("condition (b) fails: member '" + V.label(t) + "' of " + tag + " has diameter " +
                                      format_number(diam) + " >= M_" + std::to_string(k) + " = " +
                                      format_number(M(k)));
        }
        for (Index x = 0; x < n; ++x)
            if (X.from_basepoint(x) >= M(k) && !(L_U[x] >= M(k - 1)))
                throw ValidationError("condition (c) fails at point " + std::to_string(x) + ": B(x, M_" +
                                      std::to_string(k - 1) + ") fits in no member");
        if (k < K && !(M(k + 1) > 2.0 * M(k)))
            throw ValidationError("condition (d) fails: M_" + std::to_string(k + 1) + " <= 2 M_" + std::to_string(k));
    }

    PasteResult res;
    res.family = IndexedFamily(n);
    for (std::size_t k = 1; k < K; ++k) {
        const auto& V = covers[k - 1];
        const auto& next = covers[k];
        std::vector<std::size_t> j(V.size());
        for (std::size_t t = 0; t < V.size(); ++t) {
            std::size_t u = 0;
            while (u < next.size() && !V.set(t).is_subset_of(next.set(u))) ++u;
            if (u == next.size())
                throw ValidationError("member '" + V.label(t) + "' of V^" + std::to_string(k) +
                                      " has no container in V^" + std::to_string(k + 1));
            j[t] = u;
        }
        res.chain_maps.push_back(std::move(j));
    }
    auto first_container = [&](const Subset& S) -> std::optional<std::size_t> {
        for (std::size_t s = 0; s < U.size(); ++s)
            if (S.is_subset_of(U.set(s))) return s;
        return std::nullopt;
    };
    res.assignment.resize(K);
    for (std::size_t k = 1; k <= K; ++k) {
        const auto& V = covers[k - 1];
        res.assignment[k - 1].assign(V.size(), std::nullopt);
        for (std::size_t t = 0; t < V.size(); ++t) {
            std::optional<std::size_t> alpha;
            std::size_t level = k, idx = t;
            while (true) {
                if (auto s = first_container(covers[level - 1].set(idx))) alpha = s;
                if (level == K) break;
                idx = res.chain_maps[level - 1][idx];
                ++level;
            }
            res.assignment[k - 1][t] = alpha;
        }
    }

    auto annulus = [&](std::size_t k) {
        Subset A(n);
        for (Index x = 0; x < n; ++x) {
            const double r = X.from_basepoint(x);
            if (r >= M(k) && (k == K || r < M(k + 1))) A.insert(x);
        }
        return A;
    };
    std::vector<Subset> acc(U.size(), Subset(n));
    Subset target(n);
    for (std::size_t k = 1; k <= K; ++k) {
        const Subset A = annulus(k);
        target |= A;
        const std::size_t src = k == 1 ? 1 : k - 1;
        const auto& V = covers[src - 1];
        for (std::size_t t = 0; t < V.size(); ++t)
            if (auto s = res.assignment[src - 1][t]) acc[*s] |= V.set(t) & A;
    }
    for (std::size_t s = 0; s < U.size(); ++s) res.family.add(U.label(s), std::move(acc[s]));
    res.uncovered = target - res.family.union_all();

    auto& cert = res.certificate;
    cert.add("refines", is_shrinking_of(res.family, U), "W_s inside U_s");
    std::size_t mv = 0;
    for (const auto& V : covers) mv = std::max(mv, multiplicity(V));
    const auto mw = multiplicity(res.family);
    cert.add("multiplicity", mw <= mv, "measured " + std::to_string(mw) + " <= " + std::to_string(mv));
    bool balls = true;
    std::vector<Index> bad;
    std::size_t tested = 0;
    for (std::size_t k = 4; k <= K; ++k)
        for (Index x : annulus(k).members()) {
            ++tested;
            const Subset B = point_ball(X, x, M(k - 3));
            bool inside = false;
            for (const auto& W : res.family.sets())
                if (B.is_subset_of(W)) {
                    inside = true;
                    break;
                }
            if (!inside) {
                balls = false;
                bad.push_back(x);
            }
        }
    cert.add("ball-guarantee", balls, "B(x, M_{k-3}) inside one W_s for x in A_k, k >= 4 (" +
                                          std::to_string(tested) + " points)",
             bad);
    cert.note(res.uncovered.empty() ? "W covers every point with d(x0,x) >= M_1"
                                    : "uncovered beyond M_1: " + detail::describe(res.uncovered.members()));
    return res;
}

}  // namespace coarse
