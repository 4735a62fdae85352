#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "coarse/certificate.hpp"
#include "coarse/cover_analysis.hpp"
#include "coarse/errors.hpp"
#include "coarse/family.hpp"
#include "coarse/metric.hpp"
#include "coarse/profile.hpp"

namespace coarse {

inline constexpr double kSumTolerance = 1e-9;

/// Nonnegative weights per label and point; they sum to one on `domain`.
struct PartitionOfUnity {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> weights;  // weights[s][x]
    Subset domain;

    std::size_t size() const noexcept { return labels.size(); }
    std::size_t universe() const noexcept { return domain.universe(); }

    void validate() const {
        if (weights.size() != labels.size()) throw ValidationError("one weight row per label required");
        for (std::size_t s = 0; s < weights.size(); ++s) {
            if (weights[s].size() != universe())
                throw ValidationError("weight row '" + labels[s] + "' has wrong length");
            for (double w : weights[s])
                if (!(w >= 0.0) || std::isinf(w)) throw ValidationError("weights must be finite and nonnegative");
        }
        for (Index x : domain.members()) {
            double sum = 0.0;
            for (const auto& row : weights) sum += row[x];
            if (std::abs(sum - 1.0) > kSumTolerance)
                throw ValidationError("weights at point " + std::to_string(x) + " sum to " + format_number(sum));
        }
    }

    double sup_at(Index x) const {
        double m = 0.0;
        for (const auto& row : weights) m = std::max(m, row[x]);
        return m;
    }

    double l1(Index x, Index y) const {
        double s = 0.0;
        for (const auto& row : weights) s += std::abs(row[x] - row[y]);
        return s;
    }

    /// Largest number of positive weights at a domain point.
    std::size_t multiplicity() const {
        std::size_t m = 0;
        for (Index x : domain.members()) {
            std::size_t c = 0;
            for (const auto& row : weights)
                if (row[x] > 0.0) ++c;
            m = std::max(m, c);
        }
        return m;
    }
};

struct NerveCell {
    std::vector<std::size_t> labels;
    Subset cell;      // X_T
    Subset boundary;  // points of X_T where some f_s, s in T, vanishes
};

struct CanonicalPou {
    PartitionOfUnity pou;
    std::vector<std::vector<double>> f;  // f_s(x) = dist(x, X \ U_s)
    std::vector<double> total;           // f(x)
    std::vector<Index> excluded;         // f(x) = 0

    NerveCell nerve_cell(std::vector<std::size_t> T) const {
        std::sort(T.begin(), T.end());
        T.erase(std::unique(T.begin(), T.end()), T.end());
        const std::size_t n = total.size();
        NerveCell c{T, Subset(n), Subset(n)};
        std::vector<char> in(f.size(), 0);
        for (std::size_t s : T) {
            if (s >= f.size()) throw ValidationError("label index out of range");
            in[s] = 1;
        }
        for (Index x : pou.domain.members()) {
            bool all = true;
            for (std::size_t s = 0; s < f.size(); ++s)
                if (!in[s] && f[s][x] > 0.0) all = false;
            if (!all) continue;
            c.cell.insert(x);
            for (std::size_t s : T)
                if (f[s][x] == 0.0) {
                    c.boundary.insert(x);
                    break;
                }
        }
        return c;
    }
};

inline CanonicalPou canonical_pou(const FiniteMetricSpace& X, const IndexedFamily& U) {
    const std::size_t n = X.size();
    CanonicalPou out;
    out.f = depth_table(X, U);
    out.total.assign(n, 0.0);
    for (const auto& row : out.f)
        for (Index x = 0; x < n; ++x) out.total[x] += row[x];
    out.pou.labels = U.labels();
    out.pou.domain = Subset(n);
    out.pou.weights.assign(U.size(), std::vector<double>(n, 0.0));
    for (Index x = 0; x < n; ++x) {
        if (!(out.total[x] > 0.0)) {
            out.excluded.push_back(x);
            continue;
        }
        out.pou.domain.insert(x);
        if (std::isinf(out.total[x])) {
            // members equal to X share the weight evenly
            std::size_t k = 0;
            for (const auto& row : out.f)
                if (std::isinf(row[x])) ++k;
            for (std::size_t s = 0; s < U.size(); ++s)
                out.pou.weights[s][x] = std::isinf(out.f[s][x]) ? 1.0 / static_cast<double>(k) : 0.0;
            continue;
        }
        for (std::size_t s = 0; s < U.size(); ++s) out.pou.weights[s][x] = out.f[s][x] / out.total[x];
    }
    if (out.pou.domain.empty()) throw ValidationError("canonical partition of unity has empty domain");
    return out;
}

// ---------------------------------------------------------------------------
// Oscillation

/// Osc(g, M)(a) = max over x in B(a, M) of |g(x) - g(a)|, balls taken inside
/// `within` (points outside it get 0).
inline std::vector<double> oscillation(const FiniteMetricSpace& X, const std::vector<double>& g, double M,
                                       const Subset& within) {
    if (!(M > 0.0)) throw ValidationError("oscillation scale must be positive");
    if (g.size() != X.size()) throw ValidationError("function size mismatch");
    std::vector<double> osc(X.size(), 0.0);
    for (Index a : within.members()) {
        auto row = X.row(a);
        for (Index x = 0; x < X.size(); ++x)
            if (row[x] < M && within.contains(x)) osc[a] = std::max(osc[a], std::abs(g[x] - g[a]));
    }
    return osc;
}

inline std::vector<double> oscillation(const FiniteMetricSpace& X, const std::vector<double>& g, double M) {
    return oscillation(X, g, M, Subset::all(X.size()));
}

/// l1 oscillation of the weight vector on the domain.
inline std::vector<double> oscillation(const FiniteMetricSpace& X, const PartitionOfUnity& phi, double M) {
    if (!(M > 0.0)) throw ValidationError("oscillation scale must be positive");
    std::vector<double> osc(X.size(), 0.0);
    for (Index a : phi.domain.members()) {
        auto row = X.row(a);
        for (Index x = 0; x < X.size(); ++x)
            if (row[x] < M && phi.domain.contains(x)) osc[a] = std::max(osc[a], phi.l1(x, a));
    }
    return osc;
}

/// Per-label oscillation on the domain: result[s][a].
inline std::vector<std::vector<double>> label_oscillation(const FiniteMetricSpace& X, const PartitionOfUnity& phi,
                                                          double M) {
    std::vector<std::vector<double>> out;
    out.reserve(phi.size());
    for (const auto& w : phi.weights) out.push_back(oscillation(X, w, M, phi.domain));
    return out;
}

inline ScaleProfile oscillation_profile(const FiniteMetricSpace& X, const std::vector<double>& osc) {
    return tail_max_profile(X, osc, "oscillation");
}

/// Smallest sampled radius t whose tail {d(x0,x) >= t} has every per-label
/// oscillation below eps; +inf when even the farthest points fail.
inline double equi_oscillation_radius(const FiniteMetricSpace& X, const PartitionOfUnity& phi, double M,
                                      double eps) {
    if (!(eps > 0.0)) throw ValidationError("epsilon must be positive");
    const auto per = label_oscillation(X, phi, M);
    double worst = -1.0;
    for (const auto& row : per)
        for (Index x : phi.domain.members())
            if (!(row[x] < eps)) worst = std::max(worst, X.from_basepoint(x));
    if (worst < 0.0) return 0.0;
    for (double t : basepoint_radii(X))
        if (t > worst) return t;
    return kInf;
}

struct EquiSlowReport {
    std::size_t multiplicity = 0;
    bool holds = true;
    std::vector<Index> failures;
};

/// l1 oscillation <= 2m times the largest per-label oscillation, pointwise.
inline EquiSlowReport equi_slow_check(const FiniteMetricSpace& X, const PartitionOfUnity& phi, double M) {
    EquiSlowReport r;
    r.multiplicity = phi.multiplicity();
    const auto l1 = oscillation(X, phi, M);
    const auto per = label_oscillation(X, phi, M);
    const double k = 2.0 * static_cast<double>(r.multiplicity);
    for (Index a : phi.domain.members()) {
        double m = 0.0;
        for (const auto& row : per) m = std::max(m, row[a]);
        if (l1[a] > k * m * (1.0 + 1e-12) + 1e-15) {
            r.holds = false;
            r.failures.push_back(a);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Oscillation and Lebesgue numbers

struct CarrierReport {
    IndexedFamily carriers;
    ScaleProfile profile;
    std::size_t multiplicity = 0;
};

inline CarrierReport carriers(const FiniteMetricSpace& X, const PartitionOfUnity& phi) {
    CarrierReport r{IndexedFamily(X.size()), {}, 0};
    for (std::size_t s = 0; s < phi.size(); ++s) {
        Subset C(X.size());
        for (Index x = 0; x < X.size(); ++x)
            if (phi.weights[s][x] > 0.0) C.insert(x);
        r.carriers.add(phi.labels[s], std::move(C));
    }
    r.profile = coarseness_profile(X, r.carriers);
    r.multiplicity = multiplicity(r.carriers);
    return r;
}

struct PouLebesgueReport {
    bool hypothesis = true;
    std::vector<std::pair<Index, std::size_t>> violations;  // (point, label)
    double lebesgue = 0.0;  // L(Carr phi, domain) in the domain metric
    bool conclusion = false;
    Certificate certificate{"pou-lebesgue"};
};

inline PouLebesgueReport pou_lebesgue_bound(const FiniteMetricSpace& X, const PartitionOfUnity& phi, double M) {
    PouLebesgueReport r;
    const auto per = label_oscillation(X, phi, M);
    for (Index a : phi.domain.members()) {
        const double half = 0.5 * phi.sup_at(a);
        for (std::size_t s = 0; s < phi.size(); ++s)
            if (!(per[s][a] < half)) {
                r.hypothesis = false;
                r.violations.emplace_back(a, s);
            }
    }
    const auto pts = phi.domain.members();
    const auto D = X.subspace(pts);
    IndexedFamily carr(pts.size());
    for (std::size_t s = 0; s < phi.size(); ++s) {
        Subset C(pts.size());
        for (Index i = 0; i < pts.size(); ++i)
            if (phi.weights[s][pts[i]] > 0.0) C.insert(i);
        carr.add(phi.labels[s], std::move(C));
    }
    r.lebesgue = lebesgue(D, carr);
    r.conclusion = r.lebesgue >= M;
    if (r.hypothesis)
        r.certificate.add("lebesgue", r.conclusion,
                          "L(Carr) = " + format_number(r.lebesgue) + " >= M = " + format_number(M));
    else
        r.certificate.note(std::to_string(r.violations.size()) + " (point,label) pairs break the hypothesis");
    return r;
}

struct FractionProbe {
    double t;     // tail radius
    double eps;   // strict bound on Osc(f), Osc(g) over the tail
    double N;     // strict lower bound on f+g over the tail and its M-balls
    double bound;  // 3 eps / N
    double measured;  // max Osc(h) over the tail
    bool holds;
};

struct FractionResult {
    std::vector<double> h;
    Subset domain;
    std::vector<Index> excluded;
    std::vector<double> osc_h;
    std::vector<FractionProbe> probes;
    Certificate certificate{"fraction"};
};

/// h = f/(f+g) with its oscillation checked against 3 eps/N on tails. With no
/// explicit probes, each sampled tail contributes the tightest (eps, N).
inline FractionResult fraction_pou(const FiniteMetricSpace& X, const std::vector<double>& f,
                                   const std::vector<double>& g, double M,
                                   std::vector<std::pair<double, double>> eps_n = {}) {
    const std::size_t n = X.size();
    if (f.size() != n || g.size() != n) throw ValidationError("function size mismatch");
    FractionResult r;
    r.domain = Subset(n);
    r.h.assign(n, 0.0);
    for (Index x = 0; x < n; ++x) {
        if (!(f[x] >= 0.0) || !(g[x] >= 0.0)) throw ValidationError("f and g must be nonnegative");
        if (f[x] + g[x] > 0.0) {
            r.domain.insert(x);
            r.h[x] = f[x] / (f[x] + g[x]);
        } else {
            r.excluded.push_back(x);
        }
    }
    const auto of = oscillation(X, f, M, r.domain);
    const auto og = oscillation(X, g, M, r.domain);
    r.osc_h = oscillation(X, r.h, M, r.domain);

    // f+g is bounded below on the tail and on every M-ball around it
    auto reach = [&](double t) {
        Subset R(n);
        for (Index x : r.domain.members()) {
            if (X.from_basepoint(x) < t) continue;
            auto row = X.row(x);
            for (Index y : r.domain.members())
                if (row[y] < M) R.insert(y);
        }
        return R;
    };
    auto evaluate = [&](double t, double eps, double N) {
        FractionProbe p{t, eps, N, 3.0 * eps / N, 0.0, true};
        for (Index x : r.domain.members())
            if (X.from_basepoint(x) >= t) p.measured = std::max(p.measured, r.osc_h[x]);
        p.holds = p.measured < p.bound;
        return p;
    };
    auto tail_fits = [&](double t, double eps, double N) {
        bool any = false;
        for (Index x : r.domain.members()) {
            if (X.from_basepoint(x) < t) continue;
            any = true;
            if (!(of[x] < eps) || !(og[x] < eps)) return false;
        }
        if (!any) return false;
        for (Index y : reach(t).members())
            if (!(f[y] + g[y] > N)) return false;
        return true;
    };

    const auto radii = basepoint_radii(X);
    if (eps_n.empty()) {
        for (double t : radii) {
            double eps = 0.0, N = kInf;
            bool any = false;
            for (Index x : r.domain.members()) {
                if (X.from_basepoint(x) < t) continue;
                any = true;
                eps = std::max({eps, of[x], og[x]});
            }
            if (!any) continue;
            for (Index y : reach(t).members()) N = std::min(N, f[y] + g[y]);
            if (std::isinf(N)) continue;
            N = std::nextafter(N, 0.0);
            eps = eps > 0.0 ? std::nextafter(eps, kInf) : N * 1e-12;
            if (!(N > 0.0)) continue;
            r.probes.push_back(evaluate(t, eps, N));
        }
    } else {
        for (auto [eps, N] : eps_n) {
            if (!(eps > 0.0) || !(N > 0.0)) throw ValidationError("probe eps and N must be positive");
            for (double t : radii)
                if (tail_fits(t, eps, N)) {
                    r.probes.push_back(evaluate(t, eps, N));
                    break;
                }
        }
    }
    bool all = true;
    for (const auto& p : r.probes) all = all && p.holds;
    r.certificate.add("fraction-bound", all, std::to_string(r.probes.size()) + " probes with Osc(h) < 3 eps/N");
    if (!r.excluded.empty()) r.certificate.note(std::to_string(r.excluded.size()) + " points with f+g = 0 excluded");
    return r;
}

}  // namespace coarse
