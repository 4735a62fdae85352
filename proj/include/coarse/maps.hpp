#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
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

namespace coarse {

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

inline SpacePtr share(FiniteMetricSpace X) { return std::make_shared<const FiniteMetricSpace>(std::move(X)); }

/// Total map between finite spaces given by an index table.
class PointMap {
public:
    PointMap(SpacePtr source, SpacePtr target, std::vector<Index> table)
        : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
        if (!source_ || !target_) throw ValidationError("map needs a source and a target");
        if (table_.size() != source_->size())
            throw ValidationError("map table has " + std::to_string(table_.size()) + " entries for " +
                                  std::to_string(source_->size()) + " source points");
        for (Index x = 0; x < table_.size(); ++x)
            if (table_[x] >= target_->size())
                throw ValidationError("map sends " + std::to_string(x) + " to missing point " +
                                      std::to_string(table_[x]));
    }

    static PointMap identity(SpacePtr X) {
        std::vector<Index> t(X->size());
        for (Index i = 0; i < t.size(); ++i) t[i] = i;
        return PointMap(X, X, std::move(t));
    }

    const FiniteMetricSpace& source() const noexcept { return *source_; }
    const FiniteMetricSpace& target() const noexcept { return *target_; }
    const SpacePtr& source_ptr() const noexcept { return source_; }
    const SpacePtr& target_ptr() const noexcept { return target_; }
    const std::vector<Index>& table() const noexcept { return table_; }
    Index operator()(Index x) const { return table_.at(x); }

    Subset image() const {
        Subset s(target_->size());
        for (Index y : table_) s.insert(y);
        return s;
    }

    Subset preimage(const Subset& B) const {
        if (B.universe() != target_->size()) throw ValidationError("preimage of a set from another space");
        Subset s(source_->size());
        for (Index x = 0; x < table_.size(); ++x)
            if (B.contains(table_[x])) s.insert(x);
        return s;
    }

    IndexedFamily preimage(const IndexedFamily& U) const {
        IndexedFamily out(source_->size());
        for (std::size_t s = 0; s < U.size(); ++s) out.add(U.label(s), preimage(U.set(s)));
        return out;
    }

    bool surjective() const { return image().full(); }

private:
    SpacePtr source_;
    SpacePtr target_;
    std::vector<Index> table_;
};

/// g after f.
inline PointMap compose(const PointMap& g, const PointMap& f) {
    if (f.target_ptr() != g.source_ptr() && !(f.target().size() == g.source().size()))
        throw ValidationError("maps are not composable");
    std::vector<Index> t(f.source().size());
    for (Index x = 0; x < t.size(); ++x) t[x] = g(f(x));
    return PointMap(f.source_ptr(), g.target_ptr(), std::move(t));
}

// ---------------------------------------------------------------------------
// Distance transfers

struct DistanceTransfers {
    ScaleProfile forward{"d_f"};  // at distinct source distances
    ScaleProfile reverse{"d^f"};  // at distinct target distances
};

inline DistanceTransfers distance_transfers(const PointMap& f) {
    const auto& X = f.source();
    const auto& Y = f.target();
    DistanceTransfers out;
    // pairs sorted by source distance, running max of target distance
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(X.size() * (X.size() + 1) / 2);
    for (Index x = 0; x < X.size(); ++x)
        for (Index y = x; y < X.size(); ++y) pairs.emplace_back(X.d(x, y), Y.d(f(x), f(y)));
    auto fill = [](std::vector<std::pair<double, double>>& ps, ScaleProfile& p) {
        std::sort(ps.begin(), ps.end());
        double run = 0.0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            run = std::max(run, ps[i].second);
            if (i + 1 == ps.size() || ps[i + 1].first != ps[i].first) p.push(ps[i].first, run);
        }
    };
    auto fw = pairs;
    fill(fw, out.forward);
    for (auto& [a, b] : pairs) std::swap(a, b);
    fill(pairs, out.reverse);
    return out;
}

struct LebesgueTransfer {
    ScaleProfile lower{"L^f lower"};  // min{d_X(x,y) : d_Y(f x, f y) >= N}
    ScaleProfile upper{"L^f upper"};  // L of preimages of {B(z,N)} in X
    Certificate certificate{"lebesgue-transfer"};
};

/// Two computable bounds for the Lebesgue number transfer at each N of the
/// grid (default: the positive target distances).
inline LebesgueTransfer lebesgue_transfer_bounds(const PointMap& f, std::vector<double> grid = {}) {
    const auto& X = f.source();
    const auto& Y = f.target();
    if (grid.empty())
        for (double v : distance_values(Y))
            if (v > 0.0) grid.push_back(v);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    LebesgueTransfer out;
    bool ordered = true;
    for (double N : grid) {
        if (!(N > 0.0)) throw ValidationError("transfer grid values must be positive");
        double lo = kInf;
        for (Index x = 0; x < X.size(); ++x)
            for (Index y = x + 1; y < X.size(); ++y)
                if (Y.d(f(x), f(y)) >= N) lo = std::min(lo, X.d(x, y));
        IndexedFamily balls(Y.size());
        for (Index z = 0; z < Y.size(); ++z) balls.add(std::to_string(z), point_ball(Y, z, N));
        const double up = lebesgue(X, f.preimage(balls));
        // direct recheck of the lower value: balls of radius lo map into N-balls
        if (std::isfinite(lo))
            for (Index x = 0; x < X.size(); ++x)
                for (Index y = 0; y < X.size(); ++y)
                    if (X.d(x, y) < lo && !(Y.d(f(x), f(y)) < N)) ordered = false;
        if (lo > up) ordered = false;
        out.lower.push(N, lo);
        out.upper.push(N, up);
    }
    out.certificate.add("lower-le-upper", ordered, "lower bound never exceeds the ball-cover witness");
    return out;
}

// ---------------------------------------------------------------------------
// Classification

struct LinearFit {
    double m = 0.0;
    double b = 0.0;
};

struct MapClassification {
    std::vector<double> radii;
    std::vector<double> coarse_table;  // d_f at radii
    LinearFit fit;                     // d_f(t) <= m t + b on the realized grid
    ScaleProfile proper{"coarsely-proper"};
    ScaleProfile oscillation{"slow-oscillation"};
};

/// Intercept fixed at d_f(0), then the least slope clearing every sample.
inline LinearFit asymptotic_lipschitz_fit(const ScaleProfile& df) {
    LinearFit fit;
    if (df.empty()) return fit;
    fit.b = df.at(0.0);
    if (std::isnan(fit.b)) fit.b = 0.0;
    for (const auto& e : df.entries())
        if (e.t > 0.0) fit.m = std::max(fit.m, (e.value - fit.b) / e.t);
    return fit;
}

/// d_Y(f(x), f(a)) maximized over x in B(a, M).
inline std::vector<double> map_oscillation(const PointMap& f, double M) {
    if (!(M > 0.0)) throw ValidationError("oscillation scale must be positive");
    const auto& X = f.source();
    std::vector<double> osc(X.size(), 0.0);
    for (Index a = 0; a < X.size(); ++a)
        for (Index x = 0; x < X.size(); ++x)
            if (X.d(a, x) < M) osc[a] = std::max(osc[a], f.target().d(f(x), f(a)));
    return osc;
}

/// d_Y(f(x), y0) for the target basepoint y0.
inline std::vector<double> target_radius(const PointMap& f) {
    std::vector<double> r(f.source().size());
    for (Index x = 0; x < r.size(); ++x) r[x] = f.target().from_basepoint(f(x));
    return r;
}

inline MapClassification classify_map(const PointMap& f, double M = 1.0, std::vector<double> radii = {}) {
    const auto& X = f.source();
    MapClassification c;
    const auto tr = distance_transfers(f);
    if (radii.empty())
        for (double r = 1.0; r <= X.diameter(); r *= 2.0) radii.push_back(r);
    c.radii = radii;
    for (double r : radii) {
        const double v = tr.forward.at(r);
        c.coarse_table.push_back(std::isnan(v) ? 0.0 : v);
    }
    c.fit = asymptotic_lipschitz_fit(tr.forward);
    c.proper = tail_min_profile(X, target_radius(f), "coarsely-proper");
    c.oscillation = tail_max_profile(X, map_oscillation(f, M), "slow-oscillation");
    return c;
}

// ---------------------------------------------------------------------------
// Closeness and domination

struct Closeness {
    double distance = 0.0;   // max_x d_Y(f x, g x)
    double graph_fg = 0.0;   // radius of Gamma(f) relative to Gamma(g)
    double graph_gf = 0.0;
    Certificate certificate{"closeness"};
};

inline double graph_radius(const PointMap& f, const PointMap& g) {
    const auto& X = f.source();
    const auto& Y = f.target();
    double r = 0.0;
    for (Index x = 0; x < X.size(); ++x) {
        double best = kInf;
        for (Index y = 0; y < X.size(); ++y) best = std::min(best, X.d(x, y) + Y.d(f(x), g(y)));
        r = std::max(r, best);
    }
    return r;
}

inline void require_same_signature(const PointMap& f, const PointMap& g) {
    if (f.source().size() != g.source().size() || f.target().size() != g.target().size())
        throw ValidationError("maps differ in source or target");
}

inline Closeness map_closeness(const PointMap& f, const PointMap& g) {
    require_same_signature(f, g);
    Closeness c;
    for (Index x = 0; x < f.source().size(); ++x) c.distance = std::max(c.distance, f.target().d(f(x), g(x)));
    c.graph_fg = graph_radius(f, g);
    c.graph_gf = graph_radius(g, f);
    c.certificate.add("graph-within-distance", c.graph_fg <= c.distance && c.graph_gf <= c.distance,
                      "graph radii " + format_number(c.graph_fg) + ", " + format_number(c.graph_gf) +
                          " vs distance " + format_number(c.distance));
    return c;
}

/// f^{-1}(B(U,-M)) inside f^{-1}(U) and g^{-1}(U) for every member, given
/// dist(f,g) <= M. Returns the first offending (label, point) if any.
inline std::optional<std::pair<std::size_t, Index>> preimage_containment_check(const PointMap& f, const PointMap& g,
                                                                              const IndexedFamily& U, double M) {
    require_same_signature(f, g);
    for (std::size_t s = 0; s < U.size(); ++s) {
        const Subset inner = f.preimage(ball(f.target(), U.set(s), -M));
        const Subset both = f.preimage(U.set(s)) & g.preimage(U.set(s));
        for (Index x : inner.members())
            if (!both.contains(x)) return std::make_pair(s, x);
    }
    return std::nullopt;
}

struct DominationReport {
    double gf_to_id = 0.0;          // dist(g o f, id_X)
    double fg_to_id = 0.0;          // dist(f o g, id_Y) over all of Y
    double fg_to_id_on_image = 0.0; // same, restricted to f(X)
    ScaleProfile f_proper;
    ScaleProfile g_proper_on_image;
    bool surjective = false;
    double reverse_transfer_max = 0.0;  // largest d^f value on the realized grid
    Certificate certificate{"domination"};
};

inline DominationReport domination_check(const PointMap& f, const PointMap& g) {
    if (f.target().size() != g.source().size() || g.target().size() != f.source().size())
        throw ValidationError("domination needs f: X -> Y and g: Y -> X");
    const auto& X = f.source();
    const auto& Y = f.target();
    DominationReport r;
    for (Index x = 0; x < X.size(); ++x) r.gf_to_id = std::max(r.gf_to_id, X.d(g(f(x)), x));
    const Subset img = f.image();
    for (Index y = 0; y < Y.size(); ++y) {
        const double v = Y.d(f(g(y)), y);
        r.fg_to_id = std::max(r.fg_to_id, v);
        if (img.contains(y)) r.fg_to_id_on_image = std::max(r.fg_to_id_on_image, v);
    }
    r.f_proper = tail_min_profile(X, target_radius(f), "f coarsely-proper");
    {
        const auto pts = img.members();
        const auto sub = Y.subspace(pts);
        std::vector<Index> t;
        for (Index y : pts) t.push_back(g(y));
        PointMap gi(share(sub), g.target_ptr(), std::move(t));
        r.g_proper_on_image = tail_min_profile(sub, target_radius(gi), "g coarsely-proper on f(X)");
    }
    const auto tr = distance_transfers(f);
    r.surjective = img.full();
    for (const auto& e : tr.reverse.entries()) r.reverse_transfer_max = std::max(r.reverse_transfer_max, e.value);
    const double bound = tr.forward.at(r.gf_to_id);
    bool ok = true;
    std::vector<Index> witness;
    for (Index x = 0; x < X.size(); ++x)
        if (Y.d(f(g(f(x))), f(x)) > bound) {
            ok = false;
            witness = {x};
            break;
        }
    r.certificate.add("fgf-bound", ok, "d(f g f x, f x) <= d_f(dist(g f, id)) = " + format_number(bound), witness);
    r.certificate.add("reverse-transfer-finite", std::isfinite(r.reverse_transfer_max),
                      "max d^f = " + format_number(r.reverse_transfer_max));
    return r;
}

// ---------------------------------------------------------------------------
// Dimension-zero retraction

struct RetractionResult {
    std::vector<Index> r;               // retraction table X -> X
    std::vector<std::size_t> captured;  // scale index (0-based) where each point was assigned; A gets 0
    std::vector<std::string> diameter_flags;
    Certificate certificate{"retraction"};
};

/// Hierarchical retraction of X onto A built from the scale components at
/// the given increasing scales.
inline RetractionResult zero_dim_retraction(const FiniteMetricSpace& X, const Subset& A,
                                            const std::vector<double>& scales) {
    const std::size_t N = X.size();
    if (A.universe() != N) throw ValidationError("subset lives on another space");
    if (A.empty()) throw ValidationError("retraction target must be nonempty");
    if (scales.empty()) throw ValidationError("need at least one scale");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0)) throw ValidationError("scales must be positive");
        if (i && !(scales[i] > scales[i - 1])) throw ValidationError("scales must be strictly increasing");
    }
    RetractionResult out;
    const std::size_t none = static_cast<std::size_t>(-1);
    out.r.assign(N, 0);
    out.captured.assign(N, none);
    for (Index a : A.members()) {
        out.r[a] = a;
        out.captured[a] = 0;
    }
    const Subset all = Subset::all(N);
    std::vector<std::vector<std::vector<Index>>> comps(scales.size());
    bool separated = true;
    for (std::size_t n = 0; n < scales.size(); ++n) {
        comps[n] = m_scale_components(X, all, scales[n]);
        Subset done(N);
        for (Index x = 0; x < N; ++x)
            if (out.captured[x] != none) done.insert(x);
        for (const auto& C : comps[n]) {
            const Subset Cs = Subset::of(N, C);
            for (Index x : C)
                if (dist_to_set(X, x, all - Cs) < scales[n]) separated = false;
            if (n + 1 < scales.size()) {
                const double diam = set_diameter(X, Cs);
                if (!(diam < scales[n + 1]))
                    out.diameter_flags.push_back("scale " + format_number(scales[n]) + " component of diameter " +
                                                 format_number(diam) + " not below " +
                                                 format_number(scales[n + 1]));
            }
            std::optional<Index> xu;
            for (Index x : C)
                if (A.contains(x) && (!xu || X.from_basepoint(x) > X.from_basepoint(*xu))) xu = x;
            if (!xu) continue;
            for (Index x : C)
                if (!done.contains(x)) {
                    out.r[x] = *xu;
                    out.captured[x] = n + 1;
                }
        }
    }
    for (Index x = 0; x < N; ++x)
        if (out.captured[x] == none)
            throw ValidationError("point " + std::to_string(x) + " is never captured by a component meeting A");
    for (const auto& f : out.diameter_flags) out.certificate.note(f);

    out.certificate.add("separation", separated, "components at scale M_n are at least M_n apart");
    bool fixes = true, into = true, idem = true;
    std::vector<Index> w1, w2, w3;
    for (Index x = 0; x < N; ++x) {
        if (A.contains(x) && out.r[x] != x && fixes) fixes = false, w1 = {x};
        if (!A.contains(out.r[x]) && into) into = false, w2 = {x};
        if (out.r[out.r[x]] != out.r[x] && idem) idem = false, w3 = {x};
    }
    out.certificate.add("identity-on-A", fixes, "r(a) = a for a in A", w1);
    out.certificate.add("image-in-A", into, "r(X) inside A", w2);
    out.certificate.add("idempotent", idem, "r(r(x)) = r(x)", w3);
    for (std::size_t n = 0; n + 2 < scales.size(); ++n) {
        bool ok = true;
        std::vector<Index> w;
        for (Index x = 0; x < N && ok; ++x)
            for (Index y = x + 1; y < N; ++y)
                if (X.d(x, y) < scales[n] && X.d(out.r[x], out.r[y]) > scales[n + 2]) {
                    ok = false;
                    w = {x, y};
                    break;
                }
        out.certificate.add("coarse-" + std::to_string(n + 1), ok,
                            "d < " + format_number(scales[n]) + " implies d(r x, r y) <= " +
                                format_number(scales[n + 2]),
                            w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// No-extension certificate

struct ChainPair {
    Index x = 0;
    Index y = 0;
    std::vector<Index> path;  // x = path.front(), y = path.back()
    std::size_t steps() const noexcept { return path.empty() ? 0 : path.size() - 1; }
};

struct ChainData {
    double M = 1.0;
    std::vector<ChainPair> pairs;
    std::vector<double> fx;  // partial function at x_i
    std::vector<double> fy;  // partial function at y_i
};

inline void validate_chains(const FiniteMetricSpace& X, const ChainData& c) {
    if (c.fx.size() != c.pairs.size() || c.fy.size() != c.pairs.size())
        throw ValidationError("partial function needs values at every x_i and y_i");
    for (std::size_t i = 0; i < c.pairs.size(); ++i) {
        const auto& p = c.pairs[i];
        if (p.path.empty() || p.path.front() != p.x || p.path.back() != p.y)
            throw ValidationError("chain " + std::to_string(i + 1) + " does not join x_i to y_i");
        for (std::size_t k = 0; k < p.path.size(); ++k) {
            if (p.path[k] >= X.size()) throw ValidationError("chain " + std::to_string(i + 1) + " leaves the space");
            if (k && X.d(p.path[k - 1], p.path[k]) > c.M)
                throw ValidationError("chain " + std::to_string(i + 1) + " step " + std::to_string(k) + " (" +
                                      std::to_string(p.path[k - 1]) + "->" + std::to_string(p.path[k]) +
                                      ") has length " + format_number(X.d(p.path[k - 1], p.path[k])) + " > M = " +
                                      format_number(c.M));
        }
    }
}

struct NoExtensionResult {
    std::optional<std::size_t> index;  // 1-based i certifying no extension
    double gap = 0.0;
    double budget = 0.0;  // L_i * K at that index
    Certificate certificate{"no-extension"};
};

/// Least i with |f(x_i) - f(y_i)| > L_i K; its existence rules out any
/// extension whose M-steps move values by at most K.
inline NoExtensionResult no_extension_certificate(const FiniteMetricSpace& X, const ChainData& c, double K) {
    validate_chains(X, c);
    if (!(K >= 0.0)) throw ValidationError("budget K must be nonnegative");
    NoExtensionResult r;
    for (std::size_t i = 0; i < c.pairs.size(); ++i) {
        const double gap = std::abs(c.fx[i] - c.fy[i]);
        const double budget = static_cast<double>(c.pairs[i].steps()) * K;
        if (gap > budget) {
            r.index = i + 1;
            r.gap = gap;
            r.budget = budget;
            r.certificate.add("gap-exceeds-budget", true,
                              "i = " + std::to_string(i + 1) + ": gap " + format_number(gap) + " > " +
                                  format_number(budget),
                              c.pairs[i].path);
            return r;
        }
    }
    r.certificate.note("refuted: every gap is within L_i * K");
    return r;
}

}  // namespace coarse
