#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "coarse/coarse.hpp"
#include "coarse/io.hpp"

namespace coarse::cli {

using io::json;

enum ExitCode : int { kOk = 0, kValidation = 1, kCertificate = 2, kSizeLimit = 3 };

struct Globals {
    std::string space;
    std::string cover;
    std::string out;
    std::uint64_t seed = 0;
    std::size_t exact_limit = kDefaultExactLimit;
};

inline void emit(const Globals& g, const json& j, std::ostream& out) {
    if (g.out.empty()) out << io::dump(j);
    else io::write_file(g.out, io::dump(j));
}

inline FiniteMetricSpace need_space(const Globals& g) {
    if (g.space.empty()) throw ValidationError("--space is required");
    return io::space_from_json(io::load_json(g.space));
}

inline IndexedFamily need_cover(const Globals& g, const FiniteMetricSpace& X, const std::string& path = {}) {
    const std::string p = path.empty() ? g.cover : path;
    if (p.empty()) throw ValidationError("--cover is required");
    return io::family_from_json(io::load_json(p), X.size());
}

inline Subset subset_of(const FiniteMetricSpace& X, const std::vector<Index>& v) {
    for (Index i : v)
        if (i >= X.size()) throw ValidationError("point " + std::to_string(i) + " out of range");
    return Subset::of(X.size(), v);
}

inline json profile_rows(const std::vector<double>& v) { return io::numbers(v); }

inline json chain_to_json(const ChainData& c) {
    json pairs = json::array();
    for (const auto& p : c.pairs) pairs.push_back({{"x", p.x}, {"y", p.y}, {"path", p.path}});
    return {{"M", io::number(c.M)}, {"pairs", std::move(pairs)}, {"fx", c.fx}, {"fy", c.fy}};
}

inline ChainData chain_from_json(const json& j) {
    ChainData c;
    c.M = io::number(j.at("M"));
    for (const auto& p : j.at("pairs"))
        c.pairs.push_back({io::field<Index>(p, "x"), io::field<Index>(p, "y"), io::field<std::vector<Index>>(p, "path")});
    c.fx = io::field<std::vector<double>>(j, "fx");
    c.fy = io::field<std::vector<double>>(j, "fy");
    return c;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
    std::string kind;
    std::vector<std::string> params;
    std::string cover_out, pou_out, chain_out;
};

inline int run_gen(const Globals& g, const GenArgs& a, std::ostream& out) {
    GeneratorSpec spec;
    spec.kind = a.kind;
    spec.seed = g.seed;
    for (const auto& p : a.params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) throw ValidationError("parameter '" + p + "' must look like key=value");
        std::vector<double> vals;
        std::string rest = p.substr(eq + 1);
        std::size_t start = 0;
        while (start <= rest.size()) {
            const auto comma = rest.find(',', start);
            const auto cell = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            vals.push_back(io::parse_number(cell));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        spec.set(p.substr(0, eq), std::move(vals));
    }
    const auto gen = generate(spec);
    emit(g, io::to_json(gen.space), out);
    if (!a.cover_out.empty()) {
        if (!gen.cover) throw ValidationError("generator '" + a.kind + "' produces no cover");
        io::write_file(a.cover_out, io::dump(io::to_json(*gen.cover)));
    }
    if (!a.pou_out.empty()) {
        if (!gen.pou) throw ValidationError("generator '" + a.kind + "' produces no partition of unity");
        io::write_file(a.pou_out, io::dump(io::to_json(*gen.pou)));
    }
    if (!a.chain_out.empty()) {
        if (!gen.chain) throw ValidationError("generator '" + a.kind + "' produces no chain data");
        io::write_file(a.chain_out, io::dump(chain_to_json(*gen.chain)));
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
    std::string csv;
    bool diagnostics = false;
};

inline int run_analyze(const Globals& g, const AnalyzeArgs& a, std::ostream& out) {
    const auto X = need_space(g);
    const auto U = need_cover(g, X);
    const auto local = local_lebesgue(X, U);
    const auto mult = pointwise_multiplicity(U);
    const auto prof = tail_min_profile(X, local, "coarseness");
    json j;
    j["points"] = X.size();
    j["labels"] = U.labels();
    j["covers"] = U.covers();
    j["lebesgue"] = io::number(lebesgue(local, Subset::all(X.size())));
    j["multiplicity"] = multiplicity(U);
    j["mesh"] = io::number(mesh(X, U));
    j["local_lebesgue"] = profile_rows(local);
    j["pointwise_multiplicity"] = mult;
    j["coarseness"] = io::to_json(prof);
    if (a.diagnostics) {
        const auto d = finite_family_diagnostics(X, U);
        j["d_sum"] = profile_rows(d.d_sum);
        j["d_sum_profile"] = io::to_json(d.d_profile);
        j["sandwich"] = d.lower_sandwich && d.upper_sandwich;
        json pairs = json::array();
        for (const auto& p : d.pairs)
            pairs.push_back({{"a", U.label(p.first)}, {"b", U.label(p.second)}, {"profile", io::to_json(p.profile)}});
        j["pair_profiles"] = std::move(pairs);
    }
    if (!a.csv.empty()) io::write_file(a.csv, io::to_csv(prof));
    emit(g, j, out);
    return kOk;
}

// ---------------------------------------------------------------------------
// refine

struct RefineArgs {
    std::string method = "ostrand";
    std::string certificate;
    double M = 1.0;
    double N = 1.0;
    bool residual = false;
    std::vector<double> probes;
    std::vector<Index> subset;
    std::string cover2;
    std::vector<double> radii;
    std::vector<double> scales;
    std::vector<std::string> covers;
};

inline int run_refine(const Globals& g, const RefineArgs& a, std::ostream& out) {
    const auto X = need_space(g);
    const auto& m = a.method;
    json j;
    Certificate cert;
    auto put = [&](const IndexedFamily& F) { j["family"] = io::to_json(F); };
    if (m == "annuli") {
        auto r = squared_annuli(X);
        put(r.family);
        cert = r.certificate;
    } else {
        const auto U = need_cover(g, X);
        if (m == "ostrand") {
            auto r = ostrand_split(X, U);
            json levels = json::array();
            for (const auto& l : r.levels) levels.push_back(io::to_json(l));
            j["levels"] = std::move(levels);
            j["uncovered"] = r.uncovered;
            j["order"] = r.order;
            put(r.combined());
            cert = r.certificate;
        } else if (m == "bounded") {
            auto r = bounded_annulus_refine(X, U, {a.residual});
            put(r.family);
            cert = r.certificate;
        } else if (m == "paracompact") {
            auto r = paracompact_shrink(X, U, a.probes);
            put(r.family);
            j["f"] = io::numbers(r.f);
            json table = json::array();
            for (const auto& e : r.table)
                table.push_back({{"M", io::number(e.M)},
                                 {"radius", io::number(e.radius)},
                                 {"violations", e.violations},
                                 {"certified_ok", e.certified_ok},
                                 {"stated_violations", e.stated_violations}});
            j["table"] = std::move(table);
            cert = r.certificate;
        } else if (m == "inward") {
            auto r = inward_shrink(X, U);
            put(r.family);
            j["f"] = io::numbers(r.f);
            j["zero_labels"] = r.zero_labels;
            cert = r.certificate;
        } else if (m == "gromov") {
            auto r = gromov_disjointify(X, U, a.M, a.N);
            json fams = json::array();
            for (const auto& F : r.families) fams.push_back(io::to_json(F));
            j["families"] = std::move(fams);
            j["input_lebesgue"] = io::number(r.input_lebesgue);
            j["covers"] = r.covers;
            cert = r.certificate;
        } else if (m == "extend") {
            auto r = subset_cover_extension(X, subset_of(X, a.subset), U, a.radii);
            put(r.family);
            cert = r.certificate;
        } else if (m == "merge") {
            const Subset A = subset_of(X, a.subset);
            const auto UB = need_cover(g, X, a.cover2);
            auto r = union_merge(X, A, U, Subset::all(X.size()) - A, UB, a.M);
            put(r.family);
            cert = r.certificate;
        } else if (m == "paste") {
            std::vector<IndexedFamily> Vs;
            for (const auto& p : a.covers) Vs.push_back(need_cover(g, X, p));
            auto r = annulus_paste(X, U, a.scales, Vs);
            put(r.family);
            j["uncovered"] = r.uncovered.members();
            cert = r.certificate;
        } else {
            throw ValidationError("unknown refine method '" + m + "'");
        }
    }
    j["certificate"] = io::to_json(cert);
    if (!a.certificate.empty()) io::write_file(a.certificate, io::dump(io::to_json(cert)));
    emit(g, j, out);
    return cert.passed() ? kOk : kCertificate;
}

// ---------------------------------------------------------------------------
// pou

struct PouArgs {
    std::optional<double> osc;
    std::vector<double> equi;  // M eps
    std::optional<double> lebesgue_M;
    std::string pou_file;
};

inline int run_pou(const Globals& g, const PouArgs& a, std::ostream& out) {
    const auto X = need_space(g);
    json j;
    PartitionOfUnity phi;
    if (!a.pou_file.empty()) {
        phi = io::pou_from_json(io::load_json(a.pou_file), X.size());
    } else {
        const auto U = need_cover(g, X);
        auto c = canonical_pou(X, U);
        j["excluded"] = c.excluded;
        phi = std::move(c.pou);
    }
    j["pou"] = io::to_json(phi);
    const auto carr = carriers(X, phi);
    j["carriers"] = io::to_json(carr.carriers);
    j["carrier_profile"] = io::to_json(carr.profile);
    j["carrier_multiplicity"] = carr.multiplicity;
    bool ok = true;
    if (a.osc) {
        const auto o = oscillation(X, phi, *a.osc);
        j["oscillation"] = io::numbers(o);
        j["oscillation_profile"] = io::to_json(oscillation_profile(X, o));
        const auto e = equi_slow_check(X, phi, *a.osc);
        j["equi_slow"] = {{"multiplicity", e.multiplicity}, {"holds", e.holds}, {"failures", e.failures}};
        ok = ok && e.holds;
    }
    if (!a.equi.empty()) {
        if (a.equi.size() != 2) throw ValidationError("--equi takes M and eps");
        j["equi_radius"] = io::number(equi_oscillation_radius(X, phi, a.equi[0], a.equi[1]));
    }
    if (a.lebesgue_M) {
        const auto r = pou_lebesgue_bound(X, phi, *a.lebesgue_M);
        j["lebesgue_bound"] = {{"hypothesis", r.hypothesis},
                               {"violations", r.violations.size()},
                               {"lebesgue", io::number(r.lebesgue)},
                               {"conclusion", r.conclusion},
                               {"certificate", io::to_json(r.certificate)}};
        ok = ok && r.certificate.passed();
    }
    emit(g, j, out);
    return ok ? kOk : kCertificate;
}

// ---------------------------------------------------------------------------
// dim

struct DimArgs {
    std::string mode = "Ln";
    std::size_t n = 0;
    double M = 1.0;
    double mesh = 1.0;
    std::vector<double> Ms;
    std::vector<Index> subset;
    std::size_t k = 2;
    bool heuristic = false;
    std::string csv;
};

inline json scale_search_json(const ScaleSearch& s) {
    return {{"found", s.found},         {"exact", s.exact},
            {"strategy", s.strategy},   {"multiplicity", s.multiplicity},
            {"lebesgue", io::number(s.lebesgue)}, {"mesh", io::number(s.mesh)},
            {"nodes", s.nodes},         {"cover", io::to_json(s.cover)},
            {"certificate", io::to_json(s.certificate)}};
}

inline int run_dim(const Globals& g, const DimArgs& a, std::ostream& out) {
    json j;
    j["mode"] = a.mode;
    std::optional<ScaleProfile> prof;
    int code = kOk;
    if (a.mode == "sperner") {
        const auto S = equilateral_subdivision(a.k);
        const auto r = sperner_bound(S, g.exact_limit);
        j["k"] = a.k;
        j["mesh"] = io::number(r.mesh);
        j["vertices"] = r.vertices;
        j["confirmed"] = r.confirmed;
        if (r.exact_l1) j["l1"] = io::number(*r.exact_l1);
        j["nodes"] = r.nodes;
        if (r.witness) j["witness"] = {{"triangle", r.witness->triangle}, {"labels", r.witness->labels}};
        j["certificate"] = io::to_json(r.certificate);
        if (!r.certificate.passed()) code = kCertificate;
        emit(g, j, out);
        return code;
    }
    const auto X = need_space(g);
    ScaleSearchOptions opt{g.exact_limit};
    if (a.mode == "Ln") {
        const auto U = need_cover(g, X);
        const Subset A = a.subset.empty() ? Subset::all(X.size()) : subset_of(X, a.subset);
        const auto r = higher_lebesgue(X, U, A, a.n, {g.exact_limit, a.heuristic, std::nullopt});
        j["n"] = a.n;
        j["value"] = io::number(r.value);
        j["exact"] = r.exact;
        j["nodes"] = r.nodes;
        j["shrinking"] = io::to_json(r.shrinking);
    } else if (a.mode == "asdim") {
        j["n"] = a.n;
        j["M"] = io::number(a.M);
        j["mesh_bound"] = io::number(a.mesh);
        j["result"] = scale_search_json(asdim_at_scale(X, a.M, a.n, a.mesh, opt));
    } else if (a.mode == "zero") {
        const auto w = asdim_zero_witness(X, a.M);
        json rows = json::array();
        for (const auto& r : w.rows)
            rows.push_back({{"r", io::number(r.r)},
                            {"components", r.components},
                            {"max_diameter", io::number(r.max_diameter)},
                            {"x", r.x},
                            {"y", r.y},
                            {"chain", r.chain}});
        j["rows"] = std::move(rows);
        j["none"] = w.none;
        prof = w.diameters;
    } else if (a.mode == "dM") {
        const auto Ms = a.Ms.empty() ? std::vector<double>{a.M} : a.Ms;
        const double ratio = a.mesh / (a.Ms.empty() ? a.M : a.Ms.front());
        auto [rows, p] = d_of_M_table(X, Ms, ratio, 3, opt);
        json arr = json::array();
        for (const auto& r : rows) {
            json e{{"M", io::number(r.M)}, {"exact", r.exact}};
            e["d"] = r.d ? json(*r.d) : json(nullptr);
            e["strategy"] = r.witness.strategy;
            arr.push_back(std::move(e));
        }
        j["rows"] = std::move(arr);
        prof = p;
    } else {
        throw ValidationError("unknown dim mode '" + a.mode + "'");
    }
    if (prof) {
        j["profile"] = io::to_json(*prof);
        if (!a.csv.empty()) io::write_file(a.csv, io::to_csv(*prof));
    }
    emit(g, j, out);
    return code;
}

// ---------------------------------------------------------------------------
// map

struct MapArgs {
    std::string file;
    bool classify = false;
    bool transfers = false;
    std::string close;
    std::string dominate;
    std::vector<Index> retract;
    std::vector<double> scales;
    std::string chain;
    std::optional<double> K;
    double M = 1.0;
};

inline int run_map(const Globals& g, const MapArgs& a, std::ostream& out) {
    json j;
    int code = kOk;
    if (!a.retract.empty()) {
        const auto X = need_space(g);
        const auto r = zero_dim_retraction(X, subset_of(X, a.retract), a.scales);
        j["r"] = r.r;
        j["captured"] = r.captured;
        j["certificate"] = io::to_json(r.certificate);
        if (!r.certificate.passed()) code = kCertificate;
        emit(g, j, out);
        return code;
    }
    if (!a.chain.empty()) {
        if (!a.K) throw ValidationError("--K is required with --chain");
        const auto X = need_space(g);
        const auto c = chain_from_json(io::load_json(a.chain));
        const auto r = no_extension_certificate(X, c, *a.K);
        j["K"] = io::number(*a.K);
        j["certified"] = r.index.has_value();
        if (r.index) {
            j["index"] = *r.index;
            j["gap"] = io::number(r.gap);
            j["budget"] = io::number(r.budget);
        }
        j["certificate"] = io::to_json(r.certificate);
        emit(g, j, out);
        return code;
    }
    if (a.file.empty()) throw ValidationError("map file required");
    const auto f = io::map_from_json(io::load_json(a.file));
    if (a.transfers || (!a.classify && a.close.empty() && a.dominate.empty())) {
        const auto t = distance_transfers(f);
        const auto l = lebesgue_transfer_bounds(f);
        j["forward"] = io::to_json(t.forward);
        j["reverse"] = io::to_json(t.reverse);
        j["lebesgue_lower"] = io::to_json(l.lower);
        j["lebesgue_upper"] = io::to_json(l.upper);
        j["transfer_certificate"] = io::to_json(l.certificate);
        if (!l.certificate.passed()) code = kCertificate;
    }
    if (a.classify) {
        const auto c = classify_map(f, a.M);
        j["radii"] = io::numbers(c.radii);
        j["coarse_table"] = io::numbers(c.coarse_table);
        j["fit"] = {{"m", io::number(c.fit.m)}, {"b", io::number(c.fit.b)}};
        j["coarsely_proper"] = io::to_json(c.proper);
        j["slow_oscillation"] = io::to_json(c.oscillation);
    }
    if (!a.close.empty()) {
        const auto h = io::map_from_json(io::load_json(a.close));
        const auto c = map_closeness(f, h);
        j["closeness"] = {{"distance", io::number(c.distance)},
                          {"graph_fg", io::number(c.graph_fg)},
                          {"graph_gf", io::number(c.graph_gf)},
                          {"certificate", io::to_json(c.certificate)}};
        if (!c.certificate.passed()) code = kCertificate;
    }
    if (!a.dominate.empty()) {
        const auto h = io::map_from_json(io::load_json(a.dominate));
        const auto d = domination_check(f, h);
        j["domination"] = {{"gf_to_id", io::number(d.gf_to_id)},
                           {"fg_to_id", io::number(d.fg_to_id)},
                           {"fg_to_id_on_image", io::number(d.fg_to_id_on_image)},
                           {"surjective", d.surjective},
                           {"reverse_transfer_max", io::number(d.reverse_transfer_max)},
                           {"f_proper", io::to_json(d.f_proper)},
                           {"g_proper_on_image", io::to_json(d.g_proper_on_image)},
                           {"certificate", io::to_json(d.certificate)}};
        if (!d.certificate.passed()) code = kCertificate;
    }
    emit(g, j, out);
    return code;
}

// ---------------------------------------------------------------------------
// export

struct ExportArgs {
    std::string profile;  // existing CSV to convert
    std::string what = "coarseness";
    std::string format = "csv";
    double M = 1.0;
};

inline int run_export(const Globals& g, const ExportArgs& a, std::ostream& out) {
    ScaleProfile p;
    if (!a.profile.empty()) {
        p = io::profile_from_csv(io::read_file(a.profile), a.what);
    } else {
        const auto X = need_space(g);
        if (a.what == "coarseness") {
            p = coarseness_profile(X, need_cover(g, X));
        } else if (a.what == "oscillation") {
            const auto c = canonical_pou(X, need_cover(g, X));
            p = oscillation_profile(X, oscillation(X, c.pou, a.M));
        } else if (a.what == "carriers") {
            p = carriers(X, canonical_pou(X, need_cover(g, X)).pou).profile;
        } else if (a.what == "zero") {
            p = asdim_zero_witness(X, a.M).diameters;
        } else {
            throw ValidationError("unknown profile '" + a.what + "'");
        }
    }
    std::string text;
    if (a.format == "csv") text = io::to_csv(p);
    else if (a.format == "svg") text = io::to_svg(p);
    else throw ValidationError("unknown export format '" + a.format + "'");
    if (g.out.empty()) out << text;
    else io::write_file(g.out, text);
    return kOk;
}

// ---------------------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"coarse: scale invariants of finite metric spaces"};
    app.fallthrough();
    app.require_subcommand(1);
    Globals g;
    app.add_option("--space", g.space, "space JSON");
    app.add_option("--cover", g.cover, "cover JSON");
    app.add_option("--out,-o", g.out, "output path (stdout when absent)");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--exact-limit", g.exact_limit, "largest point set for exhaustive search");

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "generate a space");
    gen->add_option("kind", ga.kind)->required();
    gen->add_option("--param,-p", ga.params, "key=value or key=v1,v2");
    gen->add_option("--cover-out", ga.cover_out);
    gen->add_option("--pou-out", ga.pou_out);
    gen->add_option("--chain-out", ga.chain_out);

    AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "Lebesgue numbers, multiplicity, profiles");
    analyze->add_option("--csv", aa.csv, "coarseness profile CSV");
    analyze->add_flag("--diagnostics", aa.diagnostics);

    RefineArgs ra;
    auto* refine = app.add_subcommand("refine", "cover refinements");
    refine->add_option("--method", ra.method)
        ->check(CLI::IsMember({"ostrand", "annuli", "bounded", "paracompact", "inward", "gromov", "extend", "merge",
                               "paste"}));
    refine->add_option("--certificate", ra.certificate);
    refine->add_option("--M", ra.M);
    refine->add_option("--N", ra.N);
    refine->add_flag("--residual", ra.residual);
    refine->add_option("--probes", ra.probes)->delimiter(',');
    refine->add_option("--subset", ra.subset)->delimiter(',');
    refine->add_option("--cover2", ra.cover2);
    refine->add_option("--radii", ra.radii)->delimiter(',');
    refine->add_option("--scales", ra.scales)->delimiter(',');
    refine->add_option("--covers", ra.covers)->delimiter(',');

    PouArgs pa;
    auto* pou = app.add_subcommand("pou", "partitions of unity");
    pou->add_option("--osc", pa.osc);
    pou->add_option("--equi", pa.equi)->expected(2);
    pou->add_option("--lebesgue", pa.lebesgue_M);
    pou->add_option("--pou", pa.pou_file, "partition of unity JSON instead of the canonical one");

    DimArgs da;
    auto* dim = app.add_subcommand("dim", "higher Lebesgue numbers and dimension at scale");
    dim->add_option("--mode", da.mode)->check(CLI::IsMember({"Ln", "asdim", "zero", "sperner", "dM"}));
    dim->add_option("--n", da.n);
    dim->add_option("--M", da.M);
    dim->add_option("--mesh", da.mesh);
    dim->add_option("--Ms", da.Ms)->delimiter(',');
    dim->add_option("--subset", da.subset)->delimiter(',');
    dim->add_option("--k", da.k);
    dim->add_flag("--heuristic", da.heuristic);
    dim->add_option("--csv", da.csv);

    MapArgs ma;
    auto* map = app.add_subcommand("map", "maps between spaces");
    map->add_option("file", ma.file);
    map->add_flag("--classify", ma.classify);
    map->add_flag("--transfers", ma.transfers);
    map->add_option("--close", ma.close);
    map->add_option("--dominate", ma.dominate);
    map->add_option("--retract", ma.retract)->delimiter(',');
    map->add_option("--scales", ma.scales)->delimiter(',');
    map->add_option("--chain", ma.chain);
    map->add_option("--K", ma.K);
    map->add_option("--M", ma.M);

    ExportArgs ea;
    auto* exp = app.add_subcommand("export", "profile CSV or SVG");
    exp->add_option("--profile", ea.profile, "profile CSV to convert");
    exp->add_option("--what", ea.what);
    exp->add_option("--format", ea.format)->check(CLI::IsMember({"csv", "svg"}));
    exp->add_option("--M", ea.M);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }
    try {
        if (*gen) return run_gen(g, ga, out);
        if (*analyze) return run_analyze(g, aa, out);
        if (*refine) return run_refine(g, ra, out);
        if (*pou) return run_pou(g, pa, out);
        if (*dim) return run_dim(g, da, out);
        if (*map) return run_map(g, ma, out);
        if (*exp) return run_export(g, ea, out);
    } catch (const SizeLimitError& e) {
        err << "size limit: " << e.what() << "\n";
        return kSizeLimit;
    } catch (const CertificateError& e) {
        err << "certificate: " << e.what() << "\n";
        return kCertificate;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kValidation;
}

}  // namespace coarse::cli
