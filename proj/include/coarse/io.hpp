#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coarse/certificate.hpp"
#include "coarse/errors.hpp"
#include "coarse/family.hpp"
#include "coarse/maps.hpp"
#include "coarse/metric.hpp"
#include "coarse/pou.hpp"
#include "coarse/profile.hpp"

namespace coarse::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Numbers: infinities travel as the strings "inf" / "-inf".

inline json number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

inline double parse_number(std::string_view s) {
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ValidationError("not a number: '" + std::string(s) + "'");
    return v;
}

inline double number(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_number(j.get<std::string>());
    throw ValidationError("expected a number, got " + j.dump());
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("field '") + key + "': " + e.what());
    }
}

inline const json& sub(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
    return j[key];
}

inline Index index_of(const json& v) {
    if (!v.is_number_unsigned()) throw ValidationError("expected a point index, got " + v.dump());
    return v.get<Index>();
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
    if (!out) throw ValidationError("write failed for " + path);
}

inline json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(what + ": " + e.what());
    }
}

inline json load_json(const std::string& path) { return parse_json(read_file(path), path); }

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Spaces

inline json to_json(const FiniteMetricSpace& X) {
    json j;
    j["points"] = X.size();
    json m;
    if (X.embedded()) {
        m["type"] = "euclidean";
        m["p"] = number(X.norm_p());
        m["coordinates"] = X.coordinates();
    } else {
        m["type"] = "matrix";
        json rows = json::array();
        for (Index i = 0; i < X.size(); ++i) {
            json r = json::array();
            for (double v : X.row(i)) r.push_back(v);
            rows.push_back(std::move(r));
        }
        m["rows"] = std::move(rows);
    }
    j["metric"] = std::move(m);
    j["basepoint"] = X.basepoint();
    return j;
}

inline FiniteMetricSpace space_from_json(const json& j) {
    const auto n = field<std::size_t>(j, "points");
    const auto base = j.contains("basepoint") ? field<Index>(j, "basepoint") : Index{0};
    const json& m = sub(j, "metric");
    const auto type = field<std::string>(m, "type");
    FiniteMetricSpace X = [&] {
        if (type == "matrix") {
            std::vector<std::vector<double>> rows;
            for (const auto& r : sub(m, "rows")) {
                std::vector<double> row;
                for (const auto& v : r) row.push_back(number(v));
                rows.push_back(std::move(row));
            }
            return FiniteMetricSpace::from_matrix(std::move(rows), base);
        }
        if (type == "euclidean") {
            const double p = m.contains("p") ? number(sub(m, "p")) : 2.0;
            return FiniteMetricSpace::from_euclidean(field<std::vector<std::vector<double>>>(m, "coordinates"), p,
                                                     base);
        }
        if (type == "graph") {
            std::vector<WeightedEdge> edges;
            for (const auto& e : sub(m, "edges")) {
                if (!e.is_array() || e.size() != 3) throw ValidationError("graph edges are [u, v, weight]");
                edges.push_back({index_of(e[0]), index_of(e[1]), number(e[2])});
            }
            return FiniteMetricSpace::from_graph(n, edges, base);
        }
        throw ValidationError("unknown metric type '" + type + "'");
    }();
    if (X.size() != n)
        throw ValidationError("space declares " + std::to_string(n) + " points but metric has " +
                              std::to_string(X.size()));
    return X;
}

// ---------------------------------------------------------------------------
// Families and partitions of unity

inline json to_json(const IndexedFamily& U) {
    json labels = json::array();
    for (std::size_t s = 0; s < U.size(); ++s)
        labels.push_back({{"label", U.label(s)}, {"members", U.set(s).members()}});
    return {{"labels", std::move(labels)}};
}

inline Subset subset_from_json(const json& j, std::size_t universe) {
    Subset S(universe);
    for (const auto& v : j) {
        const auto i = index_of(v);
        if (i >= universe) throw ValidationError("member " + std::to_string(i) + " out of range");
        S.insert(i);
    }
    return S;
}

inline IndexedFamily family_from_json(const json& j, std::size_t universe) {
    IndexedFamily U(universe);
    for (const auto& e : sub(j, "labels")) U.add(field<std::string>(e, "label"), subset_from_json(sub(e, "members"), universe));
    return U;
}

inline json to_json(const PartitionOfUnity& phi) {
    json w = json::array();
    for (const auto& row : phi.weights) w.push_back(row);
    return {{"labels", phi.labels}, {"weights", std::move(w)}, {"domain", phi.domain.members()}};
}

inline PartitionOfUnity pou_from_json(const json& j, std::size_t universe) {
    PartitionOfUnity phi;
    phi.labels = field<std::vector<std::string>>(j, "labels");
    phi.weights = field<std::vector<std::vector<double>>>(j, "weights");
    phi.domain = subset_from_json(sub(j, "domain"), universe);
    phi.validate();
    return phi;
}

// ---------------------------------------------------------------------------
// Maps

inline json to_json(const PointMap& f) {
    return {{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"table", f.table()}};
}

inline PointMap map_from_json(const json& j) {
    return PointMap(share(space_from_json(sub(j, "source"))), share(space_from_json(sub(j, "target"))),
                    field<std::vector<Index>>(j, "table"));
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const Certificate& c) {
    json checks = json::array();
    for (const auto& k : c.checks)
        checks.push_back({{"name", k.name}, {"passed", k.passed}, {"detail", k.detail}, {"witness", k.witness}});
    return {{"kind", c.kind}, {"passed", c.passed()}, {"checks", std::move(checks)}, {"notes", c.notes}};
}

inline json to_json(const ScaleProfile& p) {
    json e = json::array();
    for (const auto& x : p.entries()) e.push_back(json::array({number(x.t), number(x.value)}));
    return {{"name", p.name()}, {"entries", std::move(e)}};
}

inline json numbers(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

// ---------------------------------------------------------------------------
// Profile CSV and SVG

inline std::string to_csv(const ScaleProfile& p) {
    std::string out = "t,value\n";
    for (const auto& e : p.entries()) out += format_number(e.t) + "," + format_number(e.value) + "\n";
    return out;
}

inline ScaleProfile profile_from_csv(const std::string& text, std::string name = {}) {
    ScaleProfile p(std::move(name));
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "t,value") throw ValidationError("profile CSV must start with 't,value'");
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ValidationError("profile CSV row " + std::to_string(row) + " needs two cells");
        p.push(parse_number(std::string_view(line).substr(0, comma)),
               parse_number(std::string_view(line).substr(comma + 1)));
    }
    return p;
}

/// Polyline chart of a profile. Infinite values are clipped to the top edge
/// and marked with a circle.
inline std::string to_svg(const ScaleProfile& p, int width = 480, int height = 320) {
    const double pad = 40.0;
    double tmin = 0.0, tmax = 1.0, vmax = 1.0;
    if (!p.empty()) {
        tmin = p[0].t;
        tmax = p[p.size() - 1].t;
        vmax = p.max_finite();
    }
    if (!(tmax > tmin)) tmax = tmin + 1.0;
    if (!(vmax > 0.0)) vmax = 1.0;
    auto fmt = [](double v) {
        char buf[32];
        auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
        return std::string(buf, r.ptr);
    };
    const double w = width - 2 * pad, h = height - 2 * pad;
    auto X = [&](double t) { return pad + (t - tmin) / (tmax - tmin) * w; };
    auto Y = [&](double v) { return height - pad - (std::isinf(v) ? h : v / vmax * h); };
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
                    std::to_string(height) + "\">\n";
    s += "<line x1=\"" + fmt(pad) + "\" y1=\"" + fmt(height - pad) + "\" x2=\"" + fmt(width - pad) + "\" y2=\"" +
         fmt(height - pad) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + fmt(pad) + "\" y1=\"" + fmt(pad) + "\" x2=\"" + fmt(pad) + "\" y2=\"" + fmt(height - pad) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(width / 2.0) + "\" y=\"" + fmt(height - 8.0) + "\" text-anchor=\"middle\">t</text>\n";
    s += "<text x=\"12\" y=\"" + fmt(height / 2.0) + "\" text-anchor=\"middle\">" +
         (p.name().empty() ? std::string("value") : p.name()) + "</text>\n";
    s += "<text x=\"" + fmt(pad) + "\" y=\"" + fmt(height - pad + 16) + "\">" + format_number(tmin) + "</text>\n";
    s += "<text x=\"" + fmt(width - pad) + "\" y=\"" + fmt(height - pad + 16) + "\" text-anchor=\"end\">" +
         format_number(tmax) + "</text>\n";
    s += "<text x=\"" + fmt(pad - 4) + "\" y=\"" + fmt(pad) + "\" text-anchor=\"end\">" + format_number(vmax) +
         "</text>\n";
    s += "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ' ';
        s += fmt(X(p[i].t)) + "," + fmt(Y(p[i].value));
    }
    s += "\"/>\n";
    for (const auto& e : p.entries())
        if (std::isinf(e.value))
            s += "<circle cx=\"" + fmt(X(e.t)) + "\" cy=\"" + fmt(Y(e.value)) + "\" r=\"3\" fill=\"red\"/>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace coarse::io
