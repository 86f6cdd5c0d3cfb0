#include "zonalval/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace zonalval::io {

using geom::BodyKind;
using geom::ConvexBody;
using nlohmann::json;

namespace {

ConvexBody body_from(const json& js) {
    if (!js.contains("type")) throw ValidationError("body spec: missing \"type\"");
    std::string type = js.at("type").get<std::string>();
    int n = js.value("n", 3);
    ConvexBody K;
    if (type == "polytope") {
        std::vector<Vec> verts;
        for (const auto& row : js.at("vertices")) verts.push_back(row.get<Vec>());
        K = geom::make_polytope(n, std::move(verts));
    } else if (type == "revolution") {
        std::vector<std::pair<double, double>> prof;
        for (const auto& row : js.at("profile"))
            prof.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        K = geom::make_revolution(n, std::move(prof));
    } else if (type == "cone") {
        K = geom::make_cone(n, js.at("h").get<double>());
    } else if (type == "disk") {
        K = geom::make_disk(n, js.at("radius").get<double>());
    } else if (type == "ball") {
        K = geom::make_ball(n, js.at("radius").get<double>());
    } else if (type == "cylinder") {
        K = geom::make_cylinder(n, js.at("radius").get<double>(),
                                js.value("height", 0.0));
    } else if (type == "ballsum") {
        ConvexBody base = body_from(js.at("base"));
        K = geom::minkowski_ball(base, js.at("t").get<double>());
    } else {
        throw ValidationError("body spec: unknown type \"" + type + "\"");
    }
    if (js.contains("scale")) K = geom::scaled(K, js.at("scale").get<double>());
    if (js.contains("translate")) {
        Vec t = js.at("translate").get<Vec>();
        if (static_cast<int>(t.size()) != n)
            throw ValidationError("body spec: translate size mismatch");
        K = geom::translated(K, t);
    }
    K.validate();
    return K;
}

json body_to(const ConvexBody& K) {
    json js;
    js["n"] = K.n;
    switch (K.kind) {
        case BodyKind::Polytope: {
            js["type"] = "polytope";
            json v = json::array();
            for (const auto& row : K.vertices) v.push_back(row);
            js["vertices"] = v;
            break;
        }
        case BodyKind::Revolution: {
            js["type"] = "revolution";
            json p = json::array();
            for (auto [t, r] : K.profile) p.push_back(json::array({t, r}));
            js["profile"] = p;
            break;
        }
        case BodyKind::Cone:
            js["type"] = "cone";
            js["h"] = K.h;
            break;
        case BodyKind::Disk:
            js["type"] = "disk";
            js["radius"] = K.radius;
            break;
        case BodyKind::Ball:
            js["type"] = "ball";
            js["radius"] = K.radius;
            break;
        case BodyKind::Cylinder:
            js["type"] = "cylinder";
            js["radius"] = K.radius;
            js["height"] = K.height;
            break;
        case BodyKind::BallSum:
            js["type"] = "ballsum";
            js["base"] = body_to(*K.base);
            js["t"] = K.ball_t;
            break;
    }
    if (K.scale != 1.0) js["scale"] = K.scale;
    bool nonzero = false;
    for (double t : K.translation)
        if (t != 0.0) nonzero = true;
    if (nonzero) js["translate"] = K.translation;
    return js;
}

}  // namespace

ConvexBody body_from_json(const std::string& text) {
    json js;
    try {
        js = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("body spec: invalid JSON: ") + e.what());
    }
    return body_from(js);
}

std::string body_to_json(const ConvexBody& K) { return body_to(K).dump(); }

std::string body_key(const ConvexBody& K) { return body_to(K).dump(); }

dspace::ZonalDensity density_from_json(const std::string& text, double default_a) {
    json js;
    try {
        js = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("density spec: invalid JSON: ") + e.what());
    }
    double a = js.value("a", default_a);
    if (!(a > 0)) throw ValidationError("density spec: weight a missing or <= 0");
    std::string type = js.at("type").get<std::string>();
    if (type == "power") return dspace::ZonalDensity::power(a, js.at("beta").get<double>());
    if (type == "poly")
        return dspace::ZonalDensity::poly(a, js.at("coeffs").get<std::vector<double>>());
    if (type == "sampled") {
        dspace::SampledData d;
        d.nodes = js.at("nodes").get<std::vector<double>>();
        d.gvals = js.at("g").get<std::vector<double>>();
        std::optional<std::pair<double, double>> tails;
        if (js.contains("tail")) {
            auto t = js.at("tail").get<std::vector<double>>();
            if (t.size() != 2) throw ValidationError("density spec: tail must be [dm, dp]");
            tails = std::make_pair(t[0], t[1]);
        }
        bool trusted = js.value("trusted", false);
        return dspace::ZonalDensity::sampled(a, std::move(d), tails, trusted);
    }
    throw ValidationError("density spec: unknown type \"" + type + "\"");
}

std::string density_to_json(const dspace::ZonalDensity& f) {
    json js;
    js["a"] = f.a();
    switch (f.kind()) {
        case dspace::DensityKind::Power:
            js["type"] = "power";
            js["beta"] = f.power_beta();
            break;
        case dspace::DensityKind::Poly:
            js["type"] = "poly";
            js["coeffs"] = f.poly_coeffs();
            break;
        default: {
            js["type"] = "sampled";
            if (f.has_samples()) {
                js["nodes"] = f.samples().nodes;
                js["g"] = f.samples().gvals;
            } else {
                auto grid = zonalval::chebyshev_nodes(129);
                std::vector<double> nodes, g;
                for (double x : grid) {
                    double s = std::sin(0.5 * M_PI * x);
                    nodes.push_back(s);
                    g.push_back(f.eval_weighted(s));
                }
                js["nodes"] = nodes;
                js["g"] = g;
            }
            auto [dm, dp] = f.tails();
            js["tail"] = std::vector<double>{dm, dp};
            break;
        }
    }
    return js.dump();
}

dspace::ZonalDensity density_from_spec(const std::string& spec, double a) {
    if (spec.rfind("power:", 0) == 0)
        return dspace::ZonalDensity::power(a, std::stod(spec.substr(6)));
    if (spec.rfind("poly:", 0) == 0) {
        auto body = json::parse(spec.substr(5));
        return dspace::ZonalDensity::poly(a, body.get<std::vector<double>>());
    }
    if (!spec.empty() && (spec[0] == '{')) return density_from_json(spec, a);
    return density_from_json(read_file(spec), a);
}

ConvexBody body_from_spec(const std::string& spec, int n) {
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        return parts;
    };
    if (!spec.empty() && spec[0] == '{') return body_from_json(spec);
    auto parts = split(spec);
    if (parts.size() >= 2) {
        const std::string& kind = parts[0];
        if (kind == "cone") return geom::make_cone(n, std::stod(parts[1]));
        if (kind == "ball") return geom::make_ball(n, std::stod(parts[1]));
        if (kind == "disk") return geom::make_disk(n, std::stod(parts[1]));
        if (kind == "cube") return geom::make_cube(n, std::stod(parts[1]));
        if (kind == "cylinder" && parts.size() >= 3)
            return geom::make_cylinder(n, std::stod(parts[1]), std::stod(parts[2]));
    }
    return body_from_json(read_file(spec));
}

std::string density_to_csv(const dspace::ZonalDensity& f, const std::vector<double>& grid) {
    std::ostringstream os;
    os << "s,f,g\n";
    for (double s : grid) {
        double g = f.eval_weighted(s);
        double fv = std::abs(s) < 1.0 ? f.eval_f(s) : 0.0;
        os << fmt17(s) << "," << fmt17(fv) << "," << fmt17(g) << "\n";
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open for writing: " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace zonalval::io
