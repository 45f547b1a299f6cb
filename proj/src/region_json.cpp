#include "wigbound/region_json.hpp"

#include <cmath>
#include <fstream>

#include "wigbound/error.hpp"

namespace wigbound {

using nlohmann::json;

namespace {

double number(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(std::string("region: missing field '") + key + "'");
    const json& v = j.at(key);
    if (!v.is_number()) throw Error(std::string("region: field '") + key + "' must be a number");
    return v.get<double>();
}

double bound(const json& j, const char* key, double infinity) {
    if (!j.contains(key)) throw Error(std::string("region: missing field '") + key + "'");
    const json& v = j.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if ((infinity < 0 && s == "-inf") || (infinity > 0 && (s == "+inf" || s == "inf"))) return infinity;
    }
    throw Error(std::string("region: field '") + key + "' must be a number or " + (infinity < 0 ? "\"-inf\"" : "\"+inf\""));
}

Point point(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(std::string("region: missing field '") + key + "'");
    const json& v = j.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw Error(std::string("region: field '") + key + "' must be [q, p]");
    return {v[0].get<double>(), v[1].get<double>()};
}

PiecewiseLinear polyline(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) throw Error(std::string("region: field '") + key + "' must be a knot list");
    std::vector<std::pair<double, double>> knots;
    for (const json& k : j.at(key)) {
        if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number())
            throw Error(std::string("region: knots in '") + key + "' must be [q, value] pairs");
        knots.emplace_back(k[0].get<double>(), k[1].get<double>());
    }
    return PiecewiseLinear(std::move(knots));
}

json encode_bound(double v) {
    if (v == -kInf) return "-inf";
    if (v == kInf) return "+inf";
    return v;
}

json encode_polyline(const PiecewiseLinear& f) {
    json out = json::array();
    for (const auto& [q, v] : f.knots()) out.push_back({q, v});
    return out;
}

} // namespace

Region region_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw Error("region: expected an object with a string 'type'");
    const std::string type = j.at("type").get<std::string>();
    if (type == "disk") return Region::disk(point(j, "center"), number(j, "radius"));
    if (type == "ellipse") {
        const double angle = j.contains("angle") ? number(j, "angle") : 0.0;
        return Region::ellipse(point(j, "center"), number(j, "semi_major"), number(j, "semi_minor"), angle);
    }
    if (type == "annulus") return Region::annulus(point(j, "center"), number(j, "r_inner"), number(j, "r_outer"));
    if (type == "graph")
        return Region::graph(bound(j, "b", -kInf), bound(j, "c", kInf), polyline(j, "f1"), polyline(j, "f2"));
    if (type == "union") {
        if (!j.contains("parts") || !j.at("parts").is_array()) throw Error("region: union needs a 'parts' array");
        std::vector<Region> parts;
        for (const json& p : j.at("parts")) parts.push_back(region_from_json(p));
        return Region::union_of(std::move(parts));
    }
    throw Error("region: unknown type '" + type + "'");
}

json region_to_json(const Region& s) {
    struct Visitor {
        json operator()(const GraphRegion& g) const {
            return {{"type", "graph"}, {"b", encode_bound(g.b)}, {"c", encode_bound(g.c)},
                    {"f1", encode_polyline(g.f1)}, {"f2", encode_polyline(g.f2)}};
        }
        json operator()(const Disk& d) const {
            return {{"type", "disk"}, {"center", {d.center.q, d.center.p}}, {"radius", d.radius}};
        }
        json operator()(const Ellipse& e) const {
            return {{"type", "ellipse"}, {"center", {e.center.q, e.center.p}}, {"semi_major", e.semi_major},
                    {"semi_minor", e.semi_minor}, {"angle", e.angle}};
        }
        json operator()(const Annulus& a) const {
            return {{"type", "annulus"}, {"center", {a.center.q, a.center.p}}, {"r_inner", a.r_inner},
                    {"r_outer", a.r_outer}};
        }
        json operator()(const UnionRegion& u) const {
            json parts = json::array();
            for (const Region& p : u.parts) parts.push_back(region_to_json(p));
            return {{"type", "union"}, {"parts", parts}};
        }
    };
    return std::visit(Visitor{}, s.shape());
}

Region read_region_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open region file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("region file " + path.string() + ": " + e.what());
    }
    return region_from_json(j);
}

} // namespace wigbound
