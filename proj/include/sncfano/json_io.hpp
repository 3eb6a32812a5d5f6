#pragma once

// JSON encoding of surfaces, classes, pairs, threefold components and fibers.
// Field names are part of the file format:
//
//   surface      {"kind": "P2"|"P1xP1"|"Fn", "n": int}          ("n" only for Fn)
//   class        {"surface": surface, "coeffs": [int...]}
//   pair         {"surface": surface, "boundary": [{"label": str, "coeffs": [int...]}]}
//   threefold    {"case": "F"|"E2"|"D3"|"C2_1"|"C2_2", "params": [int...]}
//   fiber        {"fiber_dim", "components", "double_loci", "triple_loci", "quadruple_points"}
//
// Readers report problems as SchemaError carrying a JSON-pointer-like path.

#include <string>
#include <vector>

#include <json.hpp>

#include "sncfano/error.hpp"
#include "sncfano/fano3_bundles.hpp"
#include "sncfano/pic_surfaces.hpp"
#include "sncfano/snc_fiber.hpp"

namespace sncfano {

using Json = nlohmann::json;

class SchemaError : public ValidationError {
public:
    SchemaError(std::string path, const std::string& what)
        : ValidationError(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// ---- writers ---------------------------------------------------------------

inline Json to_json(const SurfaceGeometry& s) {
    switch (s.kind()) {
        case SurfaceKind::ProjectivePlane: return {{"kind", "P2"}};
        case SurfaceKind::QuadricSurface: return {{"kind", "P1xP1"}};
        case SurfaceKind::Hirzebruch: return {{"kind", "Fn"}, {"n", s.index()}};
    }
    return {};
}

inline Json to_json(const DivisorClass& d) { return {{"surface", to_json(d.surface())}, {"coeffs", d.vec()}}; }

inline Json to_json(const SurfacePair& p) {
    Json boundary = Json::array();
    for (const auto& c : p.boundary) boundary.push_back({{"label", c.label}, {"coeffs", c.cls.vec()}});
    return {{"surface", to_json(p.surface)}, {"boundary", boundary}};
}

inline Json to_json(const BundleComponent& c) {
    return {{"case", std::string(case_tag(c.kind))}, {"params", c.params}};
}

inline Json payload_to_json(const ComponentPayload& payload) {
    if (std::holds_alternative<RationalCurve>(payload)) return "rational_curve";
    if (const auto* p = std::get_if<SurfacePair>(&payload)) return to_json(*p);
    if (const auto* b = std::get_if<BundleComponent>(&payload)) return to_json(*b);
    return nullptr;
}

inline Json to_json(const FiberComplex& f) {
    Json out;
    out["fiber_dim"] = f.fiber_dim;
    out["components"] = Json::array();
    for (const auto& c : f.components) out["components"].push_back({{"id", c.id}, {"payload", payload_to_json(c.payload)}});
    out["double_loci"] = Json::array();
    for (const auto& d : f.double_loci) {
        Json j{{"id", d.id},
               {"a", {{"component", d.a.component}, {"class", d.a.cls}}},
               {"b", {{"component", d.b.component}, {"class", d.b.cls}}}};
        if (f.fiber_dim == 2) j["triple_points"] = d.triple_points;
        if (f.fiber_dim == 3) {
            if (d.normal_a) j["normal_a"] = *d.normal_a;
            if (d.normal_b) j["normal_b"] = *d.normal_b;
            j["identification"] = std::string(to_string(d.identification));
        }
        out["double_loci"].push_back(j);
    }
    out["triple_loci"] = Json::array();
    for (const auto& t : f.triple_loci) out["triple_loci"].push_back({{"components", t.components}, {"locus", t.locus}});
    if (f.fiber_dim == 3) out["quadruple_points"] = f.quadruple_points;
    return out;
}

// ---- readers ---------------------------------------------------------------

namespace detail {

inline const Json& field(const Json& j, const std::string& path, const char* name) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(name);
    if (it == j.end()) throw SchemaError(path + "/" + name, "missing field");
    return *it;
}

inline const Json* optional_field(const Json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end() || it->is_null()) return nullptr;
    return &*it;
}

inline Int read_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<Int>();
}

inline std::string read_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

inline std::vector<Int> read_ints(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of integers");
    std::vector<Int> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_int(j[i], path + "/" + std::to_string(i)));
    return out;
}

inline const Json& read_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    return j;
}

template <class F>
auto rethrow_at(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(path, e.what());
    }
}

}  // namespace detail

inline SurfaceGeometry surface_from_json(const Json& j, const std::string& path = "") {
    const auto kind = detail::read_string(detail::field(j, path, "kind"), path + "/kind");
    if (kind == "P2") return SurfaceGeometry::projective_plane();
    if (kind == "P1xP1") return SurfaceGeometry::quadric();
    if (kind == "Fn") {
        const auto n = detail::read_int(detail::field(j, path, "n"), path + "/n");
        if (n < 0 || n > 1000000) throw SchemaError(path + "/n", "Hirzebruch index out of range");
        return SurfaceGeometry::hirzebruch(static_cast<int>(n));
    }
    throw SchemaError(path + "/kind", "unknown surface kind '" + kind + "'");
}

inline DivisorClass class_from_json(const Json& j, const std::string& path = "") {
    const auto s = surface_from_json(detail::field(j, path, "surface"), path + "/surface");
    auto coeffs = detail::read_ints(detail::field(j, path, "coeffs"), path + "/coeffs");
    return detail::rethrow_at(path + "/coeffs", [&] { return DivisorClass(s, coeffs); });
}

inline SurfacePair pair_from_json(const Json& j, const std::string& path = "") {
    SurfacePair p{surface_from_json(detail::field(j, path, "surface"), path + "/surface"), {}};
    const auto& boundary = detail::read_array(detail::field(j, path, "boundary"), path + "/boundary");
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        const auto at = path + "/boundary/" + std::to_string(i);
        auto coeffs = detail::read_ints(detail::field(boundary[i], at, "coeffs"), at + "/coeffs");
        auto cls = detail::rethrow_at(at + "/coeffs", [&] { return DivisorClass(p.surface, coeffs); });
        std::string label;
        if (const auto* l = detail::optional_field(boundary[i], "label")) label = detail::read_string(*l, at + "/label");
        else label = curve_name(cls);
        p.boundary.push_back({label, cls});
    }
    return p;
}

inline BundleComponent bundle_from_json(const Json& j, const std::string& path = "") {
    const auto tag = detail::read_string(detail::field(j, path, "case"), path + "/case");
    BundleComponent c;
    c.kind = detail::rethrow_at(path + "/case", [&] { return case_from_tag(tag); });
    if (const auto* params = detail::optional_field(j, "params"))
        for (auto v : detail::read_ints(*params, path + "/params")) c.params.push_back(static_cast<int>(v));
    return c;
}

inline ComponentPayload payload_from_json(const Json& j, int dim, const std::string& path) {
    switch (dim) {
        case 1:
            if (j.is_null() || j == "rational_curve") return RationalCurve{};
            throw SchemaError(path, "curve fiber payload must be \"rational_curve\"");
        case 2: return pair_from_json(j, path);
        case 3:
            if (j.is_null()) return UnspecifiedPayload{};
            return bundle_from_json(j, path);
    }
    throw SchemaError(path, "unsupported fiber dimension");
}

inline FiberComplex fiber_from_json(const Json& j) {
    FiberComplex f;
    const auto dim = detail::read_int(detail::field(j, "", "fiber_dim"), "/fiber_dim");
    if (dim < 1 || dim > 3) throw SchemaError("/fiber_dim", "must be 1, 2 or 3");
    f.fiber_dim = static_cast<int>(dim);

    const auto& comps = detail::read_array(detail::field(j, "", "components"), "/components");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const auto at = "/components/" + std::to_string(i);
        Component c;
        c.id = detail::read_string(detail::field(comps[i], at, "id"), at + "/id");
        const auto it = comps[i].find("payload");
        c.payload = payload_from_json(it == comps[i].end() ? Json(nullptr) : *it, f.fiber_dim, at + "/payload");
        f.components.push_back(std::move(c));
    }

    const auto read_side = [](const Json& s, const std::string& at) {
        LocusSide side;
        side.component = detail::read_string(detail::field(s, at, "component"), at + "/component");
        if (const auto* cls = detail::optional_field(s, "class")) side.cls = detail::read_ints(*cls, at + "/class");
        return side;
    };
    if (const auto* loci = detail::optional_field(j, "double_loci")) {
        detail::read_array(*loci, "/double_loci");
        for (std::size_t i = 0; i < loci->size(); ++i) {
            const auto at = "/double_loci/" + std::to_string(i);
            const auto& l = (*loci)[i];
            DoubleLocus d;
            d.id = detail::read_string(detail::field(l, at, "id"), at + "/id");
            d.a = read_side(detail::field(l, at, "a"), at + "/a");
            d.b = read_side(detail::field(l, at, "b"), at + "/b");
            if (const auto* t = detail::optional_field(l, "triple_points")) d.triple_points = detail::read_int(*t, at + "/triple_points");
            if (const auto* n = detail::optional_field(l, "normal_a")) d.normal_a = detail::read_ints(*n, at + "/normal_a");
            if (const auto* n = detail::optional_field(l, "normal_b")) d.normal_b = detail::read_ints(*n, at + "/normal_b");
            if (const auto* iso = detail::optional_field(l, "identification")) {
                const auto v = detail::read_string(*iso, at + "/identification");
                if (v == "id") d.identification = LatticeIsometry::Identity;
                else if (v == "swap") d.identification = LatticeIsometry::FactorSwap;
                else throw SchemaError(at + "/identification", "expected \"id\" or \"swap\"");
            }
            f.double_loci.push_back(std::move(d));
        }
    }

    if (const auto* triples = detail::optional_field(j, "triple_loci")) {
        detail::read_array(*triples, "/triple_loci");
        for (std::size_t i = 0; i < triples->size(); ++i) {
            const auto at = "/triple_loci/" + std::to_string(i);
            const auto& t = (*triples)[i];
            const auto& ids = detail::read_array(detail::field(t, at, "components"), at + "/components");
            if (ids.size() != 3) throw SchemaError(at + "/components", "expected exactly three component ids");
            TripleLocus tl;
            for (std::size_t k = 0; k < 3; ++k)
                tl.components[k] = detail::read_string(ids[k], at + "/components/" + std::to_string(k));
            if (const auto* l = detail::optional_field(t, "locus")) tl.locus = detail::read_string(*l, at + "/locus");
            f.triple_loci.push_back(std::move(tl));
        }
    }
    if (const auto* q = detail::optional_field(j, "quadruple_points"))
        f.quadruple_points = detail::read_int(*q, "/quadruple_points");
    return f;
}

}  // namespace sncfano
