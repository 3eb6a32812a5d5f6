#pragma once

// Combinatorial model of an snc special fiber F = sum F_i together with the
// verifiers that every semistable fiber of a Fano family has to pass: strong
// connectedness, the dual complex being a simplex, the triple point formula
// (surface fibers) and the d-semistability condition on double surfaces
// (threefold fibers).

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sncfano/error.hpp"
#include "sncfano/fano3_bundles.hpp"
#include "sncfano/pic_surfaces.hpp"

namespace sncfano {

/// Payload of a component of a curve fiber.
struct RationalCurve {
    friend bool operator==(const RationalCurve&, const RationalCurve&) = default;
};

/// Component known only as a stratum (no geometric data attached).
struct UnspecifiedPayload {
    friend bool operator==(const UnspecifiedPayload&, const UnspecifiedPayload&) = default;
};

using ComponentPayload = std::variant<RationalCurve, SurfacePair, BundleComponent, UnspecifiedPayload>;

struct Component {
    std::string id;
    ComponentPayload payload;

    const SurfacePair* surface_pair() const { return std::get_if<SurfacePair>(&payload); }
    const BundleComponent* bundle() const { return std::get_if<BundleComponent>(&payload); }
};

/// One side of a double locus: the component and the class of the locus in it.
/// For surface fibers the class is a DivisorClass on the component; for
/// threefold fibers it is the ambient class in the component's Picard basis.
struct LocusSide {
    std::string component;
    std::vector<Int> cls;

    friend bool operator==(const LocusSide&, const LocusSide&) = default;
};

struct DoubleLocus {
    std::string id;
    LocusSide a;
    LocusSide b;
    Int triple_points = 0;                   ///< surface fibers: n_C
    std::optional<std::vector<Int>> normal_a;  ///< threefold fibers: N_{D/F_a} on side-a surface
    std::optional<std::vector<Int>> normal_b;
    LatticeIsometry identification = LatticeIsometry::Identity;  ///< side b -> side a

    bool joins(const std::string& x, const std::string& y) const {
        return (a.component == x && b.component == y) || (a.component == y && b.component == x);
    }
    bool touches(const std::string& x) const { return a.component == x || b.component == x; }
};

struct TripleLocus {
    std::array<std::string, 3> components;
    std::string locus;  ///< "point" for surface fibers, "curve" for threefold fibers
};

struct FiberComplex {
    int fiber_dim = 2;
    std::vector<Component> components;
    std::vector<DoubleLocus> double_loci;
    std::vector<TripleLocus> triple_loci;
    Int quadruple_points = 0;

    std::optional<std::size_t> index_of(const std::string& id) const {
        for (std::size_t i = 0; i < components.size(); ++i)
            if (components[i].id == id) return i;
        return std::nullopt;
    }

    const Component& component(const std::string& id) const {
        if (auto i = index_of(id)) return components[*i];
        throw ValidationError("unknown component '" + id + "'");
    }

    std::size_t locus_index(const DoubleLocus& d) const {
        for (std::size_t i = 0; i < double_loci.size(); ++i)
            if (&double_loci[i] == &d || double_loci[i].id == d.id) return i;
        throw ValidationError("double locus '" + d.id + "' is not part of the fiber");
    }

    /// Number of triple loci containing both components.
    Int triple_incidences(const std::string& x, const std::string& y) const {
        Int count = 0;
        for (const auto& t : triple_loci) {
            const bool hx = std::find(t.components.begin(), t.components.end(), x) != t.components.end();
            const bool hy = std::find(t.components.begin(), t.components.end(), y) != t.components.end();
            if (hx && hy) ++count;
        }
        return count;
    }
};

struct Violation {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(const std::string& code) const {
        return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
    }
    std::string summary() const {
        std::string out;
        for (const auto& v : violations) out += v.code + ": " + v.message + "\n";
        return out;
    }
};

/// Thrown by operations that need a valid fiber.
class InvalidFiber : public ValidationError {
public:
    explicit InvalidFiber(ValidationReport report)
        : ValidationError("invalid fiber:\n" + report.summary()), report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// Class of a locus side as a divisor on the component surface.
inline DivisorClass side_class(const FiberComplex& fiber, const LocusSide& side) {
    const auto* pair = fiber.component(side.component).surface_pair();
    if (!pair) throw PreconditionError("component '" + side.component + "' is not a surface pair");
    return DivisorClass(pair->surface, side.cls);
}

/// Matches the loci touching a threefold component to its boundary slots by
/// ambient class. Slots with equal ambient class carry identical data, so the
/// first free one is taken. Returns locus index -> slot, or nothing when the
/// loci do not use each slot exactly once.
inline std::optional<std::map<std::size_t, BoundarySlot>> resolve_slots(const FiberComplex& fiber,
                                                                       const std::string& id) {
    const auto* bundle = fiber.component(id).bundle();
    if (!bundle) return std::nullopt;
    const auto table = boundary_table(*bundle);
    std::array<bool, 3> used{};
    std::map<std::size_t, BoundarySlot> out;
    for (std::size_t i = 0; i < fiber.double_loci.size(); ++i) {
        const auto& d = fiber.double_loci[i];
        if (!d.touches(id)) continue;
        const auto& cls = d.a.component == id ? d.a.cls : d.b.cls;
        bool found = false;
        for (std::size_t s = 0; s < 3 && !found; ++s) {
            if (!used[s] && table[s].ambient_class == cls) {
                used[s] = true;
                out[i] = table[s].slot;
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    if (out.size() != 3) return std::nullopt;
    return out;
}

namespace detail {

inline bool payload_matches_dim(const ComponentPayload& p, int dim) {
    switch (dim) {
        case 1: return std::holds_alternative<RationalCurve>(p);
        case 2: return std::holds_alternative<SurfacePair>(p);
        case 3: return std::holds_alternative<BundleComponent>(p) || std::holds_alternative<UnspecifiedPayload>(p);
    }
    return false;
}

inline std::vector<DivisorClass> sorted(std::vector<DivisorClass> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace detail

/// Checks every structural invariant of the fiber. Never throws on bad data;
/// problems are collected as violations.
inline ValidationReport validate_fiber(const FiberComplex& fiber) {
    ValidationReport report;
    const auto add = [&](std::string code, std::string message) {
        report.violations.push_back({std::move(code), std::move(message)});
    };

    if (fiber.fiber_dim < 1 || fiber.fiber_dim > 3) {
        add("bad dimension", "fiber_dim must be 1, 2 or 3, got " + std::to_string(fiber.fiber_dim));
        return report;
    }
    if (fiber.components.empty()) {
        add("empty fiber", "the fiber has no components");
        return report;
    }

    std::set<std::string> ids;
    bool payloads_ok = true;
    for (const auto& c : fiber.components) {
        if (!ids.insert(c.id).second) add("duplicate component", "component id '" + c.id + "' repeated");
        if (!detail::payload_matches_dim(c.payload, fiber.fiber_dim)) {
            add("payload kind", "component '" + c.id + "' has a payload of the wrong kind for dimension " +
                                    std::to_string(fiber.fiber_dim));
            payloads_ok = false;
            continue;
        }
        try {
            if (const auto* pair = c.surface_pair()) {
                if (!is_log_fano_pair(*pair)) {
                    add("not log Fano", "component '" + c.id + "': -K - D is not ample");
                    payloads_ok = false;
                }
            } else if (const auto* bundle = c.bundle()) {
                bundle->validate();
            }
        } catch (const Error& e) {
            add("invalid payload", "component '" + c.id + "': " + e.what());
            payloads_ok = false;
        }
    }

    if (fiber.fiber_dim == 1 && fiber.components.size() > 2)
        add("curve fiber shape", "a curve fiber consists of at most two rational curves");

    // double loci
    bool loci_ok = true;
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& d : fiber.double_loci) {
        if (!ids.contains(d.a.component) || !ids.contains(d.b.component)) {
            add("unknown component", "double locus '" + d.id + "' references an unknown component");
            loci_ok = false;
            continue;
        }
        if (d.a.component == d.b.component) {
            add("self intersection", "double locus '" + d.id + "' joins a component to itself");
            loci_ok = false;
            continue;
        }
        auto key = std::minmax(d.a.component, d.b.component);
        if (!pairs.insert({key.first, key.second}).second) {
            add("duplicate double locus", "components '" + key.first + "' and '" + key.second +
                                              "' meet in more than one double locus");
            loci_ok = false;
        }
        if (d.triple_points < 0) add("negative triple count", "double locus '" + d.id + "' has n_C < 0");
    }
    for (std::size_t i = 0; i < fiber.components.size(); ++i)
        for (std::size_t j = i + 1; j < fiber.components.size(); ++j) {
            const auto key = std::minmax(fiber.components[i].id, fiber.components[j].id);
            if (!pairs.contains({key.first, key.second}))
                add("not strongly connected",
                    "components '" + key.first + "' and '" + key.second + "' do not meet");
        }

    // triple loci
    if (fiber.fiber_dim == 1 && !fiber.triple_loci.empty())
        add("triple locus in dimension 1", "a curve fiber has no triple points");
    for (const auto& t : fiber.triple_loci) {
        const auto& c = t.components;
        if (!ids.contains(c[0]) || !ids.contains(c[1]) || !ids.contains(c[2]) || c[0] == c[1] || c[0] == c[2] ||
            c[1] == c[2]) {
            add("invalid triple locus", "triple locus needs three distinct known components");
            continue;
        }
        for (auto [x, y] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
            const auto key = std::minmax(c[x], c[y]);
            if (!pairs.contains({key.first, key.second}))
                add("triple locus off double locus", "triple locus on {" + c[0] + "," + c[1] + "," + c[2] +
                                                         "} but '" + key.first + "' and '" + key.second +
                                                         "' have no double locus");
        }
    }
    if (fiber.fiber_dim == 2)
        for (const auto& d : fiber.double_loci) {
            const auto incidences = fiber.triple_incidences(d.a.component, d.b.component);
            if (incidences != d.triple_points)
                add("triple count mismatch", "double locus '" + d.id + "' declares " +
                                                 std::to_string(d.triple_points) + " triple points but lies on " +
                                                 std::to_string(incidences) + " triple loci");
        }

    // quadruple points
    if (fiber.quadruple_points < 0) add("invalid quadruple points", "quadruple point count is negative");
    if (fiber.quadruple_points > 0) {
        if (fiber.fiber_dim != 3)
            add("invalid quadruple points", "quadruple points only occur on threefold fibers");
        else if (fiber.components.size() != 4)
            add("invalid quadruple points", "quadruple points need exactly four components");
        else {
            std::set<std::set<std::string>> triples;
            for (const auto& t : fiber.triple_loci) triples.insert({t.components.begin(), t.components.end()});
            if (triples.size() != 4)
                add("invalid quadruple points", "a quadruple point needs all four triple loci");
        }
    }

    if (!payloads_ok || !loci_ok) return report;

    // boundary matching
    if (fiber.fiber_dim == 2) {
        for (const auto& c : fiber.components) {
            const auto& pair = *c.surface_pair();
            std::vector<DivisorClass> sides;
            bool shape_ok = true;
            for (const auto& d : fiber.double_loci) {
                for (const auto* side : {&d.a, &d.b}) {
                    if (side->component != c.id) continue;
                    if (side->cls.size() != pair.surface.rank()) {
                        add("boundary mismatch", "double locus '" + d.id + "' has a class of the wrong length on '" +
                                                     c.id + "'");
                        shape_ok = false;
                    } else {
                        sides.emplace_back(pair.surface, side->cls);
                    }
                }
            }
            if (shape_ok && detail::sorted(sides) != detail::sorted(pair.boundary_classes()))
                add("boundary mismatch",
                    "boundary curves of '" + c.id + "' are not matched one-to-one with its double loci");
        }
    } else if (fiber.fiber_dim == 3) {
        std::map<std::string, std::map<std::size_t, BoundarySlot>> slots;
        for (const auto& c : fiber.components) {
            if (!c.bundle()) continue;
            auto resolved = resolve_slots(fiber, c.id);
            if (!resolved)
                add("boundary mismatch",
                    "boundary divisors of '" + c.id + "' are not matched one-to-one with its double loci");
            else
                slots[c.id] = *resolved;
        }
        for (std::size_t i = 0; i < fiber.double_loci.size(); ++i) {
            const auto& d = fiber.double_loci[i];
            if (!slots.contains(d.a.component) || !slots.contains(d.b.component)) continue;
            const auto ta = boundary_table(*fiber.component(d.a.component).bundle());
            const auto tb = boundary_table(*fiber.component(d.b.component).bundle());
            const auto& ea = ta[static_cast<std::size_t>(slots[d.a.component][i])];
            const auto& eb = tb[static_cast<std::size_t>(slots[d.b.component][i])];
            if (!ea.surface.isomorphic_to(eb.surface)) {
                add("double surface mismatch", "double locus '" + d.id + "' is " + ea.surface.name() + " on '" +
                                                   d.a.component + "' but " + eb.surface.name() + " on '" +
                                                   d.b.component + "'");
                continue;
            }
            if (d.identification == LatticeIsometry::FactorSwap && !ea.surface.has_swap())
                add("invalid identification", "double locus '" + d.id + "': factor swap on " + ea.surface.name());
            if (d.normal_a && *d.normal_a != ea.normal.vec())
                add("normal class mismatch", "double locus '" + d.id + "': normal_a disagrees with the table of '" +
                                                 d.a.component + "'");
            if (d.normal_b && *d.normal_b != eb.normal.vec())
                add("normal class mismatch", "double locus '" + d.id + "': normal_b disagrees with the table of '" +
                                                 d.b.component + "'");
        }
    }
    return report;
}

/// Vertices are components; m-faces are the strata of m+1 components.
struct DualComplex {
    std::vector<std::string> vertices;
    /// faces[m] lists the m-faces as sorted vertex-index sets (repeats allowed).
    std::vector<std::vector<std::vector<std::size_t>>> faces;

    std::size_t face_count(std::size_t m) const { return m < faces.size() ? faces[m].size() : 0; }
};

inline DualComplex build_dual_complex(const FiberComplex& fiber) {
    auto report = validate_fiber(fiber);
    if (!report.ok()) throw InvalidFiber(std::move(report));

    DualComplex dc;
    for (const auto& c : fiber.components) dc.vertices.push_back(c.id);
    const auto vertex = [&](const std::string& id) { return *fiber.index_of(id); };

    dc.faces.resize(1);
    for (std::size_t i = 0; i < dc.vertices.size(); ++i) dc.faces[0].push_back({i});
    if (!fiber.double_loci.empty()) dc.faces.resize(2);
    for (const auto& d : fiber.double_loci) {
        std::vector<std::size_t> f{vertex(d.a.component), vertex(d.b.component)};
        std::sort(f.begin(), f.end());
        dc.faces[1].push_back(f);
    }
    if (!fiber.triple_loci.empty()) dc.faces.resize(3);
    for (const auto& t : fiber.triple_loci) {
        std::vector<std::size_t> f;
        for (const auto& id : t.components) f.push_back(vertex(id));
        std::sort(f.begin(), f.end());
        dc.faces[2].push_back(f);
    }
    if (fiber.quadruple_points > 0) {
        dc.faces.resize(4);
        for (Int q = 0; q < fiber.quadruple_points; ++q) dc.faces[3].push_back({0, 1, 2, 3});
    }
    return dc;
}

struct SimplexCheck {
    bool is_simplex = false;
    int dimension = -1;  ///< |vertices| - 1 when is_simplex
};

/// True iff every set of m+1 vertices spans exactly one m-face and nothing
/// else is present.
inline SimplexCheck is_simplex(const DualComplex& dc) {
    const std::size_t v = dc.vertices.size();
    if (v == 0 || v > 24) return {};
    for (std::size_t m = 0; m < dc.faces.size(); ++m) {
        std::map<std::vector<std::size_t>, int> counts;
        for (const auto& f : dc.faces[m]) {
            if (f.size() != m + 1) return {};
            if (std::adjacent_find(f.begin(), f.end()) != f.end() || f.back() >= v) return {};
            ++counts[f];
        }
        for (const auto& [f, k] : counts)
            if (k != 1) return {};
        // number of (m+1)-subsets of v vertices
        std::size_t expected = 1;
        if (m + 1 > v) expected = 0;
        else
            for (std::size_t i = 0; i < m + 1; ++i) expected = expected * (v - i) / (i + 1);
        if (counts.size() != expected) return {};
    }
    if (dc.faces.size() < v) return {};
    return {true, static_cast<int>(v) - 1};
}

/// C|_a^2 + C|_b^2 + n_C.
inline Int triple_point_residual(const FiberComplex& fiber, const DoubleLocus& d) {
    if (fiber.fiber_dim != 2)
        throw PreconditionError("the triple point formula applies to surface fibers, not fiber_dim " +
                                std::to_string(fiber.fiber_dim));
    return self_intersection(side_class(fiber, d.a)) + self_intersection(side_class(fiber, d.b)) + d.triple_points;
}

inline bool check_triple_point(const FiberComplex& fiber, const DoubleLocus& d) {
    return triple_point_residual(fiber, d) == 0;
}

/// Degree form of the d-semistability condition on a double curve C:
/// deg N_{C/F_a} + deg N_{C/F_b} + sum_k F_k.C. Normal degrees come from
/// adjunction on the rational curve C (deg N = -2 - K.C) and F_k.C counts the
/// triple loci on C; the stored n_C and C^2 are not consulted.
inline Int dss_degree_residual(const FiberComplex& fiber, const DoubleLocus& d) {
    if (fiber.fiber_dim != 2)
        throw PreconditionError("the degree form applies to surface fibers, not fiber_dim " +
                                std::to_string(fiber.fiber_dim));
    const auto normal_degree = [&](const LocusSide& side) {
        const auto c = side_class(fiber, side);
        return -2 - intersect(c.surface().canonical(), c);
    };
    return normal_degree(d.a) + normal_degree(d.b) + fiber.triple_incidences(d.a.component, d.b.component);
}

namespace detail {

inline std::map<std::size_t, BoundarySlot> require_slots(const FiberComplex& fiber, const DoubleLocus& d,
                                                         const std::string& id) {
    const auto& other = d.a.component == id ? d.b.component : d.a.component;
    if (!fiber.component(id).bundle())
        throw PreconditionError("missing restriction data for components '" + d.a.component + "' and '" +
                                d.b.component + "': '" + id + "' carries no threefold table");
    auto slots = resolve_slots(fiber, id);
    if (!slots)
        throw PreconditionError("missing restriction data for components '" + id + "' and '" + other +
                                "': boundary slots of '" + id + "' cannot be matched");
    return *slots;
}

}  // namespace detail

/// N_{D/F_a} + iota(N_{D/F_b}) + sum_k F_k|_D on the side-a surface, where
/// iota is the locus identification and the restrictions come from the table
/// of component a.
inline DivisorClass dss_surface_residual(const FiberComplex& fiber, const DoubleLocus& d) {
    if (fiber.fiber_dim != 3)
        throw PreconditionError("d-semistability on double surfaces needs fiber_dim 3, got " +
                                std::to_string(fiber.fiber_dim));
    const auto index = fiber.locus_index(d);
    const auto slots_a = detail::require_slots(fiber, d, d.a.component);
    const auto slots_b = detail::require_slots(fiber, d, d.b.component);
    const auto table_a = boundary_table(*fiber.component(d.a.component).bundle());
    const auto table_b = boundary_table(*fiber.component(d.b.component).bundle());
    const auto& ea = table_a[static_cast<std::size_t>(slots_a.at(index))];
    const auto& eb = table_b[static_cast<std::size_t>(slots_b.at(index))];
    if (!ea.surface.isomorphic_to(eb.surface))
        throw PreconditionError("double locus '" + d.id + "' is " + ea.surface.name() + " on one side and " +
                                eb.surface.name() + " on the other");

    const auto normal_a = d.normal_a ? DivisorClass(ea.surface, *d.normal_a) : ea.normal;
    const auto normal_b = d.normal_b ? DivisorClass(eb.surface, *d.normal_b) : eb.normal;
    auto residual = normal_a + transport(apply(d.identification, normal_b), ea.surface);
    for (const auto& [other_index, slot] : slots_a) {
        if (other_index == index) continue;
        residual += ea.restrictions.at(slot);
    }
    return residual;
}

inline bool check_d_semistability_surface(const FiberComplex& fiber, const DoubleLocus& d) {
    return dss_surface_residual(fiber, d).is_zero();
}

enum class ContractionType { E1, E2, E3, E5, Unknown };

inline std::string_view to_string(ContractionType t) {
    switch (t) {
        case ContractionType::E1: return "E1";
        case ContractionType::E2: return "E2";
        case ContractionType::E3: return "E3";
        case ContractionType::E5: return "E5";
        case ContractionType::Unknown: return "Unknown";
    }
    return "?";
}

/// Image of the component under its divisorial contraction.
inline std::string_view contraction_target(ContractionType t) {
    switch (t) {
        case ContractionType::E1: return "P1";
        case ContractionType::E2: return "smooth point";
        case ContractionType::E3: return "ordinary double point";
        case ContractionType::E5: return "point of type 1/2(1,1,1)";
        case ContractionType::Unknown: return "?";
    }
    return "?";
}

/// Divisorial contraction type of a surface component, read off its log del
/// Pezzo shape.
inline ContractionType classify_contraction(const Component& c) {
    const auto* raw = c.surface_pair();
    if (!raw || raw->boundary.empty()) return ContractionType::Unknown;
    const auto p = normalize(*raw);
    const auto d = p.boundary_sum();
    switch (p.surface.kind()) {
        case SurfaceKind::ProjectivePlane:
            if (d[0] == 1) return ContractionType::E2;
            if (d[0] == 2) return ContractionType::E5;
            return ContractionType::Unknown;
        case SurfaceKind::QuadricSurface: {
            if (p.boundary.size() == 1 && p.boundary[0].cls[0] == 1 && p.boundary[0].cls[1] == 1)
                return ContractionType::E3;
            // rulings only, at most one of each: F_0 with a section (and a fiber)
            const bool rulings = std::all_of(p.boundary.begin(), p.boundary.end(), [](const BoundaryCurve& b) {
                return b.cls[0] + b.cls[1] == 1;
            });
            if (rulings && d[0] <= 1 && d[1] <= 1) return ContractionType::E1;
            return ContractionType::Unknown;
        }
        case SurfaceKind::Hirzebruch: {
            const int n = p.surface.index();
            int sections = 0, fibers = 0;
            for (const auto& b : p.boundary) {
                if (b.cls[0] == 1 && (b.cls[1] == 0 || b.cls[1] == n)) ++sections;
                else if (b.cls[0] == 0 && b.cls[1] == 1) ++fibers;
                else return ContractionType::Unknown;
            }
            if (sections == 1 && fibers <= 1) return ContractionType::E1;
            return ContractionType::Unknown;
        }
    }
    return ContractionType::Unknown;
}

/// sum_i (-K_{F_i} - D_i)^2, i.e. sum over components of (-K_X|_{F_i})^2.
inline Int anticanonical_degree(const FiberComplex& fiber) {
    if (fiber.fiber_dim != 2)
        throw PreconditionError("anticanonical degree is defined here for surface fibers only");
    Int total = 0;
    for (const auto& c : fiber.components) {
        const auto* p = c.surface_pair();
        if (!p) throw PreconditionError("component '" + c.id + "' is not a surface pair");
        total += self_intersection(-p->surface.canonical() - p->boundary_sum());
    }
    return total;
}

}  // namespace sncfano
