#pragma once

// Threefold log Fano components with three boundary divisors, as they occur in
// a four-component maximal fiber. Each family carries a fixed table of
// boundary surfaces, normal classes and mutual restrictions.
//
//   F     P3, three planes H
//   E2    P_{P2}(O(-1)+O); same data as C2_1 with a = 1
//   D3    P_{P1}(O+O(a1)+O(a2)), 0 <= a1 <= a2; boundary H-a1M, H-a2M, M
//   C2_1  P_{P2}(O(-a)+O), a >= 0; boundary H, M, M
//   C2_2  P_{F_n}(O(-ks-(kn+m)f)+O), n,k,m >= 0; boundary H, M_f, M_s

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sncfano/error.hpp"
#include "sncfano/pic_surfaces.hpp"

namespace sncfano {

enum class BundleCase {
    ProjectiveSpace,           // F
    PointBlowup,               // E2
    PlaneBundleOverLine,       // D3
    LineBundleOverPlane,       // C2_1
    LineBundleOverHirzebruch,  // C2_2
};

inline std::string_view case_tag(BundleCase c) {
    switch (c) {
        case BundleCase::ProjectiveSpace: return "F";
        case BundleCase::PointBlowup: return "E2";
        case BundleCase::PlaneBundleOverLine: return "D3";
        case BundleCase::LineBundleOverPlane: return "C2_1";
        case BundleCase::LineBundleOverHirzebruch: return "C2_2";
    }
    return "?";
}

inline BundleCase case_from_tag(std::string_view tag) {
    if (tag == "F") return BundleCase::ProjectiveSpace;
    if (tag == "E2") return BundleCase::PointBlowup;
    if (tag == "D3") return BundleCase::PlaneBundleOverLine;
    if (tag == "C2_1") return BundleCase::LineBundleOverPlane;
    if (tag == "C2_2") return BundleCase::LineBundleOverHirzebruch;
    throw ValidationError("unknown threefold case '" + std::string(tag) + "'");
}

inline constexpr std::array<BundleCase, 5> kAllBundleCases{
    BundleCase::ProjectiveSpace, BundleCase::PointBlowup, BundleCase::PlaneBundleOverLine,
    BundleCase::LineBundleOverPlane, BundleCase::LineBundleOverHirzebruch};

struct BundleComponent {
    BundleCase kind = BundleCase::ProjectiveSpace;
    std::vector<int> params;

    static BundleComponent projective_space() { return {BundleCase::ProjectiveSpace, {}}; }
    static BundleComponent point_blowup() { return {BundleCase::PointBlowup, {}}; }
    static BundleComponent plane_bundle(int a1, int a2) { return {BundleCase::PlaneBundleOverLine, {a1, a2}}; }
    static BundleComponent over_plane(int a) { return {BundleCase::LineBundleOverPlane, {a}}; }
    static BundleComponent over_hirzebruch(int n, int k, int m) {
        return {BundleCase::LineBundleOverHirzebruch, {n, k, m}};
    }

    /// Throws ConstraintError naming the violated inequality.
    void validate() const {
        const auto need = [&](std::size_t count) {
            if (params.size() != count)
                throw ConstraintError(std::string(case_tag(kind)) + " takes " + std::to_string(count) +
                                      " parameters, got " + std::to_string(params.size()));
        };
        switch (kind) {
            case BundleCase::ProjectiveSpace: need(0); break;
            case BundleCase::PointBlowup:
                if (params.size() == 1 && params[0] == 1) break;
                need(0);
                break;
            case BundleCase::PlaneBundleOverLine:
                need(2);
                if (params[0] < 0 || params[0] > params[1])
                    throw ConstraintError("D3 requires 0 <= a1 <= a2 (got a1=" + std::to_string(params[0]) +
                                          ", a2=" + std::to_string(params[1]) + ")");
                break;
            case BundleCase::LineBundleOverPlane:
                need(1);
                if (params[0] < 0) throw ConstraintError("C2_1 requires a >= 0 (got a=" + std::to_string(params[0]) + ")");
                break;
            case BundleCase::LineBundleOverHirzebruch:
                need(3);
                for (std::size_t i = 0; i < 3; ++i)
                    if (params[i] < 0)
                        throw ConstraintError(std::string("C2_2 requires ") + "nkm"[i] + " >= 0 (got " + "nkm"[i] +
                                              "=" + std::to_string(params[i]) + ")");
                break;
        }
    }

    /// E2 as its C2_1(a=1) data; every other case unchanged.
    BundleComponent resolved() const {
        if (kind == BundleCase::PointBlowup) return over_plane(1);
        return *this;
    }

    std::string to_string() const {
        std::string out(case_tag(kind));
        if (params.empty()) return out;
        out += "(";
        for (std::size_t i = 0; i < params.size(); ++i) out += (i ? "," : "") + std::to_string(params[i]);
        return out + ")";
    }

    friend auto operator<=>(const BundleComponent&, const BundleComponent&) = default;
};

enum class BoundarySlot { D12 = 0, D13 = 1, D14 = 2 };

inline constexpr std::array<BoundarySlot, 3> kAllSlots{BoundarySlot::D12, BoundarySlot::D13, BoundarySlot::D14};

inline std::string_view slot_name(BoundarySlot s) {
    switch (s) {
        case BoundarySlot::D12: return "D12";
        case BoundarySlot::D13: return "D13";
        case BoundarySlot::D14: return "D14";
    }
    return "?";
}

inline BoundarySlot slot_from_index(int i) {
    if (i < 0 || i > 2) throw ValidationError("boundary slot index must be 0, 1 or 2, got " + std::to_string(i));
    return static_cast<BoundarySlot>(i);
}

struct BoundaryEntry {
    BoundarySlot slot;
    std::vector<Int> ambient_class;  ///< in picard_basis() of the threefold
    std::string ambient_label;
    SurfaceGeometry surface;
    DivisorClass normal;
    std::map<BoundarySlot, DivisorClass> restrictions;  ///< the other two boundary divisors cut on this one

    DivisorClass restriction_sum() const {
        auto total = DivisorClass::zero(surface);
        for (const auto& [slot, cls] : restrictions) total += cls;
        return total;
    }
};

inline std::vector<std::string> picard_basis(const BundleComponent& c) {
    switch (c.kind) {
        case BundleCase::ProjectiveSpace: return {"H"};
        case BundleCase::PointBlowup:
        case BundleCase::PlaneBundleOverLine:
        case BundleCase::LineBundleOverPlane: return {"H", "M"};
        case BundleCase::LineBundleOverHirzebruch: return {"H", "M_s", "M_f"};
    }
    return {};
}

namespace detail {

inline DivisorClass on_p2(Int d) { return DivisorClass(SurfaceGeometry::projective_plane(), {d}); }
inline DivisorClass on_fn(int n, Int s, Int f) { return DivisorClass(SurfaceGeometry::hirzebruch(n), {s, f}); }

inline BoundaryEntry entry(BoundarySlot slot, std::vector<Int> ambient, std::string label, DivisorClass normal,
                           std::map<BoundarySlot, DivisorClass> restrictions) {
    const auto surface = normal.surface();
    return {slot, std::move(ambient), std::move(label), surface, std::move(normal), std::move(restrictions)};
}

}  // namespace detail

/// The three boundary divisors with their surfaces, normal classes and
/// restrictions. Restriction data is stored, not derived.
inline std::array<BoundaryEntry, 3> boundary_table(const BundleComponent& component) {
    using detail::entry;
    using detail::on_fn;
    using detail::on_p2;
    using enum BoundarySlot;
    component.validate();
    const auto c = component.resolved();
    const auto& p = c.params;
    switch (c.kind) {
        case BundleCase::ProjectiveSpace:
            return {entry(D12, {1}, "H", on_p2(1), {{D13, on_p2(1)}, {D14, on_p2(1)}}),
                    entry(D13, {1}, "H", on_p2(1), {{D12, on_p2(1)}, {D14, on_p2(1)}}),
                    entry(D14, {1}, "H", on_p2(1), {{D12, on_p2(1)}, {D13, on_p2(1)}})};
        case BundleCase::LineBundleOverPlane: {
            const int a = p[0];
            return {entry(D12, {1, 0}, "H", on_p2(-a), {{D13, on_p2(1)}, {D14, on_p2(1)}}),
                    entry(D13, {0, 1}, "M", on_fn(a, 0, 1), {{D12, on_fn(a, 1, 0)}, {D14, on_fn(a, 0, 1)}}),
                    entry(D14, {0, 1}, "M", on_fn(a, 0, 1), {{D12, on_fn(a, 1, 0)}, {D13, on_fn(a, 0, 1)}})};
        }
        case BundleCase::PlaneBundleOverLine: {
            const int a1 = p[0], a2 = p[1];
            return {entry(D12, {1, -a1}, "H-a1M", on_fn(a2, 1, a2 - a1),
                          {{D13, on_fn(a2, 1, 0)}, {D14, on_fn(a2, 0, 1)}}),
                    entry(D13, {1, -a2}, "H-a2M", on_fn(a1, 1, a1 - a2),
                          {{D12, on_fn(a1, 1, 0)}, {D14, on_fn(a1, 0, 1)}}),
                    entry(D14, {0, 1}, "M", on_p2(0), {{D12, on_p2(1)}, {D13, on_p2(1)}})};
        }
        case BundleCase::LineBundleOverHirzebruch: {
            const int n = p[0], k = p[1], m = p[2];
            return {entry(D12, {1, 0, 0}, "H", on_fn(n, -k, -(k * n + m)),
                          {{D13, on_fn(n, 0, 1)}, {D14, on_fn(n, 1, 0)}}),
                    entry(D13, {0, 0, 1}, "M_f", on_fn(k, 0, 0), {{D12, on_fn(k, 1, 0)}, {D14, on_fn(k, 0, 1)}}),
                    entry(D14, {0, 1, 0}, "M_s", on_fn(m, 0, -n), {{D12, on_fn(m, 1, 0)}, {D13, on_fn(m, 0, 1)}})};
        }
        case BundleCase::PointBlowup: break;  // resolved above
    }
    throw ConstraintError("unreachable threefold case");
}

/// Class of the inverse normal bundle on the neighbouring side, i.e. what the
/// d-semistability condition forces N^{-1}_{D/F_j} to be. Closed forms per family.
inline DivisorClass dss_partner_class(const BundleComponent& component, BoundarySlot slot) {
    using detail::on_fn;
    using detail::on_p2;
    component.validate();
    const auto c = component.resolved();
    const auto& p = c.params;
    switch (c.kind) {
        case BundleCase::ProjectiveSpace: return on_p2(3);
        case BundleCase::LineBundleOverPlane: {
            const int a = p[0];
            if (slot == BoundarySlot::D12) return on_p2(2 - a);
            return on_fn(a, 1, 2);
        }
        case BundleCase::PlaneBundleOverLine: {
            const int a1 = p[0], a2 = p[1];
            switch (slot) {
                case BoundarySlot::D12: return on_fn(a2, 2, a2 - a1 + 1);
                case BoundarySlot::D13: return on_fn(a1, 2, a1 - a2 + 1);
                case BoundarySlot::D14: return on_p2(2);
            }
            break;
        }
        case BundleCase::LineBundleOverHirzebruch: {
            const int n = p[0], k = p[1], m = p[2];
            switch (slot) {
                case BoundarySlot::D12: return on_fn(n, 1 - k, 1 - k * n - m);
                case BoundarySlot::D13: return on_fn(k, 1, 1);
                case BoundarySlot::D14: return on_fn(m, 1, 1 - n);
            }
            break;
        }
        case BundleCase::PointBlowup: break;
    }
    throw ValidationError("invalid boundary slot");
}

inline DivisorClass dss_partner_class(const BundleComponent& component, int slot_index) {
    return dss_partner_class(component, slot_from_index(slot_index));
}

struct ComponentInvariants {
    int picard_rank = 0;
    std::vector<SurfaceGeometry> boundary_surfaces;  ///< normalized, sorted
    Int anticanonical_cube = 0;

    friend bool operator==(const ComponentInvariants&, const ComponentInvariants&) = default;
};

namespace detail {

// (-K)^3 of P(E), E of rank 2 over a surface S, with c1 = c1(E), c2 = c2(E):
// -K = 2xi + A, A = -K_S - c1, xi^3 = c1^2 - c2, xi^2.A = c1.A, xi.A^2 = A^2.
inline Int rank2_bundle_cube(const DivisorClass& c1, Int c2) {
    const auto a = -c1.surface().canonical() - c1;
    return 8 * (self_intersection(c1) - c2) + 12 * intersect(c1, a) + 6 * self_intersection(a);
}

// (-K)^3 of P(O+O(a1)+O(a2)) over P1: -K = 3xi + (2-d)F with xi^3 = d = a1+a2.
inline Int plane_bundle_cube(int a1, int a2) {
    const Int d = a1 + a2;
    const Int b = 2 - d;
    return 27 * d + 27 * b;
}

}  // namespace detail

inline ComponentInvariants component_invariants(const BundleComponent& component) {
    const auto table = boundary_table(component);
    const auto c = component.resolved();
    ComponentInvariants inv;
    for (const auto& e : table) inv.boundary_surfaces.push_back(e.surface.normalized());
    std::sort(inv.boundary_surfaces.begin(), inv.boundary_surfaces.end());
    switch (c.kind) {
        case BundleCase::ProjectiveSpace:
            inv.picard_rank = 1;
            inv.anticanonical_cube = 64;
            break;
        case BundleCase::LineBundleOverPlane:
            inv.picard_rank = 2;
            inv.anticanonical_cube = detail::rank2_bundle_cube(detail::on_p2(-c.params[0]), 0);
            break;
        case BundleCase::PlaneBundleOverLine:
            inv.picard_rank = 2;
            inv.anticanonical_cube = detail::plane_bundle_cube(c.params[0], c.params[1]);
            break;
        case BundleCase::LineBundleOverHirzebruch: {
            const int n = c.params[0], k = c.params[1], m = c.params[2];
            inv.picard_rank = 3;
            inv.anticanonical_cube = detail::rank2_bundle_cube(detail::on_fn(n, -k, -(k * n + m)), 0);
            break;
        }
        case BundleCase::PointBlowup: break;
    }
    return inv;
}

}  // namespace sncfano
