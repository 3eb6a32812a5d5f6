#pragma once

// Bounded exhaustive search for maximal degenerations of Fano threefolds:
// four components from the threefold tables, glued pairwise along all six
// double surfaces, every gluing satisfying d-semistability. Also the
// flag-blow-up fibers realizing each simplex.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sncfano/canonical.hpp"
#include "sncfano/fano3_bundles.hpp"
#include "sncfano/parallel.hpp"
#include "sncfano/snc_fiber.hpp"

namespace sncfano {

struct Max3SearchConfig {
    int param_bound = 4;
    /// Case tags to draw components from; empty = all. "E2" alone contributes C2_1(1).
    std::set<std::string> case_filter;
    /// Components that must occur in every solution (multiset inclusion).
    std::vector<BundleComponent> required;
    int threads = 0;

    void validate() const {
        if (param_bound < 1) throw ConstraintError("param_bound must be >= 1 (got " + std::to_string(param_bound) + ")");
        for (const auto& tag : case_filter) (void)case_from_tag(tag);
        for (const auto& c : required) c.validate();
    }
};

struct LocusCertificate {
    std::string locus;
    std::string surface;
    LatticeIsometry identification = LatticeIsometry::Identity;
    std::vector<Int> residual;
    bool passed = false;
};

struct MaxSolution {
    std::array<BundleComponent, 4> components;
    std::vector<DoubleLocus> loci;
    std::vector<LocusCertificate> certificate;

    FiberComplex to_fiber() const {
        FiberComplex f;
        f.fiber_dim = 3;
        for (std::size_t i = 0; i < 4; ++i) f.components.push_back({detail::component_name(i), components[i]});
        f.double_loci = loci;
        for (const auto& t : std::vector<std::array<int, 3>>{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}})
            f.triple_loci.push_back({{detail::component_name(t[0]), detail::component_name(t[1]),
                                      detail::component_name(t[2])},
                                     "curve"});
        f.quadruple_points = 1;
        return f;
    }
};

/// Per-locus d-semistability records of a dim-3 fiber.
inline std::vector<LocusCertificate> certify(const FiberComplex& f) {
    std::vector<LocusCertificate> out;
    for (const auto& d : f.double_loci) {
        LocusCertificate c;
        c.locus = d.id;
        c.identification = d.identification;
        const auto slots = resolve_slots(f, d.a.component);
        if (slots) {
            const auto table = boundary_table(*f.component(d.a.component).bundle());
            c.surface = table[static_cast<std::size_t>(slots->at(f.locus_index(d)))].surface.normalized().name();
        }
        try {
            const auto r = dss_surface_residual(f, d);
            c.residual = r.vec();
            c.passed = r.is_zero();
        } catch (const Error&) {
            c.passed = false;
        }
        out.push_back(std::move(c));
    }
    return out;
}

namespace detail {

/// Boundary slot data flattened for the search.
struct SlotData {
    SurfaceGeometry surface;  ///< normalized
    std::vector<Int> normal;
    std::vector<Int> restriction_sum;
};

/// The identification (identity first) under which a glues to b, if any.
inline std::optional<LatticeIsometry> gluing(const SlotData& a, const SlotData& b) {
    if (a.surface != b.surface) return std::nullopt;
    for (auto iso : automorphisms(a.surface)) {
        const auto nb = apply(iso, DivisorClass(b.surface, b.normal));
        bool zero = true;
        for (std::size_t i = 0; i < a.normal.size(); ++i)
            if (a.normal[i] + nb[i] + a.restriction_sum[i] != 0) zero = false;
        if (zero) return iso;
    }
    return std::nullopt;
}

inline std::array<SlotData, 3> slot_data(const BundleComponent& c) {
    const auto table = boundary_table(c);
    std::array<SlotData, 3> out;
    for (std::size_t s = 0; s < 3; ++s) {
        const auto surface = table[s].surface.normalized();
        out[s] = {surface, table[s].normal.vec(), table[s].restriction_sum().vec()};
    }
    return out;
}

/// slot[i][j]: slot index of component i facing component j.
using SlotAssignment = std::array<std::array<int, 4>, 4>;

inline FiberComplex assemble(const std::array<BundleComponent, 4>& comps, const SlotAssignment& slot) {
    MaxSolution s;
    s.components = comps;
    std::array<std::array<BoundaryEntry, 3>, 4> tables{boundary_table(comps[0]), boundary_table(comps[1]),
                                                       boundary_table(comps[2]), boundary_table(comps[3])};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const auto& ea = tables[i][slot[i][j]];
            const auto& eb = tables[j][slot[j][i]];
            DoubleLocus d;
            d.id = "D" + std::to_string(i + 1) + std::to_string(j + 1);
            d.a = {component_name(i), ea.ambient_class};
            d.b = {component_name(j), eb.ambient_class};
            d.normal_a = ea.normal.vec();
            d.normal_b = eb.normal.vec();
            const SlotData sa{ea.surface.normalized(), ea.normal.vec(), ea.restriction_sum().vec()};
            const SlotData sb{eb.surface.normalized(), eb.normal.vec(), eb.restriction_sum().vec()};
            d.identification = gluing(sa, sb).value_or(LatticeIsometry::Identity);
            s.loci.push_back(std::move(d));
        }
    return s.to_fiber();
}

inline MaxSolution solution_from_fiber(const FiberComplex& f) {
    MaxSolution s;
    for (std::size_t i = 0; i < 4; ++i) s.components[i] = *f.components[i].bundle();
    s.loci = f.double_loci;
    s.certificate = certify(f);
    return s;
}

inline bool contains_multiset(std::vector<BundleComponent> have, const std::vector<BundleComponent>& need) {
    for (const auto& c : need) {
        const auto r = c.resolved();
        auto it = std::find(have.begin(), have.end(), r);
        if (it == have.end()) return false;
        have.erase(it);
    }
    return true;
}

}  // namespace detail

/// Every component within the bound that the filter admits, in a fixed order.
inline std::vector<BundleComponent> max3_candidates(const Max3SearchConfig& cfg) {
    const auto wanted = [&](const char* tag) { return cfg.case_filter.empty() || cfg.case_filter.contains(tag); };
    const int b = cfg.param_bound;
    std::vector<BundleComponent> out;
    if (wanted("F")) out.push_back(BundleComponent::projective_space());
    if (wanted("C2_1")) {
        for (int a = 0; a <= b; ++a) out.push_back(BundleComponent::over_plane(a));
    } else if (cfg.case_filter.contains("E2")) {
        out.push_back(BundleComponent::over_plane(1));
    }
    if (wanted("D3"))
        for (int a1 = 0; a1 <= b; ++a1)
            for (int a2 = a1; a2 <= b; ++a2) out.push_back(BundleComponent::plane_bundle(a1, a2));
    if (wanted("C2_2"))
        for (int n = 0; n <= b; ++n)
            for (int k = 0; k <= b; ++k)
                for (int m = 0; m <= b; ++m) out.push_back(BundleComponent::over_hirzebruch(n, k, m));
    return out;
}

/// Solutions up to isomorphism, sorted by canonical serialization.
inline std::vector<MaxSolution> search_maximal(const Max3SearchConfig& cfg) {
    cfg.validate();
    const auto candidates = max3_candidates(cfg);
    std::vector<std::array<detail::SlotData, 3>> data;
    for (const auto& c : candidates) data.push_back(detail::slot_data(c));

    // (candidate, slot) grouped by (surface, normal) for partner lookup
    std::map<std::pair<SurfaceGeometry, std::vector<Int>>, std::vector<std::pair<std::size_t, int>>> index;
    for (std::size_t c = 0; c < data.size(); ++c)
        for (int s = 0; s < 3; ++s) index[{data[c][s].surface, data[c][s].normal}].push_back({c, s});

    // partners of a slot: the normal is forced by the equation up to the isometry
    const auto partners = [&](const detail::SlotData& a) {
        std::vector<std::pair<std::size_t, int>> out;
        std::set<std::vector<Int>> seen;
        for (auto iso : automorphisms(a.surface)) {
            std::vector<Int> need(a.normal.size());
            for (std::size_t i = 0; i < need.size(); ++i) need[i] = -a.normal[i] - a.restriction_sum[i];
            need = apply(iso, DivisorClass(a.surface, need)).vec();
            if (!seen.insert(need).second) continue;
            auto it = index.find({a.surface, need});
            if (it != index.end()) out.insert(out.end(), it->second.begin(), it->second.end());
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    const auto glues = [&](std::size_t ci, int si, std::size_t cj, int sj) {
        return detail::gluing(data[ci][si], data[cj][sj]).has_value();
    };

    // other two slots of a component once one slot is fixed
    const auto rest = [](int fixed) {
        std::array<int, 2> r{};
        int k = 0;
        for (int s = 0; s < 3; ++s)
            if (s != fixed) r[k++] = s;
        return r;
    };

    using Found = std::vector<std::pair<std::array<std::size_t, 4>, detail::SlotAssignment>>;
    const auto work = [&](std::size_t c0) {
        Found found;
        detail::SlotAssignment slot{};
        std::array<int, 3> perm{0, 1, 2};
        do {
            slot[0][1] = perm[0], slot[0][2] = perm[1], slot[0][3] = perm[2];
            for (auto [c1, s10] : partners(data[c0][slot[0][1]])) {
                if (c1 < c0) continue;
                for (int o1 = 0; o1 < 2; ++o1) {
                    const auto r1 = rest(s10);
                    slot[1][0] = s10, slot[1][2] = r1[o1], slot[1][3] = r1[1 - o1];
                    for (auto [c2, s20] : partners(data[c0][slot[0][2]])) {
                        if (c2 < c1) continue;
                        for (int o2 = 0; o2 < 2; ++o2) {
                            const auto r2 = rest(s20);
                            slot[2][0] = s20, slot[2][1] = r2[o2], slot[2][3] = r2[1 - o2];
                            if (!glues(c1, slot[1][2], c2, slot[2][1])) continue;
                            for (auto [c3, s30] : partners(data[c0][slot[0][3]])) {
                                if (c3 < c2) continue;
                                for (int o3 = 0; o3 < 2; ++o3) {
                                    const auto r3 = rest(s30);
                                    slot[3][0] = s30, slot[3][1] = r3[o3], slot[3][2] = r3[1 - o3];
                                    if (glues(c1, slot[1][3], c3, slot[3][1]) && glues(c2, slot[2][3], c3, slot[3][2]))
                                        found.push_back({{c0, c1, c2, c3}, slot});
                                }
                            }
                        }
                    }
                }
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return found;
    };
    const auto chunks = parallel_map<Found>(candidates.size(), resolve_threads(cfg.threads), work);

    std::map<std::string, MaxSolution> unique;
    for (const auto& chunk : chunks)
        for (const auto& [tuple, slot] : chunk) {
            const std::array<BundleComponent, 4> comps{candidates[tuple[0]], candidates[tuple[1]],
                                                       candidates[tuple[2]], candidates[tuple[3]]};
            if (!detail::contains_multiset({comps.begin(), comps.end()}, cfg.required)) continue;
            const auto fiber = detail::assemble(comps, slot);
            if (!validate_fiber(fiber).ok()) continue;
            bool all = true;
            for (const auto& d : fiber.double_loci) all = all && check_d_semistability_surface(fiber, d);
            if (!all) continue;
            auto canonical = canonical_form(fiber);
            auto key = to_json(canonical).dump();
            if (!unique.contains(key)) unique.emplace(std::move(key), detail::solution_from_fiber(canonical));
        }
    std::vector<MaxSolution> out;
    for (auto& [key, s] : unique) out.push_back(std::move(s));
    return out;
}

/// Invariants of the blow-up of P3 in a point and then the strict transform of
/// a line through it, from the blow-up formulas
///   (-K)^3 drops by 8 for a point and by 2(-K.C) - 2g + 2 for a curve C:
///   64 - 8 = 56, then -K.C = 4 - 2 = 2, g = 0, so 56 - 4 - 2 = 50.
/// Picard rank 1 + 2 = 3. Boundary: the point's exceptional plane blown up in
/// a point (F1), a plane through the line blown up in a point (F1), and the
/// exceptional divisor over the line, P(O(1) + O(1)) = P1xP1.
inline ComponentInvariants flag_blowup_invariants() {
    ComponentInvariants inv;
    inv.picard_rank = 3;
    inv.anticanonical_cube = 50;
    inv.boundary_surfaces = {SurfaceGeometry::hirzebruch(1), SurfaceGeometry::hirzebruch(1), SurfaceGeometry::quadric()};
    std::sort(inv.boundary_surfaces.begin(), inv.boundary_surfaces.end());
    return inv;
}

namespace detail {

inline FiberComplex combinatorial_simplex(int n, int k) {
    FiberComplex f;
    f.fiber_dim = n;
    const auto payload = [&]() -> ComponentPayload {
        if (n == 1) return RationalCurve{};
        return UnspecifiedPayload{};
    };
    for (int i = 0; i <= k; ++i) f.components.push_back({component_name(i), payload()});
    for (int i = 0; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
            DoubleLocus d;
            d.id = "D" + std::to_string(i + 1) + std::to_string(j + 1);
            d.a = {component_name(i), {}};
            d.b = {component_name(j), {}};
            f.double_loci.push_back(d);
        }
    if (n >= 2)
        for (int i = 0; i <= k; ++i)
            for (int j = i + 1; j <= k; ++j)
                for (int l = j + 1; l <= k; ++l)
                    f.triple_loci.push_back({{component_name(i), component_name(j), component_name(l)},
                                             n == 2 ? "point" : "curve"});
    if (n == 3 && k == 3) f.quadruple_points = 1;
    return f;
}

}  // namespace detail

/// Special fiber of the degeneration of P^n obtained by blowing up a flag in
/// the central fiber of the trivial family; its dual complex is the k-simplex.
inline FiberComplex flag_degeneration(int n, int k) {
    if (n < 1 || n > 3 || k < 0 || k > n)
        throw ConstraintError("flag degeneration needs 1 <= n <= 3 and 0 <= k <= n (got n=" + std::to_string(n) +
                              ", k=" + std::to_string(k) + ")");
    if (n == 2) {
        const auto p2 = SurfaceGeometry::projective_plane();
        const auto f1 = SurfaceGeometry::hirzebruch(1);
        FiberComplex f;
        f.fiber_dim = 2;
        if (k == 0) {
            f.components = {{"F1", SurfacePair{p2, {}}}};
        } else if (k == 1) {
            const auto a = make_surface_pair(p2, {"l"});
            const auto b = make_surface_pair(f1, {"s"});
            f.components = {{"F1", a}, {"F2", b}};
            f.double_loci.push_back({"D12", {"F1", {1}}, {"F2", {1, 0}}, 0, {}, {}, LatticeIsometry::Identity});
        } else {
            // every component meets its successor along s and its predecessor along f
            const auto p = make_surface_pair(f1, {"s", "f"});
            f.components = {{"F1", p}, {"F2", p}, {"F3", p}};
            f.double_loci = {{"D12", {"F1", {1, 0}}, {"F2", {0, 1}}, 1, {}, {}, LatticeIsometry::Identity},
                             {"D23", {"F2", {1, 0}}, {"F3", {0, 1}}, 1, {}, {}, LatticeIsometry::Identity},
                             {"D13", {"F1", {0, 1}}, {"F3", {1, 0}}, 1, {}, {}, LatticeIsometry::Identity}};
            f.triple_loci.push_back({{"F1", "F2", "F3"}, "point"});
        }
        return canonical_form(f);
    }
    if (n == 3 && k == 3) {
        const auto c = BundleComponent::over_hirzebruch(1, 1, 0);
        // slots: 0 = H, 1 = M_f, 2 = M_s. M_s pairs {1,3} and {2,4}; H of i faces M_f of i+1 (mod 4)
        detail::SlotAssignment slot{};
        slot[0][1] = 0, slot[0][2] = 2, slot[0][3] = 1;
        slot[1][0] = 1, slot[1][2] = 0, slot[1][3] = 2;
        slot[2][0] = 2, slot[2][1] = 1, slot[2][3] = 0;
        slot[3][0] = 0, slot[3][1] = 2, slot[3][2] = 1;
        return canonical_form(detail::assemble({c, c, c, c}, slot));
    }
    return detail::combinatorial_simplex(n, k);
}

}  // namespace sncfano
