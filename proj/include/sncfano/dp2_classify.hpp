#pragma once

// Semistable degenerations of del Pezzo surfaces: every special fiber with a
// simplex dual complex, assembled from log del Pezzo pairs of the catalog and
// constrained by the triple point formula.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sncfano/canonical.hpp"
#include "sncfano/parallel.hpp"
#include "sncfano/pic_surfaces.hpp"
#include "sncfano/snc_fiber.hpp"

namespace sncfano {

struct Dp2SearchConfig {
    int n_max = 4;
    std::set<int> allow_components{2, 3};
    bool dedup = true;
    int threads = 0;  ///< 0 = SNC_FANO_THREADS or hardware count

    void validate() const {
        if (n_max < 0) throw ConstraintError("n_max must be >= 0 (got " + std::to_string(n_max) + ")");
        for (int k : allow_components)
            if (k != 2 && k != 3)
                throw ConstraintError("component count must be 2 or 3 (got " + std::to_string(k) + ")");
    }
};

/// Orders contraction types as the rows of the classification table do.
inline int contraction_rank(ContractionType t) {
    switch (t) {
        case ContractionType::E2: return 0;
        case ContractionType::E5: return 1;
        case ContractionType::E3: return 2;
        case ContractionType::E1: return 3;
        case ContractionType::Unknown: break;
    }
    return 4;
}

using Dp2SortKey = std::tuple<std::size_t, std::vector<int>, std::vector<std::string>, std::string>;

/// Sort key of an output fiber: component count, sorted contraction ranks,
/// sorted surface names (so F_n rows precede P1xP1 rows), canonical
/// serialization.
inline Dp2SortKey dp2_sort_key(const FiberComplex& f) {
    std::vector<int> ranks;
    std::vector<std::string> names;
    for (const auto& c : f.components) {
        ranks.push_back(contraction_rank(classify_contraction(c)));
        if (const auto* p = c.surface_pair()) names.push_back(p->surface.normalized().name());
    }
    std::sort(ranks.begin(), ranks.end());
    std::sort(names.begin(), names.end());
    return {f.components.size(), ranks, names, canonical_key(f)};
}

namespace detail {

inline FiberComplex two_component_fiber(const SurfacePair& p, const SurfacePair& q) {
    FiberComplex f;
    f.fiber_dim = 2;
    f.components = {{"F1", p}, {"F2", q}};
    DoubleLocus d;
    d.id = "D12";
    d.a = {"F1", p.boundary[0].cls.vec()};
    d.b = {"F2", q.boundary[0].cls.vec()};
    d.triple_points = 0;
    f.double_loci.push_back(d);
    return f;
}

/// flips[i] == false: the first boundary curve of component i faces its
/// lower-numbered neighbour.
inline FiberComplex three_component_fiber(const std::array<SurfacePair, 3>& pairs, std::array<bool, 3> flips) {
    FiberComplex f;
    f.fiber_dim = 2;
    for (std::size_t i = 0; i < 3; ++i) f.components.push_back({component_name(i), pairs[i]});
    const auto curve = [&](std::size_t i, std::size_t j) {
        const std::size_t lowest_neighbour = i == 0 ? 1 : 0;
        std::size_t slot = j == lowest_neighbour ? 0 : 1;
        if (flips[i]) slot = 1 - slot;
        return pairs[i].boundary[slot].cls.vec();
    };
    for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 1}, {0, 2}, {1, 2}}) {
        DoubleLocus d;
        d.id = "D" + std::to_string(i + 1) + std::to_string(j + 1);
        d.a = {component_name(i), curve(i, j)};
        d.b = {component_name(j), curve(j, i)};
        d.triple_points = 1;
        f.double_loci.push_back(d);
    }
    f.triple_loci.push_back({{"F1", "F2", "F3"}, "point"});
    return f;
}

inline bool dp2_admissible(const FiberComplex& f) {
    if (!validate_fiber(f).ok()) return false;
    if (!is_simplex(build_dual_complex(f)).is_simplex) return false;
    for (const auto& d : f.double_loci)
        if (!check_triple_point(f, d)) return false;
    return true;
}

}  // namespace detail

/// All admissible fibers, sorted by dp2_sort_key. With dedup each isomorphism
/// class appears once, in canonical form.
inline std::vector<FiberComplex> enumerate_dp2(const Dp2SearchConfig& cfg) {
    cfg.validate();
    std::vector<SurfacePair> catalog;
    for (const auto& p : maeda_catalog(cfg.n_max)) catalog.push_back(normalize(p));

    std::vector<std::size_t> single, twofold;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        if (catalog[i].boundary.size() == 1) single.push_back(i);
        if (catalog[i].boundary.size() == 2) twofold.push_back(i);
    }

    // one work item per (component count, first catalog entry)
    struct Item {
        int count;
        std::size_t first;
    };
    std::vector<Item> items;
    if (cfg.allow_components.contains(2))
        for (std::size_t i = 0; i < single.size(); ++i) items.push_back({2, i});
    if (cfg.allow_components.contains(3))
        for (std::size_t i = 0; i < twofold.size(); ++i) items.push_back({3, i});

    const auto work = [&](std::size_t w) {
        std::vector<FiberComplex> found;
        const auto [count, first] = items[w];
        if (count == 2) {
            for (std::size_t j = first; j < single.size(); ++j) {
                auto f = detail::two_component_fiber(catalog[single[first]], catalog[single[j]]);
                if (detail::dp2_admissible(f)) found.push_back(std::move(f));
            }
            return found;
        }
        for (std::size_t j = first; j < twofold.size(); ++j)
            for (std::size_t k = j; k < twofold.size(); ++k)
                for (int mask = 0; mask < 8; ++mask) {
                    auto f = detail::three_component_fiber(
                        {catalog[twofold[first]], catalog[twofold[j]], catalog[twofold[k]]},
                        {(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0});
                    if (detail::dp2_admissible(f)) found.push_back(std::move(f));
                }
        return found;
    };
    const auto chunks = parallel_map<std::vector<FiberComplex>>(items.size(), resolve_threads(cfg.threads), work);

    std::map<std::pair<Dp2SortKey, std::string>, FiberComplex> merged;
    for (const auto& chunk : chunks) {
        for (const auto& f : chunk) {
            if (cfg.dedup) {
                auto c = canonical_form(f);
                auto key = dp2_sort_key(c);
                merged.try_emplace({key, std::string()}, std::move(c));
            } else {
                merged.try_emplace({dp2_sort_key(f), to_json(f).dump()}, f);
            }
        }
    }
    std::vector<FiberComplex> out;
    for (auto& [key, f] : merged) out.push_back(std::move(f));
    return out;
}

/// The inequality chain behind the Hirzebruch index bound. A section s of
/// self-intersection -n meets a partner curve C with s^2 + C^2 + n_C = 0, so
/// n = C^2 + n_C is at most the largest catalog self-intersection plus the
/// largest triple point count.
struct BoundCertificate {
    Int max_fixed_self_intersection = 0;   ///< over entries not indexed by n
    Int max_family_self_intersection = 0;  ///< over s, f on the F_n entries (attained at n = 0)
    Int max_triple_points = 0;             ///< per double curve in a 2-simplex
    int bound = 0;
    /// Checked by brute force against every partner curve on F_0..F_{bound+3}:
    /// no section with index above the bound solves the triple point formula.
    bool verified = false;
};

inline BoundCertificate bound_certificate() {
    BoundCertificate cert;
    const auto is_family = [](const SurfacePair& p) {
        for (const auto& c : p.boundary) {
            const auto name = strip_primes(c.label);
            if (name == "s" || name == "f") return true;
        }
        return false;
    };
    for (const auto& p : maeda_catalog(0))
        for (const auto& c : p.boundary) {
            auto& slot = is_family(p) ? cert.max_family_self_intersection : cert.max_fixed_self_intersection;
            slot = std::max(slot, self_intersection(c.cls));
        }

    // a 2-simplex has exactly one triple point, shared by its three edges
    cert.max_triple_points = 1;
    cert.bound = static_cast<int>(std::max(cert.max_fixed_self_intersection, cert.max_family_self_intersection) +
                                  cert.max_triple_points);

    cert.verified = true;
    const int probe = cert.bound + 3;
    const auto catalog = maeda_catalog(probe);
    for (int n = cert.bound + 1; n <= probe; ++n) {
        const auto s = curve_class(SurfaceGeometry::hirzebruch(n), "s");
        for (const auto& p : catalog)
            for (const auto& c : p.boundary)
                for (Int nc = 0; nc <= cert.max_triple_points; ++nc)
                    if (self_intersection(s) + self_intersection(c.cls) + nc == 0) cert.verified = false;
    }
    return cert;
}

/// Smallest Hirzebruch index bound that provably captures every fiber.
inline int justify_bound() { return bound_certificate().bound; }

}  // namespace sncfano
