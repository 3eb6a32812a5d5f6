#pragma once

// Canonical form of a fiber: the lexicographically smallest serialization over
// all component orderings and, for surface fibers, all per-component lattice
// automorphisms. Components are renamed F1..Fn and loci D<i><j> in the chosen
// order; threefold loci get their normal classes filled in from the tables.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "sncfano/json_io.hpp"
#include "sncfano/snc_fiber.hpp"

namespace sncfano {

namespace detail {

inline std::string component_name(std::size_t i) { return "F" + std::to_string(i + 1); }

/// order[new] = old index; autos[old] = automorphism applied to that component.
inline FiberComplex relabel_fiber(const FiberComplex& f, const std::vector<std::size_t>& order,
                                  const std::vector<LatticeIsometry>& autos) {
    const std::size_t n = f.components.size();
    std::vector<std::size_t> position(n);
    for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;
    const auto pos = [&](const std::string& id) { return position[*f.index_of(id)]; };

    const auto move_class = [&](std::size_t old, const std::vector<Int>& cls) {
        const auto* pair = f.components[old].surface_pair();
        if (!pair) return cls;
        return apply(autos[old], normalize(DivisorClass(pair->surface, cls))).vec();
    };

    FiberComplex g;
    g.fiber_dim = f.fiber_dim;
    g.quadruple_points = f.quadruple_points;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& c = f.components[order[k]];
        Component out{component_name(k), c.payload};
        if (const auto* pair = c.surface_pair()) out.payload = apply(autos[order[k]], normalize(*pair));
        g.components.push_back(std::move(out));
    }

    std::map<std::string, std::map<std::size_t, BoundarySlot>> slots;
    if (f.fiber_dim == 3)
        for (const auto& c : f.components)
            if (auto s = resolve_slots(f, c.id)) slots[c.id] = *s;

    for (std::size_t i = 0; i < f.double_loci.size(); ++i) {
        const auto& d = f.double_loci[i];
        DoubleLocus out = d;
        auto ia = pos(d.a.component), ib = pos(d.b.component);
        out.a = {component_name(ia), move_class(*f.index_of(d.a.component), d.a.cls)};
        out.b = {component_name(ib), move_class(*f.index_of(d.b.component), d.b.cls)};
        if (f.fiber_dim == 3) {
            const auto fill = [&](const LocusSide& side, std::optional<std::vector<Int>>& normal) {
                if (normal || !slots.contains(side.component)) return;
                const auto table = boundary_table(*f.component(side.component).bundle());
                normal = table[static_cast<std::size_t>(slots[side.component].at(i))].normal.vec();
            };
            fill(d.a, out.normal_a);
            fill(d.b, out.normal_b);
        }
        if (ib < ia) {
            std::swap(out.a, out.b);
            std::swap(out.normal_a, out.normal_b);
            std::swap(ia, ib);
        }
        out.id = "D" + std::to_string(ia + 1) + std::to_string(ib + 1);
        g.double_loci.push_back(std::move(out));
    }
    std::sort(g.double_loci.begin(), g.double_loci.end(), [](const DoubleLocus& x, const DoubleLocus& y) {
        if (x.a.component != y.a.component) return x.a.component < y.a.component;
        if (x.b.component != y.b.component) return x.b.component < y.b.component;
        return x.a.cls < y.a.cls;
    });

    for (const auto& t : f.triple_loci) {
        std::vector<std::size_t> idx{pos(t.components[0]), pos(t.components[1]), pos(t.components[2])};
        std::sort(idx.begin(), idx.end());
        g.triple_loci.push_back({{component_name(idx[0]), component_name(idx[1]), component_name(idx[2])},
                                 f.fiber_dim == 3 ? "curve" : "point"});
    }
    std::sort(g.triple_loci.begin(), g.triple_loci.end(),
              [](const TripleLocus& x, const TripleLocus& y) { return x.components < y.components; });
    return g;
}

}  // namespace detail

/// Canonical representative of the fiber's isomorphism class.
inline FiberComplex canonical_form(const FiberComplex& f) {
    const std::size_t n = f.components.size();
    if (n > 8) throw PreconditionError("canonical form is limited to fibers with at most 8 components");

    std::vector<std::vector<LatticeIsometry>> choices(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto* pair = f.components[i].surface_pair();
        choices[i] = pair ? automorphisms(pair->surface) : std::vector<LatticeIsometry>{LatticeIsometry::Identity};
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::string best_key;
    FiberComplex best;
    bool first = true;
    do {
        std::vector<std::size_t> pick(n, 0);
        while (true) {
            std::vector<LatticeIsometry> autos(n);
            for (std::size_t i = 0; i < n; ++i) autos[i] = choices[i][pick[i]];
            auto g = detail::relabel_fiber(f, order, autos);
            auto key = to_json(g).dump();
            if (first || key < best_key) {
                best_key = std::move(key);
                best = std::move(g);
                first = false;
            }
            std::size_t i = 0;
            while (i < n && ++pick[i] == choices[i].size()) pick[i++] = 0;
            if (i == n) break;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

/// Serialization of canonical_form(); equal keys mean isomorphic fibers.
inline std::string canonical_key(const FiberComplex& f) { return to_json(canonical_form(f)).dump(); }

}  // namespace sncfano
