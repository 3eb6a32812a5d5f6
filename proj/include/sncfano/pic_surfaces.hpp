#pragma once

// Divisor-class arithmetic on P2, P1xP1 and the Hirzebruch surfaces F_n.
//
// Bases are fixed once and for all; every serialized coefficient vector
// refers to them:
//   P2     : [l]            gram [[1]]             K = -3l
//   P1xP1  : [l1, l2]       gram [[0,1],[1,0]]     K = (-2,-2)
//   F_n    : [s, f]         gram [[-n,1],[1,0]]    K = -2s - (n+2)f
// F_0 and P1xP1 are different encodings of the same surface; normalize()
// maps F_0 onto the quadric encoding (s -> l1, f -> l2).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sncfano/error.hpp"

namespace sncfano {

using Int = std::int64_t;

enum class SurfaceKind { ProjectivePlane, QuadricSurface, Hirzebruch };

class DivisorClass;

class SurfaceGeometry {
public:
    SurfaceGeometry() = default;

    static SurfaceGeometry projective_plane() { return {SurfaceKind::ProjectivePlane, 0}; }
    static SurfaceGeometry quadric() { return {SurfaceKind::QuadricSurface, 0}; }
    static SurfaceGeometry hirzebruch(int n) {
        if (n < 0) throw ValidationError("Hirzebruch index must be nonnegative, got " + std::to_string(n));
        return {SurfaceKind::Hirzebruch, n};
    }

    SurfaceKind kind() const { return kind_; }
    /// Hirzebruch index; 0 for the other kinds.
    int index() const { return index_; }

    std::size_t rank() const { return kind_ == SurfaceKind::ProjectivePlane ? 1 : 2; }

    std::vector<std::string> basis() const {
        switch (kind_) {
            case SurfaceKind::ProjectivePlane: return {"l"};
            case SurfaceKind::QuadricSurface: return {"l1", "l2"};
            case SurfaceKind::Hirzebruch: return {"s", "f"};
        }
        return {};
    }

    Int gram(std::size_t i, std::size_t j) const {
        switch (kind_) {
            case SurfaceKind::ProjectivePlane: return 1;
            case SurfaceKind::QuadricSurface: return i == j ? 0 : 1;
            case SurfaceKind::Hirzebruch:
                if (i == 0 && j == 0) return -index_;
                return i == j ? 0 : 1;
        }
        return 0;
    }

    std::vector<std::vector<Int>> gram_matrix() const {
        std::vector<std::vector<Int>> g(rank(), std::vector<Int>(rank()));
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j) g[i][j] = gram(i, j);
        return g;
    }

    inline DivisorClass canonical() const;

    /// F_0 becomes the quadric; everything else is unchanged.
    SurfaceGeometry normalized() const {
        if (kind_ == SurfaceKind::Hirzebruch && index_ == 0) return quadric();
        return *this;
    }

    bool isomorphic_to(const SurfaceGeometry& other) const { return normalized() == other.normalized(); }

    /// Has the factor-swap automorphism (P1xP1 in either encoding).
    bool has_swap() const { return normalized().kind_ == SurfaceKind::QuadricSurface; }

    std::string name() const {
        switch (kind_) {
            case SurfaceKind::ProjectivePlane: return "P2";
            case SurfaceKind::QuadricSurface: return "P1xP1";
            case SurfaceKind::Hirzebruch: return "F" + std::to_string(index_);
        }
        return "?";
    }

    friend auto operator<=>(const SurfaceGeometry&, const SurfaceGeometry&) = default;

private:
    SurfaceGeometry(SurfaceKind kind, int index) : kind_(kind), index_(index) {}

    SurfaceKind kind_ = SurfaceKind::ProjectivePlane;
    int index_ = 0;
};

/// Integer vector in the fixed basis of a surface.
class DivisorClass {
public:
    DivisorClass() = default;

    DivisorClass(SurfaceGeometry surface, std::vector<Int> coeffs)
        : surface_(surface), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != surface_.rank())
            throw ValidationError("class on " + surface_.name() + " needs " + std::to_string(surface_.rank()) +
                                  " coefficients, got " + std::to_string(coeffs_.size()));
    }

    static DivisorClass zero(SurfaceGeometry surface) {
        return DivisorClass(surface, std::vector<Int>(surface.rank(), 0));
    }

    const SurfaceGeometry& surface() const { return surface_; }
    std::span<const Int> coeffs() const { return coeffs_; }
    const std::vector<Int>& vec() const { return coeffs_; }
    Int operator[](std::size_t i) const { return coeffs_.at(i); }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](Int c) { return c == 0; });
    }

    DivisorClass& operator+=(const DivisorClass& other) {
        require_same(other);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
        return *this;
    }
    DivisorClass& operator-=(const DivisorClass& other) {
        require_same(other);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
        return *this;
    }
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator-(DivisorClass a) {
        for (auto& c : a.coeffs_) c = -c;
        return a;
    }
    friend DivisorClass operator*(Int k, DivisorClass a) {
        for (auto& c : a.coeffs_) c *= k;
        return a;
    }

    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
    friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;

    void require_same(const DivisorClass& other) const {
        if (surface_ != other.surface_)
            throw SurfaceMismatch("classes live on different surfaces: " + surface_.name() + " vs " +
                                  other.surface_.name());
    }

    std::string to_string() const {
        std::string out = surface_.name() + "(";
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(coeffs_[i]);
        }
        return out + ")";
    }

private:
    SurfaceGeometry surface_;
    std::vector<Int> coeffs_{0};
};

inline DivisorClass SurfaceGeometry::canonical() const {
    switch (kind_) {
        case SurfaceKind::ProjectivePlane: return DivisorClass(*this, {-3});
        case SurfaceKind::QuadricSurface: return DivisorClass(*this, {-2, -2});
        case SurfaceKind::Hirzebruch: return DivisorClass(*this, {-2, -(index_ + 2)});
    }
    return DivisorClass::zero(*this);
}

inline DivisorClass canonical_class(const SurfaceGeometry& s) { return s.canonical(); }

/// a^T * gram * b.
inline Int intersect(const DivisorClass& a, const DivisorClass& b) {
    a.require_same(b);
    const auto& s = a.surface();
    Int total = 0;
    for (std::size_t i = 0; i < s.rank(); ++i)
        for (std::size_t j = 0; j < s.rank(); ++j) total += a[i] * s.gram(i, j) * b[j];
    return total;
}

inline Int self_intersection(const DivisorClass& d) { return intersect(d, d); }

// Closed-form cone tests. On F_n the nef cone is spanned by f and s+nf, the
// effective cone by s and f.

inline bool is_ample(const DivisorClass& d) {
    const auto& s = d.surface();
    switch (s.kind()) {
        case SurfaceKind::ProjectivePlane: return d[0] > 0;
        case SurfaceKind::QuadricSurface: return d[0] > 0 && d[1] > 0;
        case SurfaceKind::Hirzebruch: return d[0] > 0 && d[1] > d[0] * s.index();
    }
    return false;
}

inline bool is_nef(const DivisorClass& d) {
    const auto& s = d.surface();
    switch (s.kind()) {
        case SurfaceKind::ProjectivePlane: return d[0] >= 0;
        case SurfaceKind::QuadricSurface: return d[0] >= 0 && d[1] >= 0;
        case SurfaceKind::Hirzebruch: return d[0] >= 0 && d[1] >= d[0] * s.index();
    }
    return false;
}

inline bool is_effective(const DivisorClass& d) {
    return std::all_of(d.coeffs().begin(), d.coeffs().end(), [](Int c) { return c >= 0; });
}

enum class LatticeIsometry { Identity, FactorSwap };

inline std::string_view to_string(LatticeIsometry iso) {
    return iso == LatticeIsometry::Identity ? "id" : "swap";
}

/// Lattice automorphisms preserving gram and K: identity everywhere, plus the
/// factor swap on P1xP1 (and on F_0).
inline std::vector<LatticeIsometry> automorphisms(const SurfaceGeometry& s) {
    if (s.has_swap()) return {LatticeIsometry::Identity, LatticeIsometry::FactorSwap};
    return {LatticeIsometry::Identity};
}

inline DivisorClass apply(LatticeIsometry iso, const DivisorClass& d) {
    if (iso == LatticeIsometry::Identity) return d;
    if (!d.surface().has_swap())
        throw ValidationError("factor swap is not an isometry of " + d.surface().name());
    return DivisorClass(d.surface(), {d[1], d[0]});
}

inline DivisorClass normalize(const DivisorClass& d) {
    return DivisorClass(d.surface().normalized(), d.vec());
}

/// Re-express a class on a surface isomorphic to its own (F_0 <-> P1xP1).
inline DivisorClass transport(const DivisorClass& d, const SurfaceGeometry& target) {
    if (!d.surface().isomorphic_to(target))
        throw SurfaceMismatch("cannot transport a class from " + d.surface().name() + " to " + target.name());
    return DivisorClass(target, d.vec());
}

// Named curves: l, q (=2l), l1, l2, l11 (=(1,1)), s, f, h (=s+nf).
// Trailing primes (l', f'') name further curves in the same class.

inline std::string_view strip_primes(std::string_view label) {
    while (!label.empty() && label.back() == '\'') label.remove_suffix(1);
    return label;
}

inline DivisorClass curve_class(const SurfaceGeometry& s, std::string_view label) {
    const auto base = strip_primes(label);
    switch (s.kind()) {
        case SurfaceKind::ProjectivePlane:
            if (base == "l") return DivisorClass(s, {1});
            if (base == "q") return DivisorClass(s, {2});
            break;
        case SurfaceKind::QuadricSurface:
            if (base == "l1") return DivisorClass(s, {1, 0});
            if (base == "l2") return DivisorClass(s, {0, 1});
            if (base == "l11") return DivisorClass(s, {1, 1});
            break;
        case SurfaceKind::Hirzebruch:
            if (base == "s") return DivisorClass(s, {1, 0});
            if (base == "f") return DivisorClass(s, {0, 1});
            if (base == "h") return DivisorClass(s, {1, s.index()});
            break;
    }
    throw ValidationError("'" + std::string(label) + "' is not a named curve on " + s.name());
}

/// Name of the class if it is one of the named curves, otherwise empty.
inline std::string curve_name(const DivisorClass& d) {
    const auto& s = d.surface();
    switch (s.kind()) {
        case SurfaceKind::ProjectivePlane:
            if (d[0] == 1) return "l";
            if (d[0] == 2) return "q";
            break;
        case SurfaceKind::QuadricSurface:
            if (d[0] == 1 && d[1] == 0) return "l1";
            if (d[0] == 0 && d[1] == 1) return "l2";
            if (d[0] == 1 && d[1] == 1) return "l11";
            break;
        case SurfaceKind::Hirzebruch:
            if (d[0] == 1 && d[1] == 0) return "s";
            if (d[0] == 0 && d[1] == 1) return "f";
            if (d[0] == 1 && d[1] == s.index()) return "h";
            break;
    }
    return {};
}

struct BoundaryCurve {
    std::string label;
    DivisorClass cls;

    friend bool operator==(const BoundaryCurve&, const BoundaryCurve&) = default;
};

/// A surface with a reduced snc boundary: the log del Pezzo datum.
struct SurfacePair {
    SurfaceGeometry surface;
    std::vector<BoundaryCurve> boundary;

    DivisorClass boundary_sum() const {
        auto total = DivisorClass::zero(surface);
        for (const auto& c : boundary) total += c.cls;
        return total;
    }

    std::vector<DivisorClass> boundary_classes() const {
        std::vector<DivisorClass> out;
        for (const auto& c : boundary) out.push_back(c.cls);
        return out;
    }

    friend bool operator==(const SurfacePair&, const SurfacePair&) = default;
};

/// Builds a pair from curve labels, e.g. make_surface_pair(F1, {"s", "f"}).
inline SurfacePair make_surface_pair(const SurfaceGeometry& s, const std::vector<std::string>& labels) {
    SurfacePair p{s, {}};
    for (const auto& label : labels) p.boundary.push_back({label, curve_class(s, label)});
    return p;
}

/// Throws ValidationError unless every boundary curve is a distinct named,
/// effective, nonzero class on the pair's surface.
inline void validate_pair(const SurfacePair& p) {
    std::set<std::string> seen;
    for (const auto& c : p.boundary) {
        if (c.cls.surface() != p.surface)
            throw ValidationError("boundary curve '" + c.label + "' lives on " + c.cls.surface().name() +
                                  ", not " + p.surface.name());
        if (!is_effective(c.cls) || c.cls.is_zero())
            throw ValidationError("boundary curve '" + c.label + "' has non-effective class " + c.cls.to_string());
        if (!seen.insert(c.label).second)
            throw ValidationError("boundary curve label '" + c.label + "' repeated");
        if (curve_class(p.surface, c.label) != c.cls)
            throw ValidationError("boundary curve '" + c.label + "' does not have class " + c.cls.to_string());
    }
}

/// -K - D ample.
inline bool is_log_fano_pair(const SurfacePair& p) {
    validate_pair(p);
    return is_ample(-p.surface.canonical() - p.boundary_sum());
}

/// Labels derived from the classes alone, primes added for repeats, boundary
/// sorted by class.
inline SurfacePair relabel(SurfacePair p) {
    std::sort(p.boundary.begin(), p.boundary.end(),
              [](const BoundaryCurve& a, const BoundaryCurve& b) { return a.cls < b.cls; });
    std::map<std::string, int> used;
    for (auto& c : p.boundary) {
        auto name = curve_name(c.cls);
        if (name.empty()) name = "c";
        const int k = used[name]++;
        c.label = name + std::string(static_cast<std::size_t>(k), '\'');
    }
    return p;
}

inline SurfacePair normalize(const SurfacePair& p) {
    SurfacePair out{p.surface.normalized(), {}};
    for (const auto& c : p.boundary) out.boundary.push_back({c.label, normalize(c.cls)});
    return relabel(std::move(out));
}

inline SurfacePair apply(LatticeIsometry iso, const SurfacePair& p) {
    SurfacePair out{p.surface, {}};
    for (const auto& c : p.boundary) out.boundary.push_back({c.label, apply(iso, c.cls)});
    return relabel(std::move(out));
}

/// Isomorphism-invariant key: normalized surface plus sorted boundary classes,
/// minimized over lattice automorphisms.
inline std::string canonical_key(const SurfacePair& p) {
    const auto n = normalize(p);
    std::string best;
    for (auto iso : automorphisms(n.surface)) {
        const auto q = apply(iso, n);
        std::string key = q.surface.name() + "|";
        for (const auto& c : q.boundary) key += c.cls.to_string() + ";";
        if (best.empty() || key < best) best = key;
    }
    return best;
}

/// The log del Pezzo surfaces with nonempty reduced boundary, in the classical
/// order: (P2,l), (P2,l+l'), (P2,q), (P1xP1,l11), (F1,h), (F_n,s), (F_n,s+f).
/// The two infinite families are cut at n <= n_max; (F1,h) is always listed.
inline std::vector<SurfacePair> maeda_catalog(int n_max) {
    if (n_max < 0) throw ValidationError("n_max must be nonnegative");
    const auto p2 = SurfaceGeometry::projective_plane();
    std::vector<SurfacePair> out{
        make_surface_pair(p2, {"l"}),
        make_surface_pair(p2, {"l", "l'"}),
        make_surface_pair(p2, {"q"}),
        make_surface_pair(SurfaceGeometry::quadric(), {"l11"}),
        make_surface_pair(SurfaceGeometry::hirzebruch(1), {"h"}),
    };
    for (int n = 0; n <= n_max; ++n) out.push_back(make_surface_pair(SurfaceGeometry::hirzebruch(n), {"s"}));
    for (int n = 0; n <= n_max; ++n) out.push_back(make_surface_pair(SurfaceGeometry::hirzebruch(n), {"s", "f"}));
    return out;
}

struct CatalogVerification {
    std::size_t boundaries_checked = 0;
    std::size_t log_fano_found = 0;
    std::vector<SurfacePair> missing_from_catalog;  ///< log Fano but not a catalog entry
    std::vector<SurfacePair> failing_entries;       ///< catalog entries that are not log Fano

    bool complete() const { return missing_from_catalog.empty() && failing_entries.empty(); }
};

/// Exhaustive check over every reduced boundary of 1-3 named curves on P2,
/// P1xP1 and F_0..F_{n_max} (each name used at most twice, the second copy
/// primed): whatever is log Fano must match a catalog entry up to isomorphism.
inline CatalogVerification verify_maeda_catalog(int n_max) {
    CatalogVerification result;
    const auto catalog = maeda_catalog(n_max);
    std::set<std::string> known;
    for (const auto& p : catalog) {
        if (!is_log_fano_pair(p)) result.failing_entries.push_back(p);
        known.insert(canonical_key(p));
    }

    std::vector<std::pair<SurfaceGeometry, std::vector<std::string>>> surfaces{
        {SurfaceGeometry::projective_plane(), {"l", "l'", "q", "q'"}},
        {SurfaceGeometry::quadric(), {"l1", "l1'", "l2", "l2'", "l11", "l11'"}},
    };
    for (int n = 0; n <= n_max; ++n) {
        std::vector<std::string> names{"s", "f", "f'", "h", "h'"};
        if (n == 0) names.push_back("s'");
        surfaces.push_back({SurfaceGeometry::hirzebruch(n), names});
    }

    for (const auto& [surface, names] : surfaces) {
        const std::size_t m = names.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
            std::vector<std::string> chosen;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (std::size_t{1} << i)) chosen.push_back(names[i]);
            if (chosen.size() > 3) continue;
            // the primed copy only together with the unprimed one
            bool ordered = true;
            for (const auto& c : chosen)
                if (c.back() == '\'' &&
                    std::find(chosen.begin(), chosen.end(), std::string(strip_primes(c))) == chosen.end())
                    ordered = false;
            if (!ordered) continue;
            const auto pair = make_surface_pair(surface, chosen);
            ++result.boundaries_checked;
            if (!is_log_fano_pair(pair)) continue;
            ++result.log_fano_found;
            if (!known.contains(canonical_key(pair))) result.missing_from_catalog.push_back(pair);
        }
    }
    return result;
}

}  // namespace sncfano
