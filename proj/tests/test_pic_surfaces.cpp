#include <gtest/gtest.h>

#include <random>
#include <set>

#include "sncfano/pic_surfaces.hpp"

using namespace sncfano;

namespace {

std::vector<SurfaceGeometry> sample_surfaces() {
    std::vector<SurfaceGeometry> out{SurfaceGeometry::projective_plane(), SurfaceGeometry::quadric()};
    for (int n = 0; n <= 6; ++n) out.push_back(SurfaceGeometry::hirzebruch(n));
    return out;
}

DivisorClass random_class(const SurfaceGeometry& s, std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-7, 7);
    std::vector<Int> c;
    for (std::size_t i = 0; i < s.rank(); ++i) c.push_back(coeff(rng));
    return DivisorClass(s, c);
}

}  // namespace

TEST(SurfaceGeometry, GramMatrices) {
    EXPECT_EQ(SurfaceGeometry::projective_plane().gram_matrix(), (std::vector<std::vector<Int>>{{1}}));
    EXPECT_EQ(SurfaceGeometry::quadric().gram_matrix(), (std::vector<std::vector<Int>>{{0, 1}, {1, 0}}));
    EXPECT_EQ(SurfaceGeometry::hirzebruch(3).gram_matrix(), (std::vector<std::vector<Int>>{{-3, 1}, {1, 0}}));
}

TEST(SurfaceGeometry, CanonicalClasses) {
    EXPECT_EQ(canonical_class(SurfaceGeometry::projective_plane()).vec(), (std::vector<Int>{-3}));
    EXPECT_EQ(canonical_class(SurfaceGeometry::quadric()).vec(), (std::vector<Int>{-2, -2}));
    EXPECT_EQ(canonical_class(SurfaceGeometry::hirzebruch(1)).vec(), (std::vector<Int>{-2, -3}));
    EXPECT_EQ(canonical_class(SurfaceGeometry::hirzebruch(4)).vec(), (std::vector<Int>{-2, -6}));
}

TEST(SurfaceGeometry, CanonicalSquareIsTenMinusPicardRank) {
    // Noether's formula for rational surfaces
    for (const auto& s : sample_surfaces())
        EXPECT_EQ(self_intersection(s.canonical()), 10 - static_cast<Int>(s.rank())) << s.name();
}

TEST(SurfaceGeometry, HirzebruchCurves) {
    for (int n = 0; n <= 6; ++n) {
        const auto s = SurfaceGeometry::hirzebruch(n);
        EXPECT_EQ(self_intersection(curve_class(s, "s")), -n);
        EXPECT_EQ(self_intersection(curve_class(s, "h")), n);
        EXPECT_EQ(self_intersection(curve_class(s, "f")), 0);
        EXPECT_EQ(intersect(curve_class(s, "s"), curve_class(s, "f")), 1);
        EXPECT_EQ(intersect(curve_class(s, "s"), curve_class(s, "h")), 0);
    }
}

TEST(SurfaceGeometry, NamedCurvesSatisfyAdjunctionForRationalCurves) {
    const std::vector<std::pair<SurfaceGeometry, std::vector<std::string>>> named{
        {SurfaceGeometry::projective_plane(), {"l", "q"}},
        {SurfaceGeometry::quadric(), {"l1", "l2", "l11"}},
        {SurfaceGeometry::hirzebruch(0), {"s", "f", "h"}},
        {SurfaceGeometry::hirzebruch(3), {"s", "f", "h"}},
    };
    for (const auto& [s, labels] : named)
        for (const auto& label : labels) {
            const auto c = curve_class(s, label);
            EXPECT_EQ(self_intersection(c) + intersect(s.canonical(), c), -2) << s.name() << " " << label;
        }
}

TEST(SurfaceGeometry, NamesAndNormalization) {
    EXPECT_EQ(SurfaceGeometry::hirzebruch(0).normalized(), SurfaceGeometry::quadric());
    EXPECT_EQ(SurfaceGeometry::hirzebruch(2).normalized(), SurfaceGeometry::hirzebruch(2));
    EXPECT_TRUE(SurfaceGeometry::hirzebruch(0).isomorphic_to(SurfaceGeometry::quadric()));
    EXPECT_FALSE(SurfaceGeometry::hirzebruch(1).isomorphic_to(SurfaceGeometry::quadric()));
    EXPECT_EQ(SurfaceGeometry::hirzebruch(3).name(), "F3");
    EXPECT_EQ(SurfaceGeometry::quadric().name(), "P1xP1");
    EXPECT_THROW(SurfaceGeometry::hirzebruch(-1), ValidationError);
}

TEST(DivisorClass, RejectsWrongLength) {
    EXPECT_THROW(DivisorClass(SurfaceGeometry::projective_plane(), {1, 2}), ValidationError);
    EXPECT_THROW(DivisorClass(SurfaceGeometry::hirzebruch(1), {1}), ValidationError);
}

TEST(DivisorClass, MixingSurfacesThrows) {
    const auto a = curve_class(SurfaceGeometry::hirzebruch(1), "s");
    const auto b = curve_class(SurfaceGeometry::hirzebruch(2), "s");
    EXPECT_THROW(intersect(a, b), SurfaceMismatch);
    EXPECT_THROW(a + b, SurfaceMismatch);
}

TEST(DivisorClass, IntersectionIsSymmetricBilinear) {
    std::mt19937 rng(7);
    for (const auto& s : sample_surfaces())
        for (int trial = 0; trial < 200; ++trial) {
            const auto a = random_class(s, rng), b = random_class(s, rng), c = random_class(s, rng);
            const Int k = std::uniform_int_distribution<int>(-5, 5)(rng);
            EXPECT_EQ(intersect(a, b), intersect(b, a));
            EXPECT_EQ(intersect(a + b, c), intersect(a, c) + intersect(b, c));
            EXPECT_EQ(intersect(k * a, c), k * intersect(a, c));
        }
}

TEST(Positivity, AmpleMatchesNakaiMoishezonOnGenerators) {
    // On these surfaces the effective cone is spanned by s and f (l1, l2; l),
    // so D is ample iff it is positive on both generators and D^2 > 0.
    for (const auto& s : sample_surfaces()) {
        std::vector<DivisorClass> gens;
        switch (s.kind()) {
            case SurfaceKind::ProjectivePlane: gens = {curve_class(s, "l")}; break;
            case SurfaceKind::QuadricSurface: gens = {curve_class(s, "l1"), curve_class(s, "l2")}; break;
            case SurfaceKind::Hirzebruch: gens = {curve_class(s, "s"), curve_class(s, "f")}; break;
        }
        for (int a = -4; a <= 9; ++a)
            for (int b = -4; b <= (s.rank() == 1 ? -4 : 12); ++b) {
                const auto d = s.rank() == 1 ? DivisorClass(s, {a}) : DivisorClass(s, {a, b});
                bool positive = self_intersection(d) > 0, nonneg = true;
                for (const auto& g : gens) {
                    positive = positive && intersect(d, g) > 0;
                    nonneg = nonneg && intersect(d, g) >= 0;
                }
                EXPECT_EQ(is_ample(d), positive) << d.to_string();
                EXPECT_EQ(is_nef(d), nonneg) << d.to_string();
            }
    }
}

TEST(Isometries, PreserveGramAndCanonicalClass) {
    std::mt19937 rng(11);
    for (const auto& s : sample_surfaces()) {
        const auto autos = automorphisms(s);
        EXPECT_EQ(autos.size(), s.has_swap() ? 2u : 1u) << s.name();
        for (auto iso : autos) {
            EXPECT_EQ(apply(iso, s.canonical()), s.canonical());
            for (int t = 0; t < 50; ++t) {
                const auto a = random_class(s, rng), b = random_class(s, rng);
                EXPECT_EQ(intersect(apply(iso, a), apply(iso, b)), intersect(a, b));
                EXPECT_EQ(apply(iso, apply(iso, a)), a);
            }
        }
    }
    EXPECT_THROW(apply(LatticeIsometry::FactorSwap, curve_class(SurfaceGeometry::hirzebruch(1), "s")),
                 ValidationError);
}

TEST(Isometries, TransportBetweenF0AndQuadric) {
    const auto c = curve_class(SurfaceGeometry::hirzebruch(0), "s");
    const auto t = transport(c, SurfaceGeometry::quadric());
    EXPECT_EQ(t.vec(), (std::vector<Int>{1, 0}));
    EXPECT_EQ(self_intersection(t), 0);
    EXPECT_THROW(transport(curve_class(SurfaceGeometry::hirzebruch(1), "s"), SurfaceGeometry::quadric()),
                 SurfaceMismatch);
}

TEST(Pairs, CatalogSizes) {
    EXPECT_EQ(maeda_catalog(4).size(), 15u);
    EXPECT_EQ(maeda_catalog(0).size(), 7u);
    EXPECT_THROW(maeda_catalog(-1), ValidationError);
}

TEST(Pairs, EveryCatalogEntryIsLogFano) {
    for (const auto& p : maeda_catalog(6)) EXPECT_TRUE(is_log_fano_pair(p)) << canonical_key(p);
}

TEST(Pairs, NonLogFanoBoundaries) {
    const auto p2 = SurfaceGeometry::projective_plane();
    EXPECT_FALSE(is_log_fano_pair(make_surface_pair(p2, {"l", "q"})));                     // -K-D = 0
    EXPECT_FALSE(is_log_fano_pair(make_surface_pair(SurfaceGeometry::hirzebruch(2), {"h"})));  // -K-h = s+2f, not ample
    EXPECT_FALSE(is_log_fano_pair(make_surface_pair(SurfaceGeometry::quadric(), {"l11", "l1"})));  // -K-D = (0,1)
}

TEST(Pairs, ValidationRejectsMislabelledCurves) {
    SurfacePair p{SurfaceGeometry::hirzebruch(1), {{"s", curve_class(SurfaceGeometry::hirzebruch(1), "f")}}};
    EXPECT_THROW(validate_pair(p), ValidationError);
    SurfacePair twice = make_surface_pair(SurfaceGeometry::projective_plane(), {"l"});
    twice.boundary.push_back(twice.boundary.front());
    EXPECT_THROW(validate_pair(twice), ValidationError);
}

TEST(Pairs, CanonicalKeyIdentifiesF0WithQuadric) {
    const auto a = make_surface_pair(SurfaceGeometry::hirzebruch(0), {"s"});
    const auto b = make_surface_pair(SurfaceGeometry::quadric(), {"l1"});
    const auto c = make_surface_pair(SurfaceGeometry::quadric(), {"l2"});
    EXPECT_EQ(canonical_key(a), canonical_key(b));
    EXPECT_EQ(canonical_key(b), canonical_key(c));
    EXPECT_NE(canonical_key(b), canonical_key(make_surface_pair(SurfaceGeometry::quadric(), {"l11"})));
}

TEST(Pairs, CatalogIsCompleteOverSmallBoundaries) {
    const auto v = verify_maeda_catalog(5);
    EXPECT_TRUE(v.complete());
    EXPECT_GT(v.boundaries_checked, 100u);
    EXPECT_GT(v.log_fano_found, 0u);
    for (const auto& p : v.missing_from_catalog) ADD_FAILURE() << "missing: " << canonical_key(p);
}
