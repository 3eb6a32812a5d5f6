#include <gtest/gtest.h>

#include "sncfano/fano3_bundles.hpp"
#include "sncfano/max3_search.hpp"

using namespace sncfano;

namespace {

DivisorClass p2(Int d) { return DivisorClass(SurfaceGeometry::projective_plane(), {d}); }
DivisorClass fn(int n, Int s, Int f) { return DivisorClass(SurfaceGeometry::hirzebruch(n), {s, f}); }

std::vector<BundleComponent> grid(int bound) {
    std::vector<BundleComponent> out{BundleComponent::projective_space(), BundleComponent::point_blowup()};
    for (int a = 0; a <= bound; ++a) out.push_back(BundleComponent::over_plane(a));
    for (int a1 = 0; a1 <= bound; ++a1)
        for (int a2 = a1; a2 <= bound; ++a2) out.push_back(BundleComponent::plane_bundle(a1, a2));
    for (int n = 0; n <= bound; ++n)
        for (int k = 0; k <= bound; ++k)
            for (int m = 0; m <= bound; ++m) out.push_back(BundleComponent::over_hirzebruch(n, k, m));
    return out;
}

}  // namespace

TEST(Tags, RoundTripAndAliases) {
    for (auto c : kAllBundleCases) EXPECT_EQ(case_from_tag(case_tag(c)), c);
    EXPECT_THROW(case_from_tag("C3"), Error);
    EXPECT_EQ(BundleComponent::point_blowup().resolved(), BundleComponent::over_plane(1));
    EXPECT_EQ(BundleComponent::over_hirzebruch(1, 1, 0).to_string(), "C2_2(1,1,0)");
    EXPECT_THROW(slot_from_index(3), ValidationError);
}

TEST(Constraints, RejectOutOfRangeParameters) {
    EXPECT_THROW(BundleComponent::plane_bundle(2, 1).validate(), ConstraintError);
    EXPECT_THROW(BundleComponent::plane_bundle(-1, 1).validate(), ConstraintError);
    EXPECT_THROW(BundleComponent::over_plane(-1).validate(), ConstraintError);
    EXPECT_THROW(BundleComponent::over_hirzebruch(0, -1, 0).validate(), ConstraintError);
    EXPECT_THROW((BundleComponent{BundleCase::ProjectiveSpace, {1}}).validate(), ConstraintError);
    EXPECT_THROW(boundary_table(BundleComponent::plane_bundle(3, 0)), ConstraintError);
    try {
        BundleComponent::plane_bundle(3, 1).validate();
    } catch (const ConstraintError& e) {
        EXPECT_NE(std::string(e.what()).find("a1 <= a2"), std::string::npos);
    }
}

TEST(DisplayedEquations, PartnerClassesMatchClosedForms) {
    // Right-hand sides of the d-semistability equation blocks, written out per family.
    int checked = 0;
    for (int a = 0; a <= 6; ++a) {
        const auto c = BundleComponent::over_plane(a);
        EXPECT_EQ(dss_partner_class(c, BoundarySlot::D12), p2(2 - a));
        EXPECT_EQ(dss_partner_class(c, BoundarySlot::D13), fn(a, 1, 2));
        EXPECT_EQ(dss_partner_class(c, BoundarySlot::D14), fn(a, 1, 2));
        checked += 3;
    }
    for (int a1 = 0; a1 <= 6; ++a1)
        for (int a2 = a1; a2 <= 6; ++a2) {
            const auto c = BundleComponent::plane_bundle(a1, a2);
            EXPECT_EQ(dss_partner_class(c, BoundarySlot::D12), fn(a2, 2, a2 - a1 + 1));
            EXPECT_EQ(dss_partner_class(c, BoundarySlot::D13), fn(a1, 2, a1 - a2 + 1));
            EXPECT_EQ(dss_partner_class(c, BoundarySlot::D14), p2(2));
            checked += 3;
        }
    for (int n = 0; n <= 6; ++n)
        for (int k = 0; k <= 6; ++k)
            for (int m = 0; m <= 6; ++m) {
                const auto c = BundleComponent::over_hirzebruch(n, k, m);
                EXPECT_EQ(dss_partner_class(c, BoundarySlot::D12), fn(n, 1 - k, 1 - k * n - m));
                EXPECT_EQ(dss_partner_class(c, BoundarySlot::D13), fn(k, 1, 1));
                EXPECT_EQ(dss_partner_class(c, BoundarySlot::D14), fn(m, 1, 1 - n));
                checked += 3;
            }
    EXPECT_EQ(checked, 3 * 7 + 3 * 28 + 3 * 343);
    EXPECT_EQ(dss_partner_class(BundleComponent::projective_space(), 0), p2(3));
}

TEST(DisplayedEquations, PartnerClassIsNormalPlusRestrictions) {
    for (const auto& c : grid(6)) {
        const auto table = boundary_table(c);
        for (const auto& e : table)
            EXPECT_EQ(dss_partner_class(c, e.slot), e.normal + e.restriction_sum())
                << c.to_string() << " " << slot_name(e.slot);
    }
}

TEST(BoundaryTables, TripleCurveSelfIntersectionsAgree) {
    // For boundary divisors D_i, D_j of a threefold, D_i.D_j.D_j is both the
    // self-intersection of D_j|D_i on D_i and N_{D_j} . (D_i|D_j) on D_j.
    for (const auto& c : grid(6)) {
        const auto t = boundary_table(c);
        for (const auto& ei : t)
            for (const auto& ej : t) {
                if (ei.slot == ej.slot) continue;
                EXPECT_EQ(self_intersection(ei.restrictions.at(ej.slot)), intersect(ej.normal, ej.restrictions.at(ei.slot)))
                    << c.to_string() << " " << slot_name(ei.slot) << "/" << slot_name(ej.slot);
            }
    }
}

TEST(BoundaryTables, TripleCurvesAreRational) {
    // Each D_i cap D_j is a smooth rational curve on D_i: C^2 + K.C = -2.
    for (const auto& c : grid(5))
        for (const auto& e : boundary_table(c))
            for (const auto& [other, cls] : e.restrictions)
                EXPECT_EQ(self_intersection(cls) + intersect(e.surface.canonical(), cls), -2)
                    << c.to_string() << " " << slot_name(e.slot);
}

TEST(BoundaryTables, RestrictionSumIsSectionPlusFiberOrConic) {
    for (const auto& c : grid(4))
        for (const auto& e : boundary_table(c)) {
            const auto r = e.restriction_sum();
            if (e.surface.kind() == SurfaceKind::ProjectivePlane) EXPECT_EQ(r, p2(2));
            else EXPECT_EQ(r.vec(), (std::vector<Int>{1, 1}));
        }
}

TEST(BoundaryTables, SpotValues) {
    const auto t = boundary_table(BundleComponent::over_hirzebruch(1, 1, 0));
    EXPECT_EQ(t[0].normal, fn(1, -1, -1));
    EXPECT_EQ(t[1].normal, fn(1, 0, 0));
    EXPECT_EQ(t[2].normal, fn(0, 0, -1));
    EXPECT_EQ(t[0].ambient_class, (std::vector<Int>{1, 0, 0}));
    EXPECT_EQ(t[1].ambient_class, (std::vector<Int>{0, 0, 1}));
    EXPECT_EQ(t[2].ambient_class, (std::vector<Int>{0, 1, 0}));
    EXPECT_EQ(picard_basis(BundleComponent::over_hirzebruch(1, 1, 0)), (std::vector<std::string>{"H", "M_s", "M_f"}));

    const auto d = boundary_table(BundleComponent::plane_bundle(1, 3));
    EXPECT_EQ(d[0].normal, fn(3, 1, 2));
    EXPECT_EQ(d[1].normal, fn(1, 1, -2));
    EXPECT_EQ(d[2].normal, p2(0));
}

TEST(Invariants, AnticanonicalCubes) {
    // Known degrees: P3; P2xP1; the blow-up of P3 in a point; P(O+O(2)) over P2;
    // P1xP2 and the blow-up of P3 in a line; P1xP1xP1; F1xP1.
    EXPECT_EQ(component_invariants(BundleComponent::projective_space()).anticanonical_cube, 64);
    EXPECT_EQ(component_invariants(BundleComponent::over_plane(0)).anticanonical_cube, 54);
    EXPECT_EQ(component_invariants(BundleComponent::over_plane(1)).anticanonical_cube, 56);
    EXPECT_EQ(component_invariants(BundleComponent::point_blowup()).anticanonical_cube, 56);
    EXPECT_EQ(component_invariants(BundleComponent::over_plane(2)).anticanonical_cube, 62);
    EXPECT_EQ(component_invariants(BundleComponent::plane_bundle(0, 0)).anticanonical_cube, 54);
    EXPECT_EQ(component_invariants(BundleComponent::plane_bundle(0, 1)).anticanonical_cube, 54);
    EXPECT_EQ(component_invariants(BundleComponent::over_hirzebruch(0, 0, 0)).anticanonical_cube, 48);
    EXPECT_EQ(component_invariants(BundleComponent::over_hirzebruch(1, 0, 0)).anticanonical_cube, 48);
    EXPECT_EQ(component_invariants(BundleComponent::over_hirzebruch(0, 1, 0)).anticanonical_cube, 48);
}

TEST(Invariants, FlagBlowupMatchesC22) {
    const auto inv = component_invariants(BundleComponent::over_hirzebruch(1, 1, 0));
    EXPECT_EQ(inv, flag_blowup_invariants());
    EXPECT_EQ(inv.picard_rank, 3);
    EXPECT_EQ(inv.anticanonical_cube, 50);
    std::vector<SurfaceGeometry> want{SurfaceGeometry::hirzebruch(1), SurfaceGeometry::hirzebruch(1),
                                      SurfaceGeometry::quadric()};
    std::sort(want.begin(), want.end());
    EXPECT_EQ(inv.boundary_surfaces, want);
}

TEST(Invariants, PicardRanks) {
    EXPECT_EQ(component_invariants(BundleComponent::projective_space()).picard_rank, 1);
    EXPECT_EQ(component_invariants(BundleComponent::over_plane(3)).picard_rank, 2);
    EXPECT_EQ(component_invariants(BundleComponent::plane_bundle(0, 2)).picard_rank, 2);
    EXPECT_EQ(component_invariants(BundleComponent::over_hirzebruch(2, 0, 1)).picard_rank, 3);
}
