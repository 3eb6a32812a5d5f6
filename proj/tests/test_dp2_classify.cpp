#include <gtest/gtest.h>

#include <set>

#include "sncfano/canonical.hpp"
#include "sncfano/dp2_classify.hpp"
#include "reference_fibers.hpp"

using namespace sncfano;

namespace {

std::vector<std::string> keys(const std::vector<FiberComplex>& fibers) {
    std::vector<std::string> out;
    for (const auto& f : fibers) out.push_back(canonical_key(f));
    return out;
}

std::vector<FiberComplex> run(int n_max, std::set<int> comps = {2, 3}, int threads = 1) {
    Dp2SearchConfig cfg;
    cfg.n_max = n_max;
    cfg.allow_components = comps;
    cfg.threads = threads;
    return enumerate_dp2(cfg);
}

// Counting oracle on bare integers. A boundary curve is recorded only by its
// self-intersection and a shape tag; two curves glue with t triple points iff
// C^2 + C'^2 + t = 0. F0 is written as P1xP1 so its s and f coincide with l1.
struct Shape {
    std::string tag;
    std::vector<Int> squares;
};

std::vector<Shape> shapes(int n_max) {
    std::vector<Shape> out{{"P2:l", {1}}, {"P2:q", {4}}, {"Q:l1", {0}}, {"Q:l11", {2}}, {"F1:h", {1}},
                           {"P2:l+l", {1, 1}}};
    for (int n = 1; n <= n_max; ++n) {
        out.push_back({"F" + std::to_string(n) + ":s", {-n}});
        out.push_back({"F" + std::to_string(n) + ":s+f", {-n, 0}});
    }
    out.push_back({"Q:l1+l2", {0, 0}});
    return out;
}

std::size_t oracle_two(int n_max) {
    std::set<std::pair<std::string, std::string>> seen;
    const auto all = shapes(n_max);
    for (const auto& a : all)
        for (const auto& b : all)
            if (a.squares.size() == 1 && b.squares.size() == 1 && a.squares[0] + b.squares[0] == 0)
                seen.insert(std::minmax(a.tag, b.tag));
    return seen.size();
}

std::size_t oracle_three(int n_max) {
    // component i uses curve side[i] toward i+1 and the other toward i-1 (cyclic)
    std::set<std::vector<std::string>> seen;
    std::vector<Shape> two;
    for (const auto& s : shapes(n_max))
        if (s.squares.size() == 2) two.push_back(s);
    for (const auto& a : two)
        for (const auto& b : two)
            for (const auto& c : two)
                for (int mask = 0; mask < 8; ++mask) {
                    const std::array<const Shape*, 3> cs{&a, &b, &c};
                    const auto fwd = [&](int i) { return cs[i]->squares[(mask >> i) & 1]; };
                    const auto bwd = [&](int i) { return cs[i]->squares[1 - ((mask >> i) & 1)]; };
                    bool ok = true;
                    for (int i = 0; i < 3; ++i) ok = ok && fwd(i) + bwd((i + 1) % 3) + 1 == 0;
                    if (!ok) continue;
                    // identify up to the dihedral group by the sorted multiset of
                    // (tag, forward square) on the component cycle, both orientations
                    std::vector<std::string> best;
                    for (int dir = 0; dir < 2; ++dir)
                        for (int r = 0; r < 3; ++r) {
                            std::vector<std::string> w;
                            for (int k = 0; k < 3; ++k) {
                                const int i = dir == 0 ? (r + k) % 3 : (r - k + 3) % 3;
                                w.push_back(cs[i]->tag + "/" + std::to_string(dir == 0 ? fwd(i) : bwd(i)));
                            }
                            if (best.empty() || w < best) best = w;
                        }
                    seen.insert(best);
                }
    return seen.size();
}

}  // namespace

TEST(Dp2Classify, ReproducesTheSixRowTableInOrder) {
    const auto got = run(4);
    std::vector<std::string> want;
    for (const auto& row : reference::rows()) want.push_back(canonical_key(row.fiber));
    EXPECT_EQ(keys(got), want);
    ASSERT_EQ(got.size(), 6u);
    const auto rows = reference::rows();
    for (std::size_t i = 0; i < got.size(); ++i) {
        const auto& row = rows[i];
        EXPECT_EQ(anticanonical_degree(got[i]), row.degree) << i;
        std::vector<ContractionType> types;
        for (const auto& c : got[i].components) types.push_back(classify_contraction(c));
        std::sort(types.begin(), types.end(),
                  [](auto x, auto y) { return contraction_rank(x) < contraction_rank(y); });
        EXPECT_EQ(types, row.contractions) << i;
    }
}

TEST(Dp2Classify, CountsMatchIntegerOracle) {
    for (int n = 0; n <= 8; ++n) {
        EXPECT_EQ(run(n, {2}).size(), oracle_two(n)) << "n_max=" << n;
        EXPECT_EQ(run(n, {3}).size(), oracle_three(n)) << "n_max=" << n;
    }
    EXPECT_EQ(oracle_two(4), 5u);
    EXPECT_EQ(oracle_three(4), 1u);
}

TEST(Dp2Classify, SmallBoundsAndComponentFilter) {
    const auto rows = reference::rows();
    EXPECT_EQ(keys(run(1)), (std::vector<std::string>{canonical_key(rows[0].fiber), canonical_key(rows[3].fiber),
                                                       canonical_key(rows[4].fiber), canonical_key(rows[5].fiber)}));
    EXPECT_EQ(keys(run(4, {3})), (std::vector<std::string>{canonical_key(rows[5].fiber)}));
    EXPECT_EQ(run(4, {2}).size(), 5u);
}

TEST(Dp2Classify, StableBeyondTheBound) {
    const auto at5 = keys(run(5));
    for (int n = 6; n <= 8; ++n) EXPECT_EQ(keys(run(n)), at5) << "n_max=" << n;
    EXPECT_EQ(keys(run(4)), at5);
}

TEST(Dp2Classify, MonotonicInNMax) {
    std::set<std::string> prev;
    for (int n = 0; n <= 6; ++n) {
        const auto k = keys(run(n));
        const std::set<std::string> cur(k.begin(), k.end());
        EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end())) << n;
        prev = cur;
    }
    EXPECT_LT(run(3).size(), run(4).size());  // the (P2, q) u (F4, s) row needs n = 4
}

TEST(Dp2Classify, ThreadCountDoesNotChangeOutput) {
    const auto a = run(6, {2, 3}, 1), b = run(6, {2, 3}, 4), c = run(6, {2, 3}, 16);
    std::vector<std::string> ja, jb, jc;
    for (const auto& f : a) ja.push_back(to_json(f).dump());
    for (const auto& f : b) jb.push_back(to_json(f).dump());
    for (const auto& f : c) jc.push_back(to_json(f).dump());
    EXPECT_EQ(ja, jb);
    EXPECT_EQ(ja, jc);
}

TEST(Dp2Classify, EveryFiberHasARuledComponent) {
    for (const auto& f : run(6)) {
        bool ruled = false;
        for (const auto& c : f.components) {
            EXPECT_NE(classify_contraction(c), ContractionType::Unknown);
            ruled = ruled || classify_contraction(c) == ContractionType::E1;
        }
        EXPECT_TRUE(ruled) << canonical_key(f);
        EXPECT_TRUE(detail::dp2_admissible(f));
    }
}

TEST(Dp2Classify, WithoutDedupReturnsAtLeastAsMany) {
    Dp2SearchConfig cfg;
    cfg.dedup = false;
    const auto raw = enumerate_dp2(cfg);
    EXPECT_GE(raw.size(), 6u);
    std::set<std::string> distinct;
    for (const auto& f : raw) distinct.insert(canonical_key(f));
    EXPECT_EQ(distinct.size(), 6u);
}

TEST(Dp2Classify, RejectsBadConfig) {
    Dp2SearchConfig cfg;
    cfg.n_max = -1;
    EXPECT_THROW(enumerate_dp2(cfg), ConstraintError);
    cfg.n_max = 3;
    cfg.allow_components = {4};
    EXPECT_THROW(enumerate_dp2(cfg), ConstraintError);
}

TEST(BoundCertificate, IndexBoundIsFiveAndVerified) {
    const auto c = bound_certificate();
    EXPECT_EQ(c.max_fixed_self_intersection, 4);  // q^2 on P2
    EXPECT_EQ(c.max_family_self_intersection, 0);
    EXPECT_EQ(c.max_triple_points, 1);
    EXPECT_EQ(c.bound, 5);
    EXPECT_TRUE(c.verified);
    EXPECT_EQ(justify_bound(), 5);
}

TEST(BoundCertificate, NoFiberUsesAnIndexAboveTheBound) {
    for (const auto& f : run(justify_bound() + 4))
        for (const auto& c : f.components) {
            const auto& s = c.surface_pair()->surface;
            if (s.kind() == SurfaceKind::Hirzebruch) {
                EXPECT_LE(s.index(), justify_bound());
            }
        }
}
