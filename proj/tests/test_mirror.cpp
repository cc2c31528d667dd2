#include "lgvw/lgvw.hpp"

#include <gtest/gtest.h>

using namespace lgvw;

namespace {

Rational r(long n, long d = 1) { return make_rational(n, d); }

StateSpace build(const std::string& poly, const std::string& group)
{
    const auto p = resolve_pair(poly, group);
    return build_state_space(p.w, p.group);
}

bool mirror_fails(const StateSpace& a, const DiagonalGroup& dual)
{
    try {
        return !verify_mirror(krawitz_map(a, dual)).passed();
    } catch (const MapNotWellDefined&) {
        return true;
    }
}

}  // namespace

TEST(Krawitz, FermatCubicTable)
{
    const MirrorCorrespondence c = krawitz_map(build("cubic", "J"));
    struct Row {
        const char* source;
        const char* image;
        Rational mu_plus, mu_minus;
        int parity;
    };
    const Row rows[] = {{"1|J>", "dx|J^0>", r(-1, 2), r(-1, 2), 1},
                        {"1|J^2>", "x1x2x3 dx|J^0>", r(1, 2), r(1, 2), 1},
                        {"dx|J^0>", "1|J>", r(-1, 2), r(1, 2), -1},
                        {"x1x2x3 dx|J^0>", "1|J^2>", r(1, 2), r(-1, 2), -1}};
    ASSERT_EQ(c.source.size(), 4u);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(c.source[k].label, rows[k].source);
        EXPECT_EQ(c.image[k].label, rows[k].image) << rows[k].source;
        EXPECT_EQ(c.image[k].mu_plus_b, rows[k].mu_plus) << rows[k].source;
        EXPECT_EQ(c.image[k].mu_minus_b, rows[k].mu_minus) << rows[k].source;
        EXPECT_EQ(c.image[k].parity_b, rows[k].parity) << rows[k].source;
    }
    const MirrorReport rep = verify_mirror(c);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.rank_a, 4u);
    EXPECT_EQ(rep.rank_b, 4u);
}

TEST(Krawitz, MaximalGroupGoesToJacobianRing)
{
    for (const char* pair : {"cubic", "e6-loop", "e7-chain", "fermat2-d5"}) {
        const MirrorCorrespondence c = krawitz_map(build(pair, "max"));
        EXPECT_EQ(c.g_b.order(), 1u) << pair;
        for (const auto& img : c.image) EXPECT_TRUE(img.gamma.is_identity()) << pair;
        EXPECT_TRUE(verify_mirror(c).passed()) << pair;
    }
}

TEST(Krawitz, XCubedIsSelfMirror)
{
    const StateSpace a = build("x^3", "J");
    const MirrorCorrespondence c = krawitz_map(a);
    EXPECT_EQ(c.w_b, a.w);
    const MirrorReport rep = verify_mirror(c);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.rank_a, 2u);
    EXPECT_EQ(rep.rank_b, 2u);
    // The mirror of x^3/J is x^3 with the trivial group, mapped back.
    const StateSpace back = build_state_space(c.w_b, mirror_group(c.g_b, c.w_b));
    EXPECT_EQ(back.rank(), 2u);
}

TEST(Krawitz, ExplicitPairFromCli)
{
    EXPECT_TRUE(verify_mirror(krawitz_map(build("x1^3x2+x2^4+x3^2", "J"))).passed());
}

TEST(MirrorProperty, SweepPasses)
{
    for (const auto& p : catalog_pairs()) {
        const StateSpace a = build(p.polynomial, p.group);
        const MirrorReport rep = verify_mirror(krawitz_map(a));
        EXPECT_TRUE(rep.passed()) << p.id << (rep.failures.empty() ? "" : ": " + rep.failures.front());
        EXPECT_EQ(rep.chat_a, rep.chat_b) << p.id;
    }
}

TEST(MirrorProperty, EulerCharacteristicAndSupertracePreserved)
{
    // Computed from independently built spaces, without the map.
    for (const auto& p : catalog_pairs()) {
        const StateSpace a = build(p.polynomial, p.group);
        const BModelSpace b = build_b_model_space(transpose(a.w), mirror_group(a.group, a.w));
        EXPECT_EQ(euler_characteristic(a), b.chi()) << p.id;
        EXPECT_EQ(supertrace_theta(a), b.supertrace_theta()) << p.id;
        EXPECT_EQ(a.rank(), b.rank()) << p.id;
    }
}

TEST(MirrorProperty, Involution)
{
    for (const auto& p : catalog_pairs()) {
        const auto rp = resolve_pair(p.polynomial, p.group);
        EXPECT_TRUE(mirror_is_involution(rp.group, rp.w)) << p.id;
    }
}

TEST(BModel, GradingDefinition)
{
    // mu+_B = wt + iota_gamma - chat/2 on each element, recomputed here.
    const auto p = resolve_pair("cubic", "J");
    const BModelSpace b = build_b_model_space(transpose(p.w), mirror_group(p.group, p.w));
    const WeightSystem q = weight_system(p.w);
    for (const auto& e : b.basis) {
        const SectorData sd = sector_data(e.gamma, q), sdi = sector_data(-e.gamma, q);
        Rational wt = 0;
        for (std::size_t i = 0; i < e.monomial.size(); ++i) wt += (e.monomial[i] + 1) * q[e.fixed_indices[i]];
        EXPECT_EQ(e.mu_plus_b, wt + sd.iota - b.chat / 2) << e.label;
        EXPECT_EQ(e.mu_minus_b, wt + sdi.iota - b.chat / 2) << e.label;
        EXPECT_EQ(e.parity_b, (3 - sd.n_gamma) % 2 == 0 ? 1 : -1) << e.label;
    }
}

TEST(MirrorNegative, CorruptedDualGroupIsDetected)
{
    const StateSpace a = build("cubic", "J");
    // G_{W^T} instead of its SL part.
    EXPECT_TRUE(mirror_fails(a, maximal_group(transpose(a.w))));
    // One phase of the generator corrupted: (1/3,2/3,0) -> (1/3,1/3,0) leaves SL.
    const DiagonalGroup bad = subgroup_generated(
        {PhaseVector({r(1, 3), r(1, 3), r(0)}), PhaseVector({r(0), r(1, 3), r(2, 3)})}, 3);
    EXPECT_TRUE(mirror_fails(a, bad));
    // The uncorrupted group passes.
    const DiagonalGroup good = subgroup_generated(
        {PhaseVector({r(1, 3), r(2, 3), r(0)}), PhaseVector({r(0), r(1, 3), r(2, 3)})}, 3);
    EXPECT_FALSE(mirror_fails(a, good));
}
