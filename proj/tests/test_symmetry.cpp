#include "lgvw/lgvw.hpp"

#include <gtest/gtest.h>

using namespace lgvw;

namespace {

Rational r(long n, long d = 1) { return make_rational(n, d); }

PhaseVector pv(std::vector<Rational> v) { return PhaseVector(std::move(v)); }

// Brute-force G_W: all phase vectors with denominators dividing the
// exponent that preserve every monomial.
std::set<PhaseVector> brute_force_gw(const Polynomial& w, long den)
{
    const std::size_t n = w.nvars();
    std::set<PhaseVector> out;
    std::vector<long> idx(n, 0);
    while (true) {
        std::vector<Rational> ph;
        for (long k : idx) ph.push_back(make_rational(k, den));
        bool ok = true;
        for (const auto& [m, c] : w.terms()) {
            Rational s = 0;
            for (std::size_t i = 0; i < n; ++i) s += m[i] * ph[i];
            if (!is_integer(s)) ok = false;
        }
        if (ok) out.insert(PhaseVector(ph));
        std::size_t k = 0;
        while (k < n && ++idx[k] == den) idx[k++] = 0;
        if (k == n) break;
    }
    return out;
}

std::vector<std::pair<std::string, Polynomial>> invertible_catalog()
{
    std::vector<std::pair<std::string, Polynomial>> out;
    for (const auto& c : catalog_polynomials()) out.emplace_back(c.name, parse_polynomial(c.polynomial));
    out.emplace_back("x^2", parse_polynomial("x^2"));
    out.emplace_back("x^3", parse_polynomial("x^3"));
    return out;
}

}  // namespace

TEST(PhaseVector, ReducesIntoUnitInterval)
{
    const PhaseVector g = pv({r(4, 3), r(-1, 3), r(0)});
    EXPECT_EQ(g[0], r(1, 3));
    EXPECT_EQ(g[1], r(2, 3));
    EXPECT_EQ((g + (-g)), PhaseVector::identity(3));
    EXPECT_EQ(g.order(), 3);
}

TEST(MaximalGroup, Examples)
{
    EXPECT_EQ(maximal_group(parse_polynomial("x1^3+x2^3+x3^3")).order(), 27u);
    const DiagonalGroup x2 = maximal_group(parse_polynomial("x^2"));
    EXPECT_EQ(x2.order(), 2u);
    EXPECT_TRUE(x2.contains(pv({r(1, 2)})));
    const DiagonalGroup loop = maximal_group(parse_polynomial("x1^2x2+x2^2x3+x3^2x1"));
    EXPECT_EQ(loop.order(), 9u);
    bool cyclic = false;
    for (const auto& g : loop.elements()) cyclic |= g.order() == 9;
    EXPECT_TRUE(cyclic);
}

TEST(MaximalGroup, OrderIsAbsDeterminant)
{
    for (const auto& [name, w] : invertible_catalog()) {
        const Rational det = determinant(invertible_exponent_matrix(w));
        EXPECT_EQ(Rational(maximal_group(w).order()), abs(det)) << name;
    }
}

TEST(MaximalGroup, MatchesBruteForceEnumeration)
{
    for (const char* s : {"x1^3+x2^3+x3^3", "x1^2x2+x2^2x3+x3^2x1", "x1^3x2+x2^4+x3^2", "x1^4+x2^2x3+x3^2"}) {
        const Polynomial w = parse_polynomial(s);
        const DiagonalGroup g = maximal_group(w);
        // Every element of G_W has order dividing |G_W|.
        const auto brute = brute_force_gw(w, static_cast<long>(g.order()));
        EXPECT_EQ(std::set<PhaseVector>(g.elements().begin(), g.elements().end()), brute) << s;
    }
}

TEST(MaximalGroup, NonInvertibleRoute)
{
    const Polynomial w = parse_polynomial("x1^3+x2^3+x3^3+x1x2x3");
    const DiagonalGroup g = maximal_group(w);
    EXPECT_EQ(std::set<PhaseVector>(g.elements().begin(), g.elements().end()), brute_force_gw(w, 3));
}

TEST(ExponentialGrading, Examples)
{
    EXPECT_EQ(exponential_grading_element(weight_system(parse_polynomial("x1^3+x2^3+x3^3"))),
              pv({r(1, 3), r(1, 3), r(1, 3)}));
    EXPECT_EQ(exponential_grading_element(weight_system(parse_polynomial("x^2"))), pv({r(1, 2)}));
}

TEST(ExponentialGrading, IsSumOfColumnGenerators)
{
    for (const auto& [name, w] : invertible_catalog()) {
        const auto inv = inverse(invertible_exponent_matrix(w));
        ASSERT_TRUE(inv) << name;
        const std::size_t n = w.nvars();
        PhaseVector sum = PhaseVector::identity(n);
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Rational> col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = (*inv)[i][k];
            sum = sum + PhaseVector(col);
        }
        EXPECT_EQ(sum, exponential_grading_element(weight_system(w))) << name;
    }
}

TEST(SubgroupGenerated, Examples)
{
    EXPECT_EQ(subgroup_generated({pv({r(1, 3), r(1, 3), r(1, 3)})}, 3).order(), 3u);
    // (1/2,1/2,0) is twice J for x1^4+x2^4+x3^2, so it adds nothing.
    EXPECT_EQ(subgroup_generated({pv({r(1, 4), r(1, 4), r(1, 2)}), pv({r(1, 2), r(1, 2), r(0)})}, 3).order(), 4u);
    EXPECT_EQ(subgroup_generated({pv({r(1, 4), r(1, 4), r(0)}), pv({r(0), r(0), r(1, 2)})}, 3).order(), 8u);
    EXPECT_EQ(subgroup_generated({}, 2).order(), 1u);
}

TEST(GroupProperty, AxiomsHoldOnCatalogGroups)
{
    for (const auto& [name, w] : invertible_catalog()) {
        for (const DiagonalGroup& g : {maximal_group(w), minimal_admissible_group(w)}) {
            EXPECT_TRUE(g.contains(PhaseVector::identity(w.nvars()))) << name;
            // Closure under the generators suffices for large groups.
            const auto& right = g.order() <= 400 ? g.elements() : g.generators();
            for (const auto& a : g.elements()) {
                EXPECT_TRUE(g.contains(-a)) << name;
                for (const auto& b : right) ASSERT_TRUE(g.contains(a + b)) << name;
            }
        }
    }
}

TEST(Admissible, Examples)
{
    const Polynomial cubic = parse_polynomial("x1^3+x2^3+x3^3");
    EXPECT_TRUE(is_admissible(minimal_admissible_group(cubic), cubic));
    EXPECT_FALSE(is_admissible(subgroup_generated({}, 3), cubic));
    const Polynomial pill = parse_polynomial("x1^4+x2^4+x3^2");
    const DiagonalGroup sl_no_j = subgroup_generated({pv({r(1, 2), r(1, 2), r(0)})}, 3);
    EXPECT_FALSE(is_admissible(sl_no_j, pill));
    EXPECT_THROW(is_admissible(subgroup_generated({pv({r(1, 2), r(0), r(0)})}, 3), cubic), NotASymmetryGroup);
}

TEST(Admissible, MonotoneUnderInclusion)
{
    for (const auto& [name, w] : invertible_catalog()) {
        const DiagonalGroup j = minimal_admissible_group(w);
        const DiagonalGroup gmax = maximal_group(w);
        ASSERT_TRUE(is_admissible(j, w));
        if (gmax.order() > 200) continue;
        for (const auto& extra : gmax.elements()) {
            std::vector<PhaseVector> gens = j.generators();
            gens.push_back(extra);
            EXPECT_TRUE(is_admissible(subgroup_generated(gens, w.nvars()), w)) << name;
        }
    }
}

TEST(SectorData, Examples)
{
    const WeightSystem q = weight_system(parse_polynomial("x1^3+x2^3+x3^3"));
    const PhaseVector j = exponential_grading_element(q);
    const SectorData sj = sector_data(j, q);
    EXPECT_EQ(sj.age, 1);
    EXPECT_EQ(sj.iota, 0);
    EXPECT_EQ(sj.n_gamma, 0);
    const SectorData sid = sector_data(PhaseVector::identity(3), q);
    EXPECT_EQ(sid.age, 0);
    EXPECT_EQ(sid.iota, -1);
    EXPECT_EQ(sid.n_gamma, 3);
    const SectorData sj2 = sector_data(j + j, q);
    EXPECT_EQ(sj2.age, 2);
    EXPECT_EQ(sj2.iota, 1);
}

TEST(SectorData, AgeOfInverse)
{
    for (const auto& [name, w] : invertible_catalog()) {
        const WeightSystem q = weight_system(w);
        const DiagonalGroup gmax = maximal_group(w);
        for (const auto& g : gmax.elements()) {
            const SectorData a = sector_data(g, q), b = sector_data(-g, q);
            EXPECT_EQ(a.fixed_indices, b.fixed_indices);
            EXPECT_EQ(a.age + b.age, Rational(static_cast<long>(w.nvars()) - a.n_gamma)) << name;
        }
    }
}

TEST(SpecialLinear, Examples)
{
    EXPECT_TRUE(is_special_linear(PhaseVector::identity(3)));
    EXPECT_TRUE(is_special_linear(pv({r(1, 3), r(1, 3), r(1, 3)})));
    EXPECT_FALSE(is_special_linear(pv({r(1, 3)})));
}

TEST(MirrorGroup, MaximalGoesToTrivial)
{
    for (const auto& [name, w] : invertible_catalog())
        EXPECT_EQ(mirror_group(maximal_group(w), w).order(), 1u) << name;
}

TEST(MirrorGroup, JGoesToSpecialLinearPart)
{
    for (const auto& [name, w] : invertible_catalog()) {
        const Polynomial wt = transpose(w);
        const DiagonalGroup dual = mirror_group(minimal_admissible_group(w), w);
        const DiagonalGroup sl = special_linear_part(maximal_group(wt));
        EXPECT_TRUE(dual.is_subgroup_of(sl) && sl.is_subgroup_of(dual)) << name;
    }
}

TEST(MirrorGroup, InvolutionAndOrderDuality)
{
    for (const auto& [name, w] : invertible_catalog()) {
        const DiagonalGroup gmax = maximal_group(w);
        std::vector<DiagonalGroup> groups{minimal_admissible_group(w), gmax, special_linear_part(gmax)};
        for (const auto& g : groups) {
            EXPECT_TRUE(mirror_is_involution(g, w)) << name;
            EXPECT_EQ(g.order() * mirror_group(g, w).order(), gmax.order()) << name;
        }
    }
}

TEST(MirrorGroup, DualElementsPairIntegrally)
{
    for (const auto& [name, w] : invertible_catalog()) {
        const QMatrix e = invertible_exponent_matrix(w);
        const DiagonalGroup g = minimal_admissible_group(w);
        const DiagonalGroup dual = mirror_group(g, w);
        for (const auto& phi : dual.elements())
            for (const auto& theta : g.elements()) {
                Rational s = 0;
                for (std::size_t i = 0; i < e.size(); ++i)
                    for (std::size_t j = 0; j < e.size(); ++j) s += phi[i] * e[i][j] * theta[j];
                EXPECT_TRUE(is_integer(s)) << name;
            }
    }
}
