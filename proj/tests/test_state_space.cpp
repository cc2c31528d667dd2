#include "lgvw/lgvw.hpp"

#include <gtest/gtest.h>

using namespace lgvw;

namespace {

Rational r(long n, long d = 1) { return make_rational(n, d); }

PhaseVector pv(std::vector<Rational> v) { return PhaseVector(std::move(v)); }

StateSpace build(const std::string& poly, const std::string& group)
{
    const auto p = resolve_pair(poly, group);
    return build_state_space(p.w, p.group);
}

const SectorElement& find(const StateSpace& s, const std::string& label)
{
    for (const auto& e : s.basis)
        if (e.label == label) return e;
    throw std::runtime_error("no element " + label);
}

GradedSeries series(std::initializer_list<std::pair<Rational, long>> terms)
{
    GradedSeries s;
    for (const auto& [e, c] : terms) s.add(e, c);
    return s;
}

std::vector<CatalogPair> pairs() { return catalog_pairs(); }

}  // namespace

TEST(StateSpace, FermatCubicTable)
{
    const StateSpace s = build("cubic", "J");
    ASSERT_EQ(s.rank(), 4u);
    struct Row {
        const char* label;
        Rational mu_plus, mu_minus;
        int parity;
        Rational deg;
    };
    const Row rows[] = {{"1|J>", r(-1, 2), r(-1, 2), 1, r(0)},
                        {"1|J^2>", r(1, 2), r(1, 2), 1, r(1)},
                        {"dx|J^0>", r(-1, 2), r(1, 2), -1, r(1, 2)},
                        {"x1x2x3 dx|J^0>", r(1, 2), r(-1, 2), -1, r(1, 2)}};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& e = s.basis[i];
        EXPECT_EQ(e.label, rows[i].label);
        EXPECT_EQ(e.mu_plus, rows[i].mu_plus) << e.label;
        EXPECT_EQ(e.mu_minus, rows[i].mu_minus) << e.label;
        EXPECT_EQ(e.parity, rows[i].parity) << e.label;
        EXPECT_EQ(e.deg_c, rows[i].deg) << e.label;
    }
    EXPECT_EQ(euler_characteristic(s), 0);
    EXPECT_EQ(supertrace_theta(s), 0);
}

TEST(StateSpace, XCubed)
{
    const StateSpace s = build("x^3", "J");
    ASSERT_EQ(s.rank(), 2u);
    EXPECT_TRUE(s.basis[0].is_narrow() && s.basis[1].is_narrow());
    EXPECT_EQ(s.basis[0].label, "1|J>");
    EXPECT_EQ(s.basis[1].label, "1|J^2>");
    const QMatrix expect{{r(0), r(1)}, {r(1), r(0)}};
    EXPECT_EQ(*s.eta, expect);
    EXPECT_EQ(euler_characteristic(s), 2);
    EXPECT_EQ(supertrace_theta(s), r(-4, 9));
    const auto rep = check_supertrace_formula(s);
    EXPECT_TRUE(rep.holds);
    EXPECT_EQ(rep.rhs, r(-4, 9));
}

TEST(StateSpace, XSquared)
{
    const StateSpace s = build("x^2", "J");
    ASSERT_EQ(s.rank(), 1u);
    EXPECT_EQ(s.basis[0].mu_plus, 0);
    EXPECT_EQ(supertrace_theta(s), r(-1, 4));
    EXPECT_TRUE(check_supertrace_formula(s).holds);
}

TEST(StateSpace, TwoVariableFermatRank)
{
    for (int d = 2; d <= 8; ++d) {
        const StateSpace s = build("fermat2-d" + std::to_string(d), "J");
        std::size_t narrow = 0;
        for (const auto& e : s.basis) {
            narrow += e.is_narrow();
            EXPECT_EQ(e.parity, 1) << d;
            EXPECT_EQ(e.mu_plus, e.mu_minus) << d;
        }
        EXPECT_EQ(s.rank(), std::size_t(2 * d - 2)) << d;
        EXPECT_EQ(narrow, std::size_t(d - 1)) << d;
        EXPECT_EQ(euler_characteristic(s), 2 * d - 2) << d;
    }
}

TEST(StateSpace, RankMatchesBoxEnumeration)
{
    // Fermat restrictions have the box {m_i <= d_i - 2} as Milnor basis, so
    // the rank can be counted without any Groebner basis.
    for (const auto& p : pairs()) {
        const auto rp = resolve_pair(p.polynomial, p.group);
        bool fermat = true;
        for (const auto& [m, c] : rp.w.terms())
            if (std::count_if(m.begin(), m.end(), [](int e) { return e != 0; }) != 1) fermat = false;
        if (!fermat) continue;
        const auto q = weight_system(rp.w).weights;
        std::size_t count = 0;
        for (const auto& gamma : rp.group.elements()) {
            const auto fixed = gamma.fixed_indices();
            std::vector<int> m(fixed.size(), 0);
            for (;;) {
                bool ok = true;
                for (const auto& g : rp.group.generators()) {
                    Rational ph = 0;
                    for (std::size_t i = 0; i < fixed.size(); ++i) ph += (m[i] + 1) * g[fixed[i]];
                    if (!is_integer(ph)) ok = false;
                }
                count += ok;
                std::size_t i = 0;
                while (i < m.size() && ++m[i] > to_long(1 / q[fixed[i]]) - 2) m[i++] = 0;
                if (i == m.size()) break;
            }
        }
        EXPECT_EQ(build_state_space(rp.w, rp.group).rank(), count) << p.id;
    }
}

TEST(StateSpace, PillowcaseGradings)
{
    const Polynomial w = parse_polynomial("x1^4+x2^4");
    const DiagonalGroup g = subgroup_generated({pv({r(1, 4), r(1, 4)}), pv({r(0), r(1, 2)})}, 2);
    const StateSpace s = build_state_space(w, g);
    ASSERT_EQ(s.rank(), 6u);
    EXPECT_EQ(find(s, "1|J>").mu_plus, r(-1, 2));
    EXPECT_EQ(find(s, "1|J>").deg_c, 0);
    EXPECT_EQ(find(s, "1|J^3>").mu_plus, r(1, 2));
    EXPECT_EQ(find(s, "1|J^3>").deg_c, 1);
    int zero = 0;
    for (const auto& e : s.basis) {
        EXPECT_EQ(e.parity, 1) << e.label;
        EXPECT_EQ(e.mu_plus, e.mu_minus) << e.label;
        if (e.mu_plus == 0) {
            ++zero;
            EXPECT_EQ(e.deg_c, r(1, 2)) << e.label;
        }
    }
    EXPECT_EQ(zero, 4);
    EXPECT_TRUE(check_supertrace_formula(s).holds);
}

TEST(StateSpace, CatalogPillowcaseHasSameGradings)
{
    const StateSpace s = build("pillowcase", "");
    std::multiset<Rational> got, expect{r(-1, 2), r(1, 2), r(0), r(0), r(0), r(0)};
    for (const auto& e : s.basis) got.insert(e.mu_plus);
    EXPECT_EQ(got, expect);
}

TEST(StateSpace, NotAdmissible)
{
    const Polynomial w = parse_polynomial("x1^3+x2^3+x3^3");
    EXPECT_THROW(build_state_space(w, subgroup_generated({}, 3)), NotAdmissible);
    EXPECT_THROW(build_state_space(w, subgroup_generated({pv({r(1, 2)})}, 1)), NotAdmissible);
}

TEST(StateSpaceProperty, SupertraceFormulaOnCatalog)
{
    for (const auto& p : pairs()) {
        const auto rep = check_supertrace_formula(build(p.polynomial, p.group));
        EXPECT_TRUE(rep.holds) << p.id << " " << rep.lhs << " vs " << rep.rhs;
    }
}

TEST(StateSpaceProperty, PairingDuality)
{
    for (const auto& p : pairs()) {
        const StateSpace s = build(p.polynomial, p.group);
        const QMatrix& eta = *s.eta;
        for (std::size_t a = 0; a < s.rank(); ++a) {
            bool partner = false;
            for (std::size_t b = 0; b < s.rank(); ++b) {
                EXPECT_EQ(eta[a][b], eta[b][a]) << p.id;
                if (is_zero(eta[a][b])) continue;
                partner = true;
                EXPECT_EQ(s.basis[a].mu_plus + s.basis[b].mu_plus, 0) << p.id;
                EXPECT_TRUE((s.basis[a].gamma + s.basis[b].gamma).is_identity()) << p.id;
                EXPECT_EQ(s.basis[a].parity, s.basis[b].parity) << p.id;
            }
            EXPECT_TRUE(partner) << p.id << " " << s.basis[a].label;
        }
    }
}

TEST(StateSpaceProperty, MaximalGroupHasEqualBigrading)
{
    for (const auto& p : pairs()) {
        if (p.group != "max") continue;
        for (const auto& e : build(p.polynomial, p.group).basis) EXPECT_EQ(e.mu_plus, e.mu_minus) << p.id;
    }
}

TEST(StateSpaceProperty, NarrowElementsAndIdentityDegree)
{
    for (const auto& p : pairs()) {
        const StateSpace s = build(p.polynomial, p.group);
        EXPECT_EQ(find(s, "1|J>").deg_c, 0) << p.id;
        for (const auto& e : s.basis)
            if (e.is_narrow()) {
                EXPECT_TRUE(e.monomial.empty()) << p.id;
                EXPECT_EQ(e.wt, 0) << p.id;
            }
    }
}

TEST(Poincare, ProductExamples)
{
    EXPECT_EQ(poincare_series_product(parse_polynomial("x^3")), series({{r(1, 3), -1}, {r(2, 3), -1}}));
    EXPECT_EQ(poincare_series_product(parse_polynomial("x^2")), series({{r(1, 2), -1}}));
    // -(y^{1/3} + y^{2/3})^3
    EXPECT_EQ(poincare_series_product(parse_polynomial("x1^3+x2^3+x3^3")),
              series({{r(1), -1}, {r(4, 3), -3}, {r(5, 3), -3}, {r(2), -1}}));
}

TEST(Poincare, PairExamples)
{
    const auto p = resolve_pair("cubic", "J");
    EXPECT_TRUE(poincare_series_pair(p.w, p.group).is_zero());
    const auto x3 = resolve_pair("x^3", "J");
    EXPECT_EQ(poincare_series_pair(x3.w, x3.group), series({{r(-1, 6), 1}, {r(1, 6), 1}}));
}

TEST(Poincare, LimitExamples)
{
    const auto l = series_limits(series({{r(-1, 6), 1}, {r(1, 6), 1}}));
    EXPECT_EQ(l.chi, 2);
    EXPECT_EQ(l.str_theta2, r(1, 18));
    const auto z = series_limits(GradedSeries{});
    EXPECT_EQ(z.chi, 0);
    EXPECT_EQ(z.str_theta2, 0);
}

TEST(PoincareProperty, ProductAveragedCensusAndLimitsAgree)
{
    for (const auto& p : pairs()) {
        const auto c = check_poincare(build(p.polynomial, p.group));
        EXPECT_TRUE(c.sector_mismatches.empty()) << p.id;
        EXPECT_TRUE(c.averaged_equals_census) << p.id;
        EXPECT_TRUE(c.chi_limit) << p.id;
        EXPECT_TRUE(c.str_limit) << p.id;
    }
}
