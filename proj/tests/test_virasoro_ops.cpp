#include "lgvw/lgvw.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lgvw;

namespace {

Rational r(long n, long d = 1) { return make_rational(n, d); }

GradedSpace space_of(const std::string& pair, const std::string& group = "")
{
    const auto p = resolve_pair(pair, group);
    return graded_space(build_state_space(p.w, p.group));
}

Rational coefficient(const QOperator& op, const WeylMonomial& m)
{
    auto it = op.terms().find(m);
    return it == op.terms().end() ? Rational(0) : it->second;
}

bool has_hbar_power(const QOperator& op, int p)
{
    for (const auto& [m, c] : op.terms())
        if (m.hbar == p) return true;
    return false;
}

// Random operator whose terms all have the given parity.
QOperator random_operator(std::mt19937& gen, const WeylSpace& sp, int parity)
{
    std::uniform_int_distribution<int> id(0, static_cast<int>(sp.rank) * 3 - 1), len(0, 2), coef(-3, 3);
    QOperator op(sp, 2);
    while (op.size() < 4) {
        std::vector<int> cr, an;
        for (int i = len(gen); i > 0; --i) cr.push_back(id(gen));
        for (int i = len(gen); i > 0; --i) an.push_back(id(gen));
        int odd = 0;
        for (int v : cr) odd += sp.is_odd(v);
        for (int v : an) odd += sp.is_odd(v);
        if (odd % 2 != parity) continue;
        const int c = coef(gen);
        if (c != 0) op.add_word(c, 0, cr, an);
    }
    return op;
}

}  // namespace

TEST(Pochhammer, Examples)
{
    EXPECT_EQ(pochhammer(5, 0), 1);
    EXPECT_EQ(pochhammer(r(3, 2), 2), r(15, 4));
    EXPECT_EQ(pochhammer(-1, 3), 0);
    EXPECT_THROW(pochhammer(1, -1), PreconditionNotMet);
}

TEST(PochhammerProperty, RecurrenceAndFactorial)
{
    for (long n = 0; n <= 8; ++n) {
        Rational fact = 1;
        for (long i = 2; i <= n; ++i) fact *= i;
        EXPECT_EQ(pochhammer(1, int(n)), fact);
        for (const Rational& l : {r(-5, 2), r(1, 3), r(7, 6)})
            EXPECT_EQ(pochhammer(l, int(n) + 1), pochhammer(l, int(n)) * (l + n));
    }
}

TEST(VirasoroOperator, StringOperatorShape)
{
    const GradedSpace g = space_of("cubic", "J");
    const QOperator l = virasoro_operator(g, -1, 6);
    const WeylSpace sp = g.weyl_space();
    EXPECT_EQ(coefficient(l, WeylMonomial{0, 0, {}, {sp.id(0, 0)}}), -1);
    EXPECT_EQ(coefficient(l, WeylMonomial{0, 0, {sp.id(3, 2)}, {sp.id(2, 2)}}), 1);
    // (1/2 hbar^2) eta_{ab} t_0^a t_0^b over the even block 1|J>, 1|J^2>.
    EXPECT_EQ(coefficient(l, WeylMonomial{-2, 0, {sp.id(0, 0), sp.id(0, 1)}, {}}), 1);
    EXPECT_FALSE(has_hbar_power(l, 2));
    EXPECT_EQ(l.constant_term(), 0);
    EXPECT_EQ(string_operator(g, 6), l);
}

TEST(VirasoroOperator, CubicL0)
{
    const GradedSpace g = space_of("cubic", "J");
    const QOperator l0 = virasoro_operator(g, 0, 6);
    const WeylSpace sp = g.weyl_space();
    EXPECT_EQ(l0.constant_term(), 0);
    EXPECT_EQ(coefficient(l0, WeylMonomial{0, 0, {}, {sp.id(1, 0)}}), -1);
}

TEST(VirasoroOperator, L1HbarPart)
{
    for (const char* pair : {"x^3", "cubic", "fermat2-d5"}) {
        const GradedSpace g = space_of(pair);
        const WeylSpace sp = g.weyl_space();
        const QOperator l1 = virasoro_operator(g, 1, 4);
        for (std::size_t a = 0; a < g.rank(); ++a)
            for (std::size_t b = 0; b < g.rank(); ++b) {
                if (is_zero(g.eta_inv[a][b])) continue;
                Rational expect = -pochhammer(g.mu_plus[a] - r(1, 2), 2) / 2 * g.eta_inv[a][b];
                std::vector<int> an{sp.id(0, int(a)), sp.id(0, int(b))};
                // Both orders of the pair land on the same normal-ordered word.
                if (a != b) expect *= 2;
                std::sort(an.begin(), an.end());
                if (a <= b) {
                    EXPECT_EQ(coefficient(l1, WeylMonomial{2, 0, {}, an}), expect) << pair;
                }
            }
    }
}

TEST(VirasoroOperator, TruncationTooSmall)
{
    const GradedSpace g = space_of("x^3");
    EXPECT_THROW(virasoro_operator(g, 3, 2), TruncationTooSmall);
    EXPECT_THROW(check_virasoro_relations(g, 3, 7), TruncationTooSmall);
}

TEST(Commutator, L0WithLminus1OnXCubed)
{
    const GradedSpace g = space_of("x^3");
    const int M = 6;
    const QOperator lhs = commutator(virasoro_operator(g, 0, M), virasoro_operator(g, -1, M)).restricted(M - 1);
    EXPECT_EQ(lhs, virasoro_operator(g, -1, M).restricted(M - 1));
}

TEST(Commutator, L1WithLminus1CarriesTheConstant)
{
    const GradedSpace g = space_of("x^3");
    const int M = 6;
    const QOperator lhs = commutator(virasoro_operator(g, 1, M), virasoro_operator(g, -1, M)).restricted(M - 2);
    EXPECT_EQ(lhs, (Rational(2) * virasoro_operator(g, 0, M)).restricted(M - 2));
    EXPECT_EQ(lhs.constant_term(), -g.supertrace() / 2);
    EXPECT_EQ(lhs.constant_term(), r(2, 9));
}

TEST(Commutator, PureTDOperatorsProduceNoHbar)
{
    const GradedSpace g = space_of("cubic", "J");
    const QOperator c = commutator(grading_operator(g, 5), virasoro_operator(g, 0, 5, false) - grading_operator(g, 5));
    for (const auto& [m, x] : c.terms()) EXPECT_EQ(m.hbar, 0);
}

TEST(Commutator, SuperJacobiOnRandomOperators)
{
    WeylSpace sp;
    sp.rank = 2;
    sp.odd = {false, true};
    std::mt19937 gen(17);
    for (int trial = 0; trial < 30; ++trial) {
        const int pa = trial % 2, pb = (trial / 2) % 2, pc = (trial / 4) % 2;
        const QOperator a = random_operator(gen, sp, pa), b = random_operator(gen, sp, pb),
                        c = random_operator(gen, sp, pc);
        const QOperator lhs = commutator(a, commutator(b, c));
        const QOperator rhs = commutator(commutator(a, b), c) + Rational(pa && pb ? -1 : 1) * commutator(b, commutator(a, c));
        EXPECT_EQ(lhs, rhs) << trial;
    }
}

TEST(WeylAlgebra, OddVariablesSquareToZero)
{
    WeylSpace sp;
    sp.rank = 1;
    sp.odd = {true};
    QOperator t(sp, 2), d(sp, 2);
    t.add_word(1, 0, {sp.id(0, 0)}, {});
    d.add_word(1, 0, {}, {sp.id(0, 0)});
    EXPECT_TRUE((t * t).is_zero());
    EXPECT_TRUE((d * d).is_zero());
    // d t + t d = 1 for an odd pair.
    QOperator one(sp, 2);
    one.add_constant(1);
    EXPECT_EQ(d * t + t * d, one);
}

TEST(VirasoroRelations, CatalogPairsHold)
{
    for (const auto& p : catalog_pairs()) {
        const auto rp = resolve_pair(p.polynomial, p.group);
        const StateSpace s = build_state_space(rp.w, rp.group);
        if (s.rank() > 10) continue;
        const auto rep = check_virasoro_relations(graded_space(s), 3, 8);
        EXPECT_TRUE(rep.all_hold()) << p.id;
    }
}

TEST(VirasoroRelations, TwoVariableFermatExample)
{
    EXPECT_TRUE(check_virasoro_relations(space_of("fermat2-d4"), 2, 6).all_hold());
}

TEST(VirasoroRelations, SuperSymmetricPairingAlsoHolds)
{
    EXPECT_TRUE(check_virasoro_relations(with_super_pairing(space_of("cubic", "J")), 3, 8).all_hold());
}

TEST(VirasoroRelations, DroppingTheConstantBreaksL1Lminus1)
{
    const GradedSpace g = space_of("x^3");
    const auto rep = check_virasoro_relations(g, 1, 4, false);
    bool found = false;
    for (const auto& res : rep.results) {
        if (res.m == 1 && res.n == -1) {
            found = true;
            EXPECT_FALSE(res.holds);
            EXPECT_EQ(res.defect.size(), 1u);
            EXPECT_EQ(res.defect.constant_term(), -g.supertrace() / 2);
        }
    }
    EXPECT_TRUE(found);
}

TEST(VirasoroRelations, LiteralHbarIndexFails)
{
    // The hbar^2 Pochhammer evaluated at the written index breaks the
    // relations already for x^3.
    const GradedSpace g = space_of("x^3");
    EXPECT_FALSE(check_virasoro_relations(g, 3, 8, true, Hbar2Index::literal).all_hold());
    EXPECT_TRUE(check_virasoro_relations(g, 3, 8, true, Hbar2Index::dual).all_hold());
}

TEST(VirasoroProperty, HbarPowersAndConstants)
{
    for (const auto& p : catalog_pairs()) {
        const auto rp = resolve_pair(p.polynomial, p.group);
        const StateSpace s = build_state_space(rp.w, rp.group);
        if (s.rank() > 10) continue;
        const GradedSpace g = graded_space(s);
        for (int k = -1; k <= 3; ++k) {
            const QOperator l = virasoro_operator(g, k, 6);
            EXPECT_FALSE(k == -1 && has_hbar_power(l, 2)) << p.id;
            EXPECT_FALSE(k >= 1 && has_hbar_power(l, -2)) << p.id;
            const Rational constant = k == 0 ? -(s.chat - 3) / 48 * euler_characteristic(s) : Rational(0);
            EXPECT_EQ(l.constant_term(), constant) << p.id;
        }
    }
}

TEST(GradingOperator, CubicCoefficients)
{
    const GradedSpace g = space_of("cubic", "J");
    const WeylSpace sp = g.weyl_space();
    const QOperator e = grading_operator(g, 4);
    EXPECT_EQ(coefficient(e, WeylMonomial{0, 0, {sp.id(0, 0)}, {sp.id(0, 0)}}), -1);
    EXPECT_EQ(coefficient(e, WeylMonomial{0, 0, {sp.id(1, 0)}, {sp.id(1, 0)}}), 0);
}

TEST(GradingOperator, L0FromGradingAndDilaton)
{
    for (const auto& p : catalog_pairs()) {
        const auto rp = resolve_pair(p.polynomial, p.group);
        const StateSpace s = build_state_space(rp.w, rp.group);
        if (s.rank() > 10) continue;
        const GradedSpace g = graded_space(s);
        EXPECT_EQ(l0_from_grading(g, 6), virasoro_operator(g, 0, 6)) << p.id;
    }
}

TEST(DilatonOperator, Constants)
{
    EXPECT_EQ(dilaton_operator(space_of("cubic", "J"), 4).constant_term(), 0);
    EXPECT_EQ(dilaton_operator(space_of("x^3"), 4).constant_term(), r(1, 12));
    const GradedSpace g = space_of("x^3");
    const QOperator d = dilaton_operator(g, 4);
    EXPECT_EQ(coefficient(d, WeylMonomial{0, 1, {}, {}}), 1);
    EXPECT_EQ(coefficient(d, WeylMonomial{0, 0, {}, {g.weyl_space().id(1, 0)}}), -1);
}

TEST(EllipticOperators, DminusOneLeadingTerm)
{
    const WeylSpace sp = elliptic::space();
    EXPECT_EQ(coefficient(elliptic::d_operator(-1, 4), WeylMonomial{0, 0, {}, {sp.id(0, elliptic::S0)}}), -1);
    EXPECT_EQ(coefficient(elliptic::dbar_operator(-1, 4), WeylMonomial{0, 0, {}, {sp.id(0, elliptic::S1)}}), -1);
}

TEST(EllipticOperators, IdentifiedWithCubic)
{
    const auto p = resolve_pair("cubic", "J");
    const StateSpace s = build_state_space(p.w, p.group);
    const auto psi = elliptic::psi_relabeling(s);
    for (int k = -1; k <= 3; ++k)
        EXPECT_EQ(elliptic::relabel(virasoro_operator(graded_space(s), k, 8), psi), elliptic::virasoro_operator(k, 8))
            << k;
}

TEST(EllipticOperators, BracketOfDAndDbarIsComputed)
{
    // No statement to compare with; the bracket must at least be finite and
    // free of hbar.
    const QOperator c = commutator(elliptic::d_operator(1, 6), elliptic::dbar_operator(0, 6));
    for (const auto& [m, x] : c.terms()) EXPECT_EQ(m.hbar, 0);
}
